from multisect.constructions.bisections import (
    DoubledSurfaceContext,
    bisection_from_heegaard,
    bisection_from_trisection,
    close_boundary,
    double_bisection,
    flip_bisection,
)
from multisect.constructions.genus import GenusReport, genus_report
from multisect.constructions.heegaard import (
    christoffel_word,
    lens_diagram,
    sphere_bundle_sum_diagram,
    standardize_curve,
)
from multisect.constructions.multisections import (
    GluePlan,
    cap_off,
    glue_bisections,
    insert_parallel_sectors,
    merge_adjacent_sectors,
    mergeable_interfaces,
    sphere_bundle_cap,
)
