from multisect.diagrams.cut_systems import (
    CutSystem,
    SurfaceModel,
    normalize_standardizer,
    parallel,
    project,
    read_against,
    read_system,
    standard_system,
)
from multisect.diagrams.heegaard import (
    GeometricHeegaardDiagram,
    connected_sum,
    connected_sum_power,
    mirror,
    stabilize,
)
from multisect.diagrams.multisection import (
    MultisectionDiagram,
    ValidationReport,
    boundary_pair,
    pi1_of_diagram,
    presentation_of_pair,
    reindexed,
    sector_pairs,
    validate,
    verify_sector,
)
