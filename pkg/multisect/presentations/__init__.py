from multisect.presentations.groups import (
    AbelianInvariants,
    GroupPresentation,
    SectorVerdict,
    TietzeResult,
    VerdictStatus,
    abelianization,
    format_presentation,
    parse_presentation,
    tietze_simplify,
    verify_free_of_rank,
)
from multisect.presentations.matrices import SmithForm, exgcd, exponent_matrix, smith_normal_form
from multisect.presentations.quotients import (
    FiniteAbelianGroup,
    Surjection,
    abelian_groups_up_to,
    enumerate_finite_abelian_quotients,
)
