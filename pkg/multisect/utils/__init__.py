from multisect.utils.exceptions import (
    BoundaryMismatchError,
    BoundExceededError,
    ConstructionError,
    DiagramError,
    MergeRefusedError,
    MultisectError,
    ParseError,
    RankMismatchError,
    ShapeMismatchError,
    ValidationError,
)
from multisect.utils.pair_exceptions import KeyedListExceptionHandler, PairExceptionHandler
