from typing import Optional, Union

Detail = Union[str, list, dict]


class MultisectError(Exception):
    pass


class ValidationError(MultisectError):
    """
    Error carrying a ``detail`` payload: a message, a list of messages or a
    mapping from a key (a pair of system indices, a field name) to messages.
    """

    default_detail = "Invalid input."

    def __init__(self, detail: Optional[Detail] = None):
        self.detail = self.default_detail if detail is None else detail
        super().__init__(self.detail)


class RankMismatchError(ValidationError):
    default_detail = "Ranks do not match."


class ShapeMismatchError(ValidationError):
    default_detail = "Tuple shapes do not match."


class DiagramError(ValidationError):
    default_detail = "Diagram pair cannot be read."


class ConstructionError(MultisectError):
    pass


class MergeRefusedError(ConstructionError):
    pass


class BoundaryMismatchError(ConstructionError):
    def __init__(self, left, right):
        self.left = list(left)
        self.right = list(right)
        super().__init__(f"boundary invariants differ: {self.left} vs {self.right}")


class BoundExceededError(MultisectError):
    pass


class ParseError(MultisectError):
    def __init__(self, message: str, line_no: int = 0):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}" if line_no else message)
