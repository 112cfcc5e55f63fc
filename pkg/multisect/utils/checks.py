import functools
import logging

from multisect.diagrams.multisection import MultisectionDiagram, validate
from multisect.utils.exceptions import ConstructionError

logger = logging.getLogger(__name__)


def verified_construction(construct):
    @functools.wraps(construct)
    def wrapped(*args, **kwargs):
        diagram = construct(*args, **kwargs)
        report = validate(diagram)
        if not report.ok:
            failed = {
                pair: str(verdict) for pair, verdict in report.verdicts.items() if not verdict.verified
            }
            raise ConstructionError(
                f"{construct.__name__} produced unverified sectors {failed} {report.errors}"
            )
        logger.info(
            "%s: genus %d, types %s", construct.__name__, diagram.genus, diagram.claimed_types
        )
        return diagram

    return wrapped


def preserves_pi1(construct):
    @functools.wraps(construct)
    def wrapped(diagram, *args, **kwargs):
        with Pi1Guard(diagram, construct.__name__) as guard:
            guard.result = construct(diagram, *args, **kwargs)
        return guard.result

    return wrapped


class Pi1Guard:
    """Compares the abelian invariants of the fundamental group before and after a transformation."""

    def __init__(self, diagram: MultisectionDiagram, name: str):
        self.diagram = diagram
        self.name = name
        self.result = None

    def __enter__(self):
        self.before = self.diagram.abelian_invariants()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if exc_type is not None or self.result is None:
            return False
        after = self.result.abelian_invariants()
        if after != self.before:
            raise ConstructionError(
                f"{self.name} changed the fundamental group: {self.before} became {after}"
            )
        return False
