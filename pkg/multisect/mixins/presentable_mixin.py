from typing import Optional

from multisect.presentations.groups import (
    AbelianInvariants,
    GroupPresentation,
    TietzeResult,
    abelianization,
    tietze_simplify,
)


class PresentableMixin:
    def fundamental_group(self) -> GroupPresentation:
        raise NotImplementedError

    def abelian_invariants(self) -> AbelianInvariants:
        return abelianization(self.fundamental_group())

    def simplified(self, budget: Optional[int] = None) -> TietzeResult:
        return tietze_simplify(self.fundamental_group(), budget)
