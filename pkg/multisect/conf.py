import os
from typing import Optional

from multisect.utils.exceptions import ValidationError

BOUND_ENV = "MULTISECT_BOUND"
TIETZE_BUDGET_ENV = "MULTISECT_TIETZE_BUDGET"


class Settings:
    """
    Search budgets and enumeration bounds. Defaults live on the class; any of
    them can be overridden per instance by keyword.
    """

    tietze_budget: int = 10_000
    # limit on |G|^n for orbit and homomorphism enumeration
    orbit_bound: int = 10**6
    quotient_order_bound: int = 64
    move_search_budget: int = 5_000
    max_move_word_length: int = 24

    def __init__(self, **kwargs):
        if "tietze_budget" in kwargs:
            self.tietze_budget = kwargs.pop("tietze_budget")
        if "orbit_bound" in kwargs:
            self.orbit_bound = kwargs.pop("orbit_bound")
        if "quotient_order_bound" in kwargs:
            self.quotient_order_bound = kwargs.pop("quotient_order_bound")
        if "move_search_budget" in kwargs:
            self.move_search_budget = kwargs.pop("move_search_budget")
        if "max_move_word_length" in kwargs:
            self.max_move_word_length = kwargs.pop("max_move_word_length")
        if kwargs:
            raise ValidationError({"settings": [f"Unknown setting {name!r}" for name in kwargs]})

    @classmethod
    def from_env(cls, environ: Optional[dict] = None) -> "Settings":
        environ = os.environ if environ is None else environ
        overrides = {}
        try:
            if environ.get(BOUND_ENV):
                overrides["orbit_bound"] = int(environ[BOUND_ENV])
            if environ.get(TIETZE_BUDGET_ENV):
                overrides["tietze_budget"] = int(environ[TIETZE_BUDGET_ENV])
        except ValueError as error:
            raise ValidationError({"environment": [str(error)]}) from error
        return cls(**overrides)

    def __repr__(self):
        return (
            f"Settings(tietze_budget={self.tietze_budget}, orbit_bound={self.orbit_bound}, "
            f"quotient_order_bound={self.quotient_order_bound}, "
            f"move_search_budget={self.move_search_budget})"
        )


settings = Settings.from_env()
