"""Plain result records shared by the closed-form and brute-force paths."""
from __future__ import annotations

from dataclasses import dataclass, fields


class _AsDict:
    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class MomentSet(_AsDict):
    """<A>, <A^dag>, <A^2>, <A^dag^2>, <A^dag A>, <A A^dag>, <A^dag A A^dag A>.

    ``mean_AdagAAdagA_paper`` is set only where a printed variant of the
    fourth moment differs from the derived one.
    """

    mean_A: complex
    mean_Adag: complex
    mean_AA: complex
    mean_AdagAdag: complex
    mean_AdagA: float
    mean_AAdag: float
    mean_AdagAAdagA: float
    mean_AdagAAdagA_paper: float | None = None


@dataclass(frozen=True)
class QuadratureReport(_AsDict):
    var_X: float
    var_Y: float
    G_q: float
    gur_lhs_sq: float
    gur_rhs_sq: float
    y_squeezed: bool
    gur_satisfied: bool


@dataclass(frozen=True)
class NumberReport(_AsDict):
    mean_n: float
    var_n_paper: float
    var_n_derived: float
    mandel_paper: float
    mandel_derived: float
    F: float
    R: float


@dataclass(frozen=True)
class DiscrepancyRecord(_AsDict):
    quantity_name: str
    closed_form: float
    oracle: float
    abs_gap: float
    rel_gap: float
    variant: str
    passed: bool
    context: str = ""
