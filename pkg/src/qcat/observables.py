"""Closed-form moments, quadrature variances, uncertainty bounds and Mandel parameters.

Where the published cat-state fourth moment ``<A^dag A A^dag A>`` and
everything derived from it disagrees with a first-principles evaluation,
both are returned: fields suffixed ``_paper`` carry the printed expression,
the unsuffixed (or ``_derived``) fields carry the value obtained from
``A|+/-> ~ alpha (|alpha> -/+ |-alpha>)`` and ``A A^dag = 1 + q^2 A^dag A``.

Every occurrence of the symbol E_q(-2|alpha|^2) is evaluated as the
overlap ratio R = E_q(-|alpha|^2)/E_q(|alpha|^2).
"""
from __future__ import annotations

import math

from .errors import NoRoot, NullState, UndefinedAtVacuum
from .qmath import as_q, cat_factor, overlap_ratio, q_exponential_parts
from .reports import MomentSet, NumberReport, QuadratureReport
from .states import check_normalizable

GUR_TOL = 1e-12


def _parity(parity: str) -> str:
    p = {"+": "even", "-": "odd", "cat-even": "even", "cat-odd": "odd"}.get(parity, parity)
    if p not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    return p


def _prep(alpha, q):
    qp = as_q(q)
    alpha = complex(alpha)
    check_normalizable(alpha, qp)
    return alpha, qp, abs(alpha) ** 2


def _cat_prep(alpha, q, parity):
    alpha, qp, x = _prep(alpha, q)
    parity = _parity(parity)
    if parity == "odd" and x == 0:
        raise NullState("odd cat state vanishes at alpha = 0")
    return alpha, qp, x, parity


def _cat_F(x, qp, parity):
    if x == 0:
        return 0.0  # even cat at alpha = 0 is the vacuum; F multiplies x anyway
    return cat_factor(x, qp, parity)


def _overlap(x, qp):
    return overlap_ratio(x, qp)


# ---------------------------------------------------------------------------
# Coherent states
# ---------------------------------------------------------------------------

def coherent_moments(alpha, q) -> MomentSet:
    alpha, qp, x = _prep(alpha, q)
    q2 = qp.q ** 2
    return MomentSet(
        mean_A=alpha,
        mean_Adag=alpha.conjugate(),
        mean_AA=alpha * alpha,
        mean_AdagAdag=alpha.conjugate() ** 2,
        mean_AdagA=x,
        mean_AAdag=1.0 + q2 * x,
        mean_AdagAAdagA=x + q2 * x * x,
    )


def coherent_quadratures(alpha, q) -> QuadratureReport:
    """Variances of X and Y; both equal the uncertainty bound (saturation)."""
    alpha, qp, x = _prep(alpha, q)
    var = 0.25 * (1.0 + (qp.q ** 2 - 1.0) * x)
    return QuadratureReport(
        var_X=var,
        var_Y=var,
        G_q=var,
        gur_lhs_sq=var * var,
        gur_rhs_sq=var * var,
        y_squeezed=False,
        gur_satisfied=True,
    )


def coherent_mandel(alpha, q) -> float:
    """Q_q = (q^2 - 1)|alpha|^2."""
    alpha, qp, x = _prep(alpha, q)
    if x == 0:
        raise UndefinedAtVacuum("Mandel parameter is 0/0 at alpha = 0")
    return (qp.q ** 2 - 1.0) * x


def coherent_number_report(alpha, q) -> NumberReport:
    alpha, qp, x = _prep(alpha, q)
    if x == 0:
        raise UndefinedAtVacuum("Mandel parameter is 0/0 at alpha = 0")
    q2 = qp.q ** 2
    var = x + (q2 - 1.0) * x * x
    Q = (q2 - 1.0) * x
    return NumberReport(mean_n=x, var_n_paper=var, var_n_derived=var,
                        mandel_paper=Q, mandel_derived=Q, F=1.0, R=_overlap(x, qp))


# ---------------------------------------------------------------------------
# Cat states
# ---------------------------------------------------------------------------

def cat_moments(alpha, q, parity) -> MomentSet:
    alpha, qp, x, parity = _cat_prep(alpha, q, parity)
    q2 = qp.q ** 2
    F = _cat_F(x, qp, parity)
    xF = x * F
    return MomentSet(
        mean_A=0j,
        mean_Adag=0j,
        mean_AA=alpha * alpha,
        mean_AdagAdag=alpha.conjugate() ** 2,
        mean_AdagA=xF,
        mean_AAdag=1.0 + q2 * xF,
        mean_AdagAAdagA=xF + q2 * x * x,
        mean_AdagAAdagA_paper=x + q2 * x * x * F,
    )


def _cat_quadrature_terms(alpha, qp, x, F):
    s = (alpha * alpha + alpha.conjugate() ** 2).real   # alpha^2 + alpha*^2
    G = 0.25 * (1.0 + (qp.q ** 2 - 1.0) * x * F)
    var_X = G + 0.25 * (s + 2.0 * x * F)
    var_Y = G - 0.25 * (s - 2.0 * x * F)
    return s, G, var_X, var_Y


def cat_quadratures(alpha, q, parity) -> QuadratureReport:
    alpha, qp, x, parity = _cat_prep(alpha, q, parity)
    F = _cat_F(x, qp, parity)
    _, G, var_X, var_Y = _cat_quadrature_terms(alpha, qp, x, F)
    lhs = var_X * var_Y
    rhs = G * G
    return QuadratureReport(
        var_X=var_X,
        var_Y=var_Y,
        G_q=G,
        gur_lhs_sq=lhs,
        gur_rhs_sq=rhs,
        y_squeezed=bool(var_Y < math.sqrt(rhs)),
        gur_satisfied=bool(lhs >= rhs - GUR_TOL),
    )


def gur_margin(alpha, q, parity) -> float:
    """Left minus right side of the printed uncertainty condition.

    ``G |a|^2 F + |a|^4 F^2 / 4 - (a^2 + a*^2)^2 / 16``; algebraically equal
    to ``gur_lhs_sq - gur_rhs_sq``.
    """
    alpha, qp, x, parity = _cat_prep(alpha, q, parity)
    F = _cat_F(x, qp, parity)
    s, G, _, _ = _cat_quadrature_terms(alpha, qp, x, F)
    return G * x * F + x * x * F * F / 4.0 - s * s / 16.0


def gur_condition(alpha, q, parity) -> bool:
    return gur_margin(alpha, q, parity) >= 0.0


def y_squeezing_margin(alpha, q) -> float:
    """The printed even-cat Y-squeezing expression; squeezing iff negative."""
    alpha, qp, x = _prep(alpha, q)
    if x == 0:
        return 0.0
    ev, od, _ = q_exponential_parts(x, qp)
    R = overlap_ratio(x, qp)
    F = od / ev
    s = (alpha * alpha + alpha.conjugate() ** 2).real
    pref = (R * alpha.real ** 2 - alpha.imag ** 2) / (4.0 * (1.0 + R))
    return pref * (s - 2.0 * (1.0 + qp.q ** 2 * x * F))


def y_squeezing_condition(alpha, q) -> bool:
    """Even-cat Y-quadrature squeezing predicate in its printed form."""
    return y_squeezing_margin(alpha, q) < 0.0


def cat_number_report(alpha, q, parity) -> NumberReport:
    alpha, qp, x, parity = _cat_prep(alpha, q, parity)
    if x == 0:
        raise UndefinedAtVacuum("Mandel parameter is 0/0 at alpha = 0")
    q2 = qp.q ** 2
    ev, od, _ = q_exponential_parts(x, qp)
    R = overlap_ratio(x, qp)
    F = od / ev if parity == "even" else ev / od
    mean = x * F
    var_paper = x * (1.0 + x * F * (q2 - F))
    var_derived = x * F + q2 * x * x - mean * mean
    return NumberReport(
        mean_n=mean,
        var_n_paper=var_paper,
        var_n_derived=var_derived,
        mandel_paper=1.0 / F - 1.0 + (q2 - F) * x,
        mandel_derived=x * (q2 - F * F) / F,
        F=F,
        R=R,
    )


def ordinary_mandel(alpha, parity) -> float:
    """Printed q = 1 cat-state Mandel parameter.

    ``2/(1 - e^{4x}) * (x - 1 -/+ e^{2x}(1 + x))`` with ``x = |alpha|^2``,
    rearranged with expm1 so that small |alpha| keeps full precision.
    """
    parity = _parity(parity)
    x = abs(complex(alpha)) ** 2
    if x == 0:
        raise UndefinedAtVacuum("Mandel parameter is 0/0 at alpha = 0")
    if x > 170.0:
        # e^{4x} overflows; the leading behaviour is -2(1+x) e^{-2x} -> 0
        sign = 1.0 if parity == "even" else -1.0
        return 2.0 * sign * (1.0 + x) * math.exp(-2.0 * x) - 2.0 * (x - 1.0) * math.exp(-4.0 * x)
    e2 = math.expm1(2.0 * x)
    denom = -math.expm1(4.0 * x)
    if parity == "even":
        num = -(2.0 + e2 * (1.0 + x))                   # x - 1 - e^{2x}(1+x)
    else:
        num = 2.0 * x + e2 * (1.0 + x)                  # x - 1 + e^{2x}(1+x)
    return 2.0 * num / denom


def intelligent_state_alpha(q, bracket=(1.5, 2.29), xtol: float = 1e-10) -> float:
    """Real alpha where the even-cat uncertainty product meets its bound.

    Bisection on ``gur_lhs_sq - gur_rhs_sq`` inside ``bracket``; the root is
    accepted only if the Y quadrature is squeezed there.

    Raises
    ------
    NoRoot
        If the difference does not change sign over the bracket, or the
        root is not squeezed.
    """
    qp = as_q(q)
    lo, hi = float(bracket[0]), float(bracket[1])
    if not 0.0 < lo < hi or hi * hi >= qp.radius:
        raise ValueError(f"bracket {bracket} must lie inside (0, sqrt(radius))")

    def g(a):
        rep = cat_quadratures(a, qp, "even")
        return rep.gur_lhs_sq - rep.gur_rhs_sq

    glo, ghi = g(lo), g(hi)
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    if (glo > 0) == (ghi > 0):
        raise NoRoot(f"no sign change on [{lo}, {hi}] (q={qp.q}): {glo:.3e}, {ghi:.3e}")
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm == 0.0:
            lo = hi = mid
            break
        if (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    if not cat_quadratures(root, qp, "even").y_squeezed:
        raise NoRoot(f"root at alpha={root:.10f} shows no Y squeezing")
    return root


def scan_gur_difference(q, alphas):
    """gur_lhs_sq - gur_rhs_sq for the even cat over real alphas."""
    out = []
    for a in alphas:
        rep = cat_quadratures(a, q, "even")
        out.append(rep.gur_lhs_sq - rep.gur_rhs_sq)
    return out


def simultaneous_squeezing_interval(q, alpha_max, steps: int = 2000):
    """Sub-interval of (0, alpha_max) where the even cat is both Y-squeezed and
    sub-Poissonian (derived Mandel < 0), located on a uniform grid.

    Returns ``(lo, hi)`` grid endpoints, or None if no grid point qualifies.
    """
    qp = as_q(q)
    hits = []
    for k in range(1, steps + 1):
        a = alpha_max * k / steps
        if a * a >= qp.radius:
            break
        quad = cat_quadratures(a, qp, "even")
        num = cat_number_report(a, qp, "even")
        if quad.y_squeezed and num.mandel_derived < 0:
            hits.append(a)
    if not hits:
        return None
    return hits[0], hits[-1]
