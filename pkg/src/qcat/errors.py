"""Exception types raised by qcat."""


class QcatError(Exception):
    """Base class for all domain errors in this package."""


class DivergentSeries(QcatError):
    """The q-exponential argument lies on or outside the radius of convergence."""


class NonNormalizable(QcatError):
    """|alpha|^2 is not strictly inside the radius of convergence."""


class NullState(QcatError):
    """The requested superposition vanishes identically (odd cat at alpha = 0)."""


class UndefinedAtVacuum(QcatError):
    """Mandel parameter requested for a state with zero mean excitation."""


class NoRoot(QcatError):
    """No sign change of the bracketed function."""


class ConvergenceFailure(QcatError):
    """An iterative kernel did not reach the requested accuracy."""


class DimensionMismatch(QcatError, ValueError):
    pass


class QFactorialOverflow(QcatError, OverflowError):
    def __init__(self, n, q):
        super().__init__(f"[n]_q! overflows float64 at n={n} (q={q})")
        self.n = n
        self.q = q
