"""Speed limits on the flow of the exchange-statistics parameter.

How large a statistics shift is needed before an N-particle state
becomes orthogonal to itself?  The exact answer is the first zero of
the overlap factor, kappa_perp = 2*pi/N.  The Mandelstam-Tamm bound
uses the generator variance, the Margolus-Levitin bound the gap to the
lowest generator eigenvalue -N(N-1)/4; both under-predict the true
shift for N > 2.  Bound coefficients are kept exact (rationals, in
units of pi) so ordering statements need no float tolerance; floats
appear only at the reporting boundary.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

from .sectors import _check_count, moments_exact


@dataclass(frozen=True)
class CumulantValue:
    """One cumulant of the exchange generator over the uniform sector measure."""

    order: int
    value: Fraction


@dataclass(frozen=True)
class QslReport:
    """Per-N summary of the orthogonalization bounds and Fisher information."""

    n_particles: int
    variance: Fraction
    kappa_mt: float
    kappa_ml: float
    kappa_perp: float
    fisher_info: Fraction


def variance_g(n: int) -> Fraction:
    """Exact generator variance N(2N^2 + 3N - 5)/72; zero for a single particle."""
    n = _check_count(n)
    if n < 2:
        return Fraction(0)
    return Fraction(n * (2 * n * n + 3 * n - 5), 72)


def _check_bound_domain(n: int) -> int:
    n = _check_count(n)
    if n < 2:
        raise ValueError(
            "orthogonalization bounds are undefined for a single particle "
            "(no exchange)")
    return n


def kappa_mt(n: int) -> float:
    """Mandelstam-Tamm bound pi / (2 sqrt(variance)) on the orthogonality shift."""
    n = _check_bound_domain(n)
    return math.pi / (2.0 * math.sqrt(float(variance_g(n))))


def kappa_ml(n: int) -> float:
    """Margolus-Levitin bound 2*pi / (N(N-1)) on the orthogonality shift."""
    n = _check_bound_domain(n)
    return 2.0 * math.pi / (n * (n - 1))


def kappa_perp(n: int) -> float:
    """Exact orthogonality shift 2*pi/N (the first zero of the overlap factor)."""
    n = _check_bound_domain(n)
    return 2.0 * math.pi / n


def fisher_info(n: int) -> Fraction:
    """Quantum Fisher information of the statistics flow: 4 * variance, exact."""
    n = _check_bound_domain(n)
    return 4 * variance_g(n)


def squared_bounds_in_pi_units(n: int) -> tuple[Fraction, Fraction, Fraction]:
    """(kappa_ml^2, kappa_mt^2, kappa_perp^2) / pi^2 as exact rationals.

    Squaring clears the square root in the MT bound, so the strict chain
    kappa_ml < kappa_mt < kappa_perp (equality only at N = 2) can be
    checked in exact arithmetic.
    """
    n = _check_bound_domain(n)
    ml = Fraction(4, (n * (n - 1)) ** 2)
    mt = Fraction(1, 4) / variance_g(n)
    perp = Fraction(4, n * n)
    return ml, mt, perp


def qsl_report(n: int) -> QslReport:
    """Bundle the three shifts with the exact variance and Fisher information."""
    n = _check_bound_domain(n)
    return QslReport(
        n_particles=n,
        variance=variance_g(n),
        kappa_mt=kappa_mt(n),
        kappa_ml=kappa_ml(n),
        kappa_perp=kappa_perp(n),
        fisher_info=fisher_info(n),
    )


#: Closed forms of the even generator cumulants.  Odd cumulants vanish
#: (the overlap factor is even in the shift).
_CUMULANT_FORMS = {
    2: lambda n: Fraction(n * (2 * n ** 2 + 3 * n - 5), 72),
    4: lambda n: -Fraction(n * (6 * n ** 4 + 15 * n ** 3 + 10 * n ** 2 - 31), 3600),
    6: lambda n: Fraction(
        n * (6 * n ** 6 + 21 * n ** 5 + 21 * n ** 4 - 7 * n ** 2 - 41), 10584),
    8: lambda n: -Fraction(
        n * (10 * n ** 8 + 45 * n ** 7 + 60 * n ** 6 - 42 * n ** 4
             + 20 * n ** 2 - 93), 21600),
    10: lambda n: Fraction(
        n * (6 * n ** 10 + 33 * n ** 9 + 55 * n ** 8 - 66 * n ** 6
             + 66 * n ** 4 - 33 * n ** 2 - 61), 8712),
}


def cumulant(n: int, order: int) -> CumulantValue:
    """Closed-form generator cumulant of the given order (1..10), exact."""
    n = _check_count(n)
    if not isinstance(order, int) or not 1 <= order <= 10:
        raise ValueError(
            f"cumulant order must be an integer in 1..10, got {order!r} "
            "(no closed form beyond order 10)")
    if order % 2 == 1:
        return CumulantValue(order, Fraction(0))
    return CumulantValue(order, _CUMULANT_FORMS[order](n))


def cumulant_oracle(n: int, order: int) -> Fraction:
    """Cumulant from exact brute-force moments via the moment-cumulant recursion.

    Independent of the closed forms above: moments come from sector
    enumeration, and kappa_m = mu_m - sum_j C(m-1, j-1) kappa_j mu_{m-j}
    is evaluated in exact rational arithmetic.  Requires 2 <= N <= 8 and
    even order <= 12.
    """
    n = _check_count(n)
    if not 2 <= n <= 8:
        raise ValueError(f"cumulant oracle supports 2 <= N <= 8, got {n}")
    if not isinstance(order, int) or order < 2 or order % 2 != 0:
        raise ValueError(f"cumulant oracle takes a positive even order, got {order!r}")
    if order > 12:
        raise ValueError(f"cumulant oracle supports order <= 12, got {order}")
    mu = {m: moments_exact(n, m) for m in range(1, order + 1)}
    kappa: dict[int, Fraction] = {}
    for m in range(1, order + 1):
        acc = mu[m]
        for j in range(1, m):
            acc -= math.comb(m - 1, j - 1) * kappa[j] * mu[m - j]
        kappa[m] = acc
    return kappa[order]
