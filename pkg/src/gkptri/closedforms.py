"""Closed-form evaluators for the triangle families, plus the special
numbers they lean on (Stirling subset numbers, Bell polynomials, rising
step factorials, Euler values at 0).

Every evaluator returns exact rationals and never rounds; when a formula
divides by a1^k k! the integrality of the result is a statement to test,
not an assumption, so callers that expect integers should assert them.
Empty products are 1 throughout, and 0^0 = 1 (forced by row 0 of every
triangle).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import ZeroA1, ZeroA2
from .fps import RATIONALS, TruncatedSeries, exp_t
from .polyring import LaurentPoly, Scalar, normalize_scalar
from .triangles import TriangleParams, recurrence_triangle


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling subset number S(n,k): partitions of [n] into k blocks."""
    if n < 0 or k < 0:
        return 0
    if n == 0:
        return 1 if k == 0 else 0
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def bell_polynomial(n: int, lam) -> Scalar:
    """B_n(lam) = sum_k S(n,k) lam^k."""
    lam = Fraction(lam)
    return normalize_scalar(sum(stirling2(n, k) * lam ** k for k in range(n + 1)))


def rising_step(x, a, k: int) -> Scalar:
    """x (x+a) (x+2a) ... (x+(k-1)a), with the empty product equal to 1."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    x, a = Fraction(x), Fraction(a)
    result = Fraction(1)
    for i in range(k):
        result *= x + i * a
    return normalize_scalar(result)


_euler_cache: list[Fraction] = []


def euler_at_zero(k: int) -> Scalar:
    """E_k(0), read off the exact series expansion of 2/(e^t + 1)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k >= len(_euler_cache):
        order = max(2 * k, 8)
        two = TruncatedSeries.constant(RATIONALS, 2, order)
        series = two * (exp_t(1, order) + TruncatedSeries.one(RATIONALS, order)).inverse()
        _euler_cache[:] = [
            Fraction(series.coefficient(i)) * factorial(i) for i in range(order + 1)
        ]
    return normalize_scalar(_euler_cache[k])


def a_mr_explicit(m: int, r: int, n: int, k: int) -> int:
    """Alternating binomial form of the (mk+r)/(mn-mk+m-r) triangle entry."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    return sum(
        (-1) ** j * comb(n + 1, j) * (m * (k - j) + r) ** n for j in range(k + 1)
    )


def f_gram_explicit(a0, a1, a2, n: int, k: int) -> Scalar:
    """Entry of the b = 1 triangle with coefficient a2*n + a1*k + a0:

        (1/(a1^k k!)) sum_j (-1)^(k-j) C(k,j) prod_{r=1..n} (a0 + a1 j + r a2)
    """
    if a1 == 0:
        raise ZeroA1("the explicit formula needs a1 != 0")
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    total = Fraction(0)
    for j in range(k + 1):
        prod = Fraction(1)
        for r in range(1, n + 1):
            prod *= a0 + a1 * j + r * a2
        total += (-1) ** (k - j) * comb(k, j) * prod
    return normalize_scalar(total / (Fraction(a1) ** k * factorial(k)))


def t_b2zero_explicit(a0, a1, a2, b0, b1, n: int, k: int) -> Scalar:
    """Entry of the triangle with coefficients a2*n + a1*k + a0 and
    b1*k + b0: the rising-step prefactor (b0+b1 | b1)^(rising k) times the
    b = 1 entry."""
    if a1 == 0:
        raise ZeroA1("the explicit formula needs a1 != 0")
    if a2 == 0:
        raise ZeroA2("the explicit formula needs a2 != 0")
    prefactor = rising_step(b0 + b1, b1, k)
    return normalize_scalar(Fraction(prefactor) * f_gram_explicit(a0, a1, a2, n, k))


def f_a2zero_explicit(a0, a1, n: int, k: int) -> Scalar:
    """Entry of the b = 1, a2 = 0 triangle:
    sum_{j=k..n} C(n,j) a0^(n-j) a1^(j-k) S(j,k)."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    a0, a1 = Fraction(a0), Fraction(a1)
    total = sum(
        comb(n, j) * a0 ** (n - j) * a1 ** (j - k) * stirling2(j, k)
        for j in range(k, n + 1)
    )
    return normalize_scalar(total)


def touchard_check(a0, a1, n: int) -> tuple[LaurentPoly, LaurentPoly]:
    """Both sides of the Bell-polynomial row identity, as polynomials in a
    formal symbol `alpha`:

        LHS = sum_k F(n,k) alpha^k          (F from the b = 1, a2 = 0 recurrence)
        RHS = sum_k C(n,k) a1^k a0^(n-k) B_k(alpha/a1)
    """
    if a1 == 0:
        raise ZeroA1("the identity needs a1 != 0")
    tri = recurrence_triangle(TriangleParams(a0, a1, 0, 1, 0, 0), n)
    lhs = LaurentPoly.zero()
    for k in range(n + 1):
        lhs = lhs + LaurentPoly.from_exponents({"alpha": k}, tri.entry(n, k))
    rhs = LaurentPoly.zero()
    a0f, a1f = Fraction(a0), Fraction(a1)
    for k in range(n + 1):
        weight = comb(n, k) * a1f ** k * a0f ** (n - k)
        if weight == 0:
            continue
        for j in range(k + 1):
            rhs = rhs + LaurentPoly.from_exponents(
                {"alpha": j}, weight * stirling2(k, j) * Fraction(1, a1) ** j
            )
    return lhs, rhs


def a1zero_rowsum(a0, a2, n: int) -> Scalar:
    """Row sum of the b = 1, a1 = 0 triangle: the rising factorial of
    (1 + a0 + a2)/a2 over n steps, times a2^n."""
    if a2 == 0:
        raise ZeroA2("the row-sum formula needs a2 != 0")
    alpha = Fraction(1 + a0 + a2, 1) / Fraction(a2)
    return normalize_scalar(rising_step(alpha, 1, n) * Fraction(a2) ** n)
