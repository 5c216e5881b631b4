"""Triangular arrays T(n,k) = (a2*n + a1*k + a0) T(n-1,k) + (b2*n + b1*k + b0) T(n-1,k-1).

Boundary: T(0,0) = 1 and T(n,k) = 0 whenever k < 0 or k > n.  Rows are
filled bottom-up; row n has the n+1 entries T(n,0..n), with any structural
zeros (leading or trailing) stored explicitly so row/column indices line up
with the grammar picture.

The named families used downstream are all instances of the general
recurrence; their parameter six-tuples are recorded here:

  whitney_params(m, r)      = (r, m, 0, m-r, -m, m)      coefficients (mk+r), (mn-mk+m-r)
  r_eulerian_params(r)      = whitney_params(1, r)       coefficients (k+r), (n-k+1-r)
  second_order_params(r)    = (1, 1, 0, 1-r, -1, r)      coefficients (k+1), (rn-k+1-r)
  stirling2_params()        = (0, 1, 0, 1, 0, 0)         coefficients k, 1
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import NonIntegerParams, RowOutOfRange
from .polyring import Scalar, normalize_scalar


@dataclass(frozen=True)
class TriangleParams:
    """The six coefficients of the two-term triangular recurrence."""

    a0: Scalar
    a1: Scalar
    a2: Scalar
    b0: Scalar
    b1: Scalar
    b2: Scalar

    def __post_init__(self):
        for name in ("a0", "a1", "a2", "b0", "b1", "b2"):
            object.__setattr__(self, name, normalize_scalar(getattr(self, name)))

    @classmethod
    def parse(cls, text: str) -> TriangleParams:
        """Parse `a0,a1,a2,b0,b1,b2` with integer or p/q entries."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 6:
            raise ValueError(f"expected six comma-separated values, got {len(parts)}")
        return cls(*(Fraction(p) for p in parts))

    def as_tuple(self) -> tuple[Scalar, ...]:
        return (self.a0, self.a1, self.a2, self.b0, self.b1, self.b2)

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for v in self.as_tuple())

    def require_integral(self) -> None:
        if not self.is_integral():
            raise NonIntegerParams(f"all six parameters must be integers, got {self}")

    def coeff_a(self, n: int, k: int) -> Scalar:
        return self.a2 * n + self.a1 * k + self.a0

    def coeff_b(self, n: int, k: int) -> Scalar:
        return self.b2 * n + self.b1 * k + self.b0

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.as_tuple())


def whitney_params(m: int, r: int) -> TriangleParams:
    return TriangleParams(r, m, 0, m - r, -m, m)


def r_eulerian_params(r: int) -> TriangleParams:
    return whitney_params(1, r)


def second_order_params(r: int) -> TriangleParams:
    return TriangleParams(1, 1, 0, 1 - r, -1, r)


def stirling2_params() -> TriangleParams:
    return TriangleParams(0, 1, 0, 1, 0, 0)


@dataclass
class Triangle:
    """Computed rows of a triangular array, rows[n] = [T(n,0), ..., T(n,n)]."""

    params: TriangleParams | None
    rows: list[list[Scalar]]
    family: str | None = None

    @property
    def n_max(self) -> int:
        return len(self.rows) - 1

    def row(self, n: int) -> list[Scalar]:
        if not 0 <= n <= self.n_max:
            raise RowOutOfRange(f"row {n} not computed (have 0..{self.n_max})")
        return self.rows[n]

    def entry(self, n: int, k: int) -> Scalar:
        """T(n,k), with out-of-range indices reading as 0."""
        if n < 0 or k < 0 or k > n:
            return 0
        return self.row(n)[k]

    def row_sum(self, n: int) -> Scalar:
        return normalize_scalar(sum(Fraction(v) for v in self.row(n)))

    def alternating_row_sum(self, n: int) -> Scalar:
        total = sum(Fraction(v) if k % 2 == 0 else -Fraction(v)
                    for k, v in enumerate(self.row(n)))
        return normalize_scalar(total)

    def assert_integral(self) -> None:
        for n, row in enumerate(self.rows):
            for k, v in enumerate(row):
                if not isinstance(v, int):
                    raise AssertionError(f"T({n},{k}) = {v} is not an integer")

    def label(self) -> str:
        if self.family:
            return self.family
        return f"gkp({self.params})" if self.params else "triangle"


def recurrence_triangle(params: TriangleParams, n_max: int,
                        family: str | None = None) -> Triangle:
    """Fill rows 0..n_max directly from the recurrence."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    rows: list[list[Scalar]] = [[1]]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        row: list[Scalar] = []
        for k in range(n + 1):
            value = 0
            if k <= n - 1:
                value += params.coeff_a(n, k) * prev[k]
            if k >= 1:
                value += params.coeff_b(n, k) * prev[k - 1]
            row.append(normalize_scalar(value))
        rows.append(row)
    return Triangle(params=params, rows=rows, family=family)


def whitney_eulerian(m: int, r: int, n_max: int) -> Triangle:
    """Numbers counted by size-m-typed permutations with r-excedances;
    recurrence coefficients (mk+r) and (mn-mk+m-r)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return recurrence_triangle(whitney_params(m, r), n_max,
                               family=f"whitney(m={m},r={r})")


def r_eulerian(r: int, n_max: int) -> Triangle:
    """Permutations of [n] counted by the number of j with sigma(j) >= j+r."""
    if r < 0:
        raise ValueError("r must be >= 0")
    return recurrence_triangle(r_eulerian_params(r), n_max,
                               family=f"r-eulerian(r={r})")


def second_order_eulerian(r: int, n_max: int) -> Triangle:
    """Stirling r-permutations of [n] counted by descents; the r=2 rows sum
    to (2n-1)!!."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return recurrence_triangle(second_order_params(r), n_max,
                               family=f"second-order(r={r})")


def stirling2_triangle(n_max: int) -> Triangle:
    """Stirling subset numbers S(n,k), including the leading zero column."""
    return recurrence_triangle(stirling2_params(), n_max, family="stirling2")


# -- rendering ----------------------------------------------------------------

FORMATS = ("plain", "csv", "json", "oeis")


def _render_value(v: Scalar):
    return v if isinstance(v, int) else str(v)


def _trim(row: list[Scalar]) -> list[Scalar]:
    """Drop trailing zeros but keep at least one entry."""
    end = len(row)
    while end > 1 and row[end - 1] == 0:
        end -= 1
    return row[:end]


def format_triangle(t: Triangle, fmt: str) -> str:
    """Render a triangle; `plain` and `oeis` trim trailing zeros for
    readability, `csv` and `json` keep full rows."""
    if fmt == "plain":
        lines = [f"n={n}: " + ",".join(str(_render_value(v)) for v in _trim(row))
                 for n, row in enumerate(t.rows)]
        return "\n".join(lines)
    if fmt == "oeis":
        return "\n".join(",".join(str(_render_value(v)) for v in _trim(row))
                         for row in t.rows)
    if fmt == "csv":
        return "\n".join(",".join(str(_render_value(v)) for v in row)
                         for row in t.rows)
    if fmt == "json":
        payload = {
            "label": t.label(),
            "params": str(t.params) if t.params else None,
            "rows": [[_render_value(v) for v in row] for row in t.rows],
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))
    raise ValueError(f"unknown format {fmt!r} (choose from {', '.join(FORMATS)})")
