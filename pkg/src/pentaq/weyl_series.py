"""Exact truncated series algebra in two q-commuting variables.

The variables satisfy xy = q yx.  Every series is kept normal-ordered:
a monomial with key (a, b) stands for x^a y^b.  Coefficients are exact
`fractions.Fraction` values when q is rational, so the operator pentagon
check below is an exact computation with no tolerance at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping

__all__ = [
    "Generator",
    "NormalOrderedSeries",
    "series_multiply",
    "quantum_dilog_series",
    "check_operator_pentagon",
    "OperatorPentagonReport",
]


class Generator(Enum):
    """Argument choices for the quantum dilogarithm expansion."""

    X = "x"
    Y = "y"
    NEG_XY = "-xy"


def _coerce(value):
    """Keep exact rationals exact; everything else becomes complex."""
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    return complex(value)


@dataclass(frozen=True)
class NormalOrderedSeries:
    """A truncated formal series sum_{a+b <= max_degree} c_{ab} x^a y^b.

    Immutable.  Zero coefficients are never stored; keys outside the degree
    cap are dropped at construction.
    """

    coefficients: Mapping[tuple[int, int], object]
    max_degree: int
    q: object

    def __post_init__(self) -> None:
        if self.max_degree < 0:
            raise ValueError("max_degree must be nonnegative")
        q = _coerce(self.q)
        clean = {}
        for (a, b), c in self.coefficients.items():
            if a < 0 or b < 0:
                raise ValueError(f"exponents must be nonnegative, got {(a, b)}")
            if a + b > self.max_degree:
                continue
            c = _coerce(c)
            if c != 0:
                clean[(a, b)] = c
        object.__setattr__(self, "coefficients", clean)
        object.__setattr__(self, "q", q)

    @classmethod
    def one(cls, max_degree: int, q) -> "NormalOrderedSeries":
        return cls({(0, 0): Fraction(1)}, max_degree, q)

    @classmethod
    def monomial(cls, a: int, b: int, max_degree: int, q,
                 coeff=Fraction(1)) -> "NormalOrderedSeries":
        return cls({(a, b): coeff}, max_degree, q)

    def coefficient(self, a: int, b: int):
        return self.coefficients.get((a, b), Fraction(0))

    def __add__(self, other: "NormalOrderedSeries") -> "NormalOrderedSeries":
        self._check_compatible(other)
        out = dict(self.coefficients)
        for key, c in other.coefficients.items():
            out[key] = out.get(key, Fraction(0)) + c
        return NormalOrderedSeries(out, self.max_degree, self.q)

    def __sub__(self, other: "NormalOrderedSeries") -> "NormalOrderedSeries":
        self._check_compatible(other)
        out = dict(self.coefficients)
        for key, c in other.coefficients.items():
            out[key] = out.get(key, Fraction(0)) - c
        return NormalOrderedSeries(out, self.max_degree, self.q)

    def __mul__(self, other: "NormalOrderedSeries") -> "NormalOrderedSeries":
        return series_multiply(self, other)

    def drop_y(self) -> "NormalOrderedSeries":
        """Specialize y = 0: keep only monomials with b = 0."""
        kept = {k: c for k, c in self.coefficients.items() if k[1] == 0}
        return NormalOrderedSeries(kept, self.max_degree, self.q)

    def max_abs_coefficient(self):
        """Largest coefficient magnitude (exact Fraction when possible)."""
        if not self.coefficients:
            return Fraction(0)
        return max(abs(c) for c in self.coefficients.values())

    def table(self) -> list[tuple[int, int, object]]:
        """Sorted (a, b, coefficient) rows for display."""
        return [(a, b, c) for (a, b), c in
                sorted(self.coefficients.items(), key=lambda kv: (sum(kv[0]), kv[0]))]

    def _check_compatible(self, other: "NormalOrderedSeries") -> None:
        if self.q != other.q:
            raise ValueError(f"mismatched q: {self.q} vs {other.q}")
        if self.max_degree != other.max_degree:
            raise ValueError("mismatched max_degree")


def _q_power(q, exponent: int):
    """q**exponent with exact Fractions surviving negative exponents."""
    if isinstance(q, Fraction):
        return q ** exponent
    return q ** exponent


def series_multiply(lhs: NormalOrderedSeries,
                    rhs: NormalOrderedSeries) -> NormalOrderedSeries:
    """Product of two normal-ordered series, truncated to max_degree.

    Uses y^b x^c = q^{-b c} x^c y^b, the iterated form of y x = q^{-1} x y.
    """
    lhs._check_compatible(rhs)
    deg = lhs.max_degree
    q = lhs.q
    out: dict[tuple[int, int], object] = {}
    for (a, b), cl in lhs.coefficients.items():
        for (c, d), cr in rhs.coefficients.items():
            if a + c + b + d > deg:
                continue
            key = (a + c, b + d)
            coeff = cl * cr * _q_power(q, -b * c)
            out[key] = out.get(key, Fraction(0)) + coeff
    return NormalOrderedSeries(out, deg, q)


def _qfact(q, n: int):
    """(q; q)_n by finite recurrence (exact for rational q)."""
    prod = Fraction(1) if isinstance(q, Fraction) else 1.0 + 0j
    for k in range(1, n + 1):
        prod = prod * (1 - _q_power(q, k))
    return prod


def quantum_dilog_series(generator: Generator, max_degree: int,
                         q) -> NormalOrderedSeries:
    """Expansion of l(G) = prod_{i>=1} (1 - G q^i) as a normal-ordered series.

    Euler's identity gives l(G) = sum_{n>=0} c_n G^n with
    c_n = (-1)^n q^{n(n+1)/2} / (q; q)_n.  For G = -xy each power is
    normal-ordered via (xy)^n = q^{-n(n-1)/2} x^n y^n.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    q = _coerce(q)
    coeffs: dict[tuple[int, int], object] = {}
    for n in range(max_degree + 1):
        c = (-1) ** n * _q_power(q, n * (n + 1) // 2) / _qfact(q, n)
        if generator is Generator.X:
            key = (n, 0)
        elif generator is Generator.Y:
            key = (0, n)
        elif generator is Generator.NEG_XY:
            if 2 * n > max_degree:
                break
            key = (n, n)
            c = c * (-1) ** n * _q_power(q, -(n * (n - 1) // 2))
        else:  # pragma: no cover - enum is exhaustive
            raise ValueError(f"unknown generator {generator}")
        coeffs[key] = c
    return NormalOrderedSeries(coeffs, max_degree, q)


@dataclass(frozen=True)
class OperatorPentagonReport:
    """Outcome of the exact operator pentagon check at one (q, degree)."""

    q: object
    max_degree: int
    max_residual: object
    residual_table: tuple

    @property
    def exact_zero(self) -> bool:
        return self.max_residual == 0


def check_operator_pentagon(max_degree: int, q) -> OperatorPentagonReport:
    """Exact check of l(y) l(x) = l(x) l(-xy) l(y) up to total degree.

    Returns the maximum residual coefficient magnitude (expected exactly
    zero when q is rational) together with the full residual table.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    q = _coerce(q)
    if isinstance(q, Fraction) and not 0 < q < 1:
        raise ValueError(f"need 0 < q < 1, got {q}")
    lx = quantum_dilog_series(Generator.X, max_degree, q)
    ly = quantum_dilog_series(Generator.Y, max_degree, q)
    lxy = quantum_dilog_series(Generator.NEG_XY, max_degree, q)
    lhs = series_multiply(ly, lx)
    rhs = series_multiply(series_multiply(lx, lxy), ly)
    diff = lhs - rhs
    return OperatorPentagonReport(
        q=q,
        max_degree=max_degree,
        max_residual=diff.max_abs_coefficient(),
        residual_table=tuple(diff.table()),
    )
