"""Exact counts of standard set-valued tableaux.

Classical formulas, recurrences for the densities (1,k-1,1) and (k-1,1,1),
closed forms for small rectangles, and polynomial interpolation in k.
Everything is integer or Fraction arithmetic.
"""
from __future__ import annotations

import enum
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from pathlib import Path

from filelock import FileLock

from .tableaux import (
    DEFAULT_MAX_ENTRIES,
    Density,
    InstanceTooLarge,
    Shape,
    SkewShape,
    count_svt,
    km1_one_one,
    one_km1_one,
    xi1,
    xi2,
)

CACHE_ENV = "SVYT_CACHE"


class Family(enum.Enum):
    ONE_KM1_ONE = "1k1"
    KM1_ONE_ONE = "k11"
    XI1 = "xi1"
    XI2 = "xi2"
    EXPLICIT = "explicit"

    def density(self, k: int) -> Density:
        makers = {
            Family.ONE_KM1_ONE: one_km1_one,
            Family.KM1_ONE_ONE: km1_one_one,
            Family.XI1: xi1,
            Family.XI2: xi2,
        }
        if self not in makers:
            raise ValueError("explicit family has no density of its own")
        return makers[self](k)

    @property
    def rows(self) -> int:
        return 4 if self in (Family.XI1, Family.XI2) else 3


# -- classical ---------------------------------------------------------------

def hook_length_count(s: Shape | tuple[int, ...]) -> int:
    parts = s.parts if isinstance(s, Shape) else Shape(tuple(s)).parts
    conj = [sum(1 for p in parts if p > j) for j in range(parts[0])] if parts else []
    hooks = prod(parts[i] - j + conj[j] - i - 1 for i in range(len(parts)) for j in range(parts[i]))
    return factorial(sum(parts)) // hooks


def catalan_d(d: int, n: int) -> int:
    """Number of standard Young tableaux of the d x n rectangle.

    The numerator carries 0! 1! ... (d-1)!, which equals (d-1)! only for d <= 3.
    """
    if d < 1 or n < 0:
        raise ValueError(f"need d >= 1 and n >= 0, got d={d}, n={n}")
    num = prod(factorial(i) for i in range(d)) * factorial(d * n)
    return num // prod(factorial(n + i) for i in range(d))


def k_catalan(n: int, k: int) -> int:
    if n < 0 or k < 1:
        raise ValueError(f"need n >= 0 and k >= 1, got n={n}, k={k}")
    return factorial(k * n) // (factorial(k * n - n + 1) * factorial(n))


def hook_shape_count(arm: int, leg: int, k: int) -> int:
    """Shape (arm, 1, ..., 1) with ``leg`` cells below the corner, density (1,k-1,1).

    The corner holds 1, so the count is the number of ways to interleave the
    rest of the top row with the entries of the leg.
    """
    if arm < 1 or not 0 <= leg <= 2 or k < 1:
        raise ValueError(f"need arm >= 1, 0 <= leg <= 2, k >= 1; got {arm}, {leg}, {k}")
    column = (k - 1 if leg >= 1 else 0) + (1 if leg == 2 else 0)
    return comb(arm - 1 + column, arm - 1)


# -- recurrences ---------------------------------------------------------------

def _check_triple(a: int, b: int, c: int, k: int):
    if not (a >= b >= c >= 0) or k < 1:
        raise ValueError(f"need a >= b >= c >= 0 and k >= 1, got ({a},{b},{c}), k={k}")


def _multinomial_weight(k: int, i: int, j: int) -> int:
    if k == 1:
        return 1 if i == j == 0 else 0
    return factorial(k - 2 + i + j) // (factorial(k - 2) * factorial(i) * factorial(j))


@lru_cache(maxsize=None)
def _c1k1(a: int, b: int, c: int, k: int) -> int:
    if not a >= b >= c >= 0:
        return 0
    if b == 0:
        return 1
    if b > c:
        return sum(
            _multinomial_weight(k, i, j) * _c1k1(a - i, b - 1, c - j, k)
            for i in range(a - b + 1)
            for j in range(c + 1)
        )
    return sum(_c1k1(a - i, b, c - 1, k) for i in range(a - b + 1))


def count_1k1(a: int, b: int, c: int, k: int) -> int:
    """|SVT((a,b,c), (1,k-1,1))|, rows listed top first."""
    _check_triple(a, b, c, k)
    return _c1k1(a, b, c, k)


@lru_cache(maxsize=None)
def _skew_two_row_recursive(b: int, c: int, i: int, j: int) -> int:
    if not (b >= c >= 0 and 0 <= j <= i <= b and j <= c):
        return 0
    if b == i and c == j:
        return 1
    total = 0
    if c > j:
        total += _skew_two_row_recursive(b, c - 1, i, j)
    if b > i and b - 1 >= c:
        total += _skew_two_row_recursive(b - 1, c, i, j)
    return total


def _inv_factorial(n: int) -> Fraction:
    return Fraction(0) if n < 0 else Fraction(1, factorial(n))


def _skew_two_row_determinant(b: int, c: int, i: int, j: int) -> int:
    if not (b >= c >= 0 and 0 <= j <= i <= b and j <= c):
        return 0
    det = _inv_factorial(b - i) * _inv_factorial(c - j) - _inv_factorial(b - j + 1) * _inv_factorial(c - i - 1)
    value = factorial(b - i + c - j) * det
    assert value.denominator == 1
    return int(value)


def skew_two_row_syt_count(b: int, c: int, i: int, j: int) -> int:
    """Standard tableaux of the skew shape (b,c)/(i,j); 0 if the shape is invalid."""
    by_corners = _skew_two_row_recursive(b, c, i, j)
    by_det = _skew_two_row_determinant(b, c, i, j)
    if by_corners != by_det:
        raise ArithmeticError(f"(b,c,i,j)=({b},{c},{i},{j}): recursion {by_corners} != determinant {by_det}")
    return by_corners


def _binomial_weight(spare: int, k: int) -> int:
    if k == 1:
        return 1 if spare == 0 else 0
    return comb(spare + k - 2, k - 2)


@lru_cache(maxsize=None)
def _ck11(a: int, b: int, c: int, k: int) -> int:
    if not a >= b >= c >= 0:
        return 0
    if a == 0 or b == 0:
        return 1
    if a > b:
        return sum(
            _binomial_weight(b - i + c - j, k) * skew_two_row_syt_count(b, c, i, j) * _ck11(a - 1, i, j, k)
            for i in range(b + 1)
            for j in range(min(i, c) + 1)
        )
    if b > c:
        return sum(_ck11(a, b - 1, i, k) for i in range(c + 1))
    return _ck11(a, b, c - 1, k)


def count_k11(a: int, b: int, c: int, k: int) -> int:
    """|SVT((a,b,c), (k-1,1,1))|, rows listed top first."""
    _check_triple(a, b, c, k)
    return _ck11(a, b, c, k)


# -- closed forms -------------------------------------------------------------

_CLOSED_1K1 = {
    2: ((1, 0, 1), 1),
    3: ((4, 0, 9, -2, 9), 4),
    4: ((36, 0, 121, -12, 217, -114, 256), 36),
    5: ((576, 0, 2628, -204, 5473, -72, 10258, -10092, 15625), 576),
}

_CLOSED_K11 = {
    2: (Fraction(0), Fraction(3, 2), Fraction(1, 2)),
    3: (Fraction(0), Fraction(-1), Fraction(7, 3), Fraction(3), Fraction(2, 3)),
    4: (
        Fraction(0), Fraction(5, 6), Fraction(-37, 9), Fraction(-35, 24),
        Fraction(175, 18), Fraction(61, 8), Fraction(25, 18),
    ),
}


def _eval_int(coeffs, k: int, den=1) -> int:
    value = Fraction(sum(Fraction(c) * k**e for e, c in enumerate(coeffs)), den)
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral value {value} at k={k}")
    return int(value)


def closed_form_1k1(n: int, k: int) -> int:
    if n not in _CLOSED_1K1:
        raise ValueError(f"closed form known only for n in {sorted(_CLOSED_1K1)}, got {n}")
    coeffs, den = _CLOSED_1K1[n]
    return _eval_int(coeffs, k, den)


def closed_form_k11(n: int, k: int) -> int:
    if n not in _CLOSED_K11:
        raise ValueError(f"closed form known only for n in {sorted(_CLOSED_K11)}, got {n}")
    return _eval_int(_CLOSED_K11[n], k)


# -- polynomials ----------------------------------------------------------------

@dataclass(frozen=True)
class ExactPolynomial:
    coefficients: tuple[Fraction, ...]  # constant term first

    def __post_init__(self):
        coeffs = [Fraction(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, k) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * k + c
        return acc

    def to_json(self) -> str:
        return json.dumps([str(c) for c in self.coefficients])

    def __str__(self):
        terms = [f"{c}*k^{e}" for e, c in enumerate(self.coefficients) if c]
        return " + ".join(terms) or "0"


def lagrange(points: list[tuple[int, int]]) -> ExactPolynomial:
    n = len(points)
    total = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
            denom *= xi - xj
        for t, coeff in enumerate(basis):
            total[t] += yi * coeff / denom
    return ExactPolynomial(tuple(total))


class DegreeBoundViolated(ArithmeticError):
    pass


def degree_bound(a: int, b: int, c: int) -> int | None:
    """Degree in k of |SVT((a,b,c),(1,k-1,1))| where a general bound is known.

    The split is on b = c versus b > c: a > b = c, e.g. (4,2,2), has degree
    a+c-2 like the rectangle, since the b = c branch drops a bottom cell.
    """
    if b < 1 or a + c < 2:
        return None
    return a + c - 2 if b == c else a + c - 1


def interpolate_polynomial(a: int, b: int, c: int, family: Family = Family.ONE_KM1_ONE) -> ExactPolynomial:
    """Interpolate the count as a polynomial in k from samples k = 1, 2, ...

    One sample beyond the degree bound is held back and must match. Where no
    bound is known the degree is measured by sampling until two consecutive
    guards agree.
    """
    if family is not Family.ONE_KM1_ONE:
        raise ValueError("interpolation is supported for the (1,k-1,1) family only")
    _check_triple(a, b, c, 1)
    bound = degree_bound(a, b, c)
    sample = lambda k: (k, count_1k1(a, b, c, k))
    if bound is None:
        bound = a + b + c
        points = [sample(k) for k in range(1, bound + 2)]
        poly = lagrange(points)
        for guard in (bound + 2, bound + 3):
            k, v = sample(guard)
            if poly(k) != v:
                raise DegreeBoundViolated(f"({a},{b},{c}): no polynomial of degree <= {bound}")
        return poly
    points = [sample(k) for k in range(1, bound + 2)]
    poly = lagrange(points)
    k, v = sample(bound + 2)
    if poly(k) != v:
        raise DegreeBoundViolated(f"({a},{b},{c}): degree bound {bound} violated at k={k}")
    if poly.degree != bound:
        raise DegreeBoundViolated(f"({a},{b},{c}): expected degree {bound}, found {poly.degree}")
    return poly


# -- records and cache -------------------------------------------------------------

@dataclass(frozen=True)
class CountRecord:
    shape: Shape
    family: Family
    k: int
    value: int
    density: Density | None = None

    @property
    def key(self) -> str:
        dens = ",".join(map(str, self.density.per_row)) if self.density else str(self.k)
        return f"{self.family.value}:{','.join(map(str, self.shape.parts))}:{dens}"


class CountCache:
    """Count memo persisted as one JSON object, guarded by a file lock."""

    def __init__(self, path: str | os.PathLike | None = None):
        if path is None:
            path = os.environ.get(CACHE_ENV) or None
        self.path = Path(path) if path else None
        self._memo: dict[str, int] = {}
        self._dirty: dict[str, int] = {}
        if self.path and self.path.exists():
            with self._lock():
                self._memo.update(self._read())

    def _lock(self) -> FileLock:
        return FileLock(str(self.path) + ".lock")

    def _read(self) -> dict[str, int]:
        text = self.path.read_text() if self.path.exists() else ""
        return {k: int(v) for k, v in json.loads(text).items()} if text.strip() else {}

    def get(self, key: str) -> int | None:
        return self._memo.get(key)

    def put(self, key: str, value: int):
        old = self._memo.get(key)
        if old is not None and old != value:
            raise ValueError(f"cache conflict for {key}: {old} != {value}")
        self._memo[key] = value
        self._dirty[key] = value

    def flush(self):
        if not self.path or not self._dirty:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self._lock():
            merged = self._read()
            merged.update({k: str(v) for k, v in self._dirty.items()})
            tmp = self.path.with_suffix(self.path.suffix + ".tmp")
            tmp.write_text(json.dumps({k: str(v) for k, v in sorted(merged.items())}, indent=0) + "\n")
            tmp.replace(self.path)
        self._dirty.clear()

    def clear(self):
        self._memo.clear()
        self._dirty.clear()
        if self.path and self.path.exists():
            with self._lock():
                self.path.unlink()

    def __len__(self):
        return len(self._memo)


def count_explicit(s: Shape, d: Density, max_entries: int | None = DEFAULT_MAX_ENTRIES) -> int:
    """Exhaustive count for an arbitrary straight shape and density."""
    return count_svt(SkewShape(s, Shape(())), d, max_entries=max_entries)


def count_family(
    family: Family,
    n: int,
    k: int,
    max_entries: int | None = DEFAULT_MAX_ENTRIES,
    cache: CountCache | None = None,
) -> int:
    """Count for the rectangle with ``family.rows`` rows of length ``n``.

    Recurrence families ignore the budget; the four-row families are counted
    exhaustively and raise InstanceTooLarge beyond ``max_entries``.
    """
    shape = Shape((n,) * family.rows)
    record_key = CountRecord(shape, family, k, 0).key
    if cache is not None:
        hit = cache.get(record_key)
        if hit is not None:
            return hit
    if family is Family.ONE_KM1_ONE:
        value = count_1k1(n, n, n, k)
    elif family is Family.KM1_ONE_ONE:
        value = count_k11(n, n, n, k)
    else:
        value = count_explicit(shape, family.density(k), max_entries=max_entries)
    if cache is not None:
        cache.put(record_key, value)
    return value


# Reference values kept verbatim, discrepancies included; keys (k, n).
def _table(rows: dict[int, list[int]]) -> dict[tuple[int, int], int]:
    return {(k, n): v for k, vals in rows.items() for n, v in enumerate(vals, start=1)}


TABLE_1K1 = _table({
    1: [1, 2, 5, 14, 42, 132],
    2: [1, 5, 42, 462, 6006, 87516],
    3: [1, 10, 190, 4295, 153415, 5396601],
    4: [1, 17, 581, 27461, 1566018, 100950800],
    5: [1, 26, 1401, 105026, 9511451],
    6: [1, 37, 2890, 315014, 41500117],
    7: [1, 50, 5342, 797917, 144067106],
})

TABLE_K11 = _table({
    1: [1, 2, 5, 14, 42, 132],
    2: [1, 5, 42, 462, 6006, 87516],
    3: [1, 9, 153, 3579, 101630, 3288871],
    4: [1, 14, 396, 15830, 779063, 44072801],
    5: [1, 20, 845, 51325, 3872370],
    6: [1, 27, 1590, 136234, 14589623],
    7: [1, 35, 2737, 314202],
})

TABLE_XI1 = _table({
    1: [1, 2, 5, 14, 42, 132],
    2: [1, 14, 462, 24024, 1662804, 140229804],
    3: [1, 84, 24521, 13074832],
    4: [1, 460, 960875, 3959335892],
    5: [1, 2380, 31378194],
    6: [1, 11814],
    7: [1, 57288],
})

TABLE_XI2 = _table({
    1: [1, 5, 42, 462, 6006, 87516],
    2: [1, 14, 462, 24024, 1662804, 140229804],
    3: [1, 28, 2158, 281571, 50972547],
    4: [1, 48, 6990, 1798860, 658138000],
    5: [1, 75, 18275, 8103935],
    6: [1, 110, 41382, 28950168],
    7: [1, 154, 84427],
})

TABLES = {
    Family.ONE_KM1_ONE: TABLE_1K1,
    Family.KM1_ONE_ONE: TABLE_K11,
    Family.XI1: TABLE_XI1,
    Family.XI2: TABLE_XI2,
}

__all__ = [
    "CACHE_ENV", "CountCache", "CountRecord", "DegreeBoundViolated", "ExactPolynomial", "Family",
    "InstanceTooLarge", "TABLES", "catalan_d", "closed_form_1k1", "closed_form_k11", "count_1k1",
    "count_explicit", "count_family", "count_k11", "degree_bound", "hook_length_count",
    "hook_shape_count", "interpolate_polynomial", "k_catalan", "lagrange", "skew_two_row_syt_count",
]
