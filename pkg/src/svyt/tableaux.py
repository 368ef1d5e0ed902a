"""Set-valued Young tableaux of (skew) shape with row-constant density.

Coordinates are 1-based ``(row, column)`` and absolute: the cells of row ``i``
of a skew shape ``outer/inner`` are ``inner[i] < j <= outer[i]``.

A cell of row ``i`` holds exactly ``density[i]`` entries.  Standardness is
checked against the componentwise order on cells: every entry of ``(i, j)`` is
smaller than every entry of ``(i', j')`` whenever ``i <= i'`` and ``j <= j'``.
For positive densities this is the usual row/column condition; it also gives
zero-density rows (the degenerate ``k = 1`` case) their intended meaning of
transmitting the order between the rows around them.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

DEFAULT_MAX_ENTRIES = 24

Cell = tuple[int, int]


class InstanceTooLarge(ValueError):
    """Raised when a brute-force request exceeds the configured entry budget."""

    def __init__(self, entries: int, cap: int):
        super().__init__(f"instance too large: {entries} entries exceeds cap {cap}")
        self.entries = entries
        self.cap = cap


def _strip_zeros(parts: Sequence[int]) -> tuple[int, ...]:
    parts = list(parts)
    while parts and parts[-1] == 0:
        parts.pop()
    return tuple(parts)


@dataclass(frozen=True)
class Shape:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", _strip_zeros(parts))

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i] if i < len(self.parts) else 0

    @property
    def size(self) -> int:
        return sum(self.parts)

    def is_rectangular(self) -> bool:
        return len(set(self.parts)) <= 1


@dataclass(frozen=True)
class SkewShape:
    outer: Shape
    inner: Shape = field(default_factory=lambda: Shape(()))

    def __post_init__(self):
        if not isinstance(self.outer, Shape):
            object.__setattr__(self, "outer", Shape(tuple(self.outer)))
        if not isinstance(self.inner, Shape):
            object.__setattr__(self, "inner", Shape(tuple(self.inner)))
        if len(self.inner) > len(self.outer):
            raise ValueError("inner shape has more rows than outer shape")
        for i in range(len(self.outer)):
            if self.inner[i] > self.outer[i]:
                raise ValueError(f"inner[{i}] > outer[{i}]")

    @classmethod
    def straight(cls, parts: Sequence[int]) -> SkewShape:
        return cls(Shape(tuple(parts)))

    @property
    def rows(self) -> int:
        return len(self.outer)

    def row_range(self, i: int) -> range:
        """Columns of row ``i`` (1-based)."""
        return range(self.inner[i - 1] + 1, self.outer[i - 1] + 1)

    def row_length(self, i: int) -> int:
        return self.outer[i - 1] - self.inner[i - 1]

    def cells(self) -> list[Cell]:
        return [(i, j) for i in range(1, self.rows + 1) for j in self.row_range(i)]

    @property
    def size(self) -> int:
        return self.outer.size - self.inner.size

    def is_straight(self) -> bool:
        return self.inner.size == 0

    def __contains__(self, cell) -> bool:
        i, j = cell
        return 1 <= i <= self.rows and self.inner[i - 1] < j <= self.outer[i - 1]


@dataclass(frozen=True)
class Density:
    per_row: tuple[int, ...]

    def __post_init__(self):
        per_row = tuple(int(d) for d in self.per_row)
        if any(d < 0 for d in per_row):
            raise ValueError(f"negative density in {per_row}")
        object.__setattr__(self, "per_row", per_row)

    def __getitem__(self, i):
        return self.per_row[i] if i < len(self.per_row) else 0

    def __len__(self):
        return len(self.per_row)

    def reversed(self) -> Density:
        return Density(self.per_row[::-1])

    def total(self, shape: SkewShape) -> int:
        self.check(shape)
        return sum(shape.row_length(i) * self[i - 1] for i in range(1, shape.rows + 1))

    def check(self, shape: SkewShape):
        nonzero = sum(1 for i in range(1, shape.rows + 1) if shape.row_length(i) > 0)
        if len(self.per_row) < shape.rows and nonzero > len(self.per_row):
            raise ValueError(f"density {self.per_row} too short for {shape.rows} rows")


def one_km1_one(k: int) -> Density:
    return Density((1, k - 1, 1))


def km1_one_one(k: int) -> Density:
    return Density((k - 1, 1, 1))


def xi1(k: int) -> Density:
    return Density((1, k - 1, k - 1, 1))


def xi2(k: int) -> Density:
    return Density((k - 1, 1, 1, 1))


@dataclass(frozen=True)
class SetValuedTableau:
    """A filling of a skew diagram; ``rows[i-1]`` lists the cell sets of row ``i``
    from its leftmost existing column to its rightmost."""

    skew_shape: SkewShape
    density: Density
    rows: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(tuple(sorted(c)) for c in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.skew_shape.rows:
            raise ValueError(f"expected {self.skew_shape.rows} rows, got {len(rows)}")
        for i, row in enumerate(rows, start=1):
            if len(row) != self.skew_shape.row_length(i):
                raise ValueError(f"row {i} has {len(row)} cells, shape wants {self.skew_shape.row_length(i)}")

    @classmethod
    def from_rows(cls, rows, density=None, inner=()) -> SetValuedTableau:
        """Build from nested lists; bare integers are singleton cells.  Density is
        inferred from the first cell of each row when not given."""
        norm = [[(c,) if isinstance(c, int) else tuple(c) for c in row] for row in rows]
        inner = tuple(inner) + (0,) * (len(norm) - len(inner))
        outer = tuple(inner[i] + len(row) for i, row in enumerate(norm))
        if density is None:
            density = tuple(len(row[0]) if row else 0 for row in norm)
        if not isinstance(density, Density):
            density = Density(tuple(density))
        while len(norm) and not norm[-1] and outer[len(norm) - 1] == 0:
            norm.pop()
        return cls(SkewShape(Shape(outer[: len(norm)]), Shape(inner[: len(norm)])), density, tuple(map(tuple, norm)))

    @property
    def cells(self) -> dict[Cell, tuple[int, ...]]:
        out = {}
        for i, row in enumerate(self.rows, start=1):
            for j, entries in zip(self.skew_shape.row_range(i), row):
                out[(i, j)] = entries
        return out

    def cell(self, i: int, j: int) -> tuple[int, ...]:
        return self.rows[i - 1][j - self.skew_shape.inner[i - 1] - 1]

    @property
    def size(self) -> int:
        return sum(len(c) for row in self.rows for c in row)

    def row_entries(self, i: int) -> list[int]:
        if i > len(self.rows):
            return []
        return [e for c in self.rows[i - 1] for e in c]

    def to_text(self) -> str:
        return format_text(self)

    def to_json(self) -> str:
        return format_json(self)

    def __str__(self):
        return format_text(self)


def standardness_violation(t: SetValuedTableau, d: Density | None = None) -> str | None:
    """Return a reason string if ``t`` is not standard for density ``d``, else None."""
    d = t.density if d is None else d
    shape = t.skew_shape
    try:
        total = d.total(shape)
    except ValueError as exc:
        return str(exc)
    cells = t.cells
    for (i, j), entries in cells.items():
        if len(entries) != d[i - 1]:
            return f"cell {(i, j)} has {len(entries)} entries, density wants {d[i - 1]}"
        if len(set(entries)) != len(entries):
            return f"cell {(i, j)} repeats an entry"
    everything = sorted(e for entries in cells.values() for e in entries)
    if everything != list(range(1, total + 1)):
        return f"entries are not exactly 1..{total}"
    for (i, j), entries in cells.items():
        if not entries:
            continue
        top = max(entries)
        for (i2, j2), other in cells.items():
            if (i2, j2) != (i, j) and i <= i2 and j <= j2 and other and min(other) < top:
                return f"cell {(i, j)} not below cell {(i2, j2)}"
    return None


def is_standard(t: SetValuedTableau, d: Density | None = None) -> bool:
    return standardness_violation(t, d) is None


def _predecessors(shape: SkewShape) -> dict[Cell, list[Cell]]:
    cells = shape.cells()
    return {c: [p for p in cells if p != c and p[0] <= c[0] and p[1] <= c[1]] for c in cells}


def _check_budget(entries: int, max_entries: int | None):
    cap = DEFAULT_MAX_ENTRIES if max_entries is None else max_entries
    if entries > cap:
        raise InstanceTooLarge(entries, cap)


def enumerate_svt(shape: SkewShape, d: Density, max_entries: int | None = None) -> Iterator[SetValuedTableau]:
    """Yield every standard set-valued tableau of ``shape`` with density ``d``.

    Values 1..M are placed in increasing order; each value tries candidate
    cells in row-major order.  A cell may receive a value only once all cells
    weakly north-west of it are full, which keeps every partial filling
    standard, so the stream is in lexicographic order of placement words.
    """
    if not isinstance(shape, SkewShape):
        shape = SkewShape.straight(shape)
    total = d.total(shape)
    _check_budget(total, max_entries)
    cells = shape.cells()
    index = {c: n for n, c in enumerate(cells)}
    cap = [d[i - 1] for i, _ in cells]
    preds = [[index[p] for p in ps] for ps in _predecessors(shape).values()]
    fill: list[list[int]] = [[] for _ in cells]

    def ready(n):
        return len(fill[n]) < cap[n] and all(len(fill[p]) == cap[p] for p in preds[n])

    def build():
        rows = []
        for i in range(1, shape.rows + 1):
            rows.append(tuple(tuple(fill[index[(i, j)]]) for j in shape.row_range(i)))
        return SetValuedTableau(shape, d, tuple(rows))

    def place(value):
        if value > total:
            yield build()
            return
        for n in range(len(cells)):
            if ready(n):
                fill[n].append(value)
                yield from place(value + 1)
                fill[n].pop()

    yield from place(1)


def count_svt(shape: SkewShape, d: Density, max_entries: int | None = 64) -> int:
    """Brute-force count of ``SVT(shape, d)`` by dynamic programming over partial
    fillings (same placement rule as ``enumerate_svt``, states memoized)."""
    if not isinstance(shape, SkewShape):
        shape = SkewShape.straight(shape)
    total = d.total(shape)
    _check_budget(total, max_entries)
    cells = shape.cells()
    index = {c: n for n, c in enumerate(cells)}
    cap = tuple(d[i - 1] for i, _ in cells)
    preds = tuple(tuple(index[p] for p in ps) for ps in _predecessors(shape).values())

    @lru_cache(maxsize=None)
    def ways(state: tuple[int, ...]) -> int:
        if state == cap:
            return 1
        out = 0
        for n, filled in enumerate(state):
            if filled < cap[n] and all(state[p] == cap[p] for p in preds[n]):
                out += ways(state[:n] + (filled + 1,) + state[n + 1:])
        return out

    return ways(tuple(0 for _ in cells))


def rotate_skew(t: SetValuedTableau, width: int | None = None, height: int | None = None) -> SetValuedTableau:
    """Rotate ``t`` by 180 degrees inside a ``height x width`` box and reverse
    its entries ``a -> M - a + 1``; the density is reversed.  Rows missing from
    ``t`` (zero-length trailing rows) count as empty."""
    shape = t.skew_shape
    width = shape.outer[0] if width is None else width
    r = max(shape.rows, len(t.density)) if height is None else height
    outer = tuple(width - shape.inner[r - 1 - i] for i in range(r))
    inner = tuple(width - shape.outer[r - 1 - i] for i in range(r))
    total = t.size
    rows = []
    for i in range(r):
        old = t.rows[r - 1 - i] if r - 1 - i < len(t.rows) else ()
        rows.append(tuple(tuple(sorted(total + 1 - e for e in c)) for c in reversed(old)))
    density = Density(tuple(t.density[i] for i in range(r))[::-1])
    new_shape = SkewShape(Shape(outer), Shape(inner[: len(_strip_zeros(outer))]))
    return SetValuedTableau(new_shape, density, tuple(rows[: new_shape.rows]))


def schutzenberger(t: SetValuedTableau) -> SetValuedTableau:
    """Set-valued Schützenberger involution on a straight rectangular tableau."""
    shape = t.skew_shape
    if not shape.is_straight() or not shape.outer.is_rectangular():
        raise ValueError(f"schutzenberger needs a straight rectangular shape, got {shape}")
    return rotate_skew(t, height=shape.rows)


def skew_family(shape: SkewShape) -> tuple[int, int, int]:
    """Return ``(n, a, b)`` when ``shape = (n, n, n - a)/(b, 0, 0)``."""
    outer, inner = shape.outer, shape.inner
    n = outer[0]
    if n == 0 or shape.rows not in (2, 3) or outer[1] != n or inner[1] or inner[2]:
        raise ValueError(f"shape {shape} is not of the form (n,n,n-a)/(b,0,0)")
    return n, n - outer[2], inner[0]


def skew_schutzenberger(t: SetValuedTableau) -> SetValuedTableau:
    """Map ``(n,n,n-a)/(b,0,0)`` onto ``(n,n,n-b)/(a,0,0)`` by rotation and entry reversal."""
    skew_family(t.skew_shape)
    if len(t.density) != 3:
        raise ValueError("skew_schutzenberger needs a three-row density")
    return rotate_skew(t, height=3)


# -- serialisation ---------------------------------------------------------

def _text_needs_density(t: SetValuedTableau) -> bool:
    if len(t.density) != len(t.rows):
        return True
    return any(not row for row in t.rows)


def format_text(t: SetValuedTableau) -> str:
    """``1|5;2,3,4|7,8,9;6|10``; absent inner cells are written ``.``, and a
    ``density=..:`` prefix is added when density cannot be read off the rows."""
    parts = []
    for i, row in enumerate(t.rows):
        cells = ["."] * t.skew_shape.inner[i] + [",".join(map(str, c)) for c in row]
        parts.append("|".join(cells))
    body = ";".join(parts)
    if _text_needs_density(t):
        return "density=" + ",".join(map(str, t.density.per_row)) + ":" + body
    return body


def parse_text(text: str) -> SetValuedTableau:
    text = text.strip()
    density = None
    if text.startswith("density="):
        head, _, text = text.partition(":")
        density = Density(tuple(int(v) for v in head[len("density="):].split(",") if v != ""))
    rows, inner = [], []
    for raw in text.split(";") if text else []:
        cells = raw.split("|")
        skip = 0
        while skip < len(cells) and cells[skip] == ".":
            skip += 1
        inner.append(skip)
        rows.append([tuple(int(v) for v in c.split(",")) if c else () for c in cells[skip:]])
    if density is None:
        density = Density(tuple(len(row[0]) for row in rows))
    outer = tuple(inner[i] + len(rows[i]) for i in range(len(rows)))
    return SetValuedTableau(SkewShape(Shape(outer), Shape(tuple(inner))), density, tuple(map(tuple, rows)))


def format_json(t: SetValuedTableau) -> str:
    return json.dumps(
        {
            "outer": list(t.skew_shape.outer.parts),
            "inner": list(t.skew_shape.inner.parts),
            "density": list(t.density.per_row),
            "cells": [[list(c) for c in row] for row in t.rows],
        },
        separators=(",", ":"),
    )


def parse_json(text: str | dict) -> SetValuedTableau:
    data = json.loads(text) if isinstance(text, str) else text
    shape = SkewShape(Shape(tuple(data["outer"])), Shape(tuple(data.get("inner", ()))))
    rows = tuple(tuple(tuple(c) for c in row) for row in data["cells"])
    return SetValuedTableau(shape, Density(tuple(data["density"])), rows)
