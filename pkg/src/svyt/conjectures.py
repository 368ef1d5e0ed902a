"""Checkers for conjectured equalities between tableau counts and other
objects: x-fold prographs with x != 1 mod (k-1), quarter-plane walks,
three-dimensional lattice paths and sloped Motzkin paths."""
from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .counting import count_1k1
from .prographs import enumerate_prographs, left_weight_residue, output_strand_count
from .tableaux import Density, Shape, SkewShape, count_svt, enumerate_svt

AGREE = "AGREE"
DISAGREE = "DISAGREE"

READINGS = ("repaired", "literal")


@dataclass
class ConjecturePoint:
    params: dict
    lhs: int
    rhs: int

    @property
    def verdict(self) -> str:
        return AGREE if self.lhs == self.rhs else DISAGREE


@dataclass
class ConjectureReport:
    claim: str
    grid: list = field(default_factory=list)
    points: list[ConjecturePoint] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return AGREE if all(p.verdict == AGREE for p in self.points) else DISAGREE

    @property
    def disagreements(self) -> list[ConjecturePoint]:
        return [p for p in self.points if p.verdict != AGREE]

    def as_dict(self) -> dict:
        return {
            "claim": self.claim,
            "grid": self.grid,
            "points": [dict(asdict(p), verdict=p.verdict) | {"lhs": str(p.lhs), "rhs": str(p.rhs)} for p in self.points],
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    def to_text(self) -> str:
        lines = [f"{self.claim}: {self.verdict}"]
        for p in self.points:
            args = " ".join(f"{k}={v}" for k, v in p.params.items())
            lines.append(f"  {args}  lhs={p.lhs} rhs={p.rhs}  {p.verdict}")
        return "\n".join(lines)

    def save(self, path: str | Path):
        Path(path).write_text(self.to_json() + "\n")


# -- prographs with x != 1 mod (k-1) ---------------------------------------------

def conjecture6_shape(k: int, x: int, n: int, m: int) -> SkewShape:
    a = left_weight_residue(k, x)
    b = (x + k - a - 1) // (k - 1)
    return SkewShape(Shape((n + b, n + b, m)), Shape((b,)))


def conjecture6_index(k: int, a: int, i: int, reading: str) -> int:
    """Middle-row index that the i-th bottom entry must exceed.

    The literal bound reads the index verbatim; the repaired bound counts the free strands
    needed left of each product so that it never absorbs an added strand.
    """
    if reading == "literal":
        return (k - 1) * i + 2 - (k - a)
    if reading == "repaired":
        return (k - 1) * i + k - a
    raise ValueError(f"unknown reading {reading!r}; expected one of {READINGS}")


def conjecture6_conditions(t, k: int, a: int, m: int, reading: str = "repaired") -> bool:
    middle = t.row_entries(2)
    bottom = t.row_entries(3) if t.skew_shape.rows >= 3 else []
    if middle[: k - a] != list(range(1, k - a + 1)):
        return False
    last = m - 1 if reading == "literal" else m
    for i in range(1, last + 1):
        idx = conjecture6_index(k, a, i, reading)
        if idx > len(middle) or not bottom[i - 1] > middle[idx - 1]:
            return False
    return True


def conjecture6_sides(k: int, x: int, n: int, m: int, reading: str = "repaired", max_entries: int | None = 32) -> tuple[int, int]:
    a = left_weight_residue(k, x)
    if a == 1:
        raise ValueError(f"x={x} is 1 mod {k - 1}; that case is a bijection, use psi")
    output_strand_count(k, n, m, x)
    lhs = sum(1 for _ in enumerate_prographs(k, n, m, x))
    shape = conjecture6_shape(k, x, n, m)
    rhs = sum(
        1
        for t in enumerate_svt(shape, Density((1, k - 1, 1)), max_entries=max_entries)
        if conjecture6_conditions(t, k, a, m, reading)
    )
    return lhs, rhs


def conjecture6_check(k: int, x: int, n: int, m: int, reading: str = "repaired", max_entries: int | None = 32) -> ConjectureReport:
    params = {"k": k, "x": x, "n": n, "m": m, "reading": reading}
    lhs, rhs = conjecture6_sides(k, x, n, m, reading, max_entries)
    return ConjectureReport("conjecture6", [params], [ConjecturePoint(params, lhs, rhs)])


def conjecture6_grid(max_k: int = 4, max_size: int = 4, x_values: int = 2) -> list[dict]:
    """Points with k <= max_k, n + m <= max_size and the first ``x_values``
    admissible x for each residue 2 <= a <= k-1."""
    grid = []
    for k in range(3, max_k + 1):
        for a in range(2, k):
            for x in range(a, a + x_values * (k - 1), k - 1):
                for n in range(max_size + 1):
                    for m in range(max_size + 1 - n):
                        if (n - m) * (k - 1) + x >= 1:
                            grid.append({"k": k, "x": x, "n": n, "m": m})
    return grid


# -- walks and paths ---------------------------------------------------------------

def quarter_plane_walks(n: int, k: int) -> int:
    """Walks of (k+1)n steps from the origin back to it in the first quadrant
    with steps (0,k-1), (1,-1), (1-k,0)."""
    if n < 0 or k < 2:
        raise ValueError(f"need n >= 0 and k >= 2, got n={n}, k={k}")
    steps = ((0, k - 1), (1, -1), (1 - k, 0))
    layer = Counter({(0, 0): 1})
    total = (k + 1) * n
    for t in range(total):
        left = total - t - 1
        nxt: Counter = Counter()
        for (x, y), ways in layer.items():
            for dx, dy in steps:
                px, py = x + dx, y + dy
                # every step changes x+y by at most k-1 downward
                if px >= 0 and py >= 0 and px + py <= (k - 1) * left:
                    nxt[(px, py)] += ways
        layer = nxt
    return layer.get((0, 0), 0)


@dataclass(frozen=True)
class LatticeConfig:
    """Step set, endpoint and pointwise constraint for monotone 3D paths."""

    steps: tuple[tuple[int, int, int], ...]
    endpoint: Callable[[int, int], tuple[int, int, int]]
    predicate: Callable[[int, int, int, int], bool]
    name: str = "custom"


def _unit_steps():
    return ((1, 0, 0), (0, 1, 0), (0, 0, 1))


LATTICE_PRESETS = {
    # steps and endpoint read verbatim, the repeated step collapsed
    "literal": LatticeConfig(
        steps=((1, 0, 0), (0, 1, 0)),
        endpoint=lambda n, k: ((k - 1) * n, n, (k - 1) * n),
        predicate=lambda x, y, z, k: (k - 1) * x >= y >= (k - 1) * z,
        name="literal",
    ),
    "classical": LatticeConfig(
        steps=_unit_steps(),
        endpoint=lambda n, k: (n, n, n),
        predicate=lambda x, y, z, k: x >= y >= z,
        name="classical",
    ),
    # one step per tableau entry: top, middle, bottom row
    "repaired": LatticeConfig(
        steps=_unit_steps(),
        endpoint=lambda n, k: (n, (k - 1) * n, n),
        predicate=lambda x, y, z, k: (k - 1) * x >= y >= (k - 1) * z,
        name="repaired",
    ),
}


def lattice_paths_3d(n: int, k: int, constraint: str | LatticeConfig = "literal") -> int:
    config = LATTICE_PRESETS[constraint] if isinstance(constraint, str) else constraint
    ex, ey, ez = config.endpoint(n, k)
    steps = sorted(set(config.steps))
    ways = {(0, 0, 0): 1 if config.predicate(0, 0, 0, k) else 0}
    order = sorted(
        ((x, y, z) for x in range(ex + 1) for y in range(ey + 1) for z in range(ez + 1)),
        key=sum,
    )
    for point in order[1:]:
        x, y, z = point
        if not config.predicate(x, y, z, k):
            ways[point] = 0
            continue
        ways[point] = sum(ways.get((x - a, y - b, z - c), 0) for a, b, c in steps)
    return ways[(ex, ey, ez)]


def sloped_motzkin(n: int, k: int) -> int:
    """Paths (0,0) -> (n,0) with steps (1,k-1), (1,-1), (1,0), never below the axis."""
    if n < 0 or k < 2:
        raise ValueError(f"need n >= 0 and k >= 2, got n={n}, k={k}")
    heights = Counter({0: 1})
    for t in range(n):
        left = n - t - 1
        nxt: Counter = Counter()
        for h, w in heights.items():
            for dh in (k - 1, -1, 0):
                g = h + dh
                if 0 <= g <= left:
                    nxt[g] += w
        heights = nxt
    return heights.get(0, 0)


def bounded_row_shapes(total: int, k: int) -> list[tuple[int, ...]]:
    """Partitions with at most three rows and exactly ``total`` entries under
    densities (1), (1,k-1), (1,k-1,1)."""
    shapes = []
    for a in range(1, total + 1):
        for b in range(0, a + 1):
            for c in range(0, b + 1):
                if a + (k - 1) * b + c == total:
                    shapes.append(tuple(p for p in (a, b, c) if p))
    return shapes


def bounded_row_tableaux_total(n: int, k: int, total: int | None = None, max_entries: int | None = 32) -> int:
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    total = n if total is None else total
    if total == 0:
        return 1
    full = (1, k - 1, 1)
    return sum(
        count_svt(SkewShape.straight(s), Density(full[: len(s)]), max_entries=max_entries)
        for s in bounded_row_shapes(total, k)
    )


def motzkin(n: int) -> int:
    return sloped_motzkin(n, 2)


# -- sweeps ----------------------------------------------------------------------

def _walks_point(p):
    return quarter_plane_walks(p["n"], p["k"]), count_1k1(p["n"], p["n"], p["n"], p["k"])


def _motzkin_point(p):
    return sloped_motzkin(p["n"], p["k"]), bounded_row_tableaux_total(p["n"], p["k"])


def _lattice_point(p):
    return lattice_paths_3d(p["n"], p["k"], p.get("constraint", "literal")), count_1k1(p["n"], p["n"], p["n"], p["k"])


def _conjecture6_point(p):
    return conjecture6_sides(p["k"], p["x"], p["n"], p["m"], p.get("reading", "repaired"))


CLAIMS: dict[str, Callable[[dict], tuple[int, int]]] = {
    "conjecture6": _conjecture6_point,
    "walks": _walks_point,
    "motzkin": _motzkin_point,
    "lattice3d": _lattice_point,
}


def default_grid(claim: str) -> list[dict]:
    if claim == "conjecture6":
        return conjecture6_grid()
    if claim == "walks":
        return [{"k": k, "n": n} for k in range(2, 5) for n in range(1, 4)]
    if claim == "motzkin":
        return [{"k": k, "n": n} for k in range(2, 5) for n in range(0, 9)]
    if claim == "lattice3d":
        return [{"k": k, "n": n} for k in range(2, 5) for n in range(1, 4)]
    raise ValueError(f"unknown claim {claim!r}; expected one of {sorted(CLAIMS)}")


def sweep(claim: str, grid: Iterable[dict] | None = None, jobs: int = 1, path: str | Path | None = None) -> ConjectureReport:
    """Evaluate ``claim`` at every grid point; results keep grid order."""
    if claim not in CLAIMS:
        raise ValueError(f"unknown claim {claim!r}; expected one of {sorted(CLAIMS)}")
    points: Sequence[dict] = list(default_grid(claim) if grid is None else grid)
    fn = CLAIMS[claim]
    if jobs > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(fn, points))
    else:
        results = [fn(p) for p in points]
    report = ConjectureReport(claim, list(points), [ConjecturePoint(dict(p), l, r) for p, (l, r) in zip(points, results)])
    if path is not None:
        report.save(path)
    return report
