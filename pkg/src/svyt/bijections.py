"""Maps between prographs and set-valued tableaux, and verifiers for the
identities relating them."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

from .prographs import (
    COPRODUCT,
    PRODUCT,
    Diagram,
    Node,
    Prograph,
    depth_left_search,
    enumerate_prographs,
    justify,
    left_weight_residue,
    rotate,
    unjustify,
    xfold_depth_left_search,
)
from .tableaux import (
    Density,
    SetValuedTableau,
    Shape,
    SkewShape,
    schutzenberger,
    skew_schutzenberger,
    standardness_violation,
)


def _classify(d: Diagram, labels: dict[int, int]) -> tuple[list[int], list[int], list[int]]:
    """Split nonzero labels into leftmost coproduct children, other labels, and
    product children."""
    top, middle, bottom = [], [], []
    lead = {node.outputs[0] for node in d.nodes if node.kind == COPRODUCT}
    made = {node.outputs[0] for node in d.nodes if node.kind == PRODUCT}
    for e, lab in labels.items():
        if lab == 0:
            continue
        if e in lead:
            top.append(lab)
        elif e in made:
            bottom.append(lab)
        else:
            middle.append(lab)
    return sorted(top), sorted(middle), sorted(bottom)


def _chunk(values: list[int], size: int) -> tuple[tuple[int, ...], ...]:
    if size == 0:
        return ()
    return tuple(tuple(values[i:i + size]) for i in range(0, len(values), size))


def _three_row(k: int, top, middle, bottom, inner_top: int = 0) -> SetValuedTableau:
    mid_cells = _chunk(middle, k - 1)
    outer = (inner_top + len(top), len(mid_cells), len(bottom))
    rows = (tuple((v,) for v in top), mid_cells, tuple((v,) for v in bottom))
    shape = SkewShape(Shape(outer), Shape((inner_top,)))
    return SetValuedTableau(shape, Density((1, k - 1, 1)), rows[: shape.rows])


def phi_k_tree(g: Prograph) -> SetValuedTableau:
    """Coproduct-only prograph (a k-ary tree on an input edge) to a two-row
    tableau of density (k-1, 1): rightmost children go to the bottom row."""
    if g.x != 1 or g.m:
        raise ValueError("phi_k_tree needs a tree: one input strand and no products")
    d = g.diagram
    labels = depth_left_search(d)
    last = {node.outputs[-1] for node in d.nodes}
    bottom = sorted(lab for e, lab in labels.items() if e in last)
    top = sorted(lab for e, lab in labels.items() if lab and e not in last)
    rows = (_chunk(top, g.k - 1), tuple((v,) for v in bottom))
    return SetValuedTableau(SkewShape.straight((g.n, g.n)), Density((g.k - 1, 1)), rows[: 2 if g.n else 0])


def phi(g: Prograph) -> SetValuedTableau:
    if not g.is_closed():
        raise ValueError("phi needs a closed prograph")
    d = g.diagram
    t = _three_row(g.k, *_classify(d, depth_left_search(d)))
    return t


def tau(g: Prograph) -> SetValuedTableau:
    """Skew tableau read directly off the x-fold depth-left search."""
    b = _bottom_steps(g)
    d = g.diagram
    return _three_row(g.k, *_classify(d, xfold_depth_left_search(d)), inner_top=b)


def _bottom_steps(g: Prograph) -> int:
    if (g.x - 1) % (g.k - 1):
        raise ValueError(f"needs x = 1 mod {g.k - 1}, got x={g.x}")
    return (g.x - 1) // (g.k - 1)


def _rect_parameters(t: SetValuedTableau) -> tuple[int, int]:
    shape = t.skew_shape
    if shape.size == 0 and shape.is_straight() and len(t.density) == 3:
        return 0, t.density[1] + 1
    if not shape.is_straight() or shape.rows != 3 or not shape.outer.is_rectangular():
        raise ValueError(f"expected a straight shape n^3, got {shape}")
    if t.density.per_row[:1] != (1,) or len(t.density) != 3 or t.density[2] != 1:
        raise ValueError(f"expected density (1,k-1,1), got {t.density.per_row}")
    return shape.outer[0], t.density[1] + 1


def phi_inverse(t: SetValuedTableau) -> Prograph:
    """Rebuild the closed prograph of ``t`` one entry at a time."""
    n, k = _rect_parameters(t)
    if k < 2:
        raise ValueError("k must be at least 2")
    problem = standardness_violation(t)
    if problem:
        raise ValueError(f"not a standard tableau: {problem}")
    row_of = {}
    for i in (1, 2, 3):
        for v in t.row_entries(i):
            row_of[v] = i
    frontier = [0]
    labels = {0: 0}
    edge_of = {0: 0}
    nodes: list[Node] = []
    nxt = 1
    for i in range(1, (k + 1) * n + 1):
        prev = edge_of[i - 1]
        row = row_of[i]
        if row == 1:
            p = frontier.index(prev)
            outs = tuple(range(nxt, nxt + k))
            nxt += k
            frontier[p:p + 1] = outs
            nodes.append(Node(COPRODUCT, (prev,), outs))
            edge = outs[0]
        elif row == 2:
            best, best_in = None, -1
            for node in nodes:
                if node.kind == COPRODUCT and any(e not in labels for e in node.outputs):
                    if labels[node.inputs[0]] > best_in:
                        best, best_in = node, labels[node.inputs[0]]
            if best is None:
                raise ValueError(f"entry {i}: no unlabelled coproduct child to continue the search")
            edge = next(e for e in best.outputs if e not in labels)
        else:
            p = frontier.index(prev)
            if p < k - 1:
                raise ValueError(f"entry {i}: fewer than {k - 1} free edges left of edge {i - 1}")
            ins = tuple(frontier[p - k + 1:p + 1])
            if any(e not in labels for e in ins):
                raise ValueError(f"entry {i}: product would consume an unlabelled edge")
            edge = nxt
            nxt += 1
            frontier[p - k + 1:p + 1] = [edge]
            nodes.append(Node(PRODUCT, ins, (edge,)))
        labels[edge] = i
        edge_of[i] = edge
    d = Diagram(k, (0,), tuple(frontier), tuple(nodes))
    g = Prograph.from_diagram(d)
    if not g.is_closed():
        raise ValueError("construction did not close up")
    return g


def _chi(t: SetValuedTableau, k: int, b: int, a: int) -> SetValuedTableau:
    """Drop the first ``b`` top cells and last ``a`` bottom cells of a
    rectangular tableau, asserting they hold the extremal entries, and shift
    the survivors down by ``b``."""
    n = t.skew_shape.outer[0]
    total = t.size
    top, middle, bottom = t.row_entries(1), t.row_entries(2), t.row_entries(3)
    if top[:b] != list(range(1, b + 1)):
        raise AssertionError(f"deleted top entries {top[:b]} are not 1..{b}")
    tail = bottom[len(bottom) - a:] if a else []
    if tail != list(range(total - a + 1, total + 1)):
        raise AssertionError(f"deleted bottom entries {tail} are not the top run ending at {total}")
    keep_bottom = bottom[: len(bottom) - a]
    shift = lambda vals: [v - b for v in vals]
    out = _three_row(k, shift(top[b:]), shift(middle), shift(keep_bottom), inner_top=b)
    assert out.skew_shape.outer[0] == n
    return out


def _chi_inverse(t: SetValuedTableau, k: int, b: int, a: int) -> SetValuedTableau:
    top, middle, bottom = t.row_entries(1), t.row_entries(2), t.row_entries(3) if t.skew_shape.rows > 2 else []
    total = t.size + a + b
    shift = lambda vals: [v + b for v in vals]
    return _three_row(
        k,
        list(range(1, b + 1)) + shift(top),
        shift(middle),
        shift(bottom) + list(range(total - a + 1, total + 1)),
    )


def psi(g: Prograph) -> SetValuedTableau:
    """Justify, apply phi, then strip the cells belonging to the added nodes."""
    b = _bottom_steps(g)
    a = (g.y - 1) // (g.k - 1)
    return _chi(phi(justify(g)), g.k, b, a)


def skew_parameters(t: SetValuedTableau) -> tuple[int, int, int, int]:
    """``(k, x, n, m)`` for a tableau of shape ``(N, N, m)/(b, 0, 0)``, density (1,k-1,1)."""
    shape = t.skew_shape
    if len(t.density) != 3 or t.density[0] != 1 or t.density[2] != 1:
        raise ValueError(f"expected density (1,k-1,1), got {t.density.per_row}")
    k = t.density[1] + 1
    big = shape.outer[0]
    if shape.outer[1] != big or shape.inner[1] or shape.inner[2]:
        raise ValueError(f"shape {shape} is not (N,N,m)/(b,0,0)")
    b = shape.inner[0]
    return k, 1 + b * (k - 1), big - b, shape.outer[2]


def psi_inverse(t: SetValuedTableau) -> Prograph:
    k, x, n, m = skew_parameters(t)
    b = (x - 1) // (k - 1)
    big = n + b
    a = big - m
    y = 1 + a * (k - 1)
    closed = phi_inverse(_chi_inverse(t, k, b, a))
    return unjustify(closed, x, y)


# -- verifiers -------------------------------------------------------------

@dataclass
class VerificationReport:
    identity: str
    grid: dict
    cases_checked: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def _check_all(identity: str, grid: dict, items: Iterable, check: Callable) -> VerificationReport:
    report = VerificationReport(identity, grid)
    for item in items:
        report.cases_checked += 1
        bad = check(item)
        if bad is not None:
            report.counterexamples.append(bad)
    return report


def verify_schutzenberger_square(k: int, n: int) -> VerificationReport:
    """phi(rotate(G)) == schutzenberger(phi(G)) over PC^k(n)."""

    def check(g):
        left, right = phi(rotate(g)), schutzenberger(phi(g))
        if left != right:
            return {"prograph": str(g), "phi_of_rotation": str(left), "schutzenberger_of_phi": str(right)}
        return None

    return _check_all("phi.rotate == schutzenberger.phi", {"k": k, "n": n}, enumerate_prographs(k, n, n, 1), check)


def verify_skew_square(k: int, x: int, n: int, m: int) -> VerificationReport:
    """psi(rotate(G)) == skew_schutzenberger(psi(G)) over PC^k_x(n, m)."""

    def check(g):
        left, right = psi(rotate(g)), skew_schutzenberger(psi(g))
        if left != right:
            return {"prograph": str(g), "psi_of_rotation": str(left), "skew_schutzenberger_of_psi": str(right)}
        return None

    grid = {"k": k, "x": x, "n": n, "m": m}
    return _check_all("psi.rotate == F.psi", grid, enumerate_prographs(k, n, m, x), check)


def verify_phi_roundtrip(k: int, n: int) -> VerificationReport:
    def check(g):
        t = phi(g)
        problem = standardness_violation(t)
        if problem:
            return {"prograph": str(g), "problem": problem}
        back = phi_inverse(t)
        if back != g:
            return {"prograph": str(g), "tableau": str(t), "rebuilt": str(back)}
        return None

    return _check_all("phi_inverse.phi == id", {"k": k, "n": n}, enumerate_prographs(k, n, n, 1), check)


def verify_tau_psi(k: int, x: int, n: int, m: int) -> VerificationReport:
    def check(g):
        a, b = tau(g), psi(g)
        if a != b:
            return {"prograph": str(g), "tau": str(a), "psi": str(b)}
        return None

    grid = {"k": k, "x": x, "n": n, "m": m}
    return _check_all("tau == psi", grid, enumerate_prographs(k, n, m, x), check)


def verify_psi_roundtrip(k: int, x: int, n: int, m: int) -> VerificationReport:
    def check(g):
        t = psi(g)
        problem = standardness_violation(t)
        if problem:
            return {"prograph": str(g), "problem": problem}
        back = psi_inverse(t)
        if back != g:
            return {"prograph": str(g), "tableau": str(t), "rebuilt": str(back)}
        return None

    grid = {"k": k, "x": x, "n": n, "m": m}
    return _check_all("psi_inverse.psi == id", grid, enumerate_prographs(k, n, m, x), check)


def skew_shape_for(k: int, x: int, n: int, m: int) -> SkewShape:
    b = (x - 1) // (k - 1)
    return SkewShape(Shape((n + b, n + b, m)), Shape((b,)))


def left_weighted_shape_for(k: int, x: int, n: int, m: int) -> SkewShape:
    a = left_weight_residue(k, x)
    b = (x + k - a - 1) // (k - 1)
    return SkewShape(Shape((n + b, n + b, m)), Shape((b,)))
