"""k-ary product-coproduct prographs.

A prograph is stored as a construction word acting on an ordered frontier of
strands: ``C@p`` splits the strand at position ``p`` into ``k`` strands and
``P@p`` merges the ``k`` strands at positions ``p..p+k-1``.  Positions are
1-based.  Planarity and upward orientation hold by construction.

Two words describe the same plane graph exactly when they differ by swapping
adjacent operators that act on disjoint frontier intervals.  Every
``Prograph`` carries the lexicographically least word of its class (letters
ordered by position, then coproduct before product), so ``==`` is graph
equality.

The node-list view (``Diagram``) exposes edges, ports and strands, and is what
the labelling searches run on.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

COPRODUCT = "C"
PRODUCT = "P"

DEFAULT_MAX_NODES = 16


@dataclass(frozen=True)
class Op:
    kind: str
    pos: int

    def key(self):
        return (self.pos, self.kind != COPRODUCT)

    def __str__(self):
        return f"{self.kind}@{self.pos}"


def arity(op: Op, k: int) -> tuple[int, int]:
    """(inputs, outputs) of an operator."""
    return (1, k) if op.kind == COPRODUCT else (k, 1)


def commute(first: Op, second: Op, k: int) -> tuple[Op, Op] | None:
    """If ``second`` (applied after ``first``) touches none of the strands
    ``first`` produced, return the swapped pair ``(second', first')``."""
    in1, out1 = arity(first, k)
    in2, out2 = arity(second, k)
    lo, hi = first.pos, first.pos + out1 - 1
    if second.pos + in2 - 1 < lo:
        return second, Op(first.kind, first.pos + out2 - in2)
    if second.pos > hi:
        return Op(second.kind, second.pos - (out1 - in1)), first
    return None


def frontier_lengths(word: Sequence[Op], k: int, x: int) -> list[int]:
    lengths = [x]
    for op in word:
        i, o = arity(op, k)
        cur = lengths[-1]
        if op.pos < 1 or op.pos + i - 1 > cur:
            raise ValueError(f"{op} does not fit a frontier of {cur} strands")
        lengths.append(cur - i + o)
    return lengths


@dataclass(frozen=True)
class Node:
    kind: str
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]


@dataclass(frozen=True)
class Diagram:
    """Node-list form: edge ids, ordered ports, nodes in a construction order."""

    k: int
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    nodes: tuple[Node, ...]

    @cached_property
    def edges(self) -> list[int]:
        ids = set(self.inputs)
        for node in self.nodes:
            ids.update(node.inputs)
            ids.update(node.outputs)
        ids.update(self.outputs)
        return sorted(ids)

    @cached_property
    def consumer(self) -> dict[int, int | None]:
        """Edge -> index of the node it enters (None for an output strand)."""
        out = {e: None for e in self.outputs}
        for idx, node in enumerate(self.nodes):
            for e in node.inputs:
                out[e] = idx
        return out

    @cached_property
    def producer(self) -> dict[int, int | None]:
        out = {e: None for e in self.inputs}
        for idx, node in enumerate(self.nodes):
            for e in node.outputs:
                out[e] = idx
        return out


def diagram_problem(d: Diagram) -> str | None:
    """Reason the diagram violates a prograph invariant, or None."""
    k = d.k
    if k < 2:
        return "arity must be at least 2"
    if not d.inputs:
        return "no input strands"
    produced, consumed = list(d.inputs), list(d.outputs)
    for node in d.nodes:
        want = (1, k) if node.kind == COPRODUCT else (k, 1)
        if node.kind not in (COPRODUCT, PRODUCT) or (len(node.inputs), len(node.outputs)) != want:
            return f"bad node {node}"
        produced += node.outputs
        consumed += node.inputs
    if len(set(produced)) != len(produced):
        return "an edge has two producers"
    if len(set(consumed)) != len(consumed):
        return "an edge has two consumers"
    if set(produced) != set(consumed):
        return "some edge lacks a producer or a consumer"
    frontier = list(d.inputs)
    for idx, node in enumerate(d.nodes):
        width = len(node.inputs)
        try:
            p = frontier.index(node.inputs[0])
        except ValueError:
            return f"node {idx} input {node.inputs[0]} is not on the frontier"
        if tuple(frontier[p:p + width]) != node.inputs:
            return f"node {idx} does not consume consecutive frontier edges"
        frontier[p:p + width] = node.outputs
    if tuple(frontier) != d.outputs:
        return "final frontier does not match output strands"
    return None


def diagram_from_word(word: Sequence[Op], k: int, x: int) -> Diagram:
    frontier = list(range(x))
    nxt = x
    nodes = []
    for op in word:
        i, o = arity(op, k)
        p = op.pos - 1
        if op.pos < 1 or p + i > len(frontier):
            raise ValueError(f"{op} does not fit a frontier of {len(frontier)} strands")
        ins = tuple(frontier[p:p + i])
        outs = tuple(range(nxt, nxt + o))
        nxt += o
        frontier[p:p + i] = outs
        nodes.append(Node(op.kind, ins, outs))
    return Diagram(k, tuple(range(x)), tuple(frontier), tuple(nodes))


def canonical_word(d: Diagram) -> tuple[Op, ...]:
    """Least word of the diagram's class: repeatedly fire the ready node whose
    letter (position, kind) is smallest."""
    problem = diagram_problem(d)
    if problem:
        raise ValueError(problem)
    frontier = list(d.inputs)
    pending = set(range(len(d.nodes)))
    word = []
    while pending:
        where = {e: i for i, e in enumerate(frontier)}
        best = None
        for idx in pending:
            node = d.nodes[idx]
            if all(e in where for e in node.inputs):
                op = Op(node.kind, where[node.inputs[0]] + 1)
                if best is None or op.key() < best[0].key():
                    best = (op, idx)
        op, idx = best
        node = d.nodes[idx]
        p = op.pos - 1
        frontier[p:p + len(node.inputs)] = node.outputs
        pending.remove(idx)
        word.append(op)
    return tuple(word)


def is_normal_extension(word: Sequence[Op], op: Op, k: int) -> bool:
    """Given a normal word, is ``word + [op]`` still normal?  False iff ``op``
    can commute leftward to sit before a letter larger than itself."""
    cur = op
    for prev in reversed(word):
        swapped = commute(prev, cur, k)
        if swapped is None:
            return True
        moved, _ = swapped
        if moved.key() < prev.key():
            return False
        cur = moved
    return True


@dataclass(frozen=True)
class Prograph:
    k: int
    x: int
    word: tuple[Op, ...]

    @classmethod
    def from_word(cls, k: int, x: int, word: Iterable[Op | tuple[str, int]]) -> Prograph:
        ops = tuple(w if isinstance(w, Op) else Op(*w) for w in word)
        return cls.from_diagram(diagram_from_word(ops, k, x))

    @classmethod
    def from_diagram(cls, d: Diagram) -> Prograph:
        return cls(d.k, len(d.inputs), canonical_word(d))

    @classmethod
    def strand(cls, k: int, x: int = 1) -> Prograph:
        return cls(k, x, ())

    @cached_property
    def diagram(self) -> Diagram:
        return diagram_from_word(self.word, self.k, self.x)

    @property
    def n(self) -> int:
        return sum(op.kind == COPRODUCT for op in self.word)

    @property
    def m(self) -> int:
        return sum(op.kind == PRODUCT for op in self.word)

    @property
    def y(self) -> int:
        return output_strand_count(self.k, self.n, self.m, self.x)

    @property
    def num_edges(self) -> int:
        return self.x + self.k * self.n + self.m

    def is_closed(self) -> bool:
        return self.x == 1 and self.y == 1

    def to_text(self) -> str:
        return format_text(self)

    def __str__(self):
        return format_text(self)


def validate(g: Prograph | Diagram) -> bool:
    if isinstance(g, Diagram):
        return diagram_problem(g) is None
    try:
        lengths = frontier_lengths(g.word, g.k, g.x)
    except ValueError:
        return False
    if g.k < 2 or g.x < 1 or lengths[-1] != output_strand_count(g.k, g.n, g.m, g.x):
        return False
    return canonical_word(g.diagram) == g.word


def output_strand_count(k: int, n: int, m: int, x: int) -> int:
    y = (n - m) * (k - 1) + x
    if y < 1:
        raise ValueError(f"no such prograph: k={k}, n={n}, m={m}, x={x} gives {y} output strands")
    return y


# -- labelling -------------------------------------------------------------

def _search(d: Diagram, xfold: bool) -> dict[int, int]:
    labels = {d.inputs[0]: 0}
    total = len(d.edges)
    while len(labels) < total:
        best, best_in = None, -1
        for node in d.nodes:
            if all(e in labels for e in node.inputs) and any(e not in labels for e in node.outputs):
                top = max(labels[e] for e in node.inputs)
                if top > best_in:
                    best, best_in = node, top
        if best is not None:
            edge = next(e for e in best.outputs if e not in labels)
        elif xfold:
            edge = next((e for e in d.inputs if e not in labels), None)
            if edge is None:
                raise ValueError("search stalled with unlabelled edges")
        else:
            raise ValueError("unlabellable graph: depth-left search stalled (several input strands?)")
        labels[edge] = len(labels)
    return labels


def _as_diagram(g: Prograph | Diagram) -> Diagram:
    return g if isinstance(g, Diagram) else g.diagram


def depth_left_search(g: Prograph | Diagram) -> dict[int, int]:
    """Edge id -> label.  Repeatedly takes, among nodes whose inputs are all
    labelled and which still have an unlabelled output, the one entered by the
    highest-labelled edge, and labels its leftmost unlabelled output next."""
    return _search(_as_diagram(g), xfold=False)


def xfold_depth_left_search(g: Prograph | Diagram) -> dict[int, int]:
    """As ``depth_left_search``, but when no node is ready the leftmost
    unlabelled input strand is labelled next."""
    return _search(_as_diagram(g), xfold=True)


# -- transformations -------------------------------------------------------

def rotate_diagram(d: Diagram) -> Diagram:
    """180-degree rotation with edge directions reversed; edge ids are kept, so
    an edge of ``d`` and its image share an id."""
    flip = {COPRODUCT: PRODUCT, PRODUCT: COPRODUCT}
    nodes = tuple(
        Node(flip[node.kind], tuple(reversed(node.outputs)), tuple(reversed(node.inputs)))
        for node in reversed(d.nodes)
    )
    return Diagram(d.k, tuple(reversed(d.outputs)), tuple(reversed(d.inputs)), nodes)


def rotate(g: Prograph) -> Prograph:
    return Prograph.from_diagram(rotate_diagram(g.diagram))


def _residue_steps(k: int, strands: int) -> int:
    if (strands - 1) % (k - 1):
        raise ValueError(f"{strands} strands is not 1 mod {k - 1}")
    return (strands - 1) // (k - 1)


def justification_word(word: Sequence[Op], k: int, x: int) -> list[Op]:
    y = frontier_lengths(word, k, x)[-1]
    bottom = _residue_steps(k, x)
    top = _residue_steps(k, y)
    out = [Op(COPRODUCT, 1)] * bottom + list(word)
    length = y
    for _ in range(top):
        out.append(Op(PRODUCT, length - k + 1))
        length -= k - 1
    return out


def justify(g: Prograph) -> Prograph:
    """Close ``g`` (``x = 1 mod (k-1)``): left-nested coproducts below feed the
    inputs in blocks of k, right-nested products above collect the outputs."""
    if (g.x - 1) % (g.k - 1):
        raise ValueError(f"justify needs x = 1 mod {g.k - 1}, got x={g.x}")
    return Prograph.from_word(g.k, 1, justification_word(g.word, g.k, g.x))


def unjustify(g: Prograph, x: int, y: int) -> Prograph:
    """Inverse of ``justify`` on its image: strip the coproduct chain hanging off
    the input and the product chain feeding the output."""
    if not g.is_closed():
        raise ValueError("unjustify needs a closed prograph")
    k = g.k
    bottom, top = _residue_steps(k, x), _residue_steps(k, y)
    d = g.diagram
    drop = set()
    edge = d.inputs[0]
    exposed_in: list[int] = []
    for _ in range(bottom):
        idx = d.consumer[edge]
        if idx is None or d.nodes[idx].kind != COPRODUCT or idx in drop:
            raise ValueError("not in the image of justify: missing left-aligned coproduct chain")
        drop.add(idx)
        outs = d.nodes[idx].outputs
        exposed_in = list(outs[1:]) + exposed_in
        edge = outs[0]
    exposed_in = [edge] + exposed_in
    edge = d.outputs[0]
    exposed_out: list[int] = []
    for _ in range(top):
        idx = d.producer[edge]
        if idx is None or d.nodes[idx].kind != PRODUCT or idx in drop:
            raise ValueError("not in the image of justify: missing right-aligned product chain")
        drop.add(idx)
        ins = d.nodes[idx].inputs
        exposed_out += ins[:-1]
        edge = ins[-1]
    exposed_out.append(edge)
    body = Diagram(k, tuple(exposed_in), tuple(exposed_out),
                   tuple(node for i, node in enumerate(d.nodes) if i not in drop))
    try:
        h = Prograph.from_diagram(body)
    except ValueError as exc:
        raise ValueError(f"not in the image of justify: {exc}") from None
    if h.y != y or justify(h) != g:
        raise ValueError("not in the image of justify for the given (x, y)")
    return h


def left_weight_residue(k: int, x: int) -> int:
    a = x % (k - 1) if k > 2 else 1
    return k - 1 if a == 0 else a


def left_weighted_justify(g: Prograph) -> Prograph:
    """Add ``k - a`` free strands on the left (``x = a mod (k-1)``, ``2 <= a``),
    then justify."""
    a = left_weight_residue(g.k, g.x)
    if a == 1:
        raise ValueError("x = 1 mod (k-1): use justify")
    extra = g.k - a
    padded = Prograph(g.k, g.x + extra, tuple(Op(op.kind, op.pos + extra) for op in g.word))
    return justify(padded)


# -- enumeration -----------------------------------------------------------

def enumerate_prographs(k: int, n: int, m: int, x: int = 1, max_nodes: int | None = None) -> Iterator[Prograph]:
    """Every prograph in ``PC^k_x(n, m)`` once, generated as normal-form words."""
    if k < 2 or x < 1 or n < 0 or m < 0:
        raise ValueError("need k >= 2, x >= 1, n, m >= 0")
    output_strand_count(k, n, m, x)
    cap = DEFAULT_MAX_NODES if max_nodes is None else max_nodes
    if n + m > cap:
        raise ValueError(f"instance too large: {n + m} nodes exceeds cap {cap}")
    word: list[Op] = []

    def extend(length, cs, ps):
        if cs == 0 and ps == 0:
            yield Prograph(k, x, tuple(word))
            return
        options = []
        if cs:
            options += [Op(COPRODUCT, p) for p in range(1, length + 1)]
        if ps:
            options += [Op(PRODUCT, p) for p in range(1, length - k + 2)]
        for op in sorted(options, key=Op.key):
            if not is_normal_extension(word, op, k):
                continue
            word.append(op)
            if op.kind == COPRODUCT:
                yield from extend(length + k - 1, cs - 1, ps)
            else:
                yield from extend(length - k + 1, cs, ps - 1)
            word.pop()

    yield from extend(x, n, m)


def enumerate_closed(k: int, n: int) -> Iterator[Prograph]:
    return enumerate_prographs(k, n, n, 1)


# -- serialisation ---------------------------------------------------------

def format_text(g: Prograph) -> str:
    return f"k={g.k};x={g.x};word=" + ",".join(map(str, g.word))


def parse_text(text: str) -> Prograph:
    fields = {}
    for part in text.strip().split(";"):
        key, _, value = part.partition("=")
        fields[key.strip()] = value.strip()
    try:
        k, x = int(fields["k"]), int(fields["x"])
    except KeyError as exc:
        raise ValueError(f"missing field {exc} in prograph text") from None
    word = []
    for token in filter(None, fields.get("word", "").split(",")):
        kind, _, pos = token.partition("@")
        if kind not in (COPRODUCT, PRODUCT):
            raise ValueError(f"bad operator {token!r}")
        word.append(Op(kind, int(pos)))
    return Prograph.from_word(k, x, word)


def to_dot(g: Prograph, name: str = "prograph") -> str:
    """Graphviz source; edges are labelled by the x-fold depth-left search."""
    d = g.diagram
    labels = xfold_depth_left_search(d)
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=point];"]
    for i in range(len(d.inputs)):
        lines.append(f"  in{i};")
    for idx, node in enumerate(d.nodes):
        lines.append(f'  n{idx} [shape=circle, width=0.15, label="", xlabel="{node.kind}"];')
    for i in range(len(d.outputs)):
        lines.append(f"  out{i};")
    for e in d.edges:
        src = d.producer[e]
        dst = d.consumer[e]
        a = f"in{d.inputs.index(e)}" if src is None else f"n{src}"
        b = f"out{d.outputs.index(e)}" if dst is None else f"n{dst}"
        lines.append(f'  {a} -> {b} [label="{labels[e]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
