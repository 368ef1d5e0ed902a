import pytest
from hypothesis import given, strategies as st

from oracles import prograph_classes, swaps
from svyt.prographs import (
    COPRODUCT,
    PRODUCT,
    Diagram,
    Node,
    Op,
    Prograph,
    depth_left_search,
    diagram_from_word,
    enumerate_prographs,
    format_text,
    justify,
    left_weighted_justify,
    output_strand_count,
    parse_text,
    rotate,
    to_dot,
    unjustify,
    validate,
    xfold_depth_left_search,
)

BINARY_WORD = [Op("C", 1), Op("C", 1), Op("C", 3), Op("P", 2), Op("P", 2), Op("P", 1)]


def test_five_closed_binary_graphs_with_two_coproducts():
    gs = list(enumerate_prographs(2, 2, 2, 1))
    assert len(gs) == 5 and all(validate(g) for g in gs)
    assert len(set(gs)) == 5


def test_single_strand_is_valid():
    g = Prograph.strand(3)
    assert validate(g) and g.is_closed()
    assert depth_left_search(g) == {0: 0}


def test_non_consecutive_product_is_invalid():
    d = Diagram(2, (0,), (3, 4, 5), (Node(COPRODUCT, (0,), (1, 2)), Node(COPRODUCT, (1,), (3, 4)), Node(PRODUCT, (3, 2), (5,))))
    assert not validate(d)
    d2 = Diagram(2, (0,), (5,), (Node(COPRODUCT, (0,), (1, 2)), Node(COPRODUCT, (1,), (3, 4)), Node(PRODUCT, (3, 2), (5,))))
    assert not validate(d2)


def test_double_consumer_is_invalid():
    d = Diagram(2, (0,), (2,), (Node(COPRODUCT, (0,), (1, 1)), Node(PRODUCT, (1, 1), (2,))))
    assert not validate(d)


def test_non_canonical_prograph_fails_validation():
    g = Prograph(2, 1, (Op("C", 1), Op("C", 2), Op("C", 1), Op("P", 1), Op("P", 1), Op("P", 1)))
    assert not validate(g)
    assert validate(Prograph.from_word(2, 1, g.word))


@pytest.mark.parametrize("k", range(2, 6))
def test_one_coproduct_one_product(k):
    gs = list(enumerate_prographs(k, 1, 1, 1))
    assert [format_text(g) for g in gs] == [f"k={k};x=1;word=C@1,P@1"]


@pytest.mark.parametrize(
    "k,n,expected", [(2, 3, 42), (2, 4, 462), (3, 2, 10), (3, 3, 190), (4, 2, 17), (4, 3, 581)]
)
def test_closed_counts(k, n, expected):
    assert sum(1 for _ in enumerate_prographs(k, n, n, 1)) == expected


@pytest.mark.parametrize(
    "k,n,m,x", [(2, 2, 2, 1), (2, 2, 1, 1), (3, 2, 2, 1), (2, 1, 2, 3), (3, 2, 1, 3), (2, 3, 1, 2), (4, 1, 1, 3), (4, 2, 2, 1), (3, 3, 1, 1)]
)
def test_enumeration_matches_swap_closure_oracle(k, n, m, x):
    got = [tuple((op.kind, op.pos) for op in g.word) for g in enumerate_prographs(k, n, m, x)]
    assert len(got) == len(set(got))
    assert set(got) == prograph_classes(k, n, m, x)


def test_enumeration_rejects_impossible_parameters():
    with pytest.raises(ValueError, match="no such prograph"):
        list(enumerate_prographs(2, 1, 3, 1))


def test_enumeration_budget():
    with pytest.raises(ValueError, match="too large"):
        list(enumerate_prographs(2, 9, 9, 1))


def test_output_strand_count():
    assert output_strand_count(3, 3, 1, 3) == 7
    assert output_strand_count(5, 4, 4, 1) == 1
    with pytest.raises(ValueError, match="no such prograph"):
        output_strand_count(2, 1, 3, 1)


def test_depth_left_search_on_ternary_tree():
    d = diagram_from_word([Op("C", 1), Op("C", 1), Op("C", 5)], 3, 1)
    labels = depth_left_search(d)
    # root edge 0; children of the root are edges 1,2,3; then 4,5,6 and 7,8,9
    assert labels == {0: 0, 1: 1, 4: 2, 5: 3, 6: 4, 2: 5, 3: 6, 7: 7, 8: 8, 9: 9}


def test_depth_left_search_on_binary_example():
    labels = depth_left_search(diagram_from_word(BINARY_WORD, 2, 1))
    assert labels == {0: 0, 1: 1, 3: 2, 4: 3, 2: 4, 5: 5, 7: 6, 6: 7, 8: 8, 9: 9}


def test_depth_left_search_on_quaternary_example():
    g = parse_text("k=4;x=1;word=C@1,C@4,P@1,P@1")
    labels = depth_left_search(g)
    assert labels == {0: 0, 1: 1, 2: 2, 3: 3, 4: 4, 5: 5, 9: 6, 6: 7, 7: 8, 8: 9, 10: 10}


def test_plain_search_stalls_on_several_inputs():
    with pytest.raises(ValueError, match="unlabellable"):
        depth_left_search(Prograph.from_word(2, 2, [("C", 2)]))


@st.composite
def prographs(draw, max_nodes=6, ks=(2, 3, 4), max_x=4):
    k = draw(st.sampled_from(ks))
    x = draw(st.integers(1, max_x))
    length = x
    word = []
    for _ in range(draw(st.integers(0, max_nodes))):
        choices = [("C", p) for p in range(1, length + 1)]
        choices += [("P", p) for p in range(1, length - k + 2)]
        kind, pos = draw(st.sampled_from(choices))
        word.append(Op(kind, pos))
        length += (k - 1) if kind == "C" else -(k - 1)
    return Prograph.from_word(k, x, word)


@st.composite
def closed_prographs(draw, max_n=4, ks=(2, 3, 4)):
    g = draw(prographs(max_nodes=2 * max_n, ks=ks, max_x=1))
    # close by justification so every draw is closed
    return justify(g) if (g.y - 1) % (g.k - 1) == 0 else Prograph.strand(g.k)


@given(prographs())
def test_generated_graphs_validate(g):
    assert validate(g)
    assert len(g.diagram.outputs) == g.y == output_strand_count(g.k, g.n, g.m, g.x)


@given(prographs(), st.randoms(use_true_random=False))
def test_equivalent_words_give_equal_graphs(g, rnd):
    word = tuple((op.kind, op.pos) for op in g.word)
    for _ in range(10):
        options = swaps(word, g.k)
        if not options:
            break
        word = rnd.choice(options)
    assert Prograph.from_word(g.k, g.x, word) == g


@given(prographs())
def test_labellings_are_permutations(g):
    labels = xfold_depth_left_search(g)
    assert sorted(labels.values()) == list(range(g.num_edges))
    assert labels[g.diagram.inputs[0]] == 0
    if g.x == 1:
        assert depth_left_search(g) == labels


@given(prographs())
def test_rotation_is_an_involution(g):
    r = rotate(g)
    assert validate(r)
    assert (r.n, r.m, r.x, r.y) == (g.m, g.n, g.y, g.x)
    assert rotate(r) == g


def test_rotation_involution_on_all_ternary_closed():
    for g in enumerate_prographs(3, 2, 2, 1):
        assert rotate(rotate(g)) == g


def test_rotation_of_single_strand():
    assert rotate(Prograph.strand(4, 3)) == Prograph.strand(4, 3)


@pytest.mark.parametrize("k,x,n,m", [(2, 3, 2, 1), (2, 1, 2, 2), (3, 3, 2, 1), (3, 1, 2, 2), (2, 2, 2, 2), (3, 1, 1, 0)])
def test_rotation_label_duality(k, x, n, m):
    from svyt.prographs import rotate_diagram

    for g in enumerate_prographs(k, n, m, x):
        d = g.diagram
        r = rotate_diagram(d)
        big = x + k * n + m - 1
        la, lb = xfold_depth_left_search(d), xfold_depth_left_search(r)
        assert all(la[e] + lb[e] == big for e in d.edges), format_text(g)


def test_justify_leaves_closed_graphs_alone():
    g = parse_text("k=4;x=1;word=C@1,C@4,P@1,P@1")
    assert justify(g) == g
    assert unjustify(g, 1, 1) == g


def test_justification_of_five_ternary_strands():
    g = Prograph.strand(3, 5)
    j = justify(g)
    assert j.is_closed() and (j.n, j.m) == (2, 2)
    assert format_text(j) == "k=3;x=1;word=C@1,C@1,P@3,P@1"
    assert unjustify(j, 5, 5) == g


@pytest.mark.parametrize("k,x,n,m", [(3, 5, 1, 0), (3, 3, 2, 2), (2, 3, 2, 1), (2, 2, 1, 2)])
def test_justify_is_injective_and_invertible(k, x, n, m):
    gs = list(enumerate_prographs(k, n, m, x))
    js = [justify(g) for g in gs]
    assert all(j.is_closed() for j in js)
    assert all(j.n == n + (x - 1) // (k - 1) for j in js)
    assert len(set(js)) == len(gs)
    y = output_strand_count(k, n, m, x)
    assert all(unjustify(j, x, y) == g for g, j in zip(gs, js))


def test_justify_rejects_bad_residue():
    with pytest.raises(ValueError):
        justify(Prograph.strand(3, 2))


def test_unjustify_rejects_graphs_outside_the_image():
    g = parse_text("k=2;x=1;word=C@1,C@2,P@2,P@1")
    with pytest.raises(ValueError, match="image"):
        unjustify(g, 3, 3)


def test_left_weighted_justification_quaternary():
    g = Prograph.from_word(4, 2, [("C", 2), ("P", 1)])
    j = left_weighted_justify(g)
    assert j.is_closed() and validate(j)
    assert j.n == g.n + (2 + 4 - 2 - 1) // 3


def test_left_weighted_justification_validates_on_small_family():
    for g in enumerate_prographs(4, 1, 1, 2):
        j = left_weighted_justify(g)
        assert validate(j) and j.n == 2


def test_left_weighted_justification_injective():
    gs = list(enumerate_prographs(3, 2, 1, 2))
    assert len({left_weighted_justify(g) for g in gs}) == len(gs)


def test_left_weighted_justification_rejects_residue_one():
    with pytest.raises(ValueError, match="use justify"):
        left_weighted_justify(Prograph.strand(3, 3))


def test_text_round_trip_and_canonicalization():
    g = parse_text("k=2;x=1;word=C@1,C@2,C@1,P@1,P@1,P@1")
    assert format_text(g) == "k=2;x=1;word=C@1,C@1,P@1,C@2,P@1,P@1"
    assert parse_text(format_text(g)) == g


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_text("k=2;x=1;word=Q@1")
    with pytest.raises(ValueError):
        parse_text("x=1;word=C@1")


def test_dot_output():
    dot = to_dot(parse_text("k=2;x=1;word=C@1,P@1"))
    assert dot.startswith("digraph prograph {")
    assert 'label="0"' in dot and 'label="3"' in dot
    assert dot.count("->") == 4
