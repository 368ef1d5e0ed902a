import json

import pytest

from oracles import lattice_brute, motzkin_brute, motzkin_numbers, walks_brute
from svyt.conjectures import (
    AGREE,
    DISAGREE,
    LATTICE_PRESETS,
    LatticeConfig,
    bounded_row_shapes,
    bounded_row_tableaux_total,
    conjecture6_check,
    conjecture6_grid,
    conjecture6_index,
    conjecture6_shape,
    lattice_paths_3d,
    motzkin,
    quarter_plane_walks,
    sloped_motzkin,
    sweep,
)
from svyt.counting import catalan_d, count_1k1
from svyt.tableaux import Shape


# -- conjecture for x != 1 mod (k-1)

@pytest.mark.parametrize("k,x,n,m", [(3, 2, 1, 1), (4, 2, 1, 1), (3, 2, 2, 1)])
def test_conjecture6_examples(k, x, n, m):
    report = conjecture6_check(k, x, n, m)
    assert report.verdict == AGREE and report.points[0].lhs > 0


def test_conjecture6_shape():
    shape = conjecture6_shape(4, 2, 3, 2)
    assert shape.outer == Shape((4, 4, 2)) and shape.inner == Shape((1,))
    shape = conjecture6_shape(4, 6, 1, 1)
    assert shape.outer == Shape((3, 3, 1)) and shape.inner == Shape((2,))


def test_literal_reading_is_reported_as_a_finding():
    report = conjecture6_check(3, 2, 1, 1, reading="literal")
    assert report.verdict == DISAGREE
    assert (report.points[0].lhs, report.points[0].rhs) == (4, 7)


def test_readings_share_indices_at_top_residue():
    for k in range(3, 7):
        for i in range(1, 5):
            assert conjecture6_index(k, k - 1, i, "literal") == conjecture6_index(k, k - 1, i, "repaired")


def test_conjecture6_rejects_unit_residue():
    with pytest.raises(ValueError):
        conjecture6_check(3, 3, 1, 1)
    with pytest.raises(ValueError):
        conjecture6_index(3, 2, 1, "other")


def test_conjecture6_grid_covers_all_residues():
    grid = conjecture6_grid()
    assert {(p["k"], p["x"] % (p["k"] - 1) or p["k"] - 1) for p in grid} == {(3, 2), (4, 2), (4, 3)}
    assert all(p["n"] + p["m"] <= 4 for p in grid)


# -- walks and paths

@pytest.mark.parametrize("n", range(0, 6))
def test_walks_are_three_dimensional_catalan(n):
    assert quarter_plane_walks(n, 2) == catalan_d(3, n)


@pytest.mark.parametrize("k", range(2, 8))
def test_single_walk(k):
    assert quarter_plane_walks(1, k) == 1


@pytest.mark.parametrize("n,k", [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (1, 4), (2, 4)])
def test_walk_dp_matches_enumeration(n, k):
    assert quarter_plane_walks(n, k) == walks_brute(n, k)


def test_walks_against_tableaux():
    assert quarter_plane_walks(2, 3) == count_1k1(2, 2, 2, 3) == 10
    for k in range(2, 5):
        for n in range(1, 4):
            assert quarter_plane_walks(n, k) == count_1k1(n, n, n, k)


@pytest.mark.parametrize("n,k", [(n, k) for k in (2, 3, 4) for n in range(0, 11)])
def test_motzkin_dp_matches_enumeration(n, k):
    assert sloped_motzkin(n, k) == motzkin_brute(n, k)


def test_motzkin_examples():
    assert sloped_motzkin(4, 3) == 5 == bounded_row_tableaux_total(4, 3)
    assert sloped_motzkin(4, 2) == 9
    assert all(sloped_motzkin(0, k) == 1 for k in range(2, 6))
    assert [motzkin(n) for n in range(12)] == motzkin_numbers(12)


def test_bounded_row_shapes():
    assert sorted(bounded_row_shapes(4, 3)) == [(1, 1, 1), (2, 1), (4,)]
    assert all(bounded_row_tableaux_total(1, k) == 1 for k in range(2, 6))


@pytest.mark.parametrize("n", range(0, 9))
def test_motzkin_equals_bounded_row_tableaux_at_k2(n):
    assert sloped_motzkin(n, 2) == bounded_row_tableaux_total(n, 2) == motzkin_numbers(9)[n]


def test_sloped_motzkin_finding_at_k3():
    # agreement holds through n = 6 and breaks at n = 7
    assert all(sloped_motzkin(n, 3) == bounded_row_tableaux_total(n, 3) for n in range(7))
    assert (sloped_motzkin(7, 3), bounded_row_tableaux_total(7, 3)) == (57, 58)


def test_lattice_classical():
    assert lattice_paths_3d(3, 2, "classical") == 42
    assert lattice_paths_3d(1, 2, "classical") == 1
    assert all(lattice_paths_3d(n, 2, "classical") == catalan_d(3, n) for n in range(6))


@pytest.mark.parametrize("name", sorted(LATTICE_PRESETS))
@pytest.mark.parametrize("n,k", [(1, 2), (2, 2), (2, 3), (1, 4), (3, 2)])
def test_lattice_dp_matches_enumeration(name, n, k):
    cfg = LATTICE_PRESETS[name]
    end = cfg.endpoint(n, k)
    expected = lattice_brute(end, sorted(set(cfg.steps)), lambda x, y, z: cfg.predicate(x, y, z, k))
    assert lattice_paths_3d(n, k, name) == expected


def test_lattice_literal_reading_is_empty():
    assert lattice_paths_3d(2, 3, "literal") == 0
    assert lattice_paths_3d(2, 3, "repaired") == 10


def test_lattice_custom_config():
    cfg = LatticeConfig(((1, 0, 0), (0, 1, 0)), lambda n, k: (n, n, 0), lambda x, y, z, k: x >= y, "ballot")
    assert lattice_paths_3d(4, 2, cfg) == catalan_d(2, 4)


@pytest.mark.parametrize("fn", [quarter_plane_walks, sloped_motzkin, bounded_row_tableaux_total])
def test_bad_arguments(fn):
    with pytest.raises(ValueError):
        fn(2, 1)


# -- sweeps

def test_sweep_preserves_order_and_persists(tmp_path):
    grid = [{"k": 3, "n": n} for n in (3, 1, 2)]
    path = tmp_path / "walks.json"
    report = sweep("walks", grid, path=path)
    assert [p.params["n"] for p in report.points] == [3, 1, 2]
    data = json.loads(path.read_text())
    assert data["verdict"] == AGREE and [p["lhs"] for p in data["points"]] == ["190", "1", "10"]
    assert data == json.loads(report.to_json())


def test_sweep_parallel_is_identical():
    grid = [{"k": k, "n": n} for k in (2, 3) for n in range(0, 9)]
    assert sweep("motzkin", grid, jobs=1).to_json() == sweep("motzkin", grid, jobs=2).to_json()


def test_sweep_reports_disagreement():
    report = sweep("motzkin", [{"k": 3, "n": 6}, {"k": 3, "n": 7}])
    assert report.verdict == DISAGREE and [p.params["n"] for p in report.disagreements] == [7]
    assert "DISAGREE" in report.to_text()


def test_sweep_unknown_claim():
    with pytest.raises(ValueError):
        sweep("nonsense")


def test_lattice_sweep_runs():
    report = sweep("lattice3d")
    assert len(report.points) == 9 and report.verdict in (AGREE, DISAGREE)
    repaired = sweep("lattice3d", [{"k": k, "n": n, "constraint": "repaired"} for k in (2, 3, 4) for n in (1, 2, 3)])
    assert repaired.verdict == AGREE
