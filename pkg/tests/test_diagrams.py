from collections import Counter

import pytest

from oracles import bruteforce_trefoil as oracle
from tknots.algebra import alexander, alexander_biquandle, dihedral
from tknots.chains import ChainTheory, FormalChain
from tknots.cochains import CochainTable
from tknots.cocycles import mochizuki_2cocycle, mochizuki_3cocycle, transport_mu
from tknots.coloring import SBColoring, is_lb_coloring, is_sb_coloring
from tknots.diagrams import (
    PDCode,
    T,
    T_inv,
    W_correspondence,
    build_structure,
    chain_W,
    enumerate_lb_colorings,
    enumerate_sb_colorings,
    invariants,
)
from tknots.errors import ContractError, InputError
from tknots.tribracket import corresponding_tribracket, dihedral_tribracket
from tknots.verify import compare_pipelines, load_builtin

TREFOIL_VARIANTS = ["trefoil", "trefoil-r1a", "trefoil-r1b", "trefoil-r2a", "trefoil-r2b", "trefoil-r2c", "trefoil-r2d"]


@pytest.mark.parametrize(
    "name, crossings, arcs, regions",
    [("trefoil", 3, 6, 5), ("figure8", 4, 8, 6), ("kink", 1, 2, 3), ("trefoil-r1a", 4, 8, 6), ("trefoil-r2a", 5, 10, 7)],
)
def test_structure_counts(name, crossings, arcs, regions):
    ds = load_builtin(name)
    assert (ds.n_crossings, ds.n_semi_arcs, ds.n_regions) == (crossings, arcs, regions)
    assert ds.n_crossings - ds.n_semi_arcs + ds.n_regions == 2


def test_faces_match_oracle(trefoil, figure8):
    assert trefoil.n_regions == oracle.analyse(oracle.TREFOIL)[0]
    assert figure8.n_regions == oracle.analyse(oracle.FIGURE_EIGHT)[0]


def test_signs(trefoil, figure8, kink):
    assert [c.sign for c in trefoil.crossings] == [-1, -1, -1]
    assert sorted(c.sign for c in figure8.crossings) == [-1, -1, 1, 1]
    assert figure8.writhe == 0
    assert kink.crossings[0].sign == 1


def test_source_region_is_right_of_incoming_strands(trefoil, figure8):
    for ds in (trefoil, figure8):
        for c in ds.crossings:
            assert ds.sides[c.u1][0] == c.r and ds.sides[c.o1][0] == c.r


@pytest.mark.parametrize(
    "crossings, code",
    [
        ([], "empty_pd"),
        ([[1, 2, 3]], "malformed_pd"),
        ([[1, 1, 2, 3]], "malformed_pd"),
        ([[1, 1, 2, 2], [3, 3, 4, 4]], "disconnected_diagram"),
    ],
)
def test_bad_pd_codes(crossings, code):
    with pytest.raises(InputError) as exc:
        build_structure(crossings)
    assert exc.value.code == code


@pytest.mark.parametrize(
    "name, n, count",
    [("trefoil", 3, 27), ("trefoil", 5, 25), ("figure8", 3, 9), ("figure8", 5, 125), ("kink", 3, 9)],
)
def test_coloring_counts(name, n, count):
    ds = load_builtin(name)
    sb = dihedral(n)
    S = enumerate_sb_colorings(ds, sb)
    L = enumerate_lb_colorings(ds, dihedral_tribracket(n))
    assert len(S) == len(L) == count
    assert all(is_sb_coloring(ds.problem, sb, c) for c in S)
    assert all(is_lb_coloring(ds.problem, dihedral_tribracket(n), c) for c in L)


def test_counts_and_phi_match_bruteforce(trefoil, figure8):
    for ds, pd in ((trefoil, oracle.TREFOIL), (figure8, oracle.FIGURE_EIGHT)):
        count, phi = oracle.phi(pd, 3)
        res = invariants(ds, dihedral(3), mochizuki_2cocycle(3), with_homology=False)
        assert (res.count, res.phi) == (count, phi)
    assert invariants(trefoil, dihedral(3), mochizuki_2cocycle(3)).phi == {0: 9, 1: 18}


def test_size_one_tribracket_has_one_coloring(figure8):
    assert len(enumerate_lb_colorings(figure8, dihedral_tribracket(1))) == 1


def test_T_on_kink(kink, d3):
    for c in enumerate_sb_colorings(kink, d3):
        if len(set(c.sheets)) == 1:
            a = c.sheets[0]
            assert all(p == (c.regions[r1], d3.bset.action[c.regions[r1], a]) for p, (r1, _) in
                       zip(T(d3, c, kink).pairs, kink.problem.adjacency))


@pytest.mark.parametrize("sb", [dihedral(3), dihedral(5), alexander(5, [-2, 1]), alexander_biquandle(7, 2)],
                         ids=lambda s: s.name)
@pytest.mark.parametrize("name", ["trefoil", "figure8", "trefoil-r1b", "trefoil-r2c"])
def test_T_is_a_bijection(sb, name):
    ds = load_builtin(name)
    t = corresponding_tribracket(sb)
    S = enumerate_sb_colorings(ds, sb)
    L = enumerate_lb_colorings(ds, t)
    assert sorted(T(sb, c, ds) for c in S) == sorted(L)
    assert all(T_inv(sb, T(sb, c, ds), ds, t) == c for c in S)


def test_T_rejects_invalid_input(trefoil, d3):
    bogus = SBColoring((0, 1, 0, 0, 0, 0), (0,) * 5)
    with pytest.raises(ContractError):
        T(d3, bogus, trefoil)


def test_W_examples(trefoil, d3):
    const = next(c for c in enumerate_sb_colorings(trefoil, d3) if set(c.sheets) == {0} and c.regions[0] == 0)
    assert not chain_W(trefoil, const)
    S = ChainTheory.shadow(d3)
    nontrivial = [c for c in enumerate_sb_colorings(trefoil, d3) if len(set(c.sheets)) == 3]
    assert nontrivial
    for c in nontrivial:
        W = chain_W(trefoil, c)
        assert W and not S.boundary_chain(W)


@pytest.mark.parametrize("name", TREFOIL_VARIANTS)
@pytest.mark.parametrize("sb", [dihedral(3), alexander_biquandle(7, 2)], ids=lambda s: s.name)
def test_W_is_a_cycle_and_corresponds(name, sb):
    ds = load_builtin(name)
    S = ChainTheory.shadow(sb)
    for c in enumerate_sb_colorings(ds, sb):
        assert not S.boundary_chain(chain_W(ds, c))
        assert W_correspondence(ds, sb, c)


def test_reidemeister_variants_agree():
    th = mochizuki_2cocycle(3)
    results = {n: invariants(load_builtin(n), dihedral(3), th, with_homology=False) for n in TREFOIL_VARIANTS}
    assert {(r.count, tuple(r.phi.items())) for r in results.values()} == {(27, ((0, 9), (1, 18)))}


def test_reidemeister_variants_agree_for_a_biquandle():
    sb = alexander_biquandle(7, 2)
    counts = {n: len(enumerate_sb_colorings(load_builtin(n), sb)) for n in TREFOIL_VARIANTS}
    assert set(counts.values()) == {343}


def test_homology_multiset_has_coloring_count_entries(trefoil, d3):
    res = invariants(trefoil, d3, mochizuki_2cocycle(3))
    assert sum(res.H.values()) == res.count == sum(res.phi.values())
    again = invariants(trefoil, d3, mochizuki_2cocycle(3))
    assert again.to_json() == res.to_json()


def test_zero_cocycle_gives_zero_phi(trefoil, d3):
    assert invariants(trefoil, d3, CochainTable("SB", 2, 3, {})).phi == {0: 27}


def test_phi_equality_figure_eight(figure8, d5):
    r = compare_pipelines(figure8, d5, mochizuki_2cocycle(5))
    assert r["phi_equal"] and r["colorings_sb"] == 125
    assert r["phi_sb"] == [[0, 25], [2, 50], [3, 50]]


def test_scaled_cocycle_scales_phi(trefoil, d3):
    th = transport_mu(mochizuki_2cocycle(3), d3)
    t = corresponding_tribracket(d3)
    base = invariants(trefoil, t, th, with_homology=False).phi
    scaled = invariants(trefoil, t, th.scaled(2), with_homology=False).phi
    assert Counter({(2 * v) % 3: k for v, k in base.items()}) == Counter(scaled)


def test_invariant_errors(trefoil, d3):
    with pytest.raises(InputError) as exc:
        invariants(trefoil, d3, CochainTable("SB", 2, 3, {(0, 1, 2): 1}))
    assert exc.value.code == "not_a_cocycle"
    with pytest.raises(InputError) as exc:
        invariants(trefoil, d3, mochizuki_3cocycle(3))
    assert exc.value.code == "degree_mismatch"
    with pytest.raises(InputError) as exc:
        invariants(trefoil, corresponding_tribracket(d3), mochizuki_2cocycle(3))
    assert exc.value.code == "theory_mismatch"
    with pytest.raises(InputError) as exc:
        invariants(trefoil, d3, mochizuki_2cocycle(5))
    assert exc.value.code == "size_mismatch"


def test_parallel_enumeration_is_deterministic(figure8, d5):
    one = enumerate_sb_colorings(figure8, d5, jobs=1)
    two = enumerate_sb_colorings(figure8, d5, jobs=2)
    assert one == two
    t = corresponding_tribracket(d5)
    assert enumerate_lb_colorings(figure8, t, jobs=1) == enumerate_lb_colorings(figure8, t, jobs=3)


def test_pd_json_round_trip(trefoil):
    assert PDCode(trefoil.pd.to_json()["crossings"]).crossings == trefoil.pd.crossings
    assert FormalChain(2).to_json() == {"degree": 2, "terms": []}
