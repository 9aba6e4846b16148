from math import gcd

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from tknots.algebra import (
    AlexanderRing,
    FiniteBiquandle,
    FiniteBSet,
    ShadowBiquandle,
    alexander,
    alexander_biquandle,
    check_biquandle,
    check_bset,
    dihedral,
    searrow_identity_violations,
    shadow_identity_violations,
    solve_S,
)
from tknots.errors import AxiomError, InputError

BUILTINS = [
    dihedral(1),
    dihedral(3),
    dihedral(4),
    dihedral(5),
    dihedral(7),
    alexander(5, [-2, 1]),
    alexander(5, [-3, 1]),
    alexander(5, [-1, 1]),
    alexander(2, [1, 1, 1]),
    alexander_biquandle(7, 2),
    alexander_biquandle(9, 4),
]


def test_dihedral3_tables(d3):
    assert d3.biquandle.under.tolist() == [[0, 2, 1], [2, 1, 0], [1, 0, 2]]
    assert d3.biquandle.is_quandle
    assert d3.strongly_connected
    assert d3.bset.searrow[0, 1] == 2  # 0 * 2 = 2*2 - 0 = 1
    assert solve_S(d3.biquandle, 1, 2) == (0, 1)


def test_searrow_examples():
    assert dihedral(5).bset.searrow[1, 2] == 4
    assert alexander(5, [-3, 1]).bset.searrow[1, 0] == 4
    assert alexander(5, [-2, 1]).biquandle.under[1, 0] == 2


def test_strong_connectivity_flags():
    assert not dihedral(4).strongly_connected
    assert dihedral(4).bset.searrow is None
    assert not alexander(5, [-1, 1]).strongly_connected
    assert alexander(2, [1, 1, 1]).strongly_connected
    assert dihedral(1).strongly_connected


@pytest.mark.parametrize("sb", BUILTINS, ids=lambda s: s.name)
def test_builtins_validate(sb):
    assert check_biquandle(sb.biquandle.under, sb.biquandle.over).passed
    assert check_bset(sb.biquandle, sb.bset.action).passed
    assert shadow_identity_violations(sb).passed
    if sb.strongly_connected:
        assert searrow_identity_violations(sb).passed


@pytest.mark.parametrize("sb", BUILTINS, ids=lambda s: s.name)
def test_inverse_tables_round_trip(sb):
    bq, X = sb.biquandle, sb.bset
    a, b = np.meshgrid(np.arange(bq.size), np.arange(bq.size), indexing="ij")
    assert (bq.under[bq.under_inv[a, b], b] == a).all()
    assert (bq.over[bq.over_inv[a, b], b] == a).all()
    c, d = bq.S[a, b, 0], bq.S[a, b, 1]
    assert (bq.S_inv[c, d, 0] == a).all() and (bq.S_inv[c, d, 1] == b).all()
    x, a2 = np.meshgrid(np.arange(X.size), np.arange(bq.size), indexing="ij")
    assert (X.action[X.action_inv[x, a2], a2] == x).all()


def test_mutation_reports_bijectivity(d3):
    bad = d3.biquandle.under.copy()
    bad[0, 0] = 1
    rep = check_biquandle(bad, d3.biquandle.over)
    assert ("bijectivity of ∗̲b", (0,)) in rep.violations
    with pytest.raises(AxiomError) as exc:
        FiniteBiquandle(bad, d3.biquandle.over)
    assert exc.value.details.violations == rep.violations


def test_all_violations_collected():
    # distinct constant tables break nearly everything; every failure must be listed
    rep = check_biquandle([[0, 0], [0, 0]], [[1, 1], [1, 1]])
    names = {n for n, _ in rep.violations}
    assert {"diagonal", "bijectivity of ∗̲b", "bijectivity of ∗̄b", "bijectivity of S"} <= names


def test_dihedral4_bset_is_compatible_but_weak():
    sb = dihedral(4)
    assert check_bset(sb.biquandle, sb.biquandle.under).passed
    assert not sb.strongly_connected


def test_bset_size_mismatch(d3):
    with pytest.raises(InputError) as exc:
        check_bset(d3.biquandle, [[0, 1], [1, 0]])
    assert exc.value.code == "size_mismatch"


@pytest.mark.parametrize(
    "under, code",
    [([[0, 1], [1]], "malformed_table"), ([[0, 5], [1, 1]], "entry_out_of_range"), ([[0.5]], "malformed_table")],
)
def test_malformed_tables(under, code):
    with pytest.raises(InputError) as exc:
        check_biquandle(under, under)
    assert exc.value.code == code


def test_shift_action_is_a_bset_but_not_strongly_connected():
    sb = ShadowBiquandle.from_tables([[0]], [[0]], [[1], [0]])
    assert sb.X == 2 and not sb.strongly_connected


def test_alexander_ring_arithmetic():
    R = AlexanderRing(2, [1, 1, 1])
    assert R.size == 4
    one_minus_t = R.add(R.constant(1), [(-c) % 2 for c in R.t])
    assert R.is_unit(one_minus_t)
    # t^3 = 1 in Z_2[t]/(t^2+t+1)
    t2 = R.mul(R.t, R.t)
    assert R.encode(R.mul(t2, R.t)) == R.encode(R.constant(1))


def test_alexander_rejects_bad_modulus():
    with pytest.raises(InputError):
        alexander(5, [0, 1])  # constant term is not a unit


def test_alexander_biquandle_has_nontrivial_over():
    sb = alexander_biquandle(7, 2)
    assert not sb.biquandle.is_quandle
    assert sb.strongly_connected
    with pytest.raises(InputError):
        alexander_biquandle(6, 2)


@given(st.integers(2, 11), st.integers(1, 10))
def test_alexander_biquandles_validate(n, s):
    assume(gcd(s, n) == 1)
    sb = alexander_biquandle(n, s)
    assert check_biquandle(sb.biquandle.under, sb.biquandle.over).passed
    assert check_bset(sb.biquandle, sb.bset.action).passed
    assert sb.strongly_connected
    assert sb.biquandle.is_quandle == (s % n == 1)


@given(st.integers(1, 12))
def test_dihedral_validates_for_every_n(n):
    sb = dihedral(n)
    assert check_biquandle(sb.biquandle.under, sb.biquandle.over).passed
    assert sb.strongly_connected == (n % 2 == 1)
