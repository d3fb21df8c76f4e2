import random

import pytest
from hypothesis import given, settings, strategies as st

import golden
from oracles import brute_n1, brute_slg, brute_word_length
from weakcocycles.errors import (GroupMismatch, NegativeValue, NonzeroAtIdentity,
                                 NotDecomposable, NotInN1, NotNormal, NotSubadditive,
                                 TooLarge)
from weakcocycles.groups import cyclic, dihedral, quotient_group, subgroup_closure, symmetric
from weakcocycles.slg import (SubadditiveFn, add_r, bump, defect_table, enumerate_slg,
                              evenize, halve, inflate_r, m_subgroup, n1_set, r_from_defect,
                              r_from_generators, validate_r, zero_r)

C10, D8 = cyclic(10), dihedral(8)
SMALL = [cyclic(n) for n in range(1, 7)] + [symmetric(3)]


def rhat():
    return validate_r(D8, golden.D8_RHAT)


def r1():
    return validate_r(C10, golden.R1)


def test_validate_examples():
    assert r1().values == golden.R1
    assert validate_r(D8, [0] * 8).values == (0,) * 8
    with pytest.raises(NotSubadditive) as info:
        validate_r(C10, [0, 1, 3, 3, 4, 5, 1, 2, 3, 4])
    assert (1, 1) in info.value.witnesses


def test_validate_rejects_identity_and_negatives():
    with pytest.raises(NonzeroAtIdentity):
        validate_r(cyclic(2), [1, 1])
    with pytest.raises(NegativeValue):
        validate_r(cyclic(2), [0, -1])
    with pytest.raises(GroupMismatch):
        validate_r(cyclic(2), [0, 1, 1])


def test_m_subgroup():
    assert m_subgroup(rhat()).labels() == ["1", "a^2"]
    assert len(m_subgroup(zero_r(D8))) == 8
    assert m_subgroup(r1()).members == (0,)


def test_add_r():
    assert add_r(r1(), zero_r(C10)) == r1()
    assert add_r(r1(), r1()).values == (0, 4, 4, 6, 8, 10, 2, 4, 6, 8)
    assert add_r(rhat(), halve(rhat())).values == (0, 2, 0, 2, 2, 3, 2, 3)
    with pytest.raises(GroupMismatch):
        add_r(r1(), zero_r(D8))


def test_defect_table_examples():
    d = defect_table(r1()).d
    assert d[1][1] == 2 and d[5][5] == 10
    assert all(x == 0 for x in d[0]) and all(row[0] == 0 for row in d)


def test_r_from_generators_examples():
    assert r_from_generators(C10, golden.C10_GENS).values == golden.C10_WORD_LENGTH
    Q, _ = quotient_group(D8, subgroup_closure(D8, ["a^2"]), suffix="H")
    gens = [Q.index(x) for x in golden.D8_QUOTIENT_GENS]
    assert r_from_generators(Q, gens).values == golden.D8_QUOTIENT_R
    assert r_from_generators(cyclic(2), [1]).values == (0, 1)


def test_n1_examples():
    assert n1_set(r_from_generators(C10, golden.C10_GENS)) == golden.C10_N1
    assert n1_set(zero_r(D8)) == frozenset()
    assert n1_set(rhat()) == {D8.index(x) for x in ("a", "a^3", "s", "a^2s")}


def test_bump_examples():
    r = r_from_generators(C10, golden.C10_GENS)
    assert bump(r, 1).values == golden.R1
    with pytest.raises(NotInN1) as info:
        bump(r, 2)
    assert (1, 1) in info.value.witnesses
    assert bump(rhat(), D8.index("a")).values == (0, 2, 0, 2, 1, 2, 1, 2)


def test_halve_and_evenize_examples():
    assert halve(r1()).values == golden.R1_HALF
    assert evenize(r1()).values == golden.R1_EVEN
    assert halve(zero_r(C10)) == zero_r(C10) == evenize(zero_r(C10))
    assert halve(rhat()).values == (0, 1, 0, 1, 1, 1, 1, 1)


def test_evenize_is_twice_halve_on_random_d8_functions():
    rng = random.Random(7)
    rs = enumerate_slg(D8, 3)
    for r in rng.sample(rs, 20):
        assert evenize(r) == add_r(halve(r), halve(r))


def test_inflate_r_examples():
    N = subgroup_closure(D8, ["a^2"])
    Q, _ = quotient_group(D8, N)
    rq = SubadditiveFn(Q, golden.D8_QUOTIENT_R)
    out = inflate_r(D8, N, rq)
    assert out.values == golden.D8_RHAT
    assert m_subgroup(out) == N
    assert inflate_r(D8, subgroup_closure(D8), SubadditiveFn(D8, golden.D8_RHAT)).values == golden.D8_RHAT
    zero = inflate_r(D8, N, zero_r(Q))
    assert len(m_subgroup(zero)) == 8
    with pytest.raises(NotNormal):
        inflate_r(D8, subgroup_closure(D8, ["s"]), rq)
    with pytest.raises(GroupMismatch):
        inflate_r(D8, N, zero_r(cyclic(4)))


def test_enumeration_oracle_counts():
    assert [r.values for r in enumerate_slg(cyclic(2), 2)] == [(0, 0), (0, 1), (0, 2)]
    assert [r.values for r in enumerate_slg(cyclic(3), 1)] == [(0, 0, 0), (0, 1, 1)]
    assert [r.values for r in enumerate_slg(D8, 0)] == [(0,) * 8]
    with pytest.raises(TooLarge):
        enumerate_slg(cyclic(30), 3)


@pytest.mark.parametrize("G", SMALL + [dihedral(8)], ids=lambda G: G.name)
@pytest.mark.parametrize("maxval", [1, 2])
def test_enumeration_matches_brute_force(G, maxval):
    got = [r.values for r in enumerate_slg(G, maxval)]
    assert got == brute_slg(G.table, maxval)


@pytest.mark.parametrize("G", SMALL + [dihedral(8)], ids=lambda G: G.name)
def test_transforms_and_n1_over_enumeration(G):
    for r in enumerate_slg(G, 3):
        M = m_subgroup(r)
        assert set(n1_set(r)) == brute_n1(G.table, r.values)
        for a in n1_set(r):
            assert m_subgroup(bump(r, a)) == M
        assert m_subgroup(halve(r)) == m_subgroup(evenize(r)) == M
        assert not defect_table(r).consistency_violations()
        assert r_from_defect(G, defect_table(r).d) == r


def test_r_from_defect_rejects_garbage():
    d = [list(row) for row in defect_table(r1()).d]
    d[1][2] += 1
    with pytest.raises(NotDecomposable):
        r_from_defect(C10, d)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(SMALL + [dihedral(8)]), st.data())
def test_monoid_closure(G, data):
    rs = enumerate_slg(G, 2)
    r = data.draw(st.sampled_from(rs))
    s = data.draw(st.sampled_from(rs))
    total = add_r(r, s)
    assert validate_r(G, total.values) == total
    gens = data.draw(st.sets(st.integers(1, max(1, len(G) - 1)), min_size=1, max_size=2))
    if len(G) > 1 and None not in brute_word_length(G.table, sorted(gens)):
        w = r_from_generators(G, gens)
        assert validate_r(G, w.values) == w
