import itertools

import pytest

import golden
from oracles import lower_subtractive_failures
from weakcocycles.cocycle import idempotent_from_r, trivial_idempotent
from weakcocycles.errors import AxiomFailure
from weakcocycles.groups import cyclic, dihedral, left_cosets, subgroup_closure, symmetric
from weakcocycles.order import (CosetPoset, dot_edges, hasse, poset_from_idempotent,
                                poset_from_r, to_dot, verify_poset)
from weakcocycles.slg import enumerate_slg, halve, evenize, validate_r, zero_r

C10, D8, Z4 = cyclic(10), dihedral(8), cyclic(4)
R1 = validate_r(C10, golden.R1)
RHAT = validate_r(D8, golden.D8_RHAT)


def order_on(G, relations):
    cs = left_cosets(G, subgroup_closure(G))
    n = len(G)
    L = [[i == j or i == 0 for j in range(n)] for i in range(n)]
    for i, j in relations:
        L[i][j] = True
    return CosetPoset(cs, L)


def covers_by_label(P):
    labels = P.labels()
    return {(labels[a], labels[b]) for a, b in hasse(P).covers}


def test_d8_coset_poset():
    P = poset_from_idempotent(idempotent_from_r(RHAT))
    assert P.labels() == ["H", "aH", "sH", "asH"]
    assert covers_by_label(P) == golden.D8_COSET_EDGES
    assert not P.leq[1][2] and not P.leq[2][1]


def test_trivial_poset_is_single_coset():
    assert len(poset_from_idempotent(trivial_idempotent(D8))) == 1
    assert len(poset_from_r(zero_r(C10))) == 1


def test_r1_poset_covers():
    assert hasse(poset_from_r(R1)).covers == golden.R1_COVERS


def test_halved_and_evened_r1_share_one_poset():
    P = poset_from_r(validate_r(C10, golden.R1_HALF))
    Q = poset_from_r(validate_r(C10, golden.R1_EVEN))
    assert P == Q
    assert halve(R1).values == golden.R1_HALF and evenize(R1).values == golden.R1_EVEN
    # cover set computed from the order itself
    assert sorted(hasse(P).covers) == [
        (0, 1), (0, 2), (0, 6), (0, 7), (1, 3), (1, 8), (2, 3), (2, 4), (2, 8), (2, 9),
        (3, 5), (4, 5), (6, 3), (6, 8), (7, 3), (7, 4), (7, 8), (7, 9), (8, 5), (9, 5)]
    assert not P.leq[1][9]


def test_verify_poset_examples():
    assert verify_poset(poset_from_idempotent(idempotent_from_r(R1))) == []
    P = order_on(Z4, [(1, 2), (1, 3)])
    report = verify_poset(P)
    assert {v.axiom for v in report} == {"lower-subtractivity"}
    assert (1, 3, 2) in [v.witness for v in report]
    chain = order_on(Z4, [(1, 2), (1, 3), (2, 3)])
    assert verify_poset(chain) == []
    assert chain == poset_from_r(validate_r(Z4, [0, 1, 2, 3]))


def test_listed_z4_order_is_lower_subtractive():
    assert verify_poset(order_on(Z4, [(1, 3)])) == []


def test_verify_poset_matches_brute_force_on_z4():
    offdiag = [(i, j) for i in range(1, 4) for j in range(1, 4) if i != j]
    seen_fail = 0
    for bits in itertools.product([0, 1], repeat=len(offdiag)):
        P = order_on(Z4, [p for p, b in zip(offdiag, bits) if b])
        got = {v.witness for v in verify_poset(P) if v.axiom == "lower-subtractivity"}
        assert got == set(lower_subtractive_failures(Z4.table, P.leq))
        seen_fail += bool(got)
    assert seen_fail


def test_other_axioms_reported():
    cs = left_cosets(Z4, subgroup_closure(Z4))
    L = [[True] * 4 for _ in range(4)]
    L[0][0] = False
    axioms = {v.axiom for v in verify_poset(CosetPoset(cs, L))}
    assert {"reflexivity", "antisymmetry"} <= axioms
    L = [[i == j for j in range(4)] for i in range(4)]
    L[1][2] = L[2][3] = True
    axioms = {v.axiom for v in verify_poset(CosetPoset(cs, L))}
    assert {"transitivity", "least-element"} <= axioms


def test_corrupt_cocycle_rejected():
    from weakcocycles.cocycle import IdempotentCocycle
    e = idempotent_from_r(RHAT)
    vals = [list(row) for row in e.values]
    vals[1][4] = 0  # breaks representative independence
    with pytest.raises(AxiomFailure):
        poset_from_idempotent(IdempotentCocycle(D8, vals))


def test_hasse_chain_and_closure():
    r = validate_r(cyclic(5), [0, 1, 2, 2, 1])
    P = poset_from_r(validate_r(Z4, [0, 1, 2, 3]))
    assert len(hasse(P).covers) == 3
    H = hasse(poset_from_r(r))
    assert H.closure() == [list(row) for row in H.poset.leq]


@pytest.mark.parametrize("G", [cyclic(n) for n in range(2, 7)] + [symmetric(3), dihedral(8)],
                         ids=lambda G: G.name)
def test_poset_properties_over_enumeration(G):
    for r in enumerate_slg(G, 3):
        P = poset_from_r(r)
        assert verify_poset(P) == []
        assert P == poset_from_idempotent(idempotent_from_r(r))
        h = P.heights()
        assert all(h[P.cosets.coset_of[g]] <= r[g] for g in range(len(G)))
        # representative independence: every choice of representatives
        e = idempotent_from_r(r)
        co = P.cosets.coset_of
        for s, t in itertools.product(range(len(G)), repeat=2):
            assert P.leq[co[s]][co[t]] == (e[s, G.mul(G.inv(s), t)] == 1)


def test_dot_output():
    H = hasse(poset_from_idempotent(idempotent_from_r(RHAT)))
    coset = to_dot(H, "coset")
    assert coset.count("[label=") == 4 and coset.count("->") == 4
    assert dot_edges(coset) == golden.D8_COSET_EDGES
    expanded = to_dot(H, "expanded")
    assert expanded.count("[label=") == 8 and expanded.count("->") == 16
    assert dot_edges(expanded) == golden.D8_EXPANDED_EDGES
    assert to_dot(H, "coset") == coset
    single = to_dot(hasse(poset_from_r(zero_r(D8))))
    assert single.startswith("digraph poset {") and "->" not in single
    assert single.rstrip().endswith("}")
    with pytest.raises(ValueError):
        to_dot(H, "radial")


def test_r1_dot_edges():
    dot = to_dot(hasse(poset_from_r(R1)))
    assert dot_edges(dot) == {(str(a), str(b)) for a, b in golden.R1_COVERS}
    assert "rankdir=BT" in dot
