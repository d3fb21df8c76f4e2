"""Coset posets of idempotent cocycles, Hasse reduction and DOT output.

An idempotent cocycle e with inertial group H orders G/H by
sH <= tH  iff  e(s, s^-1 t) = 1.  For e = e_r this reads r(t) = r(s) + r(s^-1 t).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .cocycle import IdempotentCocycle, idempotent_from_r, inertial_group
from .errors import AxiomFailure, InternalInconsistency
from .groups import CosetSpace, FiniteGroup, Violation, left_cosets
from .slg import SubadditiveFn, m_subgroup


@dataclass(frozen=True)
class CosetPoset:
    cosets: CosetSpace
    leq: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "leq", tuple(tuple(bool(x) for x in row) for row in self.leq))

    def __len__(self):
        return len(self.cosets)

    def labels(self) -> list[str]:
        cs = self.cosets
        if len(cs.subgroup) == 1:
            return [cs.parent.label(g) for g in cs.reps]
        return [cs.label(k, "H") for k in range(len(cs))]

    def heights(self) -> list[int]:
        """Length of the longest chain from the least element."""
        n = len(self)
        below = [[i for i in range(n) if i != j and self.leq[i][j]] for j in range(n)]
        order = sorted(range(n), key=lambda j: len(below[j]))
        h = [0] * n
        for j in order:
            h[j] = max((h[i] + 1 for i in below[j]), default=0)
        return h

    def to_json(self) -> dict:
        cs = self.cosets
        return {"group": cs.parent.to_json(), "subgroup": list(cs.subgroup.members),
                "cosets": self.labels(), "leq": [list(row) for row in self.leq]}


def verify_poset(P: CosetPoset) -> list[Violation]:
    """Every violated axiom, with a witness."""
    cs = P.cosets
    G = cs.parent
    m = len(cs)
    L = np.array(P.leq, dtype=bool)
    report = []
    report += [Violation("reflexivity", (i,)) for i in range(m) if not L[i, i]]
    report += [Violation("antisymmetry", (i, j)) for i, j in itertools.combinations(range(m), 2)
               if L[i, j] and L[j, i]]
    for i, j, k in itertools.product(range(m), repeat=3):
        if L[i, j] and L[j, k] and not L[i, k]:
            report.append(Violation("transitivity", (i, j, k)))
    report += [Violation("least-element", (j,)) for j in range(m) if not L[0, j]]
    # lower subtractivity over elements s, t, p of G
    n = len(G)
    t = np.array(G.table)
    inv = np.array([G.inv(g) for g in range(n)])
    co = np.array(cs.coset_of)
    s_, t_, p_ = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    cs_, ct_, cp_ = co[s_], co[t_], co[p_]
    premise = L[cs_, ct_]
    left = L[cs_, cp_] & L[cp_, ct_]
    right = L[co[t[inv[s_], p_]], co[t[inv[s_], t_]]]
    for x, y, z in np.argwhere(premise & (left != right)):
        report.append(Violation("lower-subtractivity", (int(x), int(y), int(z))))
    return report


def _checked(P: CosetPoset) -> CosetPoset:
    report = verify_poset(P)
    if report:
        raise AxiomFailure("coset order fails the poset axioms", report)
    return P


def poset_from_idempotent(e: IdempotentCocycle) -> CosetPoset:
    G = e.group
    cs = left_cosets(G, inertial_group(e))
    m = len(cs)
    leq = [[e[s, G.mul(G.inv(s), t)] == 1 for t in cs.reps] for s in cs.reps]
    bad = [(s, t) for s in range(len(G)) for t in range(len(G))
           if (e[s, G.mul(G.inv(s), t)] == 1) != leq[cs.coset_of[s]][cs.coset_of[t]]]
    if bad:
        raise AxiomFailure("order depends on coset representatives", bad)
    return _checked(CosetPoset(cs, tuple(tuple(row) for row in leq)))


def poset_from_r(r: SubadditiveFn) -> CosetPoset:
    """sH <= tH iff r(t) = r(s) + r(s^-1 t)."""
    G = r.group
    cs = left_cosets(G, m_subgroup(r))

    def rel(s, t):
        return r[t] == r[s] + r[G.mul(G.inv(s), t)]

    leq = [[rel(s, t) for t in cs.reps] for s in cs.reps]
    bad = [(s, t) for s in range(len(G)) for t in range(len(G))
           if rel(s, t) != leq[cs.coset_of[s]][cs.coset_of[t]]]
    if bad:
        raise AxiomFailure("order depends on coset representatives", bad)
    P = _checked(CosetPoset(cs, tuple(tuple(row) for row in leq)))
    if P != poset_from_idempotent(idempotent_from_r(r)):
        raise InternalInconsistency("order from r differs from order from e_r")
    return P


@dataclass(frozen=True)
class HasseDiagram:
    poset: CosetPoset
    covers: frozenset[tuple[int, int]]

    def closure(self) -> list[list[bool]]:
        m = len(self.poset)
        C = np.eye(m, dtype=bool)
        for lo, hi in self.covers:
            C[lo, hi] = True
        for k in range(m):
            C |= C[:, [k]] & C[[k], :]
        return C.tolist()


def hasse(P: CosetPoset) -> HasseDiagram:
    m = len(P)
    L = P.leq
    covers = frozenset(
        (i, j) for i in range(m) for j in range(m)
        if i != j and L[i][j]
        and not any(k not in (i, j) and L[i][k] and L[k][j] for k in range(m)))
    return HasseDiagram(P, covers)


def to_dot(H: HasseDiagram, mode: str = "coset", name: str = "poset") -> str:
    """Deterministic DOT digraph, edges lower -> upper, one rank per height."""
    if mode not in ("coset", "expanded"):
        raise ValueError(f"unknown mode {mode!r}")
    P = H.poset
    cs = P.cosets
    G = cs.parent
    heights = P.heights()
    if mode == "coset":
        nodes = [(f"c{k}", lab, [k]) for k, lab in enumerate(P.labels())]
        members = {k: [f"c{k}"] for k in range(len(cs))}
    else:
        members = {k: [f"e{g}" for g in cs.members(k)] for k in range(len(cs))}
        nodes = [(f"e{g}", G.label(g), [cs.coset_of[g]]) for k in range(len(cs))
                 for g in cs.members(k)]
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for nid, lab, _ in nodes:
        lab = lab.replace('"', '\\"')
        lines.append(f'  {nid} [label="{lab}"];')
    for h in sorted(set(heights)):
        ids = [nid for nid, _, (k,) in nodes if heights[k] == h]
        lines.append("  { rank=same; " + " ".join(f"{i};" for i in ids) + " }")
    edges = sorted((a, b) for lo, hi in H.covers
                   for a in members[lo] for b in members[hi])
    edges.sort(key=lambda e: (int(e[0][1:]), int(e[1][1:])))
    lines += [f"  {a} -> {b};" for a, b in edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_edges(dot: str) -> set[tuple[str, str]]:
    """Edge set of a DOT string produced by :func:`to_dot`, by node label."""
    labels, edges = {}, set()
    for line in dot.splitlines():
        line = line.strip()
        if "[label=" in line:
            nid, rest = line.split(" ", 1)
            labels[nid] = rest.split('"')[1]
        elif "->" in line:
            a, b = line.rstrip(";").split(" -> ")
            edges.add((a, b))
    return {(labels[a], labels[b]) for a, b in edges}
