"""The monoid Sl(G) of subadditive natural-valued functions on a finite group.

A function r with r(1) = 0 and r(st) <= r(s) + r(t).  The module provides
validation, the zero set M_r, the defect table, word-length construction from
a generating set, and the four transformations: bump, halve, evenize and
inflation from a quotient.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (GroupMismatch, InternalInconsistency, NegativeValue,
                     NonzeroAtIdentity, NotDecomposable, NotInN1, NotSubadditive,
                     TooLarge)
from .groups import (FiniteGroup, Subgroup, as_subgroup, canonical_factorization,
                     double_coset, quotient_group)
from .errors import NotASubgroup

ENUMERATION_CAP = 10**7


def subadditivity_violations(G: FiniteGroup, values: Sequence[int]) -> list[tuple[int, int]]:
    t = G.table
    n = len(G)
    return [(i, j) for i in range(n) for j in range(n)
            if values[t[i][j]] > values[i] + values[j]]


@dataclass(frozen=True)
class SubadditiveFn:
    group: FiniteGroup
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        G, v = self.group, self.values
        if len(v) != len(G):
            raise GroupMismatch(f"expected {len(G)} values, got {len(v)}")
        neg = [(i,) for i, x in enumerate(v) if x < 0]
        if neg:
            raise NegativeValue("values must be natural numbers", neg)
        if v[0] != 0:
            raise NonzeroAtIdentity("r(1) must be 0", [(0, v[0])])
        bad = subadditivity_violations(G, v)
        if bad:
            raise NotSubadditive("r(st) > r(s) + r(t)", bad)

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __len__(self):
        return len(self.values)

    def __add__(self, other):
        return add_r(self, other)

    def as_dict(self) -> dict[str, int]:
        return {self.group.label(i): x for i, x in enumerate(self.values)}


def validate_r(G: FiniteGroup, values: Sequence[int]) -> SubadditiveFn:
    return SubadditiveFn(G, tuple(values))


def zero_r(G: FiniteGroup) -> SubadditiveFn:
    return SubadditiveFn(G, (0,) * len(G))


def m_subgroup(r: SubadditiveFn) -> Subgroup:
    """The subgroup {s : r(s) = 0}."""
    try:
        return as_subgroup(r.group, [i for i, x in enumerate(r.values) if x == 0])
    except NotASubgroup as exc:
        raise InternalInconsistency("zero set of a valid r is not closed",
                                    exc.witnesses) from exc


def add_r(r1: SubadditiveFn, r2: SubadditiveFn) -> SubadditiveFn:
    if r1.group != r2.group:
        raise GroupMismatch("cannot add functions on different groups")
    return SubadditiveFn(r1.group, tuple(a + b for a, b in zip(r1.values, r2.values)))


@dataclass(frozen=True)
class DefectTable:
    group: FiniteGroup
    d: tuple[tuple[int, ...], ...]

    def __getitem__(self, ij):
        i, j = ij
        return self.d[i][j]

    def consistency_violations(self) -> list[tuple[int, int, int]]:
        """Triples where d(s,t) + d(st,u) != d(t,u) + d(s,tu)."""
        G, d = self.group, self.d
        n = len(G)
        t = G.table
        return [(a, b, c) for a, b, c in itertools.product(range(n), repeat=3)
                if d[a][b] + d[t[a][b]][c] != d[b][c] + d[a][t[b][c]]]


def defect_table(r: SubadditiveFn) -> DefectTable:
    """d(s, t) = r(s) + r(t) - r(st)."""
    G, v = r.group, r.values
    n = len(G)
    d = tuple(tuple(v[i] + v[j] - v[G.table[i][j]] for j in range(n)) for i in range(n))
    return DefectTable(G, d)


def r_from_defect(G: FiniteGroup, d) -> SubadditiveFn:
    """Recover the unique r whose defect table is ``d``.

    Telescoping along powers of s gives
    m * r(s) = sum_{j=1}^{m-1} d(s, s^j) with m the order of s.
    Raises NotDecomposable when ``d`` is not the defect table of any r.
    """
    n = len(G)
    values = []
    for s in range(n):
        m = G.element_order(s)
        total, x = 0, s
        for _ in range(m - 1):
            total += d[s][x]
            x = G.mul(s, x)
        if total % m:
            raise NotDecomposable("defect sum along powers is not divisible",
                                  [(s, total, m)])
        values.append(total // m)
    try:
        r = SubadditiveFn(G, tuple(values))
    except (NotSubadditive, NegativeValue, NonzeroAtIdentity) as exc:
        raise NotDecomposable("recovered values are not subadditive",
                              exc.witnesses) from exc
    dr = defect_table(r).d
    bad = [(i, j) for i in range(n) for j in range(n) if dr[i][j] != d[i][j]]
    if bad:
        raise NotDecomposable("table is not a defect table", bad)
    return r


def r_from_generators(G: FiniteGroup, A: Iterable[int]) -> SubadditiveFn:
    """Word length over A (positive words only)."""
    tree = canonical_factorization(G, A)
    return SubadditiveFn(G, tree.dist)


def n1_set(r: SubadditiveFn) -> frozenset[int]:
    """Elements with r > 0 admitting no defect-zero split into two
    positive-value factors."""
    G, v = r.group, r.values
    n = len(G)
    out = set()
    for s in range(n):
        if v[s] == 0:
            continue
        # s = t * (t^-1 s)
        if not any(v[t] > 0 and v[G.mul(G.inv(t), s)] > 0
                   and v[s] == v[t] + v[G.mul(G.inv(t), s)] for t in range(n)):
            out.add(s)
    return frozenset(out)


def bump(r: SubadditiveFn, a: int) -> SubadditiveFn:
    """Add 1 on the double coset HaH, H = M_r."""
    if a not in n1_set(r):
        G = r.group
        splits = [(t, G.mul(G.inv(t), a)) for t in range(len(G))
                  if r[t] > 0 and r[G.mul(G.inv(t), a)] > 0
                  and r[a] == r[t] + r[G.mul(G.inv(t), a)]]
        raise NotInN1(f"element {r.group.label(a)} is not in N1", splits or [(a,)])
    H = m_subgroup(r)
    support = double_coset(r.group, H, a)
    out = SubadditiveFn(r.group, tuple(x + (i in support) for i, x in enumerate(r.values)))
    if m_subgroup(out) != H:
        raise InternalInconsistency("bump changed the zero subgroup")
    return out


def halve(r: SubadditiveFn) -> SubadditiveFn:
    """Ceiling of r/2."""
    out = SubadditiveFn(r.group, tuple((x + 1) // 2 for x in r.values))
    if m_subgroup(out) != m_subgroup(r):
        raise InternalInconsistency("halving changed the zero subgroup")
    return out


def evenize(r: SubadditiveFn) -> SubadditiveFn:
    """Round odd values up to the next even number, i.e. 2 * halve(r)."""
    out = SubadditiveFn(r.group, tuple(x + (x % 2) for x in r.values))
    if m_subgroup(out) != m_subgroup(r):
        raise InternalInconsistency("evenizing changed the zero subgroup")
    return out


def inflate_r(G: FiniteGroup, N: Subgroup, r_q: SubadditiveFn) -> SubadditiveFn:
    """Lift r_q on G/N to G via s -> r_q(sN)."""
    Q, proj = quotient_group(G, N)
    if Q.table != r_q.group.table:
        raise GroupMismatch("r_q does not live on G/N")
    out = SubadditiveFn(G, tuple(r_q[proj[g]] for g in range(len(G))))
    Mq = m_subgroup(r_q)
    expected = tuple(g for g in range(len(G)) if proj[g] in Mq)
    if m_subgroup(out).members != expected:
        raise InternalInconsistency("inflated zero subgroup is not the preimage")
    return out


def enumerate_slg(G: FiniteGroup, maxval: int) -> list[SubadditiveFn]:
    """All r in Sl(G) with values in 0..maxval, lexicographic in values."""
    n = len(G)
    if (maxval + 1) ** (n - 1) > ENUMERATION_CAP:
        raise TooLarge(f"{(maxval + 1)}^{n - 1} candidates exceed {ENUMERATION_CAP}")
    t = G.table
    # constraints checked as soon as all three indices are assigned
    checks: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            k = t[i][j]
            checks[max(i, j, k)].append((i, j, k))
    values = [0] * n
    out = []

    def ok(pos):
        return all(values[k] <= values[i] + values[j] for i, j, k in checks[pos])

    def rec(pos):
        if pos == n:
            out.append(SubadditiveFn(G, tuple(values)))
            return
        for x in range(maxval + 1):
            values[pos] = x
            if ok(pos):
                rec(pos + 1)
        values[pos] = 0

    if ok(0):
        rec(1)
    return out
