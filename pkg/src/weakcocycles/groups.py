"""Finite groups given by Cayley tables.

Elements are referred to by index; the identity is always index 0.  Everything
downstream (subadditive functions, cocycle tables, coset posets) is plain
index arithmetic on these tables.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .errors import NonGroupTable, NotGenerating, NotNormal, UnsupportedSpec

MAX_ORDER = 64


class Violation(NamedTuple):
    axiom: str
    witness: tuple

    def __str__(self):
        return f"{self.axiom}: {self.witness}"


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    name: str
    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    _inv: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "table", tuple(tuple(row) for row in self.table))
        if len(self.table) > MAX_ORDER:
            raise UnsupportedSpec(f"groups are capped at order {MAX_ORDER}")
        report = verify_group_axioms(self.table)
        if len(self.elements) != len(self.table):
            report.append(Violation("labels", (len(self.elements), len(self.table))))
        if report:
            raise NonGroupTable(f"table for {self.name!r} is not a group", report)
        inv = [row.index(0) for row in self.table]
        object.__setattr__(self, "_inv", tuple(inv))

    def __len__(self):
        return len(self.table)

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.table == other.table and self.elements == other.elements

    def __hash__(self):
        return hash((self.elements, self.table))

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return self._inv[i]

    def index(self, label) -> int:
        """Index of an element given by label or (as a fallback) by index."""
        if isinstance(label, int):
            if not 0 <= label < len(self):
                raise IndexError(label)
            return label
        try:
            return self.elements.index(label)
        except ValueError:
            pass
        if str(label).isdigit() and int(label) < len(self):
            return int(label)
        raise KeyError(f"no element {label!r} in {self.name}")

    def label(self, i: int) -> str:
        return self.elements[i]

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != 0:
            x = self.table[x][i]
            k += 1
        return k

    def to_json(self) -> dict:
        return {"name": self.name, "elements": list(self.elements),
                "table": [list(row) for row in self.table]}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGroup":
        return cls(data.get("name", "G"), data["elements"], data["table"])


def verify_group_axioms(table: Sequence[Sequence[int]]) -> list[Violation]:
    """Return every violated group axiom with a witness; empty iff a group.

    The identity must sit at index 0.
    """
    n = len(table)
    report: list[Violation] = []
    for i, row in enumerate(table):
        if len(row) != n:
            report.append(Violation("shape", (i, len(row))))
    if report:
        return report
    for i, j in itertools.product(range(n), repeat=2):
        if not (isinstance(table[i][j], int) and 0 <= table[i][j] < n):
            report.append(Violation("range", (i, j)))
    if report:
        return report
    full = set(range(n))
    for i in range(n):
        if set(table[i]) != full:
            report.append(Violation("row-not-permutation", (i,)))
        if {table[k][i] for k in range(n)} != full:
            report.append(Violation("column-not-permutation", (i,)))
    for j in range(n):
        if table[0][j] != j:
            report.append(Violation("identity", (0, j)))
        if table[j][0] != j:
            report.append(Violation("identity", (j, 0)))
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            report.append(Violation("associativity", (a, b, c)))
    for i in range(n):
        if not any(table[i][j] == 0 and table[j][i] == 0 for j in range(n)):
            report.append(Violation("inverse", (i,)))
    return report


# -- presets ----------------------------------------------------------------

def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise UnsupportedSpec("cyclic order must be positive")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(f"C{n}", [str(i) for i in range(n)], table)


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group of the given order 2n.

    Element ``i + n*j`` is a^i s^j, so the order is 1, a, ..., a^(n-1),
    s, as, ..., a^(n-1)s with s a s^-1 = a^-1.
    """
    if order < 2 or order % 2:
        raise UnsupportedSpec("dihedral order must be even and >= 2")
    n = order // 2

    def power(i):
        return "1" if i == 0 else ("a" if i == 1 else f"a^{i}")

    labels = [power(i) for i in range(n)]
    labels += ["s" if i == 0 else f"{power(i)}s" for i in range(n)]

    def mul(x, y):
        i, j = x % n, x // n
        k, l = y % n, y // n
        return (i + (-k if j else k)) % n + n * ((j + l) % 2)

    table = [[mul(x, y) for y in range(order)] for x in range(order)]
    return FiniteGroup(f"D{order}", labels, table)


def _cycle_label(p: tuple[int, ...]) -> str:
    seen, parts = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = p[x]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) or "()"


def symmetric(n: int) -> FiniteGroup:
    """S_n for n <= 4; permutations in lexicographic order, (pq)(x) = p(q(x))."""
    if not 1 <= n <= 4:
        raise UnsupportedSpec("symmetric groups are supported for n <= 4")
    perms = list(itertools.permutations(range(n)))
    pos = {p: k for k, p in enumerate(perms)}
    table = [[pos[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms]
    return FiniteGroup(f"S{n}", [_cycle_label(p) for p in perms], table)


def from_table(table, labels=None, name: str = "G") -> FiniteGroup:
    labels = labels if labels is not None else [str(i) for i in range(len(table))]
    return FiniteGroup(name, labels, table)


def build_group(kind: str, n: int | None = None, *, table=None, labels=None,
                name: str | None = None) -> FiniteGroup:
    """Build a group from a preset name (``cyclic``, ``dihedral``,
    ``symmetric``) or an explicit table (``kind="table"``)."""
    if kind == "table":
        if table is None:
            raise UnsupportedSpec("explicit table required")
        return from_table(table, labels, name or "G")
    presets = {"cyclic": cyclic, "dihedral": dihedral, "symmetric": symmetric}
    if kind not in presets or n is None:
        raise UnsupportedSpec(f"unknown group spec {kind!r} {n!r}")
    G = presets[kind](int(n))
    if name:
        G = FiniteGroup(name, G.elements, G.table)
    return G


# -- subgroups and cosets ---------------------------------------------------

@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]
    _set: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))
        object.__setattr__(self, "_set", frozenset(self.members))

    def __contains__(self, i):
        return i in self._set

    def __len__(self):
        return len(self.members)

    def __le__(self, other: "Subgroup"):
        return self._set <= other._set

    def labels(self) -> list[str]:
        return [self.parent.label(i) for i in self.members]


def subgroup_closure(G: FiniteGroup, seed: Iterable[int] = ()) -> Subgroup:
    members = {0}
    frontier = [G.index(s) for s in seed]
    while frontier:
        x = frontier.pop()
        if x in members:
            continue
        members.add(x)
        frontier.append(G.inv(x))
        frontier.extend(G.mul(x, m) for m in list(members))
        frontier.extend(G.mul(m, x) for m in list(members))
    return Subgroup(G, tuple(sorted(members)))


def as_subgroup(G: FiniteGroup, members: Iterable[int]) -> Subgroup:
    """Wrap an element set, checking closure; raises NotASubgroup."""
    from .errors import NotASubgroup

    ms = sorted(set(members))
    s = set(ms)
    if 0 not in s:
        raise NotASubgroup("missing identity", [(0,)])
    bad = [(a, b) for a in ms for b in ms if G.mul(a, b) not in s]
    bad += [(a,) for a in ms if G.inv(a) not in s]
    if bad:
        raise NotASubgroup("set is not closed", bad)
    return Subgroup(G, tuple(ms))


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    return all(G.mul(G.mul(g, h), G.inv(g)) in H
               for g in range(len(G)) for h in H.members)


@dataclass(frozen=True)
class CosetSpace:
    parent: FiniteGroup
    subgroup: Subgroup
    reps: tuple[int, ...]
    coset_of: tuple[int, ...]

    def __len__(self):
        return len(self.reps)

    def members(self, k: int) -> list[int]:
        return [g for g, c in enumerate(self.coset_of) if c == k]

    def label(self, k: int, suffix: str = "H") -> str:
        rep = self.reps[k]
        return suffix if rep == 0 else f"{self.parent.label(rep)}{suffix}"


def left_cosets(G: FiniteGroup, H: Subgroup) -> CosetSpace:
    """Left cosets gH, each represented by its smallest element index."""
    coset_of = [-1] * len(G)
    reps = []
    for g in range(len(G)):
        if coset_of[g] >= 0:
            continue
        k = len(reps)
        reps.append(g)
        for h in H.members:
            coset_of[G.mul(g, h)] = k
    return CosetSpace(G, H, tuple(reps), tuple(coset_of))


def double_coset(G: FiniteGroup, H: Subgroup, a: int) -> frozenset[int]:
    return frozenset(G.mul(G.mul(h1, a), h2) for h1 in H.members for h2 in H.members)


def quotient_group(G: FiniteGroup, N: Subgroup, suffix: str = "N"):
    """G/N as a FiniteGroup on minimal coset representatives.

    Returns ``(Q, projection)`` with ``projection[g]`` the index of gN in Q.
    """
    if not is_normal(G, N):
        raise NotNormal(f"{N.labels()} is not normal in {G.name}",
                        [(g, h) for g in range(len(G)) for h in N.members
                         if G.mul(G.mul(g, h), G.inv(g)) not in N][:5])
    cs = left_cosets(G, N)
    proj = cs.coset_of
    table = [[proj[G.mul(a, b)] for b in cs.reps] for a in cs.reps]
    labels = [cs.label(k, suffix) for k in range(len(cs))]
    return FiniteGroup(f"{G.name}/{suffix}", labels, table), tuple(proj)


def subgroup_as_group(M: Subgroup):
    """The subgroup as a FiniteGroup; returns ``(group, embedding)``."""
    G = M.parent
    pos = {g: k for k, g in enumerate(M.members)}
    table = [[pos[G.mul(a, b)] for b in M.members] for a in M.members]
    return FiniteGroup(f"{G.name}|M", M.labels(), table), M.members


# -- word length ------------------------------------------------------------

@dataclass(frozen=True)
class FactorizationTree:
    parent: FiniteGroup
    generators: tuple[int, ...]
    dist: tuple[int, ...]
    parent_edge: dict  # w -> (s, w') with w = s * w'

    def word(self, w: int) -> list[int]:
        """Generators s1, ..., sk with w = s1 * ... * sk, k = dist[w]."""
        out = []
        while w != 0:
            s, w = self.parent_edge[w]
            out.append(s)
        return out


def canonical_factorization(G: FiniteGroup, generators: Iterable[int]) -> FactorizationTree:
    """Breadth-first search from the identity by left multiplication."""
    gens = tuple(sorted({G.index(s) for s in generators}))
    dist = [-1] * len(G)
    dist[0] = 0
    edges = {}
    queue = deque([0])
    while queue:
        # frontier is processed level by level in index order
        level = sorted(queue)
        queue.clear()
        for p in level:
            for s in gens:
                w = G.mul(s, p)
                if dist[w] < 0:
                    dist[w] = dist[p] + 1
                    edges[w] = (s, p)
                    queue.append(w)
    missing = [g for g in range(len(G)) if dist[g] < 0]
    if missing:
        raise NotGenerating(f"generators {list(gens)} do not reach every element",
                            [(g,) for g in missing])
    return FactorizationTree(G, gens, tuple(dist), edges)
