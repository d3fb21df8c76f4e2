"""Formal unit words and their normal form.

A unit word is a formal product of symbols ``g(u(x))`` and ``g(w(x))`` in a
commutative group.  The ``u`` symbols obey u(st) = u(s) * s(u(t)) (apply s to
t(pi) = u(t) pi) and u(1) = 1; the ``w`` symbols are free apart from w(1) = 1.
Two words are equal iff their difference lies in the integer lattice spanned
by the relation vectors.  ``UnitLattice`` computes a reduced Hermite normal
form of that lattice once per group and turns it into a linear normal-form map.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .groups import FiniteGroup, subgroup_closure


class UnitSymbol(NamedTuple):
    twist: int
    tag: str  # "U" or "W"
    base: int


@dataclass(frozen=True)
class UnitWord:
    """Sparse formal product; ``items`` is sorted and has no zero exponents."""

    items: tuple[tuple[UnitSymbol, int], ...] = ()

    @classmethod
    def from_dict(cls, d: Mapping[UnitSymbol, int]) -> "UnitWord":
        """Keys must be ``UnitSymbol``; zero exponents are dropped."""
        return cls(tuple(sorted(item for item in d.items() if item[1])))

    @classmethod
    def symbol(cls, tag: str, base: int, twist: int = 0, power: int = 1) -> "UnitWord":
        if not power:
            return EMPTY
        return cls(((UnitSymbol(twist, tag, base), power),))

    def as_dict(self) -> dict[UnitSymbol, int]:
        return dict(self.items)

    def __bool__(self):
        return bool(self.items)

    def __mul__(self, other: "UnitWord") -> "UnitWord":
        if not other.items:
            return self
        if not self.items:
            return other
        d = self.as_dict()
        for s, e in other.items:
            d[s] = d.get(s, 0) + e
        return UnitWord.from_dict(d)

    def __pow__(self, k: int) -> "UnitWord":
        if not self.items or k == 1:
            return self
        return UnitWord.from_dict({s: e * k for s, e in self.items})

    def inverse(self) -> "UnitWord":
        return self ** -1

    def twisted(self, G: FiniteGroup, g: int) -> "UnitWord":
        """Apply the Galois element g: h(x) -> (gh)(x)."""
        d: dict[UnitSymbol, int] = {}
        for s, e in self.items:
            t = UnitSymbol(G.mul(g, s.twist), s.tag, s.base)
            d[t] = d.get(t, 0) + e
        return UnitWord.from_dict(d)

    def format(self, G: FiniteGroup | None = None) -> str:
        if not self.items:
            return "1"
        lab = (lambda i: G.label(i)) if G is not None else str
        parts = []
        for s, e in self.items:
            core = f"{s.tag.lower()}({lab(s.base)})"
            if s.twist != 0:
                core = f"{lab(s.twist)}[{core}]"
            parts.append(core if e == 1 else f"{core}^{e}")
        return "*".join(parts)

    def __str__(self):
        return self.format()

    def to_json(self) -> list[dict]:
        return [{"twist": s.twist, "tag": s.tag, "base": s.base, "pow": e}
                for s, e in self.items]

    @classmethod
    def from_json(cls, data: Iterable[dict]) -> "UnitWord":
        d: dict[UnitSymbol, int] = {}
        for item in data:
            if item["tag"] not in ("U", "W"):
                raise ValueError(f"bad unit tag {item['tag']!r}")
            s = UnitSymbol(int(item["twist"]), item["tag"], int(item["base"]))
            d[s] = d.get(s, 0) + int(item.get("pow", 1))
        return cls.from_dict(d)


EMPTY = UnitWord()


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _axpy(row: dict, k: int, other: dict) -> None:
    """row += k * other, dropping zeros."""
    for c, v in other.items():
        x = row.get(c, 0) + k * v
        if x:
            row[c] = x
        else:
            row.pop(c, None)


class IntegerLattice:
    """Row-style Hermite normal form built by inserting sparse integer vectors."""

    def __init__(self):
        self.rows: dict[int, dict[int, int]] = {}

    def add(self, vec: Mapping[int, int]) -> None:
        v = {c: x for c, x in vec.items() if x}
        while v:
            p = min(v)
            row = self.rows.get(p)
            if row is None:
                if v[p] < 0:
                    v = {c: -x for c, x in v.items()}
                self.rows[p] = v
                return
            a, b = row[p], v[p]
            if b % a == 0:
                _axpy(v, -(b // a), row)
                continue
            g, x, y = _xgcd(a, b)
            new = {}
            _axpy(new, x, row)
            _axpy(new, y, v)
            rest = {}
            _axpy(rest, a // g, v)
            _axpy(rest, -(b // g), row)
            self.rows[p] = new
            v = rest

    def reduce_rows(self) -> None:
        """Bring every row into reduced form w.r.t. the later pivots."""
        pivots = sorted(self.rows)
        for p in pivots:
            row = self.rows[p]
            for q in pivots:
                if q <= p or q not in row:
                    continue
                k = row[q] // self.rows[q][q]
                if k:
                    _axpy(row, -k, self.rows[q])

    def reduce(self, vec: Mapping[int, int]) -> dict[int, int]:
        v = {c: x for c, x in vec.items() if x}
        for p in sorted(self.rows):
            if p in v:
                k = v[p] // self.rows[p][p]
                if k:
                    _axpy(v, -k, self.rows[p])
        return v

    def __contains__(self, vec) -> bool:
        return not self.reduce(vec)


def greedy_generators(G: FiniteGroup) -> list[int]:
    gens: list[int] = []
    span = subgroup_closure(G, gens)
    for g in range(1, len(G)):
        if g not in span:
            gens.append(g)
            span = subgroup_closure(G, gens)
    return gens


class UnitLattice:
    """Normal forms of unit words over one group.

    Coordinates of the free part: ``n - 1`` slots for the twist-1 symbols
    u(x), x != 1, followed by ``n * n`` slots for the w symbols g(w(x)).
    """

    def __init__(self, G: FiniteGroup, unramified: bool = False):
        self.group = G
        self.unramified = unramified
        n = len(G)
        self.n = n
        # identity twist last so the free columns of the HNF are u(x) at twist 1
        self._col = {}
        order = [(g, x) for g in range(1, n) for x in range(n)] + [(0, x) for x in range(n)]
        for k, key in enumerate(order):
            self._col[key] = k
        lat = IntegerLattice()
        for g in range(n):
            lat.add({self._col[g, 0]: 1})
        # relations with s in a generating set span all of them:
        # R(g, s1 s2, t) = R(g, s1, s2 t) + R(g s1, s2, t) - R(g, s1, s2)
        for s in greedy_generators(G):
            for g in range(n):
                for t in range(n):
                    vec: dict[int, int] = {}
                    for key, c in (((g, G.mul(s, t)), 1), ((g, s), -1), ((G.mul(g, s), t), -1)):
                        col = self._col[key]
                        vec[col] = vec.get(col, 0) + c
                    lat.add(vec)
        lat.reduce_rows()
        self.lattice = lat
        bad = [p for p, row in lat.rows.items() if row[p] != 1]
        free = [self._col[0, x] for x in range(1, n)]
        pivots = set(lat.rows)
        if bad or pivots & set(free) or len(pivots) != n * n - (n - 1):
            raise ArithmeticError("unexpected structure of the unit relation lattice")
        self._free_slot = {c: k for k, c in enumerate(free)}
        self.dim = (n - 1) + n * n
        # normal form of each u symbol as a dense vector over the free slots
        self._u_nf = np.zeros((n, n, self.dim), dtype=np.int64)
        if not unramified:
            for (g, x), c in self._col.items():
                vec = lat.reduce({c: 1})
                for cc, v in vec.items():
                    self._u_nf[g, x, self._free_slot[cc]] = v
        self._twist = None

    def w_slot(self, g: int, x: int) -> int:
        return (self.n - 1) + g * self.n + x

    def vector(self, word: UnitWord) -> np.ndarray:
        out = np.zeros(self.dim, dtype=np.int64)
        for s, e in word.items:
            if s.tag == "U":
                out += e * self._u_nf[s.twist, s.base]
            elif s.base != 0:
                out[self.w_slot(s.twist, s.base)] += e
        return out

    def word(self, vec: np.ndarray) -> UnitWord:
        d = {}
        n = self.n
        for k in np.flatnonzero(vec):
            k = int(k)
            if k < n - 1:
                d[UnitSymbol(0, "U", k + 1)] = int(vec[k])
            else:
                g, x = divmod(k - (n - 1), n)
                d[UnitSymbol(g, "W", x)] = int(vec[k])
        return UnitWord.from_dict(d)

    def normalize(self, word: UnitWord) -> UnitWord:
        return self.word(self.vector(word))

    def equal(self, w1: UnitWord, w2: UnitWord) -> bool:
        return not self.vector(w1 * w2.inverse()).any()

    @property
    def twist_matrices(self) -> np.ndarray:
        """``T[s] @ vector(w) == vector(w.twisted(s))`` for every s."""
        if self._twist is None:
            n = self.n
            T = np.zeros((n, self.dim, self.dim), dtype=np.int64)
            for s in range(n):
                for x in range(1, n):
                    T[s, :, x - 1] = self._u_nf[s, x]
                for g in range(n):
                    for x in range(1, n):
                        T[s, self.w_slot(self.group.mul(s, g), x), self.w_slot(g, x)] = 1
            self._twist = T
            self._twist_f = T.astype(np.float64)
        return self._twist

    def twist_all(self, flat: np.ndarray) -> np.ndarray:
        """``out[s, k] = T[s] @ flat[k]``; float BLAS is exact at these sizes."""
        self.twist_matrices
        out = np.matmul(flat.astype(np.float64), self._twist_f.transpose(0, 2, 1))
        return np.rint(out).astype(np.int64)


@functools.lru_cache(maxsize=32)
def unit_lattice(G: FiniteGroup, unramified: bool = False) -> UnitLattice:
    return UnitLattice(G, unramified)


def unit_word_normalize(word: UnitWord, G: FiniteGroup, unramified: bool = False) -> UnitWord:
    """Canonical representative of ``word`` modulo the unit relations."""
    return unit_lattice(G, unramified).normalize(word)
