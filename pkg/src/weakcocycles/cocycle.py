"""Weak 2-cocycles: idempotent {0,1} tables and symbolic valued tables.

Valued entries are monomials ``unit * pi^exp`` (or ``ZERO``) where ``unit`` is
a formal :class:`~weakcocycles.units.UnitWord`.  The cocycle identity

    f(s,t) f(st,u) = s(f(t,u)) f(s,tu),   f(1,s) = f(s,1) = 1

is checked either on exponents only (``level="valuation"``) or including
unit words modulo the unit relations (``level="strict"``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import (AxiomFailure, GroupMismatch, InternalInconsistency, NotASubgroup,
                     NotDecomposable, NotInInertialGroup, NotIntegral,
                     NotIntegralOutput, NotNormal, SubadditivityFailure,
                     VerificationError, WellDefinednessFailure, NotSubadditive,
                     NegativeValue, NonzeroAtIdentity)
from .groups import (FiniteGroup, Subgroup, Violation, as_subgroup, is_normal,
                     quotient_group, subgroup_as_group)
from .slg import SubadditiveFn, defect_table, m_subgroup, r_from_defect
from .units import EMPTY, UnitSymbol, UnitWord, unit_lattice

STRICT = "strict"
VALUATION = "valuation"


# -- monomials ----------------------------------------------------------------

class _Zero:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __mul__(self, other):
        return self

    __rmul__ = __mul__

    def __repr__(self):
        return "ZERO"

    def twisted(self, G, g):
        return self


ZERO = _Zero()


@dataclass(frozen=True)
class Monomial:
    unit: UnitWord = EMPTY
    exp: int = 0

    def __mul__(self, other):
        if other is ZERO:
            return ZERO
        return Monomial(self.unit * other.unit, self.exp + other.exp)

    def inverse(self) -> "Monomial":
        return Monomial(self.unit.inverse(), -self.exp)

    def twisted(self, G: FiniteGroup, g: int) -> "Monomial":
        """g(unit * pi^k) = g(unit) * u(g)^k * pi^k."""
        unit = self.unit.twisted(G, g)
        if self.exp and g != 0:
            unit = unit * UnitWord.symbol("U", g, power=self.exp)
        return Monomial(unit, self.exp)

    def to_json(self):
        return {"exp": self.exp, "unit": self.unit.to_json()}

    def format(self, G=None) -> str:
        pi = format_pi(self.exp)
        if not self.unit:
            return pi
        return self.unit.format(G) if pi == "1" else f"{self.unit.format(G)}*{pi}"


ONE = Monomial()
Value = Union[Monomial, _Zero]


def monomial_from_json(data) -> Value:
    if data == "zero" or data is None:
        return ZERO
    return Monomial(UnitWord.from_json(data.get("unit", [])), int(data["exp"]))


def format_pi(k: int) -> str:
    if k == 0:
        return "1"
    if k == 1:
        return "π"
    return f"π^{k}" if 0 <= k < 10 else f"π^{{{k}}}"


# -- cocycle containers ---------------------------------------------------------

@dataclass(frozen=True)
class IdempotentCocycle:
    group: FiniteGroup
    values: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        vals = tuple(tuple(int(x) for x in row) for row in self.values)
        object.__setattr__(self, "values", vals)
        n = len(self.group)
        if len(vals) != n or any(len(row) != n for row in vals):
            raise GroupMismatch("table shape does not match the group")
        if any(x not in (0, 1) for row in vals for x in row):
            raise ValueError("idempotent cocycle values must be 0 or 1")

    def __getitem__(self, ij):
        return self.values[ij[0]][ij[1]]

    def to_json(self) -> dict:
        return {"group": self.group.to_json(), "kind": "idempotent",
                "entries": [list(row) for row in self.values]}


@dataclass(frozen=True)
class CoboundarySeed:
    """a : G -> S* with a(1) = 1."""

    group: FiniteGroup
    values: tuple[Monomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != len(self.group):
            raise GroupMismatch("seed length does not match the group")
        a1 = self.values[0]
        if a1.exp != 0 or a1.unit:
            raise ValueError("seed must satisfy a(1) = 1")

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(m.exp for m in self.values)

    def __mul__(self, other: "CoboundarySeed") -> "CoboundarySeed":
        return CoboundarySeed(self.group, tuple(a * b for a, b in zip(self.values, other.values)))

    def to_json(self):
        return [m.to_json() for m in self.values]


@dataclass(frozen=True)
class ValuedCocycle:
    group: FiniteGroup
    entries: tuple[tuple[Value, ...], ...]
    seed: CoboundarySeed | None = None

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(tuple(row) for row in self.entries))
        n = len(self.group)
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise GroupMismatch("table shape does not match the group")

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    @property
    def integral(self) -> bool:
        return all(m is ZERO or m.exp >= 0 for row in self.entries for m in row)

    @property
    def has_zero(self) -> bool:
        return any(m is ZERO for row in self.entries for m in row)

    def exponents(self) -> list[list[int | None]]:
        return [[None if m is ZERO else m.exp for m in row] for row in self.entries]

    def __mul__(self, other: "ValuedCocycle") -> "ValuedCocycle":
        if self.group != other.group:
            raise GroupMismatch("cocycles live on different groups")
        seed = self.seed * other.seed if self.seed and other.seed else None
        return ValuedCocycle(self.group, tuple(
            tuple(a * b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)),
            seed)

    def to_json(self) -> dict:
        out = {"group": self.group.to_json(), "kind": "valued",
               "entries": [["zero" if m is ZERO else m.to_json() for m in row]
                           for row in self.entries]}
        if self.seed is not None:
            out["seed"] = self.seed.to_json()
        return out


Cocycle = Union[IdempotentCocycle, ValuedCocycle]


def trivial_cocycle(G: FiniteGroup) -> ValuedCocycle:
    n = len(G)
    return ValuedCocycle(G, tuple((ONE,) * n for _ in range(n)),
                         CoboundarySeed(G, (ONE,) * n))


def trivial_idempotent(G: FiniteGroup) -> IdempotentCocycle:
    n = len(G)
    return IdempotentCocycle(G, tuple((1,) * n for _ in range(n)))


# -- verification ---------------------------------------------------------------

def _verify_idempotent(e: IdempotentCocycle) -> list[Violation]:
    G = e.group
    n = len(G)
    t = np.array(G.table)
    v = np.array(e.values)
    report = [Violation("normalization", (0, j)) for j in range(n) if v[0, j] != 1]
    report += [Violation("normalization", (i, 0)) for i in range(1, n) if v[i, 0] != 1]
    a, b, c = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    lhs = v[a, b] * v[t[a, b], c]
    rhs = v[b, c] * v[a, t[b, c]]
    for x, y, z in np.argwhere(lhs != rhs):
        report.append(Violation("cocycle", (int(x), int(y), int(z))))
    return report


def _valued_arrays(f: ValuedCocycle, level: str, unramified: bool):
    G = f.group
    n = len(G)
    zero = np.zeros((n, n), dtype=bool)
    exp = np.zeros((n, n), dtype=np.int64)
    lat = unit_lattice(G, unramified) if level == STRICT else None
    vec = np.zeros((n, n, lat.dim if lat else 0), dtype=np.int64)
    for i, j in itertools.product(range(n), repeat=2):
        m = f.entries[i][j]
        if m is ZERO:
            zero[i, j] = True
        else:
            exp[i, j] = m.exp
            if lat is not None:
                vec[i, j] = lat.vector(m.unit)
    return zero, exp, vec, lat


def _verify_valued(f: ValuedCocycle, level: str, unramified: bool) -> list[Violation]:
    G = f.group
    n = len(G)
    zero, exp, vec, lat = _valued_arrays(f, level, unramified)

    def off(pos):
        return zero[pos] or exp[pos] != 0 or (lat is not None and vec[pos].any())

    report = [Violation("normalization", (0, j)) for j in range(n) if off((0, j))]
    report += [Violation("normalization", (i, 0)) for i in range(1, n) if off((i, 0))]
    t = np.array(G.table)
    a, b, c = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    ab, bc = t[a, b], t[b, c]
    lz = zero[a, b] | zero[ab, c]
    rz = zero[b, c] | zero[a, bc]
    bad = lz != rz
    both = ~lz & ~rz
    lexp = exp[a, b] + exp[ab, c]
    rexp = exp[b, c] + exp[a, bc]
    bad |= both & (lexp != rexp)
    if lat is not None:
        # s(m * pi^k) = s(m) * u(s)^k * pi^k
        u_of = lat._u_nf[0]  # u(s) at twist 1
        lvec = vec[a, b] + vec[ab, c]
        flat = vec.reshape(n * n, -1)
        tw = lat.twist_all(flat)[a, b * n + c]
        rvec = tw + exp[b, c][..., None] * u_of[a] + vec[a, bc]
        bad |= both & (lvec != rvec).any(axis=-1)
    for x, y, z in np.argwhere(bad):
        report.append(Violation("cocycle", (int(x), int(y), int(z))))
    return report


def verify_cocycle(f: Cocycle, level: str = VALUATION, unramified: bool = False) -> list[Violation]:
    """Empty list iff f is a normalized weak 2-cocycle at the requested level.

    Idempotent tables ignore ``level``.  At the strict level unit words are
    compared modulo the unit relations.
    """
    if level not in (STRICT, VALUATION):
        raise ValueError(f"unknown level {level!r}")
    if isinstance(f, IdempotentCocycle):
        return _verify_idempotent(f)
    return _verify_valued(f, level, unramified)


def inertial_group(f: Cocycle) -> Subgroup:
    """{s : f(s, s^-1) is 1 / a unit / nonzero}.

    Idempotent tables use value 1; integral valued tables use exponent 0;
    non-integral valued tables (values in L) use nonzero.
    """
    G = f.group
    n = len(G)
    if isinstance(f, IdempotentCocycle):
        members = [s for s in range(n) if f[s, G.inv(s)] == 1]
    elif f.integral:
        members = [s for s in range(n) if f[s, G.inv(s)] is not ZERO and f[s, G.inv(s)].exp == 0]
    else:
        members = [s for s in range(n) if f[s, G.inv(s)] is not ZERO]
    return as_subgroup(G, members)


# -- constructions from Sl(G) -----------------------------------------------------

def idempotent_from_r(r: SubadditiveFn) -> IdempotentCocycle:
    """e_r(s,t) = 1 iff r(st) = r(s) + r(t)."""
    d = defect_table(r).d
    return IdempotentCocycle(r.group, tuple(tuple(int(x == 0) for x in row) for row in d))


def epsilon_table(r: SubadditiveFn) -> list[list[int]]:
    """Exponent table of pi^{r(s)+r(t)-r(st)}."""
    return [list(row) for row in defect_table(r).d]


def seed_from_r(r: SubadditiveFn) -> CoboundarySeed:
    return CoboundarySeed(r.group, tuple(Monomial(EMPTY, x) for x in r.values))


def br_from_r(r: SubadditiveFn) -> ValuedCocycle:
    """b_r(s,t) = u(s)^{r(t)} pi^{r(s)+r(t)-r(st)}."""
    G = r.group
    n = len(G)
    d = defect_table(r).d
    entries = tuple(
        tuple(Monomial(UnitWord.symbol("U", s, power=r[t]) if s else EMPTY, d[s][t])
              for t in range(n))
        for s in range(n))
    return ValuedCocycle(G, entries, seed_from_r(r))


def coboundary_from_seed(a: CoboundarySeed) -> ValuedCocycle:
    """b(s,t) = a(s) s(a(t)) a(st)^-1, required to be integral."""
    G = a.group
    n = len(G)
    v = a.exponents
    neg = [(s, t) for s in range(n) for t in range(n) if v[s] + v[t] < v[G.mul(s, t)]]
    if neg:
        raise NotIntegralOutput("seed exponents are not subadditive", neg)
    inv = [m.inverse() for m in a.values]
    entries = tuple(
        tuple(a.values[s] * a.values[t].twisted(G, s) * inv[G.mul(s, t)] for t in range(n))
        for s in range(n))
    return ValuedCocycle(G, entries, a)


def reduce_mod_pi(b: ValuedCocycle) -> list[list[Union[UnitWord, _Zero]]]:
    if not b.integral:
        raise NotIntegral("reduction mod pi needs an integral cocycle")
    return [[ZERO if (m is ZERO or m.exp > 0) else m.unit for m in row] for row in b.entries]


def _require_integral(f: ValuedCocycle, what: str):
    if f.has_zero or not f.integral:
        raise NotIntegral(f"{what} needs a cocycle with values in S*")


def _strict_equal(f: ValuedCocycle, g: ValuedCocycle, unramified=False) -> list[tuple[int, int]]:
    zf, ef, vf, _ = _valued_arrays(f, STRICT, unramified)
    zg, eg, vg, _ = _valued_arrays(g, STRICT, unramified)
    bad = (zf != zg) | (~zf & ~zg & ((ef != eg) | (vf != vg).any(axis=-1)))
    return [(int(i), int(j)) for i, j in np.argwhere(bad)]


def strict_equal(f: ValuedCocycle, g: ValuedCocycle, unramified: bool = False) -> bool:
    if f.group != g.group:
        return False
    return not _strict_equal(f, g, unramified)


def decompose(b: ValuedCocycle, seed: CoboundarySeed | None = None,
              unramified: bool = False):
    """Split a seed-built b as c * b_r with c unit-valued.

    Returns ``(c, r)``.  Uniqueness is re-checked by recovering r from the
    exponent table alone.
    """
    G = b.group
    seed = seed or b.seed
    if seed is None:
        raise NotDecomposable("decompose needs the coboundary seed of b")
    _require_integral(b, "decompose")
    if verify_cocycle(b, VALUATION):
        raise NotDecomposable("input is not a cocycle")
    try:
        r = SubadditiveFn(G, seed.exponents)
    except (NotSubadditive, NegativeValue, NonzeroAtIdentity) as exc:
        raise NotDecomposable("seed exponents are not in Sl(G)", exc.witnesses) from exc
    recovered = r_from_defect(G, b.exponents())
    if recovered != r:
        raise NotDecomposable("exponent table does not match the seed",
                              [tuple(recovered.values), tuple(r.values)])
    c = coboundary_from_seed(CoboundarySeed(G, tuple(Monomial(m.unit, 0) for m in seed.values)))
    bad = _product_mismatches(b, seed, r, unramified)
    if bad:
        raise NotDecomposable("b != c * b_r", bad)
    return c, r


def _product_mismatches(b: ValuedCocycle, seed: CoboundarySeed, r: SubadditiveFn,
                        unramified: bool) -> list[tuple[int, int]]:
    """Cells where b differs from c * b_r, computed in normal-form coordinates.

    c(s,t) = w(s) s(w(t)) w(st)^-1 and b_r(s,t) = u(s)^{r(t)} pi^{d(s,t)}.
    """
    G = b.group
    n = len(G)
    zero, exp, vec, lat = _valued_arrays(b, STRICT, unramified)
    w = np.stack([lat.vector(m.unit) for m in seed.values])
    t = np.array(G.table)
    a_, b_ = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    rv = np.array(r.values)
    want = (w[a_] + lat.twist_all(w)[a_, b_] - w[t[a_, b_]]
            + rv[b_][..., None] * lat._u_nf[0][a_])
    d = np.array(defect_table(r).d)
    bad = zero | (exp != d) | (vec != want).any(axis=-1)
    return [(int(i), int(j)) for i, j in np.argwhere(bad)]


def hereditary_criterion(f: ValuedCocycle) -> bool:
    """True iff v(f(s, s^-1)) <= 1 for every s.

    Only the anti-diagonal is read, so partner cocycles with negative
    exponents elsewhere are accepted.
    """
    G = f.group
    anti = [f[s, G.inv(s)] for s in range(len(G))]
    bad = [(s,) for s, m in enumerate(anti) if m is ZERO or m.exp < 0]
    if bad:
        raise NotIntegral("hereditary criterion needs f(s, s^-1) in S*", bad)
    return all(m.exp <= 1 for m in anti)


def rf_from_f(f: ValuedCocycle) -> SubadditiveFn:
    """r_f(s) = v(f(s, s^-1))."""
    _require_integral(f, "r_f")
    G = f.group
    n = len(G)
    vals = [f[s, G.inv(s)].exp for s in range(n)]
    asym = [(s,) for s in range(n) if vals[s] != f[G.inv(s), s].exp]
    if asym:
        raise SubadditivityFailure("v(f(s,s^-1)) != v(f(s^-1,s))", asym)
    try:
        r = SubadditiveFn(G, vals)
    except (NotSubadditive, NegativeValue, NonzeroAtIdentity) as exc:
        raise SubadditivityFailure("r_f is not in Sl(G)", exc.witnesses) from exc
    if m_subgroup(r) != inertial_group(f):
        raise InternalInconsistency("M_{r_f} differs from H(f)")
    return r


def partner_h(f: ValuedCocycle, r: SubadditiveFn, unramified: bool = False) -> ValuedCocycle:
    """h = f^-1 * b_r, so that f * h = b_r."""
    if f.group != r.group:
        raise GroupMismatch("f and r live on different groups")
    _require_integral(f, "partner cocycle")
    G = f.group
    n = len(G)
    br = br_from_r(r)
    h = ValuedCocycle(G, tuple(
        tuple(f.entries[s][t].inverse() * br.entries[s][t] for t in range(n))
        for s in range(n)))
    bad = _strict_equal(f * h, br, unramified)
    if bad:
        raise InternalInconsistency("f * h != b_r", bad)
    rf = rf_from_f(f)
    if r == rf:
        neg = [(s, t) for s in range(n) for t in range(n) if h[s, t].exp < 0]
        if neg:
            raise InternalInconsistency("partner for r_f is not integral", neg)
    if r.values == tuple((x + 1) // 2 for x in rf.values):
        off = [(s,) for s in range(n) if h[s, G.inv(s)].exp not in (0, 1)]
        if off:
            raise InternalInconsistency("anti-diagonal exponents outside {0,1}", off)
    return h


# -- restriction and inflation ------------------------------------------------------

def restrict(f: Cocycle, M) -> Cocycle:
    """Restriction to a subgroup, re-indexed by the subgroup's own order."""
    G = f.group
    if not isinstance(M, Subgroup):
        M = as_subgroup(G, M)
    elif M.parent != G:
        raise GroupMismatch("subgroup of a different group")
    sub, emb = subgroup_as_group(M)
    pos = {g: k for k, g in enumerate(emb)}
    if isinstance(f, IdempotentCocycle):
        return IdempotentCocycle(sub, tuple(tuple(f[a, b] for b in emb) for a in emb))

    def remap(m):
        if m is ZERO:
            return ZERO
        d = {}
        for s, e in m.unit.items:
            if s.twist not in pos or s.base not in pos:
                raise GroupMismatch("unit symbol outside the subgroup", [(s,)])
            d[UnitSymbol(pos[s.twist], s.tag, pos[s.base])] = e
        return Monomial(UnitWord.from_dict(d), m.exp)

    return ValuedCocycle(sub, tuple(tuple(remap(f[a, b]) for b in emb) for a in emb))


def is_all_ones(e: IdempotentCocycle) -> bool:
    return all(x == 1 for row in e.values for x in row)


def inflate_idempotent(eps: IdempotentCocycle, G: FiniteGroup, N: Subgroup) -> IdempotentCocycle:
    """e(s,t) = eps(sN, tN)."""
    Q, proj = quotient_group(G, N)
    if Q.table != eps.group.table:
        raise GroupMismatch("eps does not live on G/N")
    n = len(G)
    e = IdempotentCocycle(G, tuple(tuple(eps[proj[s], proj[t]] for t in range(n))
                                   for s in range(n)))
    report = verify_cocycle(e)
    if report:
        raise VerificationError("inflated table is not a cocycle", report)
    Hq = inertial_group(eps)
    expected = tuple(g for g in range(n) if proj[g] in Hq)
    if inertial_group(e).members != expected:
        raise InternalInconsistency("inertial group of the inflation is not the preimage")
    return e


def deflate_idempotent(e: IdempotentCocycle, N: Subgroup) -> IdempotentCocycle:
    """The unique eps on G/N inflating to e; requires N <= H(e)."""
    G = e.group
    if not is_normal(G, N):
        raise NotNormal(f"{N.labels()} is not normal")
    H = inertial_group(e)
    outside = [(g,) for g in N.members if g not in H]
    if outside:
        raise NotInInertialGroup("N is not contained in the inertial group", outside)
    Q, proj = quotient_group(G, N, suffix="N")
    n, m = len(G), len(Q)
    table = [[None] * m for _ in range(m)]
    bad = []
    for s in range(n):
        for t in range(n):
            cell = table[proj[s]][proj[t]]
            if cell is None:
                table[proj[s]][proj[t]] = e[s, t]
            elif cell != e[s, t]:
                bad.append((s, t))
    if bad:
        raise WellDefinednessFailure("value depends on coset representatives", bad)
    eps = IdempotentCocycle(Q, tuple(tuple(row) for row in table))
    if inflate_idempotent(eps, G, N) != e:
        raise InternalInconsistency("deflation does not round-trip")
    return eps
