"""Exhaustive property suite over one group.

Every check runs over all r in Sl(G) with values <= ``maxval``.  Randomised
pieces (unit parts of coboundary seeds, partner functions for the product law)
draw from ``random.Random(seed)`` so runs are reproducible.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass, field

from . import cocycle as cc
from .cocycle import (CoboundarySeed, Monomial, coboundary_from_seed,
                      decompose, deflate_idempotent, hereditary_criterion,
                      inertial_group, inflate_idempotent,
                      partner_h, rf_from_f, verify_cocycle)
from .errors import CocycleError, NotInInertialGroup
from .groups import (FiniteGroup, Subgroup, canonical_factorization, double_coset,
                     is_normal, quotient_group, subgroup_closure)
from .order import hasse, poset_from_idempotent, poset_from_r, verify_poset
from .slg import (add_r, bump, defect_table, enumerate_slg, evenize, halve,
                  inflate_r, m_subgroup, n1_set)
from .units import UnitWord


@dataclass
class CheckResult:
    name: str
    passed: bool = True
    checked: int = 0
    witnesses: list = field(default_factory=list)

    def fail(self, witness):
        self.passed = False
        if len(self.witnesses) < 5:
            self.witnesses.append(witness)

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        tail = "" if self.passed else f"  witnesses={self.witnesses}"
        return f"{status}  {self.name}  ({self.checked} cases){tail}"


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Subgroups generated by at most two elements (all of them for |G| <= 16)."""
    seen = {}
    for a, b in itertools.combinations_with_replacement(range(len(G)), 2):
        H = subgroup_closure(G, [a, b])
        seen[H.members] = H
    return [seen[k] for k in sorted(seen, key=lambda m: (len(m), m))]


def normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    return [H for H in all_subgroups(G) if is_normal(G, H)]


def _run(result: CheckResult, cases, test):
    for case in cases:
        result.checked += 1
        try:
            ok = test(case)
        except CocycleError as exc:
            result.fail((case if not hasattr(case, "values") else case.values, repr(exc)))
            continue
        if ok is not True:
            result.fail(case.values if hasattr(case, "values") else case)
    return result


def run_property_suite(G: FiniteGroup, maxval: int = 3, seed: int = 0,
                       unramified: bool = False) -> list[CheckResult]:
    rng = random.Random(seed)
    rs = enumerate_slg(G, maxval)
    # each r feeds many checks; inputs are immutable so sharing is safe
    br_from_r = functools.lru_cache(maxsize=None)(cc.br_from_r)
    idempotent_from_r = functools.lru_cache(maxsize=None)(cc.idempotent_from_r)
    n = len(G)
    results = []

    def cocycles_ok(r):
        e, b = idempotent_from_r(r), br_from_r(r)
        return (not verify_cocycle(e) and not verify_cocycle(b, cc.STRICT, unramified)
                and not verify_cocycle(b, cc.VALUATION))

    results.append(_run(CheckResult("cocycle identity for e_r and b_r (strict)"), rs, cocycles_ok))

    def inertial_ok(r):
        M = m_subgroup(r)
        return inertial_group(idempotent_from_r(r)) == M and inertial_group(br_from_r(r)) == M

    results.append(_run(CheckResult("inertial groups equal M_r"), rs, inertial_ok))

    inj = CheckResult("defect table determines r")
    seen = {}
    for r in rs:
        inj.checked += 1
        key = defect_table(r).d
        if key in seen:
            inj.fail((seen[key], r.values))
        seen[key] = r.values
    results.append(inj)

    results.append(_run(CheckResult("defect telescoping identity"), rs,
                        lambda r: not defect_table(r).consistency_violations()))

    def valuation_identity(r):
        b = br_from_r(r)
        rf = rf_from_f(b)
        inv = G.inv
        return all(b[s, t].exp + b[inv(t), inv(s)].exp == rf[s] + rf[t] - rf[G.mul(s, t)]
                   for s in range(n) for t in range(n))

    results.append(_run(CheckResult("valuation identity on all pairs"), rs, valuation_identity))

    def not_hereditary(r):
        b = br_from_r(r)
        if len(inertial_group(b)) == n:
            return True
        return hereditary_criterion(b) is False

    results.append(_run(CheckResult("hereditary criterion fails when H(b) != G"), rs,
                        not_hereditary))

    def random_seed(r):
        vals = [Monomial()]
        for s in range(1, n):
            unit = UnitWord.symbol("W", s, power=rng.randint(-2, 2))
            vals.append(Monomial(unit, r[s]))
        return CoboundarySeed(G, tuple(vals))

    def round_trip(r):
        b = coboundary_from_seed(random_seed(r))
        if verify_cocycle(b, cc.STRICT, unramified):
            return False
        c, r2 = decompose(b, unramified=unramified)
        return (r2 == r and all(m.exp == 0 for row in c.entries for m in row)
                and inertial_group(b) == m_subgroup(r))

    results.append(_run(CheckResult("decompose inverts coboundary_from_seed"), rs, round_trip))

    def product_law(r):
        s = rng.choice(rs)
        _, total = decompose(br_from_r(r) * br_from_r(s), unramified=unramified)
        b1 = coboundary_from_seed(random_seed(r))
        b2 = coboundary_from_seed(random_seed(s))
        _, total2 = decompose(b1 * b2, unramified=unramified)
        return total == add_r(r, s) == total2

    results.append(_run(CheckResult("decompose is a monoid homomorphism"), rs, product_law))

    def rf_props(r):
        b = br_from_r(r)
        rf = rf_from_f(b)
        return (all(rf[s] == rf[G.inv(s)] for s in range(n))
                and m_subgroup(rf) == inertial_group(b)
                and all(rf[s] == r[s] + r[G.inv(s)] for s in range(n)))

    results.append(_run(CheckResult("r_f symmetric with M_{r_f} = H(f)"), rs, rf_props))

    def partner_props(r):
        f = br_from_r(r)
        rf = rf_from_f(f)
        h = partner_h(f, rf, unramified)
        if any(h[s, t].exp != f[G.inv(t), G.inv(s)].exp for s in range(n) for t in range(n)):
            return False
        half = halve(rf)
        h2 = partner_h(f, half, unramified)
        if any(h2[s, G.inv(s)].exp not in (0, 1) for s in range(n)):
            return False
        if not cc.strict_equal(f * h2, br_from_r(half), unramified):
            return False
        return not verify_cocycle(h2, cc.STRICT, unramified)

    results.append(_run(CheckResult("partner cocycle bounds"), rs, partner_props))

    normals = normal_subgroups(G)

    def inflation_criterion(r):
        e = idempotent_from_r(r)
        H = inertial_group(e)
        for N in normals:
            inside = N <= H
            try:
                eps = deflate_idempotent(e, N)
            except NotInInertialGroup:
                if inside:
                    return False
                continue
            if not inside or inflate_idempotent(eps, G, N) != e:
                return False
            if inertial_group(eps).members != tuple(sorted(
                    {quotient_group(G, N)[1][h] for h in H.members})):
                return False
            for s, t in itertools.product(range(n), repeat=2):
                for n1, n2 in itertools.product(N.members, repeat=2):
                    if e[s, t] != e[G.mul(s, n1), G.mul(t, n2)]:
                        return False
        return True

    results.append(_run(CheckResult("inflation criterion and coset invariance"), rs,
                        inflation_criterion))

    lift = CheckResult("inflate/deflate round trip from trivial-inertia quotients")
    for N in normals:
        Q, proj = quotient_group(G, N)
        for rq in enumerate_slg(Q, maxval):
            if len(m_subgroup(rq)) != 1:
                continue
            lift.checked += 1
            eps = idempotent_from_r(rq)
            e = inflate_idempotent(eps, G, N)
            rh = inflate_r(G, N, rq)
            if (deflate_idempotent(e, N) != eps or inertial_group(e) != N
                    or idempotent_from_r(rh) != e or m_subgroup(rh) != N):
                lift.fail((N.members, rq.values))
    results.append(lift)

    def poset_ok(r):
        P = poset_from_r(r)
        if verify_poset(P) or P != poset_from_idempotent(idempotent_from_r(r)):
            return False
        hd = hasse(P)
        if hd.closure() != [list(row) for row in P.leq]:
            return False
        heights = P.heights()
        return all(heights[P.cosets.coset_of[g]] <= r[g] for g in range(n))

    results.append(_run(CheckResult("coset posets are lower subtractive"), rs, poset_ok))

    def converse(r):
        # e(s,t) = [sH <= stH]
        e = idempotent_from_r(r)
        P = poset_from_r(r)
        co = P.cosets.coset_of
        return all(e[s, t] == int(P.leq[co[s]][co[G.mul(s, t)]])
                   for s in range(n) for t in range(n))

    results.append(_run(CheckResult("idempotent recovered from its order"), rs, converse))

    def transforms(r):
        M = m_subgroup(r)
        if not (m_subgroup(halve(r)) == m_subgroup(evenize(r)) == M):
            return False
        if evenize(r) != add_r(halve(r), halve(r)):
            return False
        if idempotent_from_r(r) != idempotent_from_r(add_r(r, r)):
            return False
        N1 = n1_set(r)
        for a in N1:
            if not double_coset(G, M, a) <= N1:
                return False
            if m_subgroup(bump(r, a)) != M:
                return False
        return True

    results.append(_run(CheckResult("bump/halve/evenize preserve M_r"), rs, transforms))

    gen = CheckResult("word length is subadditive")
    for a, b in itertools.combinations_with_replacement(range(n), 2):
        try:
            tree = canonical_factorization(G, [a, b])
        except CocycleError:
            continue
        gen.checked += 1
        d = tree.dist
        if any(d[G.mul(x, y)] > d[x] + d[y] for x in range(n) for y in range(n)):
            gen.fail((a, b))
        if any(len(tree.word(w)) != d[w] for w in range(n)):
            gen.fail(("word", a, b))
    results.append(gen)
    return results
