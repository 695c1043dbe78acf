"""Module-property deciders and the executable transfer-theorem suite.

Verdict semantics
-----------------
Properties quantifying over finite data (the module, the ring, its
idempotents) are decided exactly: Holds or Fails.  Properties quantifying
over all polynomials are decided on the degree <= d slice and report
HoldsUpToBound(d); refutations are still exact.  A Fails verdict always
carries a replayable witness, found in enumeration order (ascending
coefficient vectors, constant slot most significant), so reruns return the
same witness.

Theorem reports
---------------
Each proved implication becomes a report with one of four statuses:

* confirmed          - hypotheses met and conclusion verified (or both
                       hypothesis and conclusion fail, which is the
                       contrapositive reading of the implication);
* hypothesis_not_met - some hypothesis fails and the conclusion gives no
                       contrapositive information;
* violation          - hypotheses met, conclusion refuted.  On a validated,
                       consistency-certified instance this always means an
                       engine bug, never new mathematics;
* skipped_search_space - a bounded side exceeded the search budget.
"""

from __future__ import annotations

from dataclasses import dataclass

from .annihilator import ann_in_r, idempotent_generator, principal_right_ideal
from .bounded import DEFAULT_MAX_SPACE, BoundedContext, context
from .errors import (EngineInvariantError, SearchSpaceTooLarge, TooLarge,
                     ValidationError)
from .finring import closure_monoid, idempotents, is_central
from .monomial import sort_key
from .polymodule import (ModulePoly, RightModule, act, act_scalar,
                         all_submodules, cyclic_submodule, module_poly,
                         submodule_closure)
from .skewpbw import SkewPbwPresentation, SkewPoly

HOLDS = "holds"
FAILS = "fails"
HOLDS_UP_TO_BOUND = "holds_up_to_bound"

CONFIRMED = "confirmed"
HYPOTHESIS_NOT_MET = "hypothesis_not_met"
VIOLATION = "violation"
SKIPPED = "skipped_search_space"

DEFAULT_DEGREE = 2
DEFAULT_MAX_SUBMODULE_ORDER = 16


@dataclass(frozen=True)
class PropertyVerdict:
    prop: str
    status: str
    witness: dict | None = None
    bound: int | None = None

    @property
    def holds(self) -> bool:
        return self.status != FAILS

    def to_json(self) -> dict:
        return {"property": self.prop, "status": self.status,
                "witness": self.witness, "bound": self.bound}


@dataclass(frozen=True)
class TheoremReport:
    theorem: str
    status: str
    hypotheses: tuple
    conclusion: str
    witness: dict | None = None
    bound: int | None = None

    def to_json(self) -> dict:
        return {"theorem": self.theorem, "status": self.status,
                "hypotheses": [{"name": n, "state": s}
                               for n, s in self.hypotheses],
                "conclusion": self.conclusion, "witness": self.witness,
                "bound": self.bound}


# ---------------------------------------------------------------------------
# witness plumbing


def _poly_struct(f: SkewPoly) -> dict:
    ring = f.presentation.ring
    return {"text": f.to_string(),
            "terms": [[list(a), ring.name(c)] for a, c in f.items_descending()]}


def _mpoly_struct(mp: ModulePoly) -> dict:
    M = mp.module
    order = mp.presentation.order
    items = sorted(mp.terms.items(), key=lambda kv: sort_key(order)(kv[0]),
                   reverse=True)
    return {"text": mp.to_string(),
            "terms": [[list(a), M.name(c)] for a, c in items]}


def _poly_from_struct(P: SkewPbwPresentation, struct: dict) -> SkewPoly:
    ring = P.ring
    return P.from_terms([(tuple(a), ring.element_index(c))
                         for a, c in struct["terms"]])


def _mpoly_from_struct(M: RightModule, P: SkewPbwPresentation,
                       struct: dict) -> ModulePoly:
    return module_poly(M, P, [(tuple(a), M.element_index(c))
                              for a, c in struct["terms"]])


def _apply_map_word(tables: dict, word: str, a: int) -> int:
    # word is "id" or a dotted label chain, leftmost applied last
    if word == "id":
        return a
    for lab in reversed(word.split(".")):
        a = tables[lab][a]
    return a


def _twist_tables(P: SkewPbwPresentation) -> dict:
    tables = {}
    for i in range(P.n):
        tables[f"s{i + 1}"] = P.sigma_tables[i]
        tables[f"d{i + 1}"] = P.delta_tables[i]
    return tables


# ---------------------------------------------------------------------------
# exact deciders


def is_reduced(M: RightModule) -> PropertyVerdict:
    """m a = 0 must force cyclic(m) and M a to meet only in 0."""
    R = M.ring
    mz = M.zero
    act_t = M.action_table
    for m in M.elements():
        row = act_t[m]
        cyc = None
        for a in R.elements():
            if row[a] != mz:
                continue
            if cyc is None:
                cyc = cyclic_submodule(M, m).elements
            for mp in M.elements():
                x = act_t[mp][a]
                if x != mz and x in cyc:
                    witness = {"m": M.name(m), "a": R.name(a),
                               "common": M.name(x)}
                    return PropertyVerdict("reduced", FAILS, witness)
    return PropertyVerdict("reduced", HOLDS)


def is_sigma_compatible(M: RightModule, P: SkewPbwPresentation) -> PropertyVerdict:
    labels = tuple(f"s{i + 1}" for i in range(P.n))
    monoid = closure_monoid(P.ring, P.sigma_tables, labels)
    mz = M.zero
    act_t = M.action_table
    for m in M.elements():
        row = act_t[m]
        for r in P.ring.elements():
            base = row[r] == mz
            for g in monoid.elements:
                other = row[g.table[r]] == mz
                if base == other:
                    continue
                witness = {"m": M.name(m), "r": P.ring.name(r),
                           "map": monoid.describe(g),
                           "direction": "forward" if base else "backward"}
                return PropertyVerdict("sigma_compatible", FAILS, witness)
    return PropertyVerdict("sigma_compatible", HOLDS)


def is_delta_compatible(M: RightModule, P: SkewPbwPresentation) -> PropertyVerdict:
    labels = tuple(f"d{i + 1}" for i in range(P.n))
    monoid = closure_monoid(P.ring, P.delta_tables, labels)
    mz = M.zero
    act_t = M.action_table
    for m in M.elements():
        row = act_t[m]
        for r in P.ring.elements():
            if row[r] != mz:
                continue
            for g in monoid.elements:
                if row[g.table[r]] != mz:
                    witness = {"m": M.name(m), "r": P.ring.name(r),
                               "map": monoid.describe(g)}
                    return PropertyVerdict("delta_compatible", FAILS, witness)
    return PropertyVerdict("delta_compatible", HOLDS)


def is_abelian(M: RightModule) -> PropertyVerdict:
    R = M.ring
    act_t = M.action_table
    for m in M.elements():
        row = act_t[m]
        for r in R.elements():
            for e in idempotents(R):
                if act_t[row[r]][e] != act_t[row[e]][r]:
                    witness = {"m": M.name(m), "r": R.name(r), "e": R.name(e)}
                    return PropertyVerdict("abelian", FAILS, witness)
    return PropertyVerdict("abelian", HOLDS)


def idempotent_stability(P: SkewPbwPresentation) -> PropertyVerdict:
    R = P.ring
    for e in idempotents(R):
        for i in range(P.n):
            if P.sigma_tables[i][e] != e:
                witness = {"e": R.name(e), "i": i + 1, "kind": "sigma"}
                return PropertyVerdict("idempotent_stability", FAILS, witness)
            if P.delta_tables[i][e] != R.zero:
                witness = {"e": R.name(e), "i": i + 1, "kind": "delta"}
                return PropertyVerdict("idempotent_stability", FAILS, witness)
    return PropertyVerdict("idempotent_stability", HOLDS)


def is_pp(M: RightModule) -> PropertyVerdict:
    R = M.ring
    for m in M.elements():
        ideal = ann_in_r(M, (m,))
        if idempotent_generator(R, ideal.elements) is None:
            witness = {"m": M.name(m),
                       "annihilator": [R.name(r) for r in ideal.sorted_elements()]}
            return PropertyVerdict("pp", FAILS, witness)
    return PropertyVerdict("pp", HOLDS)


def is_pq_baer(M: RightModule) -> PropertyVerdict:
    R = M.ring
    for m in M.elements():
        ideal = ann_in_r(M, cyclic_submodule(M, m).elements)
        if idempotent_generator(R, ideal.elements) is None:
            witness = {"m": M.name(m),
                       "annihilator": [R.name(r) for r in ideal.sorted_elements()]}
            return PropertyVerdict("pq_baer", FAILS, witness)
    return PropertyVerdict("pq_baer", HOLDS)


def is_quasi_baer(M: RightModule,
                  max_order: int = DEFAULT_MAX_SUBMODULE_ORDER) -> PropertyVerdict:
    R = M.ring
    for sub in all_submodules(M, max_order):
        ideal = ann_in_r(M, sub.elements)
        if idempotent_generator(R, ideal.elements) is None:
            witness = {"submodule": sorted(M.name(x) for x in sub.elements),
                       "annihilator": [R.name(r) for r in ideal.sorted_elements()]}
            return PropertyVerdict("quasi_baer", FAILS, witness)
    return PropertyVerdict("quasi_baer", HOLDS)


def _subset_annihilators(M: RightModule) -> dict:
    """Intersection closure of the single-element annihilators.

    Every ann(X) with X a subset of M is an intersection of ann({m}) over
    m in X, so the closure enumerates the full annihilator lattice.  Maps
    each distinct annihilator (frozenset) to a witness subset of M.
    """
    cands: dict = {}
    for m in M.elements():
        ideal = frozenset(ann_in_r(M, (m,)).elements)
        cands.setdefault(ideal, frozenset({m}))
    while True:
        fresh = {}
        items = list(cands.items())
        for ideal1, x1 in items:
            for ideal2, x2 in items:
                meet = ideal1 & ideal2
                if meet not in cands and meet not in fresh:
                    fresh[meet] = x1 | x2
        if not fresh:
            return cands
        cands.update(fresh)


def is_baer(M: RightModule) -> PropertyVerdict:
    R = M.ring
    cands = _subset_annihilators(M)
    for ideal in sorted(cands, key=lambda s: (len(s), sorted(s))):
        if idempotent_generator(R, ideal) is None:
            subset = cands[ideal]
            witness = {"subset": sorted(M.name(x) for x in subset),
                       "annihilator": [R.name(r) for r in sorted(ideal)]}
            return PropertyVerdict("baer", FAILS, witness)
    return PropertyVerdict("baer", HOLDS)


# ---------------------------------------------------------------------------
# bounded deciders


def _armendariz_scan(ctx: BoundedContext, prop: str, exact: bool,
                     max_space: int) -> PropertyVerdict:
    M = ctx.module
    kern = ctx.kernel(max_space)
    mz = M.zero
    for m_idx in range(ctx.m_space):
        m0 = ctx.mvec(m_idx)[0]
        if m0 == mz:
            continue
        row = M.action_table[m0]
        for f_idx in kern[m_idx]:
            for beta, b in ctx.fterms(f_idx):
                if row[b] != mz:
                    witness = {"m": _mpoly_struct(ctx.m_poly(m_idx)),
                               "f": _poly_struct(ctx.f_poly(f_idx)),
                               "exp": list(beta), "m0": M.name(m0),
                               "coeff": ctx.presentation.ring.name(b)}
                    return PropertyVerdict(prop, FAILS, witness,
                                           bound=ctx.degree)
    status = HOLDS if exact else HOLDS_UP_TO_BOUND
    return PropertyVerdict(prop, status, bound=ctx.degree)


def is_skew_armendariz_bounded(M: RightModule, P: SkewPbwPresentation,
                               d: int = DEFAULT_DEGREE,
                               max_space: int = DEFAULT_MAX_SPACE) -> PropertyVerdict:
    """act(m, f) = 0 must force m's constant coefficient to kill every
    coefficient of f; enumerated over supports of degree <= d."""
    return _armendariz_scan(context(M, P, d), "skew_armendariz", False,
                            max_space)


def is_linearly_skew_armendariz(M: RightModule, P: SkewPbwPresentation,
                                max_space: int = DEFAULT_MAX_SPACE) -> PropertyVerdict:
    """The same condition restricted to the definition's exact linear shape
    m0 + m1 x1 + ... + mn xn; this quantifier is finite, so the verdict is
    exact rather than bounded."""
    return _armendariz_scan(context(M, P, 1), "linearly_skew_armendariz",
                            True, max_space)


def is_skew_quasi_armendariz_bounded(M: RightModule, P: SkewPbwPresentation,
                                     d: int = DEFAULT_DEGREE,
                                     max_space: int = DEFAULT_MAX_SPACE) -> PropertyVerdict:
    """m·A·f = 0 (middle factors r x^gamma, |gamma| <= d) must force every
    mixed product m_i x^alpha_i · r x^t · b_j x^beta_j to vanish."""
    ctx = context(M, P, d)
    R = P.ring
    rows = ctx.ann_am_rows(max_space)
    for m_idx in range(ctx.m_space):
        mts = ctx.mterms(m_idx)
        if not mts:
            continue
        for f_idx in rows[m_idx]:
            fts = ctx.fterms(f_idx)
            for alpha_i, mi in mts:
                single = ((alpha_i, mi),)
                for beta_j, bj in fts:
                    for r in R.elements():
                        for t in ctx.basis:
                            mid = ctx.scaled_triple(r, t, bj, beta_j)
                            if not ctx.act_is_zero(single, mid):
                                witness = {
                                    "m": _mpoly_struct(ctx.m_poly(m_idx)),
                                    "f": _poly_struct(ctx.f_poly(f_idx)),
                                    "i_exp": list(alpha_i),
                                    "j_exp": list(beta_j),
                                    "r": R.name(r), "t": list(t)}
                                return PropertyVerdict(
                                    "skew_quasi_armendariz", FAILS, witness,
                                    bound=ctx.degree)
    return PropertyVerdict("skew_quasi_armendariz", HOLDS_UP_TO_BOUND,
                           bound=ctx.degree)


def torsion_witness(mp: ModulePoly, h: SkewPoly) -> int:
    """For a bounded torsion pair (act(mp, h) = 0, h != 0) over a reduced
    compatible module, return the constant annihilator lc(h).

    The guarantee act_scalar(mp, lc(h)) = 0 is re-verified before returning;
    its failure is an engine bug, not a property of the instance.
    """
    M, P = mp.module, mp.presentation
    if h.is_zero():
        raise ValidationError("hypothesis_not_met", None,
                              "torsion witness needs a non-zero polynomial")
    for verdict in (is_reduced(M), is_sigma_compatible(M, P),
                    is_delta_compatible(M, P)):
        if not verdict.holds:
            raise ValidationError(
                "hypothesis_not_met", verdict.witness,
                f"module is not {verdict.prop}, torsion transfer unavailable")
    if not act(mp, h).is_zero():
        raise ValidationError("hypothesis_not_met", None,
                              "act(m, h) != 0: not a torsion pair")
    c = h.lc()
    if not act_scalar(mp, c).is_zero():
        raise EngineInvariantError(
            "torsion witness verification failed: act_scalar(m, lc(h)) != 0")
    return c


# ---------------------------------------------------------------------------
# bounded M<X>-side deciders used by the transfer reports


def _idempotent_sets(ctx: BoundedContext, max_space: int) -> dict:
    """frozenset(e R A_{<=d}) -> e, for each idempotent e of the ring."""
    R = ctx.presentation.ring
    inv: dict = {}
    for e in idempotents(R):
        s = ctx.coeff_set(principal_right_ideal(R, e), max_space)
        inv.setdefault(s, e)
    return inv


def _pp_bounded(ctx: BoundedContext, max_space: int):
    kern = ctx.kernel(max_space)
    inv = _idempotent_sets(ctx, max_space)
    for m_idx in range(ctx.m_space):
        if frozenset(kern[m_idx]) not in inv:
            return False, {"m": _mpoly_struct(ctx.m_poly(m_idx))}
    return True, None


def _baer_bounded(ctx: BoundedContext, max_space: int):
    kern = ctx.kernel(max_space)
    inv = _idempotent_sets(ctx, max_space)
    cands: dict = {}
    for m_idx in range(ctx.m_space):
        cands.setdefault(frozenset(kern[m_idx]), (m_idx,))
    while True:
        fresh = {}
        items = list(cands.items())
        for s1, w1 in items:
            for s2, w2 in items:
                meet = s1 & s2
                if meet not in cands and meet not in fresh:
                    fresh[meet] = w1 + w2
        if not fresh:
            break
        if len(cands) + len(fresh) > 4096:
            raise SearchSpaceTooLarge(len(cands) + len(fresh), 4096,
                                      "bounded annihilator lattice")
        cands.update(fresh)
    for s in sorted(cands, key=lambda x: (len(x), sorted(x))):
        if s not in inv:
            gens = cands[s][:8]
            return False, {"subset": [ctx.m_poly(i).to_string() for i in gens],
                           "subset_size": len(cands[s])}
    return True, None


def _quasi_baer_bounded(ctx: BoundedContext, max_space: int, max_order: int):
    from itertools import product as iproduct
    kern = ctx.kernel(max_space)
    inv = _idempotent_sets(ctx, max_space)
    M = ctx.module
    for sub in all_submodules(M, max_order):
        members = sorted(sub.elements)
        meet = None
        for vec in iproduct(members, repeat=ctx.k):
            row = frozenset(kern[ctx.m_index(vec)])
            meet = row if meet is None else (meet & row)
        if meet not in inv:
            return False, {"submodule": sorted(M.name(x) for x in sub.elements)}
    return True, None


def _pq_baer_bounded(ctx: BoundedContext, max_space: int):
    rows = ctx.ann_am_rows(max_space)
    inv = _idempotent_sets(ctx, max_space)
    for m_idx in range(ctx.m_space):
        if frozenset(rows[m_idx]) not in inv:
            return False, {"m": _mpoly_struct(ctx.m_poly(m_idx))}
    return True, None


# ---------------------------------------------------------------------------
# conclusion evaluators for the individual theorems


def _map_annihilation(M: RightModule, P: SkewPbwPresentation):
    """Annihilation is stable under the twist maps: closure images of an
    annihilated element stay annihilated, products split, and the per-map
    annihilators agree (equality for sigma, inclusion for delta)."""
    R = P.ring
    mz = M.zero
    act_t = M.action_table
    s_labels = tuple(f"s{i + 1}" for i in range(P.n))
    d_labels = tuple(f"d{i + 1}" for i in range(P.n))
    mixed = closure_monoid(R, P.sigma_tables + P.delta_tables,
                           s_labels + d_labels)
    dmon = closure_monoid(R, P.delta_tables, d_labels)
    for m in M.elements():
        row = act_t[m]
        for a in R.elements():
            if row[a] != mz:
                continue
            for g in mixed.elements:
                if row[g.table[a]] != mz:
                    return False, {"part": "closure", "m": M.name(m),
                                   "a": R.name(a), "map": mixed.describe(g)}
    for m in M.elements():
        row = act_t[m]
        for a in R.elements():
            ma = row[a]
            for b in R.elements():
                if row[R.mul(a, b)] != mz:
                    continue
                for g in dmon.elements:
                    if act_t[ma][g.table[b]] != mz:
                        return False, {"part": "product-right", "m": M.name(m),
                                       "a": R.name(a), "b": R.name(b),
                                       "map": dmon.describe(g)}
                    if act_t[row[g.table[a]]][b] != mz:
                        return False, {"part": "product-left", "m": M.name(m),
                                       "a": R.name(a), "b": R.name(b),
                                       "map": dmon.describe(g)}
    for m in M.elements():
        row = act_t[m]
        for a in R.elements():
            base = frozenset(r for r in R.elements() if act_t[row[a]][r] == mz)
            for i in range(P.n):
                sig = frozenset(r for r in R.elements()
                                if act_t[row[P.sigma_tables[i][a]]][r] == mz)
                if sig != base:
                    return False, {"part": "annihilator-sigma", "m": M.name(m),
                                   "a": R.name(a), "i": i + 1}
                dla = row[P.delta_tables[i][a]]
                if any(act_t[dla][r] != mz for r in base):
                    return False, {"part": "annihilator-delta", "m": M.name(m),
                                   "a": R.name(a), "i": i + 1}
    return True, None


def _coefficientwise_scalar(ctx: BoundedContext, max_space: int):
    """act_scalar(m, r) = 0 iff every coefficient of m annihilates r."""
    M = ctx.module
    R = ctx.presentation.ring
    mz = M.zero
    ctx.guard(ctx.m_space * R.order, max_space, "module-poly/scalar space")
    const = (ctx.basis[0],)
    for m_idx in range(ctx.m_space):
        mts = ctx.mterms(m_idx)
        for r in R.elements():
            whole = ctx.act_is_zero(mts, ((const[0], r),))
            slotwise = all(M.action_table[mc][r] == mz for _, mc in mts)
            if whole != slotwise:
                return False, {"m": _mpoly_struct(ctx.m_poly(m_idx)),
                               "r": R.name(r),
                               "direction": "whole" if whole else "slotwise"}
    return True, None


def _vec_add(M: RightModule, u, v):
    add = M.add_table
    return tuple(add[a][b] for a, b in zip(u, v))


def _cyclic_vec_closure(ctx: BoundedContext, vec):
    """Smallest set containing vec closed under scalar action and addition."""
    M = ctx.module
    zero = (M.zero,) * ctx.k
    terms = tuple((ctx.basis[s], c) for s, c in enumerate(vec) if c != M.zero)
    orbit = {ctx.act_scalar_vec(terms, r) for r in ctx.presentation.ring.elements()}
    orbit.add(zero)
    closed = set(orbit)
    queue = list(orbit)
    while queue:
        x = queue.pop()
        for y in list(orbit):
            z = _vec_add(M, x, y)
            if z not in closed:
                closed.add(z)
                queue.append(z)
    return closed


def _bounded_sigma_reduced(ctx: BoundedContext, max_space: int):
    """Reduced + sigma-compatible for the degree <= d slice of M<X> viewed
    as a module over R via act_scalar."""
    M = ctx.module
    R = ctx.presentation.ring
    mz = M.zero
    zero_vec = (mz,) * ctx.k
    ctx.guard(ctx.m_space * ctx.m_space * R.order, max_space,
              "bounded module-poly square")
    labels = tuple(f"s{i + 1}" for i in range(ctx.presentation.n))
    monoid = closure_monoid(R, ctx.presentation.sigma_tables, labels)
    all_terms = [ctx.mterms(i) for i in range(ctx.m_space)]
    for m_idx in range(ctx.m_space):
        mts = all_terms[m_idx]
        for r in R.elements():
            base = ctx.act_is_zero(mts, ((ctx.basis[0], r),))
            for g in monoid.elements:
                if ctx.act_is_zero(mts, ((ctx.basis[0], g.table[r]),)) != base:
                    return False, {"side": "sigma_compatible",
                                   "m": _mpoly_struct(ctx.m_poly(m_idx)),
                                   "r": R.name(r), "map": monoid.describe(g)}
    image = {}
    for a in R.elements():
        vals = set()
        for mts in all_terms:
            v = ctx.act_scalar_vec(mts, a)
            if v != zero_vec:
                vals.add(v)
        image[a] = vals
    for m_idx in range(ctx.m_space):
        mts = all_terms[m_idx]
        cyc = None
        for a in R.elements():
            if not image[a]:
                continue
            if not ctx.act_is_zero(mts, ((ctx.basis[0], a),)):
                continue
            if cyc is None:
                cyc = _cyclic_vec_closure(ctx, ctx.mvec(m_idx))
            hit = cyc & image[a]
            if hit:
                common = min(hit)
                return False, {"side": "reduced",
                               "m": _mpoly_struct(ctx.m_poly(m_idx)),
                               "a": R.name(a),
                               "common": _mpoly_struct(module_poly(
                                   M, ctx.presentation,
                                   [(ctx.basis[s], c) for s, c
                                    in enumerate(common) if c != mz]))}
    return True, None


def _annihilator_correspondence(ctx: BoundedContext, max_space: int):
    """Bounded form of the extension correspondence: the annihilator of any
    bounded module polynomial (or constant subset) in A_{<=d} is exactly the
    coefficientwise annihilator extended over the monomial basis."""
    M = ctx.module
    kern = ctx.kernel(max_space)
    for m_idx in range(ctx.m_space):
        coeffs = frozenset(c for _, c in ctx.mterms(m_idx))
        ideal = ann_in_r(M, coeffs)
        pred = ctx.coeff_set(ideal.elements, max_space)
        if frozenset(kern[m_idx]) != pred:
            return False, {"m": _mpoly_struct(ctx.m_poly(m_idx)),
                           "side": "single"}
    cands: dict = {}
    for u in M.elements():
        ideal = frozenset(ann_in_r(M, (u,)).elements)
        row = frozenset(kern[ctx.constant_m_index(u)])
        cands.setdefault((ideal, row), frozenset({u}))
    while True:
        fresh = {}
        items = list(cands.items())
        for (i1, r1), u1 in items:
            for (i2, r2), u2 in items:
                key = (i1 & i2, r1 & r2)
                if key not in cands and key not in fresh:
                    fresh[key] = u1 | u2
        if not fresh:
            break
        cands.update(fresh)
    for (ideal, row), subset in cands.items():
        if ctx.coeff_set(ideal, max_space) != row:
            return False, {"subset": sorted(M.name(x) for x in subset),
                           "side": "subset"}
    return True, None


def _torsion_constant(ctx: BoundedContext, max_space: int):
    """Every bounded torsion pair act(m, f) = 0 with f != 0 already has the
    constant annihilator lc(f)."""
    M = ctx.module
    kern = ctx.kernel(max_space)
    const = ctx.basis[0]
    for m_idx in range(ctx.m_space):
        mts = ctx.mterms(m_idx)
        if not mts:
            continue
        for f_idx in kern[m_idx]:
            if f_idx == 0:
                continue
            vec = ctx.fvec(f_idx)
            lead = None
            for s in range(ctx.k - 1, -1, -1):
                if vec[s]:
                    lead = vec[s]
                    break
            if not ctx.act_is_zero(mts, ((const, lead),)):
                return False, {"m": _mpoly_struct(ctx.m_poly(m_idx)),
                               "f": _poly_struct(ctx.f_poly(f_idx)),
                               "c": ctx.presentation.ring.name(lead)}
    return True, None


def _quasi_commutative_annihilator(ctx: BoundedContext, max_space: int,
                                   quasi_verdict):
    """Structure of bounded ann(mA): generated by its constants exactly when
    all mixed products m_i R a_j vanish; plus the nonzero-constant guarantee
    for quasi-Armendariz modules."""
    M = ctx.module
    R = ctx.presentation.ring
    mz = M.zero
    rows = ctx.ann_am_rows(max_space)
    shift = ctx.ring_size ** (ctx.k - 1)
    a_all, b_all = True, True
    a_wit = b_wit = None
    constant_gap = None
    for m_idx in range(ctx.m_space):
        rowset = frozenset(rows[m_idx])
        consts = frozenset(r for r in R.elements() if r * shift in rowset)
        if a_all and rowset != ctx.coeff_set(consts, max_space):
            a_all = False
            a_wit = {"part": "constants-generate",
                     "m": _mpoly_struct(ctx.m_poly(m_idx))}
        mts = ctx.mterms(m_idx)
        if b_all and mts:
            for f_idx in rows[m_idx]:
                for _, mi in mts:
                    rowm = M.action_table[mi]
                    for _, aj in ctx.fterms(f_idx):
                        for r in R.elements():
                            if M.action_table[rowm[r]][aj] != mz:
                                b_all = False
                                b_wit = {"part": "mixed-products",
                                         "m": _mpoly_struct(ctx.m_poly(m_idx)),
                                         "f": _poly_struct(ctx.f_poly(f_idx)),
                                         "r": R.name(r)}
                                break
                        if not b_all:
                            break
                    if not b_all:
                        break
                if not b_all:
                    break
        if constant_gap is None and len(rowset) > 1 and consts == {R.zero}:
            constant_gap = {"part": "nonzero-constant",
                            "m": _mpoly_struct(ctx.m_poly(m_idx))}
    if a_all != b_all:
        return False, (a_wit or b_wit)
    if quasi_verdict is None:
        return None, None
    if quasi_verdict.holds and constant_gap is not None:
        return False, constant_gap
    return True, None


# ---------------------------------------------------------------------------
# report assembly


def _state(v) -> str:
    if v is None:
        return SKIPPED
    if isinstance(v, PropertyVerdict):
        return v.status
    if isinstance(v, bool):
        return HOLDS if v else FAILS
    return str(v)


def _implication(theorem: str, hyps, conclude, bound=None) -> TheoremReport:
    entries = tuple((name, _state(v)) for name, v in hyps)
    states = [s for _, s in entries]
    hyp_failed = any(s in (FAILS, "absent") for s in states)
    hyp_unknown = any(s == SKIPPED for s in states)
    try:
        ok, desc, witness = conclude()
    except (SearchSpaceTooLarge, TooLarge) as exc:
        ok, desc, witness = None, f"not evaluated ({exc})", None
    if hyp_failed:
        if ok is False:
            return TheoremReport(
                theorem, CONFIRMED, entries,
                desc + "; conclusion fails alongside the hypotheses",
                None, bound)
        return TheoremReport(theorem, HYPOTHESIS_NOT_MET, entries, desc,
                             None, bound)
    if hyp_unknown or ok is None:
        return TheoremReport(theorem, SKIPPED, entries, desc, None, bound)
    if ok:
        return TheoremReport(theorem, CONFIRMED, entries, desc, None, bound)
    return TheoremReport(theorem, VIOLATION, entries, desc, witness, bound)


def reduced_compatible_equivalence(M: RightModule,
                                   P: SkewPbwPresentation) -> TheoremReport:
    """The four elementwise annihilation conditions hold together exactly
    when the module is reduced and compatible; evaluated on both sides and
    compared, so the report is always confirmed or violation."""
    R = P.ring
    mz = M.zero
    act_t = M.action_table
    red = is_reduced(M)
    sig = is_sigma_compatible(M, P)
    dlt = is_delta_compatible(M, P)
    lhs = red.holds and sig.holds and dlt.holds

    def cond_a():
        for m in M.elements():
            row = act_t[m]
            for r in R.elements():
                if row[r] != mz:
                    continue
                for s in R.elements():
                    if act_t[act_t[m][s]][r] != mz:
                        return {"m": M.name(m), "r": R.name(r), "s": R.name(s)}
        return None

    def cond_d():
        for m in M.elements():
            row = act_t[m]
            for r in R.elements():
                if row[R.mul(r, r)] == mz and row[r] != mz:
                    return {"m": M.name(m), "r": R.name(r)}
        return None

    wa, wd = cond_a(), cond_d()
    rhs_parts = {"middle-factors": wa is None, "delta-closure": dlt.holds,
                 "sigma-equivalence": sig.holds, "squares": wd is None}
    rhs = all(rhs_parts.values())
    desc = (f"reduced+compatible {'holds' if lhs else 'fails'}; "
            f"elementwise conditions {'hold' if rhs else 'fail'}")
    if lhs == rhs:
        return TheoremReport("reduced_compatible_equivalence", CONFIRMED,
                             (), desc)
    witness = {"reduced": red.status, "sigma_compatible": sig.status,
               "delta_compatible": dlt.status,
               "parts": {k: ("holds" if v else "fails")
                         for k, v in rhs_parts.items()},
               "middle_factor_witness": wa, "square_witness": wd}
    return TheoremReport("reduced_compatible_equivalence", VIOLATION, (),
                         desc, witness)


def theorem_suite(M: RightModule, P: SkewPbwPresentation,
                  degree: int = DEFAULT_DEGREE, embedding=None,
                  max_space: int = DEFAULT_MAX_SPACE,
                  max_order: int = DEFAULT_MAX_SUBMODULE_ORDER) -> list:
    """Run every transfer theorem as an executable check.

    `embedding` is the designated R -> M table witnessing that M contains
    the regular module (None when the instance supplies none); theorems
    whose statement needs it report hypothesis_not_met in its absence.
    """
    R = P.ring
    ctx = context(M, P, degree)

    red = is_reduced(M)
    sig = is_sigma_compatible(M, P)
    dlt = is_delta_compatible(M, P)
    abel = is_abelian(M)
    stab = idempotent_stability(P)
    pp = is_pp(M)
    pqb = is_pq_baer(M)
    baer = is_baer(M)
    try:
        qb = is_quasi_baer(M, max_order)
    except TooLarge:
        qb = None

    def guarded(fn, *args):
        try:
            return fn(*args)
        except (SearchSpaceTooLarge, TooLarge):
            return None

    arm = guarded(is_skew_armendariz_bounded, M, P, degree, max_space)
    lin = guarded(is_linearly_skew_armendariz, M, P, max_space)
    quasi = guarded(is_skew_quasi_armendariz_bounded, M, P, degree, max_space)

    bij = P.bijective
    central = all(is_central(R, cv) for cv in P.c.values())
    emb = "present" if embedding is not None else "absent"

    def verdict_concl(v, name):
        def run():
            if v is None:
                return None, f"{name} not evaluated", None
            return v.holds, f"{name} {v.status}", v.witness
        return run

    def equal_concl(left, right, lname, rname, right_witness=None):
        def run():
            if left is None or right is None:
                return None, f"{lname} vs {rname} not fully evaluated", None
            lv = left.holds if isinstance(left, PropertyVerdict) else left
            rv = right.holds if isinstance(right, PropertyVerdict) else right
            desc = (f"{lname} {'holds' if lv else 'fails'}; "
                    f"{rname} {'holds' if rv else 'fails'}")
            wit = None
            if lv != rv:
                if isinstance(right, PropertyVerdict) and right.witness:
                    wit = right.witness
                elif right_witness:
                    wit = right_witness
                elif isinstance(left, PropertyVerdict) and left.witness:
                    wit = left.witness
            return lv == rv, desc, wit
        return run

    reports = [reduced_compatible_equivalence(M, P)]

    reports.append(_implication(
        "compatible_map_annihilation",
        [("sigma_compatible", sig), ("delta_compatible", dlt)],
        lambda: _wrap(_map_annihilation, M, P,
                      "twist maps preserve annihilation")))

    reports.append(_implication(
        "coefficientwise_scalar_annihilation",
        [("sigma_compatible", sig), ("delta_compatible", dlt)],
        _wrapper(_coefficientwise_scalar, ctx, max_space,
                 "scalar annihilation is coefficientwise"),
        bound=degree))

    def concl_reduced_transfer():
        left = red.holds and sig.holds
        ok, wit = _bounded_sigma_reduced(ctx, max_space)
        desc = (f"module sigma-reduced {'holds' if left else 'fails'}; "
                f"bounded polynomial module sigma-reduced "
                f"{'holds' if ok else 'fails'}")
        return left == ok, desc, wit

    reports.append(_implication(
        "reduced_module_polynomial_transfer",
        [("sigma_compatible", sig), ("delta_compatible", dlt)],
        concl_reduced_transfer, bound=degree))

    reports.append(_implication(
        "reduced_compatible_armendariz",
        [("sigma_compatible", sig), ("delta_compatible", dlt),
         ("reduced", red), ("presentation_bijective", bij),
         ("constants_central", central)],
        verdict_concl(arm, "skew_armendariz"), bound=degree))

    def concl_ann_extension():
        if arm is None:
            return None, "skew_armendariz not evaluated", None
        corr, wit = _annihilator_correspondence(ctx, max_space)
        desc = (f"skew_armendariz {'holds' if arm.holds else 'fails'}; "
                f"annihilator correspondence {'holds' if corr else 'fails'}")
        return arm.holds == corr, desc, wit or arm.witness

    reports.append(_implication(
        "armendariz_annihilator_extension",
        [("sigma_compatible", sig), ("delta_compatible", dlt)],
        concl_ann_extension, bound=degree))

    reports.append(_implication(
        "linear_armendariz_idempotent_stability",
        [("linearly_skew_armendariz", lin), ("ring_embeds_in_module", emb)],
        verdict_concl(stab, "idempotent_stability")))

    reports.append(_implication(
        "linear_armendariz_abelian",
        [("linearly_skew_armendariz", lin), ("ring_embeds_in_module", emb)],
        verdict_concl(abel, "abelian")))

    reports.append(_implication(
        "armendariz_abelian",
        [("skew_armendariz", arm), ("ring_embeds_in_module", emb)],
        verdict_concl(abel, "abelian"), bound=degree))

    reports.append(_implication(
        "reduced_pp_iff_pq_baer",
        [("reduced", red)],
        equal_concl(pp, pqb, "is_pp", "is_pq_baer")))

    def concl_pp_transfer():
        side, wit = _pp_bounded(ctx, max_space)
        return equal_concl(pp, side, "is_pp",
                           "bounded polynomial-module pp", wit)()

    reports.append(_implication(
        "pp_polynomial_transfer",
        [("sigma_compatible", sig), ("delta_compatible", dlt),
         ("skew_armendariz", arm), ("ring_embeds_in_module", emb)],
        concl_pp_transfer, bound=degree))

    def concl_baer_transfer():
        side, wit = _baer_bounded(ctx, max_space)
        return equal_concl(baer, side, "is_baer",
                           "bounded polynomial-module baer", wit)()

    reports.append(_implication(
        "baer_polynomial_transfer",
        [("sigma_compatible", sig), ("delta_compatible", dlt),
         ("skew_armendariz", arm), ("ring_embeds_in_module", emb)],
        concl_baer_transfer, bound=degree))

    reports.append(_implication(
        "compatible_torsion_constant",
        [("sigma_compatible", sig), ("delta_compatible", dlt),
         ("reduced", red), ("presentation_bijective", bij),
         ("constants_central", central)],
        _wrapper(_torsion_constant, ctx, max_space,
                 "torsion pairs admit a constant annihilator"),
        bound=degree))

    reports.append(_implication(
        "quasi_commutative_annihilator_structure",
        [("quasi_commutative", P.quasi_commutative),
         ("sigma_compatible", sig)],
        _wrapper(_quasi_commutative_annihilator, ctx, max_space, quasi,
                 "bounded ann(mA) is generated by its constants"),
        bound=degree))

    def concl_quasi_baer_transfer():
        side, wit = _quasi_baer_bounded(ctx, max_space, max_order)
        return equal_concl(qb, side, "is_quasi_baer",
                           "bounded polynomial-module quasi-baer", wit)()

    reports.append(_implication(
        "quasi_baer_polynomial_transfer",
        [("sigma_compatible", sig), ("delta_compatible", dlt)],
        concl_quasi_baer_transfer, bound=degree))

    def concl_pq_baer_transfer():
        side, wit = _pq_baer_bounded(ctx, max_space)
        return equal_concl(pqb, side, "is_pq_baer",
                           "bounded polynomial-module pq-baer", wit)()

    reports.append(_implication(
        "pq_baer_polynomial_transfer",
        [("sigma_compatible", sig), ("delta_compatible", dlt)],
        concl_pq_baer_transfer, bound=degree))

    reports.append(_implication(
        "quasi_baer_quasi_armendariz",
        [("sigma_compatible", sig), ("delta_compatible", dlt),
         ("quasi_baer", qb)],
        verdict_concl(quasi, "skew_quasi_armendariz"), bound=degree))

    return reports


def _wrap(fn, M, P, ok_desc):
    ok, wit = fn(M, P)
    return ok, ok_desc if ok else ok_desc + " refuted", wit


def _wrapper(fn, *args):
    ok_desc = args[-1]
    rest = args[:-1]

    def run():
        ok, wit = fn(*rest)
        if ok is None:
            return None, ok_desc + " not fully evaluated", None
        return ok, ok_desc if ok else ok_desc + " refuted", wit
    return run


# ---------------------------------------------------------------------------
# witness replay


def replay(M: RightModule, P: SkewPbwPresentation, verdict: PropertyVerdict) -> bool:
    """Re-evaluate a Fails witness from its serialized form.

    Returns True when the witness still demonstrates the failure; a False
    return means the serialized report does not match the instance.
    """
    if verdict.status != FAILS or verdict.witness is None:
        raise ValidationError("bad_witness", None,
                              "only Fails verdicts carry a witness to replay")
    w = verdict.witness
    R = M.ring
    mz = M.zero
    act_t = M.action_table
    prop = verdict.prop
    if prop == "reduced":
        m = M.element_index(w["m"])
        a = R.element_index(w["a"])
        x = M.element_index(w["common"])
        if act_t[m][a] != mz or x == mz:
            return False
        in_cyclic = x in cyclic_submodule(M, m).elements
        in_image = any(act_t[mp][a] == x for mp in M.elements())
        return in_cyclic and in_image
    if prop in ("sigma_compatible", "delta_compatible"):
        m = M.element_index(w["m"])
        r = R.element_index(w["r"])
        tables = _twist_tables(P)
        img = _apply_map_word(tables, w["map"], r)
        base = act_t[m][r] == mz
        other = act_t[m][img] == mz
        if prop == "delta_compatible":
            return base and not other
        return base != other
    if prop == "abelian":
        m = M.element_index(w["m"])
        r = R.element_index(w["r"])
        e = R.element_index(w["e"])
        return act_t[act_t[m][r]][e] != act_t[act_t[m][e]][r]
    if prop == "idempotent_stability":
        e = R.element_index(w["e"])
        i = w["i"] - 1
        if w["kind"] == "sigma":
            return P.sigma_tables[i][e] != e
        return P.delta_tables[i][e] != R.zero
    if prop in ("skew_armendariz", "linearly_skew_armendariz"):
        mp = _mpoly_from_struct(M, P, w["m"])
        f = _poly_from_struct(P, w["f"])
        if not act(mp, f).is_zero():
            return False
        m0 = mp.constant_coefficient()
        b = f.coefficient(tuple(w["exp"]))
        return act_t[m0][b] != mz
    if prop == "skew_quasi_armendariz":
        mp = _mpoly_from_struct(M, P, w["m"])
        f = _poly_from_struct(P, w["f"])
        ctx = context(M, P, verdict.bound)
        for r, gamma in ctx.middle_factors():
            middle = P.monomial_poly(gamma, r)
            if not act(mp, middle * f).is_zero():
                return False
        alpha_i = tuple(w["i_exp"])
        beta_j = tuple(w["j_exp"])
        mi = mp.coefficient(alpha_i)
        bj = f.coefficient(beta_j)
        r = R.element_index(w["r"])
        t = tuple(w["t"])
        single = module_poly(M, P, [(alpha_i, mi)])
        mid = P.monomial_poly(t, r) * P.monomial_poly(beta_j, bj)
        return not act(single, mid).is_zero()
    if prop == "pp":
        m = M.element_index(w["m"])
        return idempotent_generator(R, ann_in_r(M, (m,)).elements) is None
    if prop == "pq_baer":
        m = M.element_index(w["m"])
        ideal = ann_in_r(M, cyclic_submodule(M, m).elements)
        return idempotent_generator(R, ideal.elements) is None
    if prop == "quasi_baer":
        elems = frozenset(M.element_index(x) for x in w["submodule"])
        if submodule_closure(M, elems) != elems:
            return False
        return idempotent_generator(R, ann_in_r(M, elems).elements) is None
    if prop == "baer":
        subset = [M.element_index(x) for x in w["subset"]]
        return idempotent_generator(R, ann_in_r(M, subset).elements) is None
    raise ValidationError("bad_witness", prop,
                          f"no replay rule for property {prop!r}")
