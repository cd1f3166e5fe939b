"""Diophantine classification of embedding Chern data.

For a context (m, n) the system collects, with applicability conditions:

* equality of the normal-bundle Chern classes with zero above the normal
  rank and with the Euler class at the rank (Schubert-basis equalities,
  which are unique in every degree);
* numerical non-negativity of the Chern classes of the pullback bundles
  and of the normal bundle up to its rank;
* non-negativity of the intersection numbers defining the Euler class;
* a divisibility condition and a search bound on a, each valid only in
  the stated range of (m, n).

Enumeration scans an explicit integer box, prunes with exact mirrors of
individual constraints, and re-validates every candidate against the
full system, so the survivor set is independent of the pruning order.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import factorial, isqrt

from .chern import (
    EmbeddingContext,
    _bx_mul,
    _bx_pow,
    _bx_solve,
    _engine_inputs,
    _f2m_rows,
    _row_conv,
    _top_value_row,
    cn_total,
)
from .schubert import _reduce_row


# --- small integer series helpers for the enumeration prefilters ----------


def _ser_mul(f, g, order):
    out = [0] * order
    for i, u in enumerate(f[:order]):
        if u:
            for j, v in enumerate(g[: order - i]):
                if v:
                    out[i + j] += u * v
    return out


def _ser_pow(f, e, order):
    out = [0] * order
    out[0] = 1
    base = list(f[:order]) + [0] * max(0, order - len(f))
    while e:
        if e & 1:
            out = _ser_mul(out, base, order)
        base = _ser_mul(base, base, order) if e > 1 else base
        e >>= 1
    return out


def _ser_div(f, g, order):
    q = [0] * order
    for d in range(order):
        acc = f[d] if d < len(f) else 0
        for i in range(1, d + 1):
            gi = g[i] if i < len(g) else 0
            if gi:
                acc -= gi * q[d - i]
        q[d] = acc
    return q


class _Eval:
    """Shared lazy computation for checking one triple against one context.

    Every quantity is computed at most once per triple: the pullbacks of
    the special cycles, the powers of the second-Chern-class image, the
    intersection numbers, and the normal-bundle series (solved first up
    to the normal rank, extended to the top degree only if the vanishing
    equalities are actually reached).
    """

    def __init__(self, ctx, triple):
        self.ctx = ctx
        self.m, self.n = ctx.m, ctx.n
        self.rho = ctx.normal_rank
        self.top = ctx.top_degree
        self.a, self.b, self.c = triple
        self._S = [[1], [self.a]]
        self._B = [[1]]
        self._d = None
        self._e = False
        self._rows = None
        self._cap = -1

    def S(self, s):
        a, b, c = self.a, self.b, self.c
        S = self._S
        while len(S) <= s:
            k = len(S)
            prev, prev2 = S[k - 1], S[k - 2]
            row = [0] * (k // 2 + 1)
            for j, cv in enumerate(prev):
                if cv:
                    row[j] = a * cv
            for j, cv in enumerate(prev2):
                if cv:
                    row[j] -= b * cv
                    row[j + 1] -= c * cv
            S.append(row)
        return S[s]

    def Bq(self, q):
        B = self._B
        while len(B) <= q:
            B.append(_row_conv(B[-1], [self.b, self.c]))
        return B[q]

    def d_values(self):
        if self._d is None:
            m, n, rho = self.m, self.n, self.rho
            d = []
            for i in range(n - m + 1):
                Q = 2 * m - n - 2 + i
                if Q < 0:
                    d.append(0)
                    continue
                d.append(_top_value_row(_row_conv(self.S(rho - 2 * i), self.Bq(Q)), m))
            self._d = d
        return self._d

    def e_terms(self):
        if self._e is False:
            rho = self.rho
            d = self.d_values()
            erow = [0] * (rho // 2 + 1)
            for i in range(self.n - self.m + 1):
                if not d[i]:
                    continue
                prod = _row_conv(self.S(rho - 2 * i), self.Bq(i))
                for j, cv in enumerate(prod):
                    if cv:
                        erow[j] += d[i] * cv
            self._e = _reduce_row(rho, erow, self.m)
        return self._e

    def gamma_terms(self, k):
        if k > self._cap:
            cap = self.rho if k <= self.rho else self.top
            E, F1, F3 = _engine_inputs(self.m, cap, (self.a, self.b, self.c))
            R = _bx_mul(_bx_pow(E, self.n, cap), F3, cap)
            M = _bx_mul(F1, _f2m_rows(self.m, cap), cap)
            self._rows = _bx_solve(R, M, cap)
            self._cap = cap
        return _reduce_row(k, self._rows[k], self.m)


@dataclass
class Constraint:
    """One condition on (a, b, c), tagged with a stable anchor string."""

    anchor: str
    kind: str
    description: str
    applies_when: str
    active: bool
    check: object = field(repr=False, default=None)

    def to_json(self):
        return {
            "anchor": self.anchor,
            "kind": self.kind,
            "description": self.description,
            "applies_when": self.applies_when,
            "active": self.active,
        }


@dataclass
class ConstraintSystem:
    ctx: EmbeddingContext
    constraints: list
    no_constraints: bool

    def active(self):
        return [c for c in self.constraints if c.active]

    def to_json(self):
        return {
            "m": self.ctx.m,
            "n": self.ctx.n,
            "no_constraints": self.no_constraints,
            "constraints": [c.to_json() for c in self.constraints],
        }


def _nonneg(terms):
    return all(v >= 0 for v in terms.values())


def build_system(ctx):
    """Assemble the ordered constraint list for (m, n).

    Constraints are ordered roughly by evaluation cost; the order is
    fixed and deterministic, and each carries its applicability range.
    If the normal rank exceeds the top degree the equality set is empty
    and the system is flagged accordingly.
    """
    m, n = ctx.m, ctx.n
    rho, top = ctx.normal_rank, ctx.top_degree
    no_constraints = rho > top
    cons = []

    b1_active = m >= 9 and 2 * n <= 3 * m - 6
    cons.append(
        Constraint(
            "B1",
            "bound",
            "2a <= m-5",
            "m >= 9 and 2n <= 3m-6",
            b1_active,
            lambda ev: 2 * ev.a <= ev.m - 5,
        )
    )
    cons.append(
        Constraint(
            "D1",
            "divisibility",
            "12 divides a*b*(a^2-b+3)",
            "m >= 7",
            m >= 7,
            lambda ev: (ev.a * ev.b * (ev.a * ev.a - ev.b + 3)) % 12 == 0,
        )
    )
    for anchor, desc, fn in (
        ("I1[cE:1]", "a >= 0", lambda ev: ev.a >= 0),
        ("I1[cE:2a]", "b >= 0", lambda ev: ev.b >= 0),
        ("I1[cE:2b]", "b + c >= 0", lambda ev: ev.b + ev.c >= 0),
    ):
        cons.append(
            Constraint(anchor, "inequality", "coefficient of c(E): " + desc,
                       "always", True, fn)
        )
    for k in range(1, min(n - 2, top) + 1):
        cons.append(
            Constraint(
                "I1[Q:%d]" % k,
                "inequality",
                "Schubert coefficients of c_%d(pullback of Q(2,n)) >= 0" % k,
                "k <= min(n-2, 2m-4)",
                True,
                lambda ev, k=k: _nonneg(_reduce_row(k, ev.S(k), ev.m)),
            )
        )
    if not no_constraints:
        for i in range(n - m + 1):
            cons.append(
                Constraint(
                    "I2[d%d]" % i,
                    "inequality",
                    "intersection number d_%d >= 0" % i,
                    "2n-2m <= 2m-4",
                    True,
                    lambda ev, i=i: ev.d_values()[i] >= 0,
                )
            )
        for k in range(1, rho + 1):
            cons.append(
                Constraint(
                    "I1[N:%d]" % k,
                    "inequality",
                    "Schubert coefficients of c_%d(N) >= 0" % k,
                    "k <= 2n-2m",
                    True,
                    lambda ev, k=k: _nonneg(ev.gamma_terms(k)),
                )
            )
        cons.append(
            Constraint(
                "E2",
                "equality-class",
                "c_%d(N) equals the Euler class of N" % rho,
                "2n-2m <= 2m-4",
                True,
                lambda ev: ev.gamma_terms(rho) == ev.e_terms(),
            )
        )
        for k in range(rho + 1, top + 1):
            cons.append(
                Constraint(
                    "E1[%d]" % k,
                    "equality-class",
                    "c_%d(N) = 0 (degree above the normal rank)" % k,
                    "2n-2m < k <= 2m-4",
                    True,
                    lambda ev, k=k: not ev.gamma_terms(k),
                )
            )
    return ConstraintSystem(ctx, cons, no_constraints)


def check_triple(system, triple, short_circuit=False):
    """Evaluate the system at an integer triple, exactly.

    Returns a dict with the triple, the overall verdict, the anchor of
    the first failing constraint (if any) and the per-constraint trace.
    With ``short_circuit`` the trace stops at the first failure.
    """
    ev = _Eval(system.ctx, triple)
    trace = []
    ok = True
    first_fail = None
    for con in system.constraints:
        if not con.active:
            continue
        res = bool(con.check(ev))
        trace.append({"anchor": con.anchor, "pass": res})
        if not res:
            ok = False
            if first_fail is None:
                first_fail = con.anchor
            if short_circuit:
                break
    return {
        "a": triple[0],
        "b": triple[1],
        "c": triple[2],
        "pass": ok,
        "first_fail": first_fail,
        "trace": trace,
    }


@dataclass(frozen=True)
class Box:
    """Integer search ranges; None bounds track the data-dependent
    defaults b <= a^2 and c >= -b."""

    a_lo: int
    a_hi: int
    b_lo: int = 0
    b_hi: object = None
    c_lo: object = None
    c_hi: int = 0

    def validate(self):
        if self.a_lo > self.a_hi:
            raise ValueError("empty a-range in box")
        if self.b_hi is not None and self.b_lo > self.b_hi:
            raise ValueError("empty b-range in box")
        if self.c_lo is not None and self.c_lo > self.c_hi:
            raise ValueError("empty c-range in box")

    def to_json(self):
        return {
            "a": {"lo": self.a_lo, "hi": self.a_hi},
            "b": {"lo": self.b_lo, "hi": self.b_hi if self.b_hi is not None else "a^2"},
            "c": {"lo": self.c_lo if self.c_lo is not None else "-b", "hi": self.c_hi},
        }


def default_box(ctx):
    """The default search box: a in [1, 4m] (tightened to the proved
    bound when it applies), b in [0, a^2], c in [-b, 4m]."""
    m, n = ctx.m, ctx.n
    a_hi = 4 * m
    if m >= 9 and 2 * n <= 3 * m - 6:
        a_hi = min(a_hi, (m - 5) // 2)
    return Box(1, a_hi, 0, None, None, 4 * m)


def _u_ok(m, n, rho, a, b):
    # x-power projection of the solved normal-bundle class; its
    # coordinates above the rank must vanish (subset of E1).
    order = m - 1
    num = _ser_mul(_ser_pow([1, a, b], n, order), [1, 0, -1], order)
    den = _ser_mul([1, 0, 4 * b - a * a], _ser_pow([1, 1], m, order), order)
    u = _ser_div(num, den, order)
    return not any(u[rho + 1 :])


def _v_ok(m, n, rho, c):
    order = (m - 2) // 2 + 1
    num = _ser_mul(_ser_pow([1, c], n, order), [1, 4], order)
    den = _ser_mul([1, 4 * c], _ser_pow([1, 1], m, order), order)
    v = _ser_div(num, den, order)
    return not any(v[rho // 2 + 1 :])


def _slice_survivors(m, n, box, a_values):
    """Survivors with a in ``a_values``, lexicographically ordered.

    The loop prunes with exact mirrors of individual active constraints
    (leading Schubert coefficients of the quotient pullbacks, the
    divisibility condition, and the two one-variable projections of the
    vanishing equalities); every remaining candidate is validated with
    the full system, so pruning can only skip certain failures.
    """
    ctx = EmbeddingContext(m, n)
    system = build_system(ctx)
    rho = ctx.normal_rank
    d1 = m >= 7
    klead = min(n - 2, m - 2)
    u_on = rho < m - 2
    v_on = rho // 2 + 1 <= (m - 2) // 2
    vpass = {}
    out = []
    for a in a_values:
        b_hi = box.b_hi if box.b_hi is not None else a * a
        for b in range(box.b_lo, b_hi + 1):
            pkm2, pkm1 = 1, a
            ok = True
            for _k in range(2, klead + 1):
                pk = a * pkm1 - b * pkm2
                if pk < 0:
                    ok = False
                    break
                pkm2, pkm1 = pkm1, pk
            if not ok:
                continue
            if d1 and (a * b * (a * a - b + 3)) % 12:
                continue
            if u_on and not _u_ok(m, n, rho, a, b):
                continue
            c_hi = min(box.c_hi, a * a - b)
            if a >= 1 and n >= 5:
                c_hi = min(c_hi, a * a - 2 * b)
            c_lo = -b if box.c_lo is None else max(box.c_lo, -b)
            for c in range(c_lo, c_hi + 1):
                if v_on:
                    vok = vpass.get(c)
                    if vok is None:
                        vok = _v_ok(m, n, rho, c)
                        vpass[c] = vok
                    if not vok:
                        continue
                if check_triple(system, (a, b, c), short_circuit=True)["pass"]:
                    out.append((a, b, c))
    return out


def enumerate_box(system, box=None, jobs=1):
    """All triples in the box satisfying every active constraint.

    The a-range is partitioned into disjoint slices processed
    independently (optionally in parallel); results are merged and
    sorted, so the output does not depend on the degree of parallelism.
    """
    ctx = system.ctx
    if box is None:
        box = default_box(ctx)
    box.validate()
    a_values = list(range(box.a_lo, box.a_hi + 1))
    jobs = max(1, int(jobs))
    if jobs > 1 and len(a_values) > 1:
        jobs = min(jobs, len(a_values))
        chunks = [a_values[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            futures = [
                ex.submit(_slice_survivors, ctx.m, ctx.n, box, chunk)
                for chunk in chunks
            ]
            survivors = list(itertools.chain.from_iterable(f.result() for f in futures))
    else:
        survivors = _slice_survivors(ctx.m, ctx.n, box, a_values)
    survivors.sort()
    return survivors


LINEAR = (1, 0, 1)
TWISTED = (1, 1, -1)


@dataclass(frozen=True)
class BVFamily:
    """A member of one of the two candidate families of rank-2 data:
    a twist of the universal bundle, (2r+1, r(r+1), 1), or a split pair
    of line bundles, (r1+r2, r1*r2, 0)."""

    variant: str
    params: tuple

    def triple(self):
        if self.variant == "tensor-line":
            (r,) = self.params
            return (2 * r + 1, r * (r + 1), 1)
        r1, r2 = self.params
        return (r1 + r2, r1 * r2, 0)


def bv_family_of(triple, m):
    """The family member matching a triple, or None.

    The family parameter is bounded by the same 2a <= m-5 range that
    licenses the decomposability argument.
    """
    a, b, c = triple
    if 2 * a > m - 5:
        return None
    if c == 1 and a >= 1 and a % 2 == 1:
        r = (a - 1) // 2
        if b == r * (r + 1):
            return BVFamily("tensor-line", (r,))
    if c == 0 and a >= 0 and b >= 0:
        disc = a * a - 4 * b
        if disc >= 0:
            s = isqrt(disc)
            if s * s == disc and (a - s) % 2 == 0 and (a - s) >= 0:
                return BVFamily("split-lines", ((a + s) // 2, (a - s) // 2))
    return None


def _bv_member(triple, m):
    return bv_family_of(triple, m) is not None


def bv_filter(ctx, survivors):
    """Intersect survivors with the two rank-2 candidate families.

    Only licensed for m >= 9 and 2n <= 3m-6, where every admissible
    pullback bundle is decomposable or a twist of the universal bundle;
    outside that range the survivors are returned unchanged.  Returns
    (survivors, licensed).
    """
    licensed = ctx.m >= 9 and 2 * ctx.n <= 3 * ctx.m - 6
    if not licensed:
        return list(survivors), False
    return [t for t in survivors if _bv_member(t, ctx.m)], True


@dataclass
class Verdict:
    """Classification outcome for one (m, n)."""

    m: int
    n: int
    mode: str
    box: Box
    classification: str
    survivors: list
    notes: list

    def survivor_triples(self):
        return [(s["a"], s["b"], s["c"]) for s in self.survivors]

    def to_json(self):
        return {
            "m": self.m,
            "n": self.n,
            "mode": self.mode,
            "box": self.box.to_json() if self.box is not None else None,
            "classification": self.classification,
            "survivors": [
                {"a": s["a"], "b": s["b"], "c": s["c"], "trace": s["trace"]}
                for s in self.survivors
            ],
            "notes": self.notes,
        }


def classify(ctx, mode="full", box=None, jobs=1):
    """Run the pipeline for (m, n) and classify the surviving Chern data.

    ``mode="numeric"`` stops after enumerating the constraint system;
    ``mode="full"`` additionally applies the family filter where it is
    licensed, then re-checks every survivor against the full system.
    """
    if mode not in ("numeric", "full"):
        raise ValueError("mode must be 'numeric' or 'full'")
    if ctx.normal_rank > ctx.top_degree:
        return Verdict(
            ctx.m,
            ctx.n,
            mode,
            box if box is not None else default_box(ctx),
            "NoConstraints",
            [],
            ["normal rank 2n-2m exceeds the top degree 2m-4: no equations arise"],
        )
    system = build_system(ctx)
    if box is None:
        box = default_box(ctx)
    triples = enumerate_box(system, box, jobs=jobs)
    notes = []
    if mode == "full":
        triples, licensed = bv_filter(ctx, triples)
        notes.append(
            "bv-filter: applied (rank-2 decomposability range)"
            if licensed
            else "bv-filter: outside its range, survivors unchanged"
        )
    survivors = []
    for t in triples:
        res = check_triple(system, t)
        if not res["pass"]:
            raise AssertionError("survivor %r failed re-validation" % (t,))
        survivors.append(res)
    got = set(ctx_triple for ctx_triple in triples)
    if got == {LINEAR}:
        classification = "LinearOnly"
    elif got == {LINEAR, TWISTED}:
        classification = "LinearOrTwisted"
    else:
        classification = "Inconclusive"
    return Verdict(ctx.m, ctx.n, mode, box, classification, survivors, notes)


IMPOSSIBLE_PAIR_SAMPLES = (
    ((3, 2), (10, 13), "m <= n <= (3m-4)/2"),
    ((4, 3), (10, 13), "m <= n <= (3m-4)/2"),
    ((5, 4), (10, 13), "m <= n <= (3m-4)/2"),
    ((5, 5), (8, 9), "7 <= m <= n"),
    ((5, 6), (10, 14), "m <= n <= (3m-2)/2"),
)


def verify_impossible_pairs():
    """Confirm that the five impossible (a, b) pairs admit no c at all.

    Each pair is sampled at an (m, n) inside its stated range and scanned
    over the default c-range; the report records whether every c failed
    and which anchor rejected the first one.
    """
    report = []
    for (a, b), (m, n), rng in IMPOSSIBLE_PAIR_SAMPLES:
        ctx = EmbeddingContext(m, n)
        system = build_system(ctx)
        all_fail = True
        first_anchor = None
        lo, hi = -b, 4 * m
        for c in range(lo, hi + 1):
            res = check_triple(system, (a, b, c), short_circuit=True)
            if res["pass"]:
                all_fail = False
            elif first_anchor is None:
                first_anchor = res["first_fail"]
        report.append(
            {
                "a": a,
                "b": b,
                "m": m,
                "n": n,
                "range": rng,
                "c_lo": lo,
                "c_hi": hi,
                "all_fail": all_fail,
                "first_fail": first_anchor,
            }
        )
    return report


def derived_fact_report(ctx, survivors):
    """Check the proved consequences on a survivor list.

    In the range m <= n <= (3m-6)/2 every survivor must satisfy c >= 1,
    a^2 > 4b, and the integral lower bound
    (m-2)! (m-1)! alpha_rho >= (2m-4)! b^(n-2).
    Outside the range the facts are reported as not applicable.
    """
    m, n = ctx.m, ctx.n
    in_range = m <= n and 2 * n <= 3 * m - 6
    rows = []
    for t in survivors:
        a, b, c = t
        row = {"a": a, "b": b, "c": c, "applicable": in_range}
        if in_range:
            cn = cn_total(ctx, t, up_to=ctx.normal_rank)
            alpha_rho = cn.rows[ctx.normal_rank][0]
            row["c_ge_1"] = c >= 1
            row["a2_gt_4b"] = a * a > 4 * b
            row["alpha_bound"] = (
                factorial(m - 2) * factorial(m - 1) * alpha_rho
                >= factorial(2 * m - 4) * b ** (n - 2)
            )
            row["ok"] = row["c_ge_1"] and row["a2_gt_4b"] and row["alpha_bound"]
        else:
            row["ok"] = True
        rows.append(row)
    return rows
