"""Symbolic Chern-class computations for a hypothetical embedding
Gr(2, m) -> Gr(2, n) whose pullback bundle has Chern data (a, b, c):
c_1 = a*w[1,0] and c_2 = b*w[1,0]^2 + c*w[1,1].

The engine works internally with monomial-basis representatives, i.e.
graded polynomials in x = w[1,0] and y = w[1,1] truncated above the top
degree 2m-4, and reduces to the Schubert basis (which is unique in every
degree) whenever coefficients are read off or compared.  Everything runs
in two modes: symbolic, with PolyABC coefficients, and evaluated, with
the integer triple substituted first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .ring import PolyABC, TruncSeries, binomial, coeff_to_json
from .schubert import STABLE, SchubertClass, _in_box, _mul_terms, _reduce_row


@dataclass(frozen=True)
class EmbeddingContext:
    """The pair (m, n) of a source and target Grassmannian Gr(2, *)."""

    m: int
    n: int

    def __post_init__(self):
        if not (isinstance(self.m, int) and isinstance(self.n, int)):
            raise ValueError("m and n must be integers")
        if not self.n >= self.m >= 4:
            raise ValueError("need n >= m >= 4, got m=%r n=%r" % (self.m, self.n))

    @property
    def normal_rank(self):
        """Rank of the normal bundle, 2n - 2m."""
        return 2 * (self.n - self.m)

    @property
    def top_degree(self):
        """Top cohomological degree of the source, 2m - 4."""
        return 2 * self.m - 4


class SymClass:
    """A graded class on Gr(2, m) with coefficients in Z[a, b, c].

    Mirrors :class:`~grasslin.schubert.SchubertClass` with polynomial
    coefficients; the box truncation and basis conventions are identical.
    """

    __slots__ = ("m", "terms")

    def __init__(self, m, terms=None):
        if m != STABLE and not (isinstance(m, int) and m >= 4):
            raise ValueError("ambient must be an int >= 4 or STABLE, got %r" % (m,))
        self.m = m
        t = {}
        if terms:
            for (i, j), val in terms.items():
                if not (isinstance(i, int) and isinstance(j, int) and i >= j >= 0):
                    raise ValueError("not a Schubert type: (%r, %r)" % (i, j))
                if val and _in_box(m, i):
                    t[(i, j)] = val
        self.terms = t

    @classmethod
    def unit(cls, m):
        return cls(m, {(0, 0): 1})

    def _compat(self, other):
        if not isinstance(other, SymClass):
            return None
        if other.m != self.m:
            raise ValueError("ambient mismatch: %r vs %r" % (self.m, other.m))
        return other

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SymClass):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __getitem__(self, key):
        return self.terms.get(key, 0)

    def __neg__(self):
        return SymClass(self.m, {k: -v for k, v in self.terms.items()})

    def __add__(self, other):
        o = self._compat(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for k, v in o.terms.items():
            w = t.get(k, 0) + v
            if w:
                t[k] = w
            elif k in t:
                del t[k]
        out = SymClass.__new__(SymClass)
        out.m = self.m
        out.terms = t
        return out

    def __sub__(self, other):
        o = self._compat(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __mul__(self, other):
        if isinstance(other, (int, PolyABC)):
            if not other:
                return SymClass(self.m)
            return SymClass(self.m, {k: v * other for k, v in self.terms.items()})
        o = self._compat(other)
        if o is None:
            return NotImplemented
        out = SymClass.__new__(SymClass)
        out.m = self.m
        out.terms = _mul_terms(self.m, self.terms, o.terms)
        return out

    def __rmul__(self, other):
        if isinstance(other, (int, PolyABC)):
            return self * other
        return NotImplemented

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = SymClass.unit(self.m)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def degree_pieces(self):
        pieces = {}
        for (i, j), v in self.terms.items():
            pieces.setdefault(i + j, {})[(i, j)] = v
        return {d: SymClass(self.m, t) for d, t in sorted(pieces.items())}

    def pure_degree(self):
        degs = {i + j for (i, j) in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def evaluate(self, triple):
        """Substitute an integer triple for (a, b, c)."""
        out = {}
        for k, v in self.terms.items():
            out[k] = v.evaluate(triple) if isinstance(v, PolyABC) else v
        return SchubertClass(self.m, out)

    def to_json(self):
        return {
            "m": self.m,
            "terms": [
                {"i": k[0], "j": k[1], "coeff": coeff_to_json(self.terms[k])}
                for k in sorted(self.terms)
            ],
        }

    @classmethod
    def from_json(cls, obj):
        terms = {}
        for t in obj["terms"]:
            coeff = t["coeff"]
            terms[(t["i"], t["j"])] = (
                int(coeff) if isinstance(coeff, str) else PolyABC.from_json(coeff)
            )
        return cls(obj["m"], terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            v = self.terms[key]
            if isinstance(v, PolyABC) and not (v.is_constant()):
                parts.append("(%r)*w[%d,%d]" % (v, key[0], key[1]))
            else:
                c = v.constant_value() if isinstance(v, PolyABC) else v
                body = "w[%d,%d]" % key
                if abs(c) != 1:
                    body = "%d*%s" % (abs(c), body)
                parts.append(body if c > 0 else "-" + body)
        return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# Graded arithmetic on monomial-basis representatives.
#
# A graded value is a list of rows; rows[d][j] is the coefficient of
# x^(d-2j) * y^j.  Rows may be shorter than d//2+1 (missing entries are
# zero), and lists may stop before the cap.  These containers are plain
# lists for speed in the solver's inner loop.


def _bx_mul(u, v, cap):
    w = [[0] * (d // 2 + 1) for d in range(cap + 1)]
    for d1, row1 in enumerate(u):
        if d1 > cap:
            break
        lim = cap - d1
        for j1, c1 in enumerate(row1):
            if not c1:
                continue
            for d2 in range(min(len(v) - 1, lim) + 1):
                wrow = w[d1 + d2]
                for j2, c2 in enumerate(v[d2]):
                    if c2:
                        wrow[j1 + j2] = wrow[j1 + j2] + c1 * c2
    return w


def _bx_pow(u, e, cap):
    result = [[1]]
    base = u
    while e:
        if e & 1:
            result = _bx_mul(result, base, cap)
        base = _bx_mul(base, base, cap) if e > 1 else base
        e >>= 1
    return result


def _bx_solve(R, M, cap):
    """G with G * M = R modulo degrees > cap; M must have constant term +-1."""
    inv0 = M[0][0]
    if inv0 not in (1, -1):
        raise ValueError("multiplier constant term must be +1 or -1")
    G = []
    for d in range(cap + 1):
        row = [0] * (d // 2 + 1)
        if d < len(R):
            for j, c in enumerate(R[d]):
                row[j] = c
        for e in range(1, min(d, len(M) - 1) + 1):
            Gde = G[d - e]
            for j1, c1 in enumerate(M[e]):
                if not c1:
                    continue
                for j2, c2 in enumerate(Gde):
                    if c2:
                        row[j1 + j2] = row[j1 + j2] - c1 * c2
        if inv0 == -1:
            row = [-x for x in row]
        G.append(row)
    return G


def _row_conv(r1, r2):
    """Product of two pure-degree rows (degrees add)."""
    out = [0] * (len(r1) + len(r2) - 1)
    for j1, c1 in enumerate(r1):
        if not c1:
            continue
        for j2, c2 in enumerate(r2):
            if c2:
                out[j1 + j2] = out[j1 + j2] + c1 * c2
    return out


@lru_cache(maxsize=None)
def _catalan(u):
    return binomial(2 * u, u) - binomial(2 * u, u - 1)


def _top_value_row(row, m):
    """Value in Z of a degree-(2m-4) row under w[m-2, m-2] -> 1."""
    total = 0
    for j, cv in enumerate(row):
        if cv:
            total = total + cv * _catalan(m - 2 - j)
    return total


@lru_cache(maxsize=None)
def _f2m_rows(m, cap):
    """(1 + x + y)^m truncated at cap, as immutable integer rows."""
    rows = _bx_pow([[1], [1], [0, 1]], m, cap)
    return tuple(tuple(r) for r in rows)


def _engine_inputs(m, cap, triple=None):
    """Bivariate forms of c(E), c(Edual x E) and c(E(2,m) x Edual(2,m))."""
    a, b, c = triple if triple is not None else PolyABC.gens()
    E = [[1], [a], [b, c]][: cap + 1]
    F1 = [[1], [0], [4 * b - a * a, 4 * c]][: cap + 1]
    F3 = [[1], [0], [-1, 4]][: cap + 1]
    return E, F1, F3


def _pullback_gens(triple=None):
    a, b, c = triple if triple is not None else PolyABC.gens()
    return a, b, c


def _special_rows(a, b, c, smax):
    """Rows of the pullbacks of the special cycles w~[s, 0], s = 0..smax.

    Uses the two-step recurrence of the special-cycle expansion:
    S_s = a*x*S_(s-1) - (b*x^2 + c*y)*S_(s-2).
    """
    S = [[1]]
    if smax >= 1:
        S.append([a])
    for s in range(2, smax + 1):
        prev, prev2 = S[s - 1], S[s - 2]
        row = [0] * (s // 2 + 1)
        for j, cv in enumerate(prev):
            if cv:
                row[j] = a * cv
        for j, cv in enumerate(prev2):
            if cv:
                row[j] = row[j] - b * cv
                row[j + 1] = row[j + 1] - c * cv
        S.append(row)
    return S


def _bpow_rows(b, c, qmax):
    """Rows of (b*x^2 + c*y)^q for q = 0..qmax."""
    B = [[1]]
    for q in range(1, qmax + 1):
        B.append(_row_conv(B[q - 1], [b, c]))
    return B


# ---------------------------------------------------------------------------
# Public constructions.


def chern_E(m, triple=None):
    """Total Chern class of the pullback bundle, Schubert basis.

    1 + a*w[1,0] + b*w[2,0] + (b+c)*w[1,1]; symbolic unless an integer
    triple is supplied.
    """
    a, b, c = _pullback_gens(triple)
    cls = SymClass(m, {(0, 0): 1, (1, 0): a, (2, 0): b, (1, 1): b + c})
    return cls.evaluate(triple) if triple is not None else cls


def chern_factors(m):
    """The four total Chern classes entering the normal-bundle equation.

    Returns (c(E), c(Edual x E), c(Edual(2,m)), c(E(2,m) x Edual(2,m)))
    as symbolic classes.
    """
    a, b, c = PolyABC.gens()
    cE = chern_E(m)
    cEdE = SymClass(
        m, {(0, 0): 1, (2, 0): 4 * b - a * a, (1, 1): 4 * b - a * a + 4 * c}
    )
    cEd2m = SymClass(m, {(0, 0): 1, (1, 0): 1, (1, 1): 1})
    cEEd = SymClass(m, {(0, 0): 1, (2, 0): -1, (1, 1): 3})
    return cE, cEdE, cEd2m, cEEd


def chern_universal(d, m):
    """Total Chern class of the universal bundle on Gr(d, m):
    1 + sum_k (-1)^k w[1,...,1,0,...,0] with k ones."""
    if not d < m:
        raise ValueError("need d < m")
    out = {(0,) * d: 1}
    for k in range(1, d + 1):
        out[(1,) * k + (0,) * (d - k)] = (-1) ** k
    return out


def chern_quotient(d, m):
    """Total Chern class of the universal quotient bundle on Gr(d, m):
    1 + sum_k w[k, 0, ..., 0]."""
    if not d < m:
        raise ValueError("need d < m")
    out = {(0,) * d: 1}
    for k in range(1, m - d + 1):
        out[(k,) + (0,) * (d - 1)] = 1
    return out


def pullback_cycle(ctx, p, triple=None):
    """Image of the target Schubert cycle w~[p] under the pullback.

    Computed by writing w~[P,Q] = w~[P-Q,0] * w~[1,1]^Q, expanding the
    special factor through the two-step recurrence, substituting the
    generator images and reducing on Gr(2, m).
    """
    P, Q = p
    if not (isinstance(P, int) and isinstance(Q, int) and P >= Q >= 0):
        raise ValueError("not a Schubert type: (%r, %r)" % (P, Q))
    if P > ctx.n - 2:
        raise ValueError("(%d, %d) outside the box for the target n=%d" % (P, Q, ctx.n))
    a, b, c = _pullback_gens(triple)
    if P + Q > ctx.top_degree:
        return (
            SchubertClass(ctx.m) if triple is not None else SymClass(ctx.m)
        )
    row = _row_conv(_special_rows(a, b, c, P - Q)[P - Q], _bpow_rows(b, c, Q)[Q])
    terms = _reduce_row(P + Q, row, ctx.m)
    if triple is not None:
        return SchubertClass(ctx.m, terms)
    return SymClass(ctx.m, terms)


@dataclass
class EulerData:
    """Euler-class data of the normal bundle.

    ``d[i]`` is the top-degree value of the pullback of
    w~[n-2-i, 2m-n-2+i]; ``e_terms`` is the assembled degree-(2n-2m)
    Euler class in the Schubert basis; ``gamma[i]`` is the leading
    monomial coordinate of the pullback of w~[2n-2m-2i, 0].
    """

    m: int
    n: int
    mode: str
    d: list
    e_terms: dict
    gamma: list

    def euler_class(self):
        cls = SymClass if self.mode == "symbolic" else SchubertClass
        return cls(self.m, self.e_terms)

    def to_json(self):
        return {
            "m": self.m,
            "n": self.n,
            "mode": self.mode,
            "d": [coeff_to_json(v) for v in self.d],
            "e": self.euler_class().to_json(),
            "gamma": [coeff_to_json(v) for v in self.gamma],
        }


def euler_class(ctx, triple=None):
    """Intersection numbers d_i and the Euler class of the normal bundle.

    e = sum_i d_i * pullback(w~[2n-2m-i, i]), where each d_i is the
    top-degree evaluation of the pullback of the complementary cycle
    w~[n-2-i, 2m-n-2+i].  When 2n-2m exceeds 2m-4 the class vanishes
    identically and only the d_i are reported.
    """
    m, n = ctx.m, ctx.n
    rho = ctx.normal_rank
    a, b, c = _pullback_gens(triple)
    S = _special_rows(a, b, c, rho)
    B = _bpow_rows(b, c, m - 2)
    d = []
    for i in range(n - m + 1):
        Q = 2 * m - n - 2 + i
        if Q < 0:
            d.append(0)
            continue
        d.append(_top_value_row(_row_conv(S[rho - 2 * i], B[Q]), m))
    if rho <= ctx.top_degree:
        erow = [0] * (rho // 2 + 1)
        for i in range(n - m + 1):
            if not d[i]:
                continue
            prod = _row_conv(S[rho - 2 * i], B[i])
            for j, cv in enumerate(prod):
                if cv:
                    erow[j] = erow[j] + d[i] * cv
        e_terms = _reduce_row(rho, erow, m)
    else:
        e_terms = {}
    gamma = [
        (S[rho - 2 * i][0] if rho - 2 * i <= m - 2 else 0) for i in range(n - m + 1)
    ]
    mode = "evaluated" if triple is not None else "symbolic"
    return EulerData(m, n, mode, d, e_terms, gamma)


@dataclass
class CNSeries:
    """The total Chern class of the normal bundle, solved degree by degree.

    ``gamma[k]`` is the degree-k piece in the Schubert basis; ``rows[k]``
    is its monomial-basis representative; ``alpha``/``beta`` are the
    leading and trailing monomial coordinates for
    k <= min(2n-2m, m-2), the range where they are well defined.
    """

    m: int
    n: int
    mode: str
    gamma: list
    alpha: list
    beta: list
    rows: list

    def gamma_class(self, k):
        cls = SymClass if self.mode == "symbolic" else SchubertClass
        return cls(self.m, self.gamma[k])

    def to_json(self):
        cls = SymClass if self.mode == "symbolic" else SchubertClass
        return {
            "m": self.m,
            "n": self.n,
            "mode": self.mode,
            "gamma": [cls(self.m, g).to_json() for g in self.gamma],
            "alpha": [coeff_to_json(v) for v in self.alpha],
            "beta": [coeff_to_json(v) for v in self.beta],
        }


def cn_total(ctx, triple=None, up_to=None):
    """Solve the normal-bundle equation for the total class Gamma.

    Gamma * c(Edual x E) * c(Edual(2,m))^m = c(E)^n * c(E(2,m) x Edual(2,m))
    holds in H*(Gr(2, m)); since the multiplier has unit constant term the
    solution is unique, obtained degree by degree by forward substitution.
    ``up_to`` caps the solved degree (defaults to the top degree 2m-4).
    """
    m, n = ctx.m, ctx.n
    cap = ctx.top_degree if up_to is None else min(up_to, ctx.top_degree)
    E, F1, F3 = _engine_inputs(m, cap, triple)
    R = _bx_mul(_bx_pow(E, n, cap), F3, cap)
    M = _bx_mul(F1, _f2m_rows(m, cap), cap)
    rows = _bx_solve(R, M, cap)
    gamma = [_reduce_row(d, rows[d], m) for d in range(cap + 1)]
    kmax = min(ctx.normal_rank, m - 2, cap)
    alpha = [rows[k][0] for k in range(kmax + 1)]
    beta = [rows[k][k // 2] for k in range(kmax + 1)]
    mode = "evaluated" if triple is not None else "symbolic"
    return CNSeries(m, n, mode, gamma, alpha, beta, rows)


def _require_refined_range(ctx):
    if not (ctx.m <= ctx.n and 2 * ctx.n <= 3 * ctx.m - 2):
        raise ValueError(
            "refined equations need m <= n <= (3m-2)/2, got m=%d n=%d" % (ctx.m, ctx.n)
        )


def refined_eq_10(ctx, triple=None, cn=None):
    """Both sides of the one-variable equation in x = w[1,0]:

    proj(Gamma) * (1 + (4b-a^2) x^2) * (1+x)^(m-1) = (1 + a x + b x^2)^n (1-x)

    in Z[x]/(x^(m-1)).  proj(Gamma) is the x-power projection of the
    solved normal-bundle class; on Chern data of an actual embedding it
    is the finite sum of the alpha coordinates up to the normal rank.
    """
    _require_refined_range(ctx)
    m, n = ctx.m, ctx.n
    if cn is None:
        cn = cn_total(ctx, triple)
    if len(cn.rows) < m - 1:
        raise ValueError("normal-bundle series solved to too low a degree")
    a, b, c = _pullback_gens(triple)
    order = m - 1
    u = TruncSeries(order, [cn.rows[k][0] for k in range(order)])
    lhs = u * TruncSeries(order, [1, 0, 4 * b - a * a]) * TruncSeries(order, [1, 1]) ** (m - 1)
    rhs = TruncSeries(order, [1, a, b]) ** n * TruncSeries(order, [1, -1])
    return lhs, rhs


def refined_eq_11(ctx, triple=None, cn=None):
    """Both sides of the one-variable equation in y = w[1,1]:

    proj(Gamma) * (1 + 4c y) * (1+y)^m = (1 + c y)^n (1 + 4y)

    in Z[y]/(y^(floor((m-2)/2)+1)).
    """
    _require_refined_range(ctx)
    m, n = ctx.m, ctx.n
    if cn is None:
        cn = cn_total(ctx, triple)
    order = (m - 2) // 2 + 1
    if len(cn.rows) < 2 * (order - 1) + 1:
        raise ValueError("normal-bundle series solved to too low a degree")
    a, b, c = _pullback_gens(triple)
    v = TruncSeries(order, [cn.rows[2 * jj][jj] for jj in range(order)])
    lhs = v * TruncSeries(order, [1, 4 * c]) * TruncSeries(order, [1, 1]) ** m
    rhs = TruncSeries(order, [1, c]) ** n * TruncSeries(order, [1, 4])
    return lhs, rhs
