"""The cohomology ring of Gr(2, m) over the integers.

Classes are sparse combinations of Schubert cycles w[i, j] with
m-2 >= i >= j >= 0 (cycles outside that box are zero).  Products use the
refined Pieri rule for d = 2; a general-d special-cycle Pieri
multiplication is provided as an independent oracle.  The ambient
dimension m is carried by every class; the sentinel STABLE means "no box
truncation", for identities that hold in every sufficiently large m.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial

from .ring import TruncSeries, binomial

STABLE = "stable"


def _check_ambient(m):
    if m == STABLE:
        return STABLE
    if isinstance(m, int) and m >= 4:
        return m
    raise ValueError("ambient must be an int >= 4 or STABLE, got %r" % (m,))


def _check_key(i, j):
    if not (isinstance(i, int) and isinstance(j, int) and i >= j >= 0):
        raise ValueError("not a Schubert type: (%r, %r)" % (i, j))


def _in_box(m, i):
    return m == STABLE or i <= m - 2


@lru_cache(maxsize=None)
def _ballot_row(p):
    """Coefficients of w[1,0]^p on the basis w[p-t, t], stable range.

    The t-th entry is C(p, t) - C(p, t-1); validated against iterated
    Pieri multiplication in the test suite.
    """
    return tuple(binomial(p, t) - binomial(p, t - 1) for t in range(p // 2 + 1))


def _reduce_row(d, row, m):
    """Schubert coefficients of sum_j row[j] * w[1,0]^(d-2j) * w[1,1]^j.

    ``row`` indexes the w[1,1]-exponent j; the result is a dict keyed by
    Schubert types of degree d, with box truncation applied.
    """
    out = {}
    for j, cv in enumerate(row):
        if not cv:
            continue
        for t, w in enumerate(_ballot_row(d - 2 * j)):
            i = d - j - t
            if _in_box(m, i):
                key = (i, j + t)
                acc = out.get(key, 0) + cv * w
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
    return out


def _mul_terms(m, t1, t2):
    """Product of two term maps under the refined Pieri rule.

    Each pair w[i1,j1] * w[i2,j2] is computed by pulling out
    w[1,1]^(j1+j2) and expanding the special-cycle product
    w[i1-j1, 0] * w[i2-j2, 0]; terms leaving the box are dropped.
    """
    out = {}
    for (i1, j1), c1 in t1.items():
        if not c1:
            continue
        for (i2, j2), c2 in t2.items():
            cc = c1 * c2
            if not cc:
                continue
            s = j1 + j2
            p = i1 - j1
            q = i2 - j2
            if p > q:
                p, q = q, p
            for t in range(p + 1):
                i = p + q - t + s
                if _in_box(m, i):
                    key = (i, t + s)
                    acc = out.get(key, 0) + cc
                    if acc:
                        out[key] = acc
                    elif key in out:
                        del out[key]
    return out


class SchubertClass:
    """An integer cohomology class of Gr(2, m) in the Schubert basis."""

    __slots__ = ("m", "terms")

    def __init__(self, m, terms=None):
        self.m = _check_ambient(m)
        t = {}
        if terms:
            for (i, j), val in terms.items():
                _check_key(i, j)
                if val and _in_box(self.m, i):
                    t[(i, j)] = val
        self.terms = t

    @classmethod
    def omega(cls, m, i, j, coeff=1):
        return cls(m, {(i, j): coeff})

    @classmethod
    def unit(cls, m):
        return cls(m, {(0, 0): 1})

    @classmethod
    def zero(cls, m):
        return cls(m)

    def _compat(self, other):
        if not isinstance(other, SchubertClass):
            return None
        if other.m != self.m:
            raise ValueError("ambient mismatch: %r vs %r" % (self.m, other.m))
        return other

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SchubertClass):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def __getitem__(self, key):
        return self.terms.get(key, 0)

    def __neg__(self):
        return SchubertClass(self.m, {k: -v for k, v in self.terms.items()})

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
        out = SchubertClass.__new__(SchubertClass)
        out.m = self.m
        out.terms = t
        return out

    def __sub__(self, other):
        o = self._compat(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return SchubertClass(self.m)
            return SchubertClass(self.m, {k: v * other for k, v in self.terms.items()})
        o = self._compat(other)
        if o is None:
            return NotImplemented
        out = SchubertClass.__new__(SchubertClass)
        out.m = self.m
        out.terms = _mul_terms(self.m, self.terms, o.terms)
        return out

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = SchubertClass.unit(self.m)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def degree_pieces(self):
        """Split into pure-degree classes, keyed by degree i + j."""
        pieces = {}
        for (i, j), v in self.terms.items():
            pieces.setdefault(i + j, {})[(i, j)] = v
        return {d: SchubertClass(self.m, t) for d, t in sorted(pieces.items())}

    def pure_degree(self):
        """The common degree of all terms, or None if mixed or zero."""
        degs = {i + j for (i, j) in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def to_json(self):
        return {
            "m": self.m,
            "terms": [
                {"i": k[0], "j": k[1], "coeff": str(self.terms[k])}
                for k in sorted(self.terms)
            ],
        }

    @classmethod
    def from_json(cls, obj):
        return cls(obj["m"], {(t["i"], t["j"]): int(t["coeff"]) for t in obj["terms"]})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            v = self.terms[key]
            body = "w[%d,%d]" % key
            if abs(v) != 1:
                body = "%d*%s" % (abs(v), body)
            if not parts:
                parts.append(body if v > 0 else "-" + body)
            else:
                parts.append(("+ " if v > 0 else "- ") + body)
        return " ".join(parts)


def mul2(m, A, B):
    """Product in H*(Gr(2, m)); A and B must share the ambient m."""
    if A.m != m or B.m != m:
        raise ValueError("ambient mismatch")
    return A * B


def pieri_special(d, m, cls, h):
    """Multiply a general Gr(d, m) class by the special cycle w[h, 0, ..., 0].

    ``cls`` maps weakly decreasing d-tuples (inside the (m-d) x d box) to
    coefficients.  The product is the sum over all interlacing types
    obtained by adding h boxes, per Pieri's rule; the linear extension is
    returned as a new term map.
    """
    if not (isinstance(d, int) and d >= 1 and isinstance(m, int) and m > d):
        raise ValueError("need integers m > d >= 1")
    if not (0 <= h <= m - d):
        raise ValueError("special index h=%r out of range [0, %d]" % (h, m - d))
    out = {}
    for part, coeff in cls.items():
        part = tuple(part)
        if len(part) != d or any(
            part[i] < part[i + 1] for i in range(d - 1)
        ) or part[-1] < 0 or part[0] > m - d:
            raise ValueError("partition %r outside the (%d x %d) box" % (part, m - d, d))
        if not coeff:
            continue
        for b in _interlacings(part, h, m - d):
            acc = out.get(b, 0) + coeff
            if acc:
                out[b] = acc
            elif b in out:
                del out[b]
    return out


def _interlacings(a, h, cap):
    """All b with cap >= b_1 >= a_1 >= b_2 >= a_2 >= ... and |b| = |a| + h."""
    d = len(a)
    results = []

    def rec(idx, remaining, prefix):
        if idx == d:
            if remaining == 0:
                results.append(tuple(prefix))
            return
        hi = cap if idx == 0 else a[idx - 1]
        lo = a[idx]
        for b in range(lo, min(hi, lo + remaining) + 1):
            prefix.append(b)
            rec(idx + 1, remaining - (b - lo), prefix)
            prefix.pop()

    rec(0, h, [])
    return results


def dual_cycle(m, p):
    """The complementary-degree type pairing to 1 with w[p]."""
    if m == STABLE:
        raise ValueError("dual cycle needs a finite ambient m")
    i, j = p
    _check_key(i, j)
    if not _in_box(m, i):
        raise ValueError("(%d, %d) outside the box for m=%d" % (i, j, m))
    return (m - 2 - j, m - 2 - i)


def pairing(m, A, B):
    """Evaluate a product of complementary pure degrees in the top cell.

    Requires deg A + deg B = 2m - 4; only dual pairs of basis elements
    contribute, each with multiplicity one.
    """
    if m == STABLE:
        raise ValueError("pairing needs a finite ambient m")
    if A.m != m or B.m != m:
        raise ValueError("ambient mismatch")
    if not A.terms or not B.terms:
        return 0
    da, db = A.pure_degree(), B.pure_degree()
    if da is None or db is None or da + db != 2 * m - 4:
        raise ValueError("degree mismatch: need pure degrees summing to %d" % (2 * m - 4))
    total = 0
    for (i, j), cA in A.terms.items():
        cB = B.terms.get((m - 2 - j, m - 2 - i))
        if cB:
            total = total + cA * cB
    return total


def degree_of(m, p):
    """The top intersection w[p] * w[1,0]^(2m-4-i-j) as an integer.

    This is the two-row hook-length count
    (2m-4-i-j)! (i-j+1) / ((m-2-i)! (m-1-j)!), the number of standard
    tableaux on the complementary shape.
    """
    if m == STABLE:
        raise ValueError("degree needs a finite ambient m")
    i, j = p
    _check_key(i, j)
    if not _in_box(m, i):
        raise ValueError("(%d, %d) outside the box for m=%d" % (i, j, m))
    num = factorial(2 * m - 4 - i - j) * (i - j + 1)
    den = factorial(m - 2 - i) * factorial(m - 1 - j)
    return num // den


@lru_cache(maxsize=None)
def _monomial_expansion(m, k, i):
    """Schubert terms of w[1,0]^(k-2i) * w[1,1]^i on Gr(2, m)."""
    out = {}
    for t, w in enumerate(_ballot_row(k - 2 * i)):
        if w and _in_box(m, k - i - t):
            out[(k - i - t, i + t)] = w
    return out


def to_monomial(m, A, degree=None):
    """Coordinates of a pure class on the monomial basis
    w[1,0]^(k-2i) * w[1,1]^i, i = 0..k//2.

    Only valid in degrees k <= m - 2, where that family is a basis; the
    change of basis is triangular with unit diagonal, so the coordinates
    are solved by forward elimination.  The i = 0 entry always equals the
    w[k, 0] coefficient of A.
    """
    if m == STABLE:
        raise ValueError("monomial coordinates need a finite ambient m")
    if A.m != m:
        raise ValueError("ambient mismatch")
    k = A.pure_degree()
    if k is None:
        if degree is None:
            raise ValueError("class is zero or mixed; pass an explicit degree")
        k = degree
    elif degree is not None and degree != k:
        raise ValueError("declared degree %d does not match class degree %d" % (degree, k))
    if k > m - 2:
        raise ValueError(
            "degree %d > m-2 = %d: monomial family is no longer a basis" % (k, m - 2)
        )
    coords = []
    for i in range(k // 2 + 1):
        acc = A.terms.get((k - i, i), 0)
        for ip in range(i):
            w = _monomial_expansion(m, k, ip).get((k - i, i), 0)
            if w:
                acc = acc - w * coords[ip]
        coords.append(acc)
    return coords


def expand_monomials(m, k, coords):
    """Inverse of :func:`to_monomial`, computed through mul2 products."""
    x = SchubertClass.omega(m, 1, 0)
    y = SchubertClass.omega(m, 1, 1)
    total = SchubertClass.zero(m)
    for i, c in enumerate(coords):
        if c:
            total = total + (x ** (k - 2 * i)) * (y**i) * c
    return total


def project_q10(A):
    """Image in Z[w10]/(w10^(m-1)), as a series in x = w[1, 0].

    The x^k coordinate of a degree-k piece (k <= m-2) equals its
    w[k, 0] Schubert coefficient; all higher-degree pieces die in the
    quotient.
    """
    m = A.m
    if m == STABLE:
        raise ValueError("projection needs a finite ambient m")
    return TruncSeries(m - 1, [A.terms.get((k, 0), 0) for k in range(m - 1)])


def project_q11(A):
    """Image in Z[w11]/(w11^(floor((m-2)/2)+1)), as a series in y = w[1, 1].

    The y^j coordinate is the last monomial coordinate of the degree-2j
    piece; pieces of degree > m-2 die in the quotient.
    """
    m = A.m
    if m == STABLE:
        raise ValueError("projection needs a finite ambient m")
    q = (m - 2) // 2
    pieces = A.degree_pieces()
    coeffs = []
    for j in range(q + 1):
        piece = pieces.get(2 * j)
        if piece is None:
            coeffs.append(0)
        else:
            coeffs.append(to_monomial(m, piece, degree=2 * j)[j])
    return TruncSeries(q + 1, coeffs)
