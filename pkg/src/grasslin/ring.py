"""Exact arithmetic substrate: sparse integer polynomials in the formal
variables a, b, c, and truncated power series over them.

Coefficients are Python ints throughout, so every computation is exact
and overflow-free.  All values are immutable after construction; every
operation returns a fresh object, so sharing across threads is safe.
"""

from __future__ import annotations

from math import comb


def binomial(n, k):
    """C(n, k), zero outside the usual range."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def _monomial_str(key):
    parts = []
    for name, e in zip("abc", key):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append("%s^%d" % (name, e))
    return "*".join(parts)


class PolyABC:
    """A polynomial in Z[a, b, c].

    Terms are stored sparsely as a map from exponent triples
    ``(ea, eb, ec)`` to nonzero integer coefficients.  Zero coefficients
    are never stored, and serialisation orders exponent triples
    lexicographically, so representations are canonical.

    Mixed arithmetic with plain ints works in both directions, and a
    polynomial is falsy exactly when it is zero, which lets generic
    series/class code treat int and PolyABC coefficients uniformly.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for key, val in terms.items():
                if val:
                    ea, eb, ec = key
                    if ea < 0 or eb < 0 or ec < 0:
                        raise ValueError("negative exponent in %r" % (key,))
                    t[(int(ea), int(eb), int(ec))] = val
        self.terms = t

    @classmethod
    def const(cls, value):
        return cls({(0, 0, 0): int(value)})

    @classmethod
    def gens(cls):
        """The generator triple (a, b, c)."""
        return (cls({(1, 0, 0): 1}), cls({(0, 1, 0): 1}), cls({(0, 0, 1): 1}))

    @staticmethod
    def _coerce(other):
        if isinstance(other, PolyABC):
            return other
        if isinstance(other, int):
            return PolyABC.const(other)
        return None

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return PolyABC({k: -v for k, v in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        t = dict(self.terms)
        for k, v in other.terms.items():
            w = t.get(k, 0) + v
            if w:
                t[k] = w
            elif k in t:
                del t[k]
        out = PolyABC.__new__(PolyABC)
        out.terms = t
        return out

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return PolyABC()
            return PolyABC({k: v * other for k, v in self.terms.items()})
        if not isinstance(other, PolyABC):
            return NotImplemented
        t = {}
        for (e1, e2, e3), v1 in self.terms.items():
            for (f1, f2, f3), v2 in other.terms.items():
                k = (e1 + f1, e2 + f2, e3 + f3)
                w = t.get(k, 0) + v1 * v2
                if w:
                    t[k] = w
                elif k in t:
                    del t[k]
        out = PolyABC.__new__(PolyABC)
        out.terms = t
        return out

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = PolyABC.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def evaluate(self, triple):
        """Exact integer value at an integer triple (a, b, c)."""
        a, b, c = triple
        total = 0
        for (ea, eb, ec), v in self.terms.items():
            total += v * a**ea * b**eb * c**ec
        return total

    def substitute(self, pa, pb, pc):
        """Substitute polynomials (or ints) for the three variables."""
        pa = self._coerce(pa)
        pb = self._coerce(pb)
        pc = self._coerce(pc)
        total = PolyABC()
        for (ea, eb, ec), v in self.terms.items():
            total = total + pa**ea * pb**eb * pc**ec * v
        return total

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(ea + eb + ec for (ea, eb, ec) in self.terms)

    def is_constant(self):
        return all(k == (0, 0, 0) for k in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant polynomial: %r" % (self,))
        return self.terms.get((0, 0, 0), 0)

    def to_json(self):
        return {
            "terms": [
                {"ea": k[0], "eb": k[1], "ec": k[2], "coeff": str(self.terms[k])}
                for k in sorted(self.terms)
            ]
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            {(t["ea"], t["eb"], t["ec"]): int(t["coeff"]) for t in obj["terms"]}
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=lambda k: (-(k[0] + k[1] + k[2]), k)):
            v = self.terms[key]
            mono = _monomial_str(key)
            if mono:
                body = mono if abs(v) == 1 else "%d*%s" % (abs(v), mono)
            else:
                body = str(abs(v))
            if not parts:
                parts.append(body if v > 0 else "-" + body)
            else:
                parts.append(("+ " if v > 0 else "- ") + body)
        return " ".join(parts)


def coeff_to_json(v):
    """JSON form of an int or PolyABC coefficient."""
    if isinstance(v, int):
        return str(v)
    return v.to_json()


def _unit_constant(v):
    """Return +-1 if v is that unit constant, else None."""
    if isinstance(v, int):
        return v if v in (1, -1) else None
    if isinstance(v, PolyABC) and v.is_constant():
        c = v.constant_value()
        return c if c in (1, -1) else None
    return None


class TruncSeries:
    """A power series truncated at a fixed order.

    ``TruncSeries(k, [c0, c1, ...])`` represents c0 + c1*x + ... modulo
    x^k; every operation discards degrees >= k.  Coefficients may be
    ints or PolyABC (mixing the int 0/1 with polynomials is fine).
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs=()):
        if not isinstance(order, int) or order < 1:
            raise ValueError("truncation order must be a positive integer")
        cs = list(coeffs)[:order]
        cs.extend([0] * (order - len(cs)))
        self.order = order
        self.coeffs = cs

    def _compat(self, other):
        if not isinstance(other, TruncSeries):
            return None
        if other.order != self.order:
            raise ValueError(
                "mismatched truncation orders: %d vs %d" % (self.order, other.order)
            )
        return other

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and all(
            u == v for u, v in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.order, tuple(str(c) for c in self.coeffs)))

    def __neg__(self):
        return TruncSeries(self.order, [-c for c in self.coeffs])

    def __add__(self, other):
        o = self._compat(other)
        if o is None:
            return NotImplemented
        return TruncSeries(self.order, [u + v for u, v in zip(self.coeffs, o.coeffs)])

    def __sub__(self, other):
        o = self._compat(other)
        if o is None:
            return NotImplemented
        return TruncSeries(self.order, [u - v for u, v in zip(self.coeffs, o.coeffs)])

    def __mul__(self, other):
        if isinstance(other, (int, PolyABC)):
            return TruncSeries(self.order, [c * other for c in self.coeffs])
        o = self._compat(other)
        if o is None:
            return NotImplemented
        k = self.order
        out = [0] * k
        for i, u in enumerate(self.coeffs):
            if not u:
                continue
            for j in range(k - i):
                v = o.coeffs[j]
                if v:
                    out[i + j] = out[i + j] + u * v
        return TruncSeries(k, out)

    def __rmul__(self, other):
        if isinstance(other, (int, PolyABC)):
            return self * other
        return NotImplemented

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = TruncSeries(self.order, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other):
        """Division by a series with unit (+-1) constant term.

        Computed by forward substitution: the quotient q satisfies
        q * other = self modulo x^order.
        """
        o = self._compat(other)
        if o is None:
            return NotImplemented
        inv0 = _unit_constant(o.coeffs[0])
        if inv0 is None:
            raise ValueError("divisor constant term must be +1 or -1")
        k = self.order
        q = [0] * k
        for d in range(k):
            acc = self.coeffs[d]
            for i in range(1, d + 1):
                gi = o.coeffs[i]
                if gi:
                    acc = acc - gi * q[d - i]
            q[d] = acc if inv0 == 1 else -acc
        return TruncSeries(k, q)

    def __getitem__(self, d):
        return self.coeffs[d]

    def __repr__(self):
        parts = []
        for d, c in enumerate(self.coeffs):
            if isinstance(c, int):
                if not c:
                    continue
                body = str(c)
            else:
                if not c:
                    continue
                body = "(%r)" % c
            if d == 0:
                parts.append(body)
            elif d == 1:
                parts.append("%s*x" % body)
            else:
                parts.append("%s*x^%d" % (body, d))
        if not parts:
            parts = ["0"]
        return " + ".join(parts) + " (mod x^%d)" % self.order
