"""Commutative polynomials over Q(q) in named symbols.

Used as the coefficient algebra for symbolic generating functions (the
series calculus tests, the appendix derivations) and, with the symbols
alpha, beta, gamma, Omega, as the center of the Askey-Wilson algebra.

A monomial is a sorted tuple of ``(name, exponent)`` pairs; the empty
tuple is the unit monomial.
"""

from fractions import Fraction

from .exactq import ONE, ZERO, RatFuncQ, as_ratfunc

__all__ = ["CommPoly", "PolyRing", "mono_mul"]

_SCALARS = (int, Fraction, RatFuncQ)


def mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _mono_str(m):
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


class CommPoly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                c = as_ratfunc(c)
                if c:
                    self.terms[tuple(sorted(m))] = c

    @classmethod
    def _wrap(cls, terms):
        obj = object.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def scalar(cls, c):
        c = as_ratfunc(c)
        return cls._wrap({(): c} if c else {})

    @classmethod
    def symbol(cls, name, power=1):
        return cls._wrap({((name, power),): ONE})

    def identity(self):
        return CommPoly.scalar(1)

    # -- structure --------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def as_scalar(self):
        if not self.terms:
            return ZERO
        if len(self.terms) == 1 and () in self.terms:
            return self.terms[()]
        return None

    def symbols(self):
        return sorted({v for m in self.terms for v, _ in m})

    def coefficient(self, mono):
        if isinstance(mono, dict):
            mono = tuple(sorted((k, e) for k, e in mono.items() if e))
        return self.terms.get(tuple(mono), ZERO)

    def degree(self, weights=None):
        """Total degree; ``weights`` maps a symbol to its degree (default 1)."""
        if not self.terms:
            return -1
        w = weights or {}
        return max(sum(w.get(v, 1) * e for v, e in m) for m in self.terms)

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, CommPoly):
            return other
        if isinstance(other, _SCALARS):
            return CommPoly.scalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return CommPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return CommPoly._wrap({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            c = as_ratfunc(other)
            if not c:
                return CommPoly._wrap({})
            return CommPoly._wrap({m: v * c for m, v in self.terms.items()})
        if not isinstance(other, CommPoly):
            return NotImplemented
        return CommPoly.sum_of_products([(self, other)])

    @staticmethod
    def sum_of_products(pairs):
        """sum of x*y over ``pairs`` (``y`` may be a scalar); like coefficients
        are summed in one pass."""
        buckets = {}
        for x, y in pairs:
            if not isinstance(y, CommPoly):
                y = CommPoly.scalar(y)
            for m1, c1 in x.terms.items():
                for m2, c2 in y.terms.items():
                    m = mono_mul(m1, m2)
                    lst = buckets.get(m)
                    if lst is None:
                        buckets[m] = [(c1, c2)]
                    else:
                        lst.append((c1, c2))
        out = {}
        for m, lst in buckets.items():
            c = lst[0][0] * lst[0][1] if len(lst) == 1 else RatFuncQ.sum_of_products(lst)
            if c:
                out[m] = c
        return CommPoly._wrap(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            return self * (1 / as_ratfunc(other))
        s = other.as_scalar() if isinstance(other, CommPoly) else None
        if s is None or not s:
            return NotImplemented
        return self * (1 / s)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            s = self.as_scalar()
            if s is None:
                raise ValueError("negative power of a non-constant polynomial")
            return CommPoly.scalar(s ** n)
        out = CommPoly.scalar(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    def inverse(self):
        s = self.as_scalar()
        if s is None or not s:
            raise ZeroDivisionError("only nonzero constants are invertible")
        return CommPoly.scalar(1 / s)

    def substitute(self, images, one):
        """Evaluate in another algebra: ``images`` maps symbol names to elements."""
        acc = one * 0
        powers = {}
        for m, c in self.terms.items():
            val = one
            for v, e in m:
                key = (v, e)
                if key not in powers:
                    p = one
                    for _ in range(e):
                        p = p * images[v]
                    powers[key] = p
                val = val * powers[key]
            acc = acc + val * c
        return acc

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        items = sorted(self.terms.items(), key=lambda t: (-sum(e for _, e in t[0]), t[0]))
        for m, c in items:
            body = _mono_str(m)
            s = str(c)
            if not body:
                term, neg = (f"({s})", False) if c.needs_parens() else (s.lstrip("-"), s.startswith("-"))
            elif c.is_one():
                term, neg = body, False
            elif (-c).is_one():
                term, neg = body, True
            elif c.needs_parens():
                term, neg = f"({s})*{body}", False
            else:
                term, neg = f"{s.lstrip('-')}*{body}", s.startswith("-")
            if not parts:
                parts.append(("-" if neg else "") + term)
            else:
                parts.append((" - " if neg else " + ") + term)
        return "".join(parts)

    def __repr__(self):
        return f"CommPoly({str(self)!r})"

    @classmethod
    def parse(cls, text, symbols=None):
        """Parse ``text``; any name other than ``q`` becomes a symbol unless
        ``symbols`` restricts the allowed names."""
        from ._parse import parse_expression
        from .exactq import q

        def resolve(tok):
            if isinstance(tok, Fraction):
                return CommPoly.scalar(tok)
            if tok == "q":
                return CommPoly.scalar(q)
            if symbols is not None and tok not in symbols:
                raise ValueError(f"unknown symbol {tok!r}")
            return CommPoly.symbol(tok)

        def divide(a, b):
            s = b.as_scalar()
            if s is None or not s:
                raise ValueError("division by a non-constant or zero")
            return a / s

        return parse_expression(text, resolve, divide)


class PolyRing:
    """Convenience factory for a fixed list of symbols."""

    def __init__(self, names):
        self.names = list(names)

    def gens(self):
        return [CommPoly.symbol(n) for n in self.names]

    def __getitem__(self, name):
        if name not in self.names:
            raise KeyError(name)
        return CommPoly.symbol(name)

    def one(self):
        return CommPoly.scalar(1)
