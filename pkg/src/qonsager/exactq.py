"""Exact scalars: rationals, polynomials in q, and the field Q(q).

``RatFuncQ`` stores a rational function as ``q**shift * num / den`` with
``num`` and ``den`` univariate polynomials over Q, neither divisible by q,
coprime, and ``den`` monic.  That form is unique, so equality and hashing
are structural.

Polynomial arithmetic (products, exact division, gcd) is delegated to
FLINT's ``fmpq_poly``.
"""

from fractions import Fraction
from functools import lru_cache
import math

from flint import fmpq, fmpq_poly, nmod_poly

from ._parse import parse_expression

BigRational = Fraction
PolyQ = fmpq_poly

__all__ = [
    "BigRational",
    "PolyQ",
    "RatFuncQ",
    "PoleError",
    "q",
    "qpow",
    "qint",
    "binom",
    "eval_limit_q1",
    "as_ratfunc",
    "ZERO",
    "ONE",
]


class PoleError(ArithmeticError):
    """Evaluation point is a pole of the (reduced) rational function."""


_P_ONE = fmpq_poly([1])
_P_ZERO = fmpq_poly([])


def _valuation(p):
    i = 0
    while p[i] == 0:
        i += 1
    return i


def _to_fmpq(x):
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    return fmpq(x)


def _to_fraction(c):
    return Fraction(int(c.p), int(c.q))


class RatFuncQ:
    """An element of the field of rational functions Q(q)."""

    __slots__ = ("num", "den", "shift", "_hash", "_evals")

    def __init__(self, value=0):
        if isinstance(value, RatFuncQ):
            self.num, self.den, self.shift = value.num, value.den, value.shift
        elif isinstance(value, (int, Fraction)):
            self.num = fmpq_poly([_to_fmpq(value)]) if value else _P_ZERO
            self.den = _P_ONE
            self.shift = 0
        else:
            raise TypeError(f"cannot build RatFuncQ from {type(value).__name__}")
        self._hash = None
        self._evals = None

    @classmethod
    def _raw(cls, num, den, shift):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj.shift = shift
        obj._hash = None
        obj._evals = None
        return obj

    @classmethod
    def _canon(cls, num, den, shift):
        """Bring ``q**shift * num/den`` to canonical form; ``den`` must be nonzero."""
        if num.is_zero():
            return ZERO
        if not den.is_constant():
            g = num.gcd(den)
            if not g.is_one():
                num = num // g
                den = den // g
        if num[0] == 0:
            v = _valuation(num)
            num = num.right_shift(v)
            shift += v
        if den[0] == 0:
            v = _valuation(den)
            den = den.right_shift(v)
            shift -= v
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        return cls._raw(num, den, shift)

    @classmethod
    def _canon_coprime(cls, num, den, shift):
        """Like ``_canon`` for coprime ``num``, ``den`` with monic ``den``
        not divisible by q."""
        if num.is_zero():
            return ZERO
        if num[0] == 0:
            v = _valuation(num)
            num = num.right_shift(v)
            shift += v
        return cls._raw(num, den, shift)

    @classmethod
    def from_polys(cls, num, den=None, shift=0):
        """Build ``q**shift * num / den`` from fmpq_poly (or coefficient list) inputs."""
        num = num if isinstance(num, fmpq_poly) else fmpq_poly(list(num))
        if den is None:
            den = _P_ONE
        den = den if isinstance(den, fmpq_poly) else fmpq_poly(list(den))
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        return cls._canon(num, den, shift)

    @classmethod
    def laurent(cls, coeffs):
        """Laurent polynomial from a mapping exponent -> rational coefficient."""
        coeffs = {e: c for e, c in coeffs.items() if c}
        if not coeffs:
            return ZERO
        lo = min(coeffs)
        dense = [0] * (max(coeffs) - lo + 1)
        for e, c in coeffs.items():
            dense[e - lo] = _to_fmpq(Fraction(c))
        return cls._canon(fmpq_poly(dense), _P_ONE, lo)

    # -- predicates -----------------------------------------------------
    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_one(self):
        return self.shift == 0 and self.den.is_one() and self.num.is_one()

    def is_laurent(self):
        return self.den.is_one()

    def is_constant(self):
        return self.shift == 0 and self.den.is_one() and self.num.is_constant()

    def constant_value(self):
        """The rational value of a constant function (else ``ValueError``)."""
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return _to_fraction(self.num[0])

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, RatFuncQ):
            if isinstance(other, (int, Fraction)):
                other = RatFuncQ(other)
            else:
                return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        s1, s2 = self.shift, other.shift
        s = min(s1, s2)
        n1 = self.num.left_shift(s1 - s) if s1 > s else self.num
        n2 = other.num.left_shift(s2 - s) if s2 > s else other.num
        d1, d2 = self.den, other.den
        if d1 == d2:
            num = n1 + n2
            if d1.is_one():
                if num.is_zero():
                    return ZERO
                if num[0] == 0:
                    v = _valuation(num)
                    return RatFuncQ._raw(num.right_shift(v), _P_ONE, s + v)
                return RatFuncQ._raw(num, _P_ONE, s)
            return RatFuncQ._canon(num, d1, s)
        # Henrici: work over lcm(d1, d2); only factors of g can cancel
        g = d1.gcd(d2)
        if g.is_one():
            return RatFuncQ._canon_coprime(n1 * d2 + n2 * d1, d1 * d2, s)
        e1, e2 = d1 // g, d2 // g
        num = n1 * e2 + n2 * e1
        if num.is_zero():
            return ZERO
        den = d1 * e2
        h = num.gcd(g)
        if not h.is_one():
            num = num // h
            den = den // h
        return RatFuncQ._canon_coprime(num, den, s)

    __radd__ = __add__

    def __neg__(self):
        if self.num.is_zero():
            return self
        return RatFuncQ._raw(-self.num, self.den, self.shift)

    def __sub__(self, other):
        if not isinstance(other, RatFuncQ):
            if isinstance(other, (int, Fraction)):
                other = RatFuncQ(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatFuncQ):
            if isinstance(other, int):
                if other == 0:
                    return ZERO
                return RatFuncQ._raw(self.num * other, self.den, self.shift) if self else ZERO
            if isinstance(other, Fraction):
                if other == 0 or not self:
                    return ZERO
                return RatFuncQ._raw(self.num * _to_fmpq(other), self.den, self.shift)
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        d1, d2 = self.den, other.den
        shift = self.shift + other.shift
        if d1.is_one() and d2.is_one():
            return RatFuncQ._raw(self.num * other.num, _P_ONE, shift)
        n1, n2 = self.num, other.num
        if not d2.is_one():
            g = n1.gcd(d2)
            if not g.is_one():
                n1 = n1 // g
                d2 = d2 // g
        if not d1.is_one():
            g = n2.gcd(d1)
            if not g.is_one():
                n2 = n2 // g
                d1 = d1 // g
        return RatFuncQ._raw(n1 * n2, d1 * d2, shift)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("RatFuncQ division by zero")
        lc = self.num.leading_coefficient()
        return RatFuncQ._raw(self.den / lc, self.num / lc, -self.shift)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("RatFuncQ division by zero")
            return self * (1 / Fraction(other))
        if not isinstance(other, RatFuncQ):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFuncQ(other) * self.inverse()
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return ONE
        if self.num.is_zero():
            return ZERO
        return RatFuncQ._raw(self.num ** n, self.den ** n, self.shift * n)

    @staticmethod
    def sum(terms):
        """Sum of many RatFuncQ values, canonicalized once at the end."""
        return RatFuncQ._sum_raw((t.num, t.den, t.shift) for t in terms)

    @staticmethod
    def sum_of_products(pairs):
        """sum of x*y over ``pairs`` of RatFuncQ.  The products are left
        unreduced and the total is canonicalized once."""
        return RatFuncQ._sum_raw((x.num * y.num, x.den * y.den, x.shift + y.shift) for x, y in pairs)

    @staticmethod
    def _sum_raw(triples):
        # group numerators by denominator (few distinct ones, so scan a list)
        groups = []
        lo = None
        for num, den, shift in triples:
            if num.is_zero():
                continue
            for g in groups:
                if g[2] == den:
                    break
            else:
                groups.append([num, shift, den])
                continue
            if shift > g[1]:
                g[0] = g[0] + num.left_shift(shift - g[1])
            elif shift == g[1]:
                g[0] = g[0] + num
            else:
                g[0] = g[0].left_shift(g[1] - shift) + num
                g[1] = shift
        if not groups:
            return ZERO
        if len(groups) == 1:
            num, shift, den = groups[0]
            return RatFuncQ._canon(num, den, shift)
        lcm = groups[0][2]
        for g in groups[1:]:
            if g[2] != lcm:
                lcm = lcm * (g[2] // lcm.gcd(g[2]))
        lo = min(g[1] for g in groups)
        total = _P_ZERO
        for num, shift, den in groups:
            if shift > lo:
                num = num.left_shift(shift - lo)
            total = total + (num if den == lcm else num * (lcm // den))
        return RatFuncQ._canon(total, lcm, lo)

    # -- comparison / hashing ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, RatFuncQ):
            return self.shift == other.shift and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == RatFuncQ(other)
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shift, tuple(self.num.coeffs()), tuple(self.den.coeffs())))
        return self._hash

    # -- evaluation -------------------------------------------------------
    def evaluate(self, value):
        """Exact value at q = ``value`` (a nonzero rational)."""
        value = Fraction(value)
        den = _eval_poly(self.den, value)
        if den == 0:
            raise PoleError(f"pole at q = {value}")
        if value == 0 and self.shift < 0:
            raise PoleError("pole at q = 0")
        return _eval_poly(self.num, value) / den * value ** self.shift

    def evaluate_mod(self, q0, p):
        """Image in Z/p at q = q0, or ``None`` when the reduction hits a pole."""
        key = (q0, p)
        if self._evals is None:
            self._evals = {}
        hit = self._evals.get(key)
        if hit is not None or key in self._evals:
            return hit
        val = _eval_mod(self.num, q0, p)
        den = _eval_mod(self.den, q0, p)
        if val is None or den is None or den == 0 or q0 % p == 0:
            res = None
        else:
            res = val * pow(den, -1, p) % p
            if self.shift:
                res = res * pow(q0, self.shift, p) % p
        self._evals[key] = res
        return res

    # -- rendering --------------------------------------------------------
    def laurent_coeffs(self):
        """Mapping exponent -> Fraction; only valid for Laurent polynomials."""
        if not self.den.is_one():
            raise ValueError("not a Laurent polynomial")
        return {
            i + self.shift: _to_fraction(c)
            for i, c in enumerate(self.num.coeffs())
            if c != 0
        }

    def __str__(self):
        if self.den.is_one():
            return _fmt_laurent(self.num, self.shift)
        num = _fmt_laurent(self.num, self.shift)
        den = _fmt_laurent(self.den, 0)
        return f"({num}) / ({den})"

    def __repr__(self):
        return f"RatFuncQ({str(self)!r})"

    @classmethod
    def parse(cls, text):
        return parse_expression(text, _resolve_scalar)

    def needs_parens(self):
        """True when the rendering is a sum and must be bracketed in a product."""
        if not self.den.is_one():
            return True
        return sum(1 for c in self.num.coeffs() if c != 0) > 1


def _resolve_scalar(tok):
    if isinstance(tok, Fraction):
        return RatFuncQ(tok)
    if tok == "q":
        return q
    raise ValueError(f"unknown symbol {tok!r} in scalar expression")


def _eval_poly(p, value):
    acc = Fraction(0)
    for c in reversed(p.coeffs()):
        acc = acc * value + _to_fraction(c)
    return acc


def _eval_mod(p, q0, modulus):
    d = int(p.denom())
    if d % modulus == 0:
        return None
    coeffs = [int(c) for c in p.numer().coeffs()]
    val = nmod_poly(coeffs, modulus)(q0 % modulus)
    return int(val) * pow(d, -1, modulus) % modulus


def _fmt_monomial(c, e):
    c = _to_fraction(c)
    if e == 0:
        body = str(abs(c))
    else:
        var = "q" if e == 1 else f"q^{e}"
        body = var if abs(c) == 1 else f"{abs(c)}*{var}"
    return ("-" if c < 0 else "+"), body


def _fmt_laurent(p, shift):
    terms = [(i + shift, c) for i, c in enumerate(p.coeffs()) if c != 0]
    if not terms:
        return "0"
    out = []
    for e, c in sorted(terms, key=lambda t: -t[0]):
        sign, body = _fmt_monomial(c, e)
        if not out:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


ZERO = RatFuncQ._raw(_P_ZERO, _P_ONE, 0)
ONE = RatFuncQ._raw(_P_ONE, _P_ONE, 0)
q = RatFuncQ._raw(_P_ONE, _P_ONE, 1)


def as_ratfunc(x):
    """Coerce an int, Fraction or RatFuncQ to RatFuncQ."""
    if isinstance(x, RatFuncQ):
        return x
    return RatFuncQ(x)


@lru_cache(maxsize=None)
def qpow(k):
    """q**k for any integer k."""
    return RatFuncQ._raw(_P_ONE, _P_ONE, k)


@lru_cache(maxsize=None)
def qint(n):
    """The q-integer [n]_q = (q^n - q^-n)/(q - q^-1), a Laurent polynomial."""
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"qint needs a nonnegative integer, got {n!r}")
    if n == 0:
        return ZERO
    return RatFuncQ.laurent({n - 1 - 2 * i: 1 for i in range(n)})


def binom(n, k):
    """Binomial coefficient, zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return Fraction(0)
    return Fraction(math.comb(n, k))


def eval_limit_q1(f):
    """Value at q = 1 after cancellation; ``PoleError`` if q = 1 is a pole."""
    f = as_ratfunc(f)
    den = _eval_poly(f.den, Fraction(1))
    if den == 0:
        raise PoleError(f"{f} has a pole at q = 1")
    return _eval_poly(f.num, Fraction(1)) / den
