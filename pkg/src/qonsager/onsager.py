"""The Onsager Lie algebra O (the q = 1 limit) in its standard basis.

Basis: A_n for n in Z and B_m for m >= 1, with

    [A_m, A_n] = 4 B_{m-n},   [B_m, A_n] = 2 A_{n+m} - 2 A_{n-m},   [B_m, B_n] = 0,

where B_0 = 0 and B_{-m} = -B_m.  Coefficients are exact rationals.

The current-algebra elements at q = 1:

* G~'(t) = sum_{n>=1} G~'_n t^n is the unique series with
  8 B(t) + G~'(2/(t + t^-1)) = 0, where B(t) = sum_{n>=1} B_n t^n;
* G'_n = -G~'_n;
* W'_0 = A_0, W'_1 = A_1 and the higher W' are the q = 1 limits of the
  closed sums that define W_{-k}, W_{k+1} from G~ in O_q: each q-bracket
  becomes a plain bracket and the divisor (q^2 - q^-2)^2, after the change
  of variables, becomes -16.
"""

from fractions import Fraction
import random

from .exactq import RatFuncQ
from .gseries import TruncatedSeries, cayley_compose, certify_commutative, q_symmetrize
from .relations import RELATION_IDS, RelationContext, relation_parts, sweep_instances
from .reports import CaseResult, SuiteReport, timed_case

__all__ = [
    "OnsagerElement",
    "A",
    "B",
    "bracket",
    "b_series",
    "tilde_g_prime",
    "tilde_g_prime_series",
    "g_prime",
    "w_prime",
    "OnsagerElements",
    "RHO_ONSAGER",
    "verify_onsager",
    "verify_limit_series",
    "jacobi_check",
]

RHO_ONSAGER = 16


def _as_fraction(c):
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    if isinstance(c, RatFuncQ):
        if not (c.is_zero() or c.is_constant()):
            raise TypeError("only constant scalars act on the Onsager algebra")
        return Fraction(c.constant_value())
    raise TypeError(f"not a scalar: {c!r}")


def _is_scalar(c):
    return isinstance(c, (int, Fraction, RatFuncQ))


class OnsagerElement:
    """Finite combination of A_n (key ("A", n)) and B_m, m >= 1 (key ("B", m))."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for key, c in (terms or {}).items():
            for k2, sign in _canonical(key):
                v = self.terms.get(k2, Fraction(0)) + sign * _as_fraction(c)
                if v:
                    self.terms[k2] = v
                else:
                    self.terms.pop(k2, None)

    @classmethod
    def _wrap(cls, terms):
        obj = object.__new__(cls)
        obj.terms = terms
        return obj

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self):
        return not self.terms

    def as_scalar(self):
        # the Lie algebra has no unit; only 0 is a scalar
        return Fraction(0) if not self.terms else None

    def coefficient(self, kind, n):
        keys = _canonical((kind, n))
        return sum((s * self.terms.get(k, 0) for k, s in keys), Fraction(0))

    def __add__(self, other):
        if not isinstance(other, OnsagerElement):
            if _is_scalar(other) and not _as_fraction(other):
                return self
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return OnsagerElement._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return OnsagerElement._wrap({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, OnsagerElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c):
        if not _is_scalar(c):
            return NotImplemented
        c = _as_fraction(c)
        if not c:
            return OnsagerElement()
        return OnsagerElement._wrap({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        if not _is_scalar(c):
            return NotImplemented
        return self * (1 / _as_fraction(c))

    def __eq__(self, other):
        if isinstance(other, OnsagerElement):
            return self.terms == other.terms
        if _is_scalar(other) and not _as_fraction(other):
            return not self.terms
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (kind, n) in sorted(self.terms, key=lambda k: (k[0], k[1])):
            c = self.terms[(kind, n)]
            name = f"{kind}_{n}"
            if c == 1:
                parts.append(f"+ {name}")
            elif c == -1:
                parts.append(f"- {name}")
            elif c > 0:
                parts.append(f"+ {c}*{name}")
            else:
                parts.append(f"- {-c}*{name}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"OnsagerElement({str(self)!r})"


def _canonical(key):
    """[(canonical key, sign)] for a basis symbol; empty for B_0."""
    kind, n = key
    if kind == "A":
        return [(("A", n), 1)]
    if kind != "B":
        raise ValueError(f"unknown basis symbol {kind!r}")
    if n == 0:
        return []
    return [(("B", n), 1)] if n > 0 else [(("B", -n), -1)]


def A(n):
    return OnsagerElement({("A", n): 1})


def B(m):
    """B_m, with B_0 = 0 and B_{-m} = -B_m."""
    return OnsagerElement({("B", m): 1})


def _bracket_basis(k1, k2):
    (s1, m), (s2, n) = k1, k2
    if s1 == "A" and s2 == "A":
        return {("B", m - n): 4}
    if s1 == "B" and s2 == "A":
        return {("A", n + m): 2, ("A", n - m): -2}
    if s1 == "A" and s2 == "B":
        return {("A", m + n): -2, ("A", m - n): 2}
    return {}


def bracket(x, y):
    """Lie bracket, bilinear extension of the structure constants."""
    acc = {}
    for k1, c1 in x.terms.items():
        for k2, c2 in y.terms.items():
            for k, c in _bracket_basis(k1, k2).items():
                for kk, s in _canonical(k):
                    v = acc.get(kk, 0) + s * c * c1 * c2
                    if v:
                        acc[kk] = v
                    else:
                        acc.pop(kk, None)
    return OnsagerElement._wrap(acc)


# ---------------------------------------------------------------------------
# current-algebra elements


def b_series(order):
    """B(t) = sum_{n>=1} B_n t^n."""
    return TruncatedSeries([OnsagerElement()] + [B(n) for n in range(1, order + 1)])


def tilde_g_prime_series(order):
    """G~'(t): the q = 1 symmetrization (c = 2, d = 1) of -8 B(t)."""
    a = b_series(order) * -8
    certify_commutative(a, bracket=bracket)
    return q_symmetrize(a, c=2, d=1)


_CACHE = {}


def tilde_g_prime(n):
    if n < 1:
        raise ValueError("tilde_g_prime needs n >= 1")
    hit = _CACHE.get(("gt", n))
    if hit is None:
        order = max(n, _CACHE.get("order", 0))
        series = tilde_g_prime_series(order)
        for i in range(1, order + 1):
            _CACHE[("gt", i)] = series[i]
        _CACHE["order"] = order
        hit = _CACHE[("gt", n)]
    return hit


def g_prime(n):
    return -tilde_g_prime(n)


class OnsagerElements:
    """Element source for the relation builders at q = 1."""

    def __init__(self, tilde_g=tilde_g_prime):
        self.w0 = A(0)
        self.w1 = A(1)
        self._gt = tilde_g
        self._cache = {}

    def tilde_g(self, n):
        return self._gt(n)

    def g(self, n):
        return -self._gt(n)

    def w_minus(self, k):
        """W'_{-k}."""
        return self._w(k, True)

    def w_plus(self, k):
        """W'_{k+1}."""
        return self._w(k, False)

    def _w(self, k, minus):
        key = (k, minus)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if k < 0:
            raise ValueError("index must be >= 0")
        w0, w1, gt = self.w0, self.w1, self.tilde_g
        if k == 0:
            res = w0 if minus else w1
        else:
            r, odd = divmod(k, 2)
            n_odd, start_minus = (r + 1, True) if odd else (r, False)
            from_w1 = start_minus if minus else not start_minus
            res = w1 if from_w1 else w0
            # q-brackets become brackets; dividing by (q^2-q^-2)^2 becomes dividing by -16
            for ell in range(n_odd):
                g = gt(2 * ell + 1)
                res = res + (bracket(g, w0) if from_w1 else bracket(w1, g)) / RHO_ONSAGER
            for ell in range(1, r + 1):
                g = gt(2 * ell)
                res = res + (bracket(w1, g) if from_w1 else bracket(g, w0)) / RHO_ONSAGER
        self._cache[key] = res
        return res


_DEFAULT = OnsagerElements()


def w_prime(k):
    """W'_k for any integer subscript k (W'_0 = A_0, W'_1 = A_1)."""
    return _DEFAULT.w_minus(-k) if k <= 0 else _DEFAULT.w_plus(k - 1)


def onsager_context(elements=None):
    return RelationContext(elements or _DEFAULT, bracket=bracket, q_bracket=bracket,
                           rho=RHO_ONSAGER, qsum=Fraction(2))


def verify_limit_series(order=12):
    """8 B(t) + G~'(2/(t + t^-1)) = 0 up to t^order, recomposed with
    ``cayley_compose`` (the forward direction of the symmetrization)."""
    gt = tilde_g_prime_series(order)
    lhs = b_series(order) * 8 + cayley_compose(gt, 2, 1)
    cases = [timed_case(f"t^{n}", lambda n=n: lhs[n]) for n in range(order + 1)]
    return SuiteReport("onsager-limit-series", cases, {"order": order})


def verify_onsager(K=10, elements=None, square=True, ids=RELATION_IDS):
    """All relation families at q = 1 for 0 <= k, l <= K, exactly."""
    ctx = onsager_context(elements)
    cases = []
    for rid, k, l in sweep_instances(K, square, ids):
        two = rid not in ("R1", "R2", "R3")
        tag = f"{rid}[k={k},l={l}]" if two else f"{rid}[k={k}]"
        for label, x in relation_parts(ctx, rid, k, l):
            cases.append(timed_case(f"{tag}:{label}", lambda x=x: x))
    return SuiteReport("onsager", cases, {"max_index": K, "square": square})


def jacobi_check(trials=1000, max_index=12, seed=0):
    """Antisymmetry and the Jacobi identity on random basis triples."""
    rng = random.Random(seed)

    def pick():
        if rng.random() < 0.5:
            return A(rng.randint(-max_index, max_index))
        return B(rng.randint(1, max_index))

    cases = []
    for i in range(trials):
        x, y, z = pick(), pick(), pick()
        jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
        anti = bracket(x, y) + bracket(y, x)
        n = len(jac) + len(anti)
        cases.append(CaseResult(f"triple-{i}:{x},{y},{z}", "fail" if n else "pass", n, 0))
    return SuiteReport("onsager-jacobi", cases, {"trials": trials, "max_index": max_index, "seed": seed})
