"""The universal Askey-Wilson algebra Delta_q.

Generators A, B, C; the elements

    A + (qBC - q^-1 CB)/(q^2 - q^-2) = alpha/(q + q^-1)
    B + (qCA - q^-1 AC)/(q^2 - q^-2) = beta/(q + q^-1)
    C + (qAB - q^-1 BA)/(q^2 - q^-2) = gamma/(q + q^-1)

are central.  Solving each for the out-of-order product gives straightening
rules, so every element has a unique normal form: a combination of ordered
monomials A^i B^j C^k with coefficients in Q(q)[alpha, beta, gamma]
(``DeltaElement``).

The Casimir element Omega = qABC + q^2A^2 + q^-2B^2 + q^2C^2 - qA alpha
- q^-1 B beta - qC gamma is central too.  ``CentralForm`` keeps Omega as a
coefficient symbol and rewrites every monomial with i, j, k all positive
through Omega, which keeps the elements met below (series in C over the
center) small.  An empty ``CentralForm`` is zero outright; a nonempty one is
confirmed nonzero by expanding Omega back into A, B, C.

On top of the algebra this module builds the series Psi(t), N(t), Z(t),
G~(t), W+-(t), G(t) and checks each identity that relates them, plus the
current-algebra relations on their coefficients.
"""

import threading

from .commpoly import CommPoly
from .exactq import RatFuncQ, as_ratfunc, q, qint
from .gseries import TruncatedSeries, cayley_compose, q_expand
from .ncalg import apply_hom, commutator, dolan_grady_generators, q_commutator
from .oq import G0, OqElements
from .relations import RELATION_IDS, RelationContext, relation_parts, sweep_instances
from .reports import SuiteReport, timed_case

__all__ = [
    "DeltaElement",
    "CentralForm",
    "A",
    "B",
    "C",
    "ALPHA",
    "BETA",
    "GAMMA",
    "OMEGA",
    "casimir",
    "c_prime",
    "is_central",
    "rho",
    "sigma",
    "natural_hom",
    "vanishes",
    "verify_presentation",
    "verify_automorphisms",
    "psi_series",
    "verify_b_series_identity",
    "verify_eq_3B",
    "n_series",
    "z_series",
    "verify_nzz",
    "tilde_g_series_delta",
    "verify_tilde_g_closed_form",
    "verify_prop_7_2",
    "w_series_delta",
    "g_series_delta",
    "verify_w_g_closed_forms",
    "verify_lemma_7_3_7_4",
    "SeriesElements",
    "natural_elements",
    "verify_relations_delta",
    "verify_deltaq",
]

_S1 = q - q ** -1
_S2 = q ** 2 - q ** -2
_SQ = _S2 ** 2
_TWO = qint(2)
_SCALARS = (int, RatFuncQ)

ALPHA = CommPoly.symbol("alpha")
BETA = CommPoly.symbol("beta")
GAMMA = CommPoly.symbol("gamma")
OMEGA = CommPoly.symbol("Omega")
_P1 = CommPoly.scalar(1)

_LETTERS = "ABC"


def _acc(out, m, c):
    v = out.get(m)
    if v is None:
        if c:
            out[m] = c
    else:
        v = v + c
        if v:
            out[m] = v
        else:
            del out[m]


# ---------------------------------------------------------------------------
# straightening, memoised on (monomial, letter) and (monomial, monomial)

_LETTER_MEMO = {}
_PROD_MEMO = {}
_REDUCE_MEMO = {}
_CPROD_MEMO = {}
_MEMO_LOCK = threading.Lock()


def _times_letter(m, letter):
    """Normal form of A^i B^j C^k times one letter (0 = A, 1 = B, 2 = C)."""
    key = (m, letter)
    hit = _LETTER_MEMO.get(key)
    if hit is not None:
        return hit
    i, j, k = m
    res = {}
    if letter == 2:
        res[(i, j, k + 1)] = _P1
    elif letter == 1:
        if k == 0:
            res[(i, j + 1, 0)] = _P1
        else:
            # C B -> q^2 BC + q(q^2-q^-2) A - q(q-q^-1) alpha
            mp = (i, j, k - 1)
            for (a, b, c), v in _times_letter(mp, 1).items():
                _acc(res, (a, b, c + 1), v * q ** 2)
            for mm, v in _times_letter(mp, 0).items():
                _acc(res, mm, v * (q * _S2))
            _acc(res, mp, ALPHA * (-q * _S1))
    else:
        if k > 0:
            # C A -> q^-2 AC - q^-1(q^2-q^-2) B + q^-1(q-q^-1) beta
            mp = (i, j, k - 1)
            for (a, b, c), v in _times_letter(mp, 0).items():
                _acc(res, (a, b, c + 1), v * q ** -2)
            for mm, v in _times_letter(mp, 1).items():
                _acc(res, mm, v * (-(q ** -1) * _S2))
            _acc(res, mp, BETA * (q ** -1 * _S1))
        elif j > 0:
            # B A -> q^2 AB + q(q^2-q^-2) C - q(q-q^-1) gamma
            mp = (i, j - 1, 0)
            for mm, v in _times_letter(mp, 0).items():
                for m3, v3 in _times_letter(mm, 1).items():
                    _acc(res, m3, v * v3 * q ** 2)
            _acc(res, (i, j - 1, 1), _P1 * (q * _S2))
            _acc(res, mp, GAMMA * (-q * _S1))
        else:
            res[(i + 1, 0, 0)] = _P1
    _LETTER_MEMO[key] = res
    return res


def _mono_product(m1, m2):
    key = (m1, m2)
    hit = _PROD_MEMO.get(key)
    if hit is not None:
        return hit
    cur = {m1: _P1}
    for letter, e in enumerate(m2):
        for _ in range(e):
            nxt = {}
            for m, c in cur.items():
                for mm, v in _times_letter(m, letter).items():
                    _acc(nxt, mm, c * v)
            cur = nxt
    _PROD_MEMO[key] = cur
    return cur


_CASIMIR_TERMS = {
    (1, 1, 1): CommPoly.scalar(q),
    (2, 0, 0): CommPoly.scalar(q ** 2),
    (0, 2, 0): CommPoly.scalar(q ** -2),
    (0, 0, 2): CommPoly.scalar(q ** 2),
    (1, 0, 0): ALPHA * -q,
    (0, 1, 0): BETA * -(q ** -1),
    (0, 0, 1): GAMMA * -q,
}


def _reduce_mono(m):
    """Rewrite A^i B^j C^k (i, j, k > 0) through Omega: with m' = m - (1,1,1),
    the normal form of m' Omega is c m + (lower terms), and m' Omega = Omega m'."""
    if not (m[0] and m[1] and m[2]):
        return {m: _P1}
    hit = _REDUCE_MEMO.get(m)
    if hit is not None:
        return hit
    mp = (m[0] - 1, m[1] - 1, m[2] - 1)
    prod = {}
    for m2, c2 in _CASIMIR_TERMS.items():
        for mm, v in _mono_product(mp, m2).items():
            _acc(prod, mm, c2 * v)
    lead = prod.pop(m).as_scalar()
    inv = 1 / lead
    res = {}
    for mm, v in _reduce_mono(mp).items():
        _acc(res, mm, v * OMEGA * inv)
    for mm, v in prod.items():
        for m3, v3 in _reduce_mono(mm).items():
            _acc(res, m3, v * v3 * (-inv))
    _REDUCE_MEMO[m] = res
    return res


def _central_product(m1, m2):
    key = (m1, m2)
    hit = _CPROD_MEMO.get(key)
    if hit is not None:
        return hit
    res = {}
    for mm, v in _mono_product(m1, m2).items():
        for m3, v3 in _reduce_mono(mm).items():
            _acc(res, m3, v * v3)
    _CPROD_MEMO[key] = res
    return res


def clear_caches():
    with _MEMO_LOCK:
        for d in (_LETTER_MEMO, _PROD_MEMO, _REDUCE_MEMO, _CPROD_MEMO):
            d.clear()


# ---------------------------------------------------------------------------
# elements


def _mono_str(m):
    parts = []
    for letter, e in zip(_LETTERS, m):
        if e == 1:
            parts.append(letter)
        elif e:
            parts.append(f"{letter}^{e}")
    return "*".join(parts)


class DeltaElement:
    """Normal-form element: ordered monomials A^i B^j C^k with coefficients in
    Q(q)[alpha, beta, gamma]."""

    __slots__ = ("terms",)
    _product = staticmethod(_mono_product)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                c = _as_coeff(c)
                if c:
                    self.terms[tuple(m)] = c

    @classmethod
    def _wrap(cls, terms):
        obj = object.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def scalar(cls, c):
        c = _as_coeff(c)
        return cls._wrap({(0, 0, 0): c} if c else {})

    central = scalar

    @classmethod
    def generator(cls, name):
        idx = _LETTERS.index(name)
        m = [0, 0, 0]
        m[idx] = 1
        return cls._wrap({tuple(m): _P1})

    @classmethod
    def monomial(cls, i, j, k, coeff=1):
        return cls({(i, j, k): coeff})

    def identity(self):
        return type(self).scalar(1)

    # -- structure --------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self):
        return not self.terms

    def as_scalar(self):
        if not self.terms:
            return as_ratfunc(0)
        if len(self.terms) == 1 and (0, 0, 0) in self.terms:
            return self.terms[(0, 0, 0)].as_scalar()
        return None

    def degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def coefficient(self, m):
        return self.terms.get(tuple(m), CommPoly())

    def is_central_polynomial(self):
        """True when only the unit monomial occurs."""
        return all(m == (0, 0, 0) for m in self.terms)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, _SCALARS + (CommPoly,)) or _is_fraction(other):
            return type(self).scalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, c)
        return self._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _SCALARS) or _is_fraction(other) or isinstance(other, CommPoly):
            c = _as_coeff(other)
            if not c:
                return self._wrap({})
            return self._wrap({m: v * c for m, v in self.terms.items() if v * c})
        if not isinstance(other, type(self)):
            return NotImplemented
        out = {}
        prod = self._product
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c = c1 * c2
                for m, v in prod(m1, m2).items():
                    s = v.as_scalar()
                    _acc(out, m, c * s if s is not None else c * v)
        return self._wrap(out)

    def __rmul__(self, other):
        if isinstance(other, _SCALARS) or _is_fraction(other) or isinstance(other, CommPoly):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, _SCALARS) or _is_fraction(other):
            return self * (1 / as_ratfunc(other))
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = self.identity()
        for _ in range(n):
            out = out * self
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

    def map_coefficients(self, fn):
        out = {}
        for m, c in self.terms.items():
            _acc(out, m, fn(c))
        return self._wrap(out)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (-sum(m), m)):
            c = self.terms[m]
            body = _mono_str(m)
            s = c.as_scalar()
            cs = str(s) if s is not None else str(c)
            wrap = (" + " in cs or " - " in cs or "/" in cs) if s is not None else len(c.terms) > 1
            if not body:
                parts.append(f"({cs})" if len(c.terms) > 1 else cs)
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"({cs})*{body}" if wrap else f"{cs}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"


class CentralForm(DeltaElement):
    """Working form with Omega as a central symbol: coefficients in
    Q(q)[alpha, beta, gamma, Omega] and only monomials with i*j*k = 0."""

    __slots__ = ()
    _product = staticmethod(_central_product)

    @classmethod
    def from_delta(cls, x):
        out = {}
        for m, c in x.terms.items():
            for mm, v in _reduce_mono(m).items():
                _acc(out, mm, c * v)
        return cls._wrap(out)

    def expand(self):
        """The same element as a DeltaElement (Omega replaced by the Casimir)."""
        one = DeltaElement.scalar(1)
        images = {"alpha": DeltaElement.scalar(ALPHA), "beta": DeltaElement.scalar(BETA),
                  "gamma": DeltaElement.scalar(GAMMA), "Omega": casimir()}
        out = DeltaElement()
        for m, c in self.terms.items():
            out = out + c.substitute(images, one) * DeltaElement.monomial(*m)
        return out


def _is_fraction(x):
    from fractions import Fraction

    return isinstance(x, Fraction)


def _as_coeff(c):
    if isinstance(c, CommPoly):
        return c
    return CommPoly.scalar(c)


A = DeltaElement.generator("A")
B = DeltaElement.generator("B")
C = DeltaElement.generator("C")


def casimir(cls=DeltaElement):
    """Omega in normal form (or the symbol itself in ``CentralForm``)."""
    if cls is CentralForm:
        return CentralForm.scalar(OMEGA)
    return DeltaElement._wrap(dict(_CASIMIR_TERMS))


def generators(cls=DeltaElement):
    return cls.generator("A"), cls.generator("B"), cls.generator("C")


def c_prime(cls=DeltaElement):
    """C' = C + [A, B]/(q - q^-1)."""
    a, b, c = generators(cls)
    return c + commutator(a, b) / _S1


def vanishes(x):
    """Exact zero test; a nonempty ``CentralForm`` is re-checked after
    expanding Omega, so a nonzero verdict does not rely on a basis theorem."""
    if not x.terms:
        return True
    if isinstance(x, CentralForm):
        return not x.expand().terms
    return False


def _residual_size(x):
    return 0 if vanishes(x) else len(x)


def is_central(x):
    """True iff x commutes with A, B and C."""
    return all(vanishes(x * g - g * x) for g in generators(type(x)))


# ---------------------------------------------------------------------------
# the modular group action

_RHO_SYMBOLS = {"alpha": "beta", "beta": "gamma", "gamma": "alpha", "Omega": "Omega"}
_SIGMA_SYMBOLS = {"alpha": "beta", "beta": "alpha", "gamma": "gamma", "Omega": "Omega"}


def _rename(poly, mapping):
    out = {}
    for m, c in poly.terms.items():
        out[tuple(sorted((mapping[v], e) for v, e in m))] = c
    return CommPoly._wrap(out)


def _apply_automorphism(x, letter_images, symbols):
    cls = type(x)
    one = cls.scalar(1)
    powers = {}
    out = cls()
    for m, c in x.terms.items():
        val = one
        for letter, e in enumerate(m):
            if e:
                key = (letter, e)
                if key not in powers:
                    p = one
                    for _ in range(e):
                        p = p * letter_images[letter]
                    powers[key] = p
                val = val * powers[key]
        out = out + val * _rename(c, symbols)
    return out


def rho(x):
    """A -> B -> C -> A, alpha -> beta -> gamma -> alpha."""
    a, b, c = generators(type(x))
    return _apply_automorphism(x, (b, c, a), _RHO_SYMBOLS)


def sigma(x):
    """A <-> B, C -> C', alpha <-> beta, gamma fixed."""
    a, b, _ = generators(type(x))
    return _apply_automorphism(x, (b, a, c_prime(type(x))), _SIGMA_SYMBOLS)


def natural_hom(x, cls=DeltaElement):
    """The homomorphism from the free algebra sending W0 -> A, W1 -> B."""
    a, b, _ = generators(cls)
    return apply_hom(x, {0: a, 1: b}, cls.scalar(1))


# ---------------------------------------------------------------------------
# structural checks


def _central_relations(cls=DeltaElement):
    """The three defining relations, each as (left side - right side)."""
    a, b, c = generators(cls)
    rels = {}
    for name, x, y, z, sym in (("alpha", a, b, c, ALPHA), ("beta", b, c, a, BETA), ("gamma", c, a, b, GAMMA)):
        rels[name] = x + q_commutator(y, z) / _S2 - cls.scalar(sym) / _TWO
    return rels


def verify_presentation(cls=DeltaElement):
    """The four relations of the presentation on A, B, gamma hold in normal form."""
    a, b, _ = generators(cls)
    g = cls.scalar(GAMMA)
    dg1, dg2 = dolan_grady_generators(a, b)
    a2, b2 = a * a, b * b
    gamma_rel = (a2 * b2 - b2 * a2 + (b * a * b * a - a * b * a * b) * (q ** 2 + q ** -2)
                 - (b * a - a * b) * g * _S1 ** 2)
    cases = [
        timed_case("dolan-grady-A", lambda: dg1, _residual_size),
        timed_case("dolan-grady-B", lambda: dg2, _residual_size),
        timed_case("gamma-relation", lambda: gamma_rel, _residual_size),
        timed_case("gamma-commutes-A", lambda: g * a - a * g, _residual_size),
        timed_case("gamma-commutes-B", lambda: g * b - b * g, _residual_size),
    ]
    return SuiteReport("deltaq-presentation", cases)


def verify_automorphisms():
    """Centrality of alpha, beta, gamma, Omega; rho^3 = sigma^2 = 1 on the
    generators; invariance of Omega; and the sigma-images of the three
    defining relations, which must hold with C replaced by C'."""
    a, b, c = generators()
    cas = casimir()
    cp = c_prime()
    cases = []
    for name, x in (("alpha", ALPHA), ("beta", BETA), ("gamma", GAMMA)):
        cases.append(timed_case(f"central:{name}", lambda x=x: _commutators(DeltaElement.scalar(x))))
    cases.append(timed_case("central:Omega", lambda: _commutators(cas)))
    for name, x in (("A", a), ("B", b), ("C", c), ("alpha", DeltaElement.scalar(ALPHA)),
                    ("beta", DeltaElement.scalar(BETA)), ("gamma", DeltaElement.scalar(GAMMA))):
        cases.append(timed_case(f"rho^3:{name}", lambda x=x: rho(rho(rho(x))) - x))
        cases.append(timed_case(f"sigma^2:{name}", lambda x=x: sigma(sigma(x)) - x))
    cases.append(timed_case("rho:Omega", lambda: rho(cas) - cas))
    cases.append(timed_case("sigma:Omega", lambda: sigma(cas) - cas))
    # sigma applied to the relations: B + [A,C']_q/(q^2-q^-2) = beta/[2], etc.
    images = {
        "alpha": b + q_commutator(a, cp) / _S2 - DeltaElement.scalar(BETA) / _TWO,
        "beta": a + q_commutator(cp, b) / _S2 - DeltaElement.scalar(ALPHA) / _TWO,
        "gamma": cp + q_commutator(b, a) / _S2 - DeltaElement.scalar(GAMMA) / _TWO,
    }
    for name, rel in _central_relations().items():
        cases.append(timed_case(f"sigma-image:{name}", lambda rel=rel: sigma(rel)))
        cases.append(timed_case(f"sigma-relation:{name}", lambda name=name: images[name]))
        cases.append(timed_case(f"rho-image:{name}", lambda rel=rel: rho(rel)))
    return SuiteReport("deltaq-automorphisms", cases)


def _commutators(x):
    """Nonzero brackets of x with the generators (empty when x is central)."""
    out = []
    for g in generators(type(x)):
        r = x * g - g * x
        if not vanishes(r):
            out.append(r)
    return out


# ---------------------------------------------------------------------------
# generating functions


_NATURAL = {}


def natural_elements():
    """``OqElements`` evaluated in Delta_q (working form), i.e. the images
    under the natural homomorphism, computed by running the recursions on A, B.
    Shared between calls; the instance memoises its own elements."""
    hit = _NATURAL.get("elements")
    if hit is None:
        a, b, _ = generators(CentralForm)
        hit = _NATURAL.setdefault("elements", OqElements(w0=a, w1=b, one=CentralForm.scalar(1)))
    return hit


def psi_series(order, elements=None):
    """Psi(t) = B(t) + 1 - q^-2 = sum_{n>=1} B_{n delta} t^n."""
    e = elements or natural_elements()
    coeffs = [e.b_ndelta(n) for n in range(order + 1)]
    coeffs[0] = coeffs[0] + (1 - q ** -2)
    return TruncatedSeries(coeffs)


def _poly_series(coeffs, order, zero):
    """A polynomial in t (list of coefficients) as a series of the given order."""
    out = list(coeffs[: order + 1])
    while len(out) < order + 1:
        out.append(zero)
    return TruncatedSeries(out)


def _mul_poly(values, factor):
    """Product of a coefficient list with a polynomial (list of scalars)."""
    out = []
    for n in range(len(values)):
        acc = None
        for i, f in enumerate(factor):
            if i > n or not f:
                continue
            term = values[n - i] * f
            acc = term if acc is None else acc + term
        out.append(acc if acc is not None else values[0] * 0)
    return out


def verify_b_series_identity(order, elements=None):
    """B(t)(qt + q^-1 t^-1 + C)(q^-1 t + q t^-1 + C) against (1 - q^-2) times
    the central expression, both multiplied by t^2 (t^2 - 1)^2 so that
    everything is a polynomial in t.  Also checks Psi(0) = 0 and that every
    Psi_n commutes with C."""
    e = elements or natural_elements()
    one = CentralForm.scalar(1)
    zero = one * 0
    _, _, c = generators(CentralForm)
    om, al, be, ga = (CentralForm.scalar(s) for s in (OMEGA, ALPHA, BETA, GAMMA))
    bt = e.b_series(order)
    # left side: B(t) * (q t^2 + C t + q^-1) * (q^-1 t^2 + C t + q) * (t^2 - 1)^2
    f1 = _poly_series([one * q ** -1, c, one * q], order, zero)
    f2 = _poly_series([one * q, c, one * q ** -1], order, zero)
    lhs = bt * f1 * f2
    lhs = TruncatedSeries(_mul_poly(lhs.coeffs, [1, 0, -2, 0, 1]))
    # right side, a polynomial in t
    sq = [1, 0, -2, 0, 1]                      # (t^2 - 1)^2
    t2sq = [0, 0] + sq                         # t^2 (t^2 - 1)^2
    prod = [q ** -1 * q, 0, q * q + q ** -1 * q ** -1, 0, q * q ** -1]  # (qt^2+q^-1)(q^-1t^2+q)
    prod_sq = _poly_coeffs_mul(prod, sq)
    rhs = [zero] * (order + 1)

    def add(poly, elem):
        for n, v in enumerate(poly):
            if n <= order and v:
                rhs[n] = rhs[n] + elem * v

    add(t2sq, om)
    add([0, 0, 0, -1, 0, -1], al * be)                  # -(t^5 + t^3) alpha beta
    add([0, 0, 0, 0, -1], al * al + be * be)            # -t^4 (alpha^2 + beta^2)
    add(_poly_coeffs_mul([0, -1, 0, -1], sq), ga)       # -(t^3 + t)(t^2-1)^2 gamma
    add([-v for v in prod_sq], one)
    rhs = [x * (1 - q ** -2) for x in rhs]
    cases = [timed_case(f"t^{n}", lambda n=n: lhs[n] - rhs[n], _residual_size) for n in range(order + 1)]
    psi = psi_series(order, e)
    cases.append(timed_case("Psi_0", lambda: psi[0], _residual_size))
    for n in range(1, order + 1):
        cases.append(timed_case(f"[Psi_{n},C]", lambda n=n: psi[n] * c - c * psi[n], _residual_size))
    return SuiteReport("deltaq-B(t)-identity", cases, {"order": order})


def _poly_coeffs_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def _scalar_series(coeffs, order):
    out = [as_ratfunc(c) for c in coeffs[: order + 1]]
    out += [as_ratfunc(0)] * (order + 1 - len(out))
    return TruncatedSeries(out)


def _n_pieces(order):
    """N1..N4 as scalar series of the given order, from the three expansions
    1/(qt+q^-1 t^-1), 1/(q^-1 t+q t^-1) and 1/(t-t^-1)^2 = sum n t^{2n}."""
    m = order + 1
    p1 = [0] * (m + 1)
    p2 = [0] * (m + 1)
    s = [0] * (m + 1)
    for n in range(m + 1):
        if 2 * n + 1 <= m:
            p1[2 * n + 1] = (-1) ** n * q ** (2 * n + 1)
            p2[2 * n + 1] = (-1) ** n * q ** (-2 * n - 1)
        if 2 * n <= m:
            s[2 * n] = n
    pp = _scalar_series(p1, m) * _scalar_series(p2, m)
    spp = _scalar_series(s, m) * pp

    def t_plus_inv(x):
        # (t + t^-1) x(t), valid because x has zero constant term
        return [(x[n - 1] if n else 0) + x[n + 1] for n in range(order + 1)]

    n1 = [-v for v in pp.coeffs[: order + 1]]
    n2 = t_plus_inv(spp.coeffs)
    n3 = spp.coeffs[: order + 1]
    n4 = t_plus_inv(pp.coeffs)
    return n1, n2, n3, n4


def n_series(order):
    """N(t) = 1 + N1 Omega + N2 alpha beta + N3 (alpha^2 + beta^2) + N4 gamma."""
    n1, n2, n3, n4 = _n_pieces(order)
    ab = ALPHA * BETA
    aa_bb = ALPHA * ALPHA + BETA * BETA
    coeffs = [CommPoly.scalar(1)]
    for n in range(1, order + 1):
        coeffs.append(OMEGA * n1[n] + ab * n2[n] + aa_bb * n3[n] + GAMMA * n4[n])
    return TruncatedSeries(coeffs)


Z0 = q ** -2 - q ** 2


def z_series(order):
    """Z(t) with Z_0 = q^-2 - q^2 and Z(t)^vee the q-expansion of N(t)."""
    return q_expand(n_series(order)) * CommPoly.scalar(Z0)


def n_series_from_b(order, elements=None):
    """N(t) computed from its definition B(t)/(q^-2 - 1) times
    (1 + C/(qt + q^-1 t^-1)) (1 + C/(q^-1 t + q t^-1))."""
    e = elements or natural_elements()
    _, _, c = generators(CentralForm)
    m = order
    p1 = [CentralForm.scalar(0)] * (m + 1)
    p2 = [CentralForm.scalar(0)] * (m + 1)
    p1[0] = p2[0] = CentralForm.scalar(1)
    for n in range((m - 1) // 2 + 1):
        p1[2 * n + 1] = c * ((-1) ** n * q ** (2 * n + 1))
        p2[2 * n + 1] = c * ((-1) ** n * q ** (-2 * n - 1))
    out = e.b_series(order) * TruncatedSeries(p1) * TruncatedSeries(p2)
    return out * (1 / (q ** -2 - 1))


def verify_nzz(order, elements=None):
    """N(t) from the central formula agrees with N(t) from B(t); Z_0, Z_1 have
    the expected values; and N(t) Z(u+(t)) Z(u-(t)) = (q^2 - q^-2)^2 with
    u+- = (q + q^-1)/(q^{+-1} t + q^{-+1} t^-1)."""
    nt = n_series(order)
    zt = z_series(order)
    cases = []
    nb = n_series_from_b(order, elements)
    for n in range(order + 1):
        cases.append(timed_case(f"N_{n}:central-vs-B(t)",
                                lambda n=n: nb[n] - CentralForm.scalar(nt[n]), _residual_size))
    cases.append(timed_case("Z_0", lambda: zt[0] - Z0))
    if order >= 1:
        cases.append(timed_case("Z_1", lambda: zt[1] + nt[1] * (Z0 / _TWO ** 2)))
    prod = nt * cayley_compose(zt, _TWO * q, q ** 2) * cayley_compose(zt, _TWO * q ** -1, q ** -2)
    target = [CommPoly.scalar(_SQ)] + [CommPoly()] * order
    for n in range(order + 1):
        cases.append(timed_case(f"NZZ:t^{n}", lambda n=n: prod[n] - target[n]))
    return SuiteReport("deltaq-NZZ", cases, {"order": order})


def tilde_g_series_delta(order):
    """G~(t) = Z(t)(q + q^-1 + t C), in working form."""
    zt = z_series(order)
    _, _, c = generators(CentralForm)
    return _z_times_linear(zt, CentralForm.scalar(_TWO), c)


def g_series_delta(order):
    """G(t) = Z(t)(q + q^-1 + t C')."""
    zt = z_series(order)
    return _z_times_linear(zt, CentralForm.scalar(_TWO), c_prime(CentralForm))


def _z_times_linear(zt, x0, x1):
    out = []
    for n in range(zt.order + 1):
        v = x0 * zt[n]
        if n:
            v = v + x1 * zt[n - 1]
        out.append(v)
    return TruncatedSeries(out)


def w_series_delta(order):
    """(W^-(t), W^+(t)) from the closed forms, i.e. the coefficients of

    (q^2-q^-2)^2 (t^2-1) W^+(t) = Z(t)[(q-q^-1)(alpha t + beta t^2) - (q^2-q^-2)(t^2-1) B]
    (q^2-q^-2)^2 (t^2-1) W^-(t) = Z(t)[(q-q^-1)(alpha t^2 + beta t) - (q^2-q^-2)(t^2-1) A]
    """
    zt = z_series(order)
    a, b, _ = generators(CentralForm)
    al, be = CentralForm.scalar(ALPHA), CentralForm.scalar(BETA)
    plus = _w_from_numerator(zt, [b * _S2, al * _S1, be * _S1 - b * _S2])
    minus = _w_from_numerator(zt, [a * _S2, be * _S1, al * _S1 - a * _S2])
    return minus, plus


def _w_from_numerator(zt, numer):
    """Solve (q^2-q^-2)^2 (W_{n-2} - W_n) = R_n with R = Z * numer."""
    out = []
    for n in range(zt.order + 1):
        r = None
        for i, x in enumerate(numer):
            if i <= n:
                term = x * zt[n - i]
                r = term if r is None else r + term
        w = -(r / _SQ)
        if n >= 2:
            w = w + out[n - 2]
        out.append(w)
    return TruncatedSeries(out)


def verify_tilde_g_closed_form(order, elements=None):
    """Coefficientwise G~(t) = Z(t)(q + q^-1 + tC) against the images of the
    free-algebra G~_n."""
    e = elements or natural_elements()
    gt = tilde_g_series_delta(order)
    cases = [timed_case("G~_0=G0", lambda: gt[0] - CentralForm.scalar(G0), _residual_size)]
    for n in range(order + 1):
        cases.append(timed_case(f"G~_{n}", lambda n=n: gt[n] - e.tilde_g(n), _residual_size))
    return SuiteReport("deltaq-prop-G~", cases, {"order": order})


def verify_w_g_closed_forms(order, elements=None):
    """W^+-(t) and G(t) from their closed forms against: the cleared
    commutator forms built from G~(t); G(t) = G~(t) + t[2]_q [B, W^-(t)];
    and the images of the free-algebra W_{-n}, W_{n+1}, G_n."""
    e = elements or natural_elements()
    a, b, _ = generators(CentralForm)
    gt = tilde_g_series_delta(order)
    wm, wp = w_series_delta(order)
    gs = g_series_delta(order)
    zero = CentralForm()

    def prev(s, n, k=1):
        return s[n - k] if n >= k else zero

    cases = [
        timed_case("W+_0=B", lambda: wp[0] - b, _residual_size),
        timed_case("W-_0=A", lambda: wm[0] - a, _residual_size),
        timed_case("G_0=G0", lambda: gs[0] - CentralForm.scalar(G0), _residual_size),
    ]
    for n in range(order + 1):
        cases.append(timed_case(
            f"W+_{n}:commutator-form",
            lambda n=n: (prev(wp, n, 2) - wp[n]) * _SQ
            - q_commutator(prev(gt, n), a) - q_commutator(b, gt[n]), _residual_size))
        cases.append(timed_case(
            f"W-_{n}:commutator-form",
            lambda n=n: (prev(wm, n, 2) - wm[n]) * _SQ
            - q_commutator(gt[n], a) - q_commutator(b, prev(gt, n)), _residual_size))
        cases.append(timed_case(
            f"G_{n}:from-G~",
            lambda n=n: gs[n] - gt[n] - commutator(b, prev(wm, n)) * _TWO, _residual_size))
        cases.append(timed_case(f"W-_{n}:image", lambda n=n: wm[n] - e.w_minus(n), _residual_size))
        cases.append(timed_case(f"W+_{n}:image", lambda n=n: wp[n] - e.w_plus(n), _residual_size))
        if n:
            cases.append(timed_case(f"G_{n}:image", lambda n=n: gs[n] - e.g(n), _residual_size))
    return SuiteReport("deltaq-lemma-W-G", cases, {"order": order})


# ---------------------------------------------------------------------------
# the relation sweep


class SeriesElements:
    """W_{-k}, W_{k+1}, G_n, G~_n of Delta_q read off the generating functions.

    Unmutated, W and G come from their closed forms in Z(t).  With ``flip``
    set, G~_flip changes sign and W^+-, G are rebuilt from that G~(t) through
    the commutator forms, so the change propagates the same way it does in
    the free-algebra suite.
    """

    def __init__(self, order, flip=None):
        self.order = order
        self.flip = flip
        self.w0, self.w1, _ = generators(CentralForm)
        gt = list(tilde_g_series_delta(order).coeffs)
        if flip is not None:
            gt[flip] = -gt[flip]
            self._gt = gt
            self._wm, self._wp, self._g = _derive_from_tilde_g(gt, self.w0, self.w1)
        else:
            self._gt = gt
            wm, wp = w_series_delta(order)
            self._wm, self._wp = wm.coeffs, wp.coeffs
            self._g = g_series_delta(order).coeffs

    def _get(self, seq, n):
        if n > self.order:
            raise ValueError(f"index {n} exceeds series order {self.order}")
        return seq[n]

    def tilde_g(self, n):
        return self._get(self._gt, n)

    def g(self, n):
        return self._get(self._g, n)

    def w_minus(self, k):
        return self._get(self._wm, k)

    def w_plus(self, k):
        return self._get(self._wp, k)


def _derive_from_tilde_g(gt, a, b):
    wm, wp, g = [], [], []
    zero = a * 0
    for n in range(len(gt)):
        g1 = gt[n - 1] if n else zero
        rp = q_commutator(g1, a) + q_commutator(b, gt[n])
        rm = q_commutator(gt[n], a) + q_commutator(b, g1)
        wp.append((wp[n - 2] if n >= 2 else zero) - rp / _SQ)
        wm.append((wm[n - 2] if n >= 2 else zero) - rm / _SQ)
    for n in range(len(gt)):
        g.append(gt[n] + (commutator(b, wm[n - 1]) * _TWO if n else zero))
    return wm, wp, g


def verify_relations_delta(K, elements=None, square=True, ids=RELATION_IDS, progress=None):
    """All eleven relation families at 0 <= k, l <= K, evaluated exactly on
    the Delta_q elements (default: series-derived, order K + 2)."""
    if elements is None:
        elements = SeriesElements(K + 2)
    ctx = RelationContext(elements)
    cases = []
    for rid, k, l in sweep_instances(K, square, ids):
        two = rid not in ("R1", "R2", "R3")
        tag = f"{rid}[k={k},l={l}]" if two else f"{rid}[k={k}]"
        for label, x in relation_parts(ctx, rid, k, l):
            cases.append(timed_case(f"{tag}:{label}", lambda x=x: x, _residual_size))
        if progress:
            progress(tag)
    return SuiteReport("deltaq-relations", cases, {"max_index": K, "square": square})


def verify_deltaq(order=8, K=6):
    """Every Delta_q check in one report."""
    report = SuiteReport("deltaq", [], {"order": order, "max_index": K})
    report.extend(verify_presentation())
    report.extend(verify_automorphisms())
    report.extend(verify_b_series_identity(order))
    report.extend(verify_nzz(order))
    report.extend(verify_tilde_g_closed_form(order))
    report.extend(verify_w_g_closed_forms(order))
    report.extend(verify_relations_delta(K, SeriesElements(max(order, K + 2))))
    return report


# names used by the published interface
verify_eq_3B = verify_b_series_identity
verify_prop_7_2 = verify_tilde_g_closed_form
verify_lemma_7_3_7_4 = verify_w_g_closed_forms
