"""Truncated generating functions a(t) = a_0 + a_1 t + ... + a_N t^N.

Coefficients live in any algebra supporting ``+``, ``-``, ``*`` and
multiplication by elements of Q(q): ``RatFuncQ`` itself, ``CommPoly``,
``FreeElement`` or ``DeltaElement``.  Products keep the left factor on the
left, so noncommutative coefficients are handled honestly.

The inverse, q-square root, q-symmetrization and q-expansion only make
sense over a commutative coefficient algebra.  Those operations require a
``CommutativityWitness``; one is produced on demand by checking every
pairwise commutator, or can be attached up front with ``certify_commutative``
when commutativity only holds modulo relations (pass ``is_zero``).
"""

import json
from fractions import Fraction

from .commpoly import CommPoly
from .exactq import ONE, RatFuncQ, as_ratfunc, binom, q, qint, qpow

__all__ = [
    "TruncatedSeries",
    "CommutativityWitness",
    "CommutativityError",
    "NormalizationError",
    "certify_commutative",
    "vee",
    "inverse",
    "q_square_root",
    "q_square",
    "rescale",
    "cayley_compose",
    "q_symmetrize",
    "q_expand",
    "qexpansion_terms",
    "qexpansion_residual",
    "check_qexpansion_equivalences",
    "QExpansionReport",
]

_GROUND = (int, Fraction, RatFuncQ)
_STRUCTURALLY_COMMUTATIVE = (int, Fraction, RatFuncQ, CommPoly)


class CommutativityError(ValueError):
    pass


class NormalizationError(ValueError):
    pass


def _ground_value(x):
    """``x`` as a RatFuncQ when it is a scalar of the ground field, else None."""
    if isinstance(x, _GROUND):
        return as_ratfunc(x)
    getter = getattr(x, "as_scalar", None)
    return getter() if getter is not None else None


def _one_like(x):
    if isinstance(x, _GROUND):
        return ONE
    if hasattr(x, "identity"):
        return x.identity()
    return type(x).scalar(1)


def _default_is_zero(x):
    return not x


class CommutativityWitness:
    """Record that all pairwise commutators of a series' coefficients vanish.

    ``method`` says how this was established: ``"structural"`` for a
    commutative coefficient type, ``"checked"`` when every commutator was
    computed and found zero (possibly through a custom ``is_zero``, for
    instance reduction modulo an ideal), or ``"derived"`` for series built
    from already-witnessed ones by the calculus below.
    """

    __slots__ = ("order", "method", "pairs_checked")

    def __init__(self, order, method, pairs_checked=0):
        self.order = order
        self.method = method
        self.pairs_checked = pairs_checked

    def __repr__(self):
        return f"CommutativityWitness(order={self.order}, method={self.method!r})"


def certify_commutative(series, is_zero=None, bracket=None):
    """Attach and return a witness, or raise ``CommutativityError``.

    ``bracket(x, y)`` defaults to ``x*y - y*x`` and ``is_zero`` to plain
    zero testing; pass an ideal reduction as ``is_zero`` to certify
    commutativity in a quotient.
    """
    cs = series.coeffs
    if is_zero is None and bracket is None and all(isinstance(c, _STRUCTURALLY_COMMUTATIVE) for c in cs):
        w = CommutativityWitness(series.order, "structural")
        series.witness = w
        return w
    is_zero = is_zero or _default_is_zero
    bracket = bracket or (lambda x, y: x * y - y * x)
    count = 0
    for i in range(len(cs)):
        if _ground_value(cs[i]) is not None:
            continue
        for j in range(i + 1, len(cs)):
            if _ground_value(cs[j]) is not None:
                continue
            count += 1
            if not is_zero(bracket(cs[i], cs[j])):
                raise CommutativityError(f"coefficients {i} and {j} do not commute")
    w = CommutativityWitness(series.order, "checked", count)
    series.witness = w
    return w


def _require_witness(a):
    if a.witness is None:
        certify_commutative(a)
    return a.witness


class TruncatedSeries:
    """Generating function known up to and including t^order."""

    __slots__ = ("coeffs", "witness")

    def __init__(self, coeffs, witness=None):
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        self.coeffs = coeffs
        self.witness = witness

    @property
    def order(self):
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, value, order):
        value = as_ratfunc(value) if isinstance(value, _GROUND) else value
        return cls([value] + [value * 0] * order)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.coeffs[: order + 1], self.witness)

    def _check_order(self, other):
        if not isinstance(other, TruncatedSeries):
            raise TypeError("expected a TruncatedSeries")
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other):
        self._check_order(other)
        return TruncatedSeries([x + y for x, y in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check_order(other)
        return TruncatedSeries([x - y for x, y in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return TruncatedSeries([-x for x in self.coeffs], self.witness)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([x * other for x in self.coeffs], self.witness)
        self._check_order(other)
        a, b = self.coeffs, other.coeffs
        out = []
        for n in range(len(a)):
            out.append(_dot((a[i], b[n - i]) for i in range(n + 1)))
        return TruncatedSeries(out)

    def __rmul__(self, other):
        return TruncatedSeries([other * x for x in self.coeffs], self.witness)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and all(x == y for x, y in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def equals(self, other, is_zero=None):
        self._check_order(other)
        is_zero = is_zero or _default_is_zero
        return all(is_zero(x - y) for x, y in zip(self.coeffs, other.coeffs))

    def is_normalized(self):
        c0 = _ground_value(self.coeffs[0])
        return c0 is not None and c0.is_one()

    def map(self, fn):
        return TruncatedSeries([fn(c) for c in self.coeffs])

    def __repr__(self):
        return f"TruncatedSeries(order={self.order}, coeffs={[str(c) for c in self.coeffs]})"

    def __str__(self):
        parts = []
        for n, c in enumerate(self.coeffs):
            if _ground_value(c) is not None and not _ground_value(c):
                continue
            s = str(c)
            if n and (" " in s.strip() or s.startswith("(")):
                s = f"({s})"
            parts.append(s if n == 0 else f"{s}*t" if n == 1 else f"{s}*t^{n}")
        return " + ".join(parts) if parts else "0"

    # -- JSON -------------------------------------------------------------
    def to_json(self, render=str):
        return {"order": self.order, "coeffs": [render(c) for c in self.coeffs]}

    def dumps(self, render=str):
        return json.dumps(self.to_json(render))

    @classmethod
    def from_json(cls, data, parse=None):
        if isinstance(data, str):
            data = json.loads(data)
        parse = parse or CommPoly.parse
        coeffs = [parse(c) for c in data["coeffs"]]
        order = data.get("order", len(coeffs) - 1)
        if order != len(coeffs) - 1:
            raise ValueError("order does not match the number of coefficients")
        return cls(coeffs)


# ---------------------------------------------------------------------------
# the calculus


def _dot(pairs, start=None):
    """start + sum of x*y over ``pairs``, batched when the x are CommPoly."""
    pairs = list(pairs)
    if start is not None:
        pairs.append((start, ONE))
    if pairs and all(isinstance(x, CommPoly) for x, _ in pairs):
        return CommPoly.sum_of_products(pairs)
    acc = None
    for x, y in pairs:
        acc = x * y if acc is None else acc + x * y
    return acc


def vee(a):
    """Normalize: divide by the (ground-field scalar) constant term."""
    c0 = _ground_value(a.coeffs[0])
    if c0 is None:
        raise NormalizationError("constant term is not a scalar")
    if not c0:
        raise NormalizationError("constant term is zero")
    inv = 1 / c0
    return TruncatedSeries([c * inv for c in a.coeffs], a.witness)


def inverse(a):
    """Multiplicative inverse; the constant term must be invertible."""
    _require_witness(a)
    c0 = a.coeffs[0]
    s = _ground_value(c0)
    if s is not None:
        if not s:
            raise NormalizationError("constant term is not invertible")
        inv0 = _one_like(c0) * (1 / s)
    elif hasattr(c0, "inverse"):
        try:
            inv0 = c0.inverse()
        except (ZeroDivisionError, ValueError) as exc:
            raise NormalizationError("constant term is not invertible") from exc
    else:
        raise NormalizationError("constant term is not invertible")
    b = [inv0]
    for n in range(1, len(a.coeffs)):
        acc = _dot((a.coeffs[k], b[n - k]) for k in range(1, n + 1))
        b.append(-(inv0 * acc))
    return TruncatedSeries(b, CommutativityWitness(a.order, "derived"))


def q_square(b):
    """The series b(qt) b(q^-1 t), via a_n = sum_i b_i b_{n-i} q^{2i-n}."""
    out = []
    for n in range(len(b.coeffs)):
        out.append(_dot((b.coeffs[i], b.coeffs[n - i] * qpow(2 * i - n)) for i in range(n + 1)))
    return TruncatedSeries(out)


def q_square_root(a):
    """The unique normalized b with b(qt) b(q^-1 t) = a(t)."""
    if not a.is_normalized():
        raise NormalizationError("q-square root needs a normalized series")
    _require_witness(a)
    b = [a.coeffs[0]]
    for n in range(1, len(a.coeffs)):
        acc = _dot(((b[i], b[n - i] * -qpow(2 * i - n)) for i in range(1, n)), a.coeffs[n])
        b.append(acc / (qpow(n) + qpow(-n)))
    return TruncatedSeries(b, CommutativityWitness(a.order, "derived"))


def rescale(a, c):
    """a(c t) for a scalar c."""
    c = as_ratfunc(c)
    out, p = [], ONE
    for x in a.coeffs:
        out.append(x * p)
        p = p * c
    return TruncatedSeries(out, a.witness)


def _cayley_weight(n, m, c, d):
    """Coefficient of t^n in (c t / (1 + d t^2))^m, for m >= 1."""
    if m < 1 or m > n or (n - m) % 2:
        return None
    ell = (n - m) // 2
    return c ** m * d ** ell * ((-1) ** ell * binom(m - 1 + ell, ell))


def cayley_compose(b, c, d):
    """b(u(t)) with u(t) = c t (1 + d t^2)^-1, truncated at b's order.

    With c = [2]_q, d = 1 this is b((q + q^-1)/(t + t^-1)); the scaled
    variants give the substitutions used by the q-expansion conditions.
    """
    c, d = as_ratfunc(c), as_ratfunc(d)
    bc = b.coeffs
    out = [bc[0]]
    for n in range(1, len(bc)):
        out.append(_dot((bc[m], _cayley_weight(n, m, c, d)) for m in range(n, 0, -2)))
    return TruncatedSeries(out)


def q_symmetrize(a, c=None, d=None):
    """The unique b with a(t) = b(c t / (1 + d t^2)); defaults c = [2]_q, d = 1."""
    _require_witness(a)
    c = qint(2) if c is None else as_ratfunc(c)
    d = ONE if d is None else as_ratfunc(d)
    b = [a.coeffs[0]]
    for n in range(1, len(a.coeffs)):
        acc = _dot(((b[m], -_cayley_weight(n, m, c, d)) for m in range(n - 2, 0, -2)), a.coeffs[n])
        b.append(acc / c ** n)
    return TruncatedSeries(b, CommutativityWitness(a.order, "derived"))


def qexpansion_terms(n):
    """``(j, k, ell, coeff)`` for j + k + 2 ell + 1 = n in the q-expansion
    recursion; ``coeff`` multiplies a_j b_{k+1}."""
    out = []
    for ell in range((n - 1) // 2 + 1):
        for k in range(n - 2 * ell):
            j = n - 1 - k - 2 * ell
            c = qint(2 * n - j) * qint(2) ** (k + 1) * ((-1) ** ell * binom(k + ell, ell))
            out.append((j, k, ell, c))
    return out


def qexpansion_residual(a, b, n):
    """Right side of the q-expansion recursion at index n (zero when it holds)."""
    pairs = [(a.coeffs[n], qint(n))]
    pairs += [(a.coeffs[j], b.coeffs[k + 1] * c) for j, k, _, c in qexpansion_terms(n)]
    return _dot(pairs)


def q_expand(a):
    """The q-expansion of a normalized series.

    Solves the triangular recursion for b_n; its b_n term comes from
    (j, k, ell) = (0, n-1, 0) with coefficient [2n]_q [2]_q^n.
    """
    if not a.is_normalized():
        raise NormalizationError("q-expansion needs a normalized series")
    _require_witness(a)
    one = _one_like(a.coeffs[0])
    ac = a.coeffs
    b = [one]
    for n in range(1, len(ac)):
        pairs = [(ac[n], qint(n))]
        pairs += [(ac[j], b[k + 1] * c) for j, k, _, c in qexpansion_terms(n) if not (j == 0 and k == n - 1)]
        acc = _dot(pairs)
        b.append(acc * (-1 / (qint(2 * n) * qint(2) ** n)))
    return TruncatedSeries(b, CommutativityWitness(a.order, "derived"))


class QExpansionReport:
    """Outcome of checking the three characterizations of a q-expansion."""

    def __init__(self, product_form, shifted_form, recursion_form, normalized):
        self.product_form = product_form
        self.shifted_form = shifted_form
        self.recursion_form = recursion_form
        self.normalized = normalized

    @property
    def all_hold(self):
        return self.normalized and self.product_form and self.shifted_form and self.recursion_form

    @property
    def agree(self):
        vals = {self.product_form, self.shifted_form, self.recursion_form}
        return len(vals) == 1

    def as_dict(self):
        return {
            "normalized": self.normalized,
            "product_form": self.product_form,
            "shifted_form": self.shifted_form,
            "recursion_form": self.recursion_form,
        }

    def __repr__(self):
        return f"QExpansionReport({self.as_dict()})"


def check_qexpansion_equivalences(a, b, is_zero=None):
    """Evaluate, independently, the three conditions that say b is the
    q-expansion of a:

    * product form:  a(t) b(u_+(t)) b(u_-(t)) = 1 with
      u_{+-} = (q + q^-1)/(q^{+-1} t + q^{-+1} t^-1);
    * shifted form:  a(qt) b(v_+(t)) = a(q^-1 t) b(v_-(t)) with
      v_{+-} = (q + q^-1)/(q^{+-2} t + q^{-+2} t^-1);
    * the linear recursion for every 1 <= n <= N.
    """
    a._check_order(b)
    is_zero = is_zero or _default_is_zero
    two = qint(2)
    one = TruncatedSeries.constant(_one_like(a.coeffs[0]), a.order)
    prod = a * cayley_compose(b, two * q, q ** 2) * cayley_compose(b, two * q ** -1, q ** -2)
    product_form = prod.equals(one, is_zero)
    lhs = rescale(a, q) * cayley_compose(b, two * q ** 2, q ** 4)
    rhs = rescale(a, q ** -1) * cayley_compose(b, two * q ** -2, q ** -4)
    shifted_form = lhs.equals(rhs, is_zero)
    recursion_form = all(is_zero(qexpansion_residual(a, b, n)) for n in range(1, a.order + 1))
    return QExpansionReport(product_form, shifted_form, recursion_form, b.is_normalized())


# ---------------------------------------------------------------------------
# property suite


def random_normalized_series(order, rng, symbols=("x", "y")):
    """Normalized series whose coefficients are small random polynomials in
    commuting symbols over Z[q, q^-1]."""
    coeffs = [CommPoly.scalar(1)]
    for _ in range(order):
        c = CommPoly.scalar(rng.randint(-3, 3) * qpow(rng.randint(-2, 2)))
        for _ in range(rng.randint(0, 2)):
            c = c + CommPoly.symbol(rng.choice(symbols)) * (rng.choice((-2, -1, 1, 2)) * qpow(rng.randint(-2, 2)))
        coeffs.append(c)
    return TruncatedSeries(coeffs)


def qexpansion_leading_coefficients(n):
    """Leading-coefficient claims for the q-expansion at index n.

    With a_1..a_n independent symbols, b_n = q_expand(a)_n is a polynomial
    of weighted degree n whose a_n coefficient is -[n]/([2n][2]^n).  With
    b_1..b_n independent symbols and a recovered from b through the product
    form, the b_n coefficient of a_n is -[2n][2]^n/[n].  Returns a dict of
    booleans.
    """
    a = TruncatedSeries([CommPoly.scalar(1)] + [CommPoly.symbol(f"a{i}") for i in range(1, n + 1)])
    b = q_expand(a)
    weights = {f"a{i}": i for i in range(1, n + 1)}
    expect_b = -qint(n) / (qint(2 * n) * qint(2) ** n)
    bn = b.coeffs[n]
    weighted_ok = bn.degree(weights) == n
    lead_b = bn.coefficient(((f"a{n}", 1),)) == expect_b

    bs = TruncatedSeries([CommPoly.scalar(1)] + [CommPoly.symbol(f"b{i}") for i in range(1, n + 1)])
    two = qint(2)
    prod = cayley_compose(bs, two * q, q ** 2) * cayley_compose(bs, two * q ** -1, q ** -2)
    certify_commutative(prod)
    a_back = inverse(prod)
    expect_a = -qint(2 * n) * qint(2) ** n / qint(n)
    lead_a = a_back.coeffs[n].coefficient(((f"b{n}", 1),)) == expect_a
    return {"weighted_degree": weighted_ok, "a_n_in_b_n": lead_b, "b_n_in_a_n": lead_a}


def property_suite(trials=100, order=12, seed=0, max_lead=8):
    """Seeded checks of the calculus over commuting symbols:

    * the three q-expansion conditions agree (and hold) for q_expand(a);
    * q_square(q_square_root(a)) = a and cayley_compose(q_symmetrize(a)) = a;
    * a * inverse(a) = 1;
    * the leading-coefficient claims for n <= max_lead.
    """
    import random
    import time

    from .reports import CaseResult, SuiteReport

    rng = random.Random(seed)
    cases = []
    one = TruncatedSeries.constant(CommPoly.scalar(1), order)
    for i in range(trials):
        t0 = time.perf_counter()
        a = random_normalized_series(order, rng)
        b = q_expand(a)
        rep = check_qexpansion_equivalences(a, b)
        root = q_square_root(a)
        sym = q_symmetrize(a)
        checks = {
            "qexp-agree": rep.agree and rep.all_hold,
            "sqrt-roundtrip": q_square(root) == a,
            "sym-roundtrip": cayley_compose(sym, qint(2), 1) == a,
            "inverse": a * inverse(a) == one,
        }
        ms = int(round((time.perf_counter() - t0) * 1000))
        for name, ok in checks.items():
            cases.append(CaseResult(f"series-{i}:{name}", "pass" if ok else "fail", 0 if ok else 1, ms))
    for n in range(1, max_lead + 1):
        t0 = time.perf_counter()
        res = qexpansion_leading_coefficients(n)
        ms = int(round((time.perf_counter() - t0) * 1000))
        for name, ok in res.items():
            cases.append(CaseResult(f"lead-{n}:{name}", "pass" if ok else "fail", 0 if ok else 1, ms))
    return SuiteReport("gseries", cases, {"trials": trials, "order": order, "seed": seed})
