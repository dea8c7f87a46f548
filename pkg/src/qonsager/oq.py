"""Named elements of the q-Onsager algebra.

``OqElements`` runs the defining recursions in any algebra that supplies
images of the two generators: the free algebra (default) gives concrete
representatives, while passing the Askey-Wilson generators A and B gives
their images under the natural homomorphism without expanding huge words.

All recursively defined elements are memoised per instance.
"""

from dataclasses import dataclass, field
import threading

from .commpoly import CommPoly
from .exactq import binom, q, qint, qpow
from .gseries import TruncatedSeries, cayley_compose, qexpansion_terms, rescale
from .ncalg import FreeElement, W0, W1, commutator, q_commutator

__all__ = [
    "OqElements",
    "RHO",
    "B0DELTA",
    "G0",
    "Table",
    "appendix_a_table",
    "appendix_b_table",
    "appendix_b_targets",
    "tilde_g_relation_coefficients",
]

RHO = -((q ** 2 - q ** -2) ** 2)
B0DELTA = q ** -2 - 1
G0 = -(q - q ** -1) * qint(2) ** 2

_RECUR = q / ((q - q ** -1) * (q ** 2 - q ** -2))
_SQ = (q ** 2 - q ** -2) ** 2


class OqElements:
    """Memoised constructors for the PBW elements and the current-algebra elements."""

    def __init__(self, w0=W0, w1=W1, one=None):
        self.w0 = w0
        self.w1 = w1
        self.one = one if one is not None else _identity_of(w0)
        self._cache = {}
        self._lock = threading.RLock()
        self.b_delta = self.w1 * self.w0 * qpow(-2) - self.w0 * self.w1

    def _memo(self, key, build):
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        with self._lock:
            hit = self._cache.get(key)
            if hit is None:
                hit = build()
                self._cache[key] = hit
        return hit

    def scalar(self, c):
        return self.one * c

    # -- PBW elements -----------------------------------------------------
    def b_alpha0(self, n):
        if n < 0:
            raise ValueError("b_alpha0 needs n >= 0; use b_extended for negative indices")
        return self._memo(("a0", n), lambda: self._b_alpha(n, 0))

    def b_alpha1(self, n):
        if n < 0:
            raise ValueError("b_alpha1 needs n >= 0; use b_extended for negative indices")
        return self._memo(("a1", n), lambda: self._b_alpha(n, 1))

    def _b_alpha(self, n, fam):
        base = self.w0 if fam == 0 else self.w1
        other = self.w1 if fam == 0 else self.w0
        sign = 1 if fam == 0 else -1
        get = self.b_alpha0 if fam == 0 else self.b_alpha1
        if n == 0:
            return base
        prev2 = other if n == 1 else get(n - 2)
        step = commutator(self.b_delta, get(n - 1)) * _RECUR
        return prev2 + step if sign > 0 else prev2 - step

    def b_extended(self, family, n):
        """B_{n delta + alpha_family} for any integer n (negative indices reflect)."""
        if family not in (0, 1):
            raise ValueError("family must be 0 or 1")
        if n >= 0:
            return self.b_alpha0(n) if family == 0 else self.b_alpha1(n)
        return self.b_alpha1(-n - 1) if family == 0 else self.b_alpha0(-n - 1)

    def b_ndelta(self, n):
        if n < 0:
            raise ValueError("b_ndelta needs n >= 0")
        return self._memo(("d", n), lambda: self._b_ndelta(n))

    def _b_ndelta(self, n):
        if n == 0:
            return self.scalar(B0DELTA)
        if n == 1:
            return self.b_delta
        prev = self.b_alpha1(n - 1)
        acc = prev * self.w0 * qpow(-2) - self.w0 * prev
        tail = None
        for ell in range(n - 1):
            term = self.b_alpha1(ell) * self.b_alpha1(n - ell - 2)
            tail = term if tail is None else tail + term
        return acc + tail * B0DELTA

    def b_series(self, order):
        return TruncatedSeries([self.b_ndelta(n) for n in range(order + 1)])

    # -- current-algebra elements ----------------------------------------
    def tilde_g(self, n):
        """G~_n, solved from the triangular q-expansion relation with B(t)."""
        if n < 0:
            raise ValueError("tilde_g needs n >= 0")
        return self._memo(("gt", n), lambda: self._tilde_g(n))

    def _tilde_g(self, n):
        if n == 0:
            return self.scalar(G0)
        acc = self.b_ndelta(n) * self.tilde_g(0) * qint(n)
        for j, k, ell, coeff in qexpansion_terms(n):
            if j == 0 and k == n - 1:
                continue
            acc = acc + self.b_ndelta(j) * self.tilde_g(k + 1) * coeff
        pivot = qint(2 * n) * qint(2) ** n * B0DELTA
        return acc * (-1 / pivot)

    def w_minus(self, k):
        """W_{-k}."""
        return self._memo(("wm", k), lambda: self._w(k, minus=True))

    def w_plus(self, k):
        """W_{k+1}."""
        return self._memo(("wp", k), lambda: self._w(k, minus=False))

    def _w(self, k, minus):
        if k < 0:
            raise ValueError("index must be >= 0")
        w0, w1, gt = self.w0, self.w1, self.tilde_g
        if k == 0:
            return w0 if minus else w1
        r, odd = divmod(k, 2)
        # odd k = 2r+1: W_{-k} starts from W1, W_{k+1} from W0; even k swaps
        if odd:
            n_odd, start_minus = r + 1, True
        else:
            n_odd, start_minus = r, False
        from_w1 = start_minus if minus else not start_minus
        acc = w1 if from_w1 else w0
        for ell in range(n_odd):
            g = gt(2 * ell + 1)
            acc = acc - (q_commutator(g, w0) if from_w1 else q_commutator(w1, g)) / _SQ
        for ell in range(1, r + 1):
            g = gt(2 * ell)
            acc = acc - (q_commutator(w1, g) if from_w1 else q_commutator(g, w0)) / _SQ
        return acc

    def g(self, n):
        """G_n for n >= 1: G~_n + (q + q^-1) [W1, W_{-(n-1)}]."""
        if n < 1:
            raise ValueError("g needs n >= 1")
        return self._memo(
            ("g", n), lambda: self.tilde_g(n) + commutator(self.w1, self.w_minus(n - 1)) * qint(2)
        )

    def w_alt_minus(self, n):
        """W_{-n} from the B_{k delta+alpha_0} G~ double sum (equal modulo the ideal)."""
        return self._memo(("wam", n), lambda: _w_alt(n, 0, self.b_extended, self.tilde_g))

    def w_alt_plus(self, n):
        """W_{n+1} from the B_{k delta+alpha_1} G~ double sum."""
        return self._memo(("wap", n), lambda: _w_alt(n, 1, self.b_extended, self.tilde_g))

    def clear_cache(self):
        with self._lock:
            self._cache.clear()


def _identity_of(x):
    if hasattr(x, "identity"):
        return x.identity()
    if isinstance(x, FreeElement):
        return FreeElement.scalar(1)
    raise TypeError("pass one= for this algebra")


def _w_alt(n, fam, bfun, gfun):
    pref = -1 / (q - q ** -1)
    acc = None
    for k in range(n + 1):
        for ell in range(k + 1):
            m = k - 2 * ell
            qp = qpow(m) if fam == 0 else qpow(-m)
            c = pref * qp * qint(2) ** (-k - 2) * binom(k, ell)
            term = bfun(fam, m) * gfun(n - k) * c
            acc = term if acc is None else acc + term
    return acc


# ---------------------------------------------------------------------------
# coefficient tables


@dataclass
class Table:
    """Integer coefficient matrix with row and column labels."""

    target: str
    rows: list
    cols: list
    entries: list
    prefactor: str = ""
    beyond_paper: bool = False
    notes: dict = field(default_factory=dict)

    def to_json(self):
        out = {"target": self.target, "rows": self.rows, "cols": self.cols, "entries": self.entries}
        if self.prefactor:
            out["prefactor"] = self.prefactor
        if self.beyond_paper:
            out["beyond_paper"] = True
        return out

    def row(self, label):
        return self.entries[self.rows.index(label)]


def _qint_label(m):
    return f"[{m}]_q"


def _g_row_label(k):
    if k == 0:
        return "G~_0"
    if k == 1:
        return "[2]_q G~_1"
    return f"[2]_q^{k} G~_{k}"


def _b_delta_label(j):
    return {0: "B_0d", 1: "B_d"}.get(j, f"B_{j}d")


def tilde_g_relation_coefficients(n):
    """Bilinear coefficients c[(j, K)] of B_j G~_K in the degree-n relation.

    Derived through the series calculus: the t^n coefficient of
    ``B(qt) G~(u+) - B(q^-1 t) G~(u-)`` where ``u+-`` are the Cayley-type
    substitutions with scale q^{+-2}.  Coefficients B_j, G~_K are treated as
    independent commuting symbols, so no solving is involved.
    """
    bser = TruncatedSeries([CommPoly.symbol(f"B{j}") for j in range(n + 1)])
    gser = TruncatedSeries([CommPoly.symbol(f"G{k}") for k in range(n + 1)])
    two = qint(2)
    lhs = rescale(bser, q) * cayley_compose(gser, two * q ** 2, q ** 4)
    rhs = rescale(bser, q ** -1) * cayley_compose(gser, two * q ** -2, q ** -4)
    diff = lhs.coeffs[n] - rhs.coeffs[n]
    out = {}
    for mono, c in diff.terms.items():
        names = dict(mono)
        bs = [int(v[1:]) for v in names if v[0] == "B"]
        gs = [int(v[1:]) for v in names if v[0] == "G"]
        if len(bs) != 1 or len(gs) != 1 or sum(names.values()) != 2:
            raise ArithmeticError("relation is not bilinear in B and G~")
        out[(bs[0], gs[0])] = c
    return out


def appendix_a_table(n):
    """Integer form of the relation determining G~_n from B_delta .. B_{n delta}.

    Rows are ``[2]_q^K G~_K`` (K = 0..n), columns ``[2n-j]_q B_{j delta}``
    (j = 0..n).  Entries are obtained by dividing the symbolic bilinear
    coefficients by ``(q - q^-1) [2n-j]_q [2]_q^K``; a non-integer quotient
    raises ``ArithmeticError``.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("appendix A tables are indexed by n >= 1")
    coeffs = tilde_g_relation_coefficients(n)
    scale = q - q ** -1
    entries = [[0] * (n + 1) for _ in range(n + 1)]
    for (j, k), c in coeffs.items():
        ratio = c / (scale * qint(2 * n - j) * qint(2) ** k)
        if not ratio.is_constant() or ratio.constant_value().denominator != 1:
            raise ArithmeticError(f"non-integer entry at ({j}, {k}): {ratio}")
        entries[k][j] = int(ratio.constant_value())
    return Table(
        target=f"G~_{n}",
        rows=[_g_row_label(k) for k in range(n + 1)],
        cols=[f"{_qint_label(2 * n - j)} {_b_delta_label(j)}" for j in range(n + 1)],
        entries=entries,
        beyond_paper=n > 8,
    )


def appendix_b_targets():
    """Labels of the sixteen tables in the usual order: W_0..W_-7 then W_1..W_8."""
    return [f"W_{-n}" if n else "W_0" for n in range(8)] + [f"W_{n + 1}" for n in range(8)]


def _pbw_label(fam, m):
    """Row label ``q^e B_{...}`` for the term B_{m delta + alpha_fam}."""
    e = m if fam == 0 else -m
    if m < 0:
        fam, m = 1 - fam, -m - 1
    idx = {0: "", 1: "d+"}.get(m, f"{m}d+")
    body = f"B_{idx}a{fam}"
    if e == 0:
        return body
    return f"q^{e} {body}" if e != 1 else f"q {body}"


def _parse_b_target(target):
    if isinstance(target, int):
        raise ValueError("give the target as a label such as 'W_-3' or 'W_4'")
    t = target.replace(" ", "").replace("{", "").replace("}", "")
    if not t.startswith("W_"):
        raise ValueError(f"unknown appendix B target {target!r}")
    idx = int(t[2:])
    if idx <= 0:
        return 0, -idx
    return 1, idx - 1


def appendix_b_table(target):
    """Integer coefficient matrix of W_{-n} (family 0) or W_{n+1} (family 1).

    The element is expanded symbolically through the double-sum formula with
    the B and G~ factors kept as opaque letters; each coefficient is divided
    by the common prefactor ``-(q - q^-1)^-1 [2]_q^{-n-2}``, the row's power
    of q and the column's ``[2]_q^K``.
    """
    fam, n = _parse_b_target(target)
    if n < 0:
        raise ValueError("index out of range")

    def bsym(f, m):
        return FreeElement.letter(("B", f, m) if m >= 0 else ("B", 1 - f, -m - 1))

    def gsym(k):
        return FreeElement.letter(("G", k))

    expr = _w_alt(n, fam, bsym, gsym)
    pref = -1 / (q - q ** -1) * qint(2) ** (-n - 2)
    # rows run through increasing powers of q
    row_ms = list(range(-n, n + 1)) if fam == 0 else list(range(n, -n - 1, -1))
    rows = [_pbw_label(fam, m) for m in row_ms]
    entries = [[0] * (n + 1) for _ in row_ms]
    for word, c in expr.terms.items():
        (_, f, idx), (_, k) = word
        m = idx if f == fam else -idx - 1
        e = m if fam == 0 else -m
        ratio = c / (pref * qpow(e) * qint(2) ** k)
        if not ratio.is_constant() or ratio.constant_value().denominator != 1:
            raise ArithmeticError(f"non-integer entry for {word}: {ratio}")
        entries[row_ms.index(m)][k] = int(ratio.constant_value())
    label = f"W_{-n}" if fam == 0 else f"W_{n + 1}"
    if fam == 0 and n == 0:
        label = "W_0"
    return Table(
        target=label,
        rows=rows,
        cols=[_g_row_label(k) for k in range(n + 1)],
        entries=entries,
        prefactor=f"-(q - q^-1)^-1 [2]_q^{-n - 2}",
        beyond_paper=n > 7,
    )
