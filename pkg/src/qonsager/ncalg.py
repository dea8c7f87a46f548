"""Free associative algebra over Q(q).

Elements are sparse maps from words (tuples of letters) to ``RatFuncQ``.
The default alphabet is ``{0, 1}`` standing for the generators W0 < W1;
other hashable letters work too (the appendix tables use symbolic letters).
"""

from fractions import Fraction

from ._parse import parse_expression
from .exactq import ONE, ZERO, RatFuncQ, as_ratfunc, q, qpow

__all__ = [
    "FreeElement",
    "W0",
    "W1",
    "word_key",
    "commutator",
    "q_commutator",
    "dolan_grady_generators",
    "apply_hom",
    "MissingImageError",
]

_SCALARS = (int, Fraction, RatFuncQ)


class MissingImageError(KeyError):
    pass


def word_key(w):
    """Deglex sort key: shorter words first, then lexicographic with W0 < W1."""
    return (len(w), w)


def _letter_name(letter, names):
    if names and letter in names:
        return names[letter]
    if isinstance(letter, int):
        return f"W{letter}"
    return str(letter)


class FreeElement:
    """Finite Q(q)-linear combination of words."""

    __slots__ = ("terms", "names")

    def __init__(self, terms=None, names=None):
        self.terms = {}
        if terms:
            for w, c in terms.items():
                c = as_ratfunc(c)
                if c:
                    self.terms[tuple(w)] = c
        self.names = names

    @classmethod
    def _wrap(cls, terms, names=None):
        obj = object.__new__(cls)
        obj.terms = terms
        obj.names = names
        return obj

    @classmethod
    def scalar(cls, c):
        c = as_ratfunc(c)
        return cls._wrap({(): c} if c else {})

    @classmethod
    def letter(cls, a, names=None):
        return cls._wrap({(a,): ONE}, names)

    # -- structure ----------------------------------------------------------
    def degree(self):
        """Maximal word length; -1 for the zero element."""
        return max((len(w) for w in self.terms), default=-1)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def as_scalar(self):
        """The coefficient of the empty word if the element is a scalar, else None."""
        if not self.terms:
            return ZERO
        if len(self.terms) == 1 and () in self.terms:
            return self.terms[()]
        return None

    def coefficient(self, word):
        return self.terms.get(tuple(word), ZERO)

    def homogeneous_part(self, d):
        return FreeElement._wrap({w: c for w, c in self.terms.items() if len(w) == d}, self.names)

    def sorted_terms(self, reverse=True):
        try:
            return sorted(self.terms.items(), key=lambda t: word_key(t[0]), reverse=reverse)
        except TypeError:
            return sorted(self.terms.items(), key=lambda t: (len(t[0]), repr(t[0])), reverse=reverse)

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, FreeElement):
            return other
        if isinstance(other, _SCALARS):
            return FreeElement.scalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for w, c in small.items():
            v = out.get(w)
            if v is None:
                out[w] = c
            else:
                v = v + c
                if v:
                    out[w] = v
                else:
                    del out[w]
        return FreeElement._wrap(out, self.names or other.names)

    __radd__ = __add__

    def __neg__(self):
        return FreeElement._wrap({w: -c for w, c in self.terms.items()}, self.names)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w)
            if v is None:
                out[w] = -c
            else:
                v = v - c
                if v:
                    out[w] = v
                else:
                    del out[w]
        return FreeElement._wrap(out, self.names or other.names)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = as_ratfunc(c)
        if not c:
            return FreeElement._wrap({}, self.names)
        if c.is_one():
            return self
        return FreeElement._wrap({w: v * c for w, v in self.terms.items()}, self.names)

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return self.scale(other)
        if not isinstance(other, FreeElement):
            return NotImplemented
        out = {}
        get = out.get
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                v = get(w)
                out[w] = c if v is None else v + c
        return FreeElement._wrap({w: c for w, c in out.items() if c}, self.names or other.names)

    def __rmul__(self, other):
        if isinstance(other, _SCALARS):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            return self.scale(1 / as_ratfunc(other))
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = FreeElement.scalar(1)
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
        return FreeElement({w: fn(c) for w, c in self.terms.items()}, self.names)

    def swap_letters(self, a=0, b=1):
        """Image under the automorphism exchanging letters ``a`` and ``b``."""
        tr = {a: b, b: a}
        return FreeElement._wrap(
            {tuple(tr.get(x, x) for x in w): c for w, c in self.terms.items()}, self.names
        )

    # -- text -----------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            word = "*".join(_letter_name(x, self.names) for x in w)
            if not word:
                body = str(c)
                neg = False
                if body.startswith("-") and not c.needs_parens():
                    neg, body = True, body[1:]
                elif c.needs_parens():
                    body = f"({body})"
            elif c.is_one():
                neg, body = False, word
            elif (-c).is_one():
                neg, body = True, word
            else:
                s = str(c)
                if c.needs_parens():
                    neg, body = False, f"({s})*{word}"
                elif s.startswith("-"):
                    neg, body = True, f"{s[1:]}*{word}"
                else:
                    neg, body = False, f"{s}*{word}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"FreeElement({str(self)!r})"

    @classmethod
    def parse(cls, text, letters=None):
        """Parse the rendering grammar, e.g. ``(q - q^-1)*W0*W1 + W1``."""
        letters = letters or {"W0": 0, "W1": 1}

        def resolve(tok):
            if isinstance(tok, Fraction):
                return FreeElement.scalar(tok)
            if tok == "q":
                return FreeElement.scalar(q)
            if tok in letters:
                return FreeElement.letter(letters[tok])
            raise ValueError(f"unknown symbol {tok!r}")

        def divide(a, b):
            s = b.as_scalar() if isinstance(b, FreeElement) else as_ratfunc(b)
            if s is None or not s:
                raise ValueError("division by a non-scalar or zero")
            return a / s

        return parse_expression(text, resolve, divide)


def _pow_free(base, n):
    s = base.as_scalar()
    if s is not None:
        return FreeElement.scalar(s ** n)
    if n < 0:
        raise ValueError("negative power of a non-scalar")
    return FreeElement.__pow__(base, n)


# negative powers of scalars (q^-1) appear in the text grammar
FreeElement.__pow__ = _pow_free

W0 = FreeElement.letter(0)
W1 = FreeElement.letter(1)


def commutator(x, y):
    """[x, y] = xy - yx."""
    return x * y - y * x


def q_commutator(x, y, k=1):
    """[x, y]_{q^k} = q^k xy - q^-k yx."""
    return x * y * qpow(k) - y * x * qpow(-k)


def dolan_grady_generators(w0=W0, w1=W1):
    """The two q-Dolan/Grady relators (left side minus right side).

    ``[w0,[w0,[w0,w1]_q]_{q^-1}] - (q^2-q^-2)^2 [w1,w0]`` and the same
    with the roles of ``w0`` and ``w1`` exchanged.
    """
    c = (q ** 2 - q ** -2) ** 2

    def rel(x, y):
        return commutator(x, q_commutator(x, q_commutator(x, y), -1)) - commutator(y, x) * c

    return rel(w0, w1), rel(w1, w0)


def apply_hom(x, images, one=None):
    """Evaluate the homomorphism sending letter ``a`` to ``images[a]``.

    ``one`` is the identity of the target algebra; it defaults to
    ``images[letter] ** 0``-free construction via scalar multiplication of
    an image, so targets only need ``+``, ``*`` and scalar action.
    """
    if one is None:
        try:
            sample = next(iter(images.values()))
        except StopIteration:
            raise MissingImageError("no images given") from None
        one = _identity_like(sample)
    cache = {(): one}

    def prod(w):
        hit = cache.get(w)
        if hit is not None:
            return hit
        if w[-1] not in images:
            raise MissingImageError(f"no image for generator {w[-1]!r}")
        val = prod(w[:-1]) * images[w[-1]]
        cache[w] = val
        return val

    acc = one * 0
    for w, c in x.sorted_terms(reverse=False):
        for a in w:
            if a not in images:
                raise MissingImageError(f"no image for generator {a!r}")
        acc = acc + prod(w) * c
    return acc


def _identity_like(sample):
    if hasattr(sample, "identity"):
        return sample.identity()
    if isinstance(sample, FreeElement):
        return FreeElement.scalar(1)
    raise MissingImageError("cannot infer identity of target algebra; pass one=")
