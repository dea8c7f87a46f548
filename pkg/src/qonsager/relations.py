"""The eleven relation families of the current algebra, built generically.

Each family is evaluated on a source of elements providing ``w0``, ``w1``,
``w_minus(k)`` (W_{-k}), ``w_plus(k)`` (W_{k+1}), ``g(n)`` and ``tilde_g(n)``.
The same builders serve the free algebra, the Askey-Wilson algebra and the
q = 1 Onsager algebra; only the bracket and two constants change.

Families are named ``R1`` .. ``R11`` in the order they are usually listed:

R1   [W0, W_{k+1}] = [W_{-k}, W1] = (G~_{k+1} - G_{k+1}) / (q + q^-1)
R2   [W0, G_{k+1}]_q = [G~_{k+1}, W0]_q = rho W_{-k-1} - rho W_{k+1}
R3   [G_{k+1}, W1]_q = [W1, G~_{k+1}]_q = rho W_{k+2} - rho W_{-k}
R4   [W_{-k}, W_{-l}] = 0,  [W_{k+1}, W_{l+1}] = 0
R5   [W_{-k}, W_{l+1}] + [W_{k+1}, W_{-l}] = 0
R6   [W_{-k}, G_{l+1}] + [G_{k+1}, W_{-l}] = 0
R7   [W_{-k}, G~_{l+1}] + [G~_{k+1}, W_{-l}] = 0
R8   [W_{k+1}, G_{l+1}] + [G_{k+1}, W_{l+1}] = 0
R9   [W_{k+1}, G~_{l+1}] + [G~_{k+1}, W_{l+1}] = 0
R10  [G_{k+1}, G_{l+1}] = 0,  [G~_{k+1}, G~_{l+1}] = 0
R11  [G~_{k+1}, G_{l+1}] + [G_{k+1}, G~_{l+1}] = 0
"""

from .exactq import q, qint
from .ncalg import commutator, q_commutator

__all__ = [
    "RELATION_IDS",
    "RELATION_NAMES",
    "TWO_INDEX",
    "RelationContext",
    "relation_parts",
    "nominal_degree",
    "constituent_degree",
    "sweep_instances",
]

RELATION_IDS = tuple(f"R{i}" for i in range(1, 12))
TWO_INDEX = frozenset(f"R{i}" for i in range(4, 12))

RELATION_NAMES = {
    "R1": "W0-W_{k+1} bracket",
    "R2": "W0-G_{k+1} q-bracket",
    "R3": "G_{k+1}-W1 q-bracket",
    "R4": "W commute among themselves",
    "R5": "W_{-k}, W_{l+1} cross",
    "R6": "W_{-k}, G cross",
    "R7": "W_{-k}, G~ cross",
    "R8": "W_{k+1}, G cross",
    "R9": "W_{k+1}, G~ cross",
    "R10": "G commute among themselves",
    "R11": "G~, G cross",
}


class RelationContext:
    """Elements plus the bracket conventions of the ambient algebra."""

    def __init__(self, elements, bracket=commutator, q_bracket=q_commutator, rho=None, qsum=None):
        self.e = elements
        self.br = bracket
        self.qbr = q_bracket
        self.rho = -((q ** 2 - q ** -2) ** 2) if rho is None else rho
        self.qsum = qint(2) if qsum is None else qsum


def relation_parts(ctx, rid, k, l=0):
    """List of ``(label, element)``; each element must vanish for the relation to hold."""
    e, br, qbr, rho = ctx.e, ctx.br, ctx.qbr, ctx.rho
    W0, W1 = e.w0, e.w1
    Wm, Wp, G, Gt = e.w_minus, e.w_plus, e.g, e.tilde_g
    if rid == "R1":
        lhs = br(W0, Wp(k))
        return [
            ("first=second", lhs - br(Wm(k), W1)),
            ("first=third", lhs - (Gt(k + 1) - G(k + 1)) * (1 / ctx.qsum)),
        ]
    if rid == "R2":
        lhs = qbr(W0, G(k + 1))
        return [
            ("first=second", lhs - qbr(Gt(k + 1), W0)),
            ("first=third", lhs - (Wm(k + 1) * rho - Wp(k) * rho)),
        ]
    if rid == "R3":
        lhs = qbr(G(k + 1), W1)
        return [
            ("first=second", lhs - qbr(W1, Gt(k + 1))),
            ("first=third", lhs - (Wp(k + 1) * rho - Wm(k) * rho)),
        ]
    if rid == "R4":
        return [("minus", br(Wm(k), Wm(l))), ("plus", br(Wp(k), Wp(l)))]
    if rid == "R5":
        return [("sum", br(Wm(k), Wp(l)) + br(Wp(k), Wm(l)))]
    if rid == "R6":
        return [("sum", br(Wm(k), G(l + 1)) + br(G(k + 1), Wm(l)))]
    if rid == "R7":
        return [("sum", br(Wm(k), Gt(l + 1)) + br(Gt(k + 1), Wm(l)))]
    if rid == "R8":
        return [("sum", br(Wp(k), G(l + 1)) + br(G(k + 1), Wp(l)))]
    if rid == "R9":
        return [("sum", br(Wp(k), Gt(l + 1)) + br(Gt(k + 1), Wp(l)))]
    if rid == "R10":
        return [("G", br(G(k + 1), G(l + 1))), ("G~", br(Gt(k + 1), Gt(l + 1)))]
    if rid == "R11":
        return [("sum", br(Gt(k + 1), G(l + 1)) + br(G(k + 1), Gt(l + 1)))]
    raise ValueError(f"unknown relation id {rid!r}")


def nominal_degree(rid, k, l=0):
    """Word-length bound for the free-algebra instance, from deg W_{-k} = deg W_{k+1}
    = 2k+1 and deg G_n = deg G~_n = 2n."""
    if rid == "R1":
        return 2 * k + 2
    if rid in ("R2", "R3"):
        return 2 * k + 3
    if rid in ("R4", "R5"):
        return 2 * k + 2 * l + 2
    if rid in ("R6", "R7", "R8", "R9"):
        return 2 * k + 2 * l + 3
    if rid in ("R10", "R11"):
        return 2 * k + 2 * l + 4
    raise ValueError(f"unknown relation id {rid!r}")


def constituent_degree(rid, k, l=0):
    """Largest nominal degree among the elements a relation instance is built from."""
    if rid == "R1":
        return 2 * k + 2
    if rid in ("R2", "R3"):
        return 2 * k + 3
    if rid in ("R4", "R5"):
        return 2 * max(k, l) + 1
    if rid in RELATION_IDS:
        return 2 * max(k, l) + 2
    raise ValueError(f"unknown relation id {rid!r}")


def sweep_instances(max_index, square=True, ids=RELATION_IDS):
    """(rid, k, l) triples of a sweep.

    Single-index families run over k <= max_index and two-index families over
    all 0 <= k, l <= max_index.  ``square=False`` restricts the two-index
    families to k + l <= max_index.
    """
    out = []
    for rid in ids:
        if rid not in TWO_INDEX:
            out.extend((rid, k, 0) for k in range(max_index + 1))
            continue
        for k in range(max_index + 1):
            for l in range(max_index + 1):
                if square or k + l <= max_index:
                    out.append((rid, k, l))
    return out
