"""
Generating functions over a commutative ring
============================================

Truncated series in t with coefficients in Q(q)[symbols].  The operations
inverse, q-square root, q-symmetrization and q-expansion each come with a
way to undo or cross-check them.
"""

import random

from qonsager import CommPoly, TruncatedSeries, inverse, q_expand, q_square_root, q_symmetrize
from qonsager import cayley_compose, check_qexpansion_equivalences, qint
from qonsager.gseries import q_square, random_normalized_series

a1, a2 = CommPoly.symbol("a1"), CommPoly.symbol("a2")
a = TruncatedSeries([CommPoly.scalar(1), a1, a2, CommPoly.scalar(0)])
print("a(t)        =", [str(c) for c in a.coeffs])
print("1/a(t)      =", [str(c) for c in inverse(a).coeffs])

b = q_square_root(a)
print("q-sqrt a    =", [str(c) for c in b.coeffs])
print("squares back:", q_square(b) == a)

s = q_symmetrize(a)
print("q-symmetrize round trip:", cayley_compose(s, qint(2), 1) == a)

# q-expansion of a random normalized series, and its three characterizations
a = random_normalized_series(8, random.Random(0))
rep = check_qexpansion_equivalences(a, q_expand(a))
print("q-expansion conditions hold and agree:", rep.all_hold and rep.agree)
