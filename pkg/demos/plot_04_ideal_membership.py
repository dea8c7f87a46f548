"""
Relations modulo the q-Dolan/Grady ideal
========================================

Membership in the two-sided ideal generated by the q-Dolan/Grady relations
is decided up to a degree bound D by linear algebra over Q(q) on the
padded generators u*g*v.  A member comes with a certificate; a nonmember
with its reduced residual.
"""

from qonsager import OqElements, W0, commutator
from qonsager.ideal_check import MutatedElements, build_basis, reduce, verify_conjecture

E = OqElements()

basis = build_basis(6)
print(f"D = 6: {len(basis.generators)} padded generators, rank {basis.rank}")

x = commutator(E.b_ndelta(1), E.b_ndelta(2))
rep = reduce(x, 6)
print("[B_d, B_2d] in ideal:", rep.is_member, "| certificate terms:", len(rep.certificate))
print("certificate rebuilds x:", rep.certificate_element(basis) == x)

print("W0 in ideal:", reduce(W0, 6).is_member)

# all relation families at small indices
print(verify_conjecture(1, 6).summary())

# changing the sign of G~_2 breaks them
print(verify_conjecture(2, 8, elements=MutatedElements(2)).summary())
