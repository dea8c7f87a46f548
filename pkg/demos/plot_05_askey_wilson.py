"""
The universal Askey-Wilson algebra
==================================

A, B, C with central elements alpha, beta, gamma and the Casimir Omega.
Sending W0 -> A, W1 -> B kills the q-Dolan/Grady relations, and the
generating functions Z(t), G~(t), W+-(t), G(t) have closed forms in the
center.  The relations among their coefficients hold exactly, without
any degree bound.
"""

from qonsager.deltaq import (
    A,
    B,
    C,
    casimir,
    is_central,
    natural_hom,
    rho,
    sigma,
    verify_nzz,
    verify_relations_delta,
)
from qonsager.ncalg import dolan_grady_generators

print("B*A =", B * A)
print("Omega central:", is_central(casimir()))
print("rho(Omega) = sigma(Omega) = Omega:", rho(casimir()) == casimir() == sigma(casimir()))
print("sigma(C) =", sigma(C))
print("q-Dolan/Grady images vanish:", all(natural_hom(g) == 0 for g in dolan_grady_generators()))

print(verify_nzz(6).summary())
print(verify_relations_delta(3).summary())
