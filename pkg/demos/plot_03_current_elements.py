"""
Current elements in the free algebra
====================================

The elements G~_n, W_{-k}, W_{k+1}, G_n are built as noncommutative
polynomials in W0, W1 from the PBW elements B_{n delta}.  Their expansions
in the B's reproduce the known integer coefficient tables.
"""

from qonsager import OqElements, W0, W1, appendix_a_table, appendix_b_table
from qonsager.ncalg import q_commutator

E = OqElements()

print("G~_1 - [W0, W1]_q =", E.tilde_g(1) - q_commutator(W0, W1))
for n in range(1, 5):
    print(f"deg G~_{n} = {E.tilde_g(n).degree()},  deg W_-{n} = {E.w_minus(n).degree()}")

print()
print(appendix_a_table(6).to_json())
t = appendix_b_table("W_-5")
for label, row in zip(t.rows, t.entries):
    print(f"{label:>12}: {row}")
