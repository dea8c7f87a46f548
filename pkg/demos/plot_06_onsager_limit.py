"""
The q = 1 limit: the Onsager algebra
====================================

At q = 1 the algebra becomes the Onsager Lie algebra with basis A_n, B_m.
The limits of the current elements satisfy the same relation families
with brackets in place of q-brackets.
"""

from qonsager.onsager import A, B, bracket, jacobi_check, tilde_g_prime, verify_onsager, w_prime

print("[A_1, A_0] =", bracket(A(1), A(0)))
print("[B_1, A_0] =", bracket(B(1), A(0)))
for n in range(1, 4):
    print(f"G~'_{n} =", tilde_g_prime(n))
for k in (-2, -1, 0, 1, 2):
    print(f"W'_{k} =", w_prime(k))

# W'_{-1} is not A_{-1}: that choice would not commute with W'_0
print("[A_0, A_-1] =", bracket(A(0), A(-1)), "  [W'_0, W'_-1] =", bracket(w_prime(0), w_prime(-1)))

print(verify_onsager(10).summary())
print(jacobi_check(1000).summary())
