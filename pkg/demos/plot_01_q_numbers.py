"""
Exact arithmetic in Q(q)
========================

Every scalar in the package is a rational function of an indeterminate q,
kept in a canonical form so that equality is decidable.
"""

from qonsager import RatFuncQ, eval_limit_q1, q, qint

# q-integers [n]_q = (q^n - q^-n)/(q - q^-1) are Laurent polynomials
for n in range(1, 5):
    print(f"[{n}]_q =", qint(n))

# a quotient that looks rational but cancels
f = (q ** 4 - q ** -4) / (q - q ** -1)
print("(q^4 - q^-4)/(q - q^-1) =", f, "| Laurent:", f.is_laurent())

# identities are checked by subtraction; zero means zero
print("[2]^2 - [3] - 1 =", qint(2) ** 2 - qint(3) - 1)

# a genuine fraction keeps its denominator
g = (q + 2) / (q ** 2 + 1)
print("g =", g, "  parsed back:", RatFuncQ.parse(str(g)) == g)

# the classical limit q -> 1
print("[7]_q at q = 1:", eval_limit_q1(qint(7)))
