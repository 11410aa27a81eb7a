"""At p = 17 the quadratic 2x^2 - 10x + 3 acquires roots, and arrows of length 6 appear.

Run:  python3 demos/difference_six_at_p17.py   (about 10 seconds)
"""

from wittquiver import der1, quiver, rep
from wittquiver.gf import poly_roots

for p in (7, 11, 13, 17):
    print(f"p={p:2d}: roots of 2x^2-10x+3 = {poly_roots([3, -10, 2], p)}")

p = 17
q = quiver.build_quiver(p, -1, "verma", "derivation")
six = sorted((a, b) for (a, b) in q.edges if (b - a) % p == 6)
print("length-6 arrows between Verma modules:", six)

# the same arrows seen directly in the derivation weight spaces
for mu, lam in six:
    Z = rep.verma(p, lam)
    print(f"  H^1(n+, Z({lam}))_{mu}: Der {der1.der_space(Z, mu).dim}, Inn {der1.inn_space(Z, mu).dim},"
          f" restricted H^1 {der1.restricted_h1(Z, mu)}")
