"""Hochschild homology of free inputs and divided powers in char p.

Polynomial generators contribute exterior sigma-classes; exterior
generators contribute divided-power sigma-classes, stored as truncated
height-p factors on gamma_{p^k}, where the multiplication law
gamma_i gamma_j = C(i+j, i) gamma_{i+j} holds on the nose by Lucas.
"""

import math

from bockstein import (
    Algebra,
    GeneratorSpec,
    divided_gamma,
    expand_divided,
    hh_dims,
    hh_free,
    multiply,
    rational_thh_dims,
)

# rational: HH of P_Q(v1, v2) carries E_Q(sigma v1, sigma v2)
p = 3
A = Algebra(p, (GeneratorSpec("v1", 2 * p - 2, "polynomial"),
                GeneratorSpec("v2", 2 * p * p - 2, "polynomial")))
res = hh_free(A, 0)
print("char 0 generators:", [(g.name, g.degree, g.kind) for g in res.algebra.generators])
print("rational dims through 30:", rational_thh_dims(p, 2, 30))

# char p: E(x) with |x| = 3 at p = 2 gives E(x) (x) Gamma(sigma x)
Ax = Algebra(2, (GeneratorSpec("x", 3, "exterior"),))
res2 = hh_free(Ax, 2)
print("\nchar 2 dims of HH(E(x)) through 8:",
      [hh_dims(res2, 8).get(d, 0) for d in range(9)])

# the divided-power law, exactly
G = expand_divided(Algebra(p, (GeneratorSpec("y", 4, "divided"),)), 200)
print("\nexpanded Gamma(y):", [(g.name, g.degree) for g in G.generators])
i, j = 4, 7
lhs = multiply(divided_gamma(G, "y", i), divided_gamma(G, "y", j), G)
c = math.comb(i + j, i) % p
print(f"gamma_{i} * gamma_{j} == C({i + j},{i}) gamma_{i + j} mod {p}:",
      lhs == {m: (c * v) % p for m, v in divided_gamma(G, "y", i + j).items() if (c * v) % p})
