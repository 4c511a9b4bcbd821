"""Lower-bound certificates: the prime and two-prime pipelines.

The size of a Kakeya set is bounded below by the rank of its line matrix,
and multiplying the line matrix by a fixed matrix gives a set-independent
handle on that rank.  Over a prime field the fixed matrix is the incidence
matrix; over N = p*q it is (incidence mod p) tensor identity.  Each report
re-verifies the row identities and prints the computed rank chain.
"""

import json

from ringkakeya import (
    RingSpec,
    certify_prime,
    certify_two_primes,
    crt_product,
    full_set,
    tangent_construction,
)

print("prime pipeline on the tangent set in F_5^2")
T = tangent_construction(5, 2)
r = certify_prime(T)
print(json.dumps(r.to_json_dict(), indent=2, sort_keys=True))

print("\nprime pipeline across sets: certified bound vs actual size")
for p, n in [(2, 2), (3, 2), (5, 2), (3, 3)]:
    for name, S in [("full", full_set(RingSpec.make(p, n))),
                    ("tangent", tangent_construction(p, n))]:
        rep = certify_prime(S)
        print(f"  p={p} n={n} {name:>7}: |S|={S.size:>3}  "
              f"certified >= {rep.certified:>2}  passed={rep.passed}")

print("\ntwo-prime pipeline over (Z/15)^2 (matrices over F_3)")
spec = RingSpec.make(15, 2)
S = crt_product([tangent_construction(3, 2), tangent_construction(5, 2)], spec)
r2 = certify_two_primes(S)
q = r2.quantities
print(f"  |S| = {S.size}, rank of line matrix = {q['rank_MS']}")
print(f"  rank after tensor multiplication = {q['rank_product']}")
print(f"  independent hyperplane span {q['dim_V']} x per-direction line "
      f"span >= {q['min_rank_B']} -> lower bound {q['tensor_lower_bound']}")
print(f"  closed-form bound: {r2.closed_form} ; all checks passed: {r2.passed}")
