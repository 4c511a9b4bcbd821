"""Kakeya set constructions and the exhaustive minimum-size oracle.

Builds the tangent (parabola) construction over prime fields, combines
per-prime sets through the CRT into sets over Z/NZ, takes Cartesian powers,
and compares everything against the closed-form lower bounds and the exact
optimum found by branch-and-bound at tiny sizes.
"""

from ringkakeya import (
    RingSpec,
    crt_product,
    fq_bound,
    min_kakeya_search,
    power_product,
    squarefree_bound,
    tangent_construction,
    verify,
)

print("tangent construction over F_p^n (upper-bound shape p^n/2^(n-1) + 3p^(n-1))")
for p in (3, 5, 7, 11, 13):
    for n in (2, 3):
        T = tangent_construction(p, n)
        bound = p**n / 2 ** (n - 1) + 3 * p ** (n - 1)
        print(f"  p={p:>2} n={n}: size {T.size:>4}  <= {bound:8.1f}  "
              f"(full space {p**n}, lower bound {float(fq_bound(p, n)):7.2f})")

print("\nCRT products over square-free N")
for N in (6, 15):
    spec = RingSpec.make(N, 2)
    parts = [tangent_construction(p, 2) for p in spec.primes]
    S = crt_product(parts, spec)
    ok, _ = verify(S)
    print(f"  N={N}: product of sizes {[P.size for P in parts]} -> {S.size} "
          f"points, valid={ok}, lower bound {float(squarefree_bound(N, 2)):.2f}")

print("\nCartesian powers stay Kakeya (the direction blocks may vanish mod")
print("some primes; witnesses are re-assembled per block)")
S = crt_product([tangent_construction(2, 2), tangent_construction(3, 2)],
                RingSpec.make(6, 2))
P = power_product(S, 2)
print(f"  |S| = {S.size} over (Z/6)^2 -> |S^2| = {P.size} over (Z/6)^4, "
      f"valid={verify(P)[0]}")

print("\nexact minima by exhaustive branch-and-bound")
for N, n in [(2, 2), (3, 2), (4, 1), (4, 2), (5, 2)]:
    spec = RingSpec.make(N, n)
    opt, _ = min_kakeya_search(spec)
    lb = (squarefree_bound(N, n) if spec.is_square_free else fq_bound(N, n))
    print(f"  ({N})^{n}: optimum {opt:>2}  (closed-form lower bound "
          f"{float(lb):5.2f}, full space {N**n})")
