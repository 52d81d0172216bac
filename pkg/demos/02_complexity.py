"""Factor and palindromic complexity of one-dimensional quasicrystal words.

Three reference windows: length 1 (Fibonacci, sturmian), 9/10 (three gaps,
length outside Z[tau']) and 4 + 5 tau' (three gaps, length inside Z[tau']).
"""
from fractions import Fraction

from aperiodica.capset import CapParams, WindowSpec, compute_gaps, generate_segment
from aperiodica.quadfield import TAU, TAU_CONJ
from aperiodica.words import (
    factor_complexity_exact,
    mirror_closure_check,
    quasisturmian_decompose,
    saturated_profiles,
)

N = 16

instances = {
    "ell = 1": CapParams(TAU_CONJ, TAU, WindowSpec(0, 1)),
    "ell = 9/10": CapParams(TAU_CONJ, TAU, WindowSpec(0, Fraction(9, 10))),
    "ell = 4 + 5 tau'": CapParams(TAU_CONJ, TAU, WindowSpec(0, 4 + 5 * TAU_CONJ)),
}

for name, params in instances.items():
    g = compute_gaps(params)
    C, P, w = saturated_profiles(lambda L, p=params: generate_segment(p, L, L).word, N)
    exact = factor_complexity_exact(g, N)
    print(f"\n{name}: alphabet {g.alphabet}, segment of {len(w)} letters")
    print("  n   :", " ".join(f"{n:3d}" for n in range(1, N + 1)))
    print("  C(n):", " ".join(f"{c:3d}" for c in C.values))
    print("  P(n):", " ".join(f"{p:3d}" for p in P.values))
    print("  exact C agrees:", exact.values == C.values, " mirror closed:", mirror_closure_check(w, N))
    ok1 = all(P[n] <= 16 / n * C[n + n // 4] for n in range(1, N - 4))
    ok2 = all(P[n] + P[n + 1] <= 3 * (C[n + 1] - C[n]) for n in range(1, N))
    print("  P(n) <= 16/n C(n + n/4):", ok1, "  P(n)+P(n+1) <= 3 dC(n):", ok2)

# with the window length in Z[tau'] the word is built from two blocks
# arranged along a sturmian word
w = generate_segment(instances["ell = 4 + 5 tau'"], 3000, 3000).word
d = quasisturmian_decompose(w)
print("\nblocks:", d.W0, d.W1)
print("driving word starts:", d.v.letters[:60])
