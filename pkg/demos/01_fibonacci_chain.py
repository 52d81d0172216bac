"""The Fibonacci chain as a cut-and-project set.

Walks from exact golden-ratio arithmetic to the point set, its gaps, the
coding word and the substitution that fixes it.
"""
from aperiodica.capset import (
    compute_gaps,
    enumerate_phys_interval,
    exchange_step,
    fibonacci_params,
    generate_segment,
)
from aperiodica.quadfield import TAU, TAU_CONJ
from aperiodica.substitution import Morphism, apply, fixed_point, incidence, perron_densities

spacer = "_" * 60

print("tau =", TAU, "~", float(TAU))
print("tau' =", TAU_CONJ, "~", float(TAU_CONJ))
print("tau^2 == tau + 1:", TAU**2 == TAU + 1)
print("tau * tau' =", TAU * TAU_CONJ)
print(spacer)

# lattice points a + b*tau whose conjugate a + b*tau' falls in [0, 1)
params = fibonacci_params()
seg = generate_segment(params, 5, 8)
print("\nten points around the origin (a, b) -> a + b tau:")
for p in seg.points:
    print(f"  {tuple(p)!s:10} {float(params.phys(p)):9.5f}   star {float(params.star(p)):.5f}")

g = compute_gaps(params)
print("\ngaps:", g.delta1_phys, "and", g.delta2_phys)
print("binary set:", g.binary, " alphabet:", g.alphabet)
print("one exchange step from (0, 0):", exchange_step(g, (0, 0)))
print("coding word:", seg.word)
print(spacer)

# the walk agrees with brute-force enumeration
big = generate_segment(params, 500, 500)
lo, hi = params.phys(big.points[0]), params.phys(big.points[-1])
print("\nwalk == enumeration on 1001 points:", enumerate_phys_interval(params, lo, hi) == big.points)

phi = Morphism.parse("A->AAB;B->AB")
w = "B|A"
for _ in range(3):
    w = apply(phi, w)
    print("phi ->", w)

u = fixed_point(phi, "A", "B", 400)
print("fixed point agrees with the chain:", u.right.startswith(big.word.right[:400]))
print("incidence matrix:\n", incidence(phi))
d = perron_densities(incidence(phi), "AB")
print("density of A:", d[0], "=", float(d[0]), "(1/tau =", float(1 / TAU), ")")
