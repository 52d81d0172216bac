"""Different parameters, same point set up to scale.

A change of lattice basis moves the slopes by a Moebius map and rescales
the set.  normalize() uses such moves to reach the standard form where the
gap theorem is stated, and the points line up exactly afterwards.
"""
from fractions import Fraction

from aperiodica.capset import CapParams, WindowSpec, condition_p_failures, generate_segment, normalize
from aperiodica.quadfield import QuadReal

sqrt2 = QuadReal(0, 1, 2)
params = CapParams(3 + sqrt2, 5 * sqrt2 - 1, WindowSpec(Fraction(1, 3), Fraction(5, 2)))
print("start:", params.epsilon, "|", params.eta, "| window length", params.window.ell)
print("fails:", condition_p_failures(params))

n = normalize(params)
print("\nnormalized epsilon:", n.params.epsilon, "~", float(n.params.epsilon))
print("normalized eta:    ", n.params.eta, "~", float(n.params.eta))
print("window length:     ", n.params.window.ell, "~", float(n.params.window.ell))
print("scale:", n.scale, " basis change:", n.matrix)
print("fails now:", condition_p_failures(n.params))

seg = generate_segment(n.params, 10, 10)
print("\npoint   normalized phys   x scale   original phys")
for q in seg.points[8:13]:
    orig = n.to_original(q)
    print(f"{tuple(q)!s:10} {float(n.params.phys(q)):10.5f} {float(n.scale * n.params.phys(q)):10.5f} "
          f"{float(params.phys(orig)):10.5f}  in original set: {params.contains(orig)}")
print("\nword after normalization:", seg.word)
