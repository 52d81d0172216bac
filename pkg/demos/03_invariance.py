"""Which mechanical words are fixed by a substitution?

The answer is read off the slope and intercept: the slope must be a Sturm
number and the conjugate of the intercept must sit between alpha' and
1 - alpha'.  A brute-force search over small morphisms backs up the
positive answers.
"""
from fractions import Fraction

from aperiodica.quadfield import SQRT2, TAU, QuadReal
from aperiodica.substitution import (
    is_sturm_number,
    mechanical_invariance,
    search_fixing_morphism,
)
from aperiodica.words import mechanical_word

sqrt5 = QuadReal(0, 1, 5)
slopes = {
    "1/tau": 1 / TAU,
    "sqrt2 - 1": SQRT2 - 1,
    "1/2 - sqrt5/10": Fraction(1, 2) - sqrt5 / 10,
}
for name, alpha in slopes.items():
    v = is_sturm_number(alpha)
    print(f"{name:16} ~ {float(alpha):.4f}  conjugate ~ {float(v.alpha_conjugate):8.4f}  Sturm: {v.is_sturm}")

print()
alpha = 1 / TAU
for label, beta in [("0", QuadReal(0)), ("1/2", QuadReal(Fraction(1, 2))), ("tau - 1", TAU - 1), ("2 tau - 3", 2 * TAU - 3)]:
    v = mechanical_invariance(alpha, beta)
    w = mechanical_word(alpha, beta, -200, 200)
    m = search_fixing_morphism(w, max_total=10)
    print(f"beta = {label:9} clauses {v.clauses}  invariant: {v.invariant}")
    print(f"    word {w.left[-12:]}|{w.right[:12]}  smallest fixing morphism: {m}")
