"""
Searching for assignments with large bounds
===========================================

Good assignments are bipartite expanders: every small transmitter set must
reach many messages. Unions of random perfect matchings are a cheap source
of such graphs.
"""

from fractions import Fraction

from compdof import GeneratorSpec, eta_out_exact, eta_out_random, expansion_ratio, generate

# Exhaustive search over every assignment is only possible for tiny K.
for k, m in [(3, 1), (3, 2), (4, 2)]:
    rep = eta_out_exact(k, m)
    print(f"eta_out({k},{m}) = {rep.best_value} over {rep.trials_or_count} assignments "
          f"({rep.dedup_hits} duplicates skipped)")

# Random matching unions push past K/2 once M = 3.
rep = eta_out_random(16, 3, trials=200, seed=0)
print(f"best B over 200 matching unions at K=16, M=3: {rep.best_value} (ratio {rep.ratio})")

# The expansion ratio e(i)/i at a few set sizes.
a = generate(GeneratorSpec("matching_union", 16, 3), seed=0)
for alpha, r in expansion_ratio(a).items():
    print(f"alpha={alpha}: e/i = {float(r):.3f}")

# Same K without cooperation has no expansion at all.
ident = generate(GeneratorSpec("identity", 16))
print("identity:", {str(k): str(v) for k, v in expansion_ratio(ident, [Fraction(1, 2)]).items()})
