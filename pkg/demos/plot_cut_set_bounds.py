"""
Cut-set bounds for a few message assignments
============================================

The bound ``B`` picks a transmitter set ``S`` and takes the larger of the
number of messages those transmitters carry and the number of receivers left
over. We compute it for the identity assignment, a sliding window and a
random assignment, and read the expansion profile behind each value.
"""

from compdof import GeneratorSpec, dof_upper_bound, expansion_profile, generate, i_min_of_profile

# Without cooperation every transmitter carries one message, so half the
# transmitters leave half the receivers: B = ceil(K/2).
for k in (4, 7, 10):
    a = generate(GeneratorSpec("identity", k))
    print(f"identity K={k}: B={dof_upper_bound(a).value}")

# A window of two: message i sits at transmitters i and i+1.
a = generate(GeneratorSpec("successive", 8, 2))
b = dof_upper_bound(a)
print("successive K=8, M=2:", b.value, "witness", sorted(b.witness_set))

# The profile e(i) is the fewest messages any i transmitters can carry.
# B is the smallest max(e(i), K - i) over i.
p = expansion_profile(a)
print("e(i)      ", p.e)
print("candidates", p.candidates())
print("i_min, B  ", i_min_of_profile(p))

# Random assignments with three transmitters per message.
for trial in range(3):
    r = generate(GeneratorSpec("uniform_random", 12, 3), seed=7, trial=trial)
    print(f"uniform_random K=12, M=3, trial {trial}: B={dof_upper_bound(r).value}")
