# %% [markdown]
# # Decomposing T_3 step by step
#
# The full transformation monoid on three points, generated by a
# transposition, a 3-cycle and the idempotent sending 3 to 2.

# %%
from krdecomp import krohn_rhodes, main_split
from krdecomp.division import verify_covering
from krdecomp.tmonoid import StateSet, generate

t3 = generate(StateSet(("1", "2", "3")), [(1, 0, 2), (1, 2, 0), (0, 1, 1)], ["a", "b", "c"])
print(len(t3), "elements on", t3.n_states, "states")

# %% [markdown]
# One split at the idempotent ``c``.  The left side is the local divisor
# acting on the image ``Xc``; the right side is generated by the other two
# generators, acting on the old states plus one new state per element.

# %%
split = main_split(t3, t3.element_index((0, 1, 1)))
print("Xc =", [t3.states.labels[x] for x in split.local.xc])
print("|M_c| =", len(split.local))
print("local product table:\n", split.local.circ_table)
print("right factor:", len(split.n_monoid), "elements on", split.right.n_states, "states")
print(split.right.tm.states.labels)
print(verify_covering(split.certificate))

# %% [markdown]
# The whole way down.  Every factor is U_2 or a cyclic group of prime order.

# %%
seq = krohn_rhodes(t3)
print(" ".join(seq.kinds()))
print(seq.total_certificate)
print(seq.verification)
for node in seq.tree.walk():
    print("  " * node.depth + node.label())
