# %% [markdown]
# # Composition series by repeated normal-subgroup splits

# %%
from krdecomp.division import verify_covering
from krdecomp.groups import composition_decomposition, minimal_normal_subgroup, regular_representation
from krdecomp.tmonoid import StateSet, cyclic_group, generate, symmetric_group

# %%
for name, g in [("S_3", symmetric_group(3)), ("C_4", cyclic_group(4)),
                ("A_4", generate(StateSet.range(4), [(1, 2, 0, 3), (1, 0, 3, 2)])),
                ("S_4", symmetric_group(4))]:
    seq, cert = composition_decomposition(g)
    print(f"{name}: orders {[f.order for f in seq]}, certificate on {cert.source.size} states,",
          "ok" if verify_covering(cert).ok else "BROKEN")

# %% [markdown]
# The first cut of S_3 goes through A_3.

# %%
reg = regular_representation(symmetric_group(3))
a3 = minimal_normal_subgroup(reg)
print([reg.elements[i] for i in a3])

# %% [markdown]
# Cyclic groups split along the prime factorization of n.

# %%
for n in range(1, 7):
    g = cyclic_group(n) if n > 1 else generate(StateSet.range(1), [])
    if len(g) > 1:
        seq, _ = composition_decomposition(g)
        print(n, [f.order for f in seq])
