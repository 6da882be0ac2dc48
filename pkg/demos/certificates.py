# %% [markdown]
# # Certificates: saving, checking and tampering

# %%
import tempfile
from pathlib import Path

from krdecomp import krohn_rhodes
from krdecomp.division import verify_covering
from krdecomp.formats import certificate_to_json, load_certificate, save_certificate
from krdecomp.tmonoid import full_transformation_monoid

seq = krohn_rhodes(full_transformation_monoid(2))
cert = seq.total_certificate
print(cert)
doc = certificate_to_json(cert)
print(sorted(doc), list(doc["covers"]))

# %% [markdown]
# Round trip through a file; the stored tables are reloaded verbatim.

# %%
path = Path(tempfile.mkdtemp()) / "t2.json"
save_certificate(cert, path)
print(verify_covering(load_certificate(path)))

# %% [markdown]
# A single changed cascade entry is reported with the offending state.

# %%
bad = cert.copy()
bad.covers[0].components[0][0] = 1 - bad.covers[0].components[0][0]
print(verify_covering(bad).witness)

# %% [markdown]
# Not every change is a defect.  With only constant generators to cover,
# phi is unconstrained on source states no cover ever reaches.

# %%
from krdecomp.constants import peel_constant_certificate, u_monoid
from krdecomp.tmonoid import StateSet

peel, _ = peel_constant_certificate(u_monoid(StateSet(("a0", "a1", "a2"))))
reached = set()
for f in peel.flats:
    reached |= set(f.tolist())
print("phi:", peel.phi.tolist(), "reached by covers:", sorted(reached))
free = peel.copy()
free.phi[3] = 1
print(verify_covering(free))
