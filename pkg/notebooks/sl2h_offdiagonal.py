# %% [markdown]
# # The off-diagonal Ricci entry on SL2(H)/Sp(1)Sp(1)
#
# Invariant metrics here have four parameters a, b, c, d, with d the
# cross term between the two isomorphic 4-dim modules.  We compare the
# direct Ricci computation with the transcribed closed form and look at
# where the off-diagonal block vanishes.

# %%
import numpy as np

from einshom import build, decompose_isotropy, einstein_report, moduli_space, reductive_complement
from einshom.curvature import closed_form_sl2h, ricci
from einshom.metrics import build_Q
from einshom.analysis import offdiagonal_vanishing_sl2h

rd = reductive_complement(build("SL2H_Sp1Sp1"))
iso = decompose_isotropy(rd)
mod = moduli_space(iso)
print(iso.summary())
print(mod.slot_names)

# %% At the reference metric
mp = build_Q(mod, mod.identity_values())
R = ricci(rd, mp).matrix
print("direct      ", np.diag(R))
print("closed form ", np.diag(closed_form_sl2h(1, 1, 1, 0)))

# %% The off-diagonal entry vanishes on b = 4a + c (or d = 0)
for a, c, d in [(1, 1, 0.5), (0.5, 2, -1), (2, 0.3, 0.2)]:
    b = 4 * a + c
    R = ricci(rd, build_Q(mod, dict(a=a, b=b, c=c, d=d))).matrix
    print(f"a={a} c={c} d={d}: |Ric(e2,e6)| = {abs(R[1, 5]):.1e}, Ric(e2,e2) = {R[1, 1]:.6f}, "
          f"30a/(bc-d^2) = {30 * a / (b * c - d * d):.6f}")

# %% Summary over a grid
summary = offdiagonal_vanishing_sl2h()["summary"]
for k, v in summary.items():
    print(f"{k:36s} {v}")

# %% Even where the off-diagonal vanishes the metric is far from Einstein
rep = einstein_report(rd, build_Q(mod, dict(a=1, b=5, c=1, d=0.5)))
print(rep.verdict, rep.residual)
