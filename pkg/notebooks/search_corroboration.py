# %% [markdown]
# # Numerical Einstein searches
#
# The search minimizes a scale-free Einstein residual over the moduli of
# invariant metrics.  On the solvable 2-dim fixture it finds the
# hyperbolic metric immediately; on an obstructed space it does not
# converge, which is corroboration and nothing more.

# %%
from einshom import SearchConfig, build, decompose_isotropy, moduli_space, reductive_complement, search_einstein


def setup(name, params=None):
    rd = reductive_complement(build(name, params))
    return rd, moduli_space(decompose_isotropy(rd))


# %% The hyperbolic plane
rd, mod = setup("AFF1")
res = search_einstein(rd, mod, SearchConfig(seed=0))
print(res.verdict, res.best_residual, {k: float(v) for k, v in res.best_point.values.items()})

# %% A Cartan-orthogonally obstructed space
rd, mod = setup("SU41_SU4")
res = search_einstein(rd, mod, SearchConfig(seed=0, restarts=3, max_iters=80))
print(res.verdict, res.best_residual)
for r in res.restarts:
    print(r)

# %% Convergence trace of the best restart
best = min(res.restarts, key=lambda r: r["objective"])["restart"]
for t in res.trace:
    if t["restart"] == best and t["iter"] % 10 == 1:
        print(t["iter"], f"{t['objective']:.6f}")
