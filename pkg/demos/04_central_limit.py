"""The central-limit family on a full Fock space.

Run: python3 demos/04_central_limit.py
"""

import itertools

from freeboolean import clt_moment_oracle, fock_clt_family, kappa

h = {"1": [1, 0], "2": ["1/2", 1], "3": [0, 2]}
hstar = {"1": [1, "1/3"], "2": [0, 1], "3": [-1, "1/2"]}
fam = fock_clt_family(2, h, hstar, I=["1", "2"], J=["3"], depth=6)
spec = fam.model.spec()

print("Covariance C[k, l] = φ(z_k z_l):")
for k in "123":
    print("   " + "  ".join(f"{str(fam.covariance[(k, l)]):>5}" for l in "123"))

nonzero = [key for n in (1, 3, 4) for key in itertools.product("123", repeat=n)
           if kappa(spec, spec.word(key)) != 0]
print(f"Cumulants of order 1, 3, 4 that are nonzero: {len(nonzero)}")

w = spec.word("1 3 2 3")
print(f"φ({w}) = {spec(w)}; sum over INC pairings = {clt_moment_oracle(fam.covariance, w)}")
