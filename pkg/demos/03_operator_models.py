"""Operator models on a truncated reduced free product.

Run: python3 demos/03_operator_models.py
"""

import random

from freeboolean import (
    Letter,
    OperatorModel,
    build_reduced_product,
    evaluate_moment_recursive,
    lambda_,
    predicted_moment_star,
    projection,
)
from freeboolean.operators import random_matrix, random_model

rng = random.Random(3)

print("1. A free-Boolean model: left faces act on the first tensor slot, right faces are")
print("   compressed to the vacuum plus their own factor.")
model = random_model(rng, n_factors=2, depth=5)
pairs, spec = model.pair_specs(), model.spec()
for key in [("a1", "b2", "a1"), ("b1", "a2", "b2", "a1"), ("a1", "a2", "b1", "a2", "b2")]:
    w = spec.word(key)
    print(f"   φ({w}): model {model.moment(key)}, cumulant formula "
          f"{predicted_moment_star(pairs, w)}, recursion {evaluate_moment_recursive(pairs, w)}")
print()

print("2. Compressing λ_i to decreasing words with first index ≤ i gives monotone variables:")
space = build_reduced_product([2, 2, 2], 4)
ops = {}
for i in (1, 2, 3):
    P = projection(space, "monotone", i)
    ops[Letter(f"x{i}", i, "l")] = P @ lambda_(space, i, random_matrix(rng, 2)) @ P
mono = OperatorModel(space, ops)
lhs = mono.moment("x1 x3 x2")
rhs = mono.moment("x3") * mono.moment("x1 x2")
print(f"   peak at x3: φ(x1 x3 x2) = {lhs} = φ(x3) φ(x1 x2) = {rhs}")
