import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from freeboolean import (
    DepthError,
    Letter,
    OperatorModel,
    build_reduced_product,
    lambda_,
    make_family,
    predicted_moment_star,
    projection,
    rho,
    vacuum_moment,
)
from freeboolean.cumulants import check_moment_conditions
from freeboolean.operators import RECIPES, BasisSizeError, identity, random_matrix, random_model


def rand_T(rng, d, centered=False):
    return random_matrix(rng, d, centered=centered)


class TestSpace:
    def test_basis_sizes(self):
        S = build_reduced_product([2, 2], 2)
        assert len(S.basis()) == S.dimension() == 5
        assert S.basis() == [(), ((1, 1),), ((2, 1),), ((1, 1), (2, 1)), ((2, 1), (1, 1))]
        for D in (1, 3, 6):
            assert build_reduced_product([4], D).dimension() == 4
        assert build_reduced_product([2, 2, 2], 1).dimension() == 4

    @pytest.mark.parametrize("dims,D", [([2, 3], 4), ([3, 2, 2], 3), ([2, 2, 2, 2], 2)])
    def test_dimension_formula_matches_enumeration(self, dims, D):
        S = build_reduced_product(dims, D)
        words = S.basis()
        assert len(words) == len(set(words)) == S.dimension()
        for w in words:
            assert all(a[0] != b[0] for a, b in zip(w, w[1:]))

    def test_guards(self):
        with pytest.raises(BasisSizeError):
            build_reduced_product([3, 3, 3], 12, guard=1000)
        with pytest.raises(ValueError):
            build_reduced_product([2], -1)


class TestRepresentations:
    def test_unital(self):
        S = build_reduced_product([2, 3], 3)
        I3 = [[1 if r == c else 0 for c in range(3)] for r in range(3)]
        for u in S.basis(2):
            assert lambda_(S, 2, I3).col(u) == {u: 1}
            assert rho(S, 2, I3).col(u) == {u: 1}

    def test_vacuum_column(self):
        S = build_reduced_product([3, 2], 2)
        T = [[Fraction(1, 2), 2, 0], [3, 0, 0], [Fraction(-1, 5), 0, 0]]
        assert lambda_(S, 1, T).col(()) == {(): Fraction(1, 2), ((1, 1),): 3,
                                            ((1, 2),): Fraction(-1, 5)}

    def test_left_right_slots(self):
        S = build_reduced_product([2, 2], 3)
        T = [[0, 1], [1, 0]]
        u = ((1, 1), (2, 1))
        assert lambda_(S, 1, T).col(u) == {((2, 1),): 1}
        assert rho(S, 1, T).col(u) == {((1, 1), (2, 1), (1, 1)): 1}
        assert lambda_(S, 2, T).col(u) == {((2, 1), (1, 1), (2, 1)): 1}

    def test_left_and_right_commute_across_factors(self):
        rng = random.Random(4)
        S = build_reduced_product([2, 3], 4)
        A, B = lambda_(S, 1, rand_T(rng, 2)), rho(S, 2, rand_T(rng, 3))
        for u in S.basis(2):
            assert (A @ B).col(u) == (B @ A).col(u)

    def test_free_centered_product_vanishes(self):
        rng = random.Random(7)
        S = build_reduced_product([2, 3], 4)
        T1, T2, T3 = rand_T(rng, 2, True), rand_T(rng, 3, True), rand_T(rng, 2, True)
        ops = [lambda_(S, 1, T1), lambda_(S, 2, T2), lambda_(S, 1, T3)]
        assert vacuum_moment(S, ops) == 0

    def test_depth_error(self):
        S = build_reduced_product([2, 2], 1)
        T = [[0, 1], [1, 0]]
        with pytest.raises(DepthError):
            vacuum_moment(S, [lambda_(S, 1, T), lambda_(S, 2, T), lambda_(S, 1, T)])

    def test_dense_matrix_composition(self):
        rng = random.Random(9)
        S = build_reduced_product([2, 3], 3)
        A, B = lambda_(S, 1, rand_T(rng, 2)), rho(S, 2, rand_T(rng, 3))
        lhs = (A @ B).matrix(1)
        # B maps length <= 1 into length <= 2; the basis is ordered by length
        Bm = B.matrix(1)
        assert not Bm[S.dimension(2):].any()
        rhs = A.matrix(2) @ Bm[:S.dimension(2)]
        assert (lhs == rhs).all()

    def test_operator_arithmetic(self):
        S = build_reduced_product([2], 2)
        T = [[1, 2], [3, 4]]
        A = lambda_(S, 1, T)
        assert (A + A).col(()) == (2 * A).col(())
        assert (A - A).col(()) == {}
        assert (Fraction(1, 2) * A).col(((1, 1),)) == {(): 1, ((1, 1),): 2}


class TestProjections:
    def test_idempotent_and_rank(self):
        S = build_reduced_product([2, 2], 2)
        P = projection(S, "boolean", 1)
        for u in S.basis():
            assert (P @ P).col(u) == P.col(u)
        assert np.sum(P.matrix() != 0) == 2
        assert sum(1 for u in S.basis() if P.col(u)) == 2

    def test_monotone_subspaces(self):
        S = build_reduced_product([2, 2, 2], 3)
        P = projection(S, "▷", 2)
        kept = {u for u in S.basis() if P.col(u)}
        assert ((2, 1), (1, 1)) in kept and ((1, 1),) in kept
        assert ((1, 1), (2, 1)) not in kept and ((3, 1),) not in kept
        Q = projection(S, "◁", 2)
        kept = {u for u in S.basis() if Q.col(u)}
        assert ((1, 1), (2, 1)) in kept and ((2, 1), (1, 1)) not in kept

    def test_anti_monotone_subspaces(self):
        S = build_reduced_product([2, 2, 2], 3)
        kept = {u for u in S.basis() if projection(S, "anti_left", 2).col(u)}
        assert kept == {(), ((2, 1),), ((3, 1),), ((2, 1), (3, 1))}
        kept = {u for u in S.basis() if projection(S, "anti_right", 2).col(u)}
        assert kept == {(), ((2, 1),), ((3, 1),), ((3, 1), (2, 1))}

    def test_errors(self):
        S = build_reduced_product([2, 2], 2)
        with pytest.raises(ValueError):
            projection(S, "nope", 1)
        with pytest.raises(ValueError):
            projection(S, "monotone")
        with pytest.raises(KeyError):
            projection(S, "boolean", 5)


def _groups(key, fam):
    return [tuple(g) for _, g in itertools.groupby(key, key=lambda v: fam[v])]


def _single_face(rng, recipe, dims=(2, 3, 2), D=4):
    S = build_reduced_product(list(dims), D)
    fam = make_family(S, recipe)
    variables = {}
    for i in S.factors:
        for t in "ab":
            variables[Letter(f"x{i}{t}", i, "l")] = fam[i].left(rand_T(rng, S.dim(i)))
    return OperatorModel(S, variables)


class TestRecipes:
    def test_all_recipes_build(self):
        S = build_reduced_product([2, 2], 3)
        for recipe in RECIPES:
            fam = make_family(S, recipe)
            T = [[1, 2], [3, 4]]
            vacuum_moment(S, [fam[1].left(T), fam[2].right(T), fam[1].left(T)])
        with pytest.raises(ValueError):
            make_family(S, "quantum")

    def test_boolean_factorizes(self):
        model = _single_face(random.Random(1), "boolean")
        fam = {v: x.family for v, x in model.letters.items()}
        for key in itertools.product(list(model.letters), repeat=3):
            prod = Fraction(1)
            for g in _groups(key, fam):
                prod *= model.moment(g)
            assert model.moment(key) == prod

    @pytest.mark.parametrize("recipe,sign", [("monotone", 1), ("antimonotone", -1)])
    def test_peaks_factor_out(self, recipe, sign):
        model = _single_face(random.Random(2), recipe)
        fam = {v: x.family for v, x in model.letters.items()}
        hits = 0
        for key in itertools.product(list(model.letters), repeat=3):
            g = _groups(key, fam)
            r = [sign * fam[h[0]] for h in g]
            for k in range(1, len(g) - 1):
                if r[k - 1] < r[k] > r[k + 1]:
                    rest = tuple(v for j, h in enumerate(g) if j != k for v in h)
                    assert model.moment(key) == model.moment(g[k]) * model.moment(rest)
                    hits += 1
        assert hits > 0

    def test_free_boolean_moment_conditions(self):
        model = random_model(random.Random(3), n_factors=2, dims=(2,), depth=5)
        m = model.spec()
        words = [m.word(k) for n in range(2, 6) for k in itertools.product(list(model.letters), repeat=n)]
        assert check_moment_conditions(m, words).ok

    def test_right_face_lambda_equals_rho(self):
        rng = random.Random(6)
        S = build_reduced_product([2, 3], 4)
        for i in (1, 2):
            P = projection(S, "boolean", i)
            T = rand_T(rng, S.dim(i))
            for u in S.basis(3):
                assert (P @ lambda_(S, i, T) @ P).col(u) == (P @ rho(S, i, T) @ P).col(u)


class TestVacuumMoment:
    def test_examples(self):
        S = build_reduced_product([2, 3], 3)
        assert vacuum_moment(S, []) == 1
        T = [[Fraction(2, 3), 1, 0], [0, 0, 0], [0, 0, 0]]
        assert vacuum_moment(S, [lambda_(S, 2, T)]) == Fraction(2, 3)
        assert vacuum_moment(S, [identity(S)]) == 1

    def test_free_boolean_length_four(self):
        model = random_model(random.Random(11), n_factors=2, depth=4)
        pairs = model.pair_specs()
        m = model.spec()
        for key in [("a1", "b2", "a1", "b2"), ("b1", "a2", "a2", "b1"), ("a1", "a2", "b1", "b2")]:
            ops = [model.ops[v] for v in key]
            assert vacuum_moment(model.space, ops) == predicted_moment_star(pairs, m.word(key))


class TestModelJson:
    def test_round_trip(self):
        model = random_model(random.Random(12), n_factors=3, depth=3)
        again = OperatorModel.from_json(model.to_json())
        assert again.to_json() == model.to_json()
        for key in [("a1", "b2", "a3"), ("b3", "b3")]:
            assert again.moment(key) == model.moment(key)

    def test_default_vars(self):
        data = {"factors": [{"dim": 2}], "depth": 2,
                "operators": {"1": {"T": [["1/2", "1"], ["1", "0"]]}}}
        model = OperatorModel.from_json(data)
        assert list(model.letters) == ["T@1"]
        assert model.moment("T@1 T@1") == Fraction(5, 4)

    def test_bad_matrix(self):
        data = {"factors": [{"dim": 2}], "depth": 2, "operators": {"1": {"T": [["1"]]}}}
        with pytest.raises(ValueError):
            OperatorModel.from_json(data)
