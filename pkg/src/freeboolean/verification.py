"""Scripted verification suites.

Each suite returns a :class:`Report` made of named checks; a check counts its
cases and keeps a list of failure descriptions (counterexamples). Suites are
deterministic given their parameters and seed.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .cumulants import (
    CumulantTable,
    MomentSpec,
    check_combinatorial_independence,
    check_moment_conditions,
    clt_cumulant_scaling,
    convolve_distributions,
    evaluate_moment_recursive,
    factor_word,
    kappa,
    moments_from_cumulants,
    phi_pi,
    predicted_moment_star,
    random_moment_spec,
    random_rational,
)
from .fock import clt_moment_oracle, fock_clt_family
from .inc import (
    enumerate_inc,
    enumerate_nc,
    factorize,
    is_inc,
    join,
    meet,
    unfactorize,
    IncFactorization,
)
from .incidence import (
    FiniteLattice,
    moebius_block_product,
    moebius_direct,
    moebius_inc,
    catalan,
)
from .operators import (
    OperatorModel,
    ReducedProductSpace,
    copy_sum_model,
    lambda_,
    make_family,
    projection,
    random_matrix,
    random_model,
    rho,
)
from .partitions import ColorMap, Letter, Word, iter_noncrossing, leq, one
from .scalars import format_scalar

__all__ = [
    "Check",
    "Report",
    "SUITES",
    "run_suite",
    "suite_lattice",
    "suite_moebius",
    "suite_transforms",
    "suite_main",
    "suite_boolean",
    "suite_monotone",
    "suite_clt",
    "suite_convolution",
    "verify_spec",
    "model_corpus",
    "corpus_words",
]

MAX_FAILURES_KEPT = 20


@dataclass
class Check:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)
    nfail: int = 0

    def record(self, ok: bool, detail: Callable[[], str] | str = "") -> bool:
        self.cases += 1
        if not ok:
            self.nfail += 1
            if len(self.failures) < MAX_FAILURES_KEPT:
                self.failures.append(detail() if callable(detail) else detail)
        return ok

    @property
    def ok(self) -> bool:
        return self.nfail == 0


@dataclass
class Report:
    suite: str
    seed: int | None
    params: dict
    checks: list[Check] = field(default_factory=list)
    elapsed: float = 0.0

    def check(self, name: str) -> Check:
        c = Check(name)
        self.checks.append(c)
        return c

    def check_named(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def header(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"suite={self.suite} seed={self.seed} {params}".rstrip()

    def render(self) -> str:
        lines = [f"# {self.header()}"]
        for c in self.checks:
            status = "PASS" if c.ok else "FAIL"
            lines.append(f"{status} {c.name}: {c.cases - c.nfail}/{c.cases} cases")
            for f in c.failures:
                lines.append(f"    counterexample: {f}")
            if c.nfail > len(c.failures):
                lines.append(f"    ... {c.nfail - len(c.failures)} more")
        lines.append(f"{'PASS' if self.ok else 'FAIL'} {self.suite} ({self.elapsed:.2f}s)")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "suite": self.suite, "seed": self.seed, "params": self.params, "ok": self.ok,
            "checks": [{"name": c.name, "cases": c.cases, "failures": c.nfail,
                        "counterexamples": c.failures} for c in self.checks],
        }


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.elapsed = time.perf_counter() - t0
        return rep

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _colorings(n: int):
    return ["".join(c) for c in itertools.product("bw", repeat=n)]


def _normalized_colorings(n: int):
    """One representative per INC set: endpoints ∘, interior free."""
    if n <= 1:
        return ["w"] if n == 1 else [""]
    return ["w" + "".join(c) + "w" for c in itertools.product("bw", repeat=n - 2)]


# -- lattice ---------------------------------------------------------------------


@_timed
def suite_lattice(nmax: int = 8, iso_nmax: int = 7, bounds_nmax: int = 5,
                  seed: int | None = None) -> Report:
    """INC counts, the factorization isomorphism, endpoint insensitivity and lattice bounds."""
    rep = Report("lattice", seed, {"nmax": nmax, "iso_nmax": iso_nmax, "bounds_nmax": bounds_nmax})
    counts = rep.check("|INC(all ∘)| = 2^(n-1) and |INC(all •)| = Catalan(n)")
    for n in range(1, nmax + 1):
        cw = len(enumerate_inc(ColorMap("w" * n)))
        cb = len(enumerate_inc(ColorMap("b" * n)))
        counts.record(cw == 2 ** (n - 1), lambda: f"n={n}: |INC(w^n)|={cw}")
        counts.record(cb == catalan(n), lambda: f"n={n}: |INC(b^n)|={cb}")

    filt = rep.check("enumerate_inc(χ) equals the filter of NC(n) by is_inc with raw χ")
    bij = rep.check("α is a bijection onto the product of NC lattices")
    order = rep.check("α and α^-1 preserve the order")
    ends = rep.check("α(χ) equals α(χ with ∘ endpoints) for every raw χ")
    for n in range(1, iso_nmax + 1):
        nc = list(iter_noncrossing(n))
        for colors in _colorings(n):
            chi = ColorMap(colors)
            inc = enumerate_inc(chi)
            raw = [p for p in nc if is_inc(p, chi)]
            filt.record(raw == inc, lambda: f"χ={colors}")
            norm = chi.normalized()
            same = all(factorize(p, chi) == factorize(p, norm) for p in inc)
            ends.record(same, lambda: f"χ={colors}")
        for colors in _normalized_colorings(n):
            _check_isomorphism(ColorMap(colors), bij, order)

    bounds = rep.check("meet/join lie in INC(χ) and are greatest/least bounds")
    for n in range(1, bounds_nmax + 1):
        for colors in _normalized_colorings(n):
            _check_bounds(ColorMap(colors), bounds)
    return rep


def _check_isomorphism(chi: ColorMap, bij: Check, order: Check) -> None:
    inc = enumerate_inc(chi)
    if not inc:
        bij.record(False, f"χ={chi.colors}: empty INC")
        return
    facts = [factorize(p, chi) for p in inc]
    grounds = [c.ground for c in facts[0].components]
    lattices = [enumerate_nc(g) for g in grounds]
    index = [{q: k for k, q in enumerate(L)} for L in lattices]
    coords = []
    ok = True
    for p, f in zip(inc, facts):
        if [c.ground for c in f.components] != grounds:
            ok = False
            break
        coords.append(tuple(index[s][c] for s, c in enumerate(f.components)))
        ok &= unfactorize(f) == p
    size = int(np.prod([len(L) for L in lattices]))
    ok &= len(set(coords)) == len(inc) == size
    # surjectivity: every tuple of components glues to an INC element
    if ok and size <= 5000:
        for combo in itertools.product(*lattices):
            q = unfactorize(IncFactorization(tuple(combo), facts[0].points))
            if not is_inc(q, chi):
                ok = False
                break
    bij.record(ok, lambda: f"χ={chi.colors}")
    if not ok:
        return
    L = FiniteLattice.of_partitions(inc)
    comp_orders = [FiniteLattice.of_partitions(Lc).order for Lc in lattices]
    C = np.array(coords, dtype=np.int64).reshape(len(inc), len(lattices))
    prod = np.ones((len(inc), len(inc)), dtype=bool)
    for s, O in enumerate(comp_orders):
        prod &= O[C[:, s][:, None], C[:, s][None, :]]
    same = np.array_equal(prod, L.order)
    order.record(same, lambda: f"χ={chi.colors}: {int((prod != L.order).sum())} pairs differ")


def _check_bounds(chi: ColorMap, chk: Check) -> None:
    inc = enumerate_inc(chi)
    L = FiniteLattice.of_partitions(inc)
    O = L.order
    idx = L.index
    for a, b in itertools.combinations_with_replacement(inc, 2):
        m, j = meet(a, b, chi), join(a, b, chi)
        if m not in idx or j not in idx:
            chk.record(False, f"χ={chi.colors}: {a!r}, {b!r} bound not in INC")
            continue
        ia, ib, im, ij = idx[a], idx[b], idx[m], idx[j]
        lower = O[:, ia] & O[:, ib]
        upper = O[ia, :] & O[ib, :]
        ok = (lower[im] and upper[ij] and bool(np.all(O[lower, im])) and bool(np.all(O[ij, upper])))
        chk.record(ok, lambda: f"χ={chi.colors}: a={a!r} b={b!r} meet={m!r} join={j!r}")


# -- moebius ----------------------------------------------------------------------


@_timed
def suite_moebius(nmax: int = 7, seed: int | None = None) -> Report:
    """Möbius product formula and block product against direct inversion, all pairs."""
    rep = Report("moebius", seed, {"nmax": nmax})
    direct = rep.check("moebius_inc = moebius_direct on every comparable pair")
    block = rep.check("moebius_block_product = moebius_inc on every comparable pair")
    for n in range(1, nmax + 1):
        for colors in _normalized_colorings(n):
            chi = ColorMap(colors)
            L = FiniteLattice.of_partitions(enumerate_inc(chi))
            mu = moebius_direct(L)
            for (s, p), v in mu.values.items():
                a = moebius_inc(s, p, chi)
                direct.record(a == v, lambda: f"χ={colors} σ={s!r} π={p!r}: {a} != {v}")
                b = moebius_block_product(s, p, chi)
                block.record(a == b, lambda: f"χ={colors} σ={s!r} π={p!r}: {b} != {a}")
    return rep


# -- transforms --------------------------------------------------------------------


@_timed
def suite_transforms(nmax: int = 8, seed: int = 0, count: int = 100,
                     extras_nmax: int = 6) -> Report:
    """Moment-cumulant round trip, multiplicativity, φ_π stripping order, reductions."""
    rep = Report("transforms", seed, {"nmax": nmax, "count": count})
    rng = random.Random(seed)
    rt = rep.check("moments_from_cumulants ∘ kappa = identity")
    for n in range(1, nmax + 1):
        for _ in range(count):
            m, w = random_moment_spec(rng, n)
            c = CumulantTable.from_moments(m, [w.key])
            got = moments_from_cumulants(c, w)
            rt.record(got == m(w), lambda: f"word={w} χ={w.colors.colors}: {got} != {m(w)}")

    mult = rep.check("kappa(w, π) = ∏ over blocks of kappa(w|V, 1_V)")
    strip = rep.check("φ_π is independent of the stripping order")
    red = rep.check("all-• / all-∘ cumulants equal free / Boolean cumulants")
    for n in range(1, extras_nmax + 1):
        for _ in range(3):
            m, w = random_moment_spec(rng, n)
            chi = w.colors
            for p in enumerate_inc(chi):
                k = kappa(m, w, p)
                prod = Fraction(1)
                for v in p.blocks:
                    prod *= kappa(m, w.sub(v))
                mult.record(k == prod, lambda: f"word={w} π={p!r}")
                a = phi_pi(m, w, p)
                b = phi_pi(m, w, p, rng=random.Random(rng.random()))
                strip.record(a == b, lambda: f"word={w} π={p!r}")
        for face, parts in (("l", list(iter_noncrossing(n))),
                            ("r", [p for p in iter_noncrossing(n) if is_inc(p, ColorMap("w" * n))])):
            m, w = random_moment_spec(rng, n, faces=(face,))
            L = FiniteLattice.of_partitions(parts)
            mu = moebius_direct(L)
            top = one(n)
            ref = sum((mu(s, top) * _phi_blocks(m, w, s) for s in parts), Fraction(0))
            red.record(kappa(m, w) == ref, lambda: f"face={face} word={w}")
    return rep


def _phi_blocks(m: MomentSpec, w: Word, p) -> Fraction:
    out = Fraction(1)
    for b in p.blocks:
        out *= m(w.sub(b))
    return out


# -- operator-model corpus -----------------------------------------------------------


def model_corpus(seed: int, count: int, depth: int, recipe: str = "free_boolean"):
    """Seeded random two- and three-pair models (factor dims 2-3)."""
    rng = random.Random(seed)
    return [random_model(rng, n_factors=2 + (k % 2), dims=(2, 3), recipe=recipe, depth=depth)
            for k in range(count)]


def corpus_words(model: OperatorModel, nmax: int, rng: random.Random,
                 exhaustive_max: int = 4, samples: int = 60) -> list[tuple]:
    """All words up to ``exhaustive_max`` plus ``samples`` random words per longer length."""
    ids = list(model.letters)
    words = []
    for n in range(1, min(nmax, exhaustive_max) + 1):
        words.extend(itertools.product(ids, repeat=n))
    for n in range(exhaustive_max + 1, nmax + 1):
        words.extend(tuple(rng.choice(ids) for _ in range(n)) for _ in range(samples))
    return words


@_timed
def suite_main(nmax: int = 6, seed: int = 42, models: int = 50, samples: int = 60) -> Report:
    """Operator-model moments against the combinatorial predictions."""
    rep = Report("main", seed, {"nmax": nmax, "models": models, "samples": samples})
    kap = rep.check("mixed free-Boolean cumulants of model moments vanish")
    star = rep.check("model moment = predicted_moment_star")
    recur = rep.check("model moment = evaluate_moment_recursive")
    rng = random.Random(seed + 1)
    for k, model in enumerate(model_corpus(seed, models, nmax)):
        spec = model.spec()
        pairs = model.pair_specs()
        memo: dict = {}
        for key in corpus_words(model, nmax, rng, samples=samples):
            w = spec.word(key)
            v = model.moment(key)
            if len(set(w.families)) > 1:
                kv = kappa(spec, w)
                kap.record(kv == 0, lambda: f"model {k} word '{w}': κ={format_scalar(kv)}")
            s = predicted_moment_star(pairs, w)
            star.record(s == v, lambda: f"model {k} word '{w}': {s} != {v}")
            r = evaluate_moment_recursive(pairs, w, memo)
            recur.record(r == v, lambda: f"model {k} word '{w}': {r} != {v}")
    return rep


@_timed
def suite_boolean(nmax: int = 6, seed: int = 42, models: int = 50, samples: int = 60) -> Report:
    """The two moment conditions (Boolean-product factorization, centered-run vanishing)."""
    rep = Report("boolean", seed, {"nmax": nmax, "models": models, "samples": samples})
    fact = rep.check("all-Boolean-product words factorize")
    cent = rep.check("centered maximal non-Boolean runs give vanishing moments")
    rng = random.Random(seed + 1)
    for k, model in enumerate(model_corpus(seed, models, nmax)):
        spec = model.spec()
        words = [spec.word(key) for key in corpus_words(model, nmax, rng, samples=samples)]
        res = check_moment_conditions(spec, words)
        bad = {id(v.word): v for v in res.violations}
        for w in words:
            factors = factor_word(w)
            if len(factors) < 2:
                continue
            all_bool = all(any(x.face == "r" for x in z) for z in factors)
            chk = fact if all_bool else cent
            v = bad.get(id(w))
            chk.record(v is None, lambda: f"model {k} word '{w}' ({v.kind} run={v.run}): "
                                          f"{v.lhs} vs {v.rhs}")
    return rep


# -- independence constructions ---------------------------------------------------


def _groups(key: tuple, factor_of: dict) -> list[tuple]:
    return [tuple(g) for _, g in itertools.groupby(key, key=lambda v: factor_of[v])]


def _peak_check(model: OperatorModel, words, chk: Check, reverse: bool) -> None:
    """Monotone (or, with ``reverse``, anti-monotone) peak factorization, endpoints included."""
    factor_of = {v: x.family for v, x in model.letters.items()}
    rank = model.space.rank
    for key in words:
        groups = _groups(key, factor_of)
        r = [rank(factor_of[g[0]]) for g in groups]
        if reverse:
            r = [-x for x in r]
        for k, g in enumerate(groups):
            left_ok = k == 0 or r[k - 1] < r[k]
            right_ok = k == len(groups) - 1 or r[k + 1] < r[k]
            if not (left_ok and right_ok) or len(groups) < 2:
                continue
            rest = tuple(v for j, h in enumerate(groups) if j != k for v in h)
            lhs = model.moment(key)
            rhs = model.moment(g) * model.moment(rest)
            chk.record(lhs == rhs, lambda: f"word '{' '.join(key)}' peak {k + 1}: {lhs} != {rhs}")


def _single_face_model(rng, space: ReducedProductSpace, build, per_factor: int = 2) -> OperatorModel:
    variables = {}
    for i in space.factors:
        for t in range(per_factor):
            T = random_matrix(rng, space.dim(i))
            variables[Letter(f"x{i}{'abc'[t]}", i, "l")] = build(i, T)
    return OperatorModel(space, variables)


def _words_upto(ids, nmax: int, rng: random.Random, exhaustive_max: int, samples: int):
    out = []
    for n in range(1, min(nmax, exhaustive_max) + 1):
        out.extend(itertools.product(ids, repeat=n))
    for n in range(exhaustive_max + 1, nmax + 1):
        out.extend(tuple(rng.choice(ids) for _ in range(n)) for _ in range(samples))
    return out


@_timed
def suite_monotone(nmax: int = 5, seed: int = 7, models: int = 4, samples: int = 150) -> Report:
    """Boolean, monotone and anti-monotone constructions, and the monotone-to identity."""
    rep = Report("monotone", seed, {"nmax": nmax, "models": models, "samples": samples})
    rng = random.Random(seed)
    checks = {
        "boolean": rep.check("P_⊎,i λ_i P_⊎,i is Boolean independent"),
        "monotone": rep.check("P_▷,i λ_i P_▷,i is monotone independent"),
        "monotone_rho": rep.check("P_◁,i ρ_i P_◁,i is monotone independent"),
        "anti_lambda": rep.check("λ_i compressed to increasing words from i is anti-monotone independent"),
        "anti_rho": rep.check("ρ_i compressed to decreasing words ending at ≥ i is anti-monotone independent"),
    }
    fbm = rep.check("λ_1 is monotone to P_⊎,2 λ_2 P_⊎,2")
    for _ in range(models):
        dims = [rng.choice((2, 3)) for _ in range(3)]
        space = ReducedProductSpace(dims, nmax)
        builders = {
            "boolean": lambda i, T: (lambda P: P @ lambda_(space, i, T) @ P)(
                projection(space, "boolean", i)),
            "monotone": lambda i, T: (lambda P: P @ lambda_(space, i, T) @ P)(
                projection(space, "monotone", i)),
            "monotone_rho": lambda i, T: (lambda P: P @ rho(space, i, T) @ P)(
                projection(space, "antimonotone", i)),
            "anti_lambda": lambda i, T: (lambda P: P @ lambda_(space, i, T) @ P)(
                projection(space, "anti_left", i)),
            "anti_rho": lambda i, T: (lambda P: P @ rho(space, i, T) @ P)(
                projection(space, "anti_right", i)),
        }
        for name, build in builders.items():
            model = _single_face_model(rng, space, build)
            words = _words_upto(list(model.letters), nmax, rng, 4, samples)
            if name == "boolean":
                factor_of = {v: x.family for v, x in model.letters.items()}
                for key in words:
                    groups = _groups(key, factor_of)
                    if len(groups) < 2:
                        continue
                    lhs = model.moment(key)
                    rhs = Fraction(1)
                    for g in groups:
                        rhs *= model.moment(g)
                    checks[name].record(lhs == rhs, lambda: f"word '{' '.join(key)}'")
            else:
                _peak_check(model, words, checks[name], reverse=name.startswith("anti"))
        _check_monotone_to(rng, nmax, samples, fbm, boolean_factor=2)
    return rep


def _check_monotone_to(rng, nmax: int, samples: int, chk: Check, boolean_factor: int) -> None:
    """``B = λ_1(L(X_1))`` against ``C = P_⊎,k λ_2(L(X_2)) P_⊎,k`` (k = boolean_factor)."""
    dims = [rng.choice((2, 3)) for _ in range(2)]
    space = ReducedProductSpace(dims, nmax)
    P = projection(space, "boolean", boolean_factor)
    variables = {}
    for t in "ab":
        variables[Letter(f"b{t}", "B", "l")] = lambda_(space, 1, random_matrix(rng, dims[0]))
        variables[Letter(f"c{t}", "C", "l")] = P @ lambda_(space, 2, random_matrix(rng, dims[1])) @ P
    model = OperatorModel(space, variables)
    factor_of = {v: x.family for v, x in model.letters.items()}
    for key in _words_upto(list(model.letters), nmax, rng, 4, samples):
        groups = _groups(key, factor_of)
        for k in range(1, len(groups) - 1):
            if factor_of[groups[k][0]] != "B":
                continue
            rest = tuple(v for j, h in enumerate(groups) if j != k for v in h)
            lhs = model.moment(key)
            rhs = model.moment(groups[k]) * model.moment(rest)
            chk.record(lhs == rhs, lambda: f"word '{' '.join(key)}' at group {k + 1}")


# -- central limit ----------------------------------------------------------------


def _rational_fock_data(rng: random.Random, hdim: int, labels):
    return ({k: [random_rational(rng, 5) for _ in range(hdim)] for k in labels},
            {k: [random_rational(rng, 5) for _ in range(hdim)] for k in labels})


@_timed
def suite_clt(nmax: int = 6, seed: int = 11, copies: Sequence[int] = (4, 9),
              scaling_nmax: int = 4) -> Report:
    """Fock-space central-limit family and the cumulant scaling of normalized sums."""
    rep = Report("clt", seed, {"nmax": nmax, "copies": list(copies)})
    rng = random.Random(seed)
    I, J = ["1", "2"], ["3"]
    h, hs = _rational_fock_data(rng, 2, I + J)
    fam = fock_clt_family(2, h, hs, I, J, depth=nmax)
    spec = fam.model.spec()
    cov = rep.check("φ(z_k z_l) = <h(l), h*(k)>")
    for k, l in itertools.product(I + J, repeat=2):
        v = fam.model.moment((k, l))
        cov.record(v == fam.covariance[(k, l)], lambda: f"k={k} l={l}: {v}")
    van = rep.check("cumulants of order ≠ 2 vanish")
    orc = rep.check("moments equal the INC pair-partition sum")
    for n in range(1, nmax + 1):
        for key in itertools.product(I + J, repeat=n):
            w = spec.word(key)
            if n != 2:
                kv = kappa(spec, w)
                van.record(kv == 0, lambda: f"word '{w}': κ={format_scalar(kv)}")
            o = clt_moment_oracle(fam.covariance, w)
            orc.record(spec(w) == o, lambda: f"word '{w}': {spec(w)} != {o}")

    unit = rep.check("unit covariance: φ(z_l^4)=2, φ(z_r^4)=1, φ(z_i z_j z_i z_j)=1")
    u = fock_clt_family(1, {"i": [1], "j": [1]}, {"i": [1], "j": [1]}, ["i"], ["j"], depth=4)
    us = u.model.spec()
    for key, want in ((("i",) * 4, 2), (("j",) * 4, 1), (("i", "j", "i", "j"), 1)):
        got = us.value(key)
        o = clt_moment_oracle(u.covariance, us.word(key))
        unit.record(got == want == o, lambda: f"'{' '.join(key)}': model {got}, oracle {o}")

    scal = rep.check("κ_m(S_N) = N^(1-m/2) κ_m(z) on explicit N-copy models")
    T, S = random_matrix(rng, 2), random_matrix(rng, 2)
    one_copy = copy_sum_model({"x": T}, {"y": S}, 1, depth=scaling_nmax)
    single = one_copy.spec()
    for N in copies:
        model = copy_sum_model({"x": T}, {"y": S}, N, depth=scaling_nmax)
        sspec = model.spec()
        for m in range(1, scaling_nmax + 1):
            for key in itertools.product("xy", repeat=m):
                got = kappa(sspec, sspec.word(key))
                want = clt_cumulant_scaling(single, N, single.word(key))
                scal.record(got == want, lambda: f"N={N} word '{' '.join(key)}': {got} != {want}")
    return rep


# -- convolution -------------------------------------------------------------------


@_timed
def suite_convolution(nmax: int = 5, seed: int = 5, models: int = 4, samples: int = 80) -> Report:
    """Moments of sums of free-Boolean independent families against convolve_distributions."""
    rep = Report("convolution", seed, {"nmax": nmax, "models": models})
    chk = rep.check("moments of X_a + X_b = convolve_distributions(law_a, law_b)")
    rng = random.Random(seed)
    shape = [("X", "l"), ("Xp", "l"), ("Y", "r")]
    for _ in range(models):
        dims = [rng.choice((2, 3)) for _ in range(2)]
        space = ReducedProductSpace(dims, nmax)
        fam = make_family(space, "free_boolean")
        ops = {}
        for i in (1, 2):
            for v, face in shape:
                T = random_matrix(rng, dims[i - 1])
                ops[(i, v)] = fam[i].left(T) if face == "l" else fam[i].right(T)
        letters = [Letter(v, 1, face) for v, face in shape]
        law = {i: OperatorModel(space, {x: ops[(i, x.var)] for x in letters}).spec()
               for i in (1, 2)}
        total = OperatorModel(space, {x: ops[(1, x.var)] + ops[(2, x.var)] for x in letters})
        for key in _words_upto([v for v, _ in shape], nmax, rng, 4, samples):
            w = law[1].word(key)
            got = total.moment(key)
            want = convolve_distributions(law[1], law[2], w)
            chk.record(got == want, lambda: f"word '{w}': {got} != {want}")
    return rep


# -- user-supplied specs -------------------------------------------------------------


@_timed
def verify_spec(spec: MomentSpec, nmax: int | None = None, seed: int | None = None) -> Report:
    """Free-Boolean checks on the tabulated words of a moment spec.

    Reports mixed words with nonzero cumulants and moment-condition
    violations; failures are listed shortest word first.
    """
    keys = [k for k in spec.keys() if nmax is None or len(k) <= nmax]
    rep = Report("spec", seed, {"words": len(keys)})
    words = [spec.word(k) for k in keys]
    ind = check_combinatorial_independence(spec, words)
    chk = rep.check("mixed free-Boolean cumulants vanish")
    bad = sorted(ind.violations, key=lambda t: (len(t[0]), t[0].key))
    for w, v in bad:
        chk.record(False, f"word '{w}': κ={format_scalar(v)}")
    chk.cases = ind.checked
    cond = check_moment_conditions(spec, words)
    chk2 = rep.check("moment conditions hold")
    for v in sorted(cond.violations, key=lambda v: (len(v.word), v.word.key)):
        chk2.record(False, f"word '{v.word}' ({v.kind}): {format_scalar(v.lhs)} vs "
                           f"{format_scalar(v.rhs)}")
    chk2.cases = cond.checked
    return rep


SUITES = {
    "lattice": suite_lattice,
    "moebius": suite_moebius,
    "transforms": suite_transforms,
    "main": suite_main,
    "boolean": suite_boolean,
    "monotone": suite_monotone,
    "clt": suite_clt,
    "convolution": suite_convolution,
}


def run_suite(name: str, nmax: int | None = None, seed: int | None = None) -> Report:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    kwargs = {}
    if nmax is not None:
        kwargs["nmax"] = nmax
    if seed is not None:
        kwargs["seed"] = seed
    return fn(**kwargs)
