import json
from fractions import Fraction

import pytest

from freeboolean import verification as V
from freeboolean.fixtures import DEFECT_WORD, load_fixture
from freeboolean.cumulants import MomentSpec


@pytest.mark.parametrize("name,kwargs", [
    ("lattice", {"nmax": 5, "iso_nmax": 5, "bounds_nmax": 4}),
    ("moebius", {"nmax": 5}),
    ("transforms", {"nmax": 5, "count": 5, "extras_nmax": 4}),
    ("main", {"nmax": 4, "models": 4}),
    ("boolean", {"nmax": 4, "models": 4}),
    ("monotone", {"nmax": 4, "models": 1, "samples": 20}),
    ("clt", {"nmax": 4, "copies": (4,), "scaling_nmax": 3}),
    ("convolution", {"nmax": 4, "models": 1}),
])
def test_small_suites_pass(name, kwargs):
    rep = V.SUITES[name](**kwargs)
    assert rep.ok, rep.render()
    assert rep.render().splitlines()[0].startswith(f"# suite={name} seed=")


def test_reports_are_deterministic():
    a = V.suite_main(nmax=4, models=3, seed=3)
    b = V.suite_main(nmax=4, models=3, seed=3)
    assert a.to_json() == b.to_json()
    assert "seed=3" in a.header()
    json.dumps(a.to_json())


def test_run_suite_dispatch():
    rep = V.run_suite("convolution", nmax=3, seed=1)
    assert rep.seed == 1 and rep.params["nmax"] == 3
    with pytest.raises(ValueError):
        V.run_suite("nope")


def test_defective_prediction_is_caught(monkeypatch):
    real = V.predicted_moment_star

    def broken(pairs, w):
        v = real(pairs, w)
        return v + 1 if len(w) == 3 and len(set(w.families)) > 1 else v

    monkeypatch.setattr(V, "predicted_moment_star", broken)
    rep = V.suite_main(nmax=3, models=2)
    assert not rep.ok
    chk = rep.check_named("model moment = predicted_moment_star")
    assert chk.nfail > 0 and chk.failures
    assert rep.check_named("model moment = evaluate_moment_recursive").ok
    assert "FAIL" in rep.render()


def test_defective_projection_is_caught(monkeypatch):
    real = V.projection

    def global_boolean(space, kind, i=None):
        return real(space, kind, None if kind == "boolean" else i)

    monkeypatch.setattr(V, "projection", global_boolean)
    rep = V.suite_monotone(nmax=4, models=1, samples=20)
    assert not rep.check_named("P_⊎,i λ_i P_⊎,i is Boolean independent").ok


def test_verify_spec_defect_fixture():
    rep = V.verify_spec(MomentSpec.from_json(load_fixture("defect.json")))
    assert not rep.ok
    for c in rep.checks:
        assert not c.ok and f"'{DEFECT_WORD}'" in c.failures[0]
    clean = V.verify_spec(MomentSpec.from_json(load_fixture("moments.json")), nmax=3)
    assert clean.ok and clean.params["words"] == 4 + 16 + 64


def test_check_records_bounded_counterexamples():
    c = V.Check("x")
    n = 4 * V.MAX_FAILURES_KEPT
    for k in range(n):
        c.record(k % 2 == 0, lambda k=k: f"case {k}")
    assert c.cases == n and c.nfail == n // 2
    assert len(c.failures) == V.MAX_FAILURES_KEPT and c.failures[0] == "case 1"
    assert not c.ok
