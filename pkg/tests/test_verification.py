import json
import math

import numpy as np
import pytest

from dunkl_dihedral import verification as V
from dunkl_dihedral.errors import InvalidParameter


def test_record_pass_flag():
    assert V.record("x", {}, 1e-12, 1e-10).passed
    assert not V.record("x", {}, 1e-9, 1e-10).passed
    assert not V.record("x", {}, math.nan, 1e-10).passed
    assert not V.record("x", {}, math.inf, 1e-10).passed


def test_report_pass_is_conjunction():
    rep = V.VerificationReport("demo", 0, {})
    assert rep.passed
    rep.records = [V.record("a", {}, 0.0, 1.0), V.record("b", {}, 2.0, 1.0)]
    assert not rep.passed and [r.identity for r in rep.failures()] == ["b"]


def test_report_json_has_no_timing_by_default():
    rep = V.VerificationReport("demo", 3, {"k": (2, 3)}, [V.record("a", {"lam": np.float64(0.5)}, 0.0, 1.0)])
    rep.wall_time = 1.25
    d = json.loads(rep.to_json())
    assert "wall_time" not in d and d["grid"]["k"] == [2, 3]
    assert json.loads(rep.to_json(timing=True))["wall_time"] == 1.25


@pytest.mark.parametrize("suite", V.SUITES + ("all",))
def test_every_suite_has_tasks(suite):
    tasks = V.suite_tasks(suite, V.Options())
    assert tasks and all(callable(fn) and isinstance(kw, dict) for fn, kw in tasks)


def test_unknown_suite_rejected():
    with pytest.raises(InvalidParameter):
        V.suite_tasks("nope", V.Options())


def test_loosening_requires_acknowledgement():
    with pytest.raises(InvalidParameter):
        V.run_suite("identities", V.Options(ks=(2,), tol=1e-3))
    rep = V.run_suite("identities", V.Options(ks=(2,), tol=1e-3, allow_loose=True))
    assert all(r.tol == 1e-3 for r in rep.records)
    tight = V.run_suite("identities", V.Options(ks=(2,), tol=1e-13))
    assert all(r.tol == 1e-13 for r in tight.records)


def test_small_suites_pass():
    for suite, opts in [("intertwine", V.Options(ks=(3,), lams=(1.0,), max_degree=6, mc_samples=100_000)),
                        ("commute", V.Options(ks=(2, 3), lams=(0.5,), max_degree=4)),
                        ("orthogonality", V.Options(ks=(2,), lams=(1.0,))),
                        ("products", V.Options(ks=(2,), lams=(0.5,), mus=(1.0,)))]:
        rep = V.run_suite(suite, opts)
        assert rep.passed, [r.to_dict() for r in rep.failures()]


def test_kernel_suite_reports_plus_vertex_zero_failure():
    rep = V.run_suite("kernels", V.Options(ks=(1, 2), lams=(1.0,)))
    failed = {(r.identity, r.params["family"], r.params["k"], r.params["p"]) for r in rep.failures()}
    assert failed == {("generating-plus-square", "plus", 2, 0)}


def test_reports_are_deterministic():
    opts = V.Options(ks=(3,), lams=(0.7,), max_degree=4, mc_samples=20_000, seed=42)
    a = V.run_suite("intertwine", opts).to_json()
    b = V.run_suite("intertwine", opts).to_json()
    assert a == b
    c = V.run_suite("intertwine", V.Options(ks=(3,), lams=(0.7,), max_degree=4, mc_samples=20_000, seed=43))
    assert c.to_json() != a


def test_parallel_run_matches_serial():
    opts = dict(ks=(2, 3), lams=(0.5,), seed=5)
    a = V.run_suite("identities", V.Options(**opts)).to_json()
    b = V.run_suite("identities", V.Options(jobs=2, **opts)).to_json()
    assert a == b


def test_conventions_record():
    conv = V.conventions(ks=(1, 2), lams=(1.0,))
    assert conv["connection_U_sign"]["chosen"] == "+"
    assert conv["two_param_basis_reading"]["chosen"] == "m-shift"
    assert all(m["label_inverted"] for m in conv["modified_family"])
    assert conv["plus_norm_mass_factor"]["factor_k_ge_2"] == pytest.approx(2.0)


def test_connection_sign_probe_separates_signs():
    dev = V._connection_sign_convention()
    assert dev["+"] <= 1e-12 and dev["-"] > 1.0
