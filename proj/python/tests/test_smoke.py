"""Python smoke tests for the compiled extension."""

import json
import math

try:
    from qcclab import _qcclab as core
except ImportError:  # running against the in-build module
    import _qcclab as core


def test_quaternion_product():
    i = (0.0, 1.0, 0.0, 0.0)
    j = (0.0, 0.0, 1.0, 0.0)
    k = core.quat_mul(i, j)
    assert k == [0.0, 0.0, 0.0, 1.0]
    one_plus_i = (1.0, 1.0, 0.0, 0.0)
    one_plus_j = (1.0, 0.0, 1.0, 0.0)
    assert core.quat_mul(one_plus_i, one_plus_j) == [1.0, 1.0, 1.0, 1.0]


def test_so3_covering():
    m = core.so3_from_unit((1.0, 1.0, 0.0, 0.0))  # normalized internally
    assert abs(m[0][0] - 1.0) < 1e-12
    assert abs(m[1][2] - 1.0) < 1e-12
    assert abs(m[2][1] + 1.0) < 1e-12


def test_group_law_and_inverse():
    t, z = core.group_mul((0, 0, 0), [0, 1, 0, 0], (0, 0, 0), [0, 0, 1, 0])
    assert abs(t[2] - 1.0) < 1e-15  # Im<i, j> = -k
    ti, zi = core.group_inv(t, z)
    t2, z2 = core.group_mul(t, z, ti, zi)
    assert max(abs(v) for v in t2) < 1e-15
    assert max(abs(v) for v in z2) < 1e-15


def test_metric_is_conformal():
    a = 1.3
    z = [0.4, -0.2, 0.7, 0.1]
    x = [1.0, 0.0, 0.0, 0.0]
    r2 = sum(v * v for v in z)
    g = core.metric(a, z, x, x)
    assert abs(g - 1.0 / (1.0 + a * r2)) < 1e-12
    assert abs(core.conformal_factor(a, z) - 1.0 / (1.0 + a * r2)) < 1e-15


def test_tau_preserves_norm():
    z = [0.3, -0.5, 0.2, 0.9]
    for alpha in (1, 2, 3):
        tz = core.tau(alpha, 0.8, z)
        assert abs(sum(v * v for v in tz) - sum(v * v for v in z)) < 1e-12


def test_contact_form_and_lift():
    t = (0.1, -0.2, 0.3)
    z = [0.5, 0.1, -0.4, 0.2]
    dt, dz = core.horizontal_lift(t, z, [1.0, 0.0, 0.0, 0.0])
    for alpha in (1, 2, 3):
        assert abs(core.omega(alpha, t, z, dt, dz)) < 1e-14


def test_descended_form_at_origin():
    e1 = [1.0, 0.0, 0.0, 0.0]
    e2 = [0.0, 1.0, 0.0, 0.0]
    val = core.omega_descended(1, 1.0, [0.0, 0.0, 0.0, 0.0], e1, e2)
    assert abs(val - 2.0) < 1e-12


def test_curvature_summaries_run():
    val = core.ricci_norm(1, 1.0, [0.5, 0.0, 0.0, 0.0])
    assert val >= 0.0 and math.isfinite(val)
    s = core.scalar_curvature(1, 0.5, [0.2, 0.1, 0.0, 0.3])
    assert math.isfinite(s)


def test_audit_runner_small():
    doc, code = core.run_audits_json(
        ns=[1], as_=[1.0], samples=10, backend="dual", audits=["forms"], stable=True
    )
    report = json.loads(doc)
    assert report["config"]["samples"] == 10
    assert report["results"], "no results produced"
    for entry in report["results"]:
        if entry["class"] == "assert":
            assert entry["status"] == "pass", entry
    assert code == 0

    doc2, _ = core.run_audits_json(
        ns=[1], as_=[1.0], samples=10, backend="dual", audits=["forms"], stable=True
    )
    assert doc == doc2
