"""Smoke tests for the Python bindings.

When run from the CMake build tree (the ``python_smoke`` ctest), the compiled
extension lives in ``TPWKB_EXT_DIR`` and the package sources in
``TPWKB_PKG_DIR``; stitch them together before importing.  An installed
``tpwkb`` package works without either variable.
"""

import math
import os
import sys


def _import_tpwkb():
    ext_dir = os.environ.get("TPWKB_EXT_DIR")
    pkg_dir = os.environ.get("TPWKB_PKG_DIR")
    if ext_dir and pkg_dir:
        sys.path.insert(0, ext_dir)
        sys.path.insert(0, pkg_dir)
        import _tpwkb  # noqa: F401  (make the extension importable first)

        sys.modules.setdefault("tpwkb._tpwkb", sys.modules["_tpwkb"])
    import tpwkb

    return tpwkb


tpwkb = _import_tpwkb()


def test_airy_wronskian():
    q = tpwkb.airy_eval(-1.0)
    assert abs(q.wronskian() - 1.0 / math.pi) < 1e-12
    z = tpwkb.airy_eval(0.0)
    ai0 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
    assert abs(z.ai - ai0) < 1e-13


def test_problem_and_action():
    p = tpwkb.ProblemSpec.from_mu([0.0, 1.0], 0.5)
    assert p.mu(0.25) == 0.25
    # int_0^b sqrt(t) dt = (2/3) b^{3/2}
    assert abs(tpwkb.action(p, 0.0, 0.4) - 2.0 / 3.0 * 0.4**1.5) < 1e-12


def test_json_round_trip():
    p = tpwkb.ProblemSpec.from_json_text('{"mu_poly": [0.0, 1.0, 0.5], "nu0": 0.5}')
    assert abs(p.mu(1.0) - 1.5) < 1e-15


def test_uniform_approximant_matches_airy_for_linear_mu():
    p = tpwkb.ProblemSpec.from_mu([0.0, 1.0], 0.5)
    eps = 1e-2
    a = tpwkb.uniform_wu_solution(p, eps, 0.2, 0.1, 0.3)
    q = tpwkb.airy_eval(-0.1 / eps ** (2.0 / 3.0))
    x = math.exp(a.logmag) * a.xm
    assert abs(x - q.ai) <= 1e-8 * max(abs(q.ai), 1e-3)


def test_integrator_linearity():
    p = tpwkb.ProblemSpec.from_mu([0.0, 1.0, 0.5], 0.5)
    s1 = tpwkb.integrate(p, 0.1, -0.4, 1.0, 0.5, 0.2)
    s2 = tpwkb.integrate(p, 0.1, -0.4, 2.0, 1.0, 0.2)
    assert abs((s2.logmag - s1.logmag) - math.log(2.0)) < 1e-14
    assert s1.xhat == s2.xhat and s1.yhat == s2.yhat


def test_harmonic_eigenvalues():
    bs = tpwkb.bs_energies([0.0, 0.0, 1.0], 0.1, 3)
    for n, e in enumerate(bs):
        assert abs(e - 0.1 * (2 * n + 1)) < 1e-10
    tl, tr = tpwkb.turning_points([0.0, 0.0, 1.0], 1.0)
    assert abs(tl + 1.0) < 1e-12 and abs(tr - 1.0) < 1e-12


def test_run_criteria_subset():
    results = tpwkb.run_criteria([2])
    assert len(results) == 1
    assert results[0].id == 2
    assert results[0].pass_
