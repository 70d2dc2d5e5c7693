import numpy as np
import pytest

from nodalpert.families import (double_left_path, ladder, nodal_fixture, path_dirichlet,
                                shallow_deep_family, star, worked_example)
from nodalpert.nodal import urschel_profile
from nodalpert.oracle import (certificate_sandwich, check_vector, random_instance, random_instances,
                              verify_instance)
from nodalpert.perturb_simple import certify_simple
from nodalpert.spectral import GeneralizedLaplacian, eig_sym


def test_star_five_report():
    inst = star(5)
    rep = verify_instance(inst.g, inst.M)
    assert rep.passed
    assert all(r.wnd == 2 for r in rep.records[1:4])


def test_fixture_pattern_record():
    g, p = nodal_fixture()
    rec = check_vector(g, p.astype(float), k=3, m=1)
    assert (rec.snd, rec.wnd) == (3, 2)
    assert rec.wnd <= rec.profile.un <= rec.snd


def test_odd_path_middle():
    inst = path_dirichlet(5)
    rec = verify_instance(inst.g, inst.M).records[2]
    assert rec.profile.un == rec.profile.un_max == 3
    assert rec.checks["un_max<=k"]


@pytest.mark.parametrize("inst", [star(7), ladder(10), double_left_path(11), worked_example(),
                                  shallow_deep_family(2, 2, 2)], ids=lambda i: i.name)
def test_families_have_no_violations(inst):
    rep = verify_instance(inst.g, inst.M, inst.group_tol, inst.zero_tol or 1e-7)
    assert rep.passed, rep.failures


def test_random_instances_are_reproducible_and_valid():
    a = [M.m for M in random_instances(5, seed=3)]
    b = [M.m for M in random_instances(5, seed=3)]
    assert all(np.array_equal(x, y) for x, y in zip(a, b))
    for M in random_instances(50, seed=4):
        assert M.g.is_connected()
        off = M.m[~np.eye(M.n, dtype=bool)]
        assert np.all((off == 0) | ((off <= -0.1) & (off >= -2)))
        assert np.all((np.diag(M.m) >= -1) & (np.diag(M.m) <= 3))


def test_five_hundred_random_instances():
    violations = []
    for i, M in enumerate(random_instances(500)):
        rep = verify_instance(M.g, M)
        violations += [(i, f) for f in rep.failures]
    assert violations == []


def test_budget_skip():
    inst = double_left_path(12)
    rep = verify_instance(inst.g, inst.M, max_zeros=3)
    assert any(r.skipped for r in rep.records)
    assert rep.passed


def test_certificate_sandwich():
    inst = ladder(8)
    s = eig_sym(inst.M)
    prof = urschel_profile(inst.g, np.sign(np.round(s.vector(6), 9)).astype(int))
    assert certificate_sandwich(prof, certify_simple(inst.g, inst.M, 6))


def test_failure_is_reported_with_witness():
    # a pattern that breaks the nowhere-zero bound when declared as index 1
    g, _ = nodal_fixture()
    rec = check_vector(g, np.array([1.0, -1, 1, -1, 1]), k=1, m=1)
    assert "nowhere-zero snd<=k" in rec.failures
    assert rec.pattern is not None
