import cmath
import math

import pytest
import sacirc


def test_catalog():
    assert set(sacirc.map_names()) == {"R", "f", "m", "g", "N"}


def test_eval_matches_formula():
    p = sacirc.eval("f", 0.7 + 0.2j, 0.1 - 0.05j)
    z, w = 0.7 + 0.2j, 0.1 - 0.05j
    assert abs(p.c1 - (z**3 + 2 * w * z**2)) < 1e-14
    assert abs(p.c2 - w**2) < 1e-14


def test_phi_line_identity():
    value, bound, terms = sacirc.phi("g", 1.3 + 0.4j, 0j)
    assert abs(value - (1.3 + 0.4j)) < 1e-13
    assert bound >= 0 and terms >= 1


def test_preimage_count():
    pre = sacirc.preimages("R", 0.3 + 0.2j, 0.4 + 0.1j, "physical-zt")
    assert len(pre) == 8


def test_slice_near_circle():
    thetas, radii = sacirc.slice("g", 0.02 + 0j, thetas=8, tol=1e-6)
    assert len(radii) == 8
    assert all(0.9 < r < 1.1 for r in radii)


def test_series_bandwidths_grow_only_for_small_a():
    assert max(sacirc.series_bandwidths("m", 16)) <= 2
    assert max(sacirc.series_bandwidths("f", 16)) > 10


def test_cyl_eval_circle_map():
    theta, t = sacirc.cyl_eval(math.pi / 3, 0.0)
    assert abs(theta - 4 * math.pi / 3) < 1e-12
    assert t == 0.0


def test_holonomy_identity_leaf():
    samples = sacirc.holonomy_leaf(0.0, t_max=0.02)
    assert all(abs(th) < 1e-8 for _, th in samples)


def test_domain_error_is_raised():
    with pytest.raises(sacirc.DomainError):
        sacirc.phi("f", 1.02 + 0j, 1e-4 + 0j)  # a < b needs experimental=True
