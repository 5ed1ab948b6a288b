import random

import pytest

from qplanes.apolarity import (DependentContractions, HilbertFunction,
                               QuadricPlane, annihilator,
                               apolar_hilbert_function, contract,
                               partials_space, plane_from_cubic, recover_cubic)
from qplanes.fields import PrimeField, RationalField
from qplanes.linalg import FormSpace
from qplanes.poly import Poly, monomial_basis, parse_poly

K = PrimeField()
V4 = ["x0", "x1", "x2", "x3"]


def _p(s, k=K):
    return parse_poly(s, V4, k)


def _random_form(k, rng, nvars, d):
    return Poly(k, nvars, {e: k.random_element(rng)
                           for e in monomial_basis(nvars, d)})


def test_contract_basic():
    # d/dx0 of x0^3 = 3 x0^2
    assert contract(_p("x0"), _p("x0^3")) == _p("3*x0^2")
    assert contract(_p("x0*x1"), _p("x0^2*x1")) == _p("2*x0")
    assert contract(_p("x1"), _p("x0^2")) == Poly.zero(K, 4)
    assert contract(_p("x0^2"), _p("x0^2")) == _p("2")


def test_contract_bilinear():
    rng = random.Random(0)
    d1, d2 = (_random_form(K, rng, 4, 2) for _ in range(2))
    f = _random_form(K, rng, 4, 3)
    assert contract(d1 + d2, f) == contract(d1, f) + contract(d2, f)


def test_contract_composition():
    rng = random.Random(1)
    a = _random_form(K, rng, 4, 1)
    b = _random_form(K, rng, 4, 1)
    f = _random_form(K, rng, 4, 3)
    assert contract(a * b, f) == contract(a, contract(b, f))


def test_contract_rationals():
    q = RationalField()
    assert contract(_p("x0^2", q), _p("x0^4", q)) == _p("12*x0^2", q)


def test_hilbert_function_trimming():
    hf = HilbertFunction([1, 4, 3, 0, 0])
    assert hf == [1, 4, 3]
    assert hf.length() == 8


def test_worked_annihilator_example():
    plane = QuadricPlane.from_polys([_p("x0^2"), _p("x1^2"), _p("x2^2 - x3^2")])
    listed = FormSpace.from_polys([_p(s) for s in (
        "x0*x1", "x0*x2", "x0*x3", "x1*x2", "x1*x3", "x2*x3",
        "x2^2 + x3^2")])
    ann = annihilator(plane.space, 3)
    assert ann.piece(1).dim == 0
    assert ann.piece(2) == listed
    assert ann.piece(3).dim == 20
    assert ann.closure_holds()
    hf = apolar_hilbert_function(plane)
    assert hf.with_linear == [1, 4, 3]
    assert hf.plain == [1, 4, 3]


def test_apolar_hf_random_planes():
    rng = random.Random(2)
    for _ in range(10):
        try:
            plane = QuadricPlane.from_polys(
                [_random_form(K, rng, 4, 2) for _ in range(3)])
        except ValueError:
            continue
        hf = apolar_hilbert_function(plane)
        assert hf.with_linear == [1, 4, 3]
        assert hf.with_linear.length() == 8


def test_apolar_hf_degenerate_partials():
    # partials of the plane span only <x0, x1>, so the plain Hilbert
    # function is smaller while the augmented one stays (1, 4, 3)
    plane = QuadricPlane.from_polys([_p("x0^2"), _p("x0*x1"), _p("x1^2")])
    hf = apolar_hilbert_function(plane)
    assert hf.with_linear == [1, 4, 3]
    assert hf.plain == [1, 2, 3]


def test_partials_space():
    f = _p("x0^3 + x1^3 + x2^3 + x3^3")
    s = partials_space(f)
    assert s.dim == 4
    assert s.contains(_p("x0^2"))
    with pytest.raises(ValueError):
        partials_space(_p("x0^2"))


def test_plane_from_cubic_and_recovery():
    rng = random.Random(3)
    for trial in range(5):
        f = _random_form(K, rng, 4, 3)
        ds = [_random_form(K, rng, 4, 1) for _ in range(3)]
        try:
            plane = plane_from_cubic(f, *ds)
        except DependentContractions:
            continue
        got = recover_cubic(plane, seed=trial)
        assert got is not None
        f2, e1, e2, e3 = got
        for op, q in zip((e1, e2, e3), plane.basis_polys()):
            assert contract(op, f2) == q


def test_plane_from_cubic_dependent():
    f = _p("x0^3")
    with pytest.raises(DependentContractions):
        plane_from_cubic(f, _p("x1"), _p("x2"), _p("x3"))


def test_recover_cubic_absent_for_generic_plane():
    rng = random.Random(4)
    plane = QuadricPlane.from_polys(
        [_random_form(K, rng, 4, 2) for _ in range(3)])
    assert recover_cubic(plane, budget=50) is None


def test_recover_cubic_coordinate_plane():
    plane = QuadricPlane.from_polys([_p("x0^2"), _p("x1^2"), _p("x2^2")])
    got = recover_cubic(plane)
    assert got is not None
    f2, e1, e2, e3 = got
    for op, q in zip((e1, e2, e3), plane.basis_polys()):
        assert contract(op, f2) == q
