"""Twisted convolution algebra: product, star, multipliers, integral identity."""

import math
import random
from fractions import Fraction

import pytest
from scipy.integrate import quad

from superrep.crossed import (
    CrossedElement,
    element_sample_difference,
    gamma_integral,
    mul_compose,
    mul_group,
    mul_lie,
    mul_star,
    orbit_derivative_check,
    xp_multiply,
    xp_star,
)
from superrep.enveloping import UEElement, normal_form
from superrep.functions import FiniteFunction, GaussianPoly, fourier_at
from superrep.groups import GroupPoint
from superrep.scalars import GaussianRational


def random_finite_function(rng, pair):
    values = {
        p: GaussianRational(Fraction(rng.randint(-2, 2)), Fraction(rng.randint(-2, 2)))
        for p in pair.points()
        if rng.random() < 0.7
    }
    return FiniteFunction(pair, values)


def random_finite_element(rng, pair, max_deg=1):
    out = CrossedElement.zero(pair)
    for _ in range(rng.randint(1, 2)):
        word = tuple(
            rng.randrange(pair.algebra.dim) for _ in range(rng.randint(0, max_deg))
        )
        mono = normal_form(pair.algebra, word)
        out = out + CrossedElement.tensor(pair, mono, random_finite_function(rng, pair))
    return out


def random_line_function(rng):
    def side():
        if rng.random() < 0.5:
            return ()
        coeffs = tuple(
            complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            for _ in range(rng.randint(1, 2))
        )
        return (GaussianPoly.gaussian(
            rng.uniform(0.5, 2.0), rng.uniform(-1, 1), coeffs
        ).plus[0],)

    plus, eps = side(), side()
    if not plus and not eps:
        plus = (GaussianPoly.gaussian(1.0, 0.0, (1.0,)).plus[0],)
    return GaussianPoly(plus, eps)


def random_line_element(rng, pair, max_deg=2):
    out = CrossedElement.zero(pair)
    for _ in range(rng.randint(1, 2)):
        word = tuple(
            rng.randrange(pair.algebra.dim) for _ in range(rng.randint(0, max_deg))
        )
        mono = normal_form(pair.algebra, word)
        out = out + CrossedElement.tensor(pair, mono, random_line_function(rng))
    return out


# -- ring laws ---------------------------------------------------------------


def test_finite_associativity_and_star_200(z2odd):
    rng = random.Random(101)
    for _ in range(200):
        a = random_finite_element(rng, z2odd)
        b = random_finite_element(rng, z2odd)
        c = random_finite_element(rng, z2odd)
        assert xp_multiply(xp_multiply(a, b), c).terms == xp_multiply(
            a, xp_multiply(b, c)
        ).terms
        assert xp_star(xp_multiply(a, b)).terms == xp_multiply(
            xp_star(b), xp_star(a)
        ).terms
        assert xp_star(xp_star(a)).terms == a.terms


def test_line_associativity_and_star(hcline):
    rng = random.Random(102)
    for _ in range(25):
        a = random_line_element(rng, hcline)
        b = random_line_element(rng, hcline)
        c = random_line_element(rng, hcline)
        lhs = xp_multiply(xp_multiply(a, b), c)
        rhs = xp_multiply(a, xp_multiply(b, c))
        assert element_sample_difference(lhs, rhs) <= 1e-8
        lhs = xp_star(xp_multiply(a, b))
        rhs = xp_multiply(xp_star(b), xp_star(a))
        assert element_sample_difference(lhs, rhs) <= 1e-8
        assert element_sample_difference(xp_star(xp_star(a)), a) <= 1e-10


def test_unit_element_finite(z2odd):
    rng = random.Random(103)
    unit = CrossedElement.tensor(
        z2odd,
        UEElement.unit(z2odd.algebra),
        FiniteFunction.delta(z2odd, z2odd.identity_point()),
    )
    for _ in range(20):
        a = random_finite_element(rng, z2odd)
        assert xp_multiply(unit, a).terms == a.terms
        assert xp_multiply(a, unit).terms == a.terms


def test_clifford_square_line(hcline):
    # (x (x) f)^2 = (1/2) z (x) (f * f)
    f = GaussianPoly.gaussian(1.0, 0.0, (1.0,))
    x = UEElement.generator(hcline.algebra, 1)
    a = CrossedElement.tensor(hcline, x, f)
    sq = xp_multiply(a, a)
    assert set(sq.terms) == {(0,)}
    g = sq.terms[(0,)]
    for t in (-1.0, 0.0, 0.7):
        expected = 0.5 * math.sqrt(math.pi / 2) * math.exp(-t * t / 2)
        assert g.value(t) == pytest.approx(expected, abs=1e-12)


def test_ad_twist_in_finite_product(z2odd):
    # delta_s twists x by Ad(s) = -1 when it passes across
    ds = FiniteFunction.delta(z2odd, GroupPoint(1, False))
    d1 = FiniteFunction.delta(z2odd, z2odd.identity_point())
    x = UEElement.generator(z2odd.algebra, 0)
    a = CrossedElement.tensor(z2odd, UEElement.unit(z2odd.algebra), ds)
    b = CrossedElement.tensor(z2odd, x, d1)
    prod = xp_multiply(a, b)
    assert prod.terms == {(0,): ds.scale(GaussianRational.of(-1))}


# -- multipliers -------------------------------------------------------------


def test_group_multiplier_relations(z2odd):
    rng = random.Random(104)
    s = GroupPoint(1, False)
    eps = z2odd.epsilon_point()
    for g, h in [(s, s), (s, eps), (eps, eps)]:
        mg, mh = mul_group(z2odd, g), mul_group(z2odd, h)
        mgh = mul_group(z2odd, z2odd.multiply(g, h))
        comp = mul_compose(mg, mh)
        for _ in range(25):
            a = random_finite_element(rng, z2odd)
            assert comp.lam(a).terms == mgh.lam(a).terms
            assert comp.rho(a).terms == mgh.rho(a).terms


def test_group_multiplier_unitary(z2odd):
    # (lam_g, rho_g)* = (lam_{g^-1}, rho_{g^-1})
    rng = random.Random(105)
    for g in [GroupPoint(1, False), z2odd.epsilon_point(), GroupPoint(1, True)]:
        star = mul_star(mul_group(z2odd, g))
        inv = mul_group(z2odd, z2odd.inverse(g))
        for _ in range(25):
            a = random_finite_element(rng, z2odd)
            assert star.lam(a).terms == inv.lam(a).terms
            assert star.rho(a).terms == inv.rho(a).terms


def test_lie_multiplier_star_rule(z2odd):
    # (lam_x, rho_x)* = (lam_{x*}, rho_{x*}) with x* = -i x for odd x
    rng = random.Random(106)
    star = mul_star(mul_lie(z2odd, 0))
    xstar = mul_lie(z2odd, [GaussianRational(Fraction(0), Fraction(-1))])
    for _ in range(25):
        a = random_finite_element(rng, z2odd)
        assert star.lam(a).terms == xstar.lam(a).terms
        assert star.rho(a).terms == xstar.rho(a).terms


def test_multiplier_left_right_compatibility(z2odd):
    # rho(a) b products associate with lam: (a . m) b = a (m . b)
    rng = random.Random(107)
    for mult in [mul_group(z2odd, GroupPoint(1, False)), mul_lie(z2odd, 0)]:
        for _ in range(25):
            a = random_finite_element(rng, z2odd)
            b = random_finite_element(rng, z2odd)
            lhs = xp_multiply(mult.rho(a), b)
            rhs = xp_multiply(a, mult.lam(b))
            assert lhs.terms == rhs.terms


def test_conjugation_identity_finite(z2odd):
    # lam_g lam_x lam_{g^-1} = lam_{Ad(g) x} as multipliers
    rng = random.Random(108)
    g = GroupPoint(1, False)  # Ad(s) x = -x
    conj = mul_compose(
        mul_group(z2odd, g), mul_compose(mul_lie(z2odd, 0), mul_group(z2odd, z2odd.inverse(g)))
    )
    target = mul_lie(z2odd, [GaussianRational.of(-1)])
    for _ in range(25):
        a = random_finite_element(rng, z2odd)
        assert conj.lam(a).terms == target.lam(a).terms
        assert conj.rho(a).terms == target.rho(a).terms


def test_conjugation_identity_eps_line(hcline):
    # lam_eps lam_x lam_eps = lam_{-x} for odd x on the line
    rng = random.Random(109)
    eps = hcline.epsilon_point()
    conj = mul_compose(
        mul_group(hcline, eps), mul_compose(mul_lie(hcline, 1), mul_group(hcline, eps))
    )
    target = mul_lie(hcline, [GaussianRational(), GaussianRational.of(-1)])
    for _ in range(10):
        a = random_line_element(rng, hcline)
        assert element_sample_difference(conj.lam(a), target.lam(a)) <= 1e-12
        assert element_sample_difference(conj.rho(a), target.rho(a)) <= 1e-12


# -- the integrated-action identity ------------------------------------------


def test_gamma_identity_finite_exact(z2odd):
    rng = random.Random(110)
    for _ in range(50):
        f = random_finite_function(rng, z2odd)
        h = random_finite_function(rng, z2odd)
        word = tuple(rng.randrange(1) for _ in range(rng.randint(0, 1)))
        d = normal_form(z2odd.algebra, word)
        lhs = gamma_integral(z2odd, f, d, h)
        rhs = xp_multiply(
            CrossedElement.tensor(z2odd, UEElement.unit(z2odd.algebra), f),
            CrossedElement.tensor(z2odd, d, h),
        )
        assert lhs.terms == rhs.terms


def test_gamma_identity_line_vs_quadrature(hcline):
    # the group integral of f(g) alpha_g(D) (x) L_g h computed by quadrature
    # must match the closed-form product (1 (x) f)(D (x) h) to 1e-6
    f = GaussianPoly.gaussian(1.0, 0.2, (1.0, 0.3))
    h = GaussianPoly.gaussian(1.5, -0.4, (0.5,))
    d = normal_form(hcline.algebra, (1,))  # D = x
    closed = gamma_integral(hcline, f, d, h)
    assert set(closed.terms) == {(1,)}
    g = closed.terms[(1,)]
    for t in (-1.0, 0.0, 0.8):
        oracle = quad(
            lambda s: (f.value(s) * h.value(t - s)).real, -30, 30, limit=200
        )[0]
        assert g.value(t).real == pytest.approx(oracle, abs=1e-6)
        assert g.value(t).imag == pytest.approx(0.0, abs=1e-6)
    # and the identity itself holds against the product
    rhs = xp_multiply(
        CrossedElement.tensor(hcline, UEElement.unit(hcline.algebra), f),
        CrossedElement.tensor(hcline, d, h),
    )
    assert element_sample_difference(closed, rhs) <= 1e-10


def test_gamma_identity_line_eps_component(hcline):
    f = GaussianPoly((), GaussianPoly.gaussian(1.0, 0.0, (1.0,)).plus)
    h = GaussianPoly.gaussian(2.0, 0.5, (1.0,))
    d = normal_form(hcline.algebra, (1,))
    lhs = gamma_integral(hcline, f, d, h)
    rhs = xp_multiply(
        CrossedElement.tensor(hcline, UEElement.unit(hcline.algebra), f),
        CrossedElement.tensor(hcline, d, h),
    )
    assert element_sample_difference(lhs, rhs) <= 1e-10


# -- orbit derivative ---------------------------------------------------------


def test_orbit_derivative_certified_residual_decays(hcline):
    f = GaussianPoly.gaussian(1.0, 0.0, (1.0,))
    a = CrossedElement.tensor(hcline, UEElement.generator(hcline.algebra, 1), f)
    r1 = orbit_derivative_check(hcline, a, 0.1)
    r2 = orbit_derivative_check(hcline, a, 0.05)
    assert r1 > 0
    assert 0.4 <= r2 / r1 <= 0.6


def test_orbit_residual_bounds_sampled_defect(hcline):
    # the certified residual dominates the actual sampled L-infinity defect
    f = GaussianPoly.gaussian(1.0, 0.0, (1.0,))
    a = CrossedElement.tensor(hcline, UEElement.unit(hcline.algebra), f)
    h = 0.01
    moved = mul_group(hcline, GroupPoint(h, False)).lam(a)
    quotient = (moved - a).scale(1.0 / h)
    z = hcline.generator_index
    deriv = mul_lie(hcline, z).lam(a)  # lam_z(1 (x) f) = z (x) f
    # compare the function parts pointwise: quotient has word (), deriv (z,)
    q = quotient.terms[()]
    worst = 0.0
    for t in [-2 + 0.2 * k for k in range(21)]:
        # d/dt of the orbit at 0 equals -f'(t) = (R_z f)(t)
        target = -f.derivative().value(t)
        worst = max(worst, abs(q.value(t) - target))
    assert worst <= orbit_derivative_check(hcline, a, h)
