import math
from fractions import Fraction

import pytest

import helpers
from diagfock.scalars import DeformationParams, Poly
from diagfock.fock import GaugePair, VectorPair
from diagfock.wick import QuadrabasicOp, full_wick, gaussian_wick
from diagfock.orthopoly import (
    JacobiData,
    carleman_sums,
    cauchy_transform,
    jacobi_discrete_qhermite,
    jacobi_hermite,
    jacobi_poisson,
    jacobi_qmp,
    jacobi_sech,
    max_abs_root,
    moments_from_jacobi,
    mp_moment_quad,
    mp_normalization,
    norm_squares_from_jacobi,
    orthogonality_residual,
    polys_from_jacobi,
    quadrature_rule,
    sech_density,
    sech_moment_quad,
    support_interval,
)

SYM = DeformationParams.symbolic()


def params_rat(q, t, v, w):
    return DeformationParams.from_rationals(Fraction(q), Fraction(t), Fraction(v), Fraction(w))


def motzkin_moment(beta, gamma, n):
    """Independent oracle: sum over lattice walks of length n from level 0 to 0
    with up steps weighted 1, flat steps beta[l], down steps gamma[l-1]."""

    def walk(level, steps):
        if level > steps:
            return Fraction(0)  # cannot return to the ground level in time
        if steps == 0:
            return Fraction(1) if level == 0 else Fraction(0)
        total = Fraction(0)
        total += walk(level + 1, steps - 1)  # up: weight 1 (monic)
        total += beta[level] * walk(level, steps - 1)
        if level > 0:
            total += gamma[level - 1] * walk(level - 1, steps - 1)
        return total

    return walk(0, n)


def test_transfer_moments_match_walk_oracle():
    r = helpers.rng(51)
    for _ in range(4):
        beta = [helpers.rand_frac(r) for _ in range(5)]
        gamma = [abs(helpers.rand_frac(r)) + 1 for _ in range(4)]
        jac = JacobiData(tuple(beta), tuple(gamma))
        got = moments_from_jacobi(jac, 8)
        assert got == [motzkin_moment(beta, gamma, n) for n in range(1, 9)]


def test_hermite_family_reproduces_pair_partition_moments():
    x = VectorPair.of([1], [1])
    jac = jacobi_hermite(SYM, 5)
    got = moments_from_jacobi(jac, 8)
    expect = [gaussian_wick([x] * n, SYM) for n in range(1, 9)]
    assert got == expect


def test_hermite_specializations():
    def even_moments(params):
        jac = jacobi_hermite(params, 5)
        ms = moments_from_jacobi(jac, 8)
        return ms[1::2]

    assert even_moments(params_rat(1, 1, 0, 1)) == [1, 3, 15, 105]
    assert even_moments(params_rat(0, 1, 0, 1)) == [1, 2, 5, 14]
    assert even_moments(params_rat(1, 1, 1, 1)) == [1, 5, 61, 1385]


def test_poisson_family_matches_operator_moments():
    # the recurrence with beta_0 = 0, beta_n = gamma_(n-1) = [n][n] describes
    # creation + annihilation + identity gauge on the coherent tower
    op = QuadrabasicOp(
        VectorPair.of([1], [1]), GaugePair.of([[1]], [[1]]), Fraction(0), Fraction(0)
    )
    jac = jacobi_poisson(SYM, 4)
    ms = moments_from_jacobi(jac, 6)
    for n in range(1, 7):
        assert full_wick([op] * n, SYM) == ms[n - 1]


def test_poisson_free_specialization():
    ms = moments_from_jacobi(jacobi_poisson(params_rat(0, 1, 0, 1), 3), 4)
    assert ms == [0, 1, 1, 3]


def poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def test_polynomials_are_orthogonal_with_product_norms():
    r = helpers.rng(52)
    beta = [helpers.rand_frac(r) for _ in range(5)]
    gamma = [abs(helpers.rand_frac(r)) + 1 for _ in range(4)]
    jac = JacobiData(tuple(beta), tuple(gamma))
    nmax = 4
    polys = polys_from_jacobi(jac, nmax)
    ms = [Fraction(1)] + moments_from_jacobi(jac, 2 * nmax)
    norms = norm_squares_from_jacobi(jac, nmax)

    def pair(p1, p2):
        prod = poly_mul(p1, p2)
        return sum(c * ms[k] for k, c in enumerate(prod))

    for i in range(nmax + 1):
        for j in range(nmax + 1):
            val = pair(polys[i], polys[j])
            if i != j:
                assert val == 0, (i, j)
            else:
                assert val == norms[i]


def test_norm_squares_are_gamma_products():
    jac = jacobi_hermite(params_rat(Fraction(1, 2), 1, Fraction(1, 3), 1), 5)
    norms = norm_squares_from_jacobi(jac, 4)
    acc = Fraction(1)
    expect = [Fraction(1)]
    for g in jac.gamma[:4]:
        acc *= g
        expect.append(acc)
    assert norms == expect
    assert len(norms) == 5  # P_0 through P_4


def test_cauchy_transform_semicircle_closed_form():
    # constant gamma = 1 gives G(z) = (z - sqrt(z^2 - 4)) / 2
    jac = jacobi_hermite(params_rat(0, 1, 0, 1), 200)
    for z in (complex(3.0, 0.0), complex(0.0, 2.0), complex(1.5, 0.5)):
        got = cauchy_transform(jac, z, 200)
        import cmath

        expect = (z - cmath.sqrt(z * z - 4)) / 2
        assert abs(got - expect) < 1e-10


def test_cauchy_transform_matches_quadrature_sum():
    # evaluation points well away from the support so both routes converge
    jac = jacobi_poisson(params_rat(Fraction(1, 2), 1, Fraction(1, 3), 1), 80)
    nodes, weights = quadrature_rule(jac, 60)
    for z in (complex(0.0, 6.0), complex(14.0, 0.5)):
        direct = sum(w / (z - x) for x, w in zip(nodes, weights))
        assert abs(cauchy_transform(jac, z, 80) - direct) < 1e-8


def test_quadrature_integrates_moments():
    jac = jacobi_hermite(params_rat(Fraction(1, 2), 1, Fraction(1, 3), 1), 30)
    nodes, weights = quadrature_rule(jac, 20)
    exact = [Fraction(1)] + moments_from_jacobi(jac, 10)
    for n in range(11):
        quad = sum(w * x**n for x, w in zip(nodes, weights))
        assert abs(quad - float(exact[n])) < 1e-9 * max(1.0, abs(float(exact[n])))


def test_orthogonality_residual_small():
    jac = jacobi_poisson(params_rat(Fraction(1, 3), 1, Fraction(1, 4), 1), 20)
    assert orthogonality_residual(jac, 6) < 1e-9


def test_sech_moments_exact_and_by_quadrature():
    jac = jacobi_sech(6)
    ms = moments_from_jacobi(jac, 10)
    assert ms[1::2] == [1, 5, 61, 1385, 50521]
    assert ms[0::2] == [0, 0, 0, 0, 0]
    total = sech_moment_quad(0)
    assert abs(total - 1.0) < 1e-10
    for k, expect in ((2, 1.0), (4, 5.0), (6, 61.0)):
        assert abs(sech_moment_quad(k) - expect) < 1e-8 * expect
    assert abs(sech_moment_quad(8) - 1385.0) < 1e-6 * 1385.0


def test_sech_density_values():
    assert abs(sech_density(0.0) - 0.5) < 1e-15
    assert sech_density(3.0) < sech_density(0.0)


def test_qmp_scaling_identity_exact():
    # at alpha = -q the recurrence weights are (1-q) times the squared
    # one-parameter ladder, so even moments scale by (1-q)^(n/2) exactly
    for q in (Fraction(1, 2), Fraction(1, 3), Fraction(3, 4)):
        qmp = moments_from_jacobi(jacobi_qmp(q, -q, 6), 10)
        herm = moments_from_jacobi(jacobi_hermite(params_rat(q, 1, q, 1), 6), 10)
        for n in range(1, 11):
            if n % 2:
                assert qmp[n - 1] == 0 and herm[n - 1] == 0
            else:
                assert qmp[n - 1] == (1 - q) ** (n // 2) * herm[n - 1]


def test_mp_density_corrected_matches_recurrence_moments():
    q, alpha = 0.5, -0.25
    exact = moments_from_jacobi(jacobi_qmp(Fraction(1, 2), Fraction(-1, 4), 5), 8)
    assert abs(mp_normalization(q, alpha, variant="corrected") - 1.0) < 1e-8
    for n in (2, 4, 6):
        got = mp_moment_quad(n, q, alpha, variant="corrected")
        assert abs(got - float(exact[n - 1])) < 1e-6 * max(1.0, float(exact[n - 1]))


def test_mp_density_printed_variant_mass_is_off():
    # the printed prefactor does not normalize; the corrected one does
    mass = mp_normalization(0.5, -0.25, variant="printed")
    assert abs(mass - 1.0) > 0.5


def test_discrete_qhermite_classical_limit():
    ms = moments_from_jacobi(jacobi_discrete_qhermite(Fraction(1), 5), 8)
    assert ms[1::2] == [1, 3, 15, 105]


def test_support_and_roots():
    q = v = Fraction(1, 2)
    lo, hi = support_interval(q, v)
    assert abs(hi - 4.0) < 1e-12 and abs(lo + 4.0) < 1e-12
    jac = jacobi_hermite(params_rat(q, 1, v, 1), 12)
    polys = polys_from_jacobi(jac, 10)
    top = max_abs_root(polys[10])
    assert 2.0 < top < 4.0
    # root spread grows with the degree toward the support edge
    assert max_abs_root(polys[4]) < top


def test_carleman_sech_sum_is_harmonic():
    total, harmonic = carleman_sums(jacobi_sech(30), 25)
    assert abs(total - harmonic) < 1e-12
    assert abs(harmonic - sum(1.0 / k for k in range(1, 26))) < 1e-12
