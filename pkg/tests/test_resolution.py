"""The standard resolution: assembly, exactness, lifting."""

import random
from fractions import Fraction

import pytest

from quivhom.linalg import ExactMatrix, FieldSpec, rank
from quivhom.quiver import Quiver
from quivhom.rep import TwistData, TwistedRep
from quivhom.resolution import (
    GradedBasis,
    GradedMapFamily,
    alpha_to_vector,
    beta_to_vector,
    check_resolution_exactness,
    lift_beta,
    resolution_layout,
    resolution_matrices,
)

Q = FieldSpec.rationals()
F101 = FieldSpec.prime(101)
LOOP = Quiver(1, [(0, 0)])
UNTWISTED = TwistData([1])


def simple_loop_module(field=Q):
    # k[x]/(x) as a module over the loop-quiver path algebra
    return TwistedRep(LOOP, UNTWISTED, field, [1], [ExactMatrix(field, 1, 1, [[0]])])


def test_graded_basis_dimensions():
    q = Quiver(1, [(0, 0), (0, 0)])
    tw = TwistData([2, 1])
    basis = GradedBasis(q, tw, 3)
    # dim e_0 A_l = (2 + 1)^l: one factor 2 or 1 per arrow choice
    for l in range(4):
        assert basis.dim[(0, l)] == 3 ** l


def test_degree_zero_truncation():
    V = TwistedRep(LOOP, UNTWISTED, Q, [2],
                   [ExactMatrix(Q, 2, 2, [[0, 1], [0, 0]])])
    eps, d = resolution_matrices(V, 0)
    assert d.nrows == 0
    assert eps.shape == (2, 2)
    assert rank(eps) == 2           # v -> (v_i)_i is injective


def test_polynomial_example_matrices():
    # eps(1) = (1, 0, 0) on the duals of 1, x, x^2; ker(d) is one-dimensional
    V = simple_loop_module()
    eps, d = resolution_matrices(V, 2)
    assert eps.shape == (3, 1)
    assert eps.column_list(0) == [Fraction(1), Fraction(0), Fraction(0)]
    assert d.shape == (2, 3)
    assert d.ncols - rank(d) == 1
    # d(alpha)(p) = alpha(x p) - x alpha(p) with x acting by zero
    assert d.to_lists() == [[0, 1, 0], [0, 0, 1]]


def test_acyclic_triple_resolution():
    q = Quiver(2, [(1, 0)])
    V = TwistedRep(q, UNTWISTED, Q, [1, 1], [ExactMatrix(Q, 1, 1, [[1]])])
    eps, d = resolution_matrices(V, 2)
    assert rank(d) == d.nrows                # d surjective
    assert d.ncols - rank(d) == 2            # nullity = dim V


def test_exactness_requires_positive_degree():
    with pytest.raises(ValueError):
        check_resolution_exactness(simple_loop_module(), 0)


def test_exactness_zero_module():
    V = TwistedRep.zero_maps(LOOP, UNTWISTED, Q, [0])
    report = check_resolution_exactness(V, 2)
    assert report.all_ok()


def test_exactness_jordan_block():
    V = TwistedRep(LOOP, UNTWISTED, Q, [2],
                   [ExactMatrix(Q, 2, 2, [[0, 1], [0, 0]])])
    assert check_resolution_exactness(V, 3).all_ok()


def _random_rep(rng, max_vertices=3, max_arrows=4, max_dim=3, max_twist=2):
    n = rng.randint(1, max_vertices)
    arrows = [(rng.randrange(n), rng.randrange(n))
              for _ in range(rng.randint(1, max_arrows))]
    q = Quiver(n, arrows)
    tw = TwistData([rng.randint(1, max_twist) for _ in arrows])
    dims = [rng.randint(0, max_dim) for _ in range(n)]
    phi = []
    for a, (t, h) in enumerate(arrows):
        rows, cols = dims[h], tw[a] * dims[t]
        phi.append(ExactMatrix(F101, rows, cols,
                               [[rng.randrange(101) for _ in range(cols)]
                                for _ in range(rows)]))
    return TwistedRep(q, tw, F101, dims, phi)


def test_exactness_random_instances_all_degrees():
    rng = random.Random(3)
    for _ in range(8):
        V = _random_rep(rng)
        for n in range(1, 5):
            assert check_resolution_exactness(V, n).all_ok()


def test_exactness_random_rational_instance():
    rng = random.Random(19)
    for _ in range(3):
        n = rng.randint(1, 2)
        arrows = [(rng.randrange(n), rng.randrange(n))
                  for _ in range(rng.randint(1, 2))]
        q = Quiver(n, arrows)
        tw = TwistData([rng.randint(1, 2) for _ in arrows])
        dims = [rng.randint(1, 2) for _ in range(n)]
        phi = []
        for a, (t, h) in enumerate(arrows):
            rows, cols = dims[h], tw[a] * dims[t]
            phi.append(ExactMatrix(Q, rows, cols,
                                   [[Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                                     for _ in range(cols)] for _ in range(rows)]))
        V = TwistedRep(q, tw, Q, dims, phi)
        assert check_resolution_exactness(V, 3).all_ok()


def test_lift_zero_beta_gives_zero_alpha():
    V = simple_loop_module()
    layout = resolution_layout(V, 2)
    beta = {(0, l): ExactMatrix.zeros(Q, 1, layout.basis.dim[(0, l)])
            for l in range(2)}
    fam = lift_beta(V, GradedMapFamily(max_degree=2, beta=beta), layout)
    assert all(m.is_zero() for m in fam.alpha.values())


def test_lift_monomial_dual_example():
    # beta the dual of x: alpha vanishes in degree 0 and is 1 on x
    V = simple_loop_module()
    layout = resolution_layout(V, 1)
    beta = {(0, 0): ExactMatrix(Q, 1, 1, [[1]])}
    fam = lift_beta(V, GradedMapFamily(max_degree=1, beta=beta), layout)
    assert fam.alpha[(0, 0)].is_zero()
    assert fam.alpha[(0, 1)].to_lists() == [[Fraction(1)]]


def test_lift_random_round_trip():
    rng = random.Random(8)
    for _ in range(10):
        V = _random_rep(rng)
        n = rng.randint(1, 3)
        layout = resolution_layout(V, n)
        beta = {}
        for a, (t, h) in enumerate(V.quiver.arrows):
            for l in range(n):
                rows = V.dims[h]
                cols = V.twist[a] * layout.basis.dim[(t, l)]
                beta[(a, l)] = ExactMatrix(
                    F101, rows, cols,
                    [[rng.randrange(101) for _ in range(cols)]
                     for _ in range(rows)])
        fam = lift_beta(V, GradedMapFamily(max_degree=n, beta=beta), layout)
        # cross-check the verified identity once more through the matrices
        eps, d = resolution_matrices(V, n, layout)
        assert d.apply(alpha_to_vector(layout, fam.alpha)) == [
            V.field.element(x) for x in beta_to_vector(layout, beta)]


def test_lift_shape_validation():
    V = simple_loop_module()
    with pytest.raises(ValueError):
        lift_beta(V, GradedMapFamily(max_degree=1, beta={}))


def test_composite_d_eps_vanishes():
    rng = random.Random(21)
    for _ in range(5):
        V = _random_rep(rng)
        eps, d = resolution_matrices(V, 3)
        assert (d @ eps).is_zero()
