import numpy as np
import pytest

from robinkg.exceptions import DomainError
from robinkg.field import (
    eval_interior,
    eval_on_boundary,
    fundamental_solution,
    inside_domain,
    resample_density,
    robin_data_probe,
)
from robinkg.solver import DensitySolution, solve_problem

from conftest import EX1A_PROBES, EX1B_PROBES, Y_STAR, example1b

K0_3_OVER_2PI = 0.0055289638436389221959
K1_27 = 0.057738398956525934871
K0_27 = 0.049255400915817582199


def test_fundamental_solution_example():
    assert fundamental_solution([1.0, 0.0], Y_STAR, 1.0) == pytest.approx(K0_3_OVER_2PI, rel=1e-14)


def test_fundamental_solution_symmetries():
    ang = np.linspace(0, 2 * np.pi, 9)
    pts = 1.7 * np.column_stack([np.cos(ang), np.sin(ang)])
    vals = fundamental_solution(pts, [0.0, 0.0], 1.3)
    np.testing.assert_allclose(vals, vals[0], rtol=1e-15)
    assert fundamental_solution([1.0, 0.0], [0.0, 0.0], 1.0) == pytest.approx(
        fundamental_solution([0.5, 0.0], [0.0, 0.0], 2.0), rel=1e-15
    )
    with pytest.raises(DomainError):
        fundamental_solution([1.0, 2.0], [1.0, 2.0], 1.0)


def test_robin_data_probe_example(ex1a):
    expected = (K1_27 + K0_27) / (2 * np.pi)
    assert robin_data_probe(ex1a, 1, 0.0) == pytest.approx(expected, rel=1e-14)


def test_robin_data_probe_needs_fundamental(ex2):
    with pytest.raises(DomainError):
        robin_data_probe(ex2, 1, 0.0)


def test_inside_domain(ex1a):
    pts = np.array([[0.0, 0.5], [0.0, 0.0], [2.0, 0.0], [1.3, 0.0], [1.0, 0.0]])
    assert list(inside_domain(ex1a, pts)) == [True, False, False, False, True]


def test_eval_interior_rejects_outside(ex1a):
    sol = solve_problem(ex1a, 8)
    for bad in ([0.0, 0.0], [3.0, 0.0], [1.3, 0.0]):
        with pytest.raises(DomainError):
            eval_interior(sol, bad)
    with pytest.raises(DomainError):
        eval_interior(sol, [0.0, 0.5], oversample=0)


def test_scalar_and_batch_shapes(ex1a):
    sol = solve_problem(ex1a, 8)
    batch = eval_interior(sol, EX1A_PROBES)
    assert batch.shape == (4,)
    assert isinstance(eval_interior(sol, EX1A_PROBES[0]), float)
    assert eval_interior(sol, EX1A_PROBES[0]) == batch[0]


def test_interior_linear_in_densities(ex1a):
    sol = solve_problem(ex1a, 16)
    rng = np.random.default_rng(0)
    p1, p2 = rng.normal(size=(2, 32)), rng.normal(size=(2, 32))
    mk = lambda a, b: DensitySolution(16, a, b, ex1a)  # noqa: E731
    a, b = 0.7, -1.9
    lhs = eval_interior(mk(a * p1[0] + b * p2[0], a * p1[1] + b * p2[1]), EX1A_PROBES)
    rhs = a * eval_interior(mk(p1[0], p1[1]), EX1A_PROBES) + b * eval_interior(mk(p2[0], p2[1]), EX1A_PROBES)
    np.testing.assert_allclose(lhs, rhs, atol=1e-13)
    assert sol.M == 16


def test_zero_densities(ex1a):
    sol = DensitySolution(8, np.zeros(16), np.zeros(16), ex1a)
    assert np.all(eval_interior(sol, EX1A_PROBES) == 0.0)
    assert np.all(eval_on_boundary(sol, 2, np.linspace(0, 6, 5)) == 0.0)


def test_boundary_values_match_exact(ex1a):
    sol = solve_problem(ex1a, 32)
    t = np.random.default_rng(8).uniform(0, 2 * np.pi, 16)
    for i in (1, 2):
        exact = fundamental_solution(ex1a.curve(i).points(t), Y_STAR, 1.0)
        assert np.max(np.abs(eval_on_boundary(sol, i, t) - exact)) <= 1e-10


def test_boundary_periodic_and_scalar(ex1a):
    sol = solve_problem(ex1a, 8)
    v = eval_on_boundary(sol, 1, 0.4)
    assert isinstance(v, float)
    assert eval_on_boundary(sol, 1, 0.4 + 2 * np.pi) == pytest.approx(v, abs=1e-14)
    with pytest.raises(DomainError):
        eval_on_boundary(sol, 3, 0.0)


def test_interior_approaches_boundary(ex1a):
    sol = solve_problem(ex1a, 32)
    for i, inward in ((1, -1.0), (2, 1.0)):
        t = 0.9
        s = ex1a.curve(i).sample(t)
        x = s.x + inward * 1e-3 * s.nu
        for over in (1, 8):
            assert abs(eval_interior(sol, x, oversample=over) - eval_on_boundary(sol, i, t)) < 1e-2


@pytest.mark.parametrize("make,probes", [("example1a", EX1A_PROBES), ("example1b", EX1B_PROBES)])
def test_exponential_convergence(make, probes):
    import conftest

    problem = getattr(conftest, make)()
    exact = fundamental_solution(probes, Y_STAR, 1.0)
    errs = []
    for M in (4, 8, 16, 32):
        sol = solve_problem(problem, M)
        errs.append(np.max(np.abs(eval_interior(sol, probes, oversample=4) - exact)))
    assert all(b <= 2 * a for a, b in zip(errs, errs[1:]))
    assert errs[-1] < 1e-3 * errs[0]


def test_source_in_hole():
    problem = example1b(y_star=(0.0, 0.0))
    exact = fundamental_solution(EX1B_PROBES, (0.0, 0.0), 1.0)
    errs = []
    for M in (4, 8, 16, 32):
        sol = solve_problem(problem, M)
        errs.append(np.max(np.abs(eval_interior(sol, EX1B_PROBES, oversample=4) - exact)))
    assert errs[-1] < 1e-10
    assert errs[-1] < 1e-5 * errs[0]


def test_oversampling_helps_near_boundary(ex1b):
    sol = solve_problem(ex1b, 16)
    x = np.array([1.8, -0.3])
    exact = fundamental_solution(x, Y_STAR, 1.0)
    plain = abs(eval_interior(sol, x) - exact)
    fine = abs(eval_interior(sol, x, oversample=4) - exact)
    assert fine < 1e-2 * plain


def test_resample_density():
    t = np.arange(16) * (2 * np.pi / 16)
    f = 1.0 + np.cos(t) - 0.5 * np.sin(3 * t) + 0.25 * np.cos(8 * t)
    tf = np.arange(64) * (2 * np.pi / 64)
    g = resample_density(f, 64)
    # the Nyquist mode becomes its symmetric real interpolant cos(8t)
    np.testing.assert_allclose(g, 1.0 + np.cos(tf) - 0.5 * np.sin(3 * tf) + 0.25 * np.cos(8 * tf), atol=1e-14)
    np.testing.assert_array_equal(resample_density(f, 16), f)
    np.testing.assert_allclose(resample_density(f, 64)[::4], f, atol=1e-14)
    with pytest.raises(DomainError):
        resample_density(f, 8)
