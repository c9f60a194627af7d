"""Grid sampling, finite-difference residuals, numeric transformation."""

import numpy as np
import pytest

from recipgas.gasdyn import standard_context
from recipgas.numerics import (ConstantFlow, DomainViolation, GridSpec,
                               GridTooSmall, InvalidParams, ShearFlow,
                               VortexFlow, fd_residuals, loop_closedness,
                               make_solution, primed_coordinates,
                               transform_convergence_ratios,
                               transform_roundtrip_error, transform_solution,
                               unit_square_loop)
from recipgas.symkernel import parse
from recipgas.transforms import (bateman, bateman_simplified, identity_map,
                                 reciprocal_map)


@pytest.fixture(scope="module")
def ctx():
    return standard_context()


@pytest.fixture(scope="module")
def shear_solution():
    return make_solution(ShearFlow.example(), GridSpec(0, 0, 1 / 16,
                                                       1 / 16, 17, 17))


def test_constant_solution_residuals():
    sol = make_solution(ConstantFlow(), GridSpec(0, 0, 0.05, 0.05, 21, 21))
    assert max(fd_residuals(sol).values()) < 1e-12


def test_shear_solution_residuals(shear_solution):
    # the shear profile is stencil-exact: x-differences vanish node-wise
    # and v = 0 kills every remaining term
    assert max(fd_residuals(shear_solution).values()) < 1e-12


def test_vortex_second_order():
    vx = VortexFlow(w0=1, m=2)
    g = GridSpec(0.5, 0.3, 1 / 20, 1 / 20, 17, 17)
    r1 = fd_residuals(make_solution(vx, g))
    r2 = fd_residuals(make_solution(vx, g.refined()))
    for k in r1:
        if r1[k] > 1e-13:
            assert 3.5 <= r1[k] / r2[k] <= 4.5


def test_rigid_vortex_is_stencil_exact():
    sol = make_solution(VortexFlow(w0=1, m=1),
                        GridSpec(0.5, 0.3, 0.05, 0.05, 13, 13))
    assert max(fd_residuals(sol).values()) < 1e-12


def test_grid_guards():
    with pytest.raises(GridTooSmall):
        fd_residuals(make_solution(ConstantFlow(),
                                   GridSpec(0, 0, 0.1, 0.1, 2, 3)))
    with pytest.raises(InvalidParams):
        make_solution(VortexFlow(), GridSpec(-0.5, -0.5, 0.25, 0.25, 5, 5))
    with pytest.raises(InvalidParams):
        make_solution(ConstantFlow(rho0=-1.0),
                      GridSpec(0, 0, 0.1, 0.1, 4, 4))


def test_perturbed_solution_fails():
    sol = make_solution(ShearFlow.example(),
                        GridSpec(0, 0, 1 / 16, 1 / 16, 17, 17))
    rng = np.random.default_rng(12345)
    sol.p = sol.p + 0.01 * rng.standard_normal(sol.p.shape)
    assert max(fd_residuals(sol).values()) > 1e-2


def test_constant_under_simplified_map(ctx):
    T = bateman_simplified(ctx, 1, 0, entropy="identity")
    grid = GridSpec(0, 0, 0.05, 0.05, 21, 21)
    sol = make_solution(ConstantFlow(u0=1, v0=0, rho0=1, p0=1), grid)
    out = transform_solution(sol, T, margin_cells=0)
    assert abs(out.u[4, 9] - 1.0) < 1e-12
    assert abs(out.v[4, 9]) < 1e-12
    assert abs(out.p[4, 9] + 1.0) < 1e-12
    assert abs(out.rho[4, 9] - 0.5) < 1e-12
    xp, yp = primed_coordinates(sol, T)
    xs, ys = grid.xs(), grid.ys()
    assert np.max(np.abs(xp - xs[:, None])) < 1e-12
    assert np.max(np.abs(yp - 2 * ys[None, :])) < 1e-12


def test_identity_transform_is_bit_identical(shear_solution, ctx):
    out = transform_solution(shear_solution, identity_map(ctx),
                             margin_cells=0)
    for a, b in zip(out.arrays(), shear_solution.arrays()):
        assert np.array_equal(a, b)


def test_shear_coordinate_maps(ctx, shear_solution):
    # x' = p0 x; y' integrates p0 + rho(y) u(y)^2
    T = bateman(ctx, 1, 0, 1, 0, entropy="identity")
    xp, yp = primed_coordinates(shear_solution, T)
    xs = shear_solution.grid.xs()
    assert np.max(np.abs(xp - xs[:, None])) < 1e-12

    def exact_yprime(y):
        # integral of 1 + (1 + s^2/2)(1 + s^2)^2 from 0 to y
        return (2 * y + y ** 3 * 5 / 6 + y ** 5 * 2 / 5 + y ** 7 / 14)

    ys = shear_solution.grid.ys()
    want = np.array([exact_yprime(y) for y in ys])
    assert np.max(np.abs(yp - want[None, :])) < 1e-8


def test_path_independence(ctx, shear_solution):
    T = bateman(ctx, 1, 0, 1, 0, entropy="identity")
    xp1, yp1 = primed_coordinates(shear_solution, T, path="xy")
    xp2, yp2 = primed_coordinates(shear_solution, T, path="yx")
    assert np.max(np.abs(xp1 - xp2)) < 1e-8
    assert np.max(np.abs(yp1 - yp2)) < 1e-8


def test_transformed_shear_is_stencil_exact(ctx, shear_solution):
    T = bateman(ctx, 1, 0, 1, 0, entropy="identity")
    out = transform_solution(shear_solution, T)
    assert max(fd_residuals(out).values()) < 1e-12


def test_vortex_transform_second_order(ctx):
    T = bateman(ctx, 1, 0, 1, 0, entropy="identity")
    ratios = transform_convergence_ratios(
        VortexFlow(w0=1, m=1), T, GridSpec(0.5, 0.3, 1 / 24, 1 / 24, 13, 13))
    for k, v in ratios.items():
        assert v is not None and 3.5 <= v <= 4.5, (k, v)


def test_domain_violation(ctx):
    # p + b2 vanishes on the grid for b2 = -1 at p = 1
    T = bateman(ctx, 1, -1, 1, 0, entropy="identity")
    sol = make_solution(ConstantFlow(p0=1.0),
                        GridSpec(0, 0, 0.1, 0.1, 5, 5))
    with pytest.raises(DomainViolation):
        transform_solution(sol, T)


def test_loop_closedness(ctx, shear_solution):
    T = bateman(ctx, 1, 0, 1, 0, entropy="identity")
    assert loop_closedness(shear_solution, T, unit_square_loop()) < 1e-8
    const = make_solution(ConstantFlow(), GridSpec(0, 0, 0.1, 0.1, 11, 11))
    assert loop_closedness(const, T, unit_square_loop()) < 1e-12
    f = ((T.f[0][0] + parse(ctx, "rho"), T.f[0][1]),
         (T.f[1][0], T.f[1][1]))
    broken = reciprocal_map(ctx, T.R, T.U, T.V, T.P, T.H, f, name="broken")
    assert loop_closedness(shear_solution, broken,
                           unit_square_loop()) > 1e-3


def test_loop_must_be_closed(ctx, shear_solution):
    T = bateman(ctx, 1, 0, 1, 0, entropy="identity")
    with pytest.raises(DomainViolation):
        loop_closedness(shear_solution, T, [(0, 0), (1, 0), (1, 1)])


def test_roundtrip_recovers_fields(ctx):
    T = bateman(ctx, 1, 0, 1, 0, entropy="identity")
    sol = make_solution(ShearFlow.example(),
                        GridSpec(0, 0, 1 / 8, 1 / 8, 9, 9))
    assert transform_roundtrip_error(sol, T) < 1e-8
