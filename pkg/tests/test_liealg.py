"""Generators, commutators, structure constants, automorphism machinery."""

import json
import random

import pytest

from recipgas.gasdyn import standard_context
from recipgas.liealg import (AutomorphismMatrix, FunctionalConstant,
                             LieAlgebra, NotClosed, SingularMatrix,
                             automorphism_constraints, commutator,
                             commutator_table_text, generator,
                             generator_from_dict, jacobi_residuals,
                             membership, reciprocal_algebra, standard_basis,
                             verify_automorphism_solution, x_f, x_h,
                             zero_generator)
from recipgas.symkernel import Expr, parse
from recipgas.symkernel.poly import QQ


@pytest.fixture(scope="module")
def ctx():
    return standard_context()


@pytest.fixture(scope="module")
def basis(ctx):
    return standard_basis(ctx)


def test_bracket_table_entries(ctx, basis):
    x1, x2, x3, x4, x5 = basis
    assert commutator(x3, x4) == x3.scale(-1)
    assert commutator(x3, x5) == x4.scale(-1)
    assert commutator(x4, x5) == x5.scale(-1)
    assert commutator(x1, x1).is_zero()
    for a in basis[:2]:
        for b in basis:
            assert commutator(a, b).is_zero()


def test_bracket_functional_families(ctx, basis):
    Xh, XF = x_h(ctx), x_f(ctx)
    for b in basis:
        assert commutator(b, Xh).is_zero()
        assert commutator(b, XF).is_zero()
    br = commutator(Xh, XF)
    hpF = Expr.function(ctx, "h", parse(ctx, "S"), orders=(1,)) * \
        Expr.function(ctx, "F", parse(ctx, "S"))
    assert br == x_h(ctx, hpF).scale(-1)


def test_structure_constants_lrt(ctx):
    L = reciprocal_algebra(ctx)
    ct = L.constant_table()
    nonzero = {k: v for k, v in ct.items() if k[0] < k[1]}
    assert nonzero == {(2, 3, 2): QQ(-1), (2, 4, 3): QQ(-1),
                       (3, 4, 4): QQ(-1)}
    hf = L.structure_constants()[(5, 6)]
    assert isinstance(hf, FunctionalConstant) and hf.coeff == -1


def test_structure_constants_center_pair(ctx, basis):
    assert LieAlgebra(basis[:2]).constant_table() == {}


def test_not_closed(ctx, basis):
    rdr = generator(ctx, zr=parse(ctx, "rho"), label="rho*d_rho")
    with pytest.raises(NotClosed) as ei:
        LieAlgebra([basis[2], rdr]).structure_constants()
    assert not ei.value.residual.is_zero()


def test_derived_series(ctx):
    L = reciprocal_algebra(ctx)
    Lp = L.derived_algebra()
    assert [g.label for g in Lp.basis] == ["X3", "X4", "X5", "Xh"]
    Lpp = Lp.derived_algebra()
    assert [g.label for g in Lpp.basis] == ["X3", "X4", "X5"]
    # monotone: derived of derived is contained in derived
    for g in Lpp.basis:
        assert membership(g, Lp.basis) is not None


def test_derived_of_abelian_is_zero(ctx, basis):
    assert LieAlgebra(basis[:2]).derived_algebra().dim() == 0


def test_center(ctx, basis):
    L = reciprocal_algebra(ctx)
    Z = L.center()
    assert Z.dim() == 2
    assert membership(basis[0], Z.basis) is not None
    assert membership(basis[1], Z.basis) is not None
    for g in Z.basis:
        for b in L.basis:
            assert commutator(g, b).is_zero()
    # the 3-dimensional megaideal is centerless; an abelian pair is all
    # center
    assert LieAlgebra(basis[2:5]).center().dim() == 0
    assert LieAlgebra(basis[:2]).center().dim() == 2


def test_jacobi_property(ctx):
    L = reciprocal_algebra(ctx)
    for _, val in jacobi_residuals(L.constant_table(), 7):
        assert val == 0


def test_automorphism_constraints_nine(ctx):
    L = reciprocal_algebra(ctx)
    table = L.derived_algebra().derived_algebra().constant_table()
    cons = automorphism_constraints(ctx, table)
    assert len(cons) == 9
    texts = {str(c) for c in cons}
    assert "a33*a44-a34*a43-a33" in texts


def test_automorphism_constraints_abelian_empty(ctx):
    assert automorphism_constraints(ctx, {}) == []


def test_identity_always_satisfies(ctx):
    rng = random.Random(5)
    one, zero = Expr.const(ctx, 1), Expr.const(ctx, 0)
    ident = AutomorphismMatrix(((one, zero, zero), (zero, one, zero),
                                (zero, zero, one)))
    for _ in range(5):
        table = {}
        for (i, j, k) in [(0, 1, 0), (0, 1, 2), (0, 2, 1), (1, 2, 2)]:
            table[(i, j, k)] = QQ(rng.randint(-2, 2))
        cons = automorphism_constraints(ctx, table)
        rep = verify_automorphism_solution(ident, cons)
        assert rep.satisfied


def test_generic_matrix_fails(ctx):
    L = reciprocal_algebra(ctx)
    cons = automorphism_constraints(
        ctx, L.derived_algebra().derived_algebra().constant_table())
    c = lambda q: Expr.const(ctx, q)
    A = AutomorphismMatrix((
        (c(QQ(2, 3)), c(QQ(1, 5)), c(QQ(-1, 2))),
        (c(QQ(1, 7)), c(QQ(3, 2)), c(QQ(1, 3))),
        (c(QQ(-2, 5)), c(QQ(1, 2)), c(QQ(4, 3)))))
    rep = verify_automorphism_solution(A, cons)
    assert not rep.satisfied


def test_singular_matrix_raises(ctx):
    L = reciprocal_algebra(ctx)
    cons = automorphism_constraints(
        ctx, L.derived_algebra().derived_algebra().constant_table())
    one, zero = Expr.const(ctx, 1), Expr.const(ctx, 0)
    A = AutomorphismMatrix(((one, zero, zero), (one, zero, zero),
                            (zero, zero, one)))
    with pytest.raises(SingularMatrix):
        verify_automorphism_solution(A, cons)


def test_generator_json_round_trip(ctx, basis, tmp_path):
    x3 = basis[2]
    d = x3.to_dict()
    assert set(d) == {"zeta_rho", "zeta_u", "zeta_v", "zeta_p", "zeta_S",
                      "form"}
    path = tmp_path / "x3.json"
    path.write_text(json.dumps(d))
    back = generator_from_dict(ctx, json.loads(path.read_text()),
                               label="X3")
    assert back == x3


def test_zero_generator_and_arithmetic(ctx, basis):
    z = zero_generator(ctx)
    assert z.is_zero()
    g = basis[3] + basis[4].scale(QQ(2)) - basis[3]
    assert g == basis[4].scale(2)


def test_commutator_rejects_mixed_contexts(ctx):
    from recipgas.symkernel.errors import VariableMismatch
    other = standard_context()
    with pytest.raises(VariableMismatch):
        commutator(standard_basis(ctx)[2], standard_basis(other)[3])


def test_commutator_table_text(ctx):
    text = commutator_table_text(reciprocal_algebra(ctx))
    lines = text.splitlines()
    assert lines[0].split() == ["X1", "X2", "X3", "X4", "X5", "Xh", "XF"]
    assert "-X3" in text and "-X4" in text and "-X5" in text
    assert "X[" in text  # the functional entry
