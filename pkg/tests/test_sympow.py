import random
from fractions import Fraction
from math import comb

import pytest

from ksw.errors import CapExceeded, NotApplicable
from ksw.linalg import Matrix, same_span
from ksw.qspace import QuadraticSpace
from ksw.randgen import random_congruence_scramble, random_hk
from ksw.sympow import (
    block_max_level,
    build_sym,
    casimir_block_eigenvalue,
    decompose,
    harmonic,
    harmonic_dim,
    isotropic_span_check,
    level_two_part,
    power_vector,
    q_power_lift,
    sym_derivation,
    sym_dim,
)


def test_sym_dims():
    assert sym_dim(5, 3) == 35
    assert sym_dim(7, 3) == 84
    assert sym_dim(4, 0) == 1
    space = QuadraticSpace(Matrix.diagonal([1, -1, 2, 3, -5]))
    assert build_sym(space, 3).dim == 35
    assert build_sym(space, 0).dim == 1
    assert build_sym(space, 0).contraction.rows == 0


def test_harmonic_dimension_formula():
    space5 = QuadraticSpace(Matrix.diagonal([1, 1, -1, 2, -3]))
    assert len(harmonic(space5, 3)) == 35 - 5 == harmonic_dim(5, 3)
    space3 = QuadraticSpace(Matrix.diagonal([2, -1, 1]))
    assert len(harmonic(space3, 2)) == 6 - 1
    assert len(harmonic(space3, 1)) == 3  # all of Sym^1


def test_harmonic_vectors_are_in_contraction_kernel():
    rng = random.Random(61)
    gram = random_congruence_scramble(rng, Matrix.diagonal([1, 1, -1, -2]))
    space = QuadraticSpace(gram)
    sym = build_sym(space, 3)
    for v in harmonic(space, 3):
        assert all(x == 0 for x in sym.contraction.matvec(v))


def test_contraction_kills_isotropic_powers():
    # q(1,0,1) = 0 for diag(1, 1, -1): the cube of the vector is harmonic
    space = QuadraticSpace(Matrix.diagonal([1, 1, -1]))
    sym = build_sym(space, 3)
    power = power_vector(sym, (1, 0, 1))
    assert all(x == 0 for x in sym.contraction.matvec(power))
    assert any(power)


def test_contraction_surjective():
    # full row rank of the contraction on the whole h <= 7, k <= 5 grid;
    # the big cases go through the sound modular certificate
    from ksw.linalg import rank_at_least

    rng = random.Random(62)
    for h in range(2, 8):
        entries = [rng.choice((-3, -2, -1, 1, 2, 3)) for _ in range(h)]
        space = QuadraticSpace(Matrix.diagonal(entries))
        for k in range(2, 6):
            sym = build_sym(space, k)
            target = sym_dim(h, k - 2)
            if sym.dim <= 150:
                assert sym.contraction.rank() == target
            else:
                assert rank_at_least(sym.contraction, target)


def test_commutator_of_contraction_and_q_mult():
    # contraction(Q f) = (2h + 4 deg f) f + Q contraction(f) -- the identity
    # the Casimir eigenvalue formula rests on, checked on random elements
    rng = random.Random(63)
    gram = random_congruence_scramble(rng, Matrix.diagonal([2, -1, 3, 1]))
    space = QuadraticSpace(gram)
    h, k = 4, 3
    sym_k = build_sym(space, k)
    sym_k2 = build_sym(space, k + 2)
    for _ in range(5):
        f = tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(sym_k.dim))
        lhs = sym_k2.contraction.matvec(sym_k2.q_mult.matvec(f))
        scale = 2 * h + 4 * k
        rhs = tuple(
            scale * a + b
            for a, b in zip(f, sym_k.q_mult.matvec(sym_k.contraction.matvec(f)))
        )
        assert lhs == rhs


def test_casimir_eigenvalue_on_blocks():
    rng = random.Random(64)
    space = QuadraticSpace(random_congruence_scramble(rng, Matrix.diagonal([1, 2, -1, -3])))
    k = 4
    sym = build_sym(space, k)
    casimir = sym.q_mult * sym.contraction
    for l in range(k // 2 + 1):
        expected = casimir_block_eigenvalue(space.h, k, l)
        lift = q_power_lift(space, k - 2 * l, l)
        for u in harmonic(space, k - 2 * l):
            v = lift.matvec(u)
            assert casimir.matvec(v) == tuple(expected * x for x in v)


def test_decompose_k2():
    space = QuadraticSpace(Matrix.diagonal([1, 1, -1, 2]))
    dec = decompose(space, 2)
    assert dec.block_dims == [(0, sym_dim(4, 2) - 1), (1, 1)]
    assert dec.total == sym_dim(4, 2)


def test_decompose_sums_and_certificates():
    rng = random.Random(65)
    cases = {(5, 3): [30, 5], (4, 4): [25, 9, 1]}
    for (h, k), dims in cases.items():
        entries = [rng.choice((-2, -1, 1, 2, 3)) for _ in range(h)]
        space = QuadraticSpace(random_congruence_scramble(rng, Matrix.diagonal(entries)))
        dec = decompose(space, k)
        assert [d for _, d in dec.block_dims] == dims
        assert dec.total == sym_dim(h, k)
        assert dec.certificate


def test_decompose_blocks_pairwise_independent():
    space = QuadraticSpace(Matrix.diagonal([1, -1, 2]))
    dec = decompose(space, 4)
    blocks = dec.blocks
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            vi = [list(v) for v in blocks[i][1]]
            vj = [list(v) for v in blocks[j][1]]
            assert Matrix(vi + vj).rank() == len(vi) + len(vj)


def test_harmonic_invariant_under_equal_norm_permutation():
    # swapping two diagonal basis vectors of equal norm is q-orthogonal and
    # must permute the harmonic space into itself
    space = QuadraticSpace(Matrix.diagonal([2, 2, -1, 2]))
    sym = build_sym(space, 3)
    harm = harmonic(space, 3)
    for a, b in [(0, 1), (1, 3)]:
        perm = list(range(4))
        perm[a], perm[b] = perm[b], perm[a]
        permuted = []
        for v in harm:
            out = [Fraction(0)] * sym.dim
            for pos, mu in enumerate(sym.basis):
                nu = [0] * 4
                for idx, mult in enumerate(mu):
                    nu[perm[idx]] += mult
                out[sym.index[tuple(nu)]] = Fraction(v[pos])
            permuted.append(tuple(out))
        assert same_span(harm, permuted)


def test_isotropic_span_hyperbolic_plus_negative():
    gram = Matrix([[0, 1, 0], [1, 0, 0], [0, 0, -1]])
    assert isotropic_span_check(QuadraticSpace(gram), 2) is True


def test_isotropic_span_definite_not_applicable():
    with pytest.raises(NotApplicable):
        isotropic_span_check(QuadraticSpace(Matrix.identity(3)), 2)


def test_isotropic_span_indefinite_anisotropic_not_applicable():
    # x^2 = 2 y^2 has no rational solutions: indefinite but anisotropic
    with pytest.raises(NotApplicable):
        isotropic_span_check(QuadraticSpace(Matrix.diagonal([1, -2])), 2, max_height=6)


def test_isotropic_span_signature_33():
    space = QuadraticSpace(Matrix.diagonal([1, 1, 1, -1, -1, -1]))
    assert isotropic_span_check(space, 3) is True


def test_level_two_part_identity_case():
    rng = random.Random(66)
    hk = random_hk(rng, 4)
    part = level_two_part(hk, 1)
    assert len(part) == 4
    assert same_span(part, [tuple(1 if i == j else 0 for i in range(4)) for j in range(4)])


def test_level_two_part_matches_q_image():
    rng = random.Random(67)
    for h, k in [(5, 3), (4, 5)]:
        hk = random_hk(rng, h)
        part = level_two_part(hk, k)
        assert len(part) == h
        lift = q_power_lift(hk.space, 1, (k - 1) // 2)
        image = [lift.column(j) for j in range(h)]
        assert same_span(part, image)


def test_level_two_part_rejects_even_k():
    rng = random.Random(68)
    hk = random_hk(rng, 4)
    with pytest.raises(ValueError):
        level_two_part(hk, 2)


def test_block_max_level():
    rng = random.Random(69)
    hk = random_hk(rng, 4)
    assert block_max_level(hk, 3) == [(0, 6), (1, 2)]
    hk5 = random_hk(rng, 5)
    assert block_max_level(hk5, 3) == [(0, 6), (1, 2)]


def test_sym_derivation_against_polynomial_oracle():
    # derivation on monomials: D(y^mu) = sum_i mu_i (A y_i) y^(mu - e_i)
    # expanded with a tiny independent polynomial model
    rng = random.Random(70)
    space = QuadraticSpace(Matrix.diagonal([1, -1, 2]))
    sym = build_sym(space, 2)
    a = Matrix([[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)])
    d = sym_derivation(sym, a)

    def poly_mul_var(poly, i):
        out = {}
        for mu, c in poly.items():
            nu = list(mu)
            nu[i] += 1
            out[tuple(nu)] = out.get(tuple(nu), Fraction(0)) + c
        return out

    for pos, mu in enumerate(sym.basis):
        expected: dict = {}
        for i in range(3):
            if not mu[i]:
                continue
            lowered = list(mu)
            lowered[i] -= 1
            for j in range(3):
                if a[j, i]:
                    term = poly_mul_var({tuple(lowered): Fraction(mu[i]) * a[j, i]}, j)
                    for key, c in term.items():
                        expected[key] = expected.get(key, Fraction(0)) + c
        col = d.column(pos)
        for key, c in expected.items():
            assert col[sym.index[key]] == c
        assert sum(1 for x in col if x) == sum(1 for c in expected.values() if c)


def test_power_vector_multinomial():
    space = QuadraticSpace(Matrix.diagonal([1, 1]))
    sym = build_sym(space, 3)
    v = power_vector(sym, (1, 2))
    # (y1 + 2 y2)^3 = y1^3 + 6 y1^2 y2 + 12 y1 y2^2 + 8 y2^3
    coeffs = {mu: c for mu, c in zip(sym.basis, v)}
    assert coeffs[(3, 0)] == 1
    assert coeffs[(2, 1)] == 6
    assert coeffs[(1, 2)] == 12
    assert coeffs[(0, 3)] == 8


def test_caps_and_allow_large():
    space8 = QuadraticSpace(Matrix.diagonal([1] * 8))
    with pytest.raises(CapExceeded):
        build_sym(space8, 2)
    sym = build_sym(space8, 2, allow_large=True)
    assert sym.dim == comb(9, 2)
