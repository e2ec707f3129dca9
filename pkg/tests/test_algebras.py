import math

import numpy as np
import pytest

from azumaya.algebras import (
    AlgebraError,
    NotNilpotentWithinCap,
    base_change,
    center,
    center_bruteforce,
    commutant,
    env_map,
    env_map_bijective,
    expand_ideal,
    has_constant_rank,
    ideal_intersection_check,
    is_azumaya,
    is_central,
    jordan_cell,
    matrix_algebra,
    nilpotency_index,
    opposite,
    quotient_algebra,
    rank_at,
    square_rank_check,
    tensor_product,
    upper_triangular_algebra,
    weyl_quotient,
)
from azumaya.rings import GaloisField, MaxIdeal, ProductRing, RingIdeal, ZMod


# ---------------------------------------------------------------------------
# construction


def test_matrix_algebra_products():
    A = matrix_algebra(ZMod(5), 2)
    E11, E12, E21 = A.basis_flat(0), A.basis_flat(1), A.basis_flat(2)
    assert A.mul_flat(E11, E12).tolist() == E12.tolist()
    assert A.mul_flat(E12, E11).tolist() == [0, 0, 0, 0]
    assert A.mul_flat(E12, E21).tolist() == E11.tolist()


def test_matrix_algebra_rejects_n0():
    with pytest.raises(AlgebraError):
        matrix_algebra(ZMod(2), 0)


def test_associativity_checked_at_construction():
    from azumaya.algebras import Algebra

    R = ZMod(2)
    zero, one = R.zero(), R.one()
    # e1*e1 = e2, e2*anything = e1: not associative
    table = [[[zero, one], [one, zero]], [[one, zero], [one, zero]]]
    with pytest.raises(AlgebraError):
        Algebra(R, table, [one, zero])


def test_weyl_relations():
    W = weyl_quotient(2, 0, 0)
    x = W.basis_flat(2)  # x^1 y^0 at index 1*2+0
    y = W.basis_flat(1)  # x^0 y^1
    xy = W.mul_flat(x, y)
    yx = W.mul_flat(y, x)
    one = W.unit_flat
    # yx = xy + 1
    assert ((yx - xy) % 2).tolist() == one.tolist()
    # x^2 = a = 0
    assert W.mul_flat(x, x).tolist() == [0, 0, 0, 0]


def test_weyl_powers_fold_to_scalars():
    W = weyl_quotient(3, 1, 2)
    x = W.basis_flat(3)
    y = W.basis_flat(1)
    x3 = W.mul_flat(W.mul_flat(x, x), x)
    y3 = W.mul_flat(W.mul_flat(y, y), y)
    assert x3.tolist() == (1 * W.unit_flat % 3).tolist()
    assert y3.tolist() == (2 * W.unit_flat % 3).tolist()


def test_weyl_commutation_closed_form():
    # oracle: y^b x^c = sum_k k! C(b,k) C(c,k) x^(c-k) y^(b-k)
    p = 5
    W = weyl_quotient(p, 0, 0)
    for b, c in [(1, 1), (2, 1), (2, 2), (3, 2), (4, 4)]:
        yb = W.basis_flat(b)  # x^0 y^b
        xc = W.basis_flat(c * p)  # x^c y^0
        got = W.mul_flat(yb, xc)
        expect = np.zeros(W.dim, dtype=np.int64)
        for k in range(min(b, c) + 1):
            coef = math.factorial(k) * math.comb(b, k) * math.comb(c, k)
            expect[(c - k) * p + (b - k)] += coef
        assert got.tolist() == (expect % p).tolist()


def test_opposite_reverses_products():
    A = matrix_algebra(ZMod(3), 2)
    Aop = opposite(A)
    x, y = A.basis_flat(1), A.basis_flat(2)
    assert Aop.mul_flat(x, y).tolist() == A.mul_flat(y, x).tolist()


def test_tensor_product_rank_and_unit():
    A = matrix_algebra(ZMod(2), 2)
    T = tensor_product(A, A)
    assert T.rank == 16
    assert T.mul_flat(T.unit_flat, T.basis_flat(5)).tolist() == T.basis_flat(5).tolist()


def test_tensor_product_componentwise():
    A = matrix_algebra(ZMod(3), 2)
    T = tensor_product(A, A)
    # (e_i (x) f_j)(e_k (x) f_l) = e_i e_k (x) f_j f_l on a sample
    x = T.basis_flat(0 * 4 + 1)  # E11 (x) E12
    y = T.basis_flat(0 * 4 + 2)  # E11 (x) E21
    got = T.mul_flat(x, y)
    assert got.tolist() == T.basis_flat(0 * 4 + 0).tolist()  # E11 (x) E11


def test_base_change_preserves_relations():
    from azumaya.rings import BaseRingHom

    A = matrix_algebra(ZMod(4), 2)
    proj = BaseRingHom(ZMod(4), ZMod(2), [[1]])
    B = base_change(A, proj)
    assert B.base.size == 2
    x, y = B.basis_flat(1), B.basis_flat(2)
    assert B.mul_flat(x, y).tolist() == B.basis_flat(0).tolist()


# ---------------------------------------------------------------------------
# centers and commutants


@pytest.mark.parametrize(
    "algebra",
    [
        matrix_algebra(ZMod(2), 2),
        matrix_algebra(ZMod(4), 2),
        matrix_algebra(ZMod(3), 2),
        weyl_quotient(2, 0, 0),
        weyl_quotient(2, 1, 1),
        upper_triangular_algebra(ZMod(2), 2),
        matrix_algebra(GaloisField.default(2, 2), 2),
    ],
)
def test_center_matches_bruteforce(algebra):
    if algebra.size > 5000:
        pytest.skip("oracle scan too large")
    zc = center(algebra)
    brute = center_bruteforce(algebra)
    assert zc.order == len(brute)
    for e in brute:
        assert zc.contains(e)


def test_center_bruteforce_gf4_case():
    A = matrix_algebra(GaloisField.default(2, 2), 2)
    zc = center(A)
    assert zc.order == 4  # GF(4)*1
    assert is_central(A)


def test_center_of_matrix_algebra_is_scalars():
    A = matrix_algebra(ZMod(12), 2)
    assert center(A).group == A.unit_span()


def test_upper_triangular_central_but_env_degenerate():
    # the center is just the scalars, yet the algebra is far from Azumaya:
    # the strictly upper-triangular part is a proper two-sided ideal, which
    # the enveloping-map test detects
    A = upper_triangular_algebra(ZMod(2), 2)
    assert is_central(A)
    assert not env_map_bijective(A)


def test_commutant_of_whole_algebra_is_center():
    A = matrix_algebra(ZMod(4), 2)
    gens = [A.element(A.basis_flat(i)) for i in range(4)]
    C = commutant(A, gens)
    assert C.group == center(A).group


def test_commutant_of_scalars_is_everything():
    A = matrix_algebra(ZMod(3), 2)
    C = commutant(A, [A.one()])
    assert C.order == A.size


# ---------------------------------------------------------------------------
# enveloping map


def test_env_map_bijective_cases():
    assert env_map_bijective(matrix_algebra(ZMod(2), 2))
    assert env_map_bijective(matrix_algebra(ZMod(4), 2))
    assert env_map_bijective(weyl_quotient(3, 1, 2))


def test_env_map_not_bijective_for_split_quadratic():
    from azumaya.algebras import Algebra

    R = ZMod(2)
    zero, one = R.zero(), R.one()
    table = [[[one, zero], [zero, zero]], [[zero, zero], [zero, one]]]
    A = Algebra(R, table, [one, one])
    assert not env_map_bijective(A)


def test_env_map_ring_matrix_agrees_with_flat():
    from azumaya.algebras import env_map_flat

    A = matrix_algebra(ZMod(3), 2)
    M = env_map(A)
    F, _, _ = env_map_flat(A)
    assert M.flattened().tolist() == F.tolist()


# ---------------------------------------------------------------------------
# Azumaya decision


def test_is_azumaya_matrix_algebras():
    assert is_azumaya(matrix_algebra(ZMod(12), 2)).status == "pass"
    assert is_azumaya(matrix_algebra(ZMod(8), 3)).status == "pass"


def test_is_azumaya_weyl():
    assert is_azumaya(weyl_quotient(3, 1, 2)).status == "pass"


def test_is_azumaya_counterexample_with_witness():
    rep = is_azumaya(upper_triangular_algebra(ZMod(2), 2))
    assert rep.status == "fail"
    assert rep.witness is not None


def test_is_azumaya_product_base():
    R = ProductRing([ZMod(2), ZMod(3)])
    assert is_azumaya(matrix_algebra(R, 2)).status == "pass"


# ---------------------------------------------------------------------------
# rank


def test_rank_at_and_constant_rank():
    A = matrix_algebra(ZMod(12), 2)
    assert rank_at(A, MaxIdeal(ZMod(12), 2)) == 4
    const, r = has_constant_rank(A)
    assert const and r == 4


def test_square_rank_check():
    assert square_rank_check(matrix_algebra(ZMod(6), 2)).status == "pass"
    assert square_rank_check(weyl_quotient(2, 1, 1)).status == "pass"


# ---------------------------------------------------------------------------
# ideals in algebras


def test_expand_ideal_order():
    A = matrix_algebra(ZMod(4), 2)
    sub = expand_ideal(A, RingIdeal(ZMod(4), 2))
    assert sub.order == 16  # (2)M_2 has 2^4 elements


def test_quotient_algebra():
    A = matrix_algebra(ZMod(4), 2)
    Q, proj = quotient_algebra(A, RingIdeal(ZMod(4), 2))
    assert Q.base.size == 2
    assert Q.rank == 4


def test_ideal_intersection_check():
    A = matrix_algebra(ZMod(12), 2)
    rep = ideal_intersection_check(A, [RingIdeal(ZMod(12), 2), RingIdeal(ZMod(12), 3)])
    assert rep.status == "pass"


@pytest.mark.parametrize("d1,d2", [(2, 4), (3, 6), (4, 6), (2, 3)])
def test_ideal_intersection_random_families(d1, d2):
    A = matrix_algebra(ZMod(12), 2)
    rep = ideal_intersection_check(A, [RingIdeal(ZMod(12), d1), RingIdeal(ZMod(12), d2)])
    assert rep.status == "pass"


# ---------------------------------------------------------------------------
# nilpotency and Jordan cells


def test_jordan_cell_shape():
    a = jordan_cell(ZMod(2), 2)
    # sends e_2 to e_1: entry (1, 2) = 1 in 1-based terms
    assert a.flat.tolist() == [0, 1, 0, 0]


def test_jordan_cell_n1_is_zero():
    assert jordan_cell(ZMod(3), 1).is_zero()


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_jordan_cell_nilpotency_index(p, n):
    assert nilpotency_index(jordan_cell(ZMod(p), n), cap=n + 1) == n


def test_nilpotency_cap_raises():
    A = matrix_algebra(ZMod(5), 2)
    with pytest.raises(NotNilpotentWithinCap):
        nilpotency_index(A.one(), cap=4)
