import numpy as np
import pytest

from azumaya.algebras import matrix_algebra, weyl_quotient
from azumaya.corpus import build_corpus
from azumaya.homs import (
    ComposabilityMismatch,
    DimensionMismatch,
    NotInvertible,
    PreconditionUnmet,
    base_change_hom,
    center_preservation_check,
    compose,
    conjugation_auto,
    counterexample_search,
    diagonal_embed,
    endo_auto_check,
    identity_hom,
    isomorphism_check,
    jordan_obstruction_probe,
    kernel_ideal,
    rank_comparison_check,
    reduction_hom,
    tensor_commutant_map,
    verify_hom,
    weyl_splitting,
)
from azumaya.rings import GaloisField, RingIdeal, ZMod, crt_decompose


@pytest.fixture(scope="module")
def corpus():
    return build_corpus()


# ---------------------------------------------------------------------------
# verification


def test_identity_verified():
    A = matrix_algebra(ZMod(3), 2)
    assert identity_hom(A).status == "verified"


def test_unit_killing_map_refuted():
    A = matrix_algebra(ZMod(3), 2)
    h = verify_hom(np.zeros((A.dim, A.dim), dtype=np.int64), A, A)
    assert h.status == "refuted"
    assert h.refutation["condition"] == "unit"


def test_transpose_refuted_anti_multiplicative():
    A = matrix_algebra(ZMod(3), 2)
    T = np.zeros((4, 4), dtype=np.int64)
    for i in range(2):
        for j in range(2):
            T[j * 2 + i, i * 2 + j] = 1
    h = verify_hom(T, A, A)
    assert h.status == "refuted"
    assert h.refutation["condition"] == "multiplicative"


def test_dimension_mismatch():
    A = matrix_algebra(ZMod(2), 2)
    B = matrix_algebra(ZMod(2), 3)
    with pytest.raises(DimensionMismatch):
        verify_hom(np.zeros((3, 3), dtype=np.int64), A, B)


def test_ill_formed_base_change_refuted():
    # identity matrix Z/2 coords -> Z/4 coords is not well-defined
    A = matrix_algebra(ZMod(2), 2)
    B = matrix_algebra(ZMod(4), 2)
    h = verify_hom(np.eye(4, dtype=np.int64), A, B)
    assert h.status == "refuted"
    assert h.refutation["condition"] == "well-defined"


# ---------------------------------------------------------------------------
# constructors


def test_conjugation_swaps_diagonal():
    A = matrix_algebra(ZMod(3), 2)
    u = A.element([0, 1, 1, 0])  # E_12 + E_21
    h = conjugation_auto(A, u)
    diag = A.element([1, 0, 0, 2])
    assert h.apply(diag).flat.tolist() == [2, 0, 0, 1]


def test_conjugation_requires_unit():
    A = matrix_algebra(ZMod(2), 2)
    with pytest.raises(NotInvertible):
        conjugation_auto(A, A.element([1, 0, 0, 0]))  # E_11 is not invertible


def test_reduction_kernel_is_expanded_ideal():
    A = matrix_algebra(ZMod(4), 2)
    h = reduction_hom(A, RingIdeal(ZMod(4), 2))
    ideal, rep = kernel_ideal(h)
    assert ideal.data == 2
    assert rep.status == "pass"


def test_reduction_by_zero_is_isomorphism():
    A = matrix_algebra(ZMod(4), 2)
    h = reduction_hom(A, RingIdeal(ZMod(4), 4))  # zero ideal
    assert h.is_bijective()


def test_kernel_of_automorphism_is_zero():
    A = matrix_algebra(ZMod(4), 2)
    h = conjugation_auto(A, A.element([1, 1, 0, 1]))
    ideal, rep = kernel_ideal(h)
    assert ideal.is_zero
    assert rep.status == "pass"


def test_diagonal_embed_scalars():
    h = diagonal_embed(ZMod(3), 1, 2)
    img = h.apply_flat(np.asarray([2]))
    assert img.tolist() == [2, 0, 0, 2]


def test_compose_mismatch():
    A = matrix_algebra(ZMod(2), 2)
    B = matrix_algebra(ZMod(2), 3)
    with pytest.raises(ComposabilityMismatch):
        compose(identity_hom(B), identity_hom(A))


def test_crt_composition_consistency():
    # reducing the CRT image at the Z/4 factor equals reducing mod 4 directly
    R = ZMod(12)
    A = matrix_algebra(R, 2)
    product, fwd, _ = crt_decompose(R)
    h = base_change_hom(A, fwd)
    assert h.is_bijective()


@pytest.mark.parametrize("p", [2, 3])
def test_weyl_splitting_all_parameters(p):
    for a in range(p):
        for b in range(p):
            h = weyl_splitting(p, a, b)
            assert h.status == "verified"
            assert h.is_bijective()


def test_weyl_splitting_images_satisfy_relations():
    h = weyl_splitting(3, 1, 2)
    W, M = h.source, h.target
    x = h.apply_flat(W.basis_flat(3))  # image of x
    y = h.apply_flat(W.basis_flat(1))  # image of y
    lhs = M.mul_flat(y, x)
    rhs = (M.mul_flat(x, y) + M.unit_flat) % 3
    assert lhs.tolist() == rhs.tolist()


# ---------------------------------------------------------------------------
# theorem checks


def test_center_preservation_conjugation():
    A = matrix_algebra(ZMod(6), 2)
    h = conjugation_auto(A, A.element([1, 1, 0, 1]))
    rep, cmap = center_preservation_check(h)
    assert rep.status == "pass"
    assert cmap is not None and cmap.is_bijective_onto_center()


def test_center_preservation_reduction_mod2():
    A = matrix_algebra(ZMod(6), 2)
    h = reduction_hom(A, RingIdeal(ZMod(6), 2))
    rep, cmap = center_preservation_check(h)
    assert rep.status == "pass"
    assert all(rep.preconditions.values())


def test_rank_comparison_reports():
    h = diagonal_embed(ZMod(3), 2, 3)
    rep = rank_comparison_check(h)
    assert rep.status == "pass"
    assert rep.details == {"source_rank": 4, "target_rank": 36}


def test_isomorphism_routes_agree_positive():
    A = matrix_algebra(ZMod(6), 2)
    h = conjugation_auto(A, A.element([1, 2, 0, 1]))
    rep = isomorphism_check(h)
    assert rep.status == "pass"
    assert rep.details["is_isomorphism"]
    assert all(rep.details["routes"].values())


def test_isomorphism_routes_agree_negative():
    h = diagonal_embed(ZMod(2), 2, 2)
    rep = isomorphism_check(h)
    assert rep.status == "pass"
    assert not rep.details["is_isomorphism"]
    assert not any(rep.details["routes"].values())


def test_endo_auto_identity():
    A = matrix_algebra(ZMod(4), 2)
    rep = endo_auto_check(identity_hom(A))
    assert rep.status == "pass"


def test_endo_auto_requires_base_identity():
    # the Frobenius on GF(4) extends to a verified base-changing map of
    # M_2(GF(4)) that does not fix the base, so the endomorphism check
    # refuses it
    F4 = GaloisField.default(2, 2)
    A = matrix_algebra(F4, 2)
    from azumaya.rings import BaseRingHom

    t = F4.element((0, 1))
    frob_t = (t * t).coords
    frob = BaseRingHom(F4, F4, np.asarray([[1, frob_t[0]], [0, frob_t[1]]]))
    h = base_change_hom(A, frob)
    # base_change_hom targets an equal algebra here (Frobenius fixes the
    # structure constants), so source == target
    assert h.source == h.target
    with pytest.raises(PreconditionUnmet):
        endo_auto_check(h)
    rep = isomorphism_check(h)
    assert rep.status == "pass"
    assert rep.details["is_isomorphism"]


def test_jordan_probe_no_index3_in_m2():
    A = matrix_algebra(ZMod(5), 2)
    rep = jordan_obstruction_probe(3, A, samples=10**4, seed=1)
    assert rep.status == "pass"
    assert rep.details["exhaustive"]


def test_jordan_probe_vacuous():
    A = matrix_algebra(ZMod(2), 2)
    assert jordan_obstruction_probe(1, A).status == "pass"


def test_tensor_commutant_diag_m2_in_m4():
    h = diagonal_embed(ZMod(5), 2, 2)
    gens = [h.apply_flat(np.eye(h.source.dim, dtype=np.int64)[j]) for j in range(h.source.dim)]
    C, bij = tensor_commutant_map(h.target, gens)
    assert C.order == 5**4
    assert bij


def test_counterexample_search_reduced_target_rejected():
    src = matrix_algebra(ZMod(2), 2)
    tgt = matrix_algebra(ZMod(6), 2)
    with pytest.raises(PreconditionUnmet):
        counterexample_search(src, tgt, budget=1, seed=0)


def test_counterexample_search_not_found():
    src = matrix_algebra(ZMod(2), 2)
    tgt = matrix_algebra(ZMod(4), 2)
    rep = counterexample_search(src, tgt, budget=50, seed=0)
    assert rep.status == "not-found"
    assert rep.details["tried"] == 50


# ---------------------------------------------------------------------------
# corpus sweeps


def test_corpus_size_and_verification(corpus):
    assert len(corpus) >= 50
    eligible = [e for e in corpus if e.equal_rank_reduced]
    assert len(eligible) >= 50
    for e in corpus:
        assert e.hom.is_verified, e.name


def test_corpus_names_unique_and_deterministic(corpus):
    names = [e.name for e in corpus]
    assert len(names) == len(set(names))
    again = [e.name for e in build_corpus()]
    assert names == again


def test_corpus_center_preservation_zero_failures(corpus):
    for e in corpus:
        if not e.equal_rank_reduced:
            continue
        rep, _ = center_preservation_check(e.hom)
        assert rep.status == "pass", e.name


def test_corpus_rank_inequality_zero_violations(corpus):
    for e in corpus:
        rep = rank_comparison_check(e.hom)
        assert rep.status == "pass", e.name


def test_corpus_kernels_are_expanded_ideals(corpus):
    for e in corpus:
        _, rep = kernel_ideal(e.hom)
        assert rep.status == "pass", e.name


def test_corpus_isomorphism_routes_agree(corpus):
    for e in corpus:
        rep = isomorphism_check(e.hom)
        assert rep.status == "pass", (e.name, rep.witness)
        if e.kind == "diagonal":
            assert not rep.details["is_isomorphism"], e.name


def test_corpus_endomorphisms_bijective(corpus):
    seen = 0
    for e in corpus:
        h = e.hom
        if h.source != h.target or not h.fixes_base():
            continue
        seen += 1
        assert endo_auto_check(h).status == "pass", e.name
    assert seen >= 10
