"""Ring homomorphisms between algebras, possibly over different base rings.

A hom is stored purely additively: an integer matrix on the flattened
coordinates of source and target.  That single representation covers
base-changing maps (e.g. reduction of matrix entries) uniformly.
Verification checks well-definedness over the coordinate moduli, unit
preservation, and multiplicativity on all coordinate-generator pairs; by
Z-bilinearity of both products this implies full multiplicativity, which is
additionally spot-tested on random pairs.  All homs here are unital by
definition: a non-unital map is refuted, never accepted.
"""

from __future__ import annotations

import math
import random
from functools import lru_cache

import numpy as np

from . import linalg
from .algebras import (
    AlgElem,
    Submodule,
    base_change,
    center,
    commutant,
    has_constant_rank,
    is_azumaya,
    matrix_algebra,
    nilpotency_index,
    NotNilpotentWithinCap,
    quotient_algebra,
)
from .reports import CONTRADICTS, FAIL, NOT_FOUND, PASS, CheckReport
from .rings import RingIdeal, ZMod, is_reduced

VERIFIED = "verified"
REFUTED = "refuted"
UNVERIFIED = "unverified"


class HomError(Exception):
    pass


class DimensionMismatch(HomError):
    pass


class ComposabilityMismatch(HomError):
    pass


class NotInvertible(HomError):
    pass


class VerificationFailed(HomError):
    pass


class PreconditionUnmet(HomError):
    pass


class AlgebraHom:
    """Additive map between the flattened modules of two algebras, with a
    verification status (unverified / verified / refuted(witness))."""

    def __init__(self, source, target, matrix, label=""):
        self.source = source
        self.target = target
        matrix = np.asarray(matrix, dtype=np.int64)
        if matrix.shape != (target.dim, source.dim):
            raise DimensionMismatch(
                f"expected {(target.dim, source.dim)}, got {matrix.shape}"
            )
        self.matrix = matrix % target._moduli_arr[:, None]
        self.status = UNVERIFIED
        self.refutation = None
        self.label = label

    def apply(self, elem):
        if elem.algebra != self.source:
            raise HomError("element not in the source algebra")
        return AlgElem(self.target, self.matrix @ elem.flat)

    def apply_flat(self, flat):
        return (self.matrix @ np.asarray(flat, dtype=np.int64)) % self.target._moduli_arr

    def verify(self, spot_trials=20, seed=0):
        """Decide verified/refuted; returns self.

        Refutations carry the first failing condition: well-definedness,
        the unit, or a generator pair (j, k).
        """
        src, tgt = self.source, self.target
        if not linalg.check_well_defined(self.matrix, src.moduli, tgt.moduli):
            self.status = REFUTED
            self.refutation = {"condition": "well-defined"}
            return self
        if not np.array_equal(self.apply_flat(src.unit_flat), tgt.unit_flat):
            self.status = REFUTED
            self.refutation = {"condition": "unit"}
            return self
        D = src.dim
        eye = np.eye(D, dtype=np.int64)
        images = (self.matrix @ eye.T).T % tgt._moduli_arr  # (D, tgt.dim)
        prods_src = src.struct.reshape(D * D, D)  # eps_j * eps_k stacked
        lhs = (prods_src @ self.matrix.T) % tgt._moduli_arr
        rhs = np.einsum("ai,bj,ijk->abk", images, images, tgt.struct).reshape(
            D * D, tgt.dim
        ) % tgt._moduli_arr
        if not np.array_equal(lhs, rhs):
            bad = int(np.argwhere((lhs != rhs).any(axis=1))[0][0])
            self.status = REFUTED
            self.refutation = {
                "condition": "multiplicative",
                "pair": [bad // D, bad % D],
            }
            return self
        rng = random.Random(seed)
        for _ in range(spot_trials):
            x = np.asarray([rng.randrange(m) for m in src.moduli], dtype=np.int64)
            y = np.asarray([rng.randrange(m) for m in src.moduli], dtype=np.int64)
            fx, fy = self.apply_flat(x), self.apply_flat(y)
            if not np.array_equal(
                self.apply_flat(src.mul_flat(x, y)), tgt.mul_flat(fx, fy)
            ):
                self.status = REFUTED
                self.refutation = {"condition": "multiplicative-random"}
                return self
        self.status = VERIFIED
        return self

    @property
    def is_verified(self):
        return self.status == VERIFIED

    def require_verified(self):
        if self.status == UNVERIFIED:
            self.verify()
        if self.status != VERIFIED:
            raise PreconditionUnmet(f"hom is not verified: {self.refutation}")

    def is_bijective(self):
        return linalg.is_bijective_additive(
            self.matrix, self.source.moduli, self.target.moduli
        )

    def image(self):
        return Submodule(self.target, self.matrix.T)

    def kernel_subgroup(self):
        return linalg.kernel_additive(self.matrix, self.source.moduli, self.target.moduli)

    def fixes_base(self):
        """True when the restriction to R*1 is the identity (needs source =
        target for the comparison to make sense)."""
        if self.source != self.target:
            return False
        f = self.source.base.flatten_len
        for s in range(f):
            v = self.source.scalar_mul_flat(
                self.source.base.basis_elem(s), self.source.unit_flat
            )
            if not np.array_equal(self.apply_flat(v), v):
                return False
        return True

    def __repr__(self):
        name = self.label or "hom"
        return f"<{name}: {self.source!r} -> {self.target!r} [{self.status}]>"


def verify_hom(matrix, source, target, label=""):
    """Wrap and verify an explicit integer matrix as an AlgebraHom."""
    return AlgebraHom(source, target, matrix, label=label).verify()


def identity_hom(A):
    return AlgebraHom(A, A, np.eye(A.dim, dtype=np.int64), label="id").verify()


def compose(g, f):
    """g after f."""
    if f.target != g.source:
        raise ComposabilityMismatch("inner target differs from outer source")
    h = AlgebraHom(
        f.source,
        g.target,
        g.matrix @ f.matrix,
        label=f"{g.label}.{f.label}",
    )
    return h.verify()


# ---------------------------------------------------------------------------
# constructors


def conjugation_auto(A, u):
    """x -> u x u^{-1} for a unit u; verified automorphism fixing the base."""
    u_flat = u.flat if isinstance(u, AlgElem) else np.asarray(u, dtype=np.int64)
    L = A.left_mul_matrix(u_flat)
    if not linalg.is_bijective_additive(L, A.moduli, A.moduli):
        raise NotInvertible("left multiplication by u is not bijective")
    u_inv, _ = linalg.solve_additive(L, A.unit_flat, A.moduli, A.moduli)
    cols = []
    for j in range(A.dim):
        ej = np.zeros(A.dim, dtype=np.int64)
        ej[j] = 1
        cols.append(A.mul_flat(A.mul_flat(u_flat, ej), u_inv))
    H = AlgebraHom(A, A, np.asarray(cols).T, label="conj").verify()
    if H.status != VERIFIED:
        raise VerificationFailed(f"conjugation failed verification: {H.refutation}")
    return H


def reduction_hom(A, ideal):
    """Canonical surjection A -> A/IA, entries reduced through R -> R/I."""
    Q, proj = quotient_algebra(A, ideal)
    f_src = A.base.flatten_len
    f_tgt = Q.base.flatten_len
    H = np.zeros((Q.dim, A.dim), dtype=np.int64)
    for i in range(A.rank):
        H[i * f_tgt : (i + 1) * f_tgt, i * f_src : (i + 1) * f_src] = proj.matrix
    hom = AlgebraHom(A, Q, H, label=f"mod {ideal.data!r}").verify()
    if hom.status != VERIFIED:
        raise VerificationFailed(f"reduction failed verification: {hom.refutation}")
    return hom


def base_change_hom(A, ring_hom):
    """A -> A (x)_R S along a base-ring hom, identity on the basis."""
    Q = base_change(A, ring_hom)
    f_src = A.base.flatten_len
    f_tgt = Q.base.flatten_len
    H = np.zeros((Q.dim, A.dim), dtype=np.int64)
    for i in range(A.rank):
        H[i * f_tgt : (i + 1) * f_tgt, i * f_src : (i + 1) * f_src] = ring_hom.matrix
    hom = AlgebraHom(A, Q, H, label="base-change").verify()
    if hom.status != VERIFIED:
        raise VerificationFailed(f"base change failed verification: {hom.refutation}")
    return hom


def diagonal_embed(ring, m, k):
    """M_m(R) -> M_{km}(R), x -> diag(x, ..., x); verified unital injection."""
    if k < 1:
        raise HomError("block count must be >= 1")
    src = matrix_algebra(ring, m, check=False)
    tgt = matrix_algebra(ring, k * m, check=False)
    f = ring.flatten_len
    n = k * m
    H = np.zeros((tgt.dim, src.dim), dtype=np.int64)
    eye_f = np.eye(f, dtype=np.int64)
    for i in range(m):
        for j in range(m):
            src_slot = i * m + j
            for t in range(k):
                tgt_slot = (t * m + i) * n + (t * m + j)
                H[tgt_slot * f : (tgt_slot + 1) * f, src_slot * f : (src_slot + 1) * f] = eye_f
    hom = AlgebraHom(src, tgt, H, label=f"diag x{k}").verify()
    if hom.status != VERIFIED:
        raise VerificationFailed(f"diagonal embedding failed: {hom.refutation}")
    return hom


def weyl_splitting(p, a, b):
    """Explicit isomorphism W(p, a, b) -> M_p(F_p): x acts as multiplication
    by (t + a) on F_p[t]/(t^p), y as d/dt + b.

    The relations hold because (t + a)^p = a and (d/dt + b)^p = b in
    characteristic p; everything is re-verified computationally.
    """
    from .algebras import weyl_quotient

    ring = ZMod(p)
    a %= p
    b %= p
    W = weyl_quotient(p, a, b)
    M = matrix_algebra(ring, p, check=False)
    X = np.zeros((p, p), dtype=np.int64)
    Y = np.zeros((p, p), dtype=np.int64)
    for mdeg in range(p):
        if mdeg + 1 < p:
            X[mdeg + 1, mdeg] = 1
        X[mdeg, mdeg] = a
        if mdeg >= 1:
            Y[mdeg - 1, mdeg] = mdeg % p
        Y[mdeg, mdeg] = b

    def mat_to_flat(mat):
        return mat.reshape(-1) % p

    H = np.zeros((M.dim, W.dim), dtype=np.int64)
    for i in range(p):
        for j in range(p):
            img = np.linalg.matrix_power(X, i) @ np.linalg.matrix_power(Y, j) % p
            H[:, i * p + j] = mat_to_flat(img)
    hom = AlgebraHom(W, M, H, label=f"split W({p},{a},{b})").verify()
    if hom.status != VERIFIED:
        raise VerificationFailed(f"splitting failed verification: {hom.refutation}")
    if not hom.is_bijective():
        raise VerificationFailed("splitting is not bijective")
    return hom


# ---------------------------------------------------------------------------
# kernels and ideals


def kernel_ideal(f):
    """Contract ker(f) to a base ideal I and check ker = I*A exactly."""
    from .algebras import expand_ideal

    f.require_verified()
    A = f.source
    base = A.base
    ker = f.kernel_subgroup()
    # restrict f to R*1 to contract the kernel to the base ring
    fmod = base.flatten_len
    restrict = np.zeros((f.target.dim, fmod), dtype=np.int64)
    for s in range(fmod):
        v = A.scalar_mul_flat(base.basis_elem(s), A.unit_flat)
        restrict[:, s] = f.apply_flat(v)
    rker = linalg.kernel_additive(restrict, base.moduli, f.target.moduli)
    ideal = _subgroup_to_ideal(base, rker)
    expanded = expand_ideal(A, ideal)
    ok = expanded.group == Submodule(A, ker.generators()).group
    report = CheckReport(
        check="kernel_ideal",
        status=PASS if ok else FAIL,
        witness=None if ok else {"kernel_order": ker.order, "ideal": repr(ideal.data)},
        details={"ideal": repr(ideal.data)},
    )
    return ideal, report


def _subgroup_to_ideal(ring, subgroup):
    """Interpret a subgroup of the base ring as an ideal of the supported
    shapes (divisor ideal / zero-or-unit / per-factor)."""
    from .rings import GaloisField, ProductRing

    if isinstance(ring, ZMod):
        gens = subgroup.generators()
        d = ring.n
        for g in gens:
            d = math.gcd(d, int(g[0]))
        return RingIdeal(ring, d if d else ring.n)
    if isinstance(ring, GaloisField):
        return RingIdeal(ring, "zero" if subgroup.order == 1 else "unit")
    if isinstance(ring, ProductRing):
        parts = []
        gens = subgroup.generators()
        off = 0
        for factor in ring.factors:
            fl = factor.flatten_len
            sub = linalg.Subgroup(
                gens[:, off : off + fl] if len(gens) else np.zeros((0, fl)),
                factor.moduli,
            )
            parts.append(_subgroup_to_ideal(factor, sub).data)
            off += fl
        return RingIdeal(ring, tuple(parts))
    raise HomError(f"unsupported base ring {ring!r}")


# ---------------------------------------------------------------------------
# theorem checks


@lru_cache(maxsize=None)
def _azumaya_ok(A):
    return is_azumaya(A).status == PASS


@lru_cache(maxsize=None)
def _const_rank(A):
    return has_constant_rank(A)


def _azumaya_preconditions(f):
    ok_src = _azumaya_ok(f.source)
    ok_tgt = _azumaya_ok(f.target)
    const_src, r_src = _const_rank(f.source)
    const_tgt, r_tgt = _const_rank(f.target)
    return {
        "hom_verified": f.is_verified,
        "source_azumaya": ok_src,
        "target_azumaya": ok_tgt,
        "source_constant_rank": r_src if const_src else None,
        "target_constant_rank": r_tgt if const_tgt else None,
        "target_base_reduced": is_reduced(f.target.base),
    }


class CenterMap:
    """Induced additive map between center subgroups, on center generators."""

    def __init__(self, hom, src_gens, matrix):
        self.hom = hom
        self.src_gens = src_gens  # rows: flattened source center generators
        self.matrix = matrix  # images of those generators in the target

    def is_bijective_onto_center(self):
        tgt_center = center(self.hom.target)
        src_order = linalg.Subgroup(self.src_gens, self.hom.source.moduli).order
        image = linalg.Subgroup(self.matrix, self.hom.target.moduli)
        inside = all(tgt_center.group.contains(g) for g in image.generators())
        return inside and image.order == src_order == tgt_center.group.order


def center_preservation_check(f, verify_preconditions=True):
    """Images of source-center generators must commute with the whole target.

    The theorem preconditions (verified hom, both sides Azumaya of equal
    constant rank, reduced target base) are evaluated and reported; the
    commutator check itself runs regardless.  A failure with all
    preconditions met is flagged contradicts-theorem.
    """
    if f.status == UNVERIFIED:
        f.verify()
    pre = _azumaya_preconditions(f) if verify_preconditions else {"hom_verified": f.is_verified}
    pre_met = all(
        [
            pre.get("hom_verified", False),
            pre.get("source_azumaya", False),
            pre.get("target_azumaya", False),
            pre.get("source_constant_rank") is not None,
            pre.get("source_constant_rank") == pre.get("target_constant_rank"),
            pre.get("target_base_reduced", False),
        ]
    )
    zc = center(f.source)
    gens = zc.group.generators()
    tgt = f.target
    images = []
    for g in gens:
        img = f.apply_flat(g)
        images.append(img)
        for alpha in range(tgt.dim):
            e = np.zeros(tgt.dim, dtype=np.int64)
            e[alpha] = 1
            comm = (tgt.mul_flat(img, e) - tgt.mul_flat(e, img)) % tgt._moduli_arr
            if comm.any():
                report = CheckReport(
                    check="center_preservation",
                    status=CONTRADICTS if pre_met else FAIL,
                    witness={
                        "center_generator": g.tolist(),
                        "image": img.tolist(),
                        "noncommuting_coordinate": alpha,
                        "commutator": comm.tolist(),
                    },
                    preconditions=pre,
                )
                return report, None
    cmap = CenterMap(f, gens, np.asarray(images).reshape(-1, tgt.dim))
    report = CheckReport(check="center_preservation", status=PASS, preconditions=pre)
    return report, cmap


def rank_comparison_check(f):
    """rank(source) <= rank(target) for verified homs of Azumaya algebras."""
    f.require_verified()
    pre = _azumaya_preconditions(f)
    if not (pre["source_azumaya"] and pre["target_azumaya"]):
        raise PreconditionUnmet("both algebras must be Azumaya-verified")
    r_src, r_tgt = pre["source_constant_rank"], pre["target_constant_rank"]
    if r_src is None or r_tgt is None:
        raise PreconditionUnmet("both algebras must have constant rank")
    if r_src <= r_tgt:
        return CheckReport(
            check="rank_comparison",
            status=PASS,
            preconditions=pre,
            details={"source_rank": r_src, "target_rank": r_tgt},
        )
    return CheckReport(
        check="rank_comparison",
        status=CONTRADICTS,
        witness={"source_rank": r_src, "target_rank": r_tgt},
        preconditions=pre,
    )


def jordan_obstruction_probe(n, Aprime, samples=10000, seed=0):
    """No element of A' = M_{n'}(k) with n' < n may have nilpotency index
    exactly n.  Exhaustive when the algebra is small enough, seeded sampling
    otherwise."""
    nprime = math.isqrt(Aprime.rank)
    if nprime * nprime != Aprime.rank:
        raise PreconditionUnmet("probe target must be a full matrix algebra")
    if n <= 1:
        return CheckReport(check="jordan_obstruction", status=PASS, details={"vacuous": True})
    exhaustive = Aprime.size <= samples
    rng = random.Random(seed)

    def candidates():
        if exhaustive:
            yield from Aprime.elements()
        else:
            for _ in range(samples):
                yield AlgElem(
                    Aprime,
                    np.asarray([rng.randrange(m) for m in Aprime.moduli], dtype=np.int64),
                )

    checked = 0
    for x in candidates():
        checked += 1
        try:
            e = nilpotency_index(x, cap=Aprime.rank)
        except NotNilpotentWithinCap:
            continue
        if e == n and nprime < n:
            return CheckReport(
                check="jordan_obstruction",
                status=FAIL,
                witness={"element": x.flat.tolist(), "index": e},
                seed=seed,
                details={"checked": checked, "exhaustive": exhaustive},
            )
        if e > nprime:
            # any nilpotent of M_{n'} over a field has index <= n'
            return CheckReport(
                check="jordan_obstruction",
                status=FAIL,
                witness={"element": x.flat.tolist(), "index": e},
                seed=seed,
                details={"checked": checked, "exhaustive": exhaustive},
            )
    return CheckReport(
        check="jordan_obstruction",
        status=PASS,
        seed=seed,
        details={"checked": checked, "exhaustive": exhaustive},
    )


def isomorphism_check(f):
    """Four-route isomorphism verdict:

    (a) the induced center map exists and is bijective onto Z(target);
    (b) equal constant ranks (the free-module rank condition);
    (c) direct bijectivity of the flattened matrix;
    (d) the commutant route: with A2 the image of f, the commutant C of A2
        in the target equals R'*1, the image has full order, and the source
        injects -- making the canonical multiplication map A2 (x) C -> target
        an isomorphism.

    (a) and (b) together imply (c) by the isomorphism criterion; (c) and (d)
    agree by the commutant decomposition.  Any disagreement is flagged
    contradicts-theorem.
    """
    f.require_verified()
    pre = _azumaya_preconditions(f)
    if not (pre["source_azumaya"] and pre["target_azumaya"]):
        raise PreconditionUnmet("both algebras must be Azumaya-verified")

    _, cmap = center_preservation_check(f, verify_preconditions=False)
    a_ok = cmap is not None and cmap.is_bijective_onto_center()
    b_ok = (
        pre["source_constant_rank"] is not None
        and pre["source_constant_rank"] == pre["target_constant_rank"]
    )
    c_ok = f.is_bijective()

    image = f.image()
    gen_images = [f.apply_flat(np.eye(f.source.dim, dtype=np.int64)[j]) for j in range(f.source.dim)]
    C = commutant(f.target, [AlgElem(f.target, g) for g in gen_images], check_closure=False)
    c_scalar = C.group == f.target.unit_span()
    injective = f.kernel_subgroup().order == 1
    d_ok = c_scalar and injective and image.order == f.target.size

    verdicts = {"center_iso_and_rank": a_ok and b_ok, "direct_bijectivity": c_ok, "commutant_route": d_ok}
    agree = len(set(verdicts.values())) == 1
    if not agree:
        return CheckReport(
            check="isomorphism",
            status=CONTRADICTS,
            witness={"verdicts": {k: bool(v) for k, v in verdicts.items()}},
            preconditions=pre,
        )
    status = PASS
    return CheckReport(
        check="isomorphism",
        status=status,
        preconditions=pre,
        details={
            "is_isomorphism": bool(c_ok),
            "routes": {k: bool(v) for k, v in verdicts.items()},
            "commutant_order": C.order,
        },
    )


def endo_auto_check(f):
    """A verified base-identity endomorphism of an Azumaya algebra must be
    bijective."""
    f.require_verified()
    if f.source != f.target:
        raise PreconditionUnmet("endomorphism check needs source = target")
    if not f.fixes_base():
        raise PreconditionUnmet("restriction to the base is not the identity")
    pre = _azumaya_preconditions(f)
    if not pre["source_azumaya"]:
        raise PreconditionUnmet("algebra must be Azumaya-verified")
    if f.is_bijective():
        return CheckReport(check="endo_auto", status=PASS, preconditions=pre)
    ker = f.kernel_subgroup()
    gens = ker.generators()
    return CheckReport(
        check="endo_auto",
        status=CONTRADICTS,
        witness={"kernel_generator": gens[0].tolist() if len(gens) else None},
        preconditions=pre,
    )


def tensor_commutant_map(target, sub_gens):
    """The canonical map tau: A2 (x) C -> target for A2 the subalgebra
    spanned by sub_gens and C its commutant; returns (C, bijective).

    Restricted to field bases, where submodules are free and the tensor has
    order q^(dim A2 * dim C); tau is then bijective iff that order matches
    the target and the pairwise products span everything."""
    base = target.base
    if not base.is_field:
        raise PreconditionUnmet("tensor-commutant check needs a field base")
    q = base.size
    A2 = linalg.Subgroup(
        np.asarray([g.flat if isinstance(g, AlgElem) else g for g in sub_gens]),
        target.moduli,
    )
    C = commutant(target, [AlgElem(target, g) for g in A2.generators()], check_closure=True)
    dim_a = round(math.log(A2.order, q))
    dim_c = round(math.log(C.order, q))
    cols = [
        target.mul_flat(ag, cg)
        for ag in A2.generators()
        for cg in C.group.generators()
    ]
    span = linalg.Subgroup(np.asarray(cols), target.moduli)
    bij = q ** (dim_a * dim_c) == target.size and span.order == target.size
    return C, bij


def counterexample_search(source, target, budget, seed, known_homs=()):
    """Randomized hunt for a verified hom into a non-reduced base violating
    center preservation.  Emits evidence only; never asserts nonexistence."""
    if is_reduced(target.base):
        raise PreconditionUnmet("counterexample search needs a non-reduced target base")
    rng = random.Random(seed)
    tried = 0
    verified = 0
    candidates = []
    for h in known_homs:
        candidates.append(("perturbed", h))
    while tried < budget:
        tried += 1
        if candidates and tried % 2 == 0:
            _, base_hom = candidates[rng.randrange(len(candidates))]
            M = base_hom.matrix.copy()
            i = rng.randrange(M.shape[0])
            j = rng.randrange(M.shape[1])
            M[i, j] = rng.randrange(int(target.moduli[i]))
            hom = AlgebraHom(source, target, M)
        else:
            M = np.asarray(
                [
                    [rng.randrange(m) for _ in range(source.dim)]
                    for m in target.moduli
                ],
                dtype=np.int64,
            )
            hom = AlgebraHom(source, target, M)
        hom.verify(spot_trials=0)
        if not hom.is_verified:
            continue
        verified += 1
        res, _ = center_preservation_check(hom, verify_preconditions=False)
        if res.status in (FAIL, CONTRADICTS):
            return CheckReport(
                check="counterexample_search",
                status=PASS,
                seed=seed,
                witness=res.witness,
                details={"tried": tried, "verified": verified, "found": True},
            )
    return CheckReport(
        check="counterexample_search",
        status=NOT_FOUND,
        seed=seed,
        details={"tried": tried, "verified": verified, "found": False},
    )
