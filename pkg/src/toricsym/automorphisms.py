"""Lattice automorphisms of a moment polytope and the component count.

An automorphism is a unimodular map rho_star on the vector lattice that
permutes the facet normals (rho_star^{-1} v_i = v_{sigma(i)}) together
with a rational translation covector u0 matching the offsets
(a_{sigma(i)} = a_i - <u0, v_{sigma(i)}>). The group is finite; the Weyl
group of the root system embeds in it through the facet-swapping
reflections, and the quotient counts the connected components of the
maximal compact symmetry group.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InternalInvariantError
from .linalg import (
    IntVector,
    RatVector,
    dot,
    identity_matrix,
    is_unimodular,
    mat_inverse_unimodular,
    mat_mul,
    mat_vec,
    solve_covector,
)
from .polytope import DelzantPolytope, face_structure
from .roots import (
    DEFAULT_WEYL_CAP,
    RootSystem,
    reflection_matrix,
    weyl_group,
)

Matrix = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class PolytopeAutomorphism:
    """Triple (rho_star, sigma, u0); rho_star acts on the vector lattice."""

    rho_star: Matrix
    sigma: Tuple[int, ...]
    u0: RatVector

    def apply_vector(self, v: Sequence[int]) -> IntVector:
        return mat_vec(self.rho_star, v)

    def apply_covector(self, u: Sequence) -> tuple:
        """Adjoint action on covectors: <result, v> = <u, rho_star v>."""
        n = len(self.rho_star)
        return tuple(
            sum(u[k] * self.rho_star[k][c] for k in range(n)) for c in range(n)
        )


@dataclass(frozen=True)
class NonfaceActionReport:
    """How a facet permutation acts on the minimal nonfaces."""

    sigma: Tuple[int, ...]
    mapped: Tuple[Tuple[Tuple[int, ...], Tuple[int, ...]], ...]


@dataclass(frozen=True)
class ComponentGroupReport:
    aut_order: int
    weyl_image_order: int
    component_count: int
    weyl_normal_in_aut: bool
    coset_representatives: Tuple[PolytopeAutomorphism, ...]
    quotient_table: Optional[Tuple[Tuple[int, ...], ...]]


def _sigma_of_rho(
    P: DelzantPolytope, rho: Matrix
) -> Optional[Tuple[int, ...]]:
    """Permutation with rho^{-1} v_i = v_{sigma(i)}, or None if rho does
    not permute the normal set."""
    index = {v: k for k, v in enumerate(P.normals)}
    sigma = [-1] * P.m
    for ell, v in enumerate(P.normals):
        image = mat_vec(rho, v)
        k = index.get(tuple(image))
        if k is None:
            return None
        sigma[k] = ell
    assert sorted(sigma) == list(range(P.m))
    return tuple(sigma)


def _u0_of_sigma(
    P: DelzantPolytope, sigma: Tuple[int, ...]
) -> Optional[RatVector]:
    """Translation covector solving the offset condition, if consistent."""
    tau = [0] * P.m
    for i, s in enumerate(sigma):
        tau[s] = i
    target = [P.offsets[tau[ell]] - P.offsets[ell] for ell in range(P.m)]
    return solve_covector(P.normal_matrix(), target)


def _automorphism_from_rho(
    P: DelzantPolytope, rho: Matrix
) -> Optional[PolytopeAutomorphism]:
    sigma = _sigma_of_rho(P, rho)
    if sigma is None:
        return None
    u0 = _u0_of_sigma(P, sigma)
    if u0 is None:
        return None
    return PolytopeAutomorphism(rho_star=rho, sigma=sigma, u0=u0)


def identity_automorphism(P: DelzantPolytope) -> PolytopeAutomorphism:
    ident = tuple(tuple(row) for row in identity_matrix(P.n))
    return PolytopeAutomorphism(
        rho_star=ident,
        sigma=tuple(range(P.m)),
        u0=tuple(Fraction(0) for _ in range(P.n)),
    )


def compose(
    P: DelzantPolytope, g: PolytopeAutomorphism, h: PolytopeAutomorphism
) -> PolytopeAutomorphism:
    """Group composition; the rho_star matrices multiply."""
    rho = tuple(tuple(row) for row in mat_mul(g.rho_star, h.rho_star))
    out = _automorphism_from_rho(P, rho)
    assert out is not None, "composition left the automorphism group"
    return out


def invert(P: DelzantPolytope, g: PolytopeAutomorphism) -> PolytopeAutomorphism:
    rho = tuple(tuple(row) for row in mat_inverse_unimodular([list(r) for r in g.rho_star]))
    out = _automorphism_from_rho(P, rho)
    assert out is not None, "inverse left the automorphism group"
    return out


def compute_automorphisms(P: DelzantPolytope) -> List[PolytopeAutomorphism]:
    """Enumerate the full automorphism group.

    Any automorphism sends the normal basis at one fixed vertex to the
    normal basis at some vertex, so candidates are generated by choosing an
    image vertex and an arrangement of its facets; rho_star is solved from
    those n columns, then verified on the remaining normals, and the
    translation covector is solved from the offsets and verified globally.
    """
    fs = face_structure(P)
    active_sets = [active for active, _ in fs.vertices]
    base = active_sets[0]
    base_cols = [[P.normals[i][k] for i in base] for k in range(P.n)]
    found: Dict[Matrix, PolytopeAutomorphism] = {}
    for target_set in active_sets:
        for arrangement in permutations(target_set):
            img_cols = [
                [P.normals[i][k] for i in arrangement] for k in range(P.n)
            ]
            inv = mat_inverse_unimodular(img_cols)
            rho = tuple(tuple(row) for row in mat_mul(base_cols, inv))
            if not is_unimodular(rho):
                continue
            g = _automorphism_from_rho(P, rho)
            if g is None:
                continue
            assert rho not in found or found[rho] == g
            found[rho] = g
    out = sorted(found.values(), key=lambda g: g.sigma)
    _assert_group_axioms(P, out)
    _assert_vertex_action(P, out)
    return out


def _assert_group_axioms(
    P: DelzantPolytope, auts: List[PolytopeAutomorphism]
) -> None:
    keys = {g.rho_star for g in auts}
    assert identity_automorphism(P).rho_star in keys, "identity missing"
    for g in auts:
        assert invert(P, g).rho_star in keys, "inverse missing"
        for h in auts:
            assert compose(P, g, h).rho_star in keys, "closure broken"


def _assert_vertex_action(
    P: DelzantPolytope, auts: List[PolytopeAutomorphism]
) -> None:
    fs = face_structure(P)
    vertex_by_active = {active: point for active, point in fs.vertices}
    for g in auts:
        for active, point in fs.vertices:
            image_set = tuple(sorted(g.sigma[i] for i in active))
            assert image_set in vertex_by_active, "facet permutation broke a vertex"
            moved = tuple(
                x - y for x, y in zip(g.apply_covector(point), g.u0)
            )
            assert moved == vertex_by_active[image_set], "vertex image mismatch"


def _transposition(m: int, i: int, j: int) -> Tuple[int, ...]:
    sigma = list(range(m))
    sigma[i], sigma[j] = j, i
    return tuple(sigma)


def weyl_embedding(
    P: DelzantPolytope,
    R: RootSystem,
    auts: Sequence[PolytopeAutomorphism],
    cap: int = DEFAULT_WEYL_CAP,
) -> ComponentGroupReport:
    """Locate the Weyl group inside the automorphism group and count cosets.

    Every reflection must appear as an automorphism whose facet permutation
    is the witness transposition and whose translation solves the offset
    condition; a missing reflection is a hard internal error. The image is
    closed under conjugation by the whole group (the conjugate of a
    reflection is the reflection of the transported root), which is checked
    rather than assumed.
    """
    by_rho: Dict[Matrix, PolytopeAutomorphism] = {g.rho_star: g for g in auts}
    gen_keys: List[Matrix] = []
    for root in R.roots:
        M = tuple(tuple(row) for row in reflection_matrix(P, root))
        g = by_rho.get(M)
        if g is None:
            raise InternalInvariantError(
                f"reflection of root {root.alpha} (facets {root.i + 1}, "
                f"{root.j + 1}) is not an automorphism of the polytope"
            )
        if g.sigma != _transposition(P.m, root.i, root.j):
            raise InternalInvariantError(
                "reflection automorphism does not swap the witness facets"
            )
        expected_u0 = tuple(
            (P.offsets[root.j] - P.offsets[root.i]) * a for a in root.alpha
        )
        assert g.u0 == expected_u0, "reflection translation mismatch"
        gen_keys.append(M)

    image: Dict[Matrix, PolytopeAutomorphism] = {
        identity_automorphism(P).rho_star: by_rho[identity_automorphism(P).rho_star]
    }
    frontier = list(image)
    while frontier:
        new = []
        for key in frontier:
            for gk in gen_keys:
                prod = tuple(tuple(row) for row in mat_mul(key, gk))
                if prod not in image:
                    image[prod] = by_rho[prod]
                    new.append(prod)
        frontier = new

    abstract = weyl_group(R, cap=cap)
    assert {w.vec_matrix for w in abstract} == set(image), (
        "abstract Weyl group and its automorphism image disagree"
    )

    normal = True
    image_keys = set(image)
    for g in auts:
        ginv = invert(P, g)
        for key in image_keys:
            conj = tuple(
                tuple(row)
                for row in mat_mul(mat_mul(g.rho_star, key), ginv.rho_star)
            )
            if conj not in image_keys:
                normal = False
                break
        if not normal:
            break

    assert len(auts) % len(image) == 0
    component_count = len(auts) // len(image)

    coset_of: Dict[Matrix, int] = {}
    reps: List[PolytopeAutomorphism] = []
    for g in auts:
        if g.rho_star in coset_of:
            continue
        cid = len(reps)
        reps.append(g)
        for key in image_keys:
            prod = tuple(tuple(row) for row in mat_mul(g.rho_star, key))
            coset_of[prod] = cid
    assert len(reps) == component_count

    quotient_table = None
    if normal:
        quotient_table = tuple(
            tuple(
                coset_of[
                    tuple(tuple(row) for row in mat_mul(a.rho_star, b.rho_star))
                ]
                for b in reps
            )
            for a in reps
        )

    return ComponentGroupReport(
        aut_order=len(auts),
        weyl_image_order=len(image),
        component_count=component_count,
        weyl_normal_in_aut=normal,
        coset_representatives=tuple(reps),
        quotient_table=quotient_table,
    )


def induced_facet_permutation(
    P: DelzantPolytope, g: PolytopeAutomorphism
) -> NonfaceActionReport:
    """The facet permutation of g acting on minimal nonfaces.

    The permutation must send minimal nonfaces to minimal nonfaces (that is
    what makes the induced map a ring automorphism of the cohomology
    presentation); failure is a hard internal error.
    """
    fs = face_structure(P)
    nonfaces = set(fs.minimal_nonfaces)
    mapped = []
    for nf in fs.minimal_nonfaces:
        image = tuple(sorted(g.sigma[i] for i in nf))
        if image not in nonfaces:
            raise InternalInvariantError(
                f"facet permutation {g.sigma} sends minimal nonface "
                f"{tuple(i + 1 for i in nf)} to {tuple(i + 1 for i in image)}, "
                "which is not a minimal nonface"
            )
        mapped.append((nf, image))
    return NonfaceActionReport(sigma=g.sigma, mapped=tuple(mapped))
