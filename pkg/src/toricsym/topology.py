"""Cohomology presentations, moment-angle data, and the symmetry descriptor.

These are emitters: they assemble structured relation data (generators,
monomial and linear relations, kernel lattices, block partitions) rather
than computing quotient rings. Downstream computer-algebra tools can
consume the output directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import List, Optional, Tuple

from .automorphisms import ComponentGroupReport
from .linalg import integer_kernel_basis, invariant_factors, mat_mul
from .polytope import DelzantPolytope, face_structure, h_vector
from .roots import RootSystem, compute_root_system


@dataclass(frozen=True)
class CohomologyPresentation:
    """Ring presentation with one degree-2 generator per facet.

    Equivariant mode has only the monomial relations (products over
    minimal nonfaces). Ordinary mode adds one linear relation per lattice
    direction, Betti numbers, and the generator identifications forced by
    the root-system blocks.
    """

    mode: str
    generator_symbol: str
    num_generators: int
    monomial_relations: Tuple[Tuple[int, ...], ...]
    linear_relations: Optional[Tuple[Tuple[int, ...], ...]] = None
    betti: Optional[Tuple[int, ...]] = None
    identified_blocks: Optional[Tuple[Tuple[int, ...], ...]] = None


@dataclass(frozen=True)
class MomentAngleData:
    """Kernel lattice of the normal map with its two interpretations.

    Row k of ``kernel_basis`` gives the level-set relation
    sum_i B[k][i] * (|z_i|^2 / 2) + constant_k = 0 cutting out the
    moment-angle manifold, and, read multiplicatively as exponents, the
    rank (m - n) subtorus acting freely on it.
    """

    kernel_basis: Tuple[Tuple[int, ...], ...]
    zp_constants: Tuple[Fraction, ...]

    @property
    def kerv_exponents(self) -> Tuple[Tuple[int, ...], ...]:
        return self.kernel_basis


@dataclass(frozen=True)
class GmaxDescriptor:
    """Structure of the maximal compact symmetry group.

    The identity component is the quotient of (product of unitary blocks,
    one per root-system factor) x (circle factors on the free indices) by
    the rank (m - n) kernel subtorus; components are counted by the
    automorphism cosets of the embedded Weyl group.
    """

    blocks: Tuple[Tuple[int, ...], ...]
    free_indices: Tuple[int, ...]
    identity_component_dim: int
    weyl_order: int
    component_count: int
    conditions: Tuple[Tuple[str, bool], ...]
    summary: str


def cohomology(
    P: DelzantPolytope, mode: str, root_system: Optional[RootSystem] = None
) -> CohomologyPresentation:
    """Presentation of the (equivariant or ordinary) cohomology ring."""
    if mode not in ("equivariant", "ordinary"):
        raise ValueError(f"unknown cohomology mode {mode!r}")
    fs = face_structure(P)
    if mode == "equivariant":
        return CohomologyPresentation(
            mode=mode,
            generator_symbol="tau",
            num_generators=P.m,
            monomial_relations=fs.minimal_nonfaces,
        )
    if root_system is None:
        root_system = compute_root_system(P)
    linear = tuple(tuple(row) for row in P.normal_matrix())
    return CohomologyPresentation(
        mode=mode,
        generator_symbol="mu",
        num_generators=P.m,
        monomial_relations=fs.minimal_nonfaces,
        linear_relations=linear,
        betti=h_vector(P),
        identified_blocks=tuple(f.index_set for f in root_system.factors),
    )


def moment_angle(P: DelzantPolytope) -> MomentAngleData:
    """Kernel lattice of the normal map and the induced level-set data."""
    V = P.normal_matrix()
    basis = integer_kernel_basis(V)
    assert len(basis) == P.m - P.n
    for row in basis:
        assert all(
            sum(row[i] * P.normals[i][k] for i in range(P.m)) == 0
            for k in range(P.n)
        ), "kernel row does not annihilate the normals"
    if basis:
        assert set(invariant_factors([list(b) for b in basis])) <= {1}, (
            "kernel basis is not saturated"
        )
    constants = tuple(
        sum((Fraction(row[i]) * P.offsets[i] for i in range(P.m)), Fraction(0))
        for row in basis
    )
    data = MomentAngleData(kernel_basis=tuple(basis), zp_constants=constants)
    _assert_exactness(P, data)
    return data


def _assert_exactness(P: DelzantPolytope, data: MomentAngleData) -> None:
    # the linear-relation matrix composed with the kernel basis vanishes
    if data.kernel_basis:
        Bt = [[row[i] for row in data.kernel_basis] for i in range(P.m)]
        prod = mat_mul(P.normal_matrix(), Bt)
        assert all(all(x == 0 for x in row) for row in prod)


def gmax_descriptor(
    P: DelzantPolytope, R: RootSystem, report: ComponentGroupReport
) -> GmaxDescriptor:
    """Assemble the block partition and dimension of the symmetry group."""
    blocks = tuple(f.index_set for f in R.factors)
    in_blocks = {i for b in blocks for i in b}
    free = tuple(i for i in range(P.m) if i not in in_blocks)
    dim = sum(len(b) ** 2 for b in blocks) + len(free) - (P.m - P.n)
    # independent recount: unitary blocks + leftover circles - kernel torus
    kernel = integer_kernel_basis(P.normal_matrix())
    recount = sum(len(b) ** 2 for b in blocks) + len(free) - len(kernel)
    assert dim == recount
    assert dim >= P.n
    assert (dim == P.n) == (not blocks)
    order = 1
    for b in blocks:
        order *= factorial(len(b))
    # kernel columns agree on each witness pair, so the unitary block on a
    # factor's facets genuinely acts on the level set
    for root in R.roots:
        for row in kernel:
            assert row[root.i] == row[root.j], (
                "kernel columns differ on a root witness pair"
            )
    block_txt = (
        ", ".join(
            f"U({len(b)}) on facets {{{', '.join(str(i + 1) for i in b)}}}"
            for b in blocks
        )
        or "no unitary blocks (torus only)"
    )
    summary = (
        f"identity component: {block_txt}; {len(free)} free circle factor(s); "
        f"dimension {dim}; Weyl order {order}; "
        f"{report.component_count} connected component(s)"
    )
    return GmaxDescriptor(
        blocks=blocks,
        free_indices=free,
        identity_component_dim=dim,
        weyl_order=order,
        component_count=report.component_count,
        conditions=(
            ("root_system_fully_realized_by_blocks", True),
            (
                "every_polytope_automorphism_realized",
                report.component_count * report.weyl_image_order
                == report.aut_order,
            ),
        ),
        summary=summary,
    )
