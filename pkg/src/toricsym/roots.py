"""The root system of a moment polytope and its Weyl group.

A root is an integer covector alpha taking value 1 on one facet normal,
-1 on a second, and 0 on all the rest; the two facet indices are the
witness pair of alpha. The set of all roots decomposes into irreducible
factors, each certified to be of type A, and the reflections through the
roots generate a finite Weyl group (a product of symmetric groups, one per
factor).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Dict, List, Sequence, Tuple

from .errors import InternalInvariantError, WeylOrderCapExceeded
from .linalg import IntMatrix, IntVector, dot, identity_matrix, mat_mul, mat_vec, solve_covector
from .polytope import DelzantPolytope

DEFAULT_WEYL_CAP = 10 ** 6


@dataclass(frozen=True)
class Root:
    """Covector with pairing +1 on facet i, -1 on facet j, 0 elsewhere."""

    alpha: IntVector
    i: int
    j: int


@dataclass(frozen=True)
class IrreducibleFactor:
    """One irreducible piece of the root system, certified of type A.

    ``index_set`` collects the facet indices on which some root of the
    factor is nonzero; its size is rank + 1. ``simple_roots`` are ordered
    along the Coxeter path, so ``cartan_matrix`` is exactly the standard
    type-A tridiagonal matrix.
    """

    rank: int
    index_set: Tuple[int, ...]
    roots: Tuple[Root, ...]
    simple_roots: Tuple[Root, ...]
    cartan_matrix: Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class RootSystem:
    polytope: DelzantPolytope
    roots: Tuple[Root, ...]
    factors: Tuple[IrreducibleFactor, ...]

    def cartan_table(self) -> Tuple[Tuple[int, ...], ...]:
        """Full pairing table; entry [b][a] is the integer linking root b to
        the reflection of root a."""
        P = self.polytope
        return tuple(
            tuple(cartan(P, a, b) for a in self.roots) for b in self.roots
        )


@dataclass(frozen=True)
class WeylElement:
    """Group element with its action on covectors and the dual action on
    vectors (both as matrices applied to column tuples); the word lists
    indices into the canonical root order."""

    cov_matrix: Tuple[Tuple[int, ...], ...]
    vec_matrix: Tuple[Tuple[int, ...], ...]
    word: Tuple[int, ...]

    def apply_covector(self, beta: Sequence[int]) -> IntVector:
        return mat_vec(self.cov_matrix, beta)

    def apply_vector(self, v: Sequence[int]) -> IntVector:
        return mat_vec(self.vec_matrix, v)


def bilinear(P: DelzantPolytope, beta: Sequence[int], gamma: Sequence[int]) -> int:
    """Symmetric scalar product: sum over facets of <beta, v><gamma, v>."""
    return sum(dot(beta, v) * dot(gamma, v) for v in P.normals)


def reflect(P: DelzantPolytope, root: Root, beta: Sequence[int]) -> IntVector:
    """Reflection of the covector beta through root: beta minus
    (<beta, v_i> - <beta, v_j>) * alpha."""
    c = P.pairing(beta, root.i) - P.pairing(beta, root.j)
    return tuple(b - c * a for b, a in zip(beta, root.alpha))


def cartan(P: DelzantPolytope, alpha: Root, beta: Root) -> int:
    """Cartan integer of beta against alpha: <beta, v_i> - <beta, v_j>
    evaluated on alpha's witness pair. Equals bilinear(alpha, beta)."""
    a = P.pairing(beta.alpha, alpha.i) - P.pairing(beta.alpha, alpha.j)
    assert a == bilinear(P, alpha.alpha, beta.alpha)
    return a


def reflection_matrix(P: DelzantPolytope, root: Root) -> IntMatrix:
    """Matrix M with M v = v - <alpha, v>(v_i - v_j) on vectors.

    The same M acts on covectors from the right (equivalently M-transpose
    on covector columns); the two actions are adjoint for the pairing.
    """
    vi, vj = P.normals[root.i], P.normals[root.j]
    diff = [a - b for a, b in zip(vi, vj)]
    n = P.n
    return [
        [(1 if r == c else 0) - diff[r] * root.alpha[c] for c in range(n)]
        for r in range(n)
    ]


def compute_roots(P: DelzantPolytope) -> Tuple[Root, ...]:
    """Scan all ordered facet pairs (i, j) for roots.

    Any root takes the value pattern (+1 at i, -1 at j, 0 elsewhere), so
    solving the linear system per pair and keeping integral solutions is
    exhaustive. Canonical order is lexicographic in (i, j).
    """
    V = P.normal_matrix()
    out: List[Root] = []
    for i in range(P.m):
        for j in range(P.m):
            if i == j:
                continue
            target = [0] * P.m
            target[i] = 1
            target[j] = -1
            alpha = solve_covector(V, target)
            if alpha is None:
                continue
            if all(x.denominator == 1 for x in alpha):
                out.append(Root(alpha=tuple(int(x) for x in alpha), i=i, j=j))
    roots = tuple(out)
    _assert_root_axioms(P, roots)
    return roots


def _assert_root_axioms(P: DelzantPolytope, roots: Tuple[Root, ...]) -> None:
    alphas = {r.alpha for r in roots}
    for r in roots:
        for k in range(P.m):
            want = 1 if k == r.i else -1 if k == r.j else 0
            assert P.pairing(r.alpha, k) == want, "root value pattern broken"
        neg = tuple(-x for x in r.alpha)
        assert neg in alphas, "root set not closed under negation"
        for s in roots:
            assert reflect(P, r, s.alpha) in alphas, "root set not closed under reflection"


def _type_a_matrix(rank_: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(
        tuple(2 if a == b else -1 if abs(a - b) == 1 else 0 for b in range(rank_))
        for a in range(rank_)
    )


def _certify_factor(
    P: DelzantPolytope, factor_roots: Tuple[Root, ...]
) -> IrreducibleFactor:
    """Select simple roots, order them along the Coxeter path, and certify
    the factor as type A. Failure is a hard internal error."""
    index_set = tuple(sorted({k for r in factor_roots for k in (r.i, r.j)}))
    r_count = len(index_set)

    def fail(why: str):
        raise InternalInvariantError(
            f"type-A certification failed for polytope {P.name or P.normals}: "
            f"{why}; factor roots {[(x.alpha, x.i, x.j) for x in factor_roots]}"
        )

    if len(factor_roots) != r_count * (r_count - 1):
        fail(f"{len(factor_roots)} roots on {r_count} facet indices")
    witness = {(r.i, r.j) for r in factor_roots}
    for a in index_set:
        for b in index_set:
            if a != b and (a, b) not in witness:
                fail(f"no root with witness pair ({a}, {b})")

    # positive roots under the index functional sum_l l*<alpha, v_l> = i - j
    positive = [r for r in factor_roots if r.i > r.j]
    pos_alphas = {r.alpha for r in positive}
    simple = [
        r
        for r in positive
        if not any(
            q != r.alpha and tuple(x - y for x, y in zip(r.alpha, q)) in pos_alphas
            for q in pos_alphas
        )
    ]
    if len(simple) != r_count - 1:
        fail(f"{len(simple)} simple roots, expected {r_count - 1}")

    k = len(simple)
    pair = [[cartan(P, simple[a], simple[b]) for b in range(k)] for a in range(k)]
    for a in range(k):
        if pair[a][a] != 2:
            fail("Cartan diagonal entry is not 2")
        for b in range(k):
            if pair[a][b] != pair[b][a]:
                fail("Cartan matrix not symmetric")
            if a != b and pair[a][b] not in (0, -1):
                fail(f"off-diagonal Cartan entry {pair[a][b]}")
    neighbors = {a: [b for b in range(k) if b != a and pair[a][b] != 0] for a in range(k)}
    if any(len(nb) > 2 for nb in neighbors.values()):
        fail("Coxeter graph has a branch point")
    edges = sum(len(nb) for nb in neighbors.values()) // 2
    if edges != k - 1:
        fail("Coxeter graph is not a tree")
    ends = sorted(a for a in range(k) if len(neighbors[a]) <= 1)
    if k == 1:
        order = [0]
    else:
        if len(ends) != 2:
            fail("Coxeter graph is not a path")
        start = min(ends, key=lambda a: (simple[a].i, simple[a].j))
        order = [start]
        while len(order) < k:
            nxt = [b for b in neighbors[order[-1]] if b not in order]
            if len(nxt) != 1:
                fail("Coxeter graph is not connected")
            order.append(nxt[0])
    ordered = tuple(simple[a] for a in order)
    cart = tuple(
        tuple(cartan(P, ordered[a], ordered[b]) for b in range(k)) for a in range(k)
    )
    if cart != _type_a_matrix(k):
        fail("ordered Cartan matrix is not the standard type-A matrix")
    return IrreducibleFactor(
        rank=k,
        index_set=index_set,
        roots=factor_roots,
        simple_roots=ordered,
        cartan_matrix=cart,
    )


def decompose(P: DelzantPolytope, roots: Tuple[Root, ...]) -> Tuple[IrreducibleFactor, ...]:
    """Split the root set into irreducible factors and certify each."""
    class_of: Dict[IntVector, int] = {}
    reps: List[Root] = []
    for r in roots:
        if r.alpha in class_of:
            continue
        idx = len(reps)
        class_of[r.alpha] = idx
        class_of[tuple(-x for x in r.alpha)] = idx
        reps.append(r)
    adj = {
        a: [
            b
            for b in range(len(reps))
            if b != a and bilinear(P, reps[a].alpha, reps[b].alpha) != 0
        ]
        for a in range(len(reps))
    }
    seen: set[int] = set()
    factors: List[IrreducibleFactor] = []
    for a in range(len(reps)):
        if a in seen:
            continue
        comp = {a}
        stack = [a]
        while stack:
            cur = stack.pop()
            for b in adj[cur]:
                if b not in comp:
                    comp.add(b)
                    stack.append(b)
        seen |= comp
        froots = tuple(r for r in roots if class_of[r.alpha] in comp)
        factors.append(_certify_factor(P, froots))
    factors.sort(key=lambda f: f.index_set)
    return tuple(factors)


def compute_root_system(P: DelzantPolytope) -> RootSystem:
    roots = compute_roots(P)
    return RootSystem(polytope=P, roots=roots, factors=decompose(P, roots))


def weyl_order(R: RootSystem) -> int:
    """Order of the Weyl group: product of (rank + 1)! over the factors."""
    out = 1
    for f in R.factors:
        out *= factorial(f.rank + 1)
    return out


def weyl_order_formula(R: RootSystem) -> str:
    if not R.factors:
        return "1"
    return " * ".join(f"{f.rank + 1}!" for f in R.factors)


def weyl_group(R: RootSystem, cap: int = DEFAULT_WEYL_CAP) -> List[WeylElement]:
    """Enumerate the full Weyl group by closure under simple reflections.

    Refuses with WeylOrderCapExceeded when the group order (known in
    advance from the factor ranks) exceeds ``cap``. Elements come back in
    a deterministic order with a generator word each.
    """
    order = weyl_order(R)
    if order > cap:
        raise WeylOrderCapExceeded(order, weyl_order_formula(R), cap)
    P = R.polytope
    n = P.n
    root_index = {(r.i, r.j): k for k, r in enumerate(R.roots)}
    gens: List[Tuple[int, Tuple[Tuple[int, ...], ...], Tuple[Tuple[int, ...], ...]]] = []
    for f in R.factors:
        for s in f.simple_roots:
            M = reflection_matrix(P, s)
            vec = tuple(tuple(row) for row in M)
            cov = tuple(tuple(row) for row in zip(*M))
            gens.append((root_index[(s.i, s.j)], cov, vec))
    ident = tuple(tuple(row) for row in identity_matrix(n))
    elements: Dict[Tuple[Tuple[int, ...], ...], WeylElement] = {
        ident: WeylElement(cov_matrix=ident, vec_matrix=ident, word=())
    }
    frontier = [elements[ident]]
    while frontier:
        new: List[WeylElement] = []
        for el in frontier:
            for gidx, gcov, gvec in gens:
                cov = tuple(tuple(row) for row in mat_mul(el.cov_matrix, gcov))
                if cov in elements:
                    continue
                vec = tuple(tuple(row) for row in mat_mul(el.vec_matrix, gvec))
                w = WeylElement(cov_matrix=cov, vec_matrix=vec, word=el.word + (gidx,))
                elements[cov] = w
                new.append(w)
        frontier = new
    out = sorted(elements.values(), key=lambda e: e.cov_matrix)
    assert len(out) == order, "enumerated Weyl group has unexpected order"
    normal_set = set(P.normals)
    for el in out:
        for v in P.normals:
            assert el.apply_vector(v) in normal_set, "dual action must permute the normals"
    return out
