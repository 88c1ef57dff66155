"""Delzant moment polytopes: validation, vertex enumeration, face combinatorics.

A polytope is described by inward primitive integer facet normals v_i and
rational offsets a_i, as the solution set of <u, v_i> >= a_i. The Delzant
conditions are checked exactly: bounded, full-dimensional, no redundant
inequality, simple, and the n normals meeting at each vertex form a basis
of Z^n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations
from math import comb, gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import (
    IntVector,
    RatVector,
    det,
    dot,
    integer_kernel_basis,
    rank,
    solve_exact,
)


class ParseError(Exception):
    """The input document is not a well-formed polytope description."""


@dataclass(frozen=True)
class Violation:
    """One failed Delzant condition; ``facets`` are 0-based indices."""

    kind: str
    message: str
    facets: Tuple[int, ...] = ()
    determinant: Optional[int] = None


class ValidationError(Exception):
    """Raised by validate(); carries every detected violation."""

    def __init__(self, violations: Sequence[Violation]):
        self.violations = tuple(violations)
        super().__init__(
            "invalid polytope: " + "; ".join(v.message for v in self.violations)
        )


@dataclass(frozen=True)
class DelzantPolytope:
    """A validated non-singular moment polytope. Construct via validate()."""

    n: int
    normals: Tuple[IntVector, ...]
    offsets: Tuple[Fraction, ...]
    name: Optional[str] = None

    @property
    def m(self) -> int:
        return len(self.normals)

    def normal_matrix(self) -> List[List[int]]:
        """The n x m matrix whose columns are the facet normals."""
        return [[v[k] for v in self.normals] for k in range(self.n)]

    def pairing(self, u: Sequence, i: int):
        """<u, v_i> for a covector u."""
        return dot(u, self.normals[i])


@dataclass(frozen=True)
class FaceStructure:
    """Vertices (active set, coordinates), minimal nonfaces, and f-vector."""

    vertices: Tuple[Tuple[Tuple[int, ...], RatVector], ...]
    minimal_nonfaces: Tuple[Tuple[int, ...], ...]
    f_vector: Tuple[int, ...]


def _is_primitive(v: Sequence[int]) -> bool:
    return reduce(gcd, (abs(x) for x in v), 0) == 1


def _vertex_candidates(
    n: int, normals: Sequence[IntVector], offsets: Sequence[Fraction]
) -> Dict[RatVector, Tuple[int, ...]]:
    """All vertices of {u : <u, v_i> >= a_i}, as point -> full active set.

    Brute force over n-subsets of facets with invertible normal matrix;
    a solution is kept iff it satisfies every inequality.
    """
    m = len(normals)
    found: Dict[RatVector, Tuple[int, ...]] = {}
    for subset in combinations(range(m), n):
        rows = [normals[i] for i in subset]
        if det(rows) == 0:
            continue
        point = solve_exact(rows, [offsets[i] for i in subset])
        assert point is not None
        if point in found:
            continue
        values = [dot(point, normals[k]) for k in range(m)]
        if all(val >= offsets[k] for k, val in enumerate(values)):
            active = tuple(k for k, val in enumerate(values) if val == offsets[k])
            found[point] = active
    return found


def _recession_ray(
    n: int, normals: Sequence[IntVector]
) -> Optional[IntVector]:
    """A nonzero integer covector u with <u, v_i> >= 0 for all i, if any.

    The polytope is bounded iff no such direction exists. A line in the
    recession cone shows up as a kernel vector of the full normal set; an
    extreme ray is found on some (n-1)-subset of linearly independent
    normals.
    """
    if rank(list(normals)) < n:
        line = integer_kernel_basis([list(v) for v in normals], width=n)[0]
        return line
    for subset in combinations(range(len(normals)), n - 1):
        rows = [list(normals[i]) for i in subset]
        kern = integer_kernel_basis(rows, width=n)
        if len(kern) != 1:
            continue
        w = kern[0]
        for cand in (w, tuple(-x for x in w)):
            if all(dot(cand, v) >= 0 for v in normals):
                return cand
    return None


def check_delzant(
    n: int, normals: Sequence[IntVector], offsets: Sequence[Fraction]
) -> List[Violation]:
    """Collect every violated Delzant condition (empty list means valid)."""
    violations: List[Violation] = []
    m = len(normals)
    for i, v in enumerate(normals):
        if not _is_primitive(v):
            violations.append(
                Violation(
                    kind="nonprimitive_normal",
                    message=f"normal of facet {i + 1} is not primitive "
                    f"(entry gcd is not 1): {tuple(v)}",
                    facets=(i,),
                )
            )
    ray = _recession_ray(n, normals)
    if ray is not None:
        violations.append(
            Violation(
                kind="unbounded",
                message="the inequality system is unbounded: direction "
                f"{ray} satisfies every <u, v_i> >= 0; the normals must "
                "positively span the whole space",
            )
        )
        return violations

    verts = _vertex_candidates(n, normals, offsets)
    if not verts:
        violations.append(
            Violation(kind="empty", message="the inequality system has no vertex "
                      "(empty polytope)")
        )
        return violations
    points = sorted(verts)
    base = points[0]
    if rank([[x - y for x, y in zip(p, base)] for p in points[1:]]) < n:
        violations.append(
            Violation(
                kind="not_full_dimensional",
                message="the polytope is not full-dimensional "
                "(all vertices lie in a proper affine subspace)",
            )
        )

    for point in points:
        active = verts[point]
        if len(active) != n:
            violations.append(
                Violation(
                    kind="nonsimple_vertex",
                    message=f"vertex {point} lies on {len(active)} facets "
                    f"{tuple(i + 1 for i in active)}; a simple polytope "
                    f"allows exactly {n}",
                    facets=active,
                )
            )
            continue
        d = det([normals[i] for i in active])
        if d not in (1, -1):
            violations.append(
                Violation(
                    kind="nonunimodular_vertex",
                    message=f"normals at vertex {point} (facets "
                    f"{tuple(i + 1 for i in active)}) have determinant {d}; "
                    "they must form a basis of Z^n",
                    facets=active,
                    determinant=d,
                )
            )

    point_set = set(points)
    for i in range(m):
        touched = any(i in verts[p] for p in points)
        if touched:
            reduced = _vertex_candidates(
                n,
                [v for k, v in enumerate(normals) if k != i],
                [a for k, a in enumerate(offsets) if k != i],
            )
            redundant = set(reduced) == point_set
        else:
            redundant = True
        if redundant:
            violations.append(
                Violation(
                    kind="redundant_inequality",
                    message=f"inequality {i + 1} is redundant: removing it "
                    "does not change the polytope",
                    facets=(i,),
                )
            )
    return violations


def validate(
    n: int,
    normals: Sequence[Sequence[int]],
    offsets: Sequence,
    name: Optional[str] = None,
) -> DelzantPolytope:
    """Check all Delzant conditions; return the polytope or raise.

    The raised ValidationError lists every violated condition, not just the
    first one found.
    """
    if n < 1:
        raise ParseError("dimension must be at least 1")
    if len(normals) != len(offsets):
        raise ParseError("normals and offsets must have equal length")
    norm_t = tuple(tuple(int(x) for x in v) for v in normals)
    if any(len(v) != n for v in norm_t):
        raise ParseError(f"every normal must have {n} entries")
    off_t = tuple(Fraction(a) for a in offsets)
    violations = check_delzant(n, norm_t, off_t)
    if violations:
        raise ValidationError(violations)
    return DelzantPolytope(n=n, normals=norm_t, offsets=off_t, name=name)


@lru_cache(maxsize=None)
def face_structure(P: DelzantPolytope) -> FaceStructure:
    """Vertices, minimal nonfaces, and f-vector of a validated polytope."""
    verts = _vertex_candidates(P.n, P.normals, P.offsets)
    vertices = tuple(
        sorted((tuple(sorted(active)), point) for point, active in verts.items())
    )
    # simplicity was certified by validate(); re-assert cheaply
    assert all(len(active) == P.n for active, _ in vertices)
    active_sets = [frozenset(active) for active, _ in vertices]
    assert all(
        any(i in a for a in active_sets) for i in range(P.m)
    ), "every facet must carry a vertex"

    faces = {frozenset()}
    for a in active_sets:
        for k in range(1, P.n + 1):
            faces.update(map(frozenset, combinations(sorted(a), k)))

    nonfaces: List[Tuple[int, ...]] = []
    for k in range(1, P.n + 2):
        for subset in combinations(range(P.m), k):
            s = frozenset(subset)
            if s in faces:
                continue
            if all(s - {i} in faces for i in subset):
                nonfaces.append(subset)

    sizes = [0] * (P.n + 1)
    for f in faces:
        sizes[len(f)] += 1
    f_vector = tuple(sizes[P.n - d] for d in range(P.n))
    return FaceStructure(
        vertices=vertices,
        minimal_nonfaces=tuple(sorted(nonfaces)),
        f_vector=f_vector,
    )


def h_vector(P: DelzantPolytope) -> Tuple[int, ...]:
    """h-vector of the simple polytope; entry k is the rank of H^{2k}(M)."""
    fs = face_structure(P)
    n = P.n
    # face counts of the dual simplicial complex, indexed by vertex count
    fk = [1] + [fs.f_vector[n - i] for i in range(1, n + 1)]
    h = []
    for k in range(n + 1):
        h.append(sum((-1) ** (k - i) * comb(n - i, k - i) * fk[i] for i in range(k + 1)))
    assert all(x >= 0 for x in h)
    return tuple(h)


def product(P: DelzantPolytope, Q: DelzantPolytope) -> DelzantPolytope:
    """Cartesian product, with block-concatenated normals and offsets."""
    normals = [tuple(v) + (0,) * Q.n for v in P.normals]
    normals += [(0,) * P.n + tuple(w) for w in Q.normals]
    offsets = list(P.offsets) + list(Q.offsets)
    name = None
    if P.name and Q.name:
        name = f"{P.name} x {Q.name}"
    return validate(P.n + Q.n, normals, offsets, name=name)


# ---------------------------------------------------------------------------
# interchange format: {"n": int, "normals": [[int,...],...],
#                      "offsets": [int or "p/q", ...], "name": optional str}
# Facet order in the document is the canonical index order everywhere.
# ---------------------------------------------------------------------------

def offset_to_document(a: Fraction):
    return int(a) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def to_document(P: DelzantPolytope) -> dict:
    doc = {
        "n": P.n,
        "normals": [list(v) for v in P.normals],
        "offsets": [offset_to_document(a) for a in P.offsets],
    }
    if P.name is not None:
        doc["name"] = P.name
    return doc


def parse_document(doc) -> DelzantPolytope:
    """Parse and validate an input document (raises ParseError on shape)."""
    if not isinstance(doc, dict):
        raise ParseError("top-level document must be an object")
    for key in ("n", "normals", "offsets"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("field 'n' must be a positive integer")
    normals = doc["normals"]
    offsets = doc["offsets"]
    if not isinstance(normals, list) or not isinstance(offsets, list):
        raise ParseError("'normals' and 'offsets' must be lists")
    if len(normals) != len(offsets):
        raise ParseError("'normals' and 'offsets' must have equal length")
    parsed_normals = []
    for v in normals:
        if (
            not isinstance(v, list)
            or len(v) != n
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in v)
        ):
            raise ParseError(f"normal {v!r} is not a list of {n} integers")
        parsed_normals.append(tuple(v))
    parsed_offsets = []
    for a in offsets:
        if isinstance(a, bool) or not isinstance(a, (int, str)):
            raise ParseError(f"offset {a!r} must be an integer or a 'p/q' string")
        try:
            parsed_offsets.append(Fraction(a))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"offset {a!r} is not a rational number") from exc
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError("'name' must be a string when present")
    return validate(n, parsed_normals, parsed_offsets, name=name)


def load_file(path) -> DelzantPolytope:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc
    return parse_document(doc)
