"""Exact reduced simplicial homology and the Gorenstein criterion.

Betti numbers come from exact ranks of boundary matrices: fraction-free
elimination over the rationals, modular elimination over prime fields.
The Gorenstein verdict for a Stanley-Reisner ring checks that the complex
and all of its face links have the reduced homology of spheres of the
correct dimension and that no vertex's star swallows the whole complex.
"""

from dataclasses import dataclass, field as dataclass_field

from .complexes import SimplicialComplex
from .errors import InputError
from .exactlin import rank_int_bareiss, rank_mod_p
from .fields import PrimeField, QQ


@dataclass(frozen=True)
class BettiTable:
    """Reduced Betti numbers indexed from the given offset (usually -1)."""

    field_name: str
    offset: int
    ranks: tuple

    def rank(self, degree: int) -> int:
        idx = degree - self.offset
        if 0 <= idx < len(self.ranks):
            return self.ranks[idx]
        return 0

    def degrees(self):
        return range(self.offset, self.offset + len(self.ranks))

    def to_json(self) -> dict:
        return {str(d): self.rank(d) for d in self.degrees()}


def _boundary_matrix(cx: SimplicialComplex, dim: int):
    """Matrix of the boundary map from dim-faces to (dim-1)-faces.

    Rows are indexed by (dim-1)-faces, columns by dim-faces; the reduced
    complex includes the empty face in degree -1, so the degree-0 boundary
    is the augmentation.
    """
    top = cx.faces_of_dim(dim)
    bottom = cx.faces_of_dim(dim - 1)
    index = {f: i for i, f in enumerate(bottom)}
    matrix = [[0] * len(top) for _ in bottom]
    for col, face in enumerate(top):
        verts = sorted(face)
        for drop, v in enumerate(verts):
            sub = frozenset(verts) - {v}
            matrix[index[sub]][col] = (-1) ** drop
    return matrix


def _rank(matrix, coeff_field) -> int:
    if not matrix or not matrix[0]:
        return 0
    if isinstance(coeff_field, PrimeField):
        return rank_mod_p(matrix, coeff_field.p)
    return rank_int_bareiss(matrix)


def reduced_homology(cx: SimplicialComplex, coeff_field=QQ) -> BettiTable:
    """Reduced Betti numbers in degrees -1..dim(cx).

    The complex with only the empty face is the (-1)-sphere: a single unit
    in degree -1.  The void complex is rejected.
    """
    if cx.is_void:
        raise InputError("homology of the void complex is undefined")
    d = cx.dim()
    ranks = []
    boundary_rank = {}
    for j in range(-1, d + 2):
        boundary_rank[j] = _rank(_boundary_matrix(cx, j), coeff_field)
    for j in range(-1, d + 1):
        n_faces = len(cx.faces_of_dim(j))
        kernel = n_faces - boundary_rank[j]
        ranks.append(kernel - boundary_rank[j + 1])
    return BettiTable(coeff_field.name, -1, tuple(ranks))


def local_homology_at_face(cx: SimplicialComplex, face, coeff_field=QQ) -> BettiTable:
    """Local homology at an interior point of a nonempty face.

    For a face of dimension j this is the reduced homology of its link
    shifted up by j+1.  A facet has the empty-set link, whose single unit in
    degree -1 lands in degree j: the boundary point of a j-ball convention.
    """
    face = frozenset(face)
    if not face:
        raise InputError("local homology needs a nonempty face")
    if face not in cx.faces:
        raise InputError(f"{sorted(face)} is not a face")
    j = len(face) - 1
    link_h = reduced_homology(cx.link(face), coeff_field)
    return BettiTable(coeff_field.name, link_h.offset + j + 1, link_h.ranks)


def _sphere_failures(table: BettiTable, d: int, where) -> list:
    """Witnesses against 'reduced homology of a d-sphere'."""
    failures = []
    degrees = set(table.degrees()) | {d}
    for deg in sorted(degrees):
        expected = 1 if deg == d else 0
        found = table.rank(deg)
        if found != expected:
            failures.append((where, f"b~_{deg} = {expected}", f"b~_{deg} = {found}"))
    return failures


@dataclass(frozen=True)
class GorensteinReport:
    verdict: bool
    dimension: int
    failures: list = dataclass_field(default_factory=list)
    core_equals_whole: bool = True

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "dimension": self.dimension,
            "coreEqualsWhole": self.core_equals_whole,
            "failures": [
                {"face": sorted(face), "expected": exp, "found": found}
                for face, exp, found in self.failures
            ],
        }


def is_rational_homology_sphere(cx: SimplicialComplex, coeff_field=QQ) -> bool:
    """Global condition: the reduced homology of a dim(cx)-sphere."""
    if cx.is_void:
        raise InputError("the void complex has no homology")
    return not _sphere_failures(reduced_homology(cx, coeff_field), cx.dim(), frozenset())


def is_rational_homology_manifold(cx: SimplicialComplex, coeff_field=QQ) -> bool:
    """Local condition at every nonempty face: link homology of the right sphere."""
    return not _manifold_failures(cx, coeff_field)


def _manifold_failures(cx: SimplicialComplex, coeff_field) -> list:
    if cx.is_void:
        raise InputError("the void complex has no homology")
    d = cx.dim()
    failures = []
    for face in sorted((f for f in cx.faces if f), key=lambda f: (len(f), sorted(f))):
        j = len(face) - 1
        link_h = reduced_homology(cx.link(face), coeff_field)
        failures.extend(_sphere_failures(link_h, d - j - 1, face))
    return failures


def gorenstein_verdict(cx: SimplicialComplex, coeff_field=QQ) -> GorensteinReport:
    """Gorenstein test for the Stanley-Reisner ring of the complex.

    True iff the complex is a rational homology sphere, every face link is a
    rational homology sphere of complementary dimension, and the core equals
    the whole complex.  Every failure is recorded with a witness face.
    """
    if cx.is_void:
        raise InputError("the void complex has no Gorenstein verdict")
    d = cx.dim()
    failures = _sphere_failures(reduced_homology(cx, coeff_field), d, frozenset())
    failures.extend(_manifold_failures(cx, coeff_field))
    core_ok = cx.core() == cx
    return GorensteinReport(
        verdict=(not failures) and core_ok,
        dimension=d,
        failures=failures,
        core_equals_whole=core_ok,
    )
