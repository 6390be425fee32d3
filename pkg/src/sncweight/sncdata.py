"""Combinatorial data of a compactification with very simple normal crossing boundary.

A datum records, for a smooth variety X of dimension d compactified with
boundary components Y_1, ..., Y_n, which intersections Y_I are nonempty,
the integral cohomology of each nonempty closed stratum (including the
total space for I empty), and the pullback restriction maps from the
cohomology of Y_(I minus i) to the cohomology of Y_I.  Subsets are kept
as sorted 1-indexed tuples; absent subsets mean empty strata; absent
cohomology degrees mean zero groups; restriction matrices into or out of
a zero group may be omitted and are implied zero.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from .abgroup import FgAbGroup, FpAbHom, FpAbPresentation, canonical_form
from .intmat import IntMatrix
from .reports import Report

__all__ = [
    "SubsetKey",
    "StratumData",
    "SncDatum",
    "StrataLevel",
    "InvalidDatumError",
    "validate",
    "validate_structure",
    "strata_level",
    "level_differential",
    "require_valid",
]

SubsetKey = tuple[int, ...]


class InvalidDatumError(ValueError):
    """Raised when an operation requires a datum that fails validation."""

    def __init__(self, report: Report):
        self.report = report
        super().__init__("invalid compactification datum:\n" + report.render())


def _fmt(I: SubsetKey) -> str:
    return "{" + ",".join(str(i) for i in I) + "}"


@dataclass(frozen=True)
class StratumData:
    """Graded cohomology of one nonempty stratum plus its incoming restrictions.

    restrictions[i][b] is the matrix of the degree-b pullback from the
    stratum indexed by I minus {i} to this stratum (I the key under which
    this value is stored).
    """

    cohomology: Mapping[int, FpAbPresentation]
    restrictions: Mapping[int, Mapping[int, IntMatrix]]


@dataclass(frozen=True)
class SncDatum:
    dim: int
    n_components: int
    strata: Mapping[SubsetKey, StratumData]

    def __post_init__(self):
        for I in self.strata:
            if list(I) != sorted(set(I)):
                raise ValueError(f"subset key {I} is not a sorted duplicate-free tuple")

    def is_nonempty(self, I: SubsetKey) -> bool:
        return tuple(I) in self.strata

    def nonempty_subsets(self) -> list[SubsetKey]:
        return sorted(self.strata, key=lambda I: (len(I), I))

    def cohomology_of(self, I: SubsetKey, b: int) -> FpAbPresentation:
        stratum = self.strata.get(tuple(I))
        if stratum is None:
            return FpAbPresentation.zero()
        return stratum.cohomology.get(b, FpAbPresentation.zero())

    def graded_degrees(self) -> list[int]:
        """Sorted degrees in which some nonempty stratum has generators."""
        degrees = set()
        for stratum in self.strata.values():
            for b, p in stratum.cohomology.items():
                if p.generators:
                    degrees.add(b)
        return sorted(degrees)

    def restriction_matrix(self, I: SubsetKey, i: int, b: int) -> IntMatrix:
        """Matrix of the degree-b pullback from Y_(I minus i) into Y_I; implied zero."""
        I = tuple(I)
        if i not in I:
            raise KeyError(f"component {i} is not in {_fmt(I)}")
        target = self.cohomology_of(I, b)
        source = self.cohomology_of(tuple(x for x in I if x != i), b)
        stratum = self.strata.get(I)
        if stratum is not None:
            stored = stratum.restrictions.get(i, {}).get(b)
            if stored is not None:
                return stored
        return IntMatrix.zeros(target.generators, source.generators)

    def restriction_hom(self, I: SubsetKey, i: int, b: int) -> FpAbHom:
        I = tuple(I)
        source = self.cohomology_of(tuple(x for x in I if x != i), b)
        target = self.cohomology_of(I, b)
        return FpAbHom(source, target, self.restriction_matrix(I, i, b))


@dataclass(frozen=True)
class StrataLevel:
    """All nonempty strata of a fixed codimension, in lexicographic subset order."""

    k: int
    blocks: tuple[tuple[SubsetKey, Mapping[int, FpAbPresentation]], ...]

    def group(self, b: int) -> FpAbPresentation:
        return FpAbPresentation.direct_sum(
            [coh.get(b, FpAbPresentation.zero()) for _, coh in self.blocks]
        )


def validate(s: SncDatum) -> Report:
    """Check every invariant; the report enumerates violations."""
    return _validate(s, coherence=True)


def validate_structure(s: SncDatum) -> Report:
    """Shape-level checks only: everything except the commuting squares.

    Structurally sound data can still be mathematically inconsistent;
    this tier is what diagnostic tooling needs before it can even build
    the level differentials.
    """
    return _validate(s, coherence=False)


def _validate(s: SncDatum, coherence: bool) -> Report:
    problems: list[str] = []
    n = s.n_components

    if () not in s.strata:
        problems.append("the empty subset (the total space) is missing")

    for I in s.nonempty_subsets():
        if any(i < 1 or i > n for i in I):
            problems.append(f"subset {_fmt(I)} uses component indices outside 1..{n}")
            continue
        if not I:
            continue
        for J in combinations(I, len(I) - 1):
            if not s.is_nonempty(J):
                problems.append(
                    f"downward closure: Y_{_fmt(I)} is nonempty but Y_{_fmt(J)} is empty"
                )

    for I in s.nonempty_subsets():
        stratum = s.strata[I]
        bound = 2 * (s.dim - len(I))
        h0 = stratum.cohomology.get(0)
        if h0 is None or canonical_form(h0) != FgAbGroup.free(1):
            problems.append(f"stratum {_fmt(I)}: degree-0 cohomology is not Z")
        for b, p in stratum.cohomology.items():
            if b < 0:
                problems.append(f"stratum {_fmt(I)}: negative cohomology degree {b}")
            elif b > bound and not canonical_form(p).is_zero:
                problems.append(
                    f"stratum {_fmt(I)}: nonzero cohomology in degree {b} above bound {bound}"
                )

        for i, per_degree in stratum.restrictions.items():
            if i not in I:
                problems.append(f"stratum {_fmt(I)}: restriction keyed by {i} not in the subset")
                continue
            J = tuple(x for x in I if x != i)
            for b, mat in per_degree.items():
                target = s.cohomology_of(I, b)
                source = s.cohomology_of(J, b)
                if mat.shape != (target.generators, source.generators):
                    problems.append(
                        f"stratum {_fmt(I)}: restriction from {_fmt(J)} in degree {b} "
                        f"has shape {mat.shape}, expected "
                        f"({target.generators}, {source.generators})"
                    )

    # The remaining checks need consistent shapes, so skip them if broken.
    if problems:
        return Report("validate", False, tuple(problems))

    for I in s.nonempty_subsets():
        stratum = s.strata[I]
        for i in I:
            J = tuple(x for x in I if x != i)
            for b in sorted(set(s.strata[J].cohomology) | set(stratum.cohomology)):
                source = s.cohomology_of(J, b)
                target = s.cohomology_of(I, b)
                stored = stratum.restrictions.get(i, {}).get(b)
                if stored is None and source.generators and target.generators:
                    problems.append(
                        f"stratum {_fmt(I)}: missing restriction matrix from {_fmt(J)} "
                        f"in degree {b}"
                    )
                    continue
                hom = s.restriction_hom(I, i, b)
                if not hom.is_well_defined():
                    problems.append(
                        f"stratum {_fmt(I)}: restriction from {_fmt(J)} in degree {b} "
                        "is not well defined on the presentations"
                    )

    if not coherence:
        return Report("validate", not problems, tuple(problems))

    for I in s.nonempty_subsets():
        if len(I) < 2:
            continue
        for i, j in combinations(I, 2):
            Ii = tuple(x for x in I if x != i)
            Ij = tuple(x for x in I if x != j)
            J = tuple(x for x in I if x != i and x != j)
            degrees = set(s.strata[J].cohomology) | set(s.strata[I].cohomology)
            for b in sorted(degrees):
                via_i = s.restriction_hom(I, i, b).compose(s.restriction_hom(Ii, j, b))
                via_j = s.restriction_hom(I, j, b).compose(s.restriction_hom(Ij, i, b))
                if not (via_i - via_j).is_zero_hom():
                    problems.append(
                        f"commuting squares: paths {_fmt(J)} -> {_fmt(Ii)} -> {_fmt(I)} and "
                        f"{_fmt(J)} -> {_fmt(Ij)} -> {_fmt(I)} differ in degree {b}"
                    )

    return Report("validate", not problems, tuple(problems))


def require_valid(s: SncDatum) -> None:
    rep = validate(s)
    if not rep.passed:
        raise InvalidDatumError(rep)


def strata_level(s: SncDatum, k: int) -> StrataLevel:
    """Nonempty strata with |I| = k in lexicographic order (empty above dim)."""
    blocks = tuple(
        (I, s.strata[I].cohomology)
        for I in sorted(s.strata)
        if len(I) == k
    )
    return StrataLevel(k, blocks)


def level_differential(s: SncDatum, k: int, b: int) -> FpAbHom:
    """Signed block matrix of pullbacks from codimension k-1 to codimension k.

    The block from Y_(I minus i_j) into Y_I carries the sign (-1)^(j-1),
    where i_j is the j-th smallest element of I.
    """
    if k < 1:
        raise ValueError("level differentials start at k = 1")
    src = strata_level(s, k - 1)
    tgt = strata_level(s, k)
    src_group = src.group(b)
    tgt_group = tgt.group(b)

    src_offsets = {}
    pos = 0
    for I, coh in src.blocks:
        src_offsets[I] = pos
        pos += coh.get(b, FpAbPresentation.zero()).generators

    data = [0] * (tgt_group.generators * src_group.generators)
    width = src_group.generators
    row0 = 0
    for I, coh in tgt.blocks:
        height = coh.get(b, FpAbPresentation.zero()).generators
        for j, i in enumerate(I):
            J = tuple(x for x in I if x != i)
            if J not in src_offsets:
                continue
            sign = -1 if j % 2 else 1
            mat = s.restriction_matrix(I, i, b)
            col0 = src_offsets[J]
            for r in range(mat.rows):
                base = (row0 + r) * width + col0
                row = mat.row(r)
                for c in range(mat.cols):
                    if row[c]:
                        data[base + c] += sign * row[c]
        row0 += height

    return FpAbHom(src_group, tgt_group, IntMatrix(tgt_group.generators, width, data))
