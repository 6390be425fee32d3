"""Weight cochain complexes and the bigraded weight cohomology table.

For each cohomological degree b, the boundary strata of a compactified
smooth variety assemble into the cochain complex

    H^b(total space) -> H^b(codim-1 strata) -> ... -> H^b(codim-d strata)

whose differential is the signed sum of pullback restrictions.  The
degree-a cohomology of that complex is the bigraded weight cohomology
with compact support in bidegree (a, b); the b = 0 row recovers the
reduced cohomology of the dual boundary complex shifted by one, which is
the central cross-check of this package (computed here along a code path
fully independent of the simplicial one).
"""

from dataclasses import dataclass
from typing import Mapping

from .abgroup import FgAbGroup, FpAbPresentation, canonical_form
from .chain import CochainComplex, FreeTensorError, cohomology
from .dual import (
    edge_path_presentation,
    nerve,
    reduced_cohomology,
    simplify_presentation,
)
from .intmat import IntMatrix
from .reports import Report
from .sncdata import (
    SncDatum,
    StratumData,
    level_differential,
    require_valid,
    strata_level,
)

__all__ = [
    "WeightCochainComplex",
    "BigradedTable",
    "ContractibilityReport",
    "weight_cochain_complex",
    "weight_cohomology_table",
    "check_nerve_identity",
    "product_snc",
    "a1_stability_check",
    "e2_page",
    "degeneration_check",
    "euler_check",
    "contractibility_report",
    "tensor_table",
    "STATUS_CONTRACTIBLE",
    "STATUS_HOMOLOGY_POINT",
    "STATUS_SPHERE",
    "STATUS_OTHER",
]


@dataclass(frozen=True)
class WeightCochainComplex:
    """The strata cochain complex in one cohomological degree b."""

    b: int
    complex: CochainComplex


@dataclass(frozen=True)
class BigradedTable:
    """(a, b) -> group, nonzero entries only; zero outside 0 <= a <= dim."""

    dim: int
    n_components: int
    entries: Mapping[tuple[int, int], FgAbGroup]

    def __post_init__(self):
        for (a, b), g in self.entries.items():
            if g.is_zero:
                raise ValueError(f"zero entry stored at ({a}, {b})")
            if a < 0 or a > self.dim or b < 0:
                raise ValueError(f"entry at ({a}, {b}) outside the allowed range")

    def entry(self, a: int, b: int) -> FgAbGroup:
        return self.entries.get((a, b), FgAbGroup.zero())

    def items_sorted(self) -> list[tuple[tuple[int, int], FgAbGroup]]:
        return sorted(self.entries.items())

    def entries_equal(self, other: "BigradedTable") -> bool:
        return dict(self.entries) == dict(other.entries)

    def rationalized(self) -> "BigradedTable":
        entries = {
            key: FgAbGroup.free(g.free_rank)
            for key, g in self.entries.items()
            if g.free_rank
        }
        return BigradedTable(self.dim, self.n_components, entries)

    def total_rank_in_degree(self, k: int) -> int:
        return sum(g.free_rank for (a, b), g in self.entries.items() if a + b == k)

    def euler_sum(self) -> int:
        return sum(
            (g.free_rank if (a + b) % 2 == 0 else -g.free_rank)
            for (a, b), g in self.entries.items()
        )


def _weight_complex_unchecked(s: SncDatum, b: int) -> WeightCochainComplex:
    groups = [strata_level(s, k).group(b) for k in range(s.dim + 1)]
    diffs = [level_differential(s, k, b) for k in range(1, s.dim + 1)]
    return WeightCochainComplex(b, CochainComplex(0, tuple(groups), tuple(diffs)))


def weight_cochain_complex(s: SncDatum, b: int) -> WeightCochainComplex:
    require_valid(s)
    return _weight_complex_unchecked(s, b)


def weight_cohomology_table(s: SncDatum) -> BigradedTable:
    """Cohomology of every degree-b strata complex, collected as a table."""
    require_valid(s)
    entries: dict[tuple[int, int], FgAbGroup] = {}
    for b in s.graded_degrees():
        for a, g in cohomology(_weight_complex_unchecked(s, b).complex).items():
            entries[(a, b)] = g
    return BigradedTable(s.dim, s.n_components, entries)


def check_nerve_identity(s: SncDatum) -> Report:
    """Reduced nerve cohomology in degree a-1 must equal the table entry (a, 0).

    Both sides are computed along independent code paths: the left from
    the simplicial faces of the nerve, the right from the signed strata
    restriction matrices.
    """
    table = weight_cohomology_table(s)
    nerve_h = reduced_cohomology(nerve(s))
    top = max(
        [s.dim + 1]
        + [a for (a, b) in table.entries if b == 0]
        + [deg + 1 for deg in nerve_h]
    )
    details = []
    passed = True
    for a in range(0, top + 1):
        lhs = nerve_h.get(a - 1, FgAbGroup.zero())
        rhs = table.entry(a, 0)
        ok = lhs == rhs
        passed = passed and ok
        details.append(
            f"{'ok' if ok else 'MISMATCH'} a={a}: nerve H~{a - 1} = {lhs}, table ({a},0) = {rhs}"
        )
    return Report("nerve-identity", passed, tuple(details))


def _require_relation_free(s: SncDatum, who: str) -> None:
    for I in s.nonempty_subsets():
        for b, p in s.strata[I].cohomology.items():
            if not p.is_relation_free:
                raise FreeTensorError(
                    f"{who}: stratum {I} degree {b} carries relations; "
                    "products need free stratum cohomology"
                )


def product_snc(sx: SncDatum, sy: SncDatum) -> SncDatum:
    """The compactified product: strata are pairs, cohomology is the graded tensor.

    Components of the first factor keep their indices; components of the
    second are shifted up by the first factor's count.  Restrictions act
    on one tensor leg and identically on the other.  Requires free
    stratum cohomology on both sides.
    """
    require_valid(sx)
    require_valid(sy)
    _require_relation_free(sx, "left factor")
    _require_relation_free(sy, "right factor")
    nx = sx.n_components

    def tensor_degrees(cx, cy):
        # Ordered graded pieces of the tensor: degree -> [(p, q), ...], p ascending.
        degrees = {}
        for p, gp in sorted(cx.items()):
            for q, gq in sorted(cy.items()):
                if gp.generators and gq.generators:
                    degrees.setdefault(p + q, []).append((p, q))
        return degrees

    strata: dict[tuple[int, ...], StratumData] = {}
    for ix in sx.nonempty_subsets():
        cx = sx.strata[ix].cohomology
        for iy in sy.nonempty_subsets():
            cy = sy.strata[iy].cohomology
            key = ix + tuple(j + nx for j in iy)
            degrees = tensor_degrees(cx, cy)
            cohomology_dict = {
                b: FpAbPresentation.free(
                    sum(cx[p].generators * cy[q].generators for p, q in pairs)
                )
                for b, pairs in sorted(degrees.items())
            }

            restrictions: dict[int, dict[int, IntMatrix]] = {}
            for e in key:
                per_degree: dict[int, IntMatrix] = {}
                if e <= nx:
                    src_cx = sx.strata[tuple(x for x in ix if x != e)].cohomology
                    src_pairs = tensor_degrees(src_cx, cy)
                    for b, tgt_pairs in sorted(degrees.items()):
                        pairs = src_pairs.get(b, [])
                        if not pairs:
                            continue
                        # Pullbacks preserve both tensor-leg degrees, so only
                        # blocks with (tp, tq) == (sp, sq) are nonzero.
                        blocks = [
                            [
                                sx.restriction_matrix(ix, e, tp).kron(
                                    IntMatrix.identity(cy[tq].generators)
                                )
                                if (tp, tq) == (sp, sq)
                                else IntMatrix.zeros(
                                    cx[tp].generators * cy[tq].generators,
                                    src_cx[sp].generators * cy[sq].generators,
                                )
                                for sp, sq in pairs
                            ]
                            for tp, tq in tgt_pairs
                        ]
                        per_degree[b] = IntMatrix.block(blocks)
                else:
                    j = e - nx
                    src_cy = sy.strata[tuple(y for y in iy if y != j)].cohomology
                    src_pairs = tensor_degrees(cx, src_cy)
                    for b, tgt_pairs in sorted(degrees.items()):
                        pairs = src_pairs.get(b, [])
                        if not pairs:
                            continue
                        blocks = [
                            [
                                IntMatrix.identity(cx[tp].generators).kron(
                                    sy.restriction_matrix(iy, j, tq)
                                )
                                if (tp, tq) == (sp, sq)
                                else IntMatrix.zeros(
                                    cx[tp].generators * cy[tq].generators,
                                    cx[sp].generators * src_cy[sq].generators,
                                )
                                for sp, sq in pairs
                            ]
                            for tp, tq in tgt_pairs
                        ]
                        per_degree[b] = IntMatrix.block(blocks)
                if per_degree:
                    restrictions[e] = per_degree
            strata[key] = StratumData(cohomology_dict, restrictions)

    out = SncDatum(sx.dim + sy.dim, nx + sy.n_components, strata)
    require_valid(out)
    return out


def a1_stability_check(s: SncDatum) -> Report:
    """Crossing with the affine line must shift the whole table by (0, +2)."""
    from .builders import affine_space_snc

    base = weight_cohomology_table(s)
    shifted = {(a, b + 2): g for (a, b), g in base.entries.items()}
    prod = weight_cohomology_table(product_snc(s, affine_space_snc(1)))
    details = []
    passed = dict(prod.entries) == shifted
    keys = sorted(set(shifted) | set(prod.entries))
    for key in keys:
        lhs = prod.entries.get(key, FgAbGroup.zero())
        rhs = shifted.get(key, FgAbGroup.zero())
        details.append(
            f"{'ok' if lhs == rhs else 'MISMATCH'} {key}: product = {lhs}, shifted base = {rhs}"
        )
    return Report("affine-line-stability", passed, tuple(details))


def e2_page(s: SncDatum, rational: bool = False) -> BigradedTable:
    """The table itself, or its free ranks when rational coefficients are wanted."""
    table = weight_cohomology_table(s)
    return table.rationalized() if rational else table


def degeneration_check(s: SncDatum, expected_hc: Mapping[int, int]) -> Report:
    """Total ranks along a + b = k must match compactly supported Betti numbers."""
    table = weight_cohomology_table(s)
    expected = {int(k): int(v) for k, v in expected_hc.items() if int(v)}
    got = {}
    for (a, b), g in table.entries.items():
        if g.free_rank:
            got[a + b] = got.get(a + b, 0) + g.free_rank
    details = []
    passed = True
    for k in sorted(set(expected) | set(got)):
        ok = expected.get(k, 0) == got.get(k, 0)
        passed = passed and ok
        details.append(
            f"{'ok' if ok else 'MISMATCH'} degree {k}: table rank {got.get(k, 0)}, "
            f"expected {expected.get(k, 0)}"
        )
    return Report("degeneration", passed, tuple(details))


def euler_check(s: SncDatum) -> Report:
    """Alternating rank sum of the table vs the strata-level Euler characteristic.

    The right-hand side is computed straight from the stratum cohomology
    ranks, without ever forming a differential.
    """
    require_valid(s)
    table_side = weight_cohomology_table(s).euler_sum()
    strata_side = 0
    for k in range(s.dim + 1):
        level = strata_level(s, k)
        chi = 0
        for _, coh in level.blocks:
            for b, p in coh.items():
                rank = canonical_form(p).free_rank
                chi += rank if b % 2 == 0 else -rank
        strata_side += chi if k % 2 == 0 else -chi
    passed = table_side == strata_side
    return Report(
        "euler",
        passed,
        (f"table side {table_side}, strata side {strata_side}",),
    )


STATUS_CONTRACTIBLE = "contractible-certified"
STATUS_HOMOLOGY_POINT = "homology-point"
STATUS_SPHERE = "sphere-like"
STATUS_OTHER = "other"


@dataclass(frozen=True)
class ContractibilityReport:
    status: str
    sphere_dim: int | None
    cohomology: Mapping[int, FgAbGroup]
    details: tuple[str, ...]

    def render(self) -> str:
        head = self.status
        if self.status == STATUS_SPHERE:
            head += f" (S^{self.sphere_dim})"
        lines = [head]
        lines.extend(f"  {d}" for d in self.details)
        return "\n".join(lines)


def contractibility_report(s: SncDatum, budget: int = 10_000) -> ContractibilityReport:
    """Classify the dual boundary complex by reduced cohomology and pi_1.

    Contractibility is certified only when all reduced cohomology
    vanishes and the edge-path presentation simplifies to the literally
    empty one; a trivial group that the budget cannot expose is reported
    as a homology point.
    """
    k = nerve(s)
    h = reduced_cohomology(k)
    if not h:
        # Vanishing reduced cohomology forces a nonempty connected complex.
        pres = edge_path_presentation(k)
        simplified = simplify_presentation(pres, budget)
        if simplified.is_trivial:
            return ContractibilityReport(
                STATUS_CONTRACTIBLE, None, h,
                ("all reduced cohomology vanishes",
                 "edge-path presentation simplifies to the empty presentation"),
            )
        return ContractibilityReport(
            STATUS_HOMOLOGY_POINT, None, h,
            ("all reduced cohomology vanishes",
             f"fundamental group inconclusive: {simplified}"),
        )
    if len(h) == 1:
        (deg, group), = h.items()
        if group == FgAbGroup.free(1):
            return ContractibilityReport(
                STATUS_SPHERE, deg, h,
                (f"reduced cohomology is Z concentrated in degree {deg}",),
            )
    lines = tuple(f"H~{deg} = {group}" for deg, group in sorted(h.items()))
    return ContractibilityReport(STATUS_OTHER, None, h, lines)


def tensor_table(t1: BigradedTable, t2: BigradedTable) -> BigradedTable:
    """Graded tensor of tables with Tor correction terms one column to the left."""
    acc: dict[tuple[int, int], FgAbGroup] = {}

    def add(key, group):
        if group.is_zero:
            return
        acc[key] = acc.get(key, FgAbGroup.zero()).direct_sum(group)

    for (a1, b1), g1 in t1.entries.items():
        for (a2, b2), g2 in t2.entries.items():
            add((a1 + a2, b1 + b2), g1.tensor(g2))
            add((a1 + a2 - 1, b1 + b2), g1.tor(g2))
    return BigradedTable(t1.dim + t2.dim, t1.n_components + t2.n_components, acc)
