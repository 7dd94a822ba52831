"""Fundamental bicategories of weakly globular double categories and their comparison with spans."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .dblcat import (
    DoubleCategoryError,
    FinDoubleCategory,
    GlobularityReport,
    NoCompletion,
    Report,
    check_weak_globularity,
    complete_staircase,
    find_companion,
    find_precompanion,
)
from .localize import (
    PosetalBicategory,
    Span,
    SpanCellWitness,
    build_fractions_bicategory,
    span_cell,
    unit_span,
)
from .wgfrac import CW, CellRep, CWHorizontal, VerticalRep, cell_id, horizontal_id, is_cell_rep, object_id


@dataclass(eq=False)
class FundamentalBicategory:
    double: FinDoubleCategory
    bicategory: PosetalBicategory
    component: dict[str, str]
    unit_object: dict[str, str]
    globularity: GlobularityReport

    def ends(self, f: str) -> tuple[str, str]:
        return self.bicategory.one_cells[f]

    def unit(self, a: str) -> str:
        return self.bicategory.identity[a]

    def comp(self, g: str, f: str) -> str:
        return self.bicategory.comp(g, f)


def fundamental_bicategory(
    D: FinDoubleCategory,
    segal_bound: int = 3,
    unit_objects: Mapping[str, str] | None = None,
) -> FundamentalBicategory:
    """Objects are vertical components, named after their chosen object."""
    glob = check_weak_globularity(D, segal_bound)
    if not glob.checks.get("posetal_groupoid", False):
        raise DoubleCategoryError(f"vertical category is not a posetal groupoid: {glob.problems[:3]}")
    members: dict[str, list[str]] = {}
    for a, root in D.components.items():
        members.setdefault(root, []).append(a)
    chosen = {}
    for root, objs in members.items():
        pick = min(objs)
        if unit_objects:
            picks = [unit_objects[a] for a in objs if a in unit_objects]
            if picks:
                pick = picks[0]
        chosen[root] = pick
    component = {a: chosen[root] for a, root in D.components.items()}

    ends = {f: (component[D.src[f]], component[D.tgt[f]]) for f in D.horizontals}
    two_cells = set()
    for f in D.horizontals:
        for g in D.horizontals:
            cells = D.cells.hom(f, g)
            if len(cells) > 1:
                raise DoubleCategoryError(f"hom category is not posetal: cells {cells}")
            if cells:
                two_cells.add((f, g))
    compose = {}
    for f in D.horizontals:
        for g in D.horizontals:
            if ends[f][1] != ends[g][0]:
                continue
            joint = D.vertical.hom(D.src[g], D.tgt[f])[0]
            try:
                done = complete_staircase(D, [f, joint, g])
            except NoCompletion as exc:
                raise DoubleCategoryError(f"no composite of {g} after {f}") from exc
            compose[(g, f)] = D.hcomp(done.path[1], done.path[0])
    bicat = PosetalBicategory(
        objects=tuple(sorted(set(chosen.values()))),
        one_cells=ends,
        two_cells=frozenset(two_cells),
        compose=compose,
        identity={c: D.unit[c] for c in chosen.values()},
        direct_two_cells=frozenset(two_cells),
    )
    problems = bicat.validate()
    if problems:
        raise DoubleCategoryError("; ".join(problems[:5]))
    return FundamentalBicategory(D, bicat, component, {c: c for c in chosen.values()}, glob)


def verify_fundamental_bicategory(B: FundamentalBicategory) -> Report:
    bic = B.bicategory
    rep = Report()
    rep.record("validate", bic.validate())
    units = []
    for f, (a, b) in bic.one_cells.items():
        if not bic.isomorphic(bic.comp(bic.identity[b], f), f) or not bic.isomorphic(bic.comp(f, bic.identity[a]), f):
            units.append(f)
    rep.record("unit_laws", units)
    assoc = []
    for g, f in bic.composable():
        gf = bic.comp(g, f)
        for h in bic.hom_from(bic.one_cells[g][1]):
            if not bic.isomorphic(bic.comp(h, gf), bic.comp(bic.comp(h, g), f)):
                assoc.append(f"{h}, {g}, {f}")
    rep.record("associativity", assoc)
    return rep


@dataclass(frozen=True)
class OneCellClass:
    quasi_unit: bool
    equivalence: bool
    pseudo_inverse: str | None


def classify_one_cell(B: FundamentalBicategory, f: str) -> OneCellClass:
    bic = B.bicategory
    a, b = bic.one_cells[f]
    quasi = a == b and bic.isomorphic(f, bic.identity[a])
    inverse = None
    for g in bic.hom(b, a):
        if (bic.isomorphic(bic.comp(g, f), bic.identity[a])
                and bic.isomorphic(bic.comp(f, g), bic.identity[b])):
            inverse = g
            break
    return OneCellClass(quasi, inverse is not None, inverse)


def verify_companion_quasiunit(D: FinDoubleCategory, B: FundamentalBicategory | None = None) -> Report:
    B = B or fundamental_bicategory(D)
    rep = Report()
    mismatches = []
    for f in D.horizontals:
        has = find_companion(D, f) is not None
        quasi = classify_one_cell(B, f).quasi_unit
        if has != quasi:
            mismatches.append(f"{f}: companion={has} quasi_unit={quasi}")
    rep.record("companion_iff_quasi_unit", mismatches)
    rep.notes["companion_mismatches"] = str(len(mismatches))
    return rep


def verify_precompanion_equivalence(D: FinDoubleCategory, B: FundamentalBicategory | None = None) -> Report:
    B = B or fundamental_bicategory(D)
    rep = Report()
    mismatches = []
    for f in D.horizontals:
        pre = find_precompanion(D, f) is not None
        equiv = classify_one_cell(B, f).equivalence
        if pre != equiv:
            mismatches.append(f"{f}: precompanion={pre} equivalence={equiv}")
    rep.record("precompanion_iff_equivalence", mismatches)
    rep.notes["precompanion_mismatches"] = str(len(mismatches))
    return rep


def cw_fundamental_bicategory(cw: CW, segal_bound: int = 3) -> FundamentalBicategory:
    """``Bic(C{W})`` with each component represented by its identity object."""
    cat = cw.category
    units = {o: object_id(cat.identity[cat.cod(w)]) for o, w in cw.object_arrow.items()}
    return fundamental_bicategory(cw.double, segal_bound, units)


def omega_objects(cw: CW, component: str) -> str:
    return cw.category.cod(cw.object_arrow[component])


def omega_one_cell(cw: CW, h: str) -> Span:
    x = cw.horizontal[h]
    cat = cw.category
    return Span(cat.dom(x.src), x.src, cat.compose(x.tgt, x.arrow))


def omega_two_cell(cw: CW, c: str) -> SpanCellWitness:
    rep = cw.cell_rep[c]
    return SpanCellWitness(rep.left.apex, rep.left.u1, rep.left.u2)


def alpha_one_cell(cw: CW, s: Span) -> str:
    cat = cw.category
    return horizontal_id(CWHorizontal(s.left, cat.identity[cat.cod(s.right)], s.right))


def alpha_two_cell(cw: CW, s1: Span, s2: Span, witness: SpanCellWitness) -> tuple[str, CellRep]:
    cat = cw.category
    b = cat.cod(s1.right)
    rep = CellRep(
        VerticalRep(witness.apex, witness.u1, witness.u2),
        VerticalRep(b, cat.identity[b], cat.identity[b]),
        cat.compose(s1.right, witness.u1),
    )
    return cell_id(alpha_one_cell(cw, s1), alpha_one_cell(cw, s2)), rep


def zeta_component(cw: CW, h: str) -> tuple[str, CellRep]:
    """The invertible cell ``alpha omega (x) => x``."""
    cat = cw.category
    x = cw.horizontal[h]
    a1, a2 = cat.dom(x.src), cat.dom(x.tgt)
    rep = CellRep(
        VerticalRep(a1, cat.identity[a1], cat.identity[a1]),
        VerticalRep(a2, x.tgt, cat.identity[a2]),
        x.arrow,
    )
    return cell_id(alpha_one_cell(cw, omega_one_cell(cw, h)), h), rep


def _span_witness(cat, W, s1: Span, s2: Span, w: SpanCellWitness) -> bool:
    return (
        cat.compose(s1.left, w.u1) == cat.compose(s2.left, w.u2)
        and cat.compose(s1.left, w.u1) in W
        and cat.compose(s1.right, w.u1) == cat.compose(s2.right, w.u2)
    )


def omega_alpha_comparison(cw: CW, segal_bound: int = 3) -> Report:
    cat, W = cw.category, cw.W
    D = cw.double
    B = cw_fundamental_bicategory(cw, segal_bound)
    bic = B.bicategory
    F = build_fractions_bicategory(cat, W)
    rep = Report()

    omega0 = {c: omega_objects(cw, c) for c in bic.objects}
    rep.record("omega0_bijection", [] if sorted(omega0.values()) == sorted(cat.objects) and len(set(omega0.values())) == len(omega0) else [str(omega0)])

    omega1 = {h: omega_one_cell(cw, h) for h in D.horizontals}
    typed = [h for h, s in omega1.items() if F.one_cells.get(s) != tuple(omega0[e] for e in bic.one_cells[h])]
    rep.record("omega1_typed", typed)
    if typed:
        return rep
    units = [a for a in bic.objects if omega1[bic.identity[a]] != unit_span(cat, omega0[a])]
    rep.record("omega_units_strict", units)
    comp = [
        f"{g} . {f}"
        for g, f in bic.composable()
        if not F.isomorphic(omega1[bic.comp(g, f)], F.comp(omega1[g], omega1[f]))
    ]
    rep.record("omega_composition", comp)

    cells = []
    for c in D.cell_ids:
        top, bottom = D.cells.arrows[c]
        if not _span_witness(cat, W, omega1[top], omega1[bottom], omega_two_cell(cw, c)):
            cells.append(c)
    rep.record("omega2_witnesses", cells)

    local = []
    for x in D.horizontals:
        for y in D.horizontals:
            if bic.one_cells[x] != bic.one_cells[y]:
                continue
            if bic.related(x, y) != F.related(omega1[x], omega1[y]):
                local.append(f"{x} => {y}")
    rep.record("locally_fully_faithful", local)

    spans = sorted(F.one_cells)
    surj = [str(s) for s in spans if not any(F.isomorphic(omega1[x], s) for x in D.horizontals)]
    rep.record("locally_essentially_surjective", surj)

    alpha1 = {s: alpha_one_cell(cw, s) for s in spans}
    ident = [str(s) for s in spans if omega1.get(alpha1[s]) != s]
    rep.record("omega_alpha_identity", ident)
    obj = [a for a in cat.objects if omega_objects(cw, object_id(cat.identity[a])) != a]
    rep.record("omega_alpha_identity_objects", obj)

    alpha2 = []
    for s1 in spans:
        for s2 in spans:
            if (s1, s2) not in F.direct_two_cells:
                continue
            w = span_cell(cat, W, s1, s2)
            cid, crep = alpha_two_cell(cw, s1, s2, w)
            top, bottom = cw.horizontal[alpha1[s1]], cw.horizontal[alpha1[s2]]
            if not is_cell_rep(cat, W, top, bottom, crep) or cid not in cw.cell_rep:
                alpha2.append(f"{s1} => {s2}")
    rep.record("alpha_two_cells", alpha2)
    alpha_comp = [
        f"{s2} . {s1}"
        for (s2, s1), s in F.compose.items()
        if not bic.isomorphic(alpha1[s], bic.comp(alpha1[s2], alpha1[s1]))
    ]
    rep.record("alpha_composition", alpha_comp)

    zeta = []
    for h in D.horizontals:
        cid, crep = zeta_component(cw, h)
        top, bottom = cw.horizontal[alpha1[omega1[h]]], cw.horizontal[h]
        if not is_cell_rep(cat, W, top, bottom, crep) or cid not in cw.cell_rep:
            zeta.append(h)
        elif not D.cells.hom(D.cells.arrows[cid][1], D.cells.arrows[cid][0]):
            zeta.append(f"{h} not invertible")
    rep.record("zeta_invertible_icon", zeta)
    return rep
