"""W-friendly functors out of ``H(C)`` and their lifts along ``J_W: H(C) -> C{W}``."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable

from .dblcat import (
    CompanionDoubleCategory,
    CompanionPair,
    DoubleCategoryError,
    DoubleFunctor,
    FinDoubleCategory,
    HorizontalTransformation,
    Report,
    build_companion_double_category,
    compose_functors,
    embed_category,
    find_companion,
    verify_double_functor,
    verify_horizontal_transformation,
)
from .fincat import FinCategory, check_fractions_conditions, check_w, is_isomorphism
from .localize import FractionsError
from .wgfrac import CW, CWHorizontal, cell_id, horizontal_id, j_w, object_id, vertical_id

__all__ = [
    "DoubleFunctor",
    "HorizontalTransformation",
    "NablaW",
    "WFriendlyStructure",
    "build_nabla_w",
    "canonical_friendly_structure",
    "friendly_structure_from_companions",
    "horizontal_transformations",
    "identity_transformation",
    "lift_friendly_functor",
    "lift_friendly_transformation",
    "restrict",
    "restrict_transformation",
    "verify_friendly",
    "verify_friendly_transformation",
]


@dataclass(eq=False)
class NablaW:
    category: FinCategory
    projection: dict[str, str]
    base: FinCategory

    def arrow(self, v: str, target: str) -> str:
        return f"({v},{target})"


def build_nabla_w(cat: FinCategory, W: Iterable[str]) -> NablaW:
    W = check_w(cat, W)
    cf = check_fractions_conditions(cat, W)
    if not cf.three_for_two.passed:
        raise FractionsError(f"three_for_two fails at {cf.three_for_two.counterexample}")
    ws = sorted(W)
    arrows, projection = {}, {}
    for w in ws:
        for w2 in ws:
            if cat.cod(w) != cat.cod(w2):
                continue
            for v in cat.hom(cat.dom(w), cat.dom(w2)):
                if cat.compose(w2, v) == w:
                    if v not in W:
                        raise FractionsError(f"triangle leg {v} is not in W")
                    name = f"({v},{w2})"
                    arrows[name] = (w, w2)
                    projection[name] = v
    identity = {w: f"({cat.identity[cat.dom(w)]},{w})" for w in ws}
    table = {}
    for g, (b, c) in arrows.items():
        for f, (a, b2) in arrows.items():
            if b2 == b:
                table[(g, f)] = f"({cat.compose(projection[g], projection[f])},{c})"
    nabla = FinCategory(tuple(ws), arrows, identity, table, f"nabla({cat.name})")
    return NablaW(nabla, projection, cat)


@dataclass(eq=False)
class WFriendlyStructure:
    functor: DoubleFunctor
    gamma_functor: DoubleFunctor
    gamma: dict[str, str]
    nabla: NablaW
    companions: CompanionDoubleCategory

    def quad(self, nabla_arrow: str) -> CompanionPair:
        return self.companions.quadruples[self.gamma_functor.verticals[nabla_arrow]]


def _nabla_double(nabla: NablaW) -> FinDoubleCategory:
    return embed_category(nabla.category, "vertical")


def canonical_friendly_structure(cw: CW, companions: CompanionDoubleCategory | None = None) -> WFriendlyStructure:
    cat = cw.category
    nabla = build_nabla_w(cat, cw.W)
    comp = companions or build_companion_double_category(cw.double)
    V = _nabla_double(nabla)
    verticals = {}
    for a, (wu, w) in nabla.category.arrows.items():
        u = nabla.projection[a]
        pair = CompanionPair(
            cw.horiz(wu, w, u),
            vertical_id(wu, w),
            cell_id(cw.unit(wu), cw.horiz(wu, w, u)),
            cell_id(cw.horiz(wu, w, u), cw.unit(w)),
        )
        if pair not in comp.quadruple_id:
            raise DoubleCategoryError(f"canonical companion for {a} is not a companion pair")
        verticals[a] = comp.quadruple_id[pair]
    objects = {w: object_id(w) for w in nabla.category.objects}
    horizontals = {f"Id_{w}": cw.unit(w) for w in nabla.category.objects}
    cells = {f"Id_{a}": comp.double.unit_cell[verticals[a]] for a in nabla.category.arrows}
    Phi = DoubleFunctor(V, comp.double, objects, verticals, horizontals, cells, "Phi")
    gamma = {w: cw.horiz(w, cat.identity[cat.dom(w)], cat.identity[cat.dom(w)]) for w in nabla.category.objects}
    return WFriendlyStructure(j_w(cw), Phi, gamma, nabla, comp)


def friendly_structure_from_companions(
    G: DoubleFunctor,
    nabla: NablaW,
    companions: CompanionDoubleCategory | None = None,
) -> WFriendlyStructure:
    """``Gamma(u, w)`` is the chosen companion of ``G(u)``, ``gamma`` is made of units.

    Raises if some ``G(u)`` lacks a companion or the choices do not compose.
    """
    D = G.target
    comp = companions or build_companion_double_category(D)
    base = nabla.base
    verticals = {}
    for a in nabla.category.arrows:
        pair = find_companion(D, G.horizontals[nabla.projection[a]])
        if pair is None:
            raise DoubleCategoryError(f"image of {nabla.projection[a]} has no companion")
        verticals[a] = comp.quadruple_id[pair]
    objects = {w: G.objects[base.dom(w)] for w in nabla.category.objects}
    Gamma = DoubleFunctor(
        _nabla_double(nabla),
        comp.double,
        objects,
        verticals,
        {f"Id_{w}": D.unit[o] for w, o in objects.items()},
        {f"Id_{a}": comp.double.unit_cell[v] for a, v in verticals.items()},
        f"Comp({G.name})",
    )
    problems = verify_double_functor(Gamma)
    if problems:
        raise DoubleCategoryError(f"companion choices are not functorial: {problems[:3]}")
    gamma = {w: D.unit[o] for w, o in objects.items()}
    return WFriendlyStructure(G, Gamma, gamma, nabla, comp)


def verify_friendly(S: WFriendlyStructure) -> Report:
    G, Gamma = S.functor, S.gamma_functor
    D = G.target
    rep = Report()
    rep.record("functor", verify_double_functor(G))
    rep.record("gamma_functor", verify_double_functor(Gamma))
    if Gamma.target is not S.companions.double:
        rep.record("gamma_functor", ["Gamma does not land in the companion double category"])
    if not rep.passed:
        return rep
    base = S.nabla.base
    comps, inverse = [], []
    for w in S.nabla.category.objects:
        g = S.gamma.get(w)
        if g is None or D.ends(g) != (Gamma.objects[w], G.objects[base.dom(w)]):
            comps.append(f"component at {w} has the wrong ends")
        elif D.horizontal_inverse(g) is None:
            inverse.append(f"component at {w} is not a horizontal isomorphism")
    rep.record("gamma_components", comps)
    rep.record("gamma_invertible", inverse)
    if not rep.passed:
        return rep
    natural = []
    for a, (wu, w) in S.nabla.category.arrows.items():
        h = S.quad(a).h
        lhs = D.hcomp(S.gamma[w], h)
        rhs = D.hcomp(G.horizontals[S.nabla.projection[a]], S.gamma[wu])
        if lhs != rhs:
            natural.append(a)
    rep.record("gamma_natural", natural)
    return rep


def identity_transformation(G: DoubleFunctor) -> HorizontalTransformation:
    T = G.target
    return HorizontalTransformation(
        G, G,
        {x: T.unit[G.objects[x]] for x in G.source.objects},
        {v: T.unit_cell[G.verticals[v]] for v in G.source.verticals},
    )


def verify_friendly_transformation(
    a: HorizontalTransformation,
    alpha: HorizontalTransformation,
    source: WFriendlyStructure,
    target: WFriendlyStructure,
) -> Report:
    rep = Report()
    rep.record("a", verify_horizontal_transformation(a))
    rep.record("alpha", verify_horizontal_transformation(alpha))
    if not rep.passed:
        return rep
    D = source.functor.target
    base = source.nabla.base
    square = []
    for w in source.nabla.category.objects:
        top = D.hcomp(target.gamma[w], alpha.components[w])
        bottom = D.hcomp(a.components[base.dom(w)], source.gamma[w])
        if top != bottom:
            square.append(w)
    rep.record("friendly_square", square)
    return rep


@dataclass(eq=False)
class Lift:
    functor: DoubleFunctor
    comparison: HorizontalTransformation


def _hinv(D: FinDoubleCategory, f: str) -> str:
    g = D.horizontal_inverse(f)
    if g is None:
        raise DoubleCategoryError(f"{f} is not a horizontal isomorphism")
    return g


def _vinv_cell(D: FinDoubleCategory, c: str) -> str:
    g = D.vertical_inverse_cell(c)
    if g is None:
        raise DoubleCategoryError(f"cell {c} is not vertically invertible")
    return g


def _generator(S: WFriendlyStructure, cw: CW, u: str, w: str) -> CompanionPair:
    """Quadruple of the nabla arrow ``(u, w): w u -> w``."""
    return S.quad(f"({u},{w})")


def lift_friendly_functor(S: WFriendlyStructure, cw: CW) -> Lift:
    G, Gamma = S.functor, S.gamma_functor
    D = G.target
    cat = cw.category
    X = cw.double

    objects = {o: Gamma.objects[w] for o, w in cw.object_arrow.items()}
    ginv = {w: _hinv(D, g) for w, g in S.gamma.items()}

    verticals = {}
    for vid, (w1, w2) in cw.vertical_ends.items():
        r = cw.vertical_rep[vid]
        up = _generator(S, cw, r.u1, w1).v
        down = _generator(S, cw, r.u2, w2).v
        inv = is_isomorphism(D.vertical, up)[1]
        if inv is None:
            raise DoubleCategoryError(f"vertical {up} is not invertible")
        verticals[vid] = D.vertical.compose(down, inv)

    def lift_h(h: CWHorizontal) -> str:
        return D.hcomp(ginv[h.tgt], D.hcomp(G.horizontals[h.arrow], S.gamma[h.src]))

    horizontals = {hid: lift_h(h) for hid, h in cw.horizontal.items()}

    cells = {}
    for c in X.cell_ids:
        top, bottom = cw.frame_of(c)
        rep = cw.cell_rep[c]
        try:
            diag = cat.compose(top.src, rep.left.u1)
            diag_p = cat.compose(top.tgt, rep.right.u1)
            carrier = lift_h(CWHorizontal(diag, diag_p, rep.xi))
            q1 = _generator(S, cw, rep.left.u1, top.src)
            q1p = _generator(S, cw, rep.right.u1, top.tgt)
            q2p = _generator(S, cw, rep.right.u2, bottom.tgt)
            q2 = _generator(S, cw, rep.left.u2, bottom.src)
            one_top = D.one(horizontals[horizontal_id(top)])
            one_bottom = D.one(horizontals[horizontal_id(bottom)])
            one_k = D.one(carrier)
            rows = [
                D.hcomp_cell(one_top, _vinv_cell(D, q1.chi)),
                D.hcomp_cell(_vinv_cell(D, q1p.psi), one_k),
                D.hcomp_cell(q2p.psi, one_k),
                D.hcomp_cell(one_bottom, q2.chi),
            ]
            acc = rows[0]
            for nxt in rows[1:]:
                acc = D.vcomp(nxt, acc)
        except (DoubleCategoryError, KeyError) as exc:
            raise DoubleCategoryError(f"pasting for cell {c} failed: {exc}") from exc
        cells[c] = acc

    lifted = DoubleFunctor(X, D, objects, verticals, horizontals, cells, f"lift({G.name})")
    problems = verify_double_functor(lifted)
    if problems:
        raise DoubleCategoryError(f"lift is not a strict double functor: {problems[:3]}")
    J = j_w(cw)
    composite = compose_functors(lifted, J)
    comparison = HorizontalTransformation(
        composite,
        G,
        {a: S.gamma[cat.identity[a]] for a in cat.objects},
        {f"1_{a}": D.one(S.gamma[cat.identity[a]]) for a in cat.objects},
    )
    problems = verify_horizontal_transformation(comparison, invertible=True)
    if problems:
        raise DoubleCategoryError(f"comparison with the original functor fails: {problems[:3]}")
    return Lift(lifted, comparison)


def lift_restricts_to_gamma(S: WFriendlyStructure, lifted: DoubleFunctor) -> list[str]:
    """Compare ``lift . Phi`` with ``Gamma`` on every part of the nabla double category."""
    out = []
    for w, o in S.gamma_functor.objects.items():
        if lifted.objects[object_id(w)] != o:
            out.append(f"object {w}")
    for a, (wu, w) in S.nabla.category.arrows.items():
        q = S.quad(a)
        u = S.nabla.projection[a]
        if lifted.verticals[vertical_id(wu, w)] != q.v:
            out.append(f"vertical {a}")
        h = horizontal_id(CWHorizontal(wu, w, u))
        if lifted.horizontals[h] != q.h:
            out.append(f"horizontal {a}")
    return out


def bbcomp_functor(L: DoubleFunctor, source: CompanionDoubleCategory, target: CompanionDoubleCategory) -> DoubleFunctor:
    """``bbComp(L)`` on quadruples and companion cells."""
    verticals = {}
    for name, q in source.quadruples.items():
        image = CompanionPair(L.horizontals[q.h], L.verticals[q.v], L.cells[q.psi], L.cells[q.chi])
        if image not in target.quadruple_id:
            raise DoubleCategoryError(f"image of {name} is not a companion pair")
        verticals[name] = target.quadruple_id[image]
    index = {v: k for k, v in target.cell_data.items()}
    cells = {}
    for name, (c, n1, n2) in source.cell_data.items():
        key = (L.cells[c], verticals[n1], verticals[n2])
        if key not in index:
            raise DoubleCategoryError(f"image of companion cell {name} is missing")
        cells[name] = index[key]
    return DoubleFunctor(
        source.double, target.double,
        dict(L.objects), verticals, dict(L.horizontals), cells, f"Comp({L.name})",
    )


def restrict(
    L: DoubleFunctor,
    cw: CW,
    canonical: WFriendlyStructure,
    target_companions: CompanionDoubleCategory | None = None,
) -> WFriendlyStructure:
    """``(L J_W, bbComp(L) Phi, L phi)``."""
    comp_d = target_companions or build_companion_double_category(L.target)
    G = compose_functors(L, canonical.functor)
    Gamma = compose_functors(bbcomp_functor(L, canonical.companions, comp_d), canonical.gamma_functor)
    gamma = {w: L.horizontals[g] for w, g in canonical.gamma.items()}
    return WFriendlyStructure(G, Gamma, gamma, canonical.nabla, comp_d)


def _transformation_on_generator(
    alpha: HorizontalTransformation,
    source: WFriendlyStructure,
    target: WFriendlyStructure,
    a: str,
) -> str:
    D = source.functor.target
    wu, w = source.nabla.category.arrows[a]
    qg = source.quad(a)
    ql = target.quad(a)
    upper = D.hcomp_cell(ql.psi, D.one(alpha.components[wu]))
    lower = D.hcomp_cell(D.one(alpha.components[w]), qg.chi)
    return D.vcomp(lower, upper)


def lift_friendly_transformation(
    a: HorizontalTransformation,
    alpha: HorizontalTransformation,
    source: WFriendlyStructure,
    target: WFriendlyStructure,
    lifted_source: DoubleFunctor,
    lifted_target: DoubleFunctor,
    cw: CW,
) -> HorizontalTransformation:
    report = verify_friendly_transformation(a, alpha, source, target)
    if not report.passed:
        raise DoubleCategoryError(f"not a W-friendly transformation: {report.problems[:3]}")
    D = source.functor.target
    components = {object_id(w): alpha.components[w] for w in source.nabla.category.objects}
    generator = {}
    for arrow, (wu, w) in source.nabla.category.arrows.items():
        generator[(wu, w)] = _transformation_on_generator(alpha, source, target, arrow)
    cells = {}
    for vid, (w1, w2) in cw.vertical_ends.items():
        r = cw.vertical_rep[vid]
        diag = cw.category.compose(w1, r.u1)
        up = generator[(diag, w1)]
        down = generator[(diag, w2)]
        cells[vid] = D.vcomp(down, _vinv_cell(D, up))
    lifted = HorizontalTransformation(lifted_source, lifted_target, components, cells)
    problems = verify_horizontal_transformation(lifted)
    if problems:
        raise DoubleCategoryError(f"lifted transformation fails: {problems[:3]}")
    return lifted


def restrict_transformation(
    b: HorizontalTransformation,
    cw: CW,
    source: WFriendlyStructure,
    target: WFriendlyStructure,
) -> tuple[HorizontalTransformation, HorizontalTransformation]:
    """``(b J_W, beta)`` with ``beta_w = b_(w)``."""
    J = j_w(cw)
    bJ = HorizontalTransformation(
        source.functor,
        target.functor,
        {x: b.components[J.objects[x]] for x in J.source.objects},
        {v: b.cell_components[J.verticals[v]] for v in J.source.verticals},
    )
    index = {v: k for k, v in source.companions.cell_data.items()}
    beta_cells = {}
    for arrow, (wu, w) in source.nabla.category.arrows.items():
        vid = vertical_id(wu, w)
        key = (b.cell_components[vid], source.gamma_functor.verticals[arrow], target.gamma_functor.verticals[arrow])
        if key not in index:
            raise DoubleCategoryError(f"component of b at {vid} is not a companion cell")
        beta_cells[f"Id_{arrow}"] = index[key]
    beta = HorizontalTransformation(
        source.gamma_functor,
        target.gamma_functor,
        {w: b.components[object_id(w)] for w in source.nabla.category.objects},
        {v: beta_cells[f"Id_{v}"] for v in source.nabla.category.arrows},
    )
    return bJ, beta


def horizontal_transformations(G: DoubleFunctor, K: DoubleFunctor, invertible: bool = False):
    """All horizontal transformations ``G => K``, by backtracking over components."""
    S, T = G.source, G.target
    objs = list(S.objects)

    def candidates(x):
        hs = T.horizontals_between(G.objects[x], K.objects[x])
        if invertible:
            hs = tuple(h for h in hs if T.horizontal_inverse(h) is not None)
        return hs

    def consistent(assign):
        for f in S.horizontals:
            x, y = S.ends(f)
            if x in assign and y in assign:
                if T.hcomp_arrows.get((assign[y], G.horizontals[f])) != T.hcomp_arrows.get((K.horizontals[f], assign[x])):
                    return False
        return True

    def search(i, assign):
        if i == len(objs):
            yield dict(assign)
            return
        for h in candidates(objs[i]):
            assign[objs[i]] = h
            if consistent(assign):
                yield from search(i + 1, assign)
            del assign[objs[i]]

    for comps in search(0, {}):
        options = []
        for v in S.verticals:
            x, y = S.vertical.arrows[v]
            options.append(T.cells_with_frame(comps[x], comps[y], G.verticals[v], K.verticals[v]))
        for choice in product(*options):
            t = HorizontalTransformation(G, K, comps, dict(zip(S.verticals, choice)))
            if not verify_horizontal_transformation(t, invertible=invertible):
                yield t


def same_transformation(a: HorizontalTransformation, b: HorizontalTransformation) -> bool:
    return dict(a.components) == dict(b.components) and dict(a.cell_components) == dict(b.cell_components)
