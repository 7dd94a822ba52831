"""Finite double categories as internal categories in finite categories.

``X0`` holds objects and vertical arrows.  ``X1`` has the horizontal arrows
as objects and the double cells as arrows, so composing in ``X1`` is vertical
pasting of cells.  Horizontal composition is tabulated separately for
horizontal arrows and for cells.  ``hcomp(g, f)`` and ``hcomp_cell(b, a)``
put the first argument on the right, matching ``compose(g, f)`` in a
:class:`FinCategory`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping, Sequence

from .fincat import FinCategory, is_isomorphism, validate_category
from .localize import UnionFind


class DoubleCategoryError(ValueError):
    pass


class NoCompletion(LookupError):
    pass


@dataclass(frozen=True, eq=False)
class FinDoubleCategory:
    vertical: FinCategory
    cells: FinCategory
    src: Mapping[str, str]
    tgt: Mapping[str, str]
    left: Mapping[str, str]
    right: Mapping[str, str]
    unit: Mapping[str, str]
    unit_cell: Mapping[str, str]
    hcomp_arrows: Mapping[tuple[str, str], str]
    hcomp_cells: Mapping[tuple[str, str], str]
    name: str = "D"

    @property
    def objects(self) -> tuple[str, ...]:
        return self.vertical.sorted_objects

    @property
    def horizontals(self) -> tuple[str, ...]:
        return self.cells.sorted_objects

    @property
    def verticals(self) -> tuple[str, ...]:
        return self.vertical.sorted_arrows

    @property
    def cell_ids(self) -> tuple[str, ...]:
        return self.cells.sorted_arrows

    def frame(self, c: str) -> tuple[str, str, str, str]:
        """``(top, bottom, left, right)`` of a cell."""
        top, bottom = self.cells.arrows[c]
        return top, bottom, self.left[c], self.right[c]

    def ends(self, f: str) -> tuple[str, str]:
        return self.src[f], self.tgt[f]

    def hcomp(self, g: str, f: str) -> str:
        try:
            return self.hcomp_arrows[(g, f)]
        except KeyError:
            raise DoubleCategoryError(f"no horizontal composite {g} . {f}") from None

    def hcomp_cell(self, b: str, a: str) -> str:
        try:
            return self.hcomp_cells[(b, a)]
        except KeyError:
            raise DoubleCategoryError(f"no horizontal composite of cells {b} . {a}") from None

    def vcomp(self, lower: str, upper: str) -> str:
        return self.cells.compose(lower, upper)

    def one(self, f: str) -> str:
        """Vertical identity cell on a horizontal arrow."""
        return self.cells.identity[f]

    def vid(self, a: str) -> str:
        """Identity vertical arrow on an object."""
        return self.vertical.identity[a]

    @cached_property
    def _by_frame(self) -> dict[tuple[str, str, str, str], tuple[str, ...]]:
        index: dict = {}
        for c in self.cell_ids:
            index.setdefault(self.frame(c), []).append(c)
        return {k: tuple(v) for k, v in index.items()}

    @cached_property
    def _by_boundary(self) -> dict[tuple[str, str], tuple[str, ...]]:
        index: dict = {}
        for c in self.cell_ids:
            index.setdefault(self.cells.arrows[c], []).append(c)
        return {k: tuple(v) for k, v in index.items()}

    def cells_with_frame(self, top: str, bottom: str, left: str, right: str) -> tuple[str, ...]:
        return self._by_frame.get((top, bottom, left, right), ())

    def cells_between(self, top: str, bottom: str) -> tuple[str, ...]:
        return self._by_boundary.get((top, bottom), ())

    def horizontals_from(self, a: str) -> tuple[str, ...]:
        return tuple(f for f in self.horizontals if self.src[f] == a)

    def horizontals_between(self, a: str, b: str) -> tuple[str, ...]:
        return tuple(f for f in self.horizontals if self.src[f] == a and self.tgt[f] == b)

    def vertical_inverse_cell(self, c: str) -> str | None:
        return is_isomorphism(self.cells, c)[1]

    def horizontal_inverse(self, f: str) -> str | None:
        a, b = self.ends(f)
        for g in self.horizontals_between(b, a):
            if self.hcomp(g, f) == self.unit[a] and self.hcomp(f, g) == self.unit[b]:
                return g
        return None

    def horizontal_inverse_cell(self, c: str) -> str | None:
        top, bottom, v, w = self.frame(c)
        for d in self.cell_ids:
            if self.left[d] != w or self.right[d] != v:
                continue
            if (self.hcomp_cells.get((d, c)) == self.unit_cell[v]
                    and self.hcomp_cells.get((c, d)) == self.unit_cell[w]):
                return d
        return None

    @cached_property
    def components(self) -> dict[str, str]:
        """Object -> least object of its connected component in ``X0``."""
        uf = UnionFind(self.objects)
        for v in self.verticals:
            uf.union(*self.vertical.arrows[v])
        return {a: uf.find(a) for a in self.objects}


@dataclass
class Report:
    """Named checks with their verdicts and itemized failures."""

    checks: dict[str, bool] = field(default_factory=dict)
    problems: list[str] = field(default_factory=list)
    notes: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def record(self, name: str, failures: Sequence[str]) -> bool:
        ok = not failures
        self.checks[name] = self.checks.get(name, True) and ok
        self.problems.extend(f"{name}: {p}" for p in failures)
        return ok

    def lines(self) -> list[str]:
        out = [f"{k}={'PASS' if v else 'FAIL'}" for k, v in self.checks.items()]
        out.extend(f"{k}={v}" for k, v in self.notes.items())
        return out


def _functor_problems(name, dom_cat, cod_cat, on_objects, on_arrows):
    problems = []
    for f in dom_cat.sorted_arrows:
        a, b = dom_cat.arrows[f]
        g = on_arrows.get(f)
        if g is None or g not in cod_cat.arrows:
            problems.append(f"{name} undefined on {f}")
            continue
        if cod_cat.arrows[g] != (on_objects.get(a), on_objects.get(b)):
            problems.append(f"{name} breaks endpoints of {f}")
    if problems:
        return problems
    for a in dom_cat.sorted_objects:
        if on_arrows[dom_cat.identity[a]] != cod_cat.identity[on_objects[a]]:
            problems.append(f"{name} does not preserve identity at {a}")
    for g, f in dom_cat.composable_pairs():
        if on_arrows[dom_cat.compose(g, f)] != cod_cat.compose(on_arrows[g], on_arrows[f]):
            problems.append(f"{name} does not preserve {g} . {f}")
    return problems


def validate_double_category(D: FinDoubleCategory) -> Report:
    rep = Report()
    for label, cat in (("X0", D.vertical), ("X1", D.cells)):
        vr = validate_category(cat)
        rep.record(f"{label}_category", [f"{p[1]} {p[2]}" for p in vr.problems])
    if not rep.passed:
        return rep
    X0, X1 = D.vertical, D.cells
    rep.record("source_target", _functor_problems("d0", X1, X0, D.src, D.left)
               + _functor_problems("d1", X1, X0, D.tgt, D.right))
    unit_problems = _functor_problems("s", X0, X1, D.unit, D.unit_cell)
    for a in D.objects:
        h = D.unit.get(a)
        if h is not None and D.ends(h) != (a, a):
            unit_problems.append(f"unit at {a} has wrong ends")
    for v in D.verticals:
        c = D.unit_cell.get(v)
        if c is not None and (D.left[c], D.right[c]) != (v, v):
            unit_problems.append(f"unit cell of {v} has wrong sides")
    rep.record("units", unit_problems)
    if not rep.passed:
        return rep

    total = []
    for f in D.horizontals:
        for g in D.horizontals_from(D.tgt[f]):
            h = D.hcomp_arrows.get((g, f))
            if h is None:
                total.append(f"missing {g} . {f}")
            elif D.ends(h) != (D.src[f], D.tgt[g]):
                total.append(f"{g} . {f} has wrong ends")
    right_of: dict = {}
    for c in D.cell_ids:
        right_of.setdefault(D.left[c], []).append(c)
    composable_cells = [(b, a) for a in D.cell_ids for b in right_of.get(D.right[a], ())]
    for b, a in composable_cells:
        c = D.hcomp_cells.get((b, a))
        if c is None:
            total.append(f"missing cell {b} . {a}")
            continue
        ta, ba = X1.arrows[a]
        tb, bb = X1.arrows[b]
        if (D.left[c], D.right[c]) != (D.left[a], D.right[b]):
            total.append(f"cell {b} . {a} has wrong sides")
        elif X1.arrows[c] != (D.hcomp_arrows.get((tb, ta)), D.hcomp_arrows.get((bb, ba))):
            total.append(f"cell {b} . {a} has wrong top or bottom")
    rep.record("totality_of_m", total)
    if not rep.passed:
        return rep

    laws = []
    for f in D.horizontals:
        a, b = D.ends(f)
        if D.hcomp(D.unit[b], f) != f or D.hcomp(f, D.unit[a]) != f:
            laws.append(f"unit law at {f}")
        for g in D.horizontals_from(b):
            gf = D.hcomp(g, f)
            for h in D.horizontals_from(D.tgt[g]):
                if D.hcomp(h, gf) != D.hcomp(D.hcomp(h, g), f):
                    laws.append(f"associativity at {h}, {g}, {f}")
    for c in D.cell_ids:
        if (D.hcomp_cell(D.unit_cell[D.right[c]], c) != c
                or D.hcomp_cell(c, D.unit_cell[D.left[c]]) != c):
            laws.append(f"unit law at cell {c}")
    for b, a in composable_cells:
        ba = D.hcomp_cell(b, a)
        for c in right_of.get(D.right[b], ()):
            if D.hcomp_cell(c, ba) != D.hcomp_cell(D.hcomp_cell(c, b), a):
                laws.append(f"associativity at cells {c}, {b}, {a}")
    rep.record("m_unital_associative", laws)

    interchange = []
    for f in D.horizontals:
        for g in D.horizontals_from(D.tgt[f]):
            if D.hcomp_cell(D.one(g), D.one(f)) != D.one(D.hcomp(g, f)):
                interchange.append(f"identity cells at {g} . {f}")
    by_top: dict = {}
    for c in D.cell_ids:
        by_top.setdefault(X1.dom(c), []).append(c)
    for b, a in composable_cells:
        for a2 in by_top.get(X1.cod(a), ()):
            for b2 in by_top.get(X1.cod(b), ()):
                if D.right[a2] != D.left[b2]:
                    continue
                lhs = D.hcomp_cell(D.vcomp(b2, b), D.vcomp(a2, a))
                rhs = D.vcomp(D.hcomp_cell(b2, a2), D.hcomp_cell(b, a))
                if lhs != rhs:
                    interchange.append(f"({b2}.{b}) o ({a2}.{a})")
    rep.record("interchange", interchange)
    return rep


def embed_category(C: FinCategory, mode: str = "horizontal") -> FinDoubleCategory:
    """``H(C)`` (arrows horizontal) or ``V(C)`` (arrows vertical)."""
    if mode == "horizontal":
        X0 = FinCategory(
            C.sorted_objects,
            {f"1_{a}": (a, a) for a in C.objects},
            {a: f"1_{a}" for a in C.objects},
            {(f"1_{a}", f"1_{a}"): f"1_{a}" for a in C.objects},
            f"H({C.name})_0",
        )
        X1 = FinCategory(
            C.sorted_arrows,
            {f"1_{f}": (f, f) for f in C.arrows},
            {f: f"1_{f}" for f in C.arrows},
            {(f"1_{f}", f"1_{f}"): f"1_{f}" for f in C.arrows},
            f"H({C.name})_1",
        )
        return FinDoubleCategory(
            X0,
            X1,
            src={f: C.dom(f) for f in C.arrows},
            tgt={f: C.cod(f) for f in C.arrows},
            left={f"1_{f}": f"1_{C.dom(f)}" for f in C.arrows},
            right={f"1_{f}": f"1_{C.cod(f)}" for f in C.arrows},
            unit=dict(C.identity),
            unit_cell={f"1_{a}": f"1_{C.identity[a]}" for a in C.objects},
            hcomp_arrows=dict(C.table),
            hcomp_cells={(f"1_{g}", f"1_{f}"): f"1_{h}" for (g, f), h in C.table.items()},
            name=f"H({C.name})",
        )
    if mode == "vertical":
        X1 = FinCategory(
            tuple(f"Id_{a}" for a in C.sorted_objects),
            {f"Id_{v}": (f"Id_{a}", f"Id_{b}") for v, (a, b) in C.arrows.items()},
            {f"Id_{a}": f"Id_{C.identity[a]}" for a in C.objects},
            {(f"Id_{g}", f"Id_{f}"): f"Id_{h}" for (g, f), h in C.table.items()},
            f"V({C.name})_1",
        )
        return FinDoubleCategory(
            C,
            X1,
            src={f"Id_{a}": a for a in C.objects},
            tgt={f"Id_{a}": a for a in C.objects},
            left={f"Id_{v}": v for v in C.arrows},
            right={f"Id_{v}": v for v in C.arrows},
            unit={a: f"Id_{a}" for a in C.objects},
            unit_cell={v: f"Id_{v}" for v in C.arrows},
            hcomp_arrows={(f"Id_{a}", f"Id_{a}"): f"Id_{a}" for a in C.objects},
            hcomp_cells={(f"Id_{v}", f"Id_{v}"): f"Id_{v}" for v in C.arrows},
            name=f"V({C.name})",
        )
    raise ValueError(f"unknown embedding mode {mode!r}")


def square_double_category(E: FinCategory) -> FinDoubleCategory:
    """Commuting squares of ``E``: arrows of ``E`` serve both as horizontals and as verticals."""

    def sq(top, bottom, left, right):
        return f"sq({top},{bottom},{left},{right})"

    frames = {}
    for f, (a, b) in E.arrows.items():
        for g, (a2, b2) in E.arrows.items():
            for u in E.hom(a, a2):
                for v in E.hom(b, b2):
                    if E.compose(v, f) == E.compose(g, u):
                        frames[sq(f, g, u, v)] = (f, g, u, v)
    table = {}
    for c1, (f, g, u, v) in frames.items():
        for c2, (g2, h, u2, v2) in frames.items():
            if g2 == g:
                table[(c2, c1)] = sq(f, h, E.compose(u2, u), E.compose(v2, v))
    X1 = FinCategory(
        E.sorted_arrows,
        {c: (f, g) for c, (f, g, _, _) in frames.items()},
        {f: sq(f, f, E.identity[E.dom(f)], E.identity[E.cod(f)]) for f in E.arrows},
        table,
        f"Sq({E.name})_1",
    )
    hcells = {}
    for c1, (f, g, u, v) in frames.items():
        for c2, (f2, g2, v2, w) in frames.items():
            if v2 == v:
                hcells[(c2, c1)] = sq(E.compose(f2, f), E.compose(g2, g), u, w)
    return FinDoubleCategory(
        E,
        X1,
        src={f: E.dom(f) for f in E.arrows},
        tgt={f: E.cod(f) for f in E.arrows},
        left={c: fr[2] for c, fr in frames.items()},
        right={c: fr[3] for c, fr in frames.items()},
        unit=dict(E.identity),
        unit_cell={v: sq(E.identity[a], E.identity[b], v, v) for v, (a, b) in E.arrows.items()},
        hcomp_arrows=dict(E.table),
        hcomp_cells=hcells,
        name=f"Sq({E.name})",
    )


def _segal_check(D: FinDoubleCategory, k: int) -> list[str]:
    comp = D.components
    paths = [(f,) for f in D.horizontals]
    stairs = [(f,) for f in D.horizontals]
    for _ in range(k - 1):
        paths = [p + (g,) for p in paths for g in D.horizontals_from(D.tgt[p[-1]])]
        stairs = [
            p + (g,)
            for p in stairs
            for g in D.horizontals
            if comp[D.src[g]] == comp[D.tgt[p[-1]]]
        ]
    problems = []
    path_set = set(paths)
    for p in paths:
        targets = [sorted({D.cells.cod(c) for c in D.cells.arrows_from(f)}) for f in p]
        for q in product(*targets):
            if q not in path_set:
                continue
            options = [D.cells.hom(f, g) for f, g in zip(p, q)]
            in_q = 1
            for o in options:
                in_q *= len(o)
            in_p = sum(
                all(D.right[x] == D.left[y] for x, y in zip(cs, cs[1:]))
                for cs in product(*options)
            )
            if in_p != in_q:
                problems.append(f"not fully faithful at {p} -> {q}")
    for s in stairs:
        try:
            _complete(D, s)
        except NoCompletion:
            problems.append(f"staircase {s} has no completion")
    return problems


@dataclass
class GlobularityReport(Report):
    bound: int = 3

    @property
    def summary(self) -> str:
        return "PASS" if self.passed else f"FAIL(bound={self.bound})"


def check_weak_globularity(D: FinDoubleCategory, segal_bound: int = 3) -> GlobularityReport:
    if segal_bound < 2:
        raise ValueError("segal_bound must be at least 2")
    rep = GlobularityReport(bound=segal_bound)
    X0 = D.vertical
    posetal = []
    for a in X0.sorted_objects:
        for b in X0.sorted_objects:
            hom = X0.hom(a, b)
            if len(hom) > 1:
                posetal.append(f"parallel verticals {hom}")
            for v in hom:
                if not is_isomorphism(X0, v)[0]:
                    posetal.append(f"vertical {v} not invertible")
    rep.record("posetal_groupoid", posetal)
    if rep.passed:
        for k in range(2, segal_bound + 1):
            rep.record(f"segal_{k}", _segal_check(D, k))
    rep.notes["segal_bound"] = str(segal_bound)
    return rep


@dataclass(frozen=True)
class Completion:
    """A composable path with vertically invertible cells ``path[i] => input[i]``."""

    path: tuple[str, ...]
    cells: tuple[str, ...]


def _iso_sources(D: FinDoubleCategory, f: str) -> list[tuple[str, str]]:
    """Pairs ``(f', phi)`` with ``phi: f' => f`` vertically invertible, ``f`` first."""
    out: dict[str, str] = {}
    for c in D.cells.arrows_into(f):
        if is_isomorphism(D.cells, c)[0]:
            out.setdefault(D.cells.dom(c), c)
    out[f] = D.one(f)
    return sorted(out.items(), key=lambda kv: (kv[0] != f, kv[0]))


def _complete(D: FinDoubleCategory, horizontals: Sequence[str]) -> Completion:
    options = [_iso_sources(D, f) for f in horizontals]
    best = None
    best_key = None

    def search(i, chosen):
        nonlocal best, best_key
        if i == len(options):
            key = (sum(c[0] != f for c, f in zip(chosen, horizontals)), tuple(c[0] for c in chosen))
            if best_key is None or key < best_key:
                best, best_key = list(chosen), key
            return
        for g, phi in options[i]:
            if chosen and D.src[g] != D.tgt[chosen[-1][0]]:
                continue
            chosen.append((g, phi))
            search(i + 1, chosen)
            chosen.pop()

    search(0, [])
    if best is None:
        raise NoCompletion(tuple(horizontals))
    return Completion(tuple(g for g, _ in best), tuple(phi for _, phi in best))


def complete_staircase(D: FinDoubleCategory, path: Sequence[str]) -> Completion:
    """Complete ``[f1, v1, f2, v2, ..., fn]`` into a composable path.

    Each ``v_i`` joins the target of ``f_i`` and the source of ``f_(i+1)``
    in either direction.  The completion changes as few arrows as possible,
    ties broken lexicographically, so it only depends on the horizontals.
    """
    if len(path) % 2 == 0:
        raise DoubleCategoryError("a staircase alternates horizontals and verticals, starting and ending horizontally")
    hs, vs = list(path[0::2]), list(path[1::2])
    for f in hs:
        if f not in D.src:
            raise DoubleCategoryError(f"{f} is not a horizontal arrow")
    for i, v in enumerate(vs):
        if v not in D.vertical.arrows:
            raise DoubleCategoryError(f"{v} is not a vertical arrow")
        joint = (D.tgt[hs[i]], D.src[hs[i + 1]])
        if D.vertical.arrows[v] not in (joint, joint[::-1]):
            raise DoubleCategoryError(f"{v} does not join {hs[i]} to {hs[i + 1]}")
    return _complete(D, hs)


@dataclass(frozen=True, order=True)
class CompanionPair:
    h: str
    v: str
    psi: str
    chi: str


@dataclass(frozen=True, order=True)
class ConjointPair:
    h: str
    v: str
    alpha: str
    beta: str


def companion_equations_hold(D: FinDoubleCategory, pair: CompanionPair) -> bool:
    a, b = D.ends(pair.h)
    if D.frame(pair.psi) != (D.unit[a], pair.h, D.vid(a), pair.v):
        return False
    if D.frame(pair.chi) != (pair.h, D.unit[b], pair.v, D.vid(b)):
        return False
    side = D.hcomp_cells.get((pair.chi, pair.psi))
    return side == D.one(pair.h) and D.vcomp(pair.chi, pair.psi) == D.unit_cell[pair.v]


def conjoint_equations_hold(D: FinDoubleCategory, pair: ConjointPair) -> bool:
    b, a = D.ends(pair.h)
    if D.frame(pair.alpha) != (D.unit[a], pair.h, pair.v, D.vid(a)):
        return False
    if D.frame(pair.beta) != (pair.h, D.unit[b], D.vid(b), pair.v):
        return False
    side = D.hcomp_cells.get((pair.alpha, pair.beta))
    return side == D.one(pair.h) and D.vcomp(pair.beta, pair.alpha) == D.unit_cell[pair.v]


def all_companion_pairs(D: FinDoubleCategory, f: str) -> list[CompanionPair]:
    a, b = D.ends(f)
    out = []
    for v in D.vertical.hom(a, b):
        for psi in D.cells_with_frame(D.unit[a], f, D.vid(a), v):
            for chi in D.cells_with_frame(f, D.unit[b], v, D.vid(b)):
                pair = CompanionPair(f, v, psi, chi)
                if companion_equations_hold(D, pair):
                    out.append(pair)
    return out


def find_companion(D: FinDoubleCategory, f: str) -> CompanionPair | None:
    pairs = all_companion_pairs(D, f)
    return pairs[0] if pairs else None


def find_conjoint(D: FinDoubleCategory, u: str, cross_check: bool = False) -> ConjointPair | None:
    b, a = D.ends(u)
    found = None
    for v in D.vertical.hom(a, b):
        for alpha in D.cells_with_frame(D.unit[a], u, v, D.vid(a)):
            for beta in D.cells_with_frame(u, D.unit[b], D.vid(b), v):
                pair = ConjointPair(u, v, alpha, beta)
                if conjoint_equations_hold(D, pair):
                    found = pair
                    break
            if found:
                break
        if found:
            break
    if cross_check and (found is None) != (find_companion(D, u) is None):
        raise DoubleCategoryError(f"{u}: companion and conjoint existence disagree")
    return found


@dataclass(frozen=True)
class NormalizedPrecompanion:
    phi: str
    fbar: str
    rbar: str
    lbar: str
    left_companion: CompanionPair
    right_companion: CompanionPair


@dataclass(frozen=True)
class PrecompanionWitness:
    phi: str
    fprime: str
    r_f: str
    left_companion: CompanionPair
    phiprime: str
    fsecond: str
    l_f: str
    right_companion: CompanionPair
    normalized: NormalizedPrecompanion | None = None
    nu: str | None = None


class _CompanionCache:
    def __init__(self, D):
        self.D = D
        self.memo: dict[str, CompanionPair | None] = {}

    def __call__(self, f):
        if f not in self.memo:
            self.memo[f] = find_companion(self.D, f)
        return self.memo[f]


def _iso_targets(D, f):
    out = {}
    for c in D.cells.arrows_from(f):
        if is_isomorphism(D.cells, c)[0]:
            out.setdefault(D.cells.cod(c), c)
    return sorted(out.items(), key=lambda kv: (kv[1] != D.one(f), kv[0]))


def left_precompanion_witnesses(D, f, companion=None):
    companion = companion or _CompanionCache(D)
    for fp, phi in _iso_targets(D, f):
        for r in D.horizontals_from(D.tgt[fp]):
            pair = companion(D.hcomp(r, fp))
            if pair is not None:
                yield phi, fp, r, pair


def right_precompanion_witnesses(D, f, companion=None):
    companion = companion or _CompanionCache(D)
    for fs, phi in _iso_targets(D, f):
        for l in D.horizontals:
            if D.tgt[l] != D.src[fs]:
                continue
            pair = companion(D.hcomp(fs, l))
            if pair is not None:
                yield phi, fs, l, pair


def iso_cell(D: FinDoubleCategory, top: str, bottom: str) -> str | None:
    for c in D.cells_between(top, bottom):
        if is_isomorphism(D.cells, c)[0]:
            return c
    return None


def find_precompanion(D: FinDoubleCategory, f: str, companion=None) -> PrecompanionWitness | None:
    companion = companion or _CompanionCache(D)
    left = next(left_precompanion_witnesses(D, f, companion), None)
    right = next(right_precompanion_witnesses(D, f, companion), None)
    if left is None or right is None:
        return None
    normalized = None
    for fbar, phi in _iso_targets(D, f):
        rights = [(r, companion(D.hcomp(r, fbar))) for r in D.horizontals_from(D.tgt[fbar])]
        lefts = [(l, companion(D.hcomp(fbar, l))) for l in D.horizontals if D.tgt[l] == D.src[fbar]]
        rights = [x for x in rights if x[1] is not None]
        lefts = [x for x in lefts if x[1] is not None]
        if rights and lefts:
            normalized = NormalizedPrecompanion(phi, fbar, rights[0][0], lefts[0][0], rights[0][1], lefts[0][1])
            break
    return PrecompanionWitness(
        *left, *right, normalized=normalized, nu=iso_cell(D, left[2], right[2])
    )


def precompanion_witness_valid(D: FinDoubleCategory, wit: PrecompanionWitness, f: str) -> bool:
    ok = (
        D.cells.arrows[wit.phi] == (f, wit.fprime)
        and D.cells.arrows[wit.phiprime] == (f, wit.fsecond)
        and is_isomorphism(D.cells, wit.phi)[0]
        and is_isomorphism(D.cells, wit.phiprime)[0]
        and wit.left_companion.h == D.hcomp(wit.r_f, wit.fprime)
        and wit.right_companion.h == D.hcomp(wit.fsecond, wit.l_f)
        and companion_equations_hold(D, wit.left_companion)
        and companion_equations_hold(D, wit.right_companion)
    )
    if ok and wit.normalized is not None:
        n = wit.normalized
        ok = (
            D.cells.arrows[n.phi] == (f, n.fbar)
            and is_isomorphism(D.cells, n.phi)[0]
            and n.left_companion.h == D.hcomp(n.rbar, n.fbar)
            and n.right_companion.h == D.hcomp(n.fbar, n.lbar)
            and companion_equations_hold(D, n.left_companion)
            and companion_equations_hold(D, n.right_companion)
        )
    if ok and wit.nu is not None:
        ok = D.cells.arrows[wit.nu] == (wit.r_f, wit.l_f) and is_isomorphism(D.cells, wit.nu)[0]
    return ok


@dataclass(eq=False)
class CompanionDoubleCategory:
    """The double category of companions with its quadruple index."""

    double: FinDoubleCategory
    quadruples: dict[str, CompanionPair]
    quadruple_id: dict[CompanionPair, str]
    cell_data: dict[str, tuple[str, str, str]]


def _compose_quadruples(D: FinDoubleCategory, q2: CompanionPair, q1: CompanionPair) -> CompanionPair:
    """Vertical composite: ``q1`` on top, then ``q2``."""
    h = D.hcomp(q2.h, q1.h)
    v = D.vertical.compose(q2.v, q1.v)
    psi = D.vcomp(
        D.hcomp_cell(q2.psi, D.one(q1.h)),
        D.hcomp_cell(D.unit_cell[q1.v], q1.psi),
    )
    chi = D.vcomp(
        D.hcomp_cell(q2.chi, D.unit_cell[q2.v]),
        D.hcomp_cell(D.one(q2.h), q1.chi),
    )
    return CompanionPair(h, v, psi, chi)


def comp_cell_conditions(D: FinDoubleCategory, cell: str, q1: CompanionPair, q2: CompanionPair) -> bool:
    """Whether a cell of ``D`` with left side ``q1.v`` and right side ``q2.v`` lives in the companion double category."""
    f, g, v1, v2 = D.frame(cell)
    if (v1, v2) != (q1.v, q2.v):
        return False
    if D.hcomp_arrows.get((q2.h, f)) != D.hcomp_arrows.get((g, q1.h)):
        return False
    if D.hcomp_cells.get((q2.chi, cell)) != D.hcomp_cells.get((D.one(g), q1.chi)):
        return False
    return D.hcomp_cells.get((cell, q1.psi)) == D.hcomp_cells.get((q2.psi, D.one(f)))


def build_companion_double_category(D: FinDoubleCategory) -> CompanionDoubleCategory:
    quads: list[CompanionPair] = []
    for f in D.horizontals:
        quads.extend(all_companion_pairs(D, f))
    ident = {a: CompanionPair(D.unit[a], D.vid(a), D.one(D.unit[a]), D.one(D.unit[a])) for a in D.objects}
    for a, q in ident.items():
        if q not in quads:
            raise DoubleCategoryError(f"unit quadruple at {a} fails the binding equations")
    names: dict[CompanionPair, str] = {}
    for a, q in ident.items():
        names[q] = f"comp[{a}]"
    for q in sorted(quads):
        names.setdefault(q, f"comp[{q.h}|{q.v}|{q.psi}|{q.chi}]")
    by_name = {n: q for q, n in names.items()}
    arrows = {n: (D.src[q.h], D.tgt[q.h]) for n, q in by_name.items()}
    table = {}
    for n1, q1 in by_name.items():
        for n2, q2 in by_name.items():
            if D.tgt[q1.h] == D.src[q2.h]:
                q = _compose_quadruples(D, q2, q1)
                if q not in names:
                    raise DoubleCategoryError(f"composite of quadruples {n2} . {n1} is not a companion pair")
                table[(n2, n1)] = names[q]
    X0 = FinCategory(D.objects, arrows, {a: names[q] for a, q in ident.items()}, table, f"Comp({D.name})_0")

    by_v: dict[str, list[str]] = {}
    for n, q in by_name.items():
        by_v.setdefault(q.v, []).append(n)
    cell_data: dict[str, tuple[str, str, str]] = {}
    cell_name: dict[tuple[str, str, str], str] = {}
    for c in D.cell_ids:
        for n1 in by_v.get(D.left[c], ()):
            for n2 in by_v.get(D.right[c], ()):
                if comp_cell_conditions(D, c, by_name[n1], by_name[n2]):
                    key = (c, n1, n2)
                    name = f"{c}@{n1}|{n2}"
                    cell_data[name] = key
                    cell_name[key] = name
    identity_cells = {}
    for f in D.horizontals:
        a, b = D.ends(f)
        key = (D.one(f), names[ident[a]], names[ident[b]])
        if key not in cell_name:
            raise DoubleCategoryError(f"identity cell on {f} fails the companion conditions")
        identity_cells[f] = cell_name[key]
    X1_arrows = {n: D.cells.arrows[c] for n, (c, _, _) in cell_data.items()}
    X1_table = {}
    for n1, (c1, l1, r1) in cell_data.items():
        for n2, (c2, l2, r2) in cell_data.items():
            if D.cells.cod(c1) != D.cells.dom(c2):
                continue
            key = (D.vcomp(c2, c1), table[(l2, l1)], table[(r2, r1)])
            if key not in cell_name:
                raise DoubleCategoryError(f"vertical composite {n2} . {n1} leaves the companion cells")
            X1_table[(n2, n1)] = cell_name[key]
    X1 = FinCategory(D.horizontals, X1_arrows, identity_cells, X1_table, f"Comp({D.name})_1")
    unit_cell = {}
    for n, q in by_name.items():
        key = (D.unit_cell[q.v], n, n)
        if key not in cell_name:
            raise DoubleCategoryError(f"unit cell of {n} fails the companion conditions")
        unit_cell[n] = cell_name[key]
    hcells = {}
    for n1, (c1, l1, r1) in cell_data.items():
        for n2, (c2, l2, r2) in cell_data.items():
            if r1 != l2:
                continue
            key = (D.hcomp_cell(c2, c1), l1, r2)
            if key not in cell_name:
                raise DoubleCategoryError(f"horizontal composite {n2} . {n1} leaves the companion cells")
            hcells[(n2, n1)] = cell_name[key]
    comp = FinDoubleCategory(
        X0,
        X1,
        src=dict(D.src),
        tgt=dict(D.tgt),
        left={n: l for n, (_, l, _) in cell_data.items()},
        right={n: r for n, (_, _, r) in cell_data.items()},
        unit=dict(D.unit),
        unit_cell=unit_cell,
        hcomp_arrows=dict(D.hcomp_arrows),
        hcomp_cells=hcells,
        name=f"Comp({D.name})",
    )
    report = validate_double_category(comp)
    if not report.passed:
        raise DoubleCategoryError(f"companion double category invalid: {report.problems[:3]}")
    return CompanionDoubleCategory(comp, by_name, names, cell_data)


@dataclass(frozen=True, eq=False)
class DoubleFunctor:
    source: FinDoubleCategory
    target: FinDoubleCategory
    objects: Mapping[str, str]
    verticals: Mapping[str, str]
    horizontals: Mapping[str, str]
    cells: Mapping[str, str]
    name: str = "F"


def verify_double_functor(F: DoubleFunctor) -> list[str]:
    S, T = F.source, F.target
    problems = _functor_problems("vertical part", S.vertical, T.vertical, F.objects, F.verticals)
    problems += _functor_problems("cell part", S.cells, T.cells, F.horizontals, F.cells)
    if problems:
        return problems
    for f in S.horizontals:
        if T.ends(F.horizontals[f]) != (F.objects[S.src[f]], F.objects[S.tgt[f]]):
            problems.append(f"horizontal {f} lands between the wrong objects")
    for c in S.cell_ids:
        if (T.left[F.cells[c]], T.right[F.cells[c]]) != (F.verticals[S.left[c]], F.verticals[S.right[c]]):
            problems.append(f"cell {c} lands with the wrong sides")
    for a in S.objects:
        if F.horizontals[S.unit[a]] != T.unit[F.objects[a]]:
            problems.append(f"horizontal unit at {a} not preserved")
    for v in S.verticals:
        if F.cells[S.unit_cell[v]] != T.unit_cell[F.verticals[v]]:
            problems.append(f"unit cell of {v} not preserved")
    for (g, f), h in S.hcomp_arrows.items():
        if F.horizontals[h] != T.hcomp_arrows.get((F.horizontals[g], F.horizontals[f])):
            problems.append(f"horizontal composite {g} . {f} not preserved")
    for (b, a), c in S.hcomp_cells.items():
        if F.cells[c] != T.hcomp_cells.get((F.cells[b], F.cells[a])):
            problems.append(f"cell composite {b} . {a} not preserved")
    return problems


def compose_functors(G: DoubleFunctor, F: DoubleFunctor) -> DoubleFunctor:
    """``G . F``."""
    return DoubleFunctor(
        F.source,
        G.target,
        {k: G.objects[v] for k, v in F.objects.items()},
        {k: G.verticals[v] for k, v in F.verticals.items()},
        {k: G.horizontals[v] for k, v in F.horizontals.items()},
        {k: G.cells[v] for k, v in F.cells.items()},
        f"{G.name}{F.name}",
    )


def identity_functor(D: FinDoubleCategory) -> DoubleFunctor:
    return DoubleFunctor(
        D, D,
        {a: a for a in D.objects},
        {v: v for v in D.verticals},
        {f: f for f in D.horizontals},
        {c: c for c in D.cell_ids},
        "Id",
    )


@dataclass(frozen=True, eq=False)
class HorizontalTransformation:
    source: DoubleFunctor
    target: DoubleFunctor
    components: Mapping[str, str]
    cell_components: Mapping[str, str]


def verify_horizontal_transformation(a: HorizontalTransformation, invertible: bool = False) -> list[str]:
    G, K = a.source, a.target
    S, T = G.source, G.target
    problems = []
    for x in S.objects:
        comp = a.components.get(x)
        if comp is None or T.ends(comp) != (G.objects[x], K.objects[x]):
            problems.append(f"component at {x} has the wrong ends")
    for v in S.verticals:
        c = a.cell_components.get(v)
        x, y = S.vertical.arrows[v]
        if c is None or T.frame(c) != (a.components.get(x), a.components.get(y), G.verticals[v], K.verticals[v]):
            problems.append(f"cell component at {v} has the wrong frame")
    if problems:
        return problems
    for x in S.objects:
        if a.cell_components[S.vid(x)] != T.one(a.components[x]):
            problems.append(f"cell component at the identity on {x} is not an identity")
    for v2, v1 in S.vertical.composable_pairs():
        if a.cell_components[S.vertical.compose(v2, v1)] != T.vcomp(a.cell_components[v2], a.cell_components[v1]):
            problems.append(f"not functorial at {v2} . {v1}")
    for c in S.cell_ids:
        lhs = T.hcomp_cells.get((a.cell_components[S.right[c]], G.cells[c]))
        rhs = T.hcomp_cells.get((K.cells[c], a.cell_components[S.left[c]]))
        if lhs is None or lhs != rhs:
            problems.append(f"not natural at cell {c}")
    if invertible:
        for x in S.objects:
            if T.horizontal_inverse(a.components[x]) is None:
                problems.append(f"component at {x} is not a horizontal isomorphism")
        for v in S.verticals:
            if T.horizontal_inverse_cell(a.cell_components[v]) is None:
                problems.append(f"cell component at {v} is not horizontally invertible")
    return problems


def find_horizontal_isomorphism(G: DoubleFunctor, K: DoubleFunctor) -> HorizontalTransformation | None:
    """Search for an invertible horizontal transformation ``G => K``."""
    S, T = G.source, G.target
    objs = list(S.objects)
    candidates = {
        x: [h for h in T.horizontals_between(G.objects[x], K.objects[x]) if T.horizontal_inverse(h) is not None]
        for x in objs
    }

    def arrows_ok(assign):
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
        for h in candidates[objs[i]]:
            assign[objs[i]] = h
            if arrows_ok(assign):
                yield from search(i + 1, assign)
            del assign[objs[i]]

    for comps in search(0, {}):
        cell_options = []
        for v in S.verticals:
            x, y = S.vertical.arrows[v]
            cell_options.append(T.cells_with_frame(comps[x], comps[y], G.verticals[v], K.verticals[v]))
        if any(not o for o in cell_options):
            continue
        for choice in product(*cell_options):
            a = HorizontalTransformation(G, K, comps, dict(zip(S.verticals, choice)))
            if not verify_horizontal_transformation(a, invertible=True):
                return a
    return None


def to_dot(D: FinDoubleCategory) -> str:
    def q(s):
        return '"' + s.replace('"', '\\"') + '"'

    lines = [f"digraph {q(D.name)} {{"]
    for a in D.objects:
        lines.append(f"  {q(a)};")
    for f in D.horizontals:
        lines.append(f"  {q(D.src[f])} -> {q(D.tgt[f])} [label={q(f)}, style=solid];")
    for v in D.verticals:
        a, b = D.vertical.arrows[v]
        lines.append(f"  {q(a)} -> {q(b)} [label={q(v)}, style=dashed];")
    for c in D.cell_ids:
        top, bottom, left, right = D.frame(c)
        lines.append(f"  // cell {c}: top={top} bottom={bottom} left={left} right={right}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def iter_horizontal_paths(D: FinDoubleCategory, k: int) -> Iterable[tuple[str, ...]]:
    paths = [(f,) for f in D.horizontals]
    for _ in range(k - 1):
        paths = [p + (g,) for p in paths for g in D.horizontals_from(D.tgt[p[-1]])]
    return paths
