"""Spans, the bicategory of fractions, the category of fractions, and an
independent localization by zigzag paths used as an oracle."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Hashable, Iterable

from .fincat import (
    CategoryError,
    FinCategory,
    cf2_square,
    check_fractions_conditions,
    check_w,
    validate_category,
)


class FractionsError(RuntimeError):
    pass


class SaturationWarning(UserWarning):
    pass


@dataclass(frozen=True, order=True)
class Span:
    """``A <-left- apex -right-> B`` with ``left`` in W."""

    apex: str
    left: str
    right: str

    def __str__(self) -> str:
        return f"({self.apex},{self.left},{self.right})"


@dataclass(frozen=True, order=True)
class SpanCellWitness:
    apex: str
    u1: str
    u2: str


def span_feet(cat: FinCategory, s: Span) -> tuple[str, str]:
    return cat.cod(s.left), cat.cod(s.right)


def is_span(cat: FinCategory, W: frozenset[str], s: Span) -> bool:
    return s.left in W and cat.dom(s.left) == s.apex == cat.dom(s.right)


def unit_span(cat: FinCategory, a: str) -> Span:
    i = cat.identity[a]
    return Span(a, i, i)


def all_spans(cat: FinCategory, W: frozenset[str]) -> list[Span]:
    out = []
    for s in cat.sorted_objects:
        for w in cat.arrows_from(s):
            if w in W:
                out.extend(Span(s, w, f) for f in cat.arrows_from(s))
    return sorted(out)


def span_cell(cat: FinCategory, W: frozenset[str], s1: Span, s2: Span) -> SpanCellWitness | None:
    if span_feet(cat, s1) != span_feet(cat, s2):
        raise CategoryError(f"spans {s1} and {s2} are not parallel")
    for t in cat.sorted_objects:
        for u1 in cat.hom(t, s1.apex):
            left = cat.compose(s1.left, u1)
            if left not in W:
                continue
            right = cat.compose(s1.right, u1)
            for u2 in cat.hom(t, s2.apex):
                if cat.compose(s2.left, u2) == left and cat.compose(s2.right, u2) == right:
                    return SpanCellWitness(t, u1, u2)
    return None


def compose_spans(cat: FinCategory, W: frozenset[str], s1: Span, s2: Span) -> Span:
    """The composite ``s2 . s1``: first ``s1: A -> B`` then ``s2: B -> C``."""
    if cat.cod(s1.right) != cat.cod(s2.left):
        raise CategoryError(f"spans {s1} and {s2} are not composable")
    sq = cf2_square(cat, W, s1.right, s2.left)
    return Span(sq.apex, cat.compose(s1.left, sq.wbar), cat.compose(s2.right, sq.fbar))


class _UnionFind:
    def __init__(self, items: Iterable[Hashable] = ()):
        self.parent = {x: x for x in items}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True

    def classes(self) -> dict:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


UnionFind = _UnionFind


@dataclass(eq=False)
class PosetalBicategory:
    """A bicategory whose 2-cells are recorded only as a relation on 1-cells."""

    objects: tuple
    one_cells: dict
    two_cells: frozenset
    compose: dict
    identity: dict
    direct_two_cells: frozenset = frozenset()

    @property
    def closure_added(self) -> frozenset:
        return self.two_cells - self.direct_two_cells

    def ends(self, x) -> tuple:
        return self.one_cells[x]

    def related(self, x, y) -> bool:
        return (x, y) in self.two_cells

    def isomorphic(self, x, y) -> bool:
        return (x, y) in self.two_cells and (y, x) in self.two_cells

    def hom(self, a, b) -> list:
        return sorted(x for x, ends in self.one_cells.items() if ends == (a, b))

    def comp(self, g, f):
        return self.compose[(g, f)]

    def composable(self) -> Iterable[tuple]:
        for f, (_, b) in sorted(self.one_cells.items()):
            for g in self.hom_from(b):
                yield g, f

    def hom_from(self, a) -> list:
        return sorted(x for x, ends in self.one_cells.items() if ends[0] == a)

    def validate(self) -> list[str]:
        problems = []
        for x in self.one_cells:
            if (x, x) not in self.two_cells:
                problems.append(f"2-cell relation not reflexive at {x}")
        for g, f in self.composable():
            h = self.compose.get((g, f))
            if h is None or h not in self.one_cells:
                problems.append(f"composite of {g} after {f} missing")
            elif self.one_cells[h] != (self.one_cells[f][0], self.one_cells[g][1]):
                problems.append(f"composite of {g} after {f} has wrong ends")
        if problems:
            return problems
        by_pair: dict = {}
        for x, y in self.two_cells:
            by_pair.setdefault(x, []).append(y)
        for g, f in self.composable():
            for f2 in by_pair.get(f, ()):
                for g2 in by_pair.get(g, ()):
                    if not self.related(self.compose[(g, f)], self.compose[(g2, f2)]):
                        problems.append(f"2-cells not preserved by composition at ({g},{f})->({g2},{f2})")
        return problems


def _require_fractions(cat, W):
    report = check_fractions_conditions(cat, W)
    if not report.fractions_ok:
        raise FractionsError(f"calculus of fractions fails: {report.lines()}")
    return report


def _closed_relation(items: list, direct: set) -> frozenset:
    uf = _UnionFind(items)
    for x, y in direct:
        uf.union(x, y)
    closed = set()
    for members in uf.classes().values():
        for x in members:
            for y in members:
                closed.add((x, y))
    return frozenset(closed)


def build_fractions_bicategory(cat: FinCategory, W: Iterable[str]) -> PosetalBicategory:
    W = check_w(cat, W)
    _require_fractions(cat, W)
    spans = all_spans(cat, W)
    ends = {s: span_feet(cat, s) for s in spans}
    direct = set()
    for s1 in spans:
        for s2 in spans:
            if ends[s1] == ends[s2] and span_cell(cat, W, s1, s2) is not None:
                direct.add((s1, s2))
    compose = {}
    for s1 in spans:
        for s2 in spans:
            if ends[s1][1] == ends[s2][0]:
                compose[(s2, s1)] = compose_spans(cat, W, s1, s2)
    bicat = PosetalBicategory(
        objects=cat.sorted_objects,
        one_cells=ends,
        two_cells=_closed_relation(spans, direct),
        compose=compose,
        identity={a: unit_span(cat, a) for a in cat.objects},
        direct_two_cells=frozenset(direct),
    )
    problems = bicat.validate()
    if problems:
        raise FractionsError("; ".join(problems[:5]))
    return bicat


def span_classes(bicat: PosetalBicategory) -> dict:
    """Map every span to the least span of its class."""
    uf = _UnionFind(bicat.one_cells)
    for x, y in bicat.two_cells:
        uf.union(x, y)
    return {s: uf.find(s) for s in bicat.one_cells}


def build_fractions_category(cat: FinCategory, W: Iterable[str]) -> FinCategory:
    W = check_w(cat, W)
    bicat = build_fractions_bicategory(cat, W)
    rep = span_classes(bicat)
    names = {}
    for a in cat.objects:
        names[rep[unit_span(cat, a)]] = cat.identity[a]
    for r in sorted(set(rep.values())):
        names.setdefault(r, f"{r.right}/{r.left}")
    arrows = {names[r]: bicat.one_cells[r] for r in set(rep.values())}
    table = {}
    for (s2, s1), s in bicat.compose.items():
        key = (names[rep[s2]], names[rep[s1]])
        value = names[rep[s]]
        if table.setdefault(key, value) != value:
            raise FractionsError(f"composition not well defined on classes at {key}")
    result = FinCategory(
        cat.sorted_objects,
        arrows,
        {a: cat.identity[a] for a in cat.objects},
        table,
        f"{cat.name}[W^-1]",
    )
    report = validate_category(result)
    if not report.passed:
        raise FractionsError(f"category of fractions invalid: {report.first}")
    return result


@dataclass
class ZigzagResult:
    category: FinCategory
    saturated: bool
    length: int
    class_counts: list[int] = field(default_factory=list)


def zigzag_localize(cat: FinCategory, W: Iterable[str], max_len: int | None = None) -> ZigzagResult:
    """Free localization by paths of arrows and formal inverses of W.

    Paths of length at most ``L`` are identified by the elementary moves
    ``[f, g] ~ [g.f]`` and ``[w, w^-1] ~ [] ~ [w^-1, w]``.  With ``k = L // 2``
    the window is saturated once the classes meeting paths of length ``<= k``
    are closed under concatenation and their partition of those paths is the
    same in the previous window.  Two further windows must agree before the
    result is accepted.
    """
    W = check_w(cat, W)
    if max_len is None:
        max_len = 2 * len(cat.arrows)
    letters = []
    for f in cat.sorted_arrows:
        if not cat.is_identity(f):
            letters.append((f, 1))
    for w in sorted(W):
        if not cat.is_identity(w):
            letters.append((w, -1))

    def ends(letter):
        a, b = cat.arrows[letter[0]]
        return (a, b) if letter[1] == 1 else (b, a)

    out_of: dict[str, list] = {a: [] for a in cat.objects}
    for letter in letters:
        out_of[ends(letter)[0]].append(letter)

    def moves(path):
        start, word = path
        for i in range(len(word) - 1):
            (x, sx), (y, sy) = word[i], word[i + 1]
            if sx == 1 and sy == 1:
                h = cat.compose(y, x)
                mid = () if cat.is_identity(h) else ((h, 1),)
            elif x == y and sx == -sy:
                mid = ()
            else:
                continue
            yield (start, word[:i] + mid + word[i + 2:])

    uf = _UnionFind()
    layers = [[(a, ()) for a in cat.sorted_objects]]
    for p in layers[0]:
        uf.add(p)
    end_of = {p: p[0] for p in layers[0]}

    def partition(upto):
        return len({uf.find(p) for layer in layers[: upto + 1] for p in layer})

    def closed(upto):
        reps = {}
        for layer in layers[: upto + 1]:
            for p in layer:
                reps.setdefault(uf.find(p), p)
        short = set(reps)
        for p in reps.values():
            for q in reps.values():
                if end_of[p] == q[0]:
                    r = (p[0], p[1] + q[1])
                    if r not in uf.parent or uf.find(r) not in short:
                        return False
        return True

    counts: list[dict[int, int]] = [{0: partition(0)}]
    saturated_at = None
    length = 0
    for length in range(1, max_len + 1):
        new_layer = []
        for p in layers[-1]:
            for letter in out_of[end_of[p]]:
                q = (p[0], p[1] + (letter,))
                end_of[q] = ends(letter)[1]
                new_layer.append(q)
                uf.add(q)
        for q in new_layer:
            for r in moves(q):
                uf.union(r, q)
        layers.append(new_layer)
        k = length // 2
        counts.append({j: partition(j) for j in range(min(k + 1, length) + 1)})
        stable = counts[length - 1].get(k) == counts[length][k]
        exhausted = not new_layer
        if (stable or exhausted) and (k >= 1 or not letters) and closed(k):
            if saturated_at is None:
                saturated_at = length
            if exhausted or length >= saturated_at + 2:
                break
        else:
            saturated_at = None
    k = length // 2
    category = _zigzag_category(cat, uf, layers[: k + 1], end_of)
    return ZigzagResult(category, saturated_at is not None, saturated_at or length, [c[max(c)] for c in counts])


def _render(word) -> str:
    return ";".join(x if s == 1 else f"{x}^-1" for x, s in word)


def _zigzag_category(cat, uf, layers, end_of):
    reps: dict = {}
    for layer in layers:
        for p in layer:
            root = uf.find(p)
            key = (len(p[1]), _render(p[1]))
            if root not in reps or key < reps[root][0]:
                reps[root] = (key, p)
    names = {}
    for root, (_, p) in reps.items():
        start, word = p
        if not word:
            names[root] = cat.identity[start]
        else:
            names[root] = _render(word)
    arrows = {names[r]: (p[0], end_of[p]) for r, (_, p) in reps.items()}
    table = {}
    for r1, (_, p1) in reps.items():
        for r2, (_, p2) in reps.items():
            if end_of[p1] != p2[0]:
                continue
            q = (p1[0], p1[1] + p2[1])
            if q in uf.parent:
                table[(names[r2], names[r1])] = names[uf.find(q)]
    return FinCategory(
        cat.sorted_objects,
        arrows,
        {a: cat.identity[a] for a in cat.objects},
        table,
        f"{cat.name}[W^-1]_zigzag",
    )


def zigzag_oracle(cat: FinCategory, W: Iterable[str], max_len: int | None = None) -> FinCategory:
    result = zigzag_localize(cat, W, max_len)
    if not result.saturated:
        warnings.warn(
            f"zigzag classes still changing at length {result.length}", SaturationWarning
        )
    return result.category
