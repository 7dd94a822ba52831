"""Finite categories given by explicit composition tables.

A :class:`FinCategory` stores every composite of a composable pair.  The
convention is ``compose(g, f) = g . f``: ``f`` is applied first.  Arrow and
object ids are strings, and every deterministic choice in the package
(chosen squares, canonical representatives) is lexicographic in those ids.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping


class CategoryError(ValueError):
    pass


class NoSquare(LookupError):
    pass


class NoCoequalizer(LookupError):
    pass


@dataclass(frozen=True, eq=False)
class FinCategory:
    objects: tuple[str, ...]
    arrows: Mapping[str, tuple[str, str]]
    identity: Mapping[str, str]
    table: Mapping[tuple[str, str], str]
    name: str = "C"

    @classmethod
    def build(
        cls,
        objects: Iterable[str],
        arrows: Mapping[str, tuple[str, str]],
        compositions: Mapping[tuple[str, str], str] = (),
        name: str = "C",
    ) -> "FinCategory":
        """Add identities ``id_<obj>`` and their composites to declared data.

        Declared compositions win over the generated unit composites, so a
        deliberately broken table survives construction and fails validation.
        """
        objects = tuple(objects)
        identity = {a: f"id_{a}" for a in objects}
        all_arrows = {identity[a]: (a, a) for a in objects}
        all_arrows.update(arrows)
        table: dict[tuple[str, str], str] = {}
        for f, (a, b) in all_arrows.items():
            if a in identity and b in identity:
                table[(identity[b], f)] = f
                table[(f, identity[a])] = f
        table.update(dict(compositions))
        return cls(objects, all_arrows, identity, table, name)

    @cached_property
    def _hom(self) -> dict[tuple[str, str], tuple[str, ...]]:
        hom: dict[tuple[str, str], list[str]] = {}
        for f in sorted(self.arrows):
            hom.setdefault(self.arrows[f], []).append(f)
        return {k: tuple(v) for k, v in hom.items()}

    @cached_property
    def sorted_arrows(self) -> tuple[str, ...]:
        return tuple(sorted(self.arrows))

    @cached_property
    def sorted_objects(self) -> tuple[str, ...]:
        return tuple(sorted(self.objects))

    def dom(self, f: str) -> str:
        try:
            return self.arrows[f][0]
        except KeyError:
            raise CategoryError(f"unknown arrow {f!r}") from None

    def cod(self, f: str) -> str:
        try:
            return self.arrows[f][1]
        except KeyError:
            raise CategoryError(f"unknown arrow {f!r}") from None

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return self._hom.get((a, b), ())

    def arrows_into(self, b: str) -> tuple[str, ...]:
        return tuple(f for f in self.sorted_arrows if self.arrows[f][1] == b)

    def arrows_from(self, a: str) -> tuple[str, ...]:
        return tuple(f for f in self.sorted_arrows if self.arrows[f][0] == a)

    def is_identity(self, f: str) -> bool:
        return self.identity.get(self.dom(f)) == f

    def compose(self, g: str, f: str) -> str:
        try:
            return self.table[(g, f)]
        except KeyError:
            if self.cod(f) != self.dom(g):
                raise CategoryError(f"{g} . {f} is not composable") from None
            raise CategoryError(f"missing composite {g} . {f}") from None

    def comp(self, *arrows: str) -> str:
        """Compose right to left: ``comp(h, g, f) = h . g . f``."""
        *rest, result = arrows
        for g in reversed(rest):
            result = self.compose(g, result)
        return result

    def composable_pairs(self) -> Iterable[tuple[str, str]]:
        for f in self.sorted_arrows:
            for g in self.arrows_from(self.cod(f)):
                yield g, f


@dataclass
class ValidationReport:
    passed: bool
    problems: list[tuple[str, str, tuple[str, ...]]] = field(default_factory=list)

    @property
    def first(self) -> tuple[str, str, tuple[str, ...]] | None:
        return self.problems[0] if self.problems else None


def validate_category(cat: FinCategory) -> ValidationReport:
    """Check references first, then totality, units, endpoints, associativity.

    Each problem is ``(kind, law, ids)`` with kind ``reference`` or ``law``.
    Law checks stop at the first violated law family.
    """
    problems = []
    objs = set(cat.objects)
    for f, (a, b) in sorted(cat.arrows.items()):
        for x in (a, b):
            if x not in objs:
                problems.append(("reference", "unknown object", (f, x)))
    for a in cat.sorted_objects:
        i = cat.identity.get(a)
        if i is None or i not in cat.arrows:
            problems.append(("reference", "missing identity", (a,)))
    for (g, f), h in sorted(cat.table.items()):
        for x in (g, f, h):
            if x not in cat.arrows:
                problems.append(("reference", "unknown arrow", (g, f, h)))
                break
    if problems:
        return ValidationReport(False, problems)

    for (g, f) in sorted(cat.table):
        if cat.cod(f) != cat.dom(g):
            problems.append(("law", "composite of non-composable pair", (g, f)))
    for g, f in cat.composable_pairs():
        if (g, f) not in cat.table:
            problems.append(("law", "totality", (g, f)))
    if problems:
        return ValidationReport(False, problems)

    for f in cat.sorted_arrows:
        a, b = cat.arrows[f]
        if cat.arrows[cat.identity[a]] != (a, a):
            problems.append(("law", "identity endpoints", (cat.identity[a],)))
        if cat.compose(cat.identity[b], f) != f or cat.compose(f, cat.identity[a]) != f:
            problems.append(("law", "unit law", (f,)))
    if problems:
        return ValidationReport(False, problems)

    for (g, f), h in sorted(cat.table.items()):
        if cat.arrows[h] != (cat.dom(f), cat.cod(g)):
            problems.append(("law", "composite endpoints", (g, f, h)))
    if problems:
        return ValidationReport(False, problems)

    for g, f in cat.composable_pairs():
        gf = cat.compose(g, f)
        for h in cat.arrows_from(cat.cod(g)):
            if cat.compose(h, gf) != cat.compose(cat.compose(h, g), f):
                problems.append(("law", "associativity", (h, g, f)))
    return ValidationReport(not problems, problems)


def is_isomorphism(cat: FinCategory, f: str) -> tuple[bool, str | None]:
    a, b = cat.dom(f), cat.cod(f)
    for g in cat.hom(b, a):
        if cat.compose(g, f) == cat.identity[a] and cat.compose(f, g) == cat.identity[b]:
            return True, g
    return False, None


def check_w(cat: FinCategory, W: Iterable[str]) -> frozenset[str]:
    W = frozenset(W)
    unknown = sorted(W - set(cat.arrows))
    if unknown:
        raise CategoryError(f"W mentions unknown arrows {unknown}")
    return W


@dataclass(frozen=True)
class Square:
    """Completion of a cospan ``f: C->B``, ``w: A->B`` with ``w`` in W.

    ``fbar: apex->A`` and ``wbar: apex->C`` with ``wbar`` in W and
    ``w . fbar == f . wbar``.
    """

    apex: str
    wbar: str
    fbar: str


@dataclass(frozen=True)
class ConditionResult:
    passed: bool
    counterexample: tuple[str, ...] | None = None

    def __str__(self) -> str:
        return "PASS" if self.passed else "FAIL"


@dataclass
class CFReport:
    cf1: ConditionResult
    cf2: ConditionResult
    cf3: ConditionResult
    three_for_two: ConditionResult
    squares: dict[tuple[str, str], Square] = field(default_factory=dict)
    coequalizers: dict[tuple[str, str, str], str] = field(default_factory=dict)

    @property
    def fractions_ok(self) -> bool:
        return self.cf1.passed and self.cf2.passed and self.cf3.passed

    def lines(self) -> list[str]:
        out = [
            f"cf1={self.cf1} cf2={self.cf2} cf3={self.cf3} "
            f"three_for_two={self.three_for_two}"
        ]
        for key in ("cf1", "cf2", "cf3", "three_for_two"):
            res = getattr(self, key)
            if not res.passed:
                out.append(f"{key}_counterexample=({','.join(res.counterexample)})")
        return out


def _square_candidates(cat, W, f, w):
    for d in cat.sorted_objects:
        for wbar in cat.hom(d, cat.dom(f)):
            if wbar not in W:
                continue
            for fbar in cat.hom(d, cat.dom(w)):
                if cat.compose(w, fbar) == cat.compose(f, wbar):
                    yield Square(d, wbar, fbar)


def cf2_square(cat: FinCategory, W: frozenset[str], f: str, w: str) -> Square:
    if w not in W:
        raise CategoryError(f"{w} is not in W")
    if cat.cod(f) != cat.cod(w):
        raise CategoryError(f"{f} and {w} do not form a cospan")
    # candidates are generated in (apex, wbar, fbar) order
    for sq in _square_candidates(cat, W, f, w):
        return sq
    raise NoSquare((f, w))


def cf3_coequalizing_arrow(cat: FinCategory, W: frozenset[str], f: str, g: str, w: str) -> str:
    if w not in W:
        raise CategoryError(f"{w} is not in W")
    if cat.arrows[f] != cat.arrows[g] or cat.compose(w, f) != cat.compose(w, g):
        raise CategoryError(f"{w} does not equalize {f}, {g}")
    a = cat.dom(f)
    if f == g:
        return cat.identity[a]
    for d in cat.sorted_objects:
        for t in cat.hom(d, a):
            if t in W and cat.compose(f, t) == cat.compose(g, t):
                return t
    raise NoCoequalizer((f, g, w))


def check_fractions_conditions(cat: FinCategory, W: Iterable[str]) -> CFReport:
    W = check_w(cat, W)
    report = CFReport(*(ConditionResult(True) for _ in range(4)))

    for f in cat.sorted_arrows:
        if f not in W and is_isomorphism(cat, f)[0]:
            report.cf1 = ConditionResult(False, (f,))
            break
    if report.cf1.passed:
        for g, f in cat.composable_pairs():
            if f in W and g in W and cat.compose(g, f) not in W:
                report.cf1 = ConditionResult(False, (g, f))
                break

    for w in sorted(W):
        for f in cat.arrows_into(cat.cod(w)):
            try:
                report.squares[(f, w)] = cf2_square(cat, W, f, w)
            except NoSquare:
                if report.cf2.passed:
                    report.cf2 = ConditionResult(False, (f, w))

    for w in sorted(W):
        b = cat.dom(w)
        for f in cat.arrows_into(b):
            for g in cat.hom(cat.dom(f), b):
                if g <= f or cat.compose(w, f) != cat.compose(w, g):
                    continue
                try:
                    report.coequalizers[(f, g, w)] = cf3_coequalizing_arrow(cat, W, f, g, w)
                except NoCoequalizer:
                    if report.cf3.passed:
                        report.cf3 = ConditionResult(False, (f, g, w))

    for g, f in cat.composable_pairs():
        h = cat.compose(g, f)
        if (f in W) + (g in W) + (h in W) == 2:
            report.three_for_two = ConditionResult(False, (g, f, h))
            break
    return report


def violates(cat: FinCategory, W: Iterable[str], condition: str, ce: tuple[str, ...]) -> bool:
    """Re-check a counterexample straight from the definition of the condition."""
    W = frozenset(W)
    if condition == "cf1":
        if len(ce) == 1:
            return ce[0] not in W and is_isomorphism(cat, ce[0])[0]
        g, f = ce
        return f in W and g in W and cat.compose(g, f) not in W
    if condition == "cf2":
        f, w = ce
        return w in W and not any(
            cat.compose(w, fb) == cat.compose(f, wb)
            for d in cat.objects
            for wb in cat.hom(d, cat.dom(f))
            if wb in W
            for fb in cat.hom(d, cat.dom(w))
        )
    if condition == "cf3":
        f, g, w = ce
        return (
            w in W
            and cat.compose(w, f) == cat.compose(w, g)
            and not any(
                t in W and cat.compose(f, t) == cat.compose(g, t)
                for t in cat.arrows
                if cat.cod(t) == cat.dom(f)
            )
        )
    if condition == "three_for_two":
        g, f, h = ce
        return cat.compose(g, f) == h and (f in W) + (g in W) + (h in W) == 2
    raise ValueError(condition)


def find_isomorphism(c: FinCategory, d: FinCategory) -> tuple[dict, dict] | None:
    """Search for an explicit isomorphism of finite categories."""
    if len(c.objects) != len(d.objects) or len(c.arrows) != len(d.arrows):
        return None

    def profile(cat, a):
        outs = sorted(len(cat.hom(a, b)) for b in cat.objects)
        ins = sorted(len(cat.hom(b, a)) for b in cat.objects)
        return (len(cat.hom(a, a)), tuple(outs), tuple(ins))

    c_objs = list(c.sorted_objects)
    d_prof = {b: profile(d, b) for b in d.objects}
    c_prof = {a: profile(c, a) for a in c_objs}

    def objects(i, omap, used):
        if i == len(c_objs):
            yield dict(omap)
            return
        a = c_objs[i]
        for b in d.sorted_objects:
            if b in used or d_prof[b] != c_prof[a]:
                continue
            if all(
                len(c.hom(a, x)) == len(d.hom(b, omap[x]))
                and len(c.hom(x, a)) == len(d.hom(omap[x], b))
                for x in omap
            ) and len(c.hom(a, a)) == len(d.hom(b, b)):
                omap[a] = b
                yield from objects(i + 1, omap, used | {b})
                del omap[a]

    order = sorted(c.arrows, key=lambda f: (not c.is_identity(f), f))
    for omap in objects(0, {}, frozenset()):
        amap = {c.identity[a]: d.identity[omap[a]] for a in c.objects}
        rest = [f for f in order if f not in amap]
        found = _match_arrows(c, d, omap, amap, rest, 0, set(amap.values()))
        if found is not None:
            return omap, found
    return None


def _match_arrows(c, d, omap, amap, rest, i, used):
    if i == len(rest):
        return dict(amap)
    f = rest[i]
    a, b = c.arrows[f]
    for g in d.hom(omap[a], omap[b]):
        if g in used:
            continue
        amap[f] = g
        ok = True
        for (x, y), z in c.table.items():
            if f in (x, y, z) and x in amap and y in amap and z in amap:
                if d.compose(amap[x], amap[y]) != amap[z]:
                    ok = False
                    break
        if ok:
            found = _match_arrows(c, d, omap, amap, rest, i + 1, used | {g})
            if found is not None:
                return found
        del amap[f]
    return None


def all_triples(cat: FinCategory) -> Iterable[tuple[str, str, str]]:
    for g, f in cat.composable_pairs():
        for h in cat.arrows_from(cat.cod(g)):
            yield h, g, f


__all__ = [
    "CategoryError",
    "NoSquare",
    "NoCoequalizer",
    "FinCategory",
    "ValidationReport",
    "validate_category",
    "is_isomorphism",
    "check_w",
    "Square",
    "ConditionResult",
    "CFReport",
    "cf2_square",
    "cf3_coequalizing_arrow",
    "check_fractions_conditions",
    "violates",
    "find_isomorphism",
    "all_triples",
]
