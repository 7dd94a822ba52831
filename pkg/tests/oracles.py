"""Brute-force reference computations, written without the package's search code.

Run ``python tests/oracles.py --freeze`` to regenerate ``data/frozen_oracles.json``.
"""

from __future__ import annotations

import json
import sys
from itertools import product
from pathlib import Path

DATA = Path(__file__).parent / "data"
FROZEN = DATA / "frozen_oracles.json"


def _dom(cat, f):
    return cat.arrows[f][0]


def _cod(cat, f):
    return cat.arrows[f][1]


def _comp(cat, g, f):
    return cat.table[(g, f)]


def _arrows(cat, a, b):
    return [f for f, ends in sorted(cat.arrows.items()) if ends == (a, b)]


def laws_hold(cat) -> bool:
    for f, (a, b) in cat.arrows.items():
        if cat.table.get((cat.identity[b], f)) != f or cat.table.get((f, cat.identity[a])) != f:
            return False
    for g in cat.arrows:
        for f in cat.arrows:
            if _cod(cat, f) != _dom(cat, g):
                if (g, f) in cat.table:
                    return False
                continue
            h = cat.table.get((g, f))
            if h is None or cat.arrows.get(h) != (_dom(cat, f), _cod(cat, g)):
                return False
    for h in cat.arrows:
        for g in cat.arrows:
            for f in cat.arrows:
                if _cod(cat, f) == _dom(cat, g) and _cod(cat, g) == _dom(cat, h):
                    if _comp(cat, h, _comp(cat, g, f)) != _comp(cat, _comp(cat, h, g), f):
                        return False
    return True


def isos(cat):
    out = set()
    for f in cat.arrows:
        a, b = cat.arrows[f]
        for g in _arrows(cat, b, a):
            if _comp(cat, g, f) == cat.identity[a] and _comp(cat, f, g) == cat.identity[b]:
                out.add(f)
    return out


def cf_verdicts(cat, W) -> dict[str, bool]:
    """Each condition decided by enumerating in reverse id order."""
    arrows = sorted(cat.arrows, reverse=True)
    objects = sorted(cat.objects, reverse=True)
    closed = all(
        _comp(cat, g, f) in W for f in W for g in W if _cod(cat, f) == _dom(cat, g)
    )
    cf1 = closed and isos(cat) <= W
    cf2 = True
    for f in arrows:
        for w in sorted(W, reverse=True):
            if _cod(cat, f) != _cod(cat, w):
                continue
            found = any(
                _comp(cat, w, fb) == _comp(cat, f, wb)
                for d in objects
                for wb in _arrows(cat, d, _dom(cat, f)) if wb in W
                for fb in _arrows(cat, d, _dom(cat, w))
            )
            cf2 = cf2 and found
    cf3 = True
    for f in arrows:
        for g in arrows:
            if cat.arrows[f] != cat.arrows[g]:
                continue
            for w in W:
                if _dom(cat, w) != _cod(cat, f) or _comp(cat, w, f) != _comp(cat, w, g):
                    continue
                found = any(
                    _comp(cat, f, t) == _comp(cat, g, t)
                    for t in arrows if t in W and _cod(cat, t) == _dom(cat, f)
                )
                cf3 = cf3 and found
    two_of_three = True
    for f in arrows:
        for g in arrows:
            if _cod(cat, f) != _dom(cat, g):
                continue
            flags = [f in W, g in W, _comp(cat, g, f) in W]
            if sum(flags) >= 2 and not all(flags):
                two_of_three = False
    return {"cf1": cf1, "cf2": cf2, "cf3": cf3, "three_for_two": two_of_three}


def counterexample_refutes(cat, W, condition, ce) -> bool:
    """True when ``ce`` really breaks ``condition``; searched independently of the package."""
    if condition == "cf1":
        if len(ce) == 1:
            return ce[0] in isos(cat) and ce[0] not in W
        g, f = ce
        return f in W and g in W and _cod(cat, f) == _dom(cat, g) and _comp(cat, g, f) not in W
    if condition == "cf2":
        f, w = ce
        if w not in W or _cod(cat, f) != _cod(cat, w):
            return False
        return all(
            _comp(cat, w, fb) != _comp(cat, f, wb)
            for wb in W if _cod(cat, wb) == _dom(cat, f)
            for fb in _arrows(cat, _dom(cat, wb), _dom(cat, w))
        )
    if condition == "cf3":
        f, g, w = ce
        if w not in W or cat.arrows[f] != cat.arrows[g] or _dom(cat, w) != _cod(cat, f):
            return False
        if _comp(cat, w, f) != _comp(cat, w, g):
            return False
        return all(_comp(cat, f, t) != _comp(cat, g, t) for t in W if _cod(cat, t) == _dom(cat, f))
    if condition == "three_for_two":
        g, f, h = ce
        return _cod(cat, f) == _dom(cat, g) and _comp(cat, g, f) == h and [f in W, g in W, h in W].count(True) == 2
    raise ValueError(condition)


def span_count(cat, W) -> int:
    return sum(1 for w in W for f in cat.arrows if _dom(cat, f) == _dom(cat, w))


def _classes(items, related):
    parent = list(range(len(items)))

    def find(i):
        while parent[i] != i:
            i = parent[i]
        return i

    for i, a in enumerate(items):
        for j, b in enumerate(items):
            if related(a, b):
                parent[find(i)] = find(j)
    return len({find(i) for i in range(len(items))})


def cw_counts(cat, W) -> dict[str, int]:
    """Objects, vertical classes, horizontals and fillable frames of ``C{W}``."""
    Ws = sorted(W)
    verticals = 0
    for w1 in Ws:
        for w2 in Ws:
            reps = [
                (c, u1, u2)
                for c in sorted(cat.objects)
                for u1 in _arrows(cat, c, _dom(cat, w1))
                for u2 in _arrows(cat, c, _dom(cat, w2))
                if _comp(cat, w1, u1) == _comp(cat, w2, u2) and _comp(cat, w1, u1) in W
            ]

            def witnessed(a, b):
                for e in cat.objects:
                    for r1 in _arrows(cat, e, a[0]):
                        for r2 in _arrows(cat, e, b[0]):
                            if (_comp(cat, a[1], r1) == _comp(cat, b[1], r2)
                                    and _comp(cat, a[2], r1) == _comp(cat, b[2], r2)
                                    and _comp(cat, w1, _comp(cat, a[1], r1)) in W):
                                return True
                return False

            if reps:
                verticals += _classes(reps, witnessed)
    horizontals = [
        (w1, w2, f) for w1 in Ws for w2 in Ws for f in _arrows(cat, _dom(cat, w1), _dom(cat, w2))
    ]

    def fillable(top, bottom):
        (w1, w1p, f1), (w2, w2p, f2) = top, bottom
        for c, cp in product(sorted(cat.objects), repeat=2):
            for u1, u2 in product(_arrows(cat, c, _dom(cat, w1)), _arrows(cat, c, _dom(cat, w2))):
                if _comp(cat, w1, u1) != _comp(cat, w2, u2) or _comp(cat, w1, u1) not in W:
                    continue
                for v1, v2 in product(_arrows(cat, cp, _dom(cat, w1p)), _arrows(cat, cp, _dom(cat, w2p))):
                    if _comp(cat, w1p, v1) != _comp(cat, w2p, v2) or _comp(cat, w1p, v1) not in W:
                        continue
                    for xi in _arrows(cat, c, cp):
                        if _comp(cat, v1, xi) == _comp(cat, f1, u1) and _comp(cat, v2, xi) == _comp(cat, f2, u2):
                            return True
        return False

    cells = sum(1 for t in horizontals for b in horizontals if fillable(t, b))
    return {"objects": len(Ws), "vertical": verticals, "horizontal": len(horizontals), "cells": cells}


def nabla_counts(cat, W) -> dict[str, int]:
    arrows = sum(
        1
        for w in W
        for w2 in W
        for v in _arrows(cat, _dom(cat, w), _dom(cat, w2))
        if _cod(cat, w) == _cod(cat, w2) and _comp(cat, w2, v) == w
    )
    return {"objects": len(W), "arrows": arrows}


def companion_horizontals(D) -> list[str]:
    """Horizontals admitting binding cells, by direct frame enumeration."""
    out = []
    by_frame = {}
    for c in D.cells.arrows:
        by_frame.setdefault((*D.cells.arrows[c], D.left[c], D.right[c]), []).append(c)
    for f in D.horizontals:
        a, b = D.src[f], D.tgt[f]
        found = False
        for v, ends in D.vertical.arrows.items():
            if ends != (a, b):
                continue
            for psi in by_frame.get((D.unit[a], f, D.vertical.identity[a], v), []):
                for chi in by_frame.get((f, D.unit[b], v, D.vertical.identity[b]), []):
                    one_f = D.cells.identity[f]
                    if (D.hcomp_cells.get((chi, psi)) == one_f
                            and D.cells.table.get((chi, psi)) == D.unit_cell[v]):
                        found = True
        if found:
            out.append(f)
    return sorted(out)


def compute_all() -> dict:
    sys.path.insert(0, str(Path(__file__).parents[1] / "src"))
    from dblfrac.fixtures import CF_PASS, FIXTURES
    from dblfrac.wgfrac import build_cw

    out = {}
    for name, make in FIXTURES.items():
        cat, W = make()
        entry = {"laws": laws_hold(cat), "cf": cf_verdicts(cat, W), "spans": span_count(cat, W)}
        if name in CF_PASS:
            entry["cw"] = cw_counts(cat, W)
            entry["nabla"] = nabla_counts(cat, W)
            entry["companions"] = companion_horizontals(build_cw(cat, W).double)
        out[name] = entry
    return out


if __name__ == "__main__":
    if "--freeze" in sys.argv:
        FROZEN.write_text(json.dumps(compute_all(), indent=2, sort_keys=True) + "\n")
    else:
        print(json.dumps(compute_all(), indent=2, sort_keys=True))
