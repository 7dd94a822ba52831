"""The small categories used throughout the tests and the CLI examples."""

from __future__ import annotations

from .fincat import FinCategory


def terminal():
    cat = FinCategory.build(["*"], {}, name="terminal")
    return cat, frozenset({"id_*"})


def interval():
    cat = FinCategory.build(["0", "1"], {"w": ("0", "1")}, name="interval")
    return cat, frozenset({"id_0", "id_1", "w"})


def walking_iso():
    cat = FinCategory.build(
        ["a", "b"],
        {"i": ("a", "b"), "j": ("b", "a")},
        {("j", "i"): "id_a", ("i", "j"): "id_b"},
        name="iso",
    )
    return cat, frozenset(cat.arrows)


def cospan():
    cat = FinCategory.build(["a", "b", "c"], {"ac": ("a", "c"), "bc": ("b", "c")}, name="cospan")
    return cat, frozenset({"id_a", "id_b", "id_c", "bc"})


def parallel_pair():
    cat = FinCategory.build(
        ["X", "Y", "Z"],
        {"f": ("X", "Y"), "g": ("X", "Y"), "h": ("X", "Z"), "w": ("Y", "Z")},
        {("w", "f"): "h", ("w", "g"): "h"},
        name="parallel",
    )
    return cat, frozenset({"id_X", "id_Y", "id_Z", "w"})


def chain_poset(n: int = 4, w_pairs=(("0", "1"), ("1", "2"))):
    """Total order 0 < 1 < ... < n-1; W is the identities, the given steps and their composites."""
    objs = [str(k) for k in range(n)]
    arrows = {f"{a}{b}": (a, b) for a in objs for b in objs if int(a) < int(b)}
    table = {}
    for a in objs:
        for b in objs:
            for c in objs:
                if int(a) < int(b) < int(c):
                    table[(f"{b}{c}", f"{a}{b}")] = f"{a}{c}"
    cat = FinCategory.build(objs, arrows, table, name="poset")
    W = {f"id_{a}" for a in objs} | {a + b for a, b in w_pairs}
    changed = True
    while changed:
        extra = {cat.compose(g, f) for f in W for g in W if cat.cod(f) == cat.dom(g)}
        changed = not extra <= W
        W |= extra
    return cat, frozenset(W)


def identities_only(cat: FinCategory) -> frozenset[str]:
    return frozenset(cat.identity.values())


def cyclic_group(n: int = 2):
    """One-object category of Z/n; every arrow is invertible so W must be everything."""
    names = ["id_*"] + [f"g{k}" for k in range(1, n)]
    arrows = {names[k]: ("*", "*") for k in range(1, n)}
    table = {(names[a], names[b]): names[(a + b) % n] for a in range(1, n) for b in range(1, n)}
    cat = FinCategory.build(["*"], arrows, table, name=f"z{n}")
    return cat, frozenset(cat.arrows)


FIXTURES = {
    "terminal": terminal,
    "interval": interval,
    "iso": walking_iso,
    "cospan": cospan,
    "parallel": parallel_pair,
    "poset": chain_poset,
}

CF_PASS = ("terminal", "interval", "iso", "poset")
