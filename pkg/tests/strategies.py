"""Hypothesis strategies for small finite categories with a class W."""

from hypothesis import strategies as st

from dblfrac.fincat import FinCategory


@st.composite
def posets(draw, max_objects=4):
    """A finite poset as a category, with arrows named ``a<b``."""
    n = draw(st.integers(1, max_objects))
    objs = [str(i) for i in range(n)]
    less = set()
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.booleans()):
                less.add((i, j))
    changed = True
    while changed:
        extra = {(i, k) for (i, j) in less for (j2, k) in less if j == j2} - less
        changed = bool(extra)
        less |= extra
    arrows = {f"{i}<{j}": (str(i), str(j)) for i, j in less}
    table = {}
    for i, j in less:
        for j2, k in less:
            if j == j2:
                table[(f"{j}<{k}", f"{i}<{j}")] = f"{i}<{k}"
    return FinCategory.build(objs, arrows, table, name="P")


@st.composite
def posets_with_w(draw, max_objects=4, closed=True):
    cat = draw(posets(max_objects))
    non_ids = sorted(f for f in cat.arrows if not cat.is_identity(f))
    chosen = set(draw(st.lists(st.sampled_from(non_ids), unique=True))) if non_ids else set()
    W = chosen | set(cat.identity.values())
    while closed:
        extra = {cat.compose(g, f) for f in W for g in W if cat.cod(f) == cat.dom(g)} - W
        if not extra:
            break
        W |= extra
    return cat, frozenset(W)


@st.composite
def cyclic_groups(draw, max_order=4):
    n = draw(st.integers(1, max_order))
    names = ["id_*"] + [f"g{k}" for k in range(1, n)]
    arrows = {names[k]: ("*", "*") for k in range(1, n)}
    table = {(names[a], names[b]): names[(a + b) % n] for a in range(1, n) for b in range(1, n)}
    return FinCategory.build(["*"], arrows, table, name=f"z{n}")
