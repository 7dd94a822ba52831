from itertools import combinations

import pytest
from hypothesis import assume, given, settings

from dblfrac.dblcat import check_weak_globularity, validate_double_category, verify_double_functor
from dblfrac.fincat import check_fractions_conditions
from dblfrac.fixtures import CF_PASS, FIXTURES, cospan, identities_only
from dblfrac.localize import FractionsError
from dblfrac.wgfrac import (
    CWHorizontal,
    VerticalRep,
    build_cw,
    cell_reps,
    cell_reps_equivalent,
    companion_criterion,
    companion_inventory,
    cw_isomorphic_to_horizontal,
    factor_cell,
    fill_cell,
    horizontal_cell_chase,
    is_cell_rep,
    j_w,
    paste_grid,
    rebase_cell,
    vertical_between,
    vertical_cell_chase,
    vertical_reps,
    vertical_reps_equivalent,
    verify_cw,
)

from conftest import cw_of
from oracles import cw_counts
from strategies import posets_with_w


@pytest.mark.parametrize("name", CF_PASS)
def test_counts_match_frozen_oracle(name, frozen):
    D = cw_of(name).double
    got = {"objects": len(D.objects), "vertical": len(D.verticals), "horizontal": len(D.horizontals), "cells": len(D.cell_ids)}
    assert got == frozen[name]["cw"]


def test_interval_report_lines(interval_cw):
    assert interval_cw.report_lines() == [
        "objects=3", "vertical=5", "horizontal=7", "cells=15", "weakly_globular=PASS",
    ]


def test_iso_has_one_vertical_per_equal_codomain_pair():
    cw = cw_of("iso")
    cat = cw.category
    for w1 in cw.W:
        for w2 in cw.W:
            assert (cw.vertical(w1, w2) is not None) == (cat.cod(w1) == cat.cod(w2))


def test_cf_failure_aborts_build():
    with pytest.raises(FractionsError):
        build_cw(*cospan())


def test_vertical_rep_equivalence_on_interval(interval_cw):
    cat, W = interval_cw.category, interval_cw.W
    rep = VerticalRep("0", "id_0", "id_0")
    assert vertical_reps_equivalent(cat, W, "w", "w", rep, rep)
    reps = vertical_reps(cat, W, "w", "id_1")
    assert VerticalRep("0", "id_0", "w") in reps
    assert all(vertical_reps_equivalent(cat, W, "w", "id_1", reps[0], r) for r in reps)


def test_vertical_rep_precondition(interval_cw):
    cat, W = interval_cw.category, interval_cw.W
    with pytest.raises(ValueError):
        vertical_reps_equivalent(cat, W, "w", "id_1", VerticalRep("0", "id_0", "id_0"), VerticalRep("0", "id_0", "w"))


@pytest.mark.parametrize("name", ["interval", "iso"])
def test_all_reps_of_a_frame_are_equivalent(name):
    cw = cw_of(name)
    cat, W, D = cw.category, cw.W, cw.double
    for c in D.cell_ids:
        top, bottom = cw.frame_of(c)
        reps = cell_reps(cat, W, top, bottom)
        assert reps
        for a, b in combinations(reps[:6], 2):
            assert cell_reps_equivalent(cat, W, (top, bottom), a, b)


def test_cell_rep_precondition(interval_cw):
    cw = interval_cw
    cat, W = cw.category, cw.W
    c = sorted(cw.cell_rep)[0]
    frame = cw.frame_of(c)
    other = next(x for x in cw.cell_rep if not is_cell_rep(cat, W, *frame, cw.cell_rep[x]))
    with pytest.raises(ValueError):
        cell_reps_equivalent(cat, W, frame, cw.cell_rep[c], cw.cell_rep[other])


@pytest.mark.parametrize("name", ["interval", "iso", "poset"])
def test_rebase_onto_every_codomain_rep(name):
    cw = cw_of(name)
    cat, W = cw.category, cw.W
    for c, rep in cw.cell_rep.items():
        top, bottom = cw.frame_of(c)
        assert rebase_cell(cat, W, (top, bottom), rep, rep.right) == rep
        for new_right in vertical_reps(cat, W, top.tgt, bottom.tgt)[:3]:
            moved = rebase_cell(cat, W, (top, bottom), rep, new_right)
            assert moved.right == new_right
            assert is_cell_rep(cat, W, top, bottom, moved)
            assert cell_reps_equivalent(cat, W, (top, bottom), rep, moved)


def test_rebase_rejects_foreign_column(interval_cw):
    cw = interval_cw
    cat, W = cw.category, cw.W
    c = next(c for c in cw.cell_rep if cw.frame_of(c)[0].tgt == "w")
    top, bottom = cw.frame_of(c)
    with pytest.raises(ValueError):
        rebase_cell(cat, W, (top, bottom), cw.cell_rep[c], VerticalRep("1", "id_1", "id_1"))


def test_vertical_between_on_interval(interval_cw):
    cw = interval_cw
    assert vertical_between(cw, "(w)", "(w)") == cw.vertical("w", "w")
    assert vertical_between(cw, "(w)", "(id_1)") is not None
    assert vertical_between(cw, "(id_0)", "(id_1)") is None


def test_fill_cell_cases(interval_cw):
    cw = interval_cw
    D = cw.double
    u = cw.unit("w")
    assert fill_cell(cw, u, u) == D.one(u)
    assert fill_cell(cw, cw.horiz("id_0", "id_1", "w"), cw.horiz("id_0", "id_0", "id_0")) is None
    with pytest.raises(ValueError):
        fill_cell(cw, u, u, left=cw.vertical("id_1", "id_1"))


@pytest.mark.parametrize("name", CF_PASS)
def test_structural_lemmas(name):
    rep = verify_cw(cw_of(name))
    assert rep.passed, rep.problems[:5]


@pytest.mark.parametrize("name", CF_PASS)
def test_isofibration(name):
    cw = cw_of(name)
    D = cw.double
    for g in D.horizontals:
        for v in D.verticals:
            if D.vertical.cod(v) != D.tgt[g]:
                continue
            assert any(
                fill_cell(cw, f, g) is not None and D.right[fill_cell(cw, f, g)] == v
                for f in D.horizontals
            )


def test_chases_agree_with_frame_filling(interval_cw):
    cw = interval_cw
    D, cat, W = cw.double, cw.category, cw.W
    for (lower, upper), c in D.cells.table.items():
        rep = vertical_cell_chase(cw, lower, upper)
        assert is_cell_rep(cat, W, *cw.frame_of(c), rep)
    for (second, first), c in D.hcomp_cells.items():
        rep = horizontal_cell_chase(cw, second, first)
        assert is_cell_rep(cat, W, *cw.frame_of(c), rep)


@pytest.mark.parametrize("name", CF_PASS)
def test_companion_inventory(name):
    cw = cw_of(name)
    inventory = companion_inventory(cw)
    assert all(e.criterion == (e.companion is not None) == (e.conjoint is not None) for e in inventory)


def test_companion_inventory_on_interval(interval_cw):
    cw = interval_cw
    by_arrow = {e.horizontal: e for e in companion_inventory(cw)}
    assert by_arrow[cw.horiz("w", "id_1", "w")].criterion
    assert not by_arrow[cw.horiz("id_0", "id_1", "w")].criterion
    for w in ("id_0", "id_1", "w"):
        assert companion_criterion(cw, cw.unit(w))


@pytest.mark.parametrize("name", ["interval", "poset"])
def test_factorization_repastes_every_cell(name):
    cw = cw_of(name)
    for c in cw.double.cell_ids:
        grid = factor_cell(cw, c)
        assert len(grid) == 4 and all(len(row) == 2 for row in grid)
        assert paste_grid(cw.double, grid) == c


def test_factorization_of_identity_cell(interval_cw):
    cw = interval_cw
    u = cw.unit("id_0")
    grid = factor_cell(cw, cw.double.one(u))
    assert {cell for row in grid for cell in row} == {cw.double.one(u)}


def test_inclusion_functor(interval_cw):
    cw = interval_cw
    J = j_w(cw)
    assert verify_double_functor(J) == []
    assert J.horizontals["w"] == cw.horiz("id_0", "id_1", "w")
    assert J.objects == {"0": "(id_0)", "1": "(id_1)"}


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_identities_only_gives_horizontal_embedding(name):
    cat, _ = FIXTURES[name]()
    ids = identities_only(cat)
    if not check_fractions_conditions(cat, ids).fractions_ok:
        pytest.skip("W must contain the isomorphisms")
    assert cw_isomorphic_to_horizontal(build_cw(cat, ids))


@settings(max_examples=25)
@given(posets_with_w(max_objects=3))
def test_random_cw_counts_and_laws(data):
    cat, W = data
    assume(check_fractions_conditions(cat, W).fractions_ok)
    cw = build_cw(cat, W)
    D = cw.double
    counts = cw_counts(cat, W)
    assert (len(D.objects), len(D.verticals), len(D.horizontals), len(D.cell_ids)) == (
        counts["objects"], counts["vertical"], counts["horizontal"], counts["cells"]
    )
    assert validate_double_category(D).passed
    assert check_weak_globularity(D).passed
    for o1 in D.objects:
        for o2 in D.objects:
            w1, w2 = cw.object_arrow[o1], cw.object_arrow[o2]
            assert len(D.horizontals_between(o1, o2)) == len(cat.hom(cat.dom(w1), cat.dom(w2)))
    assert len(set(D.components.values())) == len(cat.objects)


@settings(max_examples=15)
@given(posets_with_w(max_objects=3))
def test_random_cw_lemmas(data):
    cat, W = data
    assume(check_fractions_conditions(cat, W).fractions_ok)
    rep = verify_cw(build_cw(cat, W), exhaustive_reps=False)
    assert rep.passed, rep.problems[:5]
