"""Command line front end: ``.cat`` files in, ``key=value`` report lines out."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .bic import (
    cw_fundamental_bicategory,
    omega_alpha_comparison,
    verify_companion_quasiunit,
    verify_precompanion_equivalence,
)
from .dblcat import (
    DoubleCategoryError,
    embed_category,
    find_horizontal_isomorphism,
    identity_functor,
    to_dot,
)
from .fincat import FinCategory, check_fractions_conditions, find_isomorphism, validate_category
from .localize import FractionsError, build_fractions_category, zigzag_localize
from .wfriendly import (
    build_nabla_w,
    canonical_friendly_structure,
    horizontal_transformations,
    lift_friendly_functor,
    lift_friendly_transformation,
    lift_restricts_to_gamma,
    restrict,
    restrict_transformation,
    same_transformation,
    verify_friendly,
)
from .wgfrac import build_cw, verify_cw

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class ArrowDecl:
    name: str
    source: str
    target: str
    in_w: bool
    line: int


@dataclass
class CategoryFile:
    name: str = "C"
    objects: list[str] = field(default_factory=list)
    arrows: list[ArrowDecl] = field(default_factory=list)
    compositions: dict[tuple[str, str], tuple[str, int]] = field(default_factory=dict)

    def to_category(self) -> tuple[FinCategory, frozenset[str]]:
        """Build the category; identities are always members of W."""
        cat = FinCategory.build(
            self.objects,
            {a.name: (a.source, a.target) for a in self.arrows},
            {pair: h for pair, (h, _) in self.compositions.items()},
            name=self.name,
        )
        W = {a.name for a in self.arrows if a.in_w} | set(cat.identity.values())
        return cat, frozenset(W)


def _ident(token: str, line: int, what: str) -> str:
    if not token or any(ch.isspace() for ch in token) or token in {":", "->", ".", "="}:
        raise ParseError(line, f"bad {what} {token!r}")
    return token


def parse_category_file(text: str) -> CategoryFile:
    out = CategoryFile()
    seen_name = False
    ends: dict[str, tuple[str, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "category":
            if seen_name:
                raise ParseError(lineno, "second category line")
            out.name = _ident(rest.strip(), lineno, "category name")
            seen_name = True
        elif head == "objects:" or line.startswith("objects:"):
            for tok in line[len("objects:"):].split():
                if tok in out.objects:
                    raise ParseError(lineno, f"duplicate object {tok}")
                out.objects.append(_ident(tok, lineno, "object"))
                ends[f"id_{tok}"] = (tok, tok)
        elif head == "arrow":
            toks = rest.split()
            in_w = bool(toks) and toks[-1] == "[W]"
            if in_w:
                toks = toks[:-1]
            if len(toks) != 5 or toks[1] != ":" or toks[3] != "->":
                raise ParseError(lineno, "expected 'arrow <id> : <obj> -> <obj> [W]?'")
            name, src, tgt = toks[0], toks[2], toks[4]
            _ident(name, lineno, "arrow id")
            if name in ends:
                raise ParseError(lineno, f"duplicate arrow id {name}")
            for o in (src, tgt):
                if o not in out.objects:
                    raise ParseError(lineno, f"unknown object {o}")
            ends[name] = (src, tgt)
            out.arrows.append(ArrowDecl(name, src, tgt, in_w, lineno))
        elif head == "compose":
            toks = rest.split()
            if len(toks) != 5 or toks[1] != "." or toks[3] != "=":
                raise ParseError(lineno, "expected 'compose <g> . <f> = <h>'")
            g, f, h = toks[0], toks[2], toks[4]
            for a in (g, f, h):
                if a not in ends:
                    raise ParseError(lineno, f"unknown arrow {a}")
            if ends[f][1] != ends[g][0]:
                raise ParseError(lineno, f"{g} . {f} is not composable")
            if ends[h] != (ends[f][0], ends[g][1]):
                raise ParseError(lineno, f"{h} does not run from {ends[f][0]} to {ends[g][1]}")
            for a, b in ((g, f), (f, g)):
                if a == f"id_{ends[a][0]}" and b != h:
                    raise ParseError(lineno, f"identity law violated by {g} . {f} = {h}")
            if (g, f) in out.compositions:
                raise ParseError(lineno, f"second compose line for {g} . {f}")
            out.compositions[(g, f)] = (h, lineno)
        else:
            raise ParseError(lineno, f"unrecognized line {line!r}")
    for g in out.arrows:
        for f in out.arrows:
            if f.target == g.source and (g.name, f.name) not in out.compositions:
                raise ParseError(g.line, f"missing compose line for {g.name} . {f.name}")
    return out


def format_category_file(cat: FinCategory, W: frozenset[str]) -> str:
    """Canonical text: sorted declarations, identities left implicit."""
    lines = [f"category {cat.name}", "objects: " + " ".join(cat.sorted_objects)]
    for f in cat.sorted_arrows:
        if cat.is_identity(f):
            continue
        mark = " [W]" if f in W else ""
        lines.append(f"arrow {f} : {cat.dom(f)} -> {cat.cod(f)}{mark}")
    for (g, f), h in sorted(cat.table.items()):
        if not cat.is_identity(g) and not cat.is_identity(f):
            lines.append(f"compose {g} . {f} = {h}")
    return "\n".join(lines) + "\n"


def load(path: str) -> tuple[FinCategory, frozenset[str]]:
    return parse_category_file(Path(path).read_text(encoding="utf-8")).to_category()


def _status(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def cmd_validate(cat, W, args) -> tuple[list[str], bool]:
    rep = validate_category(cat)
    lines = [f"objects={len(cat.objects)} arrows={len(cat.arrows)} w={len(W)} category={_status(rep.passed)}"]
    for kind, law, ids in rep.problems:
        lines.append(f"problem={kind}:{law}:({','.join(ids)})")
    return lines, rep.passed


def _cf_gate(cat, W):
    cf = check_fractions_conditions(cat, W)
    return cf, cf.lines()


def cmd_cf_check(cat, W, args):
    cf, lines = _cf_gate(cat, W)
    return lines, cf.fractions_ok and cf.three_for_two.passed


def cmd_localize(cat, W, args):
    cf, cf_lines = _cf_gate(cat, W)
    if not cf.fractions_ok:
        return cf_lines + ["localize=FAIL reason=fractions_conditions"], False
    frac = build_fractions_category(cat, W)
    zig = zigzag_localize(cat, W, args.oracle_len)
    iso = find_isomorphism(frac, zig.category) is not None
    line = (
        f"fractions_objects={len(frac.objects)} fractions_arrows={len(frac.arrows)} "
        f"oracle_objects={len(zig.category.objects)} oracle_arrows={len(zig.category.arrows)} "
        f"oracle_length={zig.length} oracle_saturated={_status(zig.saturated)} isomorphic={_status(iso)}"
    )
    return [line], iso and zig.saturated


def _cw_or_fail(cat, W):
    cf, cf_lines = _cf_gate(cat, W)
    if not cf.fractions_ok:
        raise FractionsError("\n".join(cf_lines))
    return build_cw(cat, W)


def cmd_build_cw(cat, W, args):
    cw = _cw_or_fail(cat, W)
    lines = cw.report_lines(args.segal_bound)
    return [" ".join(lines)], lines[-1].endswith("PASS")


def cmd_verify_lemmas(cat, W, args):
    cw = _cw_or_fail(cat, W)
    rep = verify_cw(cw, args.segal_bound)
    return rep.lines(), rep.passed


def cmd_bic_equiv(cat, W, args):
    cw = _cw_or_fail(cat, W)
    rep = omega_alpha_comparison(cw, args.segal_bound)
    B = cw_fundamental_bicategory(cw, args.segal_bound)
    comp = verify_companion_quasiunit(cw.double, B)
    pre = verify_precompanion_equivalence(cw.double, B)
    lines = rep.lines() + comp.lines() + pre.lines()
    return lines, rep.passed and comp.passed and pre.passed


def cmd_friendly(cat, W, args):
    cw = _cw_or_fail(cat, W)
    nabla = build_nabla_w(cat, cw.W)
    S = canonical_friendly_structure(cw)
    rep = verify_friendly(S)
    lines = [f"nabla_objects={len(nabla.category.objects)} nabla_arrows={len(nabla.category.arrows)}"]
    lines += rep.lines()
    if not rep.passed:
        return lines, False
    checks = {}
    try:
        lifted = lift_friendly_functor(S, cw)
        checks["comparison"] = True
        Id = identity_functor(cw.double)
        checks["lift_restricts_to_gamma"] = not lift_restricts_to_gamma(S, lifted.functor)
        checks["lift_is_identity"] = find_horizontal_isomorphism(lifted.functor, Id) is not None
        R = restrict(Id, cw, S, S.companions)
        checks["restrict_friendly"] = verify_friendly(R).passed
        back = lift_friendly_functor(R, cw).functor
        checks["restrict_lift_roundtrip"] = find_horizontal_isomorphism(back, Id) is not None
        total = same = 0
        for b in horizontal_transformations(Id, Id):
            bJ, beta = restrict_transformation(b, cw, R, R)
            lifted_b = lift_friendly_transformation(bJ, beta, R, R, back, back, cw)
            total += 1
            same += same_transformation(lifted_b, b)
        checks["transformation_roundtrip"] = total == same
        lines_extra = [f"transformations={total}"]
    except DoubleCategoryError as exc:
        lines.append(f"lift=FAIL reason={str(exc).replace(' ', '_')[:120]}")
        return lines, False
    lines += [f"{k}={_status(v)}" for k, v in checks.items()] + lines_extra
    return lines, all(checks.values())


def cmd_export_dot(cat, W, args):
    if args.embed:
        D = embed_category(cat, args.embed)
    else:
        D = _cw_or_fail(cat, W).double
    if args.format == "text":
        return [f"objects={len(D.objects)} vertical={len(D.verticals)} horizontal={len(D.horizontals)} cells={len(D.cell_ids)}"], True
    return to_dot(D).rstrip("\n").split("\n"), True


COMMANDS = {
    "validate": cmd_validate,
    "cf-check": cmd_cf_check,
    "localize": cmd_localize,
    "build-cw": cmd_build_cw,
    "verify-lemmas": cmd_verify_lemmas,
    "bic-equiv": cmd_bic_equiv,
    "friendly": cmd_friendly,
    "export-dot": cmd_export_dot,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dblfrac", description="Fractions, spans and double categories of fractions on finite categories.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("path", help=".cat file")
    parser.add_argument("--segal-bound", type=int, default=3)
    parser.add_argument("--oracle-len", type=int, default=None, help="longest zigzag the oracle explores")
    parser.add_argument("--out", default=None, help="write the report here instead of stdout")
    parser.add_argument("--format", choices=("text", "dot"), default="dot")
    parser.add_argument("--embed", choices=("horizontal", "vertical"), default=None, help="export-dot: H(C) or V(C) instead of C{W}")
    parser.add_argument("--verbose", action="store_true")
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.segal_bound < 1:
        print("error: --segal-bound must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        cat, W = load(args.path)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"error: {args.path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.command != "validate":
        checked = validate_category(cat)
        if not checked.passed:
            kind, law, ids = checked.first
            print(f"category=FAIL problem={kind}:{law}:({','.join(ids)})")
            return EXIT_FAIL
    if args.verbose:
        print(f"# {args.command} on {cat.name}: {len(cat.objects)} objects, {len(cat.arrows)} arrows, {len(W)} in W", file=sys.stderr)
    try:
        lines, ok = COMMANDS[args.command](cat, W, args)
    except FractionsError as exc:
        lines, ok = [str(exc), f"{args.command}=FAIL reason=fractions_conditions"], False
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.verbose:
        print(f"# {args.command}: {'all checks passed' if ok else 'some check failed'}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())
