"""Command-line front end.

Exit codes: 0 success, 1 hypothesis violation, 2 parse error, bad input or
missing file.
"""

from __future__ import annotations

import argparse
import sys

from .catalog import format_catalog, run_catalog
from .errors import ConstructionError, HypothesisError, ParseError
from .koszul import KoszulConfig, format_verdict, koszul_verdict, rules_text
from .ncpoly import format_poly
from .progroup.analysis import (AnalysisConfig, abelianization_q, demushkin_normalize,
                                initial_form, verify_duality)
from .progroup.parse import parse_presentation
from .progroup.report import format_report
from .quadratic import (DEFAULT_DEGREE, direct_product, format_algebra, free_product, graded_dims,
                        parse_algebra, quadratic_dual, split_statements, tensor1, tensor_minus1)

DEFAULT_DEPTH = 3
DEFAULT_ORDERS = 10


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="koszulkit", description="Quadratic algebras and one-relator pro-p groups.")
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def add(name, help_text, *files):
        sp = sub.add_parser(name, help=help_text)
        for f in files:
            sp.add_argument(f)
        sp.add_argument("--out", help="write the result to this path instead of stdout")
        return sp

    add("dual", "quadratic dual of an algebra file", "algebra")
    sp = add("product", "product of two algebra files", "left", "right")
    kind = sp.add_mutually_exclusive_group(required=True)
    for flag in ("--free", "--direct", "--tensor1", "--tensor-1"):
        kind.add_argument(flag, dest="kind", action="store_const", const=flag.lstrip("-"))
    sp = add("dims", "graded dimensions", "algebra")
    sp.add_argument("--deg", type=int, default=DEFAULT_DEGREE)
    sp = add("koszul", "Koszulity verdict", "algebra")
    sp.add_argument("--deg", type=int, default=DEFAULT_DEGREE)
    sp.add_argument("--complex-deg", type=int, default=None)
    sp.add_argument("--orders", type=int, default=DEFAULT_ORDERS)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--all", action="store_true", help="run the bounded tests even when PBW certifies")
    sp = add("initial-form", "Zassenhaus depth and initial form of a relator", "presentation")
    sp.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    for name in ("analyze", "catalog"):
        sp = add(name, "full one-relator pipeline" if name == "analyze" else "run built-in fixtures",
                 *(["presentation"] if name == "analyze" else []))
        sp.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
        sp.add_argument("--deg", type=int, default=DEFAULT_DEGREE)
        sp.add_argument("--orders", type=int, default=DEFAULT_ORDERS)
    sp = add("normalize", "Demushkin normal form of a relator or a one-relation algebra", "file")
    sp.add_argument("--q", type=int, default=None, help="q for an algebra-file input (default 0)")
    sp.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    return ap


def _analysis_config(args) -> AnalysisConfig:
    return AnalysisConfig(depth=args.depth, degree=args.deg,
                          koszul=KoszulConfig(orders=args.orders))


def _normalize(args) -> str:
    text = _read(args.file)
    if any(key == "relator" for key, _, _ in split_statements(text)):
        g = parse_presentation(text)
        q = abelianization_q(g) if args.q is None else args.q
        _, rho = initial_form(g, args.depth)
        p, d = g.p, g.d
    else:
        a = parse_algebra(text)
        rels = a.relations()
        if len(rels) != 1:
            raise ConstructionError(f"normalize needs exactly one relation, found {len(rels)}")
        rho, p, d = rels[0], a.p, a.d
        q = 0 if args.q is None else args.q
    norm = demushkin_normalize(rho, p, q, d)
    xs = [f"X{i + 1}" for i in range(d)]
    return "\n".join([
        f"rho = {format_poly(rho, xs)}",
        f"q = {q}",
        f"case = {norm.case_tag}",
        f"demushkin_case = {norm.demushkin_case}",
        f"n = {norm.n}",
        f"m = {norm.m}",
        f"P = {'; '.join(' '.join(map(str, r)) for r in norm.P.entries)}",
        f"normal_rho = {format_poly(norm.normal_rho, xs)}",
    ]) + "\n"


def _koszul(args) -> str:
    a = parse_algebra(_read(args.algebra))
    cdeg = args.complex_deg if args.complex_deg is not None else min(args.deg, 6)
    cfg = KoszulConfig(degree=args.deg, complex_degree=cdeg, orders=args.orders, seed=args.seed,
                       run_all=args.all)
    v = koszul_verdict(a, cfg)
    lines = [f"koszul = {format_verdict(v)}", f"justification = {v.justification}",
             f"orders_tried = {len(v.orders_tried)}"]
    if v.certificate is not None:
        lines.append(f"pbw_order = {' '.join(str(i + 1) for i in v.certificate.order)}")
        lines += [f"rule = {r}" for r in rules_text(v.certificate, a.labels)]
        lines.append(f"critical_monomials = {len(v.certificate.critical)}")
    for name, t in (("hilbert", v.hilbert), ("complex", v.complex)):
        if t is not None:
            state = {True: "pass", False: "fail", None: "undecided"}[t.passed]
            lines.append(f"{name} = {state} to degree {t.degree}"
                         + (f" witness={t.witness}" if t.passed is False else ""))
    return "\n".join(lines) + "\n"


def _dispatch(args) -> tuple[int, str]:
    verb = args.verb
    if verb == "dual":
        return 0, format_algebra(quadratic_dual(parse_algebra(_read(args.algebra))))
    if verb == "product":
        op = {"free": free_product, "direct": direct_product,
              "tensor1": tensor1, "tensor-1": tensor_minus1}[args.kind]
        return 0, format_algebra(op(parse_algebra(_read(args.left)), parse_algebra(_read(args.right))))
    if verb == "dims":
        return 0, " ".join(map(str, graded_dims(parse_algebra(_read(args.algebra)), args.deg))) + "\n"
    if verb == "koszul":
        return 0, _koszul(args)
    if verb == "initial-form":
        g = parse_presentation(_read(args.presentation))
        depth, rho = initial_form(g, args.depth)
        return 0, f"depth = {depth}\nrho = {format_poly(rho, [f'X{i + 1}' for i in range(g.d)])}\n"
    if verb == "analyze":
        report = verify_duality(parse_presentation(_read(args.presentation)), _analysis_config(args))
        return 0, format_report(report)
    if verb == "normalize":
        return 0, _normalize(args)
    rows = run_catalog(_analysis_config(args))
    return (0 if all(r.ok for r in rows) else 1), format_catalog(rows)


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Execute one command; returns (exit code, output text)."""
    try:
        args = _build_parser().parse_args(argv)
    except _UsageError as e:
        return 2, f"error: {e}\n"
    try:
        code, text = _dispatch(args)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
            text = ""
    except HypothesisError as e:
        return 1, f"error: {e}\n"
    except (ParseError, ConstructionError) as e:
        return 2, f"error: {e}\n"
    except OSError as e:
        return 2, f"error: {e.strerror or e}: {getattr(e, 'filename', '')}\n"
    return code, text


def main(argv: list[str] | None = None) -> int:
    code, text = run(argv)
    (sys.stderr if text.startswith("error:") else sys.stdout).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
