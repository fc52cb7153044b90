"""Plain-text rendering of a CaseReport.

Human-readable sections followed by a [MACHINE] section of ``key=value`` lines.
Output depends only on the report's values, so identical inputs serialize to
identical bytes.
"""

from __future__ import annotations

from ..koszul import KoszulVerdict, format_verdict, rules_text
from ..ncpoly import format_poly
from ..quadratic import QuadraticPresentation
from ..words import format_word
from .analysis import CaseReport


def _dims(ds) -> str:
    return " ".join(str(x) for x in ds)


def _rels(a: QuadraticPresentation) -> list[str]:
    return [format_poly(f, a.labels) for f in a.relations()]


def _matrix(P) -> str:
    return "; ".join(" ".join(str(x) for x in row) for row in P.entries)


def _verdict_lines(name: str, v: KoszulVerdict, labels) -> list[str]:
    lines = [f"{name}.koszul = {format_verdict(v)}", f"{name}.justification = {v.justification}"]
    if v.certificate is not None:
        c = v.certificate
        lines.append(f"{name}.pbw_order = {' '.join(str(i + 1) for i in c.order)}")
        lines.append(f"{name}.pbw_rules = {len(c.rules)}")
        lines.append(f"{name}.critical_monomials = {len(c.critical)}")
        if len(c.rules) <= 6:
            lines += [f"{name}.rule = {r}" for r in rules_text(c, labels)]
    for label, t in (("hilbert", v.hilbert), ("complex", v.complex)):
        if t is not None:
            state = {True: "pass", False: "fail", None: "undecided"}[t.passed]
            extra = f" witness={t.witness}" if t.passed is False else ""
            lines.append(f"{name}.{label} = {state} to degree {t.degree}{extra}")
    return lines


def format_report(r: CaseReport) -> str:
    g, cfg, norm = r.presentation, r.config, r.normalization
    xs = [f"X{i + 1}" for i in range(g.d)]
    out = ["[GENERAL]",
           f"p = {g.p}",
           f"generators = {' '.join(g.names)}",
           f"relator = {format_word(g.relator, g.names)}",
           f"d = {g.d}",
           f"q = {r.q}",
           f"defaults = depth {cfg.depth}, degree {cfg.degree}, orders {cfg.koszul.orders}, "
           f"seed {cfg.koszul.seed}",
           "",
           "[INITIAL-FORM]",
           f"depth = {r.depth}",
           f"rho = {format_poly(r.rho, xs)}",
           f"mixed_monomial = {r.mild_literal}",
           f"hypothesis_ambiguous = {str(r.ambiguous).lower()}",
           "",
           "[NORMALIZATION]",
           f"case = {norm.case_tag}",
           f"demushkin_case = {norm.demushkin_case}",
           f"n = {norm.n}",
           f"m = {norm.m}",
           f"P = {_matrix(norm.P)}",
           f"normal_rho = {format_poly(norm.normal_rho, xs)}",
           f"mild = {r.mild}",
           "",
           "[GR]",
           *[f"relation = {s}" for s in _rels(r.gr)],
           f"normal_relations = {', '.join(_rels(r.gr_normal))}",
           f"decomposition = {r.gr_label}",
           f"dims = {_dims(r.gr_dims)}",
           f"predicted_dims = {_dims(r.predicted_dims)}",
           "",
           "[COHOMOLOGY]",
           f"generators = {' '.join(r.h_model.labels)}",
           f"relations = {len(r.h_model.relations())}",
           f"decomposition = {r.h_label}",
           f"dims = {_dims(r.h_dims)}",
           "",
           "[VERDICTS]",
           f"dual_gr_equals_h = {str(r.dual_equals_h).lower()}",
           f"decomposition_certified = {str(r.decomposition_ok).lower()}",
           f"dims_match = {str(r.dims_ok).lower()}",
           f"duality_verified = {str(r.duality_verified).lower()}",
           *_verdict_lines("gr", r.gr_verdict, r.gr_normal.labels),
           *_verdict_lines("h", r.h_verdict, r.h_model.labels),
           "",
           "[MACHINE]"]
    machine = {
        "p": g.p, "d": g.d, "q": r.q, "depth": r.depth, "n": norm.n, "m": norm.m,
        "case": norm.case_tag, "mild": r.mild, "ambiguous": str(r.ambiguous).lower(),
        "gr_decomposition": r.gr_label, "h_decomposition": r.h_label,
        "gr_dims": ",".join(map(str, r.gr_dims)), "h_dims": ",".join(map(str, r.h_dims)),
        "dual_equals_h": str(r.dual_equals_h).lower(), "duality_verified": str(r.duality_verified).lower(),
        "gr_koszul": format_verdict(r.gr_verdict), "h_koszul": format_verdict(r.h_verdict),
    }
    out += [f"{k}={v}" for k, v in machine.items()]
    return "\n".join(out) + "\n"


def parse_machine_section(text: str) -> dict:
    """``key=value`` pairs from the [MACHINE] section of a report."""
    _, _, tail = text.partition("[MACHINE]\n")
    return dict(line.split("=", 1) for line in tail.splitlines() if "=" in line)
