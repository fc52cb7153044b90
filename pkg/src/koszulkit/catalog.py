"""Built-in fixtures: catalog algebras and one-relator presentations."""

from __future__ import annotations

from dataclasses import dataclass

from .koszul import KoszulConfig, Status, koszul_verdict
from .progroup.analysis import AnalysisConfig, verify_duality
from .progroup.parse import parse_presentation
from .quadratic import QuadraticPresentation, demushkin_normal, exterior, free, symmetric, trivial

PRIMES = (2, 3, 5)


def demushkin_cases(p: int, d: int) -> list[str]:
    """Normal-form cases available for (p, d)."""
    if p != 2:
        return ["a"] if d % 2 == 0 else []
    if d == 1:
        return ["a"]
    return ["a", "b"] if d % 2 == 0 else ["c"]


def catalog_algebras(max_d: int = 4, max_demushkin_d: int = 6) -> list[tuple[str, QuadraticPresentation]]:
    out = []
    for p in PRIMES:
        for d in range(1, max_d + 1):
            for name, make in (("free", free), ("trivial", trivial),
                               ("symmetric", symmetric), ("exterior", exterior)):
                out.append((f"{name}(p={p},d={d})", make(p, d)))
        for d in range(1, max_demushkin_d + 1):
            for case in demushkin_cases(p, d):
                out.append((f"demushkin(p={p},d={d},{case})", demushkin_normal(p, d, case)))
    return out


def _pres(p: int, d: int, relator: str) -> str:
    gens = " ".join(f"x{i + 1}" for i in range(d))
    return f"p = {p}\ngenerators = {gens}\nrelator = {relator}\n"


def presentation_fixtures() -> list[tuple[str, str]]:
    """(name, presentation text) for the end-to-end duality checks."""
    out = []
    for p in (3, 5):
        for d in (4, 5, 6):
            out.append((f"commutators(p={p},d={d})", _pres(p, d, "[x1,x2]*[x3,x4]")))
    for q in (0, 3, 9):
        rel = "[x1,x2]" if q == 0 else f"[x1,x2]*x3^-{q}"
        out.append((f"kz(p=3,q={q})", _pres(3, 3, rel)))
    out.append(("square(p=2,d=3)", _pres(2, 3, "x1^2")))
    out.append(("square-commutator(p=2,d=4)", _pres(2, 4, "x1^2*[x2,x3]")))
    out.append(("square-two-commutators(p=2,d=5)", _pres(2, 5, "x1^2*[x1,x2]*[x3,x4]")))
    return out


@dataclass(frozen=True)
class CatalogRow:
    name: str
    kind: str
    ok: bool
    detail: str


def run_catalog(config: AnalysisConfig | None = None) -> list[CatalogRow]:
    config = config or AnalysisConfig()
    rows = []
    kcfg: KoszulConfig = config.koszul
    for name, a in catalog_algebras():
        v = koszul_verdict(a, kcfg)
        rows.append(CatalogRow(name, "algebra", v.status is Status.CERTIFIED, v.status.value))
    for name, text in presentation_fixtures():
        r = verify_duality(parse_presentation(text), config)
        ok = (r.duality_verified and r.gr_verdict.status is Status.CERTIFIED
              and r.h_verdict.status is Status.CERTIFIED)
        rows.append(CatalogRow(name, "presentation", ok,
                               f"case={r.case_tag} n={r.n} m={r.m} verified={str(r.duality_verified).lower()}"))
    return rows


def format_catalog(rows: list[CatalogRow]) -> str:
    width = max(len(r.name) for r in rows)
    lines = [f"{r.name:<{width}}  {r.kind:<12}  {'PASS' if r.ok else 'FAIL'}  {r.detail}" for r in rows]
    passed = sum(r.ok for r in rows)
    lines.append(f"{passed}/{len(rows)} fixtures pass")
    return "\n".join(lines) + "\n"
