"""Command line front end.

    tmf-adams homotopy --model tmf --invert 2,3,5 --window -24..24 --n 5
    tmf-adams qexp delta --precision 20
    tmf-adams pairing --w1 4 --w2 6 --weight 12
    tmf-adams dualize --model ko --window -16..16
    tmf-adams verify --suite all
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import adams
from .errors import NotInvertible, TmfAdamsError
from .exactmath import InvertedSet
from .models import SpectrumModel, default_ledger, witness
from .qseries import SERIES_NAMES, named_series, verify_tate_identities
from .wpsline import ELL_CURVE, LEVEL_TWO, WPSConfig, pairing_matrix

SUITES = ("theorem-b", "dual-operations", "composition", "self-duality", "conjecture", "tate", "all")
MODELS = ("tmf", "ku", "ko", "tmf2", "tmf1")


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    model: str = "tmf"
    level: Optional[int] = None
    invert: Optional[tuple[int, ...]] = None
    n: int = 5
    m: int = 2
    window: tuple[int, int] = (-48, 48)
    precision: int = 200
    format: str = "table"
    ledger: Optional[str] = None
    suite: str = "all"

    def __post_init__(self):
        if self.window[0] > self.window[1]:
            raise ValueError("window must satisfy lo <= hi")
        if self.precision < 1:
            raise ValueError("precision must be at least 1")

    def base(self, *extra: int) -> InvertedSet:
        if self.invert is not None:
            return InvertedSet(self.invert)
        s = InvertedSet.inverting(self.n, *extra)
        if self.model == "tmf":
            s = s.union([2, 3])
        return s

    def build_model(self, *extra: int) -> SpectrumModel:
        if self.model == "tmf1":
            return SpectrumModel.tmf1(self.level if self.level is not None else 5)
        return SpectrumModel(self.model.upper(), self.base(*extra), ledger=default_ledger(self.ledger))


def _window(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        lo_i, hi_i = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like LO..HI, got {text!r}")
    if lo_i > hi_i:
        raise argparse.ArgumentTypeError("window must satisfy LO <= HI")
    return lo_i, hi_i


def _primes(text: str) -> tuple[int, ...]:
    try:
        ps = tuple(int(p) for p in text.split(",") if p.strip())
        InvertedSet(ps)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    return ps


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", choices=MODELS, default="tmf")
    common.add_argument("--level", type=int, help="level m for tmf1")
    common.add_argument("--invert", type=_primes, help="comma separated primes to invert")
    common.add_argument("--n", type=int, default=5)
    common.add_argument("--m", type=int, default=2)
    common.add_argument("--window", type=_window, default=(-48, 48), help="LO..HI")
    common.add_argument("--precision", type=_positive, default=200)
    common.add_argument("--format", choices=("json", "csv", "table"), default="table")
    common.add_argument("--ledger", help="extra torsion ledger JSON file")

    parser = argparse.ArgumentParser(prog="tmf-adams", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("homotopy", parents=[common], help="homotopy groups with psi^n scalars")
    q = sub.add_parser("qexp", parents=[common], help="q-expansion of a Tate-curve series")
    q.add_argument("name", nargs="?", default="delta", choices=SERIES_NAMES)
    p = sub.add_parser("pairing", parents=[common], help="Serre pairing matrix at a weight")
    p.add_argument("--w1", type=_positive, default=4)
    p.add_argument("--w2", type=_positive, default=6)
    p.add_argument("--weight", type=int, default=12)
    sub.add_parser("dualize", parents=[common], help="Anderson dual groups against shifted homotopy")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", choices=SUITES, default="all")
    return parser


def _normalize_argv(argv: Sequence[str]) -> list[str]:
    # "--window -24..24" would otherwise be read as an unknown flag
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok == "--window":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--window={nxt}")
        else:
            out.append(tok)
    return out


def _dump_json(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _render(rows: list[dict], fmt: str, doc) -> str:
    if fmt == "json":
        return _dump_json(doc)
    if not rows:
        return ""
    headers = list(rows[0])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=headers, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    widths = {h: max(len(h), *(len(str(r[h])) for r in rows)) for h in headers}
    lines = ["  ".join(h.ljust(widths[h]) for h in headers)]
    lines.append("  ".join("-" * widths[h] for h in headers))
    lines.extend("  ".join(str(r[h]).ljust(widths[h]) for h in headers) for r in rows)
    return "\n".join(line.rstrip() for line in lines) + "\n"


def cmd_homotopy(cfg: CliConfig) -> tuple[str, int]:
    model = cfg.build_model()
    psi_col = f"psi^{cfg.n}"
    rows, degrees = [], []
    for k in range(cfg.window[0], cfg.window[1] + 1):
        group, classes = model.homotopy_group(k)
        entries = []
        for b in classes:
            try:
                s = str(adams.psi_scalar(model, cfg.n, b))
            except NotInvertible:
                s = "n/a"
            entries.append({"label": b.label, "order": b.order, psi_col: s})
            rows.append({"degree": k, "group": str(group), "basis": b.label, psi_col: s})
        if not classes:
            rows.append({"degree": k, "group": str(group), "basis": "-", psi_col: "-"})
        degrees.append({"degree": k, "group": str(group), "basis": entries})
    doc = {"model": model.name, "n": cfg.n, "window": list(cfg.window), "degrees": degrees}
    return _render(rows, cfg.format, doc), 0


def cmd_qexp(cfg: CliConfig, name: str) -> tuple[str, int]:
    lead, series = named_series(name, cfg.precision)
    doc = series.to_json(name)
    if lead:
        doc["leading_exponent"] = lead
    rows = [{"exponent": lead + i, "coefficient": str(c)} for i, c in enumerate(series.coeffs)]
    return _render(rows, cfg.format, doc), 0


def cmd_pairing(cfg: CliConfig, w1: int, w2: int, weight: int) -> tuple[str, int]:
    base = InvertedSet(cfg.invert or ())
    named = {(4, 6): ELL_CURVE.names, (2, 2): LEVEL_TWO.names}
    wps = WPSConfig(w1, w2, base, named.get((w1, w2), ("g1", "g2")))
    rows, cols, mat = pairing_matrix(wps, weight)
    row_labels = [r.label(wps) for r in rows]
    col_labels = [c.label(wps) for c in cols]
    doc = {
        "w1": w1,
        "w2": w2,
        "weight": weight,
        "dual_weight": wps.dualizing_weight - weight,
        "rows": row_labels,
        "cols": col_labels,
        "matrix": [[str(x) for x in r] for r in mat],
    }
    table = [{"H0 \\ H1": rl, **{cl: str(x) for cl, x in zip(col_labels, r)}} for rl, r in zip(row_labels, mat)]
    return _render(table, cfg.format, doc), 0


def cmd_dualize(cfg: CliConfig) -> tuple[str, int]:
    model = cfg.build_model()
    d = witness(model).shift
    rows = []
    for k in range(cfg.window[0], cfg.window[1] + 1):
        dual = adams.anderson_dual_group(model, None, k)
        shifted = model.homotopy_group(k - d)[0]
        rows.append(
            {"degree": k, "pi_k I_A X": str(dual), f"pi_(k-{d}) X": str(shifted), "match": dual == shifted}
        )
    doc = {"model": model.name, "shift": d, "window": list(cfg.window), "rows": rows}
    return _render(rows, cfg.format, doc), 0 if all(r["match"] for r in rows) else 1


def _tate_report(precision: int) -> adams.OperationReport:
    rep = adams.OperationReport("tate", (0, precision - 1))
    for name, ok in verify_tate_identities(max(precision, 2)).items():
        rep.add(precision, name, True, ok)
    return rep


def run_suites(cfg: CliConfig) -> list[adams.OperationReport]:
    wanted = SUITES[:-1] if cfg.suite == "all" else (cfg.suite,)
    reports = []
    for suite in wanted:
        if suite == "tate":
            reports.append(_tate_report(cfg.precision))
        elif suite == "theorem-b":
            reports.append(adams.verify_theorem_b(cfg.n, cfg.window, model=_tmf(cfg)))
        elif suite == "dual-operations":
            reports.append(adams.verify_dual_operations(cfg.n, cfg.window, model=_tmf(cfg)))
        elif suite == "composition":
            reports.append(adams.verify_composition(cfg.build_model(cfg.m), cfg.m, cfg.n, cfg.window))
        elif suite == "self-duality":
            reports.append(adams.verify_self_duality(cfg.build_model(), None, cfg.window))
        elif suite == "conjecture":
            reports.append(adams.verify_conjecture(cfg.build_model(), cfg.n, cfg.window))
    return reports


def _tmf(cfg: CliConfig) -> SpectrumModel:
    base = InvertedSet(cfg.invert) if cfg.invert is not None else InvertedSet.inverting(6 * cfg.n)
    return SpectrumModel("TMF", base, ledger=default_ledger(cfg.ledger))


def cmd_verify(cfg: CliConfig) -> tuple[str, int]:
    reports = run_suites(cfg)
    code = 0 if all(r.passed for r in reports) else 1
    if cfg.format == "json":
        doc = [r.to_json() for r in reports]
        return _dump_json(doc if len(doc) > 1 else doc[0]), code
    rows = [{"suite": r.suite, **c.to_json()} for r in reports for c in r.checks]
    if cfg.format == "csv":
        for r in rows:
            r.setdefault("note", "")
        return _render(rows, "csv", None), code
    lines = []
    for r in reports:
        lines.append(("ok   " if r.passed else "FAIL ") + r.summary())
        for c in r.failures():
            lines.append(f"       degree {c.degree}: {c.basis}: expected {c.expected}, got {c.got}")
    return "\n".join(lines) + "\n", code


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_normalize_argv(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = CliConfig(
        subcommand=args.subcommand,
        model=args.model,
        level=args.level,
        invert=args.invert,
        n=args.n,
        m=args.m,
        window=args.window,
        precision=args.precision,
        format=args.format,
        ledger=args.ledger,
        suite=getattr(args, "suite", "all"),
    )
    try:
        if cfg.subcommand == "homotopy":
            out, code = cmd_homotopy(cfg)
        elif cfg.subcommand == "qexp":
            out, code = cmd_qexp(cfg, args.name)
        elif cfg.subcommand == "pairing":
            out, code = cmd_pairing(cfg, args.w1, args.w2, args.weight)
        elif cfg.subcommand == "dualize":
            out, code = cmd_dualize(cfg)
        else:
            out, code = cmd_verify(cfg)
    except (TmfAdamsError, ValueError) as exc:
        print(f"tmf-adams: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
