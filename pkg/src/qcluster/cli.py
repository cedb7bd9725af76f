"""Single command-line entry point wiring all modules.

Subcommand groups mirror the library layout::

    qcluster seed mutate        --file s.json --k 1
    qcluster tori x-mutate      --file s.json --k 1
    qcluster tori a-mutate      --file s.json --k 1
    qcluster tori check-word    --file s.json --word "m1,m2,m1,m2,m1,s(1 2)"
    qcluster qtorus mutate      --file s.json --k 1
    qcluster qtorus verify      --suite duality|involution|bimodule
    qcluster qdilog eval        --which phi|Phi --z 0.5,0.1 --hbar 1.0
    qcluster qdilog verify      --sweep default
    qcluster grid selftest      --seed s.json --hbar 1.0 --n 256 --L 12
    qcluster intertwine verify  --seed s.json --k 2 --hbar 1.0 --n 256 --L 12
    qcluster intertwine kernel  --seed s.json --k 2 --hbar 1.0 --c 1.0 --a 0.5

Exit codes: 0 on success (all residuals within thresholds for verify
commands), 1 when a verify threshold is violated, 2 on usage/input errors.
Output is deterministic for fixed inputs and a fixed --rng-seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import grid as gridmod
from . import intertwiner as itw
from . import qlog
from . import qtorus
from . import tori
from .seeds import Seed, SeedError, mutate_seed, new_seed, random_seed, seed_from_json, seed_to_json

SCHEMA = 1

# Every verify threshold in one place; printed next to each residual.
THRESHOLDS = {
    **{f"qdilog.{k}": v for k, v in qlog.IDENTITY_THRESHOLDS.items()},
    "grid.comm--": 1e-6,
    "grid.comm++": 1e-6,
    "grid.comm-+": 1e-6,
    "grid.selfadjoint": 1e-6,
    "grid.langlands": 1e-6,
    "intertwine.residual": 1e-2,
    "intertwine.pde": 1e-4,
    "intertwine.norm_low": 0.999,
    "intertwine.norm_high": 1.001,
    "intertwine.control_factor": 10.0,
}


@dataclass
class RunConfig:
    """Validated numeric/run parameters shared by the subcommands."""

    hbar: float = 1.0
    n: int = 256
    L: float = 12.0
    rng_seed: int = 0
    out: str | None = None
    fmt: str = "json"

    def __post_init__(self):
        if self.hbar <= 0 or self.L <= 0 or self.n <= 0:
            raise ValueError("numeric parameters must be positive")
        if self.n & (self.n - 1):
            raise ValueError("n must be a power of two")
        if self.fmt not in ("json", "csv"):
            raise ValueError("format must be json or csv")


class UsageError(ValueError):
    pass


def _load_seed(path: str) -> Seed:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return seed_from_json(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read seed file: {exc}") from None


def _cast_label(s: Seed, text: str):
    lab = int(text) if text.lstrip("-").isdigit() else text
    if lab not in s.labels:
        raise UsageError(f"label {text!r} not in seed")
    return lab


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_to_text(rows: list[dict], fmt: str, extra: dict | None = None) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    doc = {"schema": SCHEMA, "results": rows}
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2, default=str) + "\n"


# ---------------------------------------------------------------------------
# seed / tori / qtorus
# ---------------------------------------------------------------------------

def cmd_seed_mutate(args) -> int:
    s = _load_seed(args.file)
    k = _cast_label(s, args.k)
    _emit(seed_to_json(mutate_seed(s, k)), args.out)
    return 0


def cmd_tori_mutate(args, family: str) -> int:
    s = _load_seed(args.file)
    k = _cast_label(s, args.k)
    cmap = tori.mutate_x_map(s, k) if family == "x" else tori.mutate_a_map(s, k)
    _emit(str(cmap) + "\n", args.out)
    return 0


def cmd_tori_check_word(args) -> int:
    s = _load_seed(args.file)
    word = tori.parse_word(args.word, s.labels)
    try:
        trivial = tori.is_trivial_word(s, word)
    except tori.WordError as exc:
        raise UsageError(str(exc)) from None
    _emit(("true" if trivial else "false") + "\n", args.out)
    return 0


def cmd_qtorus_mutate(args) -> int:
    s = _load_seed(args.file)
    k = _cast_label(s, args.k)
    lines = [f"X_{i}' -> {qtorus.quantum_mutation_image(s, k, i)}" for i in s.labels]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _qtorus_suite_rows(suite: str, rng_seed: int) -> list[dict]:
    rng = np.random.default_rng(rng_seed)
    cases = [
        new_seed([1, 2], [[0, 1], [-1, 0]], [1, 1]),
        new_seed([1, 2], [[0, 2], [-1, 0]], [1, 2]),
        new_seed([1], [[0]], [1]),
    ]
    cases += [random_seed(rng, rank) for rank in (2, 3, 3)]
    rows = []
    if suite == "involution":
        for idx, s in enumerate(cases):
            for k in s.labels:
                ok = qtorus.check_quantum_involution(s, k)
                rows.append({"case": f"seed{idx}", "k": k, "check": "involution", "ok": ok})
    elif suite == "duality":
        for idx, s in enumerate(cases):
            for kind in ("alpha", "iota", "beta"):
                for k in s.labels:
                    ok = qtorus.check_duality_commutes_with_mutation(kind, s, k)
                    rows.append({"case": f"seed{idx}", "k": k, "check": kind, "ok": ok})
    elif suite == "bimodule":
        for idx, s in enumerate(cases[:3]):
            ok = qtorus.bimodule_relations_hold(s, max_degree=3)
            rows.append({"case": f"seed{idx}", "k": "-", "check": "bimodule", "ok": ok})
    else:
        raise UsageError(f"unknown suite {suite!r}")
    return rows


def cmd_qtorus_verify(args) -> int:
    rows = _qtorus_suite_rows(args.suite, args.rng_seed)
    ok = all(r["ok"] for r in rows)
    _emit(_rows_to_text(rows, args.format, {"pass": ok, "suite": args.suite}), args.out)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# qdilog
# ---------------------------------------------------------------------------

def cmd_qdilog_eval(args) -> int:
    re_im = [float(x) for x in args.z.split(",")]
    z = complex(re_im[0], re_im[1] if len(re_im) > 1 else 0.0)
    fn = qlog.phi if args.which == "phi" else qlog.Phi
    val = fn(z, args.hbar)
    doc = {"schema": SCHEMA, "which": args.which, "z": str(z), "hbar": args.hbar,
           "value": {"re": val.value.real, "im": val.value.imag},
           "abs_error": val.abs_error}
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return 0


def cmd_qdilog_verify(args) -> int:
    if args.sweep != "default":
        raise UsageError(f"unknown sweep {args.sweep!r}")
    rows = qlog.default_sweep()
    ok = all(r["ok"] for r in rows)
    _emit(_rows_to_text(rows, args.format, {"pass": ok}), args.out)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# grid / intertwine
# ---------------------------------------------------------------------------

def cmd_grid_selftest(args) -> int:
    s = _load_seed(args.seed)
    cfg = RunConfig(hbar=args.hbar, n=args.n, L=args.L, rng_seed=args.rng_seed,
                    out=args.out, fmt=args.format)
    rng = np.random.default_rng(cfg.rng_seed)
    res = gridmod.grid_selftest(s, cfg.hbar, cfg.n, cfg.L, rng)
    rows = [{"check": name, "residual": val,
             "threshold": THRESHOLDS.get(f"grid.{name}", 1e-6),
             "ok": val <= THRESHOLDS.get(f"grid.{name}", 1e-6)}
            for name, val in sorted(res.items())]
    ok = all(r["ok"] for r in rows)
    _emit(_rows_to_text(rows, cfg.fmt, {"pass": ok}), cfg.out)
    return 0 if ok else 1


_CONV_NAMES = {"paper-G": "g", "paper-Ghat": "ghat"}


def _intertwine_report(s: Seed, k, cfg: RunConfig, conventions: list[str]) -> dict:
    rng = np.random.default_rng(cfg.rng_seed)
    spec = gridmod.GridSpec.uniform(s.rank, cfg.n, cfg.L)
    f = gridmod.random_gaussian(spec, rng)
    report: dict = {"schema": SCHEMA, "seed": str(s), "k": k, "hbar": cfg.hbar,
                    "n": cfg.n, "L": cfg.L,
                    "thresholds": {"intertwining": THRESHOLDS["intertwine.residual"],
                                   "pde": THRESHOLDS["intertwine.pde"],
                                   "norm": [THRESHOLDS["intertwine.norm_low"],
                                            THRESHOLDS["intertwine.norm_high"]]},
                    "conventions": {}}
    for conv in conventions:
        ks = itw.KernelSpec(s, k, cfg.hbar, spec, convention=conv)
        rows = []
        worst = 0.0
        for i in s.labels:
            for sign in ("+", "-"):
                r = itw.intertwining_residual(ks, f, i, sign)
                worst = max(worst, r)
                rows.append({"i": i, "sign": sign, "residual": r})
        nr = gridmod.norm(itw.apply_K(ks, f)) / gridmod.norm(f)
        pde = itw.pde_sweep(ks)
        ctrl = itw.intertwining_residual(ks, f, s.labels[0], "+", wrong_eps=True)
        base = rows[0]["residual"]
        entry = {
            "residuals": rows,
            "worst_intertwining": worst,
            "norm_ratio": nr,
            "pde": pde,
            "control_residual": ctrl,
            "control_factor": ctrl / base if base > 0 else math.inf,
            "pass": (worst <= THRESHOLDS["intertwine.residual"]
                     and max(pde.values()) <= THRESHOLDS["intertwine.pde"]
                     and THRESHOLDS["intertwine.norm_low"] <= nr <= THRESHOLDS["intertwine.norm_high"]),
        }
        report["conventions"][conv] = entry
    passing = [c for c, e in report["conventions"].items() if e["pass"]]
    report["adjudicated"] = passing[0] if len(passing) == 1 else None
    report["pass"] = bool(passing)
    return report


def cmd_intertwine_verify(args) -> int:
    s = _load_seed(args.seed)
    k = _cast_label(s, args.k)
    cfg = RunConfig(hbar=args.hbar, n=args.n, L=args.L, rng_seed=args.rng_seed,
                    out=args.out, fmt=args.format)
    if args.convention == "both":
        convs = ["ghat", "g"]
    else:
        convs = [_CONV_NAMES.get(args.convention, args.convention)]
    report = _intertwine_report(s, k, cfg, convs)
    _emit(json.dumps(report, indent=2, default=float) + "\n", cfg.out)
    return 0 if report["pass"] else 1


def cmd_intertwine_kernel(args) -> int:
    s = _load_seed(args.seed)
    k = _cast_label(s, args.k)
    conv = _CONV_NAMES.get(args.convention, args.convention)
    spec = gridmod.GridSpec.uniform(s.rank, args.n, args.L)
    ks = itw.KernelSpec(s, k, args.hbar, spec, convention=conv)
    others = [lab for lab in s.labels if lab != k]
    a_vals = [float(x) for x in args.a.split(",")] if args.a else []
    if len(a_vals) != len(others):
        raise UsageError(f"--a needs {len(others)} value(s) for labels {others}")
    a_map = dict(zip(others, a_vals))
    val = ks_val = itw.kernel_G_hat(ks, float(args.c), a_map)
    doc = {"schema": SCHEMA, "seed": str(s), "k": k, "hbar": args.hbar,
           "convention": conv, "c": float(args.c), "a": a_map,
           "Ghat": {"re": ks_val.real, "im": ks_val.imag},
           "unit_modulus_check": abs(val) / abs(ks.C)}
    _emit(json.dumps(doc, indent=2, default=str) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qcluster",
                                description="Cluster seeds, quantum tori, quantum dilogarithms "
                                            "and the mutation intertwiner.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="write output to this path instead of stdout")
    common.add_argument("--format", default="json", choices=("json", "csv"))
    common.add_argument("--rng-seed", type=int, default=0, dest="rng_seed")

    sub = p.add_subparsers(dest="group", required=True)

    g_seed = sub.add_parser("seed").add_subparsers(dest="command", required=True)
    sp = g_seed.add_parser("mutate", parents=[common])
    sp.add_argument("--file", required=True)
    sp.add_argument("--k", required=True)
    sp.set_defaults(func=cmd_seed_mutate)

    g_tori = sub.add_parser("tori").add_subparsers(dest="command", required=True)
    for name, fam in (("x-mutate", "x"), ("a-mutate", "a")):
        sp = g_tori.add_parser(name, parents=[common])
        sp.add_argument("--file", required=True)
        sp.add_argument("--k", required=True)
        sp.set_defaults(func=lambda a, fam=fam: cmd_tori_mutate(a, fam))
    sp = g_tori.add_parser("check-word", parents=[common])
    sp.add_argument("--file", required=True)
    sp.add_argument("--word", required=True)
    sp.set_defaults(func=cmd_tori_check_word)

    g_qt = sub.add_parser("qtorus").add_subparsers(dest="command", required=True)
    sp = g_qt.add_parser("mutate", parents=[common])
    sp.add_argument("--file", required=True)
    sp.add_argument("--k", required=True)
    sp.set_defaults(func=cmd_qtorus_mutate)
    sp = g_qt.add_parser("verify", parents=[common])
    sp.add_argument("--suite", required=True, choices=("duality", "involution", "bimodule"))
    sp.set_defaults(func=cmd_qtorus_verify)

    g_qd = sub.add_parser("qdilog").add_subparsers(dest="command", required=True)
    sp = g_qd.add_parser("eval", parents=[common])
    sp.add_argument("--which", required=True, choices=("phi", "Phi"))
    sp.add_argument("--z", required=True, help="re[,im]")
    sp.add_argument("--hbar", type=float, required=True)
    sp.set_defaults(func=cmd_qdilog_eval)
    sp = g_qd.add_parser("verify")
    sp.add_argument("--sweep", default="default")
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", default="csv", choices=("json", "csv"))
    sp.add_argument("--rng-seed", type=int, default=0, dest="rng_seed")
    sp.set_defaults(func=cmd_qdilog_verify)

    g_grid = sub.add_parser("grid").add_subparsers(dest="command", required=True)
    sp = g_grid.add_parser("selftest", parents=[common])
    sp.add_argument("--seed", required=True)
    sp.add_argument("--hbar", type=float, default=1.0)
    sp.add_argument("--n", type=int, default=256)
    sp.add_argument("--L", type=float, default=12.0)
    sp.set_defaults(func=cmd_grid_selftest)

    g_int = sub.add_parser("intertwine").add_subparsers(dest="command", required=True)
    sp = g_int.add_parser("verify", parents=[common])
    sp.add_argument("--seed", required=True)
    sp.add_argument("--k", required=True)
    sp.add_argument("--hbar", type=float, default=1.0)
    sp.add_argument("--n", type=int, default=256)
    sp.add_argument("--L", type=float, default=12.0)
    sp.add_argument("--convention", default="paper-Ghat",
                    choices=("paper-G", "paper-Ghat", "both"))
    sp.set_defaults(func=cmd_intertwine_verify)
    sp = g_int.add_parser("kernel", parents=[common])
    sp.add_argument("--seed", required=True)
    sp.add_argument("--k", required=True)
    sp.add_argument("--hbar", type=float, default=1.0)
    sp.add_argument("--n", type=int, default=128)
    sp.add_argument("--L", type=float, default=10.0)
    sp.add_argument("--c", required=True)
    sp.add_argument("--a", default="")
    sp.add_argument("--convention", default="paper-Ghat", choices=("paper-G", "paper-Ghat"))
    sp.set_defaults(func=cmd_intertwine_kernel)

    return p


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, SeedError, tori.WordError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
