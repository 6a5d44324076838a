"""Command-line surface: catalog, verify, classify, focal and sweep.

Documents go to stdout (JSON is schema-versioned as ``chgeo/1``),
diagnostics to stderr.  Exit codes: 0 on success (including
legitimately empty results), 1 on verification failure, 2 on usage
errors.  Known irrational constants are emitted alongside a symbolic
tag so that downstream comparisons are not at the mercy of printed
precision.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import families
from . import classifier, jacobi, verification
from .errors import OpenCaseError

__all__ = ["RunConfig", "main", "run", "symbol_for"]

SCHEMA = "chgeo/1"

_SQ2 = math.sqrt(2.0)
_SQ3 = math.sqrt(3.0)
_SQ6 = math.sqrt(6.0)

_SYMBOLS = [
    (0.0, "0"),
    (0.5, "1/2"),
    (-0.5, "-1/2"),
    (1.0, "1"),
    (-1.0, "-1"),
    (1.0 / 3.0, "1/3"),
    (8.0 / 9.0, "8/9"),
    (1.0 / 9.0, "1/9"),
    (0.25, "1/4"),
    (-0.25, "-1/4"),
    (_SQ3 / 2.0, "sqrt(3)/2"),
    (-_SQ3 / 2.0, "-sqrt(3)/2"),
    (_SQ3 / 6.0, "sqrt(3)/6"),
    (-_SQ3 / 6.0, "-sqrt(3)/6"),
    (1.0 / _SQ3, "1/sqrt(3)"),
    (-1.0 / _SQ3, "-1/sqrt(3)"),
    (1.0 / _SQ2, "1/sqrt(2)"),
    (2.0 * _SQ2 / 3.0, "2*sqrt(2)/3"),
    (_SQ6 / 2.0, "sqrt(6)/2"),
    (_SQ6 / 3.0, "sqrt(6)/3"),
    (jacobi.EXCEPTIONAL_RADIUS, "ln(2+sqrt(3))"),
    (-jacobi.EXCEPTIONAL_RADIUS, "-ln(2+sqrt(3))"),
]


def symbol_for(value: float, tol: float = 1e-12) -> str | None:
    """Symbolic tag for a recognised constant, or None."""
    for ref, name in _SYMBOLS:
        if abs(value - ref) <= tol:
            return name
    return None


def _tagged(value: float | None):
    if value is None:
        return None
    return {"value": value, "symbol": symbol_for(value)}


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int | None = None
    k: int | None = None
    r: float | None = None
    lambda3: float | None = None
    case: str | None = None
    lo: float | None = None
    hi: float | None = None
    step: float | None = None
    seed: int = verification.DEFAULT_SEED
    fmt: str = "table"
    tolerance: float | None = None


# ---------------------------------------------------------------------------
# document builders
# ---------------------------------------------------------------------------


def _entry_doc(entry) -> dict:
    doc = families.entry_to_dict(entry)
    doc["r"] = _tagged(doc["r"])
    doc["profile_symbols"] = [symbol_for(lam) for lam, _ in entry.profile.entries]
    return doc


def _branch_doc(branch: classifier.SolutionBranch | None, lambda3=None, reason=None):
    if branch is None:
        return {
            "case": "ii",
            "lambda3": _tagged(lambda3),
            "branch": None,
            "reason": reason,
        }
    return {
        "case": branch.case,
        "lambda3": _tagged(branch.lambda3),
        "lambda1": _tagged(branch.lambda1),
        "lambda2": _tagged(branch.lambda2),
        "b1sq": _tagged(branch.b1_sq),
        "b2sq": _tagged(branch.b2_sq),
        "mults": list(branch.mult_pattern),
        "window": branch.window,
        "reason": reason,
    }


def cmd_catalog(config: RunConfig):
    if config.n is None or config.n < 2:
        raise SystemExit(_usage_error("catalog requires --n >= 2"))
    entries, notes = families.catalog(config.n, r=config.r or 1.0)
    doc = {
        "schema": SCHEMA,
        "command": "catalog",
        "n": config.n,
        "entries": [_entry_doc(e) for e in entries],
        "notes": notes,
    }
    return doc, 0


def cmd_classify(config: RunConfig):
    if config.case == "i":
        branch = classifier.solve_case_one()
        doc = {"schema": SCHEMA, "command": "classify", **_branch_doc(branch)}
        return doc, 0
    if config.lambda3 is None:
        raise SystemExit(_usage_error("classify requires --lambda3 or --case i"))
    outcome = classifier.solve_case_two(config.lambda3)
    doc = {
        "schema": SCHEMA,
        "command": "classify",
        **_branch_doc(outcome.branch, lambda3=config.lambda3, reason=outcome.reason),
    }
    return doc, 0


def cmd_sweep(config: RunConfig):
    if config.lo is None or config.hi is None or not config.step:
        raise SystemExit(_usage_error("sweep requires --lo, --hi and --step"))
    count = int(round((config.hi - config.lo) / config.step))
    grid = [config.lo + i * config.step for i in range(count + 1)]
    report = classifier.sweep(grid)
    doc = {
        "schema": SCHEMA,
        "command": "sweep",
        "grid": grid,
        "outcomes": [
            _branch_doc(o.branch, lambda3=o.lambda3, reason=o.reason)
            for o in report.outcomes
        ],
        "isolated": _branch_doc(report.isolated),
    }
    return doc, 0


def cmd_focal(config: RunConfig):
    n = config.n or 3
    if n < 3:
        raise SystemExit(_usage_error("focal reports require --n >= 3"))
    if config.case == "i":
        branch = classifier.solve_case_one()
        m1 = config.k or 2
        profile = classifier.branch_profile(branch, n, m1=m1)
        r = config.r if config.r is not None else jacobi.EXCEPTIONAL_RADIUS
    else:
        if config.lambda3 is None:
            raise SystemExit(_usage_error("focal --case ii requires --lambda3"))
        outcome = classifier.solve_case_two(config.lambda3)
        if outcome.branch is None:
            return (
                {
                    "schema": SCHEMA,
                    "command": "focal",
                    "case": "ii",
                    "lambda3": _tagged(config.lambda3),
                    "result": None,
                    "reason": outcome.reason,
                },
                0,
            )
        branch = outcome.branch
        profile = classifier.branch_profile(branch, n)
        r = (
            config.r
            if config.r is not None
            else 2.0 * math.atanh(2.0 * branch.lambda3)
        )
    focal = jacobi.transversal_map(profile, r)
    doc = {
        "schema": SCHEMA,
        "command": "focal",
        "case": config.case,
        "n": n,
        "r": _tagged(r),
        "d_block": focal.d_block.tolist(),
        "det_d": focal.det_d,
        "kernel_dim": focal.kernel_dim,
        "rank": focal.rank,
        "image_codim": focal.image_codim,
        "singular_values": focal.singular_values.tolist(),
    }
    if focal._c_block is None:
        # kernel-reporting path: the carrier block cannot be inverted
        doc.update(
            {
                "c_block": None,
                "image_spectrum": None,
                "carrier_block": None,
                "reason": focal.c_reason,
            }
        )
        return doc, 0
    image = jacobi.image_shape_operator(focal)
    doc.update(
        {
            "c_block": focal._c_block.tolist(),
            "image_spectrum": [
                {"lambda": _tagged(lam), "mult": mult} for lam, mult in image.entries
            ],
            "carrier_block": image.carrier_block.tolist(),
        }
    )
    return doc, 0


def cmd_verify(config: RunConfig):
    results = verification.run_all(seed=config.seed, tolerance=config.tolerance)
    doc = {
        "schema": SCHEMA,
        "command": "verify",
        "seed": config.seed,
        "suites": [
            {
                "name": r.name,
                "passed": r.passed,
                "max_residual": r.max_residual,
                "tolerance": r.tolerance,
                "detail": r.detail,
            }
            for r in results
        ],
        "passed": all(r.passed for r in results),
    }
    return doc, 0 if doc["passed"] else 1


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------


def _render_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def _csv_rows(doc):
    if doc["command"] == "catalog":
        header = ["family", "n", "k", "r", "lambda", "mult"]
        rows = []
        for entry in doc["entries"]:
            r = entry["r"]["value"] if entry["r"] else ""
            for (lam, mult) in entry["profile"]:
                rows.append(
                    [entry["family"], entry["n"], entry["k"] or "", r, lam, mult]
                )
        return header, rows
    if doc["command"] == "sweep":
        header = ["case", "lambda3", "lambda1", "lambda2", "b1sq", "b2sq", "reason"]
        rows = []
        for out in doc["outcomes"] + [doc["isolated"]]:
            if out.get("branch", "present") is None:
                rows.append(
                    ["ii", out["lambda3"]["value"], "", "", "", "", out["reason"]]
                )
            else:
                rows.append(
                    [
                        out["case"],
                        out["lambda3"]["value"],
                        out["lambda1"]["value"],
                        out["lambda2"]["value"],
                        out["b1sq"]["value"],
                        out["b2sq"]["value"],
                        "",
                    ]
                )
        return header, rows
    if doc["command"] == "verify":
        header = ["suite", "passed", "max_residual", "tolerance"]
        rows = [
            [s["name"], s["passed"], s["max_residual"], s["tolerance"]]
            for s in doc["suites"]
        ]
        return header, rows
    raise SystemExit(_usage_error(f"no CSV layout for command {doc['command']!r}"))


def _render_csv(doc) -> str:
    header, rows = _csv_rows(doc)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _render_table(doc) -> str:
    lines = []
    if doc["command"] == "catalog":
        for entry in doc["entries"]:
            profile = ", ".join(
                f"{lam:+.6f} x{mult}" for lam, mult in entry["profile"]
            )
            k = f" k={entry['k']}" if entry["k"] is not None else ""
            r = (
                f" r={entry['r']['value']:.6f}"
                if entry["r"] is not None
                else ""
            )
            hopf = "hopf" if entry["hopf"] else "non-hopf"
            lines.append(
                f"{entry['family']:<16}{k}{r}  g={entry['g']}  {hopf}  [{profile}]"
            )
        lines.extend(f"note: {note}" for note in doc["notes"])
    elif doc["command"] == "verify":
        for s in doc["suites"]:
            flag = "PASS" if s["passed"] else "FAIL"
            lines.append(
                f"[{flag}] {s['name']:<26} max residual {s['max_residual']:.3e} "
                f"(tol {s['tolerance']:.1e}) {s['detail']}"
            )
        lines.append("all suites passed" if doc["passed"] else "verification FAILED")
    elif doc["command"] in ("classify", "sweep", "focal"):
        lines.append(_render_json(doc))
    return "\n".join(lines)


def render(doc, fmt: str) -> str:
    if fmt == "json":
        return _render_json(doc)
    if fmt == "csv":
        return _render_csv(doc)
    return _render_table(doc)


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted both before and after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--seed",
        type=int,
        default=argparse.SUPPRESS,
        help="seed for randomised checks (env CHGEO_SEED overrides the default)",
    )
    common.add_argument(
        "--format",
        dest="fmt",
        choices=("json", "csv", "table"),
        default=argparse.SUPPRESS,
        help="output format (default: table)",
    )
    parser = argparse.ArgumentParser(
        prog="chgeo",
        parents=[common],
        description="catalog and verification engine for homogeneous "
        "hypersurface geometry in complex hyperbolic space",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_catalog = sub.add_parser(
        "catalog", parents=[common], help="list the homogeneous families"
    )
    p_catalog.add_argument("--n", type=int, required=True)
    p_catalog.add_argument("--r", type=float, default=1.0, help="representative radius")

    p_verify = sub.add_parser(
        "verify", parents=[common], help="run every verification suite"
    )
    p_verify.add_argument("--tolerance", type=float, default=None)

    p_classify = sub.add_parser(
        "classify", parents=[common], help="solve the constraint system"
    )
    p_classify.add_argument("--lambda3", type=float, default=None)
    p_classify.add_argument("--case", choices=("i", "ii"), default="ii")

    p_focal = sub.add_parser("focal", parents=[common], help="transversal-map report")
    p_focal.add_argument("--case", choices=("i", "ii"), required=True)
    p_focal.add_argument("--n", type=int, default=3)
    p_focal.add_argument("--k", type=int, default=None)
    p_focal.add_argument("--lambda3", type=float, default=None)
    p_focal.add_argument("--r", type=float, default=None)

    p_sweep = sub.add_parser(
        "sweep", parents=[common], help="scan the parametric branch"
    )
    p_sweep.add_argument("--lo", type=float, required=True)
    p_sweep.add_argument("--hi", type=float, required=True)
    p_sweep.add_argument("--step", type=float, required=True)
    return parser


_COMMANDS = {
    "catalog": cmd_catalog,
    "verify": cmd_verify,
    "classify": cmd_classify,
    "focal": cmd_focal,
    "sweep": cmd_sweep,
}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("CHGEO_SEED", verification.DEFAULT_SEED))
    config = RunConfig(
        command=args.command,
        n=getattr(args, "n", None),
        k=getattr(args, "k", None),
        r=getattr(args, "r", None),
        lambda3=getattr(args, "lambda3", None),
        case=getattr(args, "case", None),
        lo=getattr(args, "lo", None),
        hi=getattr(args, "hi", None),
        step=getattr(args, "step", None),
        seed=seed,
        fmt=args.fmt,
        tolerance=getattr(args, "tolerance", None),
    )
    try:
        doc, code = _COMMANDS[config.command](config)
    except OpenCaseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(render(doc, config.fmt))
    return code


def main() -> None:
    raise SystemExit(run())
