"""Command-line surface: serialization formats and the benchmark harness.

Commands
--------
decompose   Pauli coefficients of a state read from a state file.
bound       Exhaustive classical bound of an operator file.
alpha       Product-state maximum of an operator file.
report      Benchmark table for one catalog entry.
verify      Re-derive every reference number in the catalog and grade it.

File formats (JSON):

* operator file: ``{"n": 3, "terms": [{"string": "XXI", "coeff": 0.5}, ...]}``
  with unique length-``n`` words over I/X/Y/Z and real coefficients.
* state file: either ``{"catalog": "ghz3", "params": {"p": 0.8}}``
  (``params`` optional; ``R`` selects the operator scale of the ``mds``
  family, ``p`` mixes in white noise) or ``{"matrix": 2, "entries":
  [[re, im], ...]}`` with ``4**n`` row-major entries of a valid density
  matrix.

Exit status: 0 on success / all checks pass, 1 on a failed check or an
invalid-but-well-formed input (bad density matrix, out-of-range
parameter, exceeded capacity, ineffective witness), 2 on usage or parse
errors.  All output is deterministic for fixed flags; numbers are
printed with 12 significant digits.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Iterable, Mapping
from typing import Any

import numpy as np

from .hs import HSOperator, hs_decompose
from .lhv_bound import classical_bound, used_pairs
from .pauli_core import (
    AXIS_LABELS,
    CapacityError,
    DensityMatrix,
    InvalidStateError,
)
from .product_max import alpha_grid_oracle, alpha_max
from .states import CatalogEntry, catalog, mix_white_noise
from .witness import WitnessIneffectiveError, analyze, mds_entanglement_threshold

CATALOG_NAMES = ("ghz3", "w3", "ghz4", "w4", "cl4", "mds")
REPORT_FIELDS = (
    "beta_cl",
    "beta_qu",
    "pcrit_bell",
    "alpha",
    "trace_g_rho",
    "witness_value",
    "pcrit_witness",
    "threshold_r",
)
VERIFY_ATOL = 1e-9


class UsageError(Exception):
    """Malformed input: bad file structure, words, or names."""


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _fmt_bool(flag: bool) -> str:
    return "true" if flag else "false"


# ---------------------------------------------------------------------------
# file loading


def _load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _require_mapping(doc: Any, what: str) -> Mapping[str, Any]:
    if not isinstance(doc, dict):
        raise UsageError(f"{what} must be a JSON object, got {type(doc).__name__}")
    return doc


def _real_number(value: Any, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise UsageError(f"{what} must be a real number, got {value!r}")
    return float(value)


def load_operator(doc: Any) -> HSOperator:
    """Parse an operator document into an HSOperator."""
    doc = _require_mapping(doc, "operator file")
    if set(doc) != {"n", "terms"}:
        raise UsageError("operator file must have exactly the keys 'n' and 'terms'")
    n = doc["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise UsageError(f"'n' must be a positive integer, got {n!r}")
    if not isinstance(doc["terms"], list):
        raise UsageError("'terms' must be a list")
    terms: dict[str, float] = {}
    for item in doc["terms"]:
        item = _require_mapping(item, "operator term")
        if set(item) != {"string", "coeff"}:
            raise UsageError(
                "each term must have exactly the keys 'string' and 'coeff'"
            )
        word = item["string"]
        if not isinstance(word, str) or len(word) != n:
            raise UsageError(f"term string must be a length-{n} word, got {word!r}")
        if any(ch not in AXIS_LABELS for ch in word):
            raise UsageError(f"term string {word!r} has letters outside I/X/Y/Z")
        if word in terms:
            raise UsageError(f"duplicate term string {word!r}")
        terms[word] = _real_number(item["coeff"], f"coefficient of {word!r}")
    return HSOperator(n, terms)


def operator_document(op: HSOperator) -> dict[str, Any]:
    """Render an HSOperator as an operator-file document (terms in word order)."""
    return {
        "n": op.n,
        "terms": [{"string": s.label(), "coeff": c} for s, c in op.terms.items()],
    }


def load_state(doc: Any) -> DensityMatrix:
    """Parse a state document into a validated DensityMatrix."""
    doc = _require_mapping(doc, "state file")
    if "catalog" in doc:
        if not set(doc) <= {"catalog", "params"}:
            raise UsageError("catalog state file allows only 'catalog' and 'params'")
        name = doc["catalog"]
        if name not in CATALOG_NAMES:
            raise UsageError(
                f"unknown catalog name {name!r}; choose from {', '.join(CATALOG_NAMES)}"
            )
        params = _require_mapping(doc.get("params", {}), "'params'")
        allowed = {"R", "p"} if name == "mds" else {"p"}
        if not set(params) <= allowed:
            raise UsageError(
                f"unknown params {sorted(set(params) - allowed)} for {name!r}"
            )
        kwargs = {}
        if "R" in params:
            kwargs["mds_r"] = _real_number(params["R"], "'R'")
        state = catalog(**kwargs)[name].state
        if "p" in params:
            state = mix_white_noise(state, _real_number(params["p"], "'p'"))
        return state
    if "matrix" in doc:
        if set(doc) != {"matrix", "entries"}:
            raise UsageError(
                "matrix state file must have exactly the keys 'matrix' and 'entries'"
            )
        n = doc["matrix"]
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise UsageError(f"'matrix' must be a positive qubit count, got {n!r}")
        entries = doc["entries"]
        dim = 2**n
        if not isinstance(entries, list) or len(entries) != dim * dim:
            raise UsageError(
                f"'entries' must list {dim * dim} [re, im] pairs (row-major)"
            )
        flat = []
        for pair in entries:
            if not isinstance(pair, list) or len(pair) != 2:
                raise UsageError(f"each entry must be an [re, im] pair, got {pair!r}")
            flat.append(
                complex(_real_number(pair[0], "re"), _real_number(pair[1], "im"))
            )
        matrix = np.array(flat, dtype=complex).reshape(dim, dim)
        return DensityMatrix.from_matrix(matrix)
    raise UsageError("state file needs either a 'catalog' or a 'matrix' key")


# ---------------------------------------------------------------------------
# commands


def cmd_decompose(args: argparse.Namespace) -> int:
    state = load_state(_load_json(args.state))
    coeffs = hs_decompose(state)
    kept = {s.label(): c for s, c in coeffs.terms.items() if abs(c) >= args.threshold}
    op = HSOperator(state.n, kept)
    if args.json:
        print(json.dumps(operator_document(op)))
        return 0
    print(f"n {op.n}")
    print(f"terms {len(op)}")
    for s, c in op.terms.items():
        print(f"{s.label()} {_fmt(c)}")
    return 0


def cmd_bound(args: argparse.Namespace) -> int:
    op = load_operator(_load_json(args.operator))
    result = classical_bound(op)
    if args.json:
        doc = {
            "beta_cl": result.beta_cl,
            "evaluations": result.evaluations,
            "maximizer": [list(triple) for triple in result.maximizer.values],
        }
        print(json.dumps(doc))
        return 0
    print(f"beta_cl {_fmt(result.beta_cl)}")
    print(f"evaluations {result.evaluations}")
    for line in result.maximizer.lines(frozenset(used_pairs(op))):
        print(line)
    return 0


def cmd_alpha(args: argparse.Namespace) -> int:
    if args.grid_check and args.grid_check < 4:
        raise UsageError("--grid-check needs at least 4 divisions")
    op = load_operator(_load_json(args.operator))
    result = alpha_max(op, starts=args.starts, seed=args.seed)
    grid_value = alpha_grid_oracle(op, args.grid_check) if args.grid_check else None
    if args.json:
        doc: dict[str, Any] = {
            "alpha": result.alpha,
            "converged": result.converged,
            "iterations": result.iterations,
            "starts_used": result.starts_used,
            "argmax": [list(pair) for pair in result.argmax.angles],
        }
        if grid_value is not None:
            doc["grid_value"] = grid_value
        print(json.dumps(doc))
        return 0
    print(f"alpha {_fmt(result.alpha)}")
    print(f"converged {_fmt_bool(result.converged)}")
    print(f"iterations {result.iterations}")
    print(f"starts_used {result.starts_used}")
    for k, (theta, phi) in enumerate(result.argmax.angles):
        print(f"qubit {k}: theta {_fmt(theta)} phi {_fmt(phi)}")
    if grid_value is not None:
        print(f"grid_value {_fmt(grid_value)}")
    return 0


def entry_rows(entry: CatalogEntry) -> list[tuple[str, float, float, bool]]:
    """(field, computed, expected, ok) for every expected field of one entry."""
    report = analyze(entry)
    computed = report.computed()
    if "threshold_r" in entry.expected:
        computed["threshold_r"] = mds_entanglement_threshold()
    rows = []
    for field in REPORT_FIELDS:
        if field not in entry.expected:
            continue
        got = float(computed[field])
        want = float(entry.expected[field])
        rows.append((field, got, want, bool(abs(got - want) <= VERIFY_ATOL)))
    return rows


def cmd_report(args: argparse.Namespace) -> int:
    entry = catalog(mds_r=args.mds_r)[args.name]
    rows = entry_rows(entry)
    all_ok = all(ok for _, _, _, ok in rows)
    if args.json:
        doc = {
            "name": entry.name,
            "n": entry.n,
            "fields": {
                field: {"computed": got, "expected": want, "ok": ok}
                for field, got, want, ok in rows
            },
            "all_ok": all_ok,
        }
        print(json.dumps(doc))
        return 0 if all_ok else 1
    print(f"name {entry.name}")
    print(f"n {entry.n}")
    for field, got, want, ok in rows:
        print(f"{field} {_fmt(got)} expected {_fmt(want)} {'ok' if ok else 'FAIL'}")
    print(f"all_ok {_fmt_bool(all_ok)}")
    return 0 if all_ok else 1


def verify_entries(
    entries: Iterable[CatalogEntry],
) -> tuple[list[tuple[str, str, float, float, bool]], bool]:
    """(entry, field, computed, expected, ok) rows over all given entries."""
    rows = []
    for entry in entries:
        for field, got, want, ok in entry_rows(entry):
            rows.append((entry.name, field, got, want, ok))
    all_pass = bool(rows) and all(ok for _, _, _, _, ok in rows)
    return rows, all_pass


def cmd_verify(args: argparse.Namespace) -> int:
    rows, all_pass = verify_entries(catalog().values())
    if args.json:
        results: dict[str, dict[str, bool]] = {}
        for name, field, _got, _want, ok in rows:
            results.setdefault(name, {})[field] = ok
        print(json.dumps({"results": results, "all_pass": all_pass}))
        return 0 if all_pass else 1
    for name, field, got, want, ok in rows:
        status = "PASS" if ok else "FAIL"
        print(f"{name} {field} {_fmt(got)} expected {_fmt(want)} {status}")
    verdict = "PASS" if all_pass else "FAIL"
    print(f"RESULT {verdict} ({len(rows)} checks at {_fmt(VERIFY_ATOL)})")
    return 0 if all_pass else 1


# ---------------------------------------------------------------------------
# parser and entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hswit",
        description="Entanglement witnesses and Bell operators via Pauli coefficients.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="Pauli coefficients of a state file")
    p.add_argument("state", help="path to a JSON state file")
    p.add_argument(
        "--threshold",
        type=float,
        default=1e-12,
        help="drop coefficients below this magnitude (default 1e-12)",
    )
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("bound", help="exhaustive classical bound of an operator file")
    p.add_argument("operator", help="path to a JSON operator file")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("alpha", help="product-state maximum of an operator file")
    p.add_argument("operator", help="path to a JSON operator file")
    p.add_argument("--starts", type=int, default=64, help="ascent starts (default 64)")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.add_argument(
        "--grid-check",
        type=int,
        default=0,
        metavar="DIVISIONS",
        help="also report the exhaustive grid value at this resolution (>= 4; 0 skips)",
    )
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("report", help="benchmark table for one catalog entry")
    p.add_argument("name", choices=CATALOG_NAMES, help="catalog entry")
    p.add_argument(
        "--mds-r",
        type=float,
        default=0.5,
        help="operator scale R of the mds family (default 0.5)",
    )
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("verify", help="re-derive and grade every catalog number")
    p.set_defaults(func=cmd_verify)

    for sp in sub.choices.values():
        sp.add_argument("--json", action="store_true", help="machine-readable output")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (
        InvalidStateError,
        CapacityError,
        WitnessIneffectiveError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
