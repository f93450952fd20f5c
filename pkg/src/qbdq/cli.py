"""Command-line front end: ``qbdq {demo,query,grover-scan,compare,decoy-test}``."""
from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import kernels
from .analysis import comparison_csv, emit_comparison_tables, key_ensemble_report
from .channel import (
    DEFAULT_MAX_RESTARTS,
    DEFAULT_THRESHOLD,
    ChannelAbort,
    check_transmission,
)
from .grover import grover_scan
from .protocol import (
    ChannelConfig,
    Database,
    run_checked_session,
    run_session,
    step1_key_state,
    step2_measure_offset,
    step3_rotate_encrypt,
)

EXIT_OK = 0
EXIT_FAILED = 1  # retrieval missed the target, or a demo value mismatched
EXIT_USAGE = 2
EXIT_CHANNEL_ABORT = 3

# Worked-example values the demo must reproduce exactly.
DEMO_ALICE = {"p": 8, "lambda": 12}
DEMO_BOB_Q = 4
DEMO_ROTATED = [7, 1, 11, 6, 15, 2, 12, 13, 0, 5, 9, 10, 14, 8, 3, 4]
DEMO_ENCRYPTED = [2, 8, 13, 10, 13, 9, 7, 11, 5, 15, 14, 5, 8, 3, 5, 13]
DEMO_DELTA_S = 4
DEMO_DECRYPTED = 5
REFERENCE_ITERATIONS = 6


@dataclass
class RunConfig:
    db_path: str | None = None
    query_index: int = 8
    rng_seed: int = 0
    forced_lambda: int | None = None
    iterations: int | str = "auto"
    decoy_count: int | None = None
    decoy_threshold: float = DEFAULT_THRESHOLD
    eavesdropper: str = "none"
    output_path: str | None = None
    formula_mode: str = "table"
    sizes: str = "8:400:8"
    max_restarts: int = DEFAULT_MAX_RESTARTS


def fixture_path() -> Path:
    return Path(str(resources.files("qbdq") / "data" / "example16.json"))


def _int_list(values, what):
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, int):
            try:
                v = int(str(v).strip())
            except ValueError:
                raise ValueError(f"{what}: {v!r} is not an integer") from None
        if v < 0:
            raise ValueError(f"{what}: negative value {v}")
        out.append(v)
    return out


def load_database(path: str | Path | None = None) -> Database:
    """Read ``{"items": [...], "keys": [...]}`` JSON or an ``item,key`` CSV."""
    path = Path(path) if path is not None else fixture_path()
    if not path.exists():
        raise FileNotFoundError(f"database file not found: {path}")
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        rows = list(csv.DictReader(text.splitlines()))
        if not rows or set(rows[0]) != {"item", "key"}:
            raise ValueError(f"{path}: CSV needs a header 'item,key'")
        items = [r["item"] for r in rows]
        keys = [r["key"] for r in rows]
    else:
        doc = json.loads(text)
        if not isinstance(doc, dict) or "items" not in doc or "keys" not in doc:
            raise ValueError(f"{path}: expected a JSON object with 'items' and 'keys'")
        items, keys = doc["items"], doc["keys"]
    return Database.from_lists(_int_list(items, "items"), _int_list(keys, "keys"))


def parse_sizes(text: str) -> list[int]:
    """``START:STOP:STEP`` (STOP inclusive) or a comma list."""
    if ":" in text:
        start, stop, step = (int(v) for v in text.split(":"))
        if step < 1:
            raise ValueError("size step must be >= 1")
        return list(range(start, stop + 1, step))
    return [int(v) for v in text.split(",") if v.strip()]


def _write(text: str, path: str | None):
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _log(msg: str):
    print(msg, file=sys.stderr)


def cmd_demo(config: RunConfig | None = None) -> int:
    config = config or RunConfig()
    db = load_database(config.db_path)
    print(f"database N={db.N} n={db.shape.n} m={db.shape.m} (kernel backend: {kernels.BACKEND})")
    print(f"items = {list(db.items)}")
    print(f"keys  = {list(db.keys)}")

    checks = []
    alice = run_session(
        db, DEMO_ALICE["p"], config.rng_seed, client_id="alice",
        force_lambda=DEMO_ALICE["lambda"], force_success=True,
    )
    print("\n[alice] query index", alice.p)
    print(f"  measured lambda={alice.lambda_} key_lambda={alice.key_lambda} -> delta_s={alice.delta_s}")
    print(f"  rotated keys   = {alice.rotated_keys}")
    print(f"  encrypted items= {alice.encrypted}")
    g = alice.grover
    print(f"  grover: r_max={g['r_max']} r_star={g['r_star']} "
          f"p_target={g['p_target']:.6f} p_index={g['p_index']:.6f}")
    if g["r_star"] != REFERENCE_ITERATIONS:
        print(f"  note: reference iteration count is {REFERENCE_ITERATIONS}; "
              f"simulated peak is at r={g['r_star']}")
    print(f"  measured {tuple(alice.measured)} -> decrypted {alice.decrypted}")
    checks += [
        ("rotated keys", alice.rotated_keys == DEMO_ROTATED),
        ("encrypted items", alice.encrypted == DEMO_ENCRYPTED),
        ("delta_s", alice.delta_s == DEMO_DELTA_S),
        ("decrypted", alice.decrypted == DEMO_DECRYPTED),
    ]

    bob = run_session(db, DEMO_BOB_Q, config.rng_seed + 1, client_id="bob", force_success=True)
    print("\n[bob] query index", bob.p)
    print(f"  measured lambda={bob.lambda_} key_lambda={bob.key_lambda} -> delta_s={bob.delta_s}")
    print(f"  grover: r_star={bob.grover['r_star']} p_target={bob.grover['p_target']:.6f}")
    print(f"  measured {tuple(bob.measured)} -> decrypted {bob.decrypted}")
    checks.append(("bob decrypted", bob.decrypted == db.items[DEMO_BOB_Q]))

    report = key_ensemble_report(db.keys, db.shape.n, db.shape.m)
    print(f"\nkey-state entropy {report['entropy_bits']:.6f} bits "
          f"(register capacity n+m={report['register_capacity_bits']}, "
          f"gap {report['gap_bits']:.6f} bits)")

    failed = [name for name, ok in checks if not ok]
    for name, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'} {name}")
    return EXIT_FAILED if failed else EXIT_OK


def cmd_query(config: RunConfig) -> int:
    db = load_database(config.db_path)
    if not 0 <= config.query_index < db.N:
        _log(f"query index {config.query_index} outside [0, {db.N})")
        return EXIT_USAGE
    channel = ChannelConfig(
        config.decoy_count, config.decoy_threshold, config.eavesdropper, config.max_restarts
    )
    try:
        session = run_checked_session(
            db, config.query_index, config.rng_seed, channel,
            force_lambda=config.forced_lambda, iterations=config.iterations,
        )
    except ChannelAbort as exc:
        for rep in exc.reports:
            _log(json.dumps(rep.to_dict()))
        _log(f"aborted: {exc}")
        return EXIT_CHANNEL_ABORT
    for rep in session.reports:
        _log(json.dumps(rep.to_dict()))
    t = session.transcript
    _write(t.to_json(), config.output_path)
    if t.success:
        _log(f"success: item {t.p} = {t.decrypted} (r={t.r_used}, attempts={session.attempts})")
        return EXIT_OK
    _log(f"failure: measured {tuple(t.measured)} instead of ({t.p}, {t.encrypted[t.p]})")
    return EXIT_FAILED


def cmd_grover_scan(config: RunConfig) -> int:
    db = load_database(config.db_path)
    p = config.query_index
    if not 0 <= p < db.N:
        _log(f"query index {p} outside [0, {db.N})")
        return EXIT_USAGE
    _, _, offset = step2_measure_offset(step1_key_state(db), p, config.rng_seed, config.forced_lambda)
    _, encrypted, data_state = step3_rotate_encrypt(db, offset)
    scan = grover_scan(data_state, p, encrypted[p])
    lines = ["r,p_target,p_index"]
    lines += [f"{r},{t:.17g},{i:.17g}" for r, t, i in scan.per_iteration]
    _write("\n".join(lines) + "\n", config.output_path)
    print(f"# r_star={scan.r_star} p_target={scan.p_target[scan.r_star]:.17g} r_max={scan.r_max}")
    return EXIT_OK


def cmd_compare(config: RunConfig) -> int:
    sizes = parse_sizes(config.sizes)
    records = emit_comparison_tables(sizes, config.formula_mode)
    _write(comparison_csv(records), config.output_path)
    return EXIT_OK


def cmd_decoy_test(config: RunConfig) -> int:
    db = load_database(config.db_path)
    count = config.decoy_count if config.decoy_count is not None else 1000
    if count < 1:
        _log("decoy count must be >= 1")
        return EXIT_USAGE
    report = check_transmission(
        db.shape.qubits, count, config.decoy_threshold, config.eavesdropper, config.rng_seed
    )
    _write(json.dumps(report.to_dict()) + "\n", config.output_path)
    return EXIT_OK


COMMANDS = {
    "demo": cmd_demo,
    "query": cmd_query,
    "grover-scan": cmd_grover_scan,
    "compare": cmd_compare,
    "decoy-test": cmd_decoy_test,
}


def _iterations(value: str):
    if value == "auto":
        return value
    r = int(value)
    if r < 0:
        raise argparse.ArgumentTypeError("iterations must be >= 0")
    return r


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--db", dest="db_path", help="database JSON/CSV (default: bundled 16-item example)")
    common.add_argument("--query-index", type=int, default=8)
    common.add_argument("--seed", dest="rng_seed", type=int, default=0)
    common.add_argument("--force-lambda", dest="forced_lambda", type=int)
    common.add_argument("--iterations", type=_iterations, default="auto")
    common.add_argument("--decoys", dest="decoy_count", type=int)
    common.add_argument("--threshold", dest="decoy_threshold", type=float, default=DEFAULT_THRESHOLD)
    common.add_argument("--eavesdropper", choices=["none", "intercept-resend"], default="none")
    common.add_argument("--max-restarts", type=int, default=DEFAULT_MAX_RESTARTS)
    common.add_argument("--out", dest="output_path")
    common.add_argument("--formula-mode", choices=["table", "text"], default="table")
    common.add_argument("--sizes", default="8:400:8")

    parser = argparse.ArgumentParser(prog="qbdq", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        db_path=args.db_path,
        query_index=args.query_index,
        rng_seed=args.rng_seed,
        forced_lambda=args.forced_lambda,
        iterations=args.iterations,
        decoy_count=args.decoy_count,
        decoy_threshold=args.decoy_threshold,
        eavesdropper=args.eavesdropper.replace("-", "_"),
        output_path=args.output_path,
        formula_mode=args.formula_mode,
        sizes=args.sizes,
        max_restarts=args.max_restarts,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = config_from_args(args)
    try:
        return COMMANDS[args.command](config)
    except (FileNotFoundError, ValueError) as exc:
        _log(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
