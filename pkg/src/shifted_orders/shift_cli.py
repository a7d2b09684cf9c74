import argparse
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, Dict, List, Optional

from dotenv import load_dotenv

from .algebra_files import bundled_corpus_dir, corpus_files
from .errors import AlgebraFileError, ShiftedOrdersError, TiltingVerificationError
from .homology import Bounded
from .reports import (
    EXIT_USAGE,
    ReportRecord,
    emit_report,
    error_exit_code,
    exit_code,
    inputs_digest,
    merge_records,
)
from .settings import GlobalSettings, LogLevel, configure_logging, load_settings
from .toolkit import ShiftToolkit

logger = logging.getLogger(__name__)

TRANSFER_NOTE = "d >= 1 rows assume the shifted order of A ⊗ R is (shifted algebra of A) ⊗ R; their failures are experimental findings"


def _toolkit(path: str, args: argparse.Namespace, settings: GlobalSettings) -> ShiftToolkit:
    return ShiftToolkit.from_file(path, field=args.field, settings=settings)


def _record(command: str, tk: ShiftToolkit, args: argparse.Namespace, *extra: str) -> ReportRecord:
    source = tk.parsed.source if tk.parsed else ""
    text = Path(source).read_text(encoding="utf-8") if source else ""
    return ReportRecord(
        command=command,
        inputs_digest=inputs_digest(text, tk.algebra.field.label, str(tk.cap), str(tk.seed), *extra),
        field=tk.algebra.field.label,
        cap=tk.cap,
        seed=tk.seed,
    )


def analyze_rows(tk: ShiftToolkit, record: ReportRecord, with_checks: bool = True) -> None:
    prof = tk.profile()
    record.add_row({
        "algebra": tk.name,
        "dim": tk.algebra.dim,
        "simples": len(tk.algebra.idempotents),
        "gldim": prof.gldim,
        "injdim": prof.injdim,
        "domdim": prof.domdim,
        "n": prof.n,
        "qf3": prof.qf3,
        "gorenstein_order": prof.gorenstein_order,
        "iwanaga_gorenstein": prof.iwanaga_gorenstein,
    })
    if with_checks:
        for key, verdict in tk.invariant_checks().items():
            record.add_verdict(f"{tk.name}:{key}", verdict)


def shift_rows(tk: ShiftToolkit, k: int, record: ReportRecord) -> None:
    prefix = f"{tk.name}:k={k}"
    sd = tk.shift(k)
    try:
        cert = tk.certify(k)
        tk.witness_exactness(k)
        record.add_verdict(f"{prefix}:tilting", "pass")
        pd_t = cert.projective_dimension
    except TiltingVerificationError as e:
        logger.error("%s: %s", prefix, e)
        record.add_verdict(f"{prefix}:tilting", "fail")
        pd_t = None
    report = tk.gldim_report(k)
    record.add_verdict(f"{prefix}:gldim", report.holds)
    record.add_verdict(f"{prefix}:simples", "pass" if report.simples_gamma == report.simples_lambda else "fail")
    row = {
        "algebra": tk.name,
        "level": k,
        "dim_K": sd.cosyzygy.dim,
        "dim_T": sd.module.dim,
        "classes": len(sd.representatives),
        "pd_T": pd_t,
        "dim_gamma": report.dim_gamma,
        "simples_gamma": report.simples_gamma,
        "gldim_lambda": report.gldim_lambda,
        "gldim_gamma": report.gldim_gamma,
        "holds": report.holds,
    }
    if k >= 1:
        injdim = tk.injdim_check(k)
        row["injdim_T"] = injdim.injdim_t
        if injdim.verdict != "not-applicable":
            record.add_verdict(f"{prefix}:injdim", injdim.verdict)
    record.add_row(row)


def order_rows(tk: ShiftToolkit, d: int, k: int, record: ReportRecord) -> None:
    report = tk.order_report(d, k)
    record.add_row({
        "algebra": tk.name,
        "krull": d,
        "level": k,
        "cm_domdim": report.profile.cm_domdim,
        "n": report.profile.n,
        "gldim_lambda": report.profile.gldim_lambda,
        "bound": report.rhs,
        "gldim_gamma_lambda": report.lhs,
        "verdict": report.verdict,
    })
    record.add_verdict(f"{tk.name}:d={d}:k={k}:theorem", report.verdict)
    if TRANSFER_NOTE not in record.notes and d >= 1:
        record.notes.append(TRANSFER_NOTE)


def endcheck_rows(tk: ShiftToolkit, spec: Optional[str], record: ReportRecord) -> None:
    report = tk.endcheck(spec)
    record.add_row({
        "algebra": tk.name,
        "module": spec or "A+DA",
        "module_dim": report.module_dim,
        "end_dim": report.end_dim,
        "domdim_end": report.domdim_end,
        "ext": report.ext_dims,
        "hom_cohomology": report.hom_cohomology,
    })
    record.add_verdict(f"{tk.name}:endcheck", report.holds)
    record.add_verdict(f"{tk.name}:endcheck-ext", "pass" if report.ext_agreement else "fail")


def mechanism_rows(tk: ShiftToolkit, k: int, record: ReportRecord) -> None:
    for report in tk.mechanism(k):
        record.add_row({
            "algebra": tk.name,
            "level": k,
            "simple": report.simple + 1,
            "pd_simple": report.pd_simple,
            "n": report.n,
            "width": report.width,
            "minimized_width": report.minimized_width,
            "removed": report.removed,
            "tor_vanishes": report.tor_vanishes,
        })
        record.add_verdict(f"{tk.name}:k={k}:S{report.simple + 1}:mechanism", report.verdict)


def full_rows(tk: ShiftToolkit, record: ReportRecord) -> None:
    """Everything the corpus runner checks for one algebra"""
    analyze_rows(tk, record)
    prof = tk.profile()
    for k in tk.shift_levels():
        shift_rows(tk, k, record)
        if prof.gldim.exact:
            mechanism_rows(tk, k, record)
    if prof.qf3 and prof.n.exact and prof.n.value > 0:
        for d in range(prof.n.value):
            order_rows(tk, d, 1, record)
    endcheck_rows(tk, None, record)


def expected_rows(tk: ShiftToolkit, record: ReportRecord) -> None:
    """Compare against the expected invariants stored in the file"""
    expected = tk.parsed.metadata.expected if tk.parsed else None
    if expected is None:
        return
    prof = tk.profile()
    observed: Dict[str, object] = {"dim": tk.algebra.dim, "simples": len(tk.algebra.idempotents)}
    for key in ("gldim", "domdim", "n"):
        value: Bounded = getattr(prof, key)
        observed[key] = value.value if value.exact else "inf"
    for key, want in expected.model_dump(exclude_none=True).items():
        record.add_verdict(f"{tk.name}:expected-{key}", "pass" if observed[key] == want else "fail")


def _corpus_entry(path: str, field: Optional[str], settings_dump: dict, selftest: bool) -> ReportRecord:
    settings = GlobalSettings.model_validate(settings_dump)
    tk = ShiftToolkit.from_file(path, field=field, settings=settings)
    record = ReportRecord(command="corpus", cap=tk.cap, seed=tk.seed, field=tk.algebra.field.label)
    record.inputs_digest = inputs_digest(Path(path).read_text(encoding="utf-8"), tk.algebra.field.label)
    full_rows(tk, record)
    if selftest:
        expected_rows(tk, record)
    return record


def _run_corpus(directory: Path, args: argparse.Namespace, settings: GlobalSettings, selftest: bool) -> ReportRecord:
    files = [str(p) for p in corpus_files(directory)]
    if not files:
        raise AlgebraFileError(f"no .alg files in {directory}")
    dump = settings.model_dump(mode="json")
    jobs = args.jobs or settings.max_workers
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_corpus_entry, files, [args.field] * len(files), [dump] * len(files), [selftest] * len(files)))
    else:
        records = [_corpus_entry(f, args.field, dump, selftest) for f in files]
    return merge_records("selftest" if selftest else "corpus", records, settings.cap, settings.seed, field=args.field or settings.default_field)


def cmd_analyze(args, settings) -> ReportRecord:
    tk = _toolkit(args.file, args, settings)
    record = _record("analyze", tk, args)
    analyze_rows(tk, record)
    return record


def cmd_describe(args, settings) -> ReportRecord:
    tk = _toolkit(args.file, args, settings)
    record = _record("describe", tk, args)
    record.add_row(tk.describe())
    return record


def cmd_shift(args, settings) -> ReportRecord:
    tk = _toolkit(args.file, args, settings)
    record = _record("shift", tk, args, str(args.level))
    shift_rows(tk, args.level, record)
    gamma = tk.shifted_algebra(args.level)
    record.notes.extend(f"summand {i + 1}: {s}" for i, s in enumerate(gamma.summand_map))
    return record


def cmd_order(args, settings) -> ReportRecord:
    tk = _toolkit(args.file, args, settings)
    record = _record("order", tk, args, str(args.krull), str(args.level))
    op = tk.order_profile(args.krull)
    record.add_row({
        "algebra": tk.name,
        "krull": args.krull,
        "cm_domdim": op.cm_domdim,
        "n": op.n,
        "gldim_lambda": op.gldim_lambda,
        "applicable": op.applicable,
        "predicted_bound": op.predicted_bound,
        "gorenstein_order": op.gorenstein_order,
    })
    order_rows(tk, args.krull, args.level, record)
    return record


def cmd_endcheck(args, settings) -> ReportRecord:
    tk = _toolkit(args.file, args, settings)
    record = _record("endcheck", tk, args, args.module or "")
    endcheck_rows(tk, args.module, record)
    return record


def cmd_mechanism(args, settings) -> ReportRecord:
    tk = _toolkit(args.file, args, settings)
    record = _record("mechanism", tk, args, str(args.level))
    mechanism_rows(tk, args.level, record)
    return record


def cmd_corpus(args, settings) -> ReportRecord:
    return _run_corpus(Path(args.directory), args, settings, selftest=False)


def cmd_selftest(args, settings) -> ReportRecord:
    record = _run_corpus(bundled_corpus_dir(), args, settings, selftest=True)
    first = bundled_corpus_dir() / "auslander_kx2.alg"
    if first.exists():
        runs = []
        for _ in range(2):
            tk = ShiftToolkit.from_file(first, field=args.field, settings=settings)
            rec = _record("analyze", tk, args)
            analyze_rows(tk, rec, with_checks=False)
            runs.append(emit_report(rec, "json"))
        record.add_verdict("determinism", "pass" if runs[0] == runs[1] else "fail")
    return record


COMMANDS: Dict[str, Callable[[argparse.Namespace, GlobalSettings], ReportRecord]] = {
    "analyze": cmd_analyze,
    "describe": cmd_describe,
    "shift": cmd_shift,
    "order": cmd_order,
    "endcheck": cmd_endcheck,
    "mechanism": cmd_mechanism,
    "corpus": cmd_corpus,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, help="Resolution length cap (default 24)")
    common.add_argument("--seed", type=int, help="Base seed for randomised searches (default 0)")
    common.add_argument("--field", help="Working field: q or pP")
    common.add_argument("--json", dest="json_path", help="Write the canonical JSON report here")
    common.add_argument("--format", choices=["table", "json"], default="table", help="Standard output format")
    common.add_argument("--log-level", choices=[lvl.value for lvl in LogLevel], help="Logging level")

    parser = argparse.ArgumentParser(
        prog="shifted-orders",
        description="Dominant dimension, shifted tilting modules and shifted algebras of bound quiver algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="Homological profile of an algebra")
    p.add_argument("file")
    p = sub.add_parser("describe", parents=[common], help="Presentation data of an algebra")
    p.add_argument("file")
    p = sub.add_parser("shift", parents=[common], help="Shifted module, tilting certificate and shifted algebra")
    p.add_argument("file")
    p.add_argument("--level", type=int, default=1)
    p = sub.add_parser("order", parents=[common], help="Order profile and theorem report")
    p.add_argument("file")
    p.add_argument("--krull", type=int, default=0)
    p.add_argument("--level", type=int, default=1)
    p = sub.add_parser("endcheck", parents=[common], help="Dominant dimension of End(M) for a generator-cogenerator M")
    p.add_argument("file")
    p.add_argument("--module", help="Module spec such as A+DA or A+S1 (default A+DA)")
    p = sub.add_parser("mechanism", parents=[common], help="Transported resolutions of the simple Γ-modules")
    p.add_argument("file")
    p.add_argument("--level", type=int, default=1)
    p = sub.add_parser("corpus", parents=[common], help="Run every check over a directory of .alg files")
    p.add_argument("directory")
    p.add_argument("--jobs", type=int, help="Parallel workers")
    p = sub.add_parser("selftest", parents=[common], help="Full invariant suite on the bundled corpus")
    p.add_argument("--jobs", type=int, help="Parallel workers")
    return parser


def run_command(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else 0

    try:
        settings = load_settings(cap=args.cap, seed=args.seed, log_level=args.log_level)
    except ValueError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    configure_logging(settings.log_level)
    if not hasattr(args, "jobs"):
        args.jobs = None

    started = time.perf_counter()
    try:
        record = COMMANDS[args.command](args, settings)
    except ShiftedOrdersError as e:
        print(f"Error: {e}", file=sys.stderr)
        return error_exit_code(e)
    record.wall_time = time.perf_counter() - started

    try:
        text = emit_report(record, args.format, args.json_path)
    except ShiftedOrdersError as e:
        print(f"Error: {e}", file=sys.stderr)
        return error_exit_code(e)
    print(text, end="")
    return exit_code(record)


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    return run_command(argv)


if __name__ == "__main__":
    sys.exit(main())
