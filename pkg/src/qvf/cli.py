"""Command-line front end.

Subcommands::

    qvf bench list
    qvf bench build {bv,dj,grover} [options] [--out FILE]
    qvf campaign run CIRCUIT [sweep options] --out FILE
    qvf report {heatmap,perqubit,delta,timeline,hist} --in FILE [options]

CIRCUIT is either a benchmark name (bv, dj, grover, built with defaults)
or a path to a file in the supported subset.  Relative output paths are
resolved against $QVF_OUT_DIR when it is set.

Exit codes: 0 success, 2 usage error, 3 input parse error (circuit file,
record file, noise config), 4 simulation failure, 5 I/O failure.
"""

import argparse
import math
import os
import sys
from importlib import resources

from . import benchmarks, metrics, render
from .injector import CampaignConfig, CampaignError, run_campaign
from .noise import NoiseConfigError, load_noise_config, load_noise_file
from .qasm import QasmError, emit_qasm, parse_qasm
from .records import RecordFileError, read_records_file, write_records
from .simulator import SimulationError, run_exact

EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_SIMULATION = 4
EXIT_IO = 5

#: derived correct states keep every outcome within this of the peak
DERIVE_TOL = 1e-9


class _UsageError(Exception):
    pass


def _resolve_out(path: str) -> str:
    base = os.environ.get("QVF_OUT_DIR")
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _write_text(path: str, text: str):
    if path == "-":
        sys.stdout.write(text)
        return
    path = _resolve_out(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    print(f"wrote {path}")


def _write_bytes(path: str, blob: bytes):
    if path == "-":
        sys.stdout.buffer.write(blob)
        return
    path = _resolve_out(path)
    with open(path, "wb") as fh:
        fh.write(blob)
    print(f"wrote {path}")


def _load_circuit(ref: str):
    if ref in benchmarks.DEFAULTS:
        return benchmarks.DEFAULTS[ref]()
    with open(ref, "r", encoding="utf-8") as fh:
        return parse_qasm(fh.read())


def _load_noise(ref):
    if ref is None:
        return None
    if ref == "representative":
        text = (
            resources.files("qvf") / "data" / "representative_noise.ini"
        ).read_text(encoding="utf-8")
        return load_noise_config(text)
    return load_noise_file(ref)


def _derived_correct(circuit):
    """Argmax set of the noiseless exact distribution."""
    dist = run_exact(circuit)
    peak = max(dist.entries.values())
    return frozenset(
        s for s, p in dist.entries.items() if p >= peak - DERIVE_TOL
    )


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------


def _cmd_bench_list(args):
    print("bv      hidden-bitmask search, 3-bit secret (default 011)")
    print("dj      constant-vs-balanced oracle test (default balanced, mask 111)")
    print("grover  two-qubit amplitude search (default marked 11)")
    return 0


def _cmd_bench_build(args):
    if args.kind == "bv":
        circuit = benchmarks.build_bernstein_vazirani(args.secret)
    elif args.kind == "dj":
        circuit = benchmarks.build_deutsch_jozsa(args.oracle, args.mask, args.bit)
    else:
        circuit = benchmarks.build_grover(args.marked, args.iterations)
    _write_text(args.out, emit_qasm(circuit))
    return 0


# ---------------------------------------------------------------------------
# campaign
# ---------------------------------------------------------------------------


def _cmd_campaign_run(args):
    circuit = _load_circuit(args.circuit)
    if args.correct:
        states = [s for chunk in args.correct for s in chunk.replace(",", " ").split()]
        circuit = circuit.with_metadata(correct_states=states)
    elif circuit.correct_states is None:
        derived = _derived_correct(circuit)
        print(
            f"note: no correct states given; derived {sorted(derived)} "
            "from the noiseless output",
            file=sys.stderr,
        )
        circuit = circuit.with_metadata(correct_states=derived)
    if args.circuit_id:
        circuit = circuit.with_metadata(name=args.circuit_id)

    config = CampaignConfig(
        grid_step=args.grid_step,
        shots=args.shots,
        mode=args.mode,
        noise=_load_noise(args.noise),
        seed=args.seed,
        sites=tuple(args.sites) if args.sites else None,
        jobs=args.jobs if args.jobs else (os.cpu_count() or 1),
    )

    qvfs = []
    improved = 0
    baseline = None

    def _stream():
        nonlocal improved, baseline
        for record in run_campaign(circuit, config):
            if record.site_index < 0:
                baseline = record
            else:
                qvfs.append(record.qvf)
                improved += record.improved
            yield record

    out_path = _resolve_out(args.out)
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        write_records(fh, _stream())

    n = len(qvfs)
    mean = sum(qvfs) / n if n else 0.0
    var = sum((v - mean) ** 2 for v in qvfs) / n if n else 0.0
    print(f"wrote {out_path}")
    print(f"fault records: {n} (+1 baseline), mode {config.mode}")
    print(f"baseline qvf: {baseline.qvf:.6f}")
    print(f"mean qvf: {mean:.6f}  stddev: {math.sqrt(var):.6f}")
    print(f"improved faults: {improved} ({100.0 * improved / n if n else 0.0:.2f}%)")
    return 0


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def _grid_output(args, grid, out_path):
    thresholds = (args.green_below, args.red_above)
    if args.format == "svg":
        _write_text(out_path, render.render_heatmap_svg(
            grid, overlay=args.overlay, thresholds=thresholds, cell=args.cell))
    elif args.format == "ppm":
        _write_bytes(out_path, render.render_grid_ppm(
            grid, thresholds=thresholds, scale=args.cell))
    else:
        _write_text(out_path, render.grid_csv(grid))


def _suffixed(path: str, tag: str) -> str:
    stem, ext = os.path.splitext(path)
    return f"{stem}_{tag}{ext}"


def _cmd_report(args):
    records = read_records_file(args.infile)
    if args.which == "heatmap":
        grid = metrics.aggregate_heatmap(records, "circuit")
        _grid_output(args, grid, args.out)
    elif args.which == "perqubit":
        grids = metrics.aggregate_heatmap(records, "qubit")
        if args.qubit is not None:
            if args.qubit not in grids:
                raise _UsageError(f"no records for qubit {args.qubit}")
            _grid_output(args, grids[args.qubit], args.out)
        else:
            for qubit, grid in sorted(grids.items()):
                _grid_output(args, grid, _suffixed(args.out, f"q{qubit}"))
    elif args.which == "delta":
        if args.in_b:
            if args.qubit_a is not None or args.qubit_b is not None:
                raise _UsageError("--in-b and --qubit-a/--qubit-b are exclusive")
            grid_a = metrics.aggregate_heatmap(records, "circuit")
            grid_b = metrics.aggregate_heatmap(read_records_file(args.in_b), "circuit")
        else:
            if args.qubit_a is None or args.qubit_b is None:
                raise _UsageError("delta needs --in-b FILE or --qubit-a N --qubit-b M")
            grids = metrics.aggregate_heatmap(records, "qubit")
            for q in (args.qubit_a, args.qubit_b):
                if q not in grids:
                    raise _UsageError(f"no records for qubit {q}")
            grid_a, grid_b = grids[args.qubit_a], grids[args.qubit_b]
        delta = metrics.delta_qvf(grid_a, grid_b)
        if args.format == "svg":
            _write_text(args.out, render.render_delta_svg(delta, cell=args.cell))
        elif args.format == "ppm":
            _write_bytes(args.out, render.render_grid_ppm(
                delta, scale=args.cell, diverging=True))
        else:
            _write_text(args.out, render.grid_csv(delta))
    elif args.which == "timeline":
        series = metrics.timeline(records, args.theta, args.phi)
        title = f"QVF by gate index at theta={args.theta:g} phi={args.phi:g}"
        if args.format == "svg":
            _write_text(args.out, render.render_timeline_svg(series, title))
        else:
            _write_text(args.out, render.timeline_csv(series))
    else:  # hist
        stats = metrics.histogram_stats(records, bins=args.bins)
        print(f"mean qvf: {stats.mean:.6f}  stddev: {stats.stddev:.6f}")
        if args.format == "svg":
            _write_text(args.out, render.render_hist_svg(stats, "QVF distribution"))
        else:
            _write_text(args.out, render.hist_csv(stats))
    return 0


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------


def _add_grid_style(p, formats=("svg", "ppm", "csv")):
    p.add_argument("--format", choices=formats, default="svg")
    p.add_argument("--out", required=True, help="output path ('-' for stdout)")
    p.add_argument("--green-below", type=float, default=0.45,
                   help="lower QVF threshold for the green band")
    p.add_argument("--red-above", type=float, default=0.55,
                   help="upper QVF threshold for the red band")
    p.add_argument("--cell", type=int, default=24,
                   help="cell size in px (svg) / px per cell (ppm)")
    p.add_argument("--overlay", action="store_true",
                   help="mark fault angles matching common gates (X,Y,Z,S,T)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qvf",
        description="Fault-injection campaigns and vulnerability reports "
                    "for small quantum circuits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    bench = sub.add_parser("bench", help="benchmark circuits")
    bench_sub = bench.add_subparsers(dest="bench_command", required=True)
    bench_sub.add_parser("list", help="list available benchmarks")
    build = bench_sub.add_parser("build", help="write a benchmark circuit file")
    build.add_argument("kind", choices=sorted(benchmarks.DEFAULTS))
    build.add_argument("--secret", default="011", help="bv: 3-bit secret")
    build.add_argument("--oracle", default="balanced",
                       choices=("balanced", "constant"), help="dj oracle kind")
    build.add_argument("--mask", default="111", help="dj balanced mask")
    build.add_argument("--bit", type=int, default=0, help="dj constant output bit")
    build.add_argument("--marked", default="11", help="grover marked state")
    build.add_argument("--iterations", type=int, default=1)
    build.add_argument("--out", default="-", help="output path ('-' for stdout)")

    campaign = sub.add_parser("campaign", help="run fault-injection sweeps")
    campaign_sub = campaign.add_subparsers(dest="campaign_command", required=True)
    run = campaign_sub.add_parser("run", help="sweep every site against the grid")
    run.add_argument("circuit", help="benchmark name (bv/dj/grover) or circuit file")
    run.add_argument("--grid-step", type=int, default=15, help="degrees per step")
    run.add_argument("--shots", type=int, default=1024)
    run.add_argument("--mode", choices=("exact", "sampled"), default="exact")
    run.add_argument("--noise", default=None,
                     help="noise config path, or 'representative'")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--jobs", type=int, default=0,
                     help="worker processes (default: all cores)")
    run.add_argument("--sites", type=int, nargs="+", default=None,
                     help="restrict to these site indices")
    run.add_argument("--correct", nargs="+", default=None,
                     help="override correct output states")
    run.add_argument("--circuit-id", default=None)
    run.add_argument("--out", required=True, help="record CSV path")

    report = sub.add_parser("report", help="render records")
    report_sub = report.add_subparsers(dest="which", required=True)

    heatmap = report_sub.add_parser("heatmap", help="whole-circuit mean-QVF map")
    perqubit = report_sub.add_parser("perqubit", help="per-qubit mean-QVF maps")
    perqubit.add_argument("--qubit", type=int, default=None,
                          help="render only this qubit")
    delta = report_sub.add_parser("delta", help="difference of two mean-QVF maps")
    delta.add_argument("--in-b", dest="in_b", default=None,
                       help="second record file (whole-circuit delta)")
    delta.add_argument("--qubit-a", type=int, default=None)
    delta.add_argument("--qubit-b", type=int, default=None)
    timeline = report_sub.add_parser("timeline", help="QVF by gate index")
    timeline.add_argument("--theta", type=float, required=True, help="degrees")
    timeline.add_argument("--phi", type=float, required=True, help="degrees")
    timeline.add_argument("--format", choices=("svg", "csv"), default="svg")
    timeline.add_argument("--out", required=True)
    hist = report_sub.add_parser("hist", help="QVF histogram and moments")
    hist.add_argument("--bins", type=int, default=50)
    hist.add_argument("--format", choices=("svg", "csv"), default="svg")
    hist.add_argument("--out", required=True)
    for p in (heatmap, perqubit):
        _add_grid_style(p)
    _add_grid_style(delta)
    for p in (heatmap, perqubit, delta, timeline, hist):
        p.add_argument("--in", dest="infile", required=True, help="record CSV")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "bench":
            if args.bench_command == "list":
                return _cmd_bench_list(args)
            return _cmd_bench_build(args)
        if args.command == "campaign":
            return _cmd_campaign_run(args)
        return _cmd_report(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (QasmError, NoiseConfigError, RecordFileError, metrics.MetricsError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (SimulationError, CampaignError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIMULATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
