"""Benchmark harness: optimization and mapping tables over a QASM corpus."""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields

from ..backends import count_resources
from ..backends.resources import BoxConfig
from ..device import get_device
from ..frontend import ast, parse_file
from ..frontend.stdlib import QELIB1_GATES
from ..mapping import apply_layout, check_mapped
from ..optimize import PipelineOptions, compile_program
from ..simcheck import MAX_QUBITS, equiv, unitary
from ..transform import InlineConfig, inline

CORPUS = os.path.join(os.path.dirname(__file__), "corpus")


@dataclass
class BenchConfig:
    mode: str = "opt"  # opt | map
    passes: tuple[str, ...] = ("O2",)
    device: str = "tokyo20"
    layout: str = "bestfit"
    mapper: str = "steiner"
    layout_opt: int | None = None
    verify: bool = True
    jobs: int = 0  # 0 = one worker per CPU


@dataclass
class BenchRecord:
    name: str
    qubits: int = 0
    orig_gates: int = 0
    orig_depth: int = 0
    orig_cx: int = 0
    opt_gates: int = 0
    opt_depth: int = 0
    mapped_cx: int = 0
    time_opt: float = 0.0
    time_map: float = 0.0
    verified: str = ""  # yes | no | skipped
    status: str = "ok"


def _single_qubit_box(p: ast.Program) -> BoxConfig:
    """Every single-qubit gate and cx count as one unit; wider gates are
    unboxed, which counts over {u3, cx, h, rx, ry, rz} up to renaming."""
    table = p.gates()
    names = {n for n in QELIB1_GATES if isinstance(table.get(n), ast.GateDecl)
             and len(table[n].qparams) == 1}
    return BoxConfig(frozenset(names | {"cx"}))


def _counts(p: ast.Program) -> tuple[int, int, int]:
    r = count_resources(p, _single_qubit_box(p))
    gates = r.total - r.get("measure") - r.get("reset")
    return gates, r.depth, r.get("cx") + r.get("CX")


def _simulable(p: ast.Program, n: int) -> bool:
    return n <= MAX_QUBITS and all(
        isinstance(s, (ast.Gate, ast.Barrier)) for s in p.statements)


def run_one(path: str, cfg: BenchConfig) -> BenchRecord:
    name = os.path.splitext(os.path.basename(path))[0]
    rec = BenchRecord(name)
    try:
        src = parse_file(path)
    except OSError:
        rec.status = "skipped: missing file"
        return rec
    base = compile_program(src).program
    rec.qubits = base.num_qubits()
    rec.orig_gates, rec.orig_depth, rec.orig_cx = _counts(base)
    opts = PipelineOptions(device=cfg.device, layout=cfg.layout, mapper=cfg.mapper,
                           layout_opt=cfg.layout_opt)
    t0 = time.perf_counter()
    opt = compile_program(src, list(cfg.passes), opts).program
    rec.time_opt = time.perf_counter() - t0
    rec.opt_gates, rec.opt_depth, _ = _counts(opt)
    result = opt
    if cfg.mode == "map":
        t0 = time.perf_counter()
        res = compile_program(opt, ["map"], opts)
        rec.time_map = time.perf_counter() - t0
        d = get_device(cfg.device)
        errs = check_mapped(res.program, d)
        if errs:
            rec.status = f"mapcheck: {len(errs)} violation(s)"
        rec.mapped_cx = _counts(res.program)[2]
        if cfg.verify and _simulable(base, d.n):
            flat = inline(base, InlineConfig.full_inline())
            placed = apply_layout(flat, d, _layout_of(res, flat))
            ok = equiv(unitary(res.program), unitary(placed), perm=res.permutation)
            rec.verified = "yes" if ok else "no"
        else:
            rec.verified = "skipped"
        result = None
    if result is not None:
        if cfg.verify and _simulable(base, rec.qubits):
            ok = equiv(unitary(inline(result, InlineConfig.full_inline())),
                       unitary(inline(base, InlineConfig.full_inline())))
            rec.verified = "yes" if ok else "no"
        else:
            rec.verified = "skipped"
    if rec.verified == "no":
        rec.status = "not equivalent"
    return rec


def _layout_of(res, p: ast.Program):
    from ..mapping import Layout

    table = {}
    for key, a in res.layout.items():
        reg, idx = key[:-1].split("[")
        table[(reg, int(idx))] = a
    return Layout({q: table[q] for q in p.qubits()})


def _pct(a: float, b: float) -> float:
    return 100.0 * (a - b) / a if a else 0.0


def average_row(records: list[BenchRecord], mode: str) -> dict:
    ok = [r for r in records if r.status == "ok"]
    if not ok:
        return {}
    if mode == "map":
        vals = [-_pct(r.orig_cx, r.mapped_cx) for r in ok]
        return {"name": "average increase (%)", "mapped_cx": round(sum(vals) / len(vals), 1)}
    vals = [_pct(r.orig_gates, r.opt_gates) for r in ok]
    return {"name": "average reduction (%)", "opt_gates": round(sum(vals) / len(vals), 1)}


def run_suite(corpus: str, cfg: BenchConfig | None = None, names=None) -> list[BenchRecord]:
    """One record per corpus file, ordered by name."""
    cfg = cfg or BenchConfig()
    files = sorted(f for f in os.listdir(corpus) if f.endswith(".qasm"))
    if names:
        want = set(names)
        paths = [os.path.join(corpus, f"{n}.qasm") for n in sorted(want)]
    else:
        paths = [os.path.join(corpus, f) for f in files]
    jobs = cfg.jobs or os.cpu_count() or 1
    if jobs == 1 or len(paths) <= 1:
        out = [run_one(p, cfg) for p in paths]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            out = list(ex.map(run_one, paths, [cfg] * len(paths)))
    return sorted(out, key=lambda r: r.name)


COLUMNS = [f.name for f in fields(BenchRecord)]


def to_csv(records: list[BenchRecord], mode: str) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in records:
        row = asdict(r)
        row["time_opt"] = f"{r.time_opt:.4f}"
        row["time_map"] = f"{r.time_map:.4f}"
        w.writerow(row)
    avg = average_row(records, mode)
    if avg:
        w.writerow(avg)
    return buf.getvalue()


def to_table(records: list[BenchRecord], mode: str) -> str:
    if mode == "map":
        head = ("benchmark", "n", "orig cx", "mapped cx", "time (s)", "verified", "status")
        rows = [(r.name, r.qubits, r.orig_cx, r.mapped_cx, f"{r.time_opt + r.time_map:.3f}",
                 r.verified, r.status) for r in records]
    else:
        head = ("benchmark", "n", "gates", "depth", "opt gates", "opt depth", "time (s)",
                "verified", "status")
        rows = [(r.name, r.qubits, r.orig_gates, r.orig_depth, r.opt_gates, r.opt_depth,
                 f"{r.time_opt:.3f}", r.verified, r.status) for r in records]
    avg = average_row(records, mode)
    if avg:
        key = "mapped_cx" if mode == "map" else "opt_gates"
        rows.append(tuple([avg["name"]] + [""] * (len(head) - 1)))
        col = 3 if mode == "map" else 4
        rows[-1] = rows[-1][:col] + (avg[key],) + rows[-1][col + 1:]
    cells = [tuple(map(str, head))] + [tuple(map(str, r)) for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(len(head))]
    lines = ["  ".join(c[i].ljust(widths[i]) for i in range(len(head))).rstrip() for c in cells]
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="qasm-bench", description="Run the benchmark tables.")
    ap.add_argument("--corpus", default=CORPUS)
    ap.add_argument("--mode", choices=["opt", "map"], default="opt")
    ap.add_argument("--device", default="tokyo20")
    ap.add_argument("--layout", default="bestfit")
    ap.add_argument("--mapper", default="steiner")
    ap.add_argument("--layout-opt", nargs="?", type=int, const=500, default=None)
    ap.add_argument("--passes", default=None,
                    help="comma-separated passes before mapping (default: O2 for opt, none for map)")
    ap.add_argument("--only", help="comma-separated benchmark names")
    ap.add_argument("--jobs", type=int, default=0)
    ap.add_argument("--no-verify", action="store_true")
    ap.add_argument("--out", help="CSV report path")
    args = ap.parse_args(argv)
    if args.passes is None:
        passes = ("O2",) if args.mode == "opt" else ()
    else:
        passes = tuple(x for x in args.passes.split(",") if x)
    cfg = BenchConfig(args.mode, passes, args.device, args.layout, args.mapper,
                      args.layout_opt, not args.no_verify, args.jobs)
    if not os.path.isdir(args.corpus):
        print(f"qasm-bench: error: no corpus directory '{args.corpus}'", file=sys.stderr)
        return 1
    names = [n for n in args.only.split(",") if n] if args.only else None
    records = run_suite(args.corpus, cfg, names)
    sys.stdout.write(to_table(records, args.mode))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(to_csv(records, args.mode))
    if not records:
        print("qasm-bench: error: empty corpus", file=sys.stderr)
        return 1
    return 0 if all(r.status == "ok" for r in records) else 1


if __name__ == "__main__":
    sys.exit(main())
