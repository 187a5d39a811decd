"""Command-line interface: classify, witness, generate, bench, verify-theorems.

Machine output is JSON lines, one object per graph and class, with the
fields input/class/verdict plus either certificate or witness (and millis
when timing is requested).  Exit codes: 0 success, 1 semantic mismatch
(e.g. a witness was requested for an accepted graph, or an equivalence
sweep found a discrepancy), 2 parse or usage error, 3 size-guard violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .chordal import EliminationResult, HoleWitness, is_chordal
from .graph import Graph, GraphInputError, parse_edgelist, parse_graph6, write_graph6
from .oracle import CorpusSpec, SizeGuardError, equivalence_harness, random_chordal
from .patterns import APairWitness, Embedding, fixture_graph, fixture_names
from .recognizers import (
    GoodCliqueCertificate,
    SmePartition,
    SplitPartition,
    find_k_good_certified,
    sme_recognize,
    split_partition,
    verify_certificate,
)

ACCEPT_TYPES = (GoodCliqueCertificate, SplitPartition, SmePartition, EliminationResult)


def payload_json(obj) -> dict:
    """Stable JSON form of any certificate or witness."""
    if isinstance(obj, EliminationResult):
        return {"type": "elimination-ordering", "ordering": list(obj.ordering)}
    if isinstance(obj, HoleWitness):
        return {"type": "hole", "cycle": list(obj.cycle)}
    if isinstance(obj, Embedding):
        return {"type": "pattern", "pattern": obj.pattern, "vertices": list(obj.mapping)}
    if isinstance(obj, APairWitness):
        return {"type": "a-pair", "h": obj.h, "x": sorted(obj.x), "y": sorted(obj.y)}
    if isinstance(obj, GoodCliqueCertificate):
        return {
            "type": "k-good-clique",
            "k": obj.k,
            "clique": sorted(obj.clique),
            "components": [sorted(c) for c in obj.decomposition.components],
        }
    if isinstance(obj, SplitPartition):
        return {
            "type": "split-partition",
            "clique": sorted(obj.clique),
            "independent": sorted(obj.independent),
        }
    if isinstance(obj, SmePartition):
        return {
            "type": "sme-partition",
            "clique": sorted(obj.clique),
            "independent": sorted(obj.independent),
            "matching": [list(edge) for edge in obj.matching],
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _classify_classes(g: Graph, k_values) -> list[tuple[str, str, dict]]:
    """(class, verdict, payload) for each requested classification."""
    out = []
    chord = is_chordal(g)
    out.append(_entry("chordal", g, chord))
    out.append(_entry("split", g, split_partition(g)))
    for k in k_values:
        out.append(_entry(f"kgs:{k}", g, find_k_good_certified(g, k)))
    out.append(_entry("sme", g, sme_recognize(g)))
    return out


def _entry(cls: str, g: Graph, result) -> tuple[str, str, dict]:
    verdict = "accept" if isinstance(result, ACCEPT_TYPES) else "reject"
    check = verify_certificate(g, result)
    if not check.ok:
        raise RuntimeError(f"internal error: unverified {cls} result: {check.reason}")
    return cls, verdict, payload_json(result)


def _read_graphs(path: str, fmt: str):
    """Yield (identifier, graph-or-error) pairs from a path or stdin."""
    source = "stdin" if path == "-" else path
    text = sys.stdin.read() if path == "-" else open(path, "r", encoding="ascii").read()
    if fmt == "edgelist":
        try:
            yield source, parse_edgelist(text)
        except GraphInputError as exc:
            yield source, exc
        return
    index = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        ident = f"stdin:{index}" if path == "-" else f"{source}:{lineno}"
        index += 1
        try:
            yield ident, parse_graph6(line)
        except GraphInputError as exc:
            yield ident, exc


def _classify_worker(job):
    ident, graph6, k_values, timings = job
    g = parse_graph6(graph6)
    start = time.perf_counter()
    entries = _classify_classes(g, k_values)
    millis = (time.perf_counter() - start) * 1000.0
    return ident, entries, millis if timings else None


def cmd_classify(args) -> int:
    k_values = _parse_int_list(args.k)
    had_errors = False
    jobs = []
    for ident, item in _read_graphs(args.input, args.format):
        if isinstance(item, Exception):
            print(f"{ident}: {item}", file=sys.stderr)
            had_errors = True
            continue
        jobs.append((ident, write_graph6(item), k_values, args.timings))
    if args.jobs > 1 and len(jobs) > 1:
        import multiprocessing

        with multiprocessing.Pool(args.jobs) as pool:
            results = pool.imap(_classify_worker, jobs)
            for result in results:
                _emit_classification(result, args.emit)
    else:
        for job in jobs:
            _emit_classification(_classify_worker(job), args.emit)
    return 2 if had_errors else 0


def _emit_classification(result, emit: str) -> None:
    ident, entries, millis = result
    for cls, verdict, payload in entries:
        if emit == "json":
            record = {"input": ident, "class": cls, "verdict": verdict}
            key = "certificate" if verdict == "accept" else "witness"
            record[key] = payload
            if millis is not None:
                record["millis"] = round(millis, 3)
            print(json.dumps(record, sort_keys=True, separators=(",", ":")))
        else:
            print(f"{ident}  {cls:<8} {verdict:<7} {_summary(payload)}")


def _summary(payload: dict) -> str:
    kind = payload["type"]
    if kind == "elimination-ordering":
        return "elimination ordering " + ",".join(map(str, payload["ordering"]))
    if kind == "hole":
        return "hole " + "-".join(map(str, payload["cycle"]))
    if kind == "pattern":
        return f"{payload['pattern']} at " + ",".join(map(str, payload["vertices"]))
    if kind == "a-pair":
        return f"parts {payload['x']} | {payload['y']}"
    if kind == "k-good-clique":
        return f"clique {payload['clique']} leaves {len(payload['components'])} small components"
    if kind == "split-partition":
        return f"clique {payload['clique']} + independent {payload['independent']}"
    if kind == "sme-partition":
        return (
            f"clique {payload['clique']} + independent {payload['independent']}"
            f" + matching {payload['matching']}"
        )
    return kind


def cmd_witness(args) -> int:
    graphs = list(_read_graphs(args.input, args.format))
    real = [(ident, g) for ident, g in graphs if not isinstance(g, Exception)]
    for ident, g in graphs:
        if isinstance(g, Exception):
            print(f"{ident}: {g}", file=sys.stderr)
            return 2
    exit_code = 0
    for ident, g in real:
        result = _recognize_class(g, args.cls)
        record = {"input": ident, "class": args.cls}
        if isinstance(result, ACCEPT_TYPES):
            record["verdict"] = "accept"
            record["certificate"] = payload_json(result)
            exit_code = 1
        else:
            record["verdict"] = "reject"
            record["witness"] = payload_json(result)
        print(json.dumps(record, sort_keys=True, separators=(",", ":")))
    return exit_code


def _recognize_class(g: Graph, cls: str):
    if cls == "split":
        return split_partition(g)
    if cls == "sme":
        return sme_recognize(g)
    if cls.startswith("kgs:"):
        return find_k_good_certified(g, int(cls.split(":", 1)[1]))
    raise SystemExit(f"unknown class {cls!r}; use split, sme, or kgs:K")


def cmd_generate(args) -> int:
    if args.fixture:
        try:
            g = fixture_graph(args.fixture)
        except KeyError as exc:
            print(exc.args[0], file=sys.stderr)
            return 2
        print(write_graph6(g))
        return 0
    if args.model == "chordal":
        g = random_chordal(args.n, density=args.density, seed=args.seed)
        print(write_graph6(g))
        return 0
    print(f"unknown model {args.model!r}; known: chordal", file=sys.stderr)
    return 2


def cmd_bench(args) -> int:
    from .bench import loglog_slope, run_bench

    sizes = _parse_int_list(args.sizes)
    rows = run_bench(sizes, seed=args.seed, k=args.k, density=args.density, jobs=args.jobs)
    print(f"{'n':>9} {'m':>9} {'cliques':>9} {'seconds':>12} {'accepted':>9}")
    for row in rows:
        print(
            f"{row.n:>9} {row.m:>9} {row.cliques:>9} {row.seconds:>12.6f} "
            f"{str(row.accepted):>9}"
        )
    if len(rows) >= 2:
        print(f"log-log slope of time against n*m: {loglog_slope(rows):.3f}")
    return 0


def cmd_verify_theorems(args) -> int:
    theorems = [t.strip().upper() for t in args.theorems.split(",") if t.strip()]
    h_values = _parse_int_list(args.h_values)
    try:
        spec = CorpusSpec(max_n=args.max_n)
    except SizeGuardError as exc:
        print(str(exc), file=sys.stderr)
        return 3
    failed = False
    for theorem in theorems:
        runs = [(theorem, h) for h in h_values] if theorem == "T3" else [(theorem, None)]
        for name, h in runs:
            report = equivalence_harness(spec, name, h=h, jobs=args.jobs)
            tag = name if h is None else f"{name}(h={h})"
            status = "ok" if report.ok else f"{len(report.discrepancies)} DISCREPANCIES"
            print(
                f"{tag:<9} graphs={report.graphs:<9} accepts={report.accepts:<9} {status}"
            )
            for item in report.discrepancies[:10]:
                print(f"  mismatch {item['graph6']}: {item['sides']}", file=sys.stderr)
            if not report.ok:
                failed = True
    return 1 if failed else 0


def _parse_int_list(text) -> list[int]:
    if isinstance(text, list):
        return [int(t) for t in text]
    return [int(t) for t in str(text).split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chordalsplit",
        description="Classify graphs into chordal/split-like families with verifiable certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify graphs and print certificates")
    p.add_argument("input", nargs="?", default="-", help="input path or - for stdin")
    p.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")
    p.add_argument("--k", default="2", help="comma-separated component bounds")
    p.add_argument("--emit", choices=("json", "text"), default="json")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timings", action="store_true", help="include per-graph millis")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("witness", help="print the rejection witness for one class")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")
    p.add_argument("--class", dest="cls", required=True, help="split, sme, or kgs:K")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("generate", help="emit fixture or random chordal graphs as graph6")
    p.add_argument("--model", default="chordal")
    p.add_argument("--fixture", help=f"one of {', '.join(fixture_names())}")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=float, default=0.1)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="time the clique scan on random chordal graphs")
    p.add_argument("--sizes", default="1000,10000,100000")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--density", type=float, default=0.1)
    p.add_argument("--jobs", type=int, default=2)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify-theorems", help="run the equivalence sweeps")
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--theorems", default="T1,T2,T3,T4")
    p.add_argument("--h-values", default="1,2,3", help="component bounds for T3")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify_theorems)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SizeGuardError as exc:
        print(str(exc), file=sys.stderr)
        return 3
    except GraphInputError as exc:
        print(str(exc), file=sys.stderr)
        return 2


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
