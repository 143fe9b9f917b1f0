"""Command-line interface: ``plmorse analyze | gen | cover | reeb``."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .cover import orientation_double_cover
from .errors import PLMorseError, TheoremViolation
from .field import validate_field
from .fixtures import FIXTURE_NAMES, fixture, random_moebius
from .meshfile import format_mesh, read_mesh
from .moebius import classify_edges
from .reeb import build_reeb, to_dot
from .report import EXIT_INVALID, EXIT_OK, EXIT_THEOREM, analyze_bytes
from .surf import PieceTag, classify_piece


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _fail(exc: Exception) -> int:
    print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_THEOREM if isinstance(exc, TheoremViolation) else EXIT_INVALID


def _analyze_file(path: str) -> tuple[str, dict, int]:
    a = analyze_bytes(Path(path).read_bytes())
    return path, a.report, a.exit_code


def cmd_analyze(args) -> int:
    if args.dir:
        files = sorted(str(p) for p in Path(args.dir).glob("*.plm"))
        if not files:
            print(f"error: no .plm files in {args.dir}", file=sys.stderr)
            return EXIT_INVALID
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_analyze_file, files))
        code = max(c for _, _, c in results)
        if args.out:
            outdir = Path(args.out)
            outdir.mkdir(parents=True, exist_ok=True)
            for path, report, _ in results:
                (outdir / (Path(path).stem + ".json")).write_text(_dump(report, args.json_compact))
        else:
            sys.stdout.write(_dump({Path(p).name: r for p, r, _ in results}, args.json_compact))
        return code
    if args.path is None:
        print("error: give a PATH or --dir", file=sys.stderr)
        return EXIT_INVALID
    try:
        data = Path(args.path).read_bytes()
    except OSError as exc:
        return _fail(exc)
    a = analyze_bytes(data)
    _emit(a.to_json(args.json_compact), args.out)
    for err in a.report["errors"]:
        print(f"{err['stage']}: {err['type']}: {err['message']}", file=sys.stderr)
    return a.exit_code


def _dump(obj, compact: bool) -> str:
    if compact:
        return json.dumps(obj, ensure_ascii=False, separators=(",", ":")) + "\n"
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


def cmd_gen(args) -> int:
    try:
        if args.random:
            if args.saddles is None or args.seed is None:
                print("error: --random needs --saddles and --seed", file=sys.stderr)
                return EXIT_INVALID
            fx = random_moebius(args.saddles, args.seed)
        elif args.name:
            fx = fixture(args.name)
        else:
            print(f"error: give a fixture name ({', '.join(FIXTURE_NAMES)}) or --random", file=sys.stderr)
            return EXIT_INVALID
    except PLMorseError as exc:
        return _fail(exc)
    _emit(format_mesh(fx.mesh, fx.values), args.out)
    return EXIT_OK


def cmd_cover(args) -> int:
    try:
        mf = read_mesh(args.path)
        c = orientation_double_cover(mf.mesh)
    except (PLMorseError, OSError) as exc:
        return _fail(exc)
    text = format_mesh(c.total, c.lift_values(mf.values))
    _emit(text, args.out)
    sidecar = Path(args.map) if args.map else (Path(args.out + ".map") if args.out else None)
    if sidecar is not None:
        sidecar.write_text("\n".join(c.sidecar_lines()) + "\n")
    summary = [classify_piece(c.total, k).to_json() for k in range(c.total.n_components)]
    print(json.dumps({"components": summary}), file=sys.stderr)
    return EXIT_OK


def cmd_reeb(args) -> int:
    try:
        mf = read_mesh(args.path)
        f = validate_field(mf.mesh, mf.values)
        g = build_reeb(f)
        labels = None
        m = f.mesh
        if m.n_components == 1 and classify_piece(m, 0).tag is PieceTag.MOEBIUS:
            labels = {e: t.value for e, t in classify_edges(f, g).items()}
    except (PLMorseError, OSError) as exc:
        return _fail(exc)
    if args.dot:
        _emit(to_dot(g, labels), args.out)
    else:
        body = {**g.summary(), "v0": g.v0, "edges": [
            {"edge": e.id, "lower": e.lower, "upper": e.upper,
             **({"type": labels[e.id]} if labels else {})}
            for e in g.edges
        ]}
        _emit(_dump(body, False), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="plmorse", description="PL Morse fields on triangulated surfaces")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="run the full pipeline and print a JSON report")
    a.add_argument("path", nargs="?")
    a.add_argument("--dir", help="analyze every *.plm file in a directory, in parallel")
    a.add_argument("--jobs", type=int, default=None, help="worker processes for --dir")
    a.add_argument("--out", help="output file (a directory with --dir)")
    a.add_argument("--json-compact", action="store_true")
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("gen", help="write a fixture or a random instance")
    g.add_argument("name", nargs="?", help=", ".join(FIXTURE_NAMES))
    g.add_argument("--random", action="store_true")
    g.add_argument("--saddles", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("cover", help="orientation double cover plus a vertex map sidecar")
    c.add_argument("path")
    c.add_argument("--out")
    c.add_argument("--map", help="sidecar path (default: OUT.map when --out is given)")
    c.set_defaults(func=cmd_cover)

    r = sub.add_parser("reeb", help="Reeb graph as DOT or JSON")
    r.add_argument("path")
    r.add_argument("--dot", action="store_true")
    r.add_argument("--out")
    r.set_defaults(func=cmd_reeb)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
