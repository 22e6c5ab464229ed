"""
Command line entry point: ``largecover analyze | realize | table``.

Exit codes: 0 success, 1 when any record failed to parse or analyse,
2 for usage errors.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .cover import AnalysisError, Presentation, normalize
from .diagram import realize
from .mlift import Config, MliftReport, analyze_safely
from .words import CyclicWord, WordError, parse, to_string

log = logging.getLogger("largecover")

CSV_COLUMNS = ("name", "k", "m", "n_threshold", "status")


class RecordError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Record:
    line: int
    presentation: Presentation


def _presentation(name, relator, meridian=None, longitude=None) -> Presentation:
    rel = parse(relator, 2)
    if not rel:
        raise WordError("relator reduces to the trivial word")
    return Presentation(
        name,
        CyclicWord(rel),
        parse(meridian, 2) if meridian else None,
        parse(longitude, 2) if longitude else None,
    )


def parse_records(text: str) -> tuple[list[Record], list[RecordError]]:
    """Semicolon records, or a JSON list of objects (optionally under ``records``)."""
    stripped = text.lstrip()
    if stripped.startswith(("[", "{")):
        return _parse_json(stripped)
    records, errors = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        fields = [f.strip() for f in body.split(";")]
        while fields and fields[-1] == "":
            fields.pop()
        if len(fields) < 2 or len(fields) > 4:
            errors.append(RecordError(lineno, "expected 'name; relator; [meridian]; [longitude]'"))
            continue
        try:
            records.append(Record(lineno, _presentation(*fields)))
        except (WordError, ValueError) as e:
            errors.append(RecordError(lineno, str(e)))
    return _dedupe(records, errors)


def _parse_json(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        return [], [RecordError(e.lineno, f"invalid JSON: {e.msg}")]
    if isinstance(data, dict):
        data = data.get("records", [])
    records, errors = [], []
    for i, item in enumerate(data, 1):
        try:
            records.append(
                Record(
                    i,
                    _presentation(
                        item["name"], item["relator"], item.get("meridian"), item.get("longitude")
                    ),
                )
            )
        except (KeyError, TypeError) as e:
            errors.append(RecordError(i, f"missing field {e}"))
        except (WordError, ValueError) as e:
            errors.append(RecordError(i, str(e)))
    return _dedupe(records, errors)


def _dedupe(records, errors):
    seen = {}
    kept = []
    for r in records:
        name = r.presentation.name
        if name in seen:
            errors.append(RecordError(r.line, f"duplicate name {name!r} (first on line {seen[name]})"))
            continue
        seen[name] = r.line
        kept.append(r)
    return kept, errors


# -- caching ---------------------------------------------------------------------

def cache_key(p: Presentation, cfg: Config) -> str:
    try:
        q, _ = normalize(p)
    except AnalysisError:
        q = p

    def txt(w):
        return "" if w is None else to_string(w, 2)

    payload = json.dumps(
        {
            "name": p.name,
            "relator": txt(q.relator),
            "raw": txt(p.relator),
            "meridian": txt(q.meridian),
            "longitude": txt(q.longitude),
            "max_m": cfg.max_m,
            "cond4_bound": cfg.cond4_bound,
            "version": __version__,
        },
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode()).hexdigest()


def _cached_analyze(args) -> dict:
    p, cfg, cache_dir = args
    path = None
    if cache_dir:
        path = Path(cache_dir) / f"{cache_key(p, cfg)}.json"
        if path.exists():
            return json.loads(path.read_text())
    try:
        result = analyze_safely(p, cfg).to_dict()
    except Exception as e:  # keep other records alive
        log.exception("analysis of %s crashed", p.name)
        result = MliftReport(p.name, status="error", message=f"{type(e).__name__}: {e}").to_dict()
    if path is not None and result["status"] != "error":
        tmp = path.with_suffix(f".{os.getpid()}.tmp")
        tmp.write_text(json.dumps(result, sort_keys=True))
        tmp.replace(path)
    return result


def analyze_records(records: list[Record], cfg: Config, cache_dir: str | None = None) -> list[dict]:
    if cache_dir:
        Path(cache_dir).mkdir(parents=True, exist_ok=True)
    jobs = [(r.presentation, cfg, cache_dir) for r in records]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_cached_analyze, jobs))
    else:
        results = [_cached_analyze(j) for j in jobs]
    return sorted(results, key=lambda r: r["name"])


# -- output ------------------------------------------------------------------------

def _blank(v):
    return "" if v is None else v


def render(reports: list[dict], fmt: str) -> str:
    reports = sorted(reports, key=lambda r: r["name"])
    if fmt == "json":
        return json.dumps(reports, indent=2, sort_keys=True) + "\n"
    if not reports:
        return ""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        writer.writerow(
            [r["name"], _blank(r.get("k")), _blank(r.get("m_found")), _blank(r.get("n_threshold")), r["status"]]
        )
    return buf.getvalue()


def cmd_analyze(text: str, cfg: Config, fmt: str = "csv", cache_dir: str | None = None):
    """Returns ``(output text, error messages)``."""
    records, errors = parse_records(text)
    reports = analyze_records(records, cfg, cache_dir)
    messages = [str(e) for e in sorted(errors, key=lambda e: e.line)]
    for r in reports:
        if r["status"] == "error":
            messages.append(f"{r['name']}: {r.get('message')}")
    return render(reports, fmt), messages


def cmd_realize(relator: str) -> tuple[str | None, str | None]:
    w = CyclicWord(parse(relator, 2))
    d = realize(w)
    if not d:
        return None, f"{to_string(w, 2)} is not realizable ({d.nodes_searched} search nodes)"
    return d.serialize(), None


def cmd_table(text: str, fmt: str = "csv") -> str:
    data = json.loads(text) if text.strip() else []
    if isinstance(data, dict):
        data = [data]
    return render(data, fmt)


# -- argparse ----------------------------------------------------------------------

def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="largecover", description=__doc__.strip().splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="run the m-lift search over a presentation file")
    an.add_argument("input", help="record file, or - for stdin")
    an.add_argument("--max-m", type=int, default=8)
    an.add_argument("--cond4-bound", type=int, default=4)
    an.add_argument("--jobs", type=int, default=1)
    an.add_argument("--format", choices=("csv", "json"), default="csv")
    an.add_argument("--cache-dir")

    rz = sub.add_parser("realize", help="print a planar diagram for a relator")
    rz.add_argument("relator")

    tb = sub.add_parser("table", help="render JSON analysis output as a table")
    tb.add_argument("input", help="JSON from 'analyze --format json', or - for stdin")
    tb.add_argument("--format", choices=("csv", "json"), default="csv")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.command == "analyze":
        try:
            cfg = Config(args.max_m, args.cond4_bound, args.jobs)
        except ValueError as e:
            ap.error(str(e))
        try:
            text = _read(args.input)
        except OSError as e:
            ap.error(str(e))
        out, messages = cmd_analyze(text, cfg, args.format, args.cache_dir)
        sys.stdout.write(out)
        for m in messages:
            print(m, file=sys.stderr)
        return 1 if messages else 0
    if args.command == "realize":
        try:
            out, err = cmd_realize(args.relator)
        except WordError as e:
            print(f"parse error: {e}", file=sys.stderr)
            return 2
        if err:
            print(err, file=sys.stderr)
            return 1
        sys.stdout.write(out if out.endswith("\n") else out + "\n")
        return 0
    try:
        text = _read(args.input)
        sys.stdout.write(cmd_table(text, args.format))
    except (OSError, json.JSONDecodeError, KeyError) as e:
        print(f"cannot read results: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
