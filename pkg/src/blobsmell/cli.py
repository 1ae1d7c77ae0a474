"""Command-line entry point: ``blobsmell detect|refactor|eval|fixtures``.

Exit codes: 0 on success (``detect``: no blob found), 1 when ``detect``
finds blobs, 2 on errors (no sources, parse or catalog failures, missing
truth, conflicting edits).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .blobs import DEFAULT_THRESHOLD, BlobDiagnosis
from .catalog import CatalogError, default_catalog, load_catalog
from .commands import Command
from .evaluation import (SCHEMA_VERSION, CorpusMismatch, MixEntry, SpecError, TruthFormatError,
                         all_mixes, evaluate, generate_fixtures, load_truth)
from .frontend import LexError, OverlapError, ParseError, apply_edits, read_corpus, unified_diff
from .project import Project
from .refactor import RefactorOutcome, Style, analyze, refactor_project

DEFAULT_DISPATCH_DEPTH = 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    root: Path
    threshold: int = DEFAULT_THRESHOLD
    style: Style = Style.LAMBDA
    dispatch_depth: int = DEFAULT_DISPATCH_DEPTH
    catalog: Optional[Path] = None
    output_format: str = "text"
    write: bool = False
    confirm_attribute_copy: bool = False
    exclude: list[str] = field(default_factory=list)
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.threshold < 2:
            raise UsageError("threshold must be at least 2")
        if self.dispatch_depth < 0:
            raise UsageError("dispatch depth must be non-negative")
        if self.jobs < 1:
            raise UsageError("jobs must be at least 1")


def load_project(config: RunConfig) -> Project:
    if not config.root.is_dir():
        raise UsageError(f"{config.root}: not a directory")
    corpus = read_corpus(config.root, config.exclude)
    if not corpus:
        raise UsageError(f"{config.root}: no sources")
    catalog = load_catalog(config.catalog) if config.catalog else default_catalog()
    return Project.from_corpus(corpus, catalog, jobs=config.jobs)


# -- report payloads -------------------------------------------------------------

def _command_dict(cmd: Command) -> dict:
    ident = cmd.identification
    out = {
        "handler": cmd.handler.name,
        "handler_line": cmd.handler_line,
        "line": cmd.line,
        "whole_body": cmd.is_whole_body,
        "variant": ident.variant.value if ident else None,
        "main_statements": len(cmd.main),
    }
    if ident is not None:
        out["span"] = [ident.anchor.start, ident.anchor.end]
    if cmd.dispatch_chain:
        out["dispatch"] = [d.method.name for d in cmd.dispatch_chain]
    return out


def _diagnosis_dict(diag: BlobDiagnosis) -> dict:
    listener = diag.listener
    return {
        "path": listener.file.path,
        "line": listener.line,
        "span": [listener.node.start, listener.node.end],
        "interface": listener.spec.simple_name,
        "kind": listener.kind.value,
        "cmd": diag.cmd,
        "is_blob": diag.is_blob,
        "blob_type": diag.blob_type.value,
        "commands": [_command_dict(c) for c in diag.commands],
        "warnings": list(listener.warnings),
    }


def detect_report(diagnoses: Sequence[BlobDiagnosis], config: RunConfig, n_files: int) -> dict:
    listeners = [_diagnosis_dict(d) for d in diagnoses]
    listeners.sort(key=lambda d: (d["path"], d["span"][0], d["interface"]))
    return {
        "schema_version": SCHEMA_VERSION,
        "threshold": config.threshold,
        "summary": {
            "files": n_files,
            "listeners": len(listeners),
            "commands": sum(d["cmd"] for d in listeners),
            "blobs": sum(1 for d in listeners if d["is_blob"]),
        },
        "listeners": listeners,
    }


def _detect_text(report: dict) -> str:
    lines = []
    for d in report["listeners"]:
        flag = f"BLOB {d['blob_type']}" if d["is_blob"] else "ok"
        lines.append(f"{d['path']}:{d['line']}: {d['kind']} {d['interface']} cmd={d['cmd']} {flag}")
        for w in d["warnings"]:
            lines.append(f"    warning: {w}")
    s = report["summary"]
    lines.append(f"{s['files']} files, {s['listeners']} listeners, {s['commands']} commands, "
                 f"{s['blobs']} blobs (threshold {report['threshold']})")
    return "\n".join(lines) + "\n"


def _outcome_dict(outcome: RefactorOutcome) -> dict:
    listener = outcome.blob.listener
    out = {
        "path": listener.file.path,
        "line": listener.line,
        "interface": listener.spec.simple_name,
        "cmd": outcome.blob.cmd,
        "refactored": outcome.refactored,
    }
    if not outcome.refactored:
        out["reason"] = outcome.reason.value
        out["diagnostic"] = outcome.diagnostic
        out["spans"] = [list(s) for s in outcome.spans]
        out["needs_confirmation"] = outcome.needs_confirmation
    return out


# -- subcommands ------------------------------------------------------------------

def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def cmd_detect(config: RunConfig, out: Optional[Path] = None) -> int:
    project = load_project(config)
    _, results = analyze(project, config.threshold, config.dispatch_depth)
    report = detect_report([d for d, _ in results], config, len(project.files))
    if config.output_format == "json":
        _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", out)
    else:
        _emit(_detect_text(report), out)
    return 1 if report["summary"]["blobs"] else 0


def cmd_refactor(config: RunConfig, out: Optional[Path] = None) -> int:
    project = load_project(config)
    report = refactor_project(project, config.threshold, config.style, config.dispatch_depth,
                              config.confirm_attribute_copy)
    texts = {f.path: f.text for f in project.files}
    after = {path: apply_edits(texts[path], edits) for path, edits in report.edits.items()}
    diffs = {path: unified_diff(path, texts[path], text) for path, text in after.items()
             if text != texts[path]}
    outcomes = sorted((_outcome_dict(o) for o in report.outcomes), key=lambda d: (d["path"], d["line"]))
    if config.output_format == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "threshold": config.threshold,
            "style": config.style.value,
            "successes": report.successes,
            "failures": report.failures,
            "outcomes": outcomes,
            "diffs": diffs,
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", out)
    elif config.output_format == "diff":
        _emit("".join(diffs[p] for p in sorted(diffs)), out)
    else:
        lines = []
        for o in outcomes:
            status = "refactored" if o["refactored"] else f"{o['reason']}: {o['diagnostic']}"
            lines.append(f"{o['path']}:{o['line']}: {o['interface']} cmd={o['cmd']} {status}")
        lines.append(f"successes {report.successes}, failures {report.failures}")
        _emit("\n".join(lines) + "\n", out)
    if config.write:
        for path, text in after.items():
            (config.root / path).write_text(text, encoding="utf-8")
    return 0


def cmd_eval(config: RunConfig, truth_path: Path, out: Optional[Path] = None) -> int:
    if not truth_path.is_file():
        raise UsageError(f"{truth_path}: truth file not found")
    truth = load_truth(truth_path)
    project = load_project(config)
    _, results = analyze(project, config.threshold, config.dispatch_depth)
    report = evaluate([d for d, _ in results], truth, [f.path for f in project.files],
                      config.threshold)
    _emit(report.to_json() + "\n" if config.output_format == "json" else report.to_table(), out)
    return 0


def parse_mix(items: Sequence[str]) -> list[MixEntry]:
    """``STYLE:VARIANT:N[:COUNT]`` items."""
    mix = []
    for item in items:
        parts = item.split(":")
        if len(parts) not in (3, 4):
            raise SpecError(f"bad mix entry {item!r}, expected STYLE:VARIANT:N[:COUNT]")
        try:
            numbers = [int(x) for x in parts[2:]]
        except ValueError:
            raise SpecError(f"bad mix entry {item!r}, counts must be integers") from None
        mix.append(MixEntry(parts[0], parts[1], *numbers))
    return mix


def cmd_fixtures(out_dir: Path, mix: Sequence[MixEntry], seed: int) -> int:
    corpus = generate_fixtures(mix, seed)
    for path, text in corpus.files.items():
        target = out_dir / path
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")
    corpus.truth.save(out_dir / "truth.txt")
    print(f"wrote {len(corpus.files)} files and {out_dir / 'truth.txt'}")
    return 0


# -- argument parsing -----------------------------------------------------------------

def _common(p: argparse.ArgumentParser, formats: Sequence[str], default: str) -> None:
    p.add_argument("root", type=Path, help="project directory scanned for *.java")
    p.add_argument("--threshold", type=int, default=DEFAULT_THRESHOLD,
                   help="flag listeners with at least this many commands (default 3)")
    p.add_argument("--dispatch-depth", type=int, default=DEFAULT_DISPATCH_DEPTH,
                   help="how deep to follow dispatch methods (default 3)")
    p.add_argument("--catalog", type=Path, help="catalog extension file")
    p.add_argument("--format", choices=formats, default=default)
    p.add_argument("--exclude", action="append", default=[], metavar="GLOB",
                   help="skip files matching this glob (repeatable)")
    p.add_argument("--jobs", type=int, default=1, help="parallel parse workers")
    p.add_argument("--out", type=Path, help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blobsmell", description="Detect and refactor Blob listeners.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="report listeners, commands and blobs")
    _common(p, ("json", "text"), "text")

    p = sub.add_parser("refactor", help="split refactorable blobs into per-widget listeners")
    _common(p, ("json", "text", "diff"), "diff")
    p.add_argument("--style", choices=[s.value for s in Style], default=Style.LAMBDA.value)
    p.add_argument("--write", action="store_true", help="apply the edits in place")
    p.add_argument("--confirm-attribute-copy", action="store_true",
                   help="also apply plans that copy attributes between classes")

    p = sub.add_parser("eval", help="score detection against a ground-truth file")
    _common(p, ("json", "text"), "text")
    p.add_argument("--truth", type=Path, required=True)

    p = sub.add_parser("fixtures", help="generate a synthetic corpus with ground truth")
    p.add_argument("out_dir", type=Path)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mix", action="append", default=[], metavar="STYLE:VARIANT:N[:COUNT]",
                   help="listeners to generate (repeatable); default is every combination")
    p.add_argument("--count", type=int, default=4, help="listeners per combination for the default mix")
    p.add_argument("--max-commands", type=int, default=5)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        root=args.root,
        threshold=args.threshold,
        style=Style(getattr(args, "style", Style.LAMBDA.value)),
        dispatch_depth=args.dispatch_depth,
        catalog=args.catalog,
        output_format=args.format,
        write=getattr(args, "write", False),
        confirm_attribute_copy=getattr(args, "confirm_attribute_copy", False),
        exclude=args.exclude,
        jobs=args.jobs,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "fixtures":
            mix = parse_mix(args.mix) if args.mix else all_mixes(args.max_commands, args.count)
            return cmd_fixtures(args.out_dir, mix, args.seed)
        config = _config(args)
        if args.command == "detect":
            return cmd_detect(config, args.out)
        if args.command == "refactor":
            return cmd_refactor(config, args.out)
        return cmd_eval(config, args.truth, args.out)
    except (UsageError, CatalogError, SpecError, TruthFormatError, CorpusMismatch, OverlapError) as exc:
        print(f"blobsmell: error: {exc}", file=sys.stderr)
        return 2
    except (LexError, ParseError) as exc:
        print(f"blobsmell: parse error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
