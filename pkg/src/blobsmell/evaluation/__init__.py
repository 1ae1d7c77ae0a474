"""Scoring against ground truth, code metrics, and synthetic corpora."""
from __future__ import annotations

from typing import Iterable, Optional

from ..blobs import DEFAULT_THRESHOLD, BlobDiagnosis
from ..commands import Command
from ..listeners import ListenerImpl
from ..project import Project
from ..refactor import analyze
from .fixtures import Corpus, MixEntry, SpecError, all_mixes, generate_fixtures
from .metrics import MetricsDelta, cyclomatic_complexity, duplicated_lines, loc, metrics_delta
from .scoring import (SCHEMA_VERSION, CorpusMismatch, EvalReport, Score, score_blobs,
                      score_commands, scores_from_counts)
from .truth import (CommandKey, ExpectedListener, GroundTruth, ListenerKey, TruthFormatError,
                    load_truth, parse_truth)


def command_key(command: Command) -> CommandKey:
    return (command.listener.file.path, command.handler_line,
            "*" if command.is_whole_body else command.line)


def listener_key(listener: ListenerImpl) -> ListenerKey:
    return (listener.file.path, listener.line, listener.spec.simple_name)


def evaluate(diagnoses: Iterable[BlobDiagnosis], truth: GroundTruth,
             files: Optional[Iterable[str]] = None, threshold: int = DEFAULT_THRESHOLD) -> EvalReport:
    """Command and blob scores of detection results in one report."""
    diagnoses = list(diagnoses)
    files = None if files is None else list(files)
    cmds = [command_key(c) for d in diagnoses for c in d.commands]
    blobs = [listener_key(d.listener) for d in diagnoses if d.cmd >= threshold]
    return score_commands(cmds, truth, files).merged(score_blobs(blobs, truth, threshold, files))


def evaluate_project(project: Project, truth: GroundTruth, threshold: int = DEFAULT_THRESHOLD,
                     dispatch_depth: int = 3) -> EvalReport:
    _, results = analyze(project, threshold, dispatch_depth)
    return evaluate((d for d, _ in results), truth, [f.path for f in project.files], threshold)


__all__ = [
    "SCHEMA_VERSION", "CommandKey", "Corpus", "CorpusMismatch", "EvalReport", "ExpectedListener",
    "GroundTruth", "ListenerKey", "MetricsDelta", "MixEntry", "Score", "SpecError", "TruthFormatError",
    "all_mixes", "command_key", "cyclomatic_complexity", "duplicated_lines", "evaluate",
    "evaluate_project", "generate_fixtures", "listener_key", "load_truth", "loc", "metrics_delta",
    "parse_truth", "score_blobs", "score_commands", "scores_from_counts",
]
