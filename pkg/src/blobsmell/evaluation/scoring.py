"""Recall and precision of command and blob detection."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .truth import CommandKey, GroundTruth, ListenerKey

SCHEMA_VERSION = 1


class CorpusMismatch(ValueError):
    pass


def scores_from_counts(ok: int, fn: int, fp: int) -> tuple[float, float]:
    """(recall, precision) in percent from correct, missed and spurious counts.

    Both are 100 when there is nothing to find and nothing was found.
    A non-empty truth with no detections gives 0 for both.
    """
    if min(ok, fn, fp) < 0:
        raise ValueError("counts must be non-negative")
    correct = ok + fn
    detected = ok + fp
    if correct == 0 and detected == 0:
        return 100.0, 100.0
    recall = 100.0 * ok / correct if correct else 100.0
    precision = 100.0 * ok / detected if detected else 0.0
    return recall, precision


@dataclass
class Score:
    ok: int
    fn: int
    fp: int
    missed: list = field(default_factory=list)
    spurious: list = field(default_factory=list)

    @property
    def recall(self) -> float:
        return scores_from_counts(self.ok, self.fn, self.fp)[0]

    @property
    def precision(self) -> float:
        return scores_from_counts(self.ok, self.fn, self.fp)[1]

    def to_dict(self) -> dict:
        return {
            "detected": self.ok, "fn": self.fn, "fp": self.fp,
            "recall": round(self.recall, 2), "precision": round(self.precision, 2),
            "missed": [list(k) for k in self.missed],
            "spurious": [list(k) for k in self.spurious],
        }


def _score(detected: Iterable, correct: Iterable) -> Score:
    d, c = set(detected), set(correct)
    key = lambda k: tuple(str(x) for x in k)
    return Score(len(d & c), len(c - d), len(d - c), sorted(c - d, key=key), sorted(d - c, key=key))


@dataclass
class EvalReport:
    rows: dict[str, Score]
    threshold: Optional[int] = None

    def _pick(self, name: str) -> Score:
        if name not in self.rows:
            raise KeyError(f"report has no {name} row")
        return self.rows[name]

    @property
    def recall_cmd(self) -> float:
        return self._pick("commands").recall

    @property
    def precision_cmd(self) -> float:
        return self._pick("commands").precision

    @property
    def recall_blob(self) -> float:
        return self._pick("blobs").recall

    @property
    def precision_blob(self) -> float:
        return self._pick("blobs").precision

    def merged(self, other: "EvalReport") -> "EvalReport":
        return EvalReport({**self.rows, **other.rows}, self.threshold or other.threshold)

    def to_dict(self) -> dict:
        out: dict = {"schema_version": SCHEMA_VERSION}
        if self.threshold is not None:
            out["threshold"] = self.threshold
        out.update({name: score.to_dict() for name, score in sorted(self.rows.items())})
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_table(self) -> str:
        header = ("", "Detected", "FN", "FP", "Recall (%)", "Precision (%)")
        body = [(name, str(s.ok), str(s.fn), str(s.fp), f"{s.recall:.2f}", f"{s.precision:.2f}")
                for name, s in sorted(self.rows.items())]
        widths = [max(len(r[i]) for r in [header, *body]) for i in range(len(header))]
        fmt = lambda r: "  ".join(c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(r, widths)))
        return "\n".join([fmt(header), *(fmt(r) for r in body)]) + "\n"


def _check_corpus(files: Optional[Iterable[str]], truth: GroundTruth) -> None:
    if files is None:
        return
    files = set(files)
    if truth.files and files != truth.files:
        extra = sorted(files - truth.files)[:3]
        missing = sorted(truth.files - files)[:3]
        raise CorpusMismatch(f"corpus and ground truth differ (not in truth: {extra}, missing: {missing})")


def score_commands(detected: Sequence[CommandKey], truth: GroundTruth,
                   files: Optional[Iterable[str]] = None) -> EvalReport:
    _check_corpus(files, truth)
    return EvalReport({"commands": _score(detected, truth.commands)})


def score_blobs(detected: Sequence[ListenerKey], truth: GroundTruth, threshold: int,
                files: Optional[Iterable[str]] = None) -> EvalReport:
    """``detected`` are the keys of listeners flagged at ``threshold``."""
    _check_corpus(files, truth)
    return EvalReport({"blobs": _score(detected, [l.key for l in truth.blobs(threshold)])}, threshold)
