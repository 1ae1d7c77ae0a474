"""Line-oriented ground-truth sidecar.

Format, one record per line (``#`` starts a comment)::

    file     <path>
    listener <path> <line> <Interface> <expected-cmd> <type1|type2|->
    command  <path> <handler-line> <anchor-line|*>

``file`` lines list the corpus (files without listeners included).
``listener`` lines give the line of the listener (class declaration,
anonymous ``new``, or lambda), its expected command count, and its blob
kind; ``-`` marks listeners that have no blob kind (single command).
``command`` lines identify a command by the line of its identification
anchor, or ``*`` for a whole-body command of the handler at that line.
Paths must not contain whitespace.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Union

CommandKey = tuple[str, int, Union[int, str]]  # (path, handler line, anchor line or "*")
ListenerKey = tuple[str, int, str]  # (path, line, interface simple name)

BLOB_KINDS = ("type1", "type2", "-")


class TruthFormatError(ValueError):
    pass


@dataclass(frozen=True)
class ExpectedListener:
    path: str
    line: int
    interface: str
    cmd: int
    kind: str

    @property
    def key(self) -> ListenerKey:
        return (self.path, self.line, self.interface)

    def is_blob(self, threshold: int) -> bool:
        return self.cmd >= threshold


@dataclass
class GroundTruth:
    files: set[str] = field(default_factory=set)
    listeners: list[ExpectedListener] = field(default_factory=list)
    commands: list[CommandKey] = field(default_factory=list)

    def blobs(self, threshold: int) -> list[ExpectedListener]:
        return [l for l in self.listeners if l.is_blob(threshold)]

    def dumps(self) -> str:
        out = ["# blob listener ground truth"]
        out += [f"file {p}" for p in sorted(self.files)]
        for l in sorted(self.listeners, key=lambda l: l.key):
            out.append(f"listener {l.path} {l.line} {l.interface} {l.cmd} {l.kind}")
        for path, hline, anchor in sorted(self.commands, key=lambda k: (k[0], k[1], str(k[2]))):
            out.append(f"command {path} {hline} {anchor}")
        return "\n".join(out) + "\n"

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")


def _int(text: str, where: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise TruthFormatError(f"{where}: expected an integer, got {text!r}") from None
    if value < 1:
        raise TruthFormatError(f"{where}: line numbers and counts must be positive")
    return value


def parse_truth(text: str, origin: str = "<truth>") -> GroundTruth:
    truth = GroundTruth()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        where = f"{origin}:{lineno}"
        kind = parts[0]
        if kind == "file" and len(parts) == 2:
            truth.files.add(parts[1])
        elif kind == "listener" and len(parts) == 6:
            blob = parts[5]
            if blob not in BLOB_KINDS:
                raise TruthFormatError(f"{where}: blob kind must be one of {', '.join(BLOB_KINDS)}")
            truth.listeners.append(ExpectedListener(parts[1], _int(parts[2], where), parts[3],
                                                    _int(parts[4], where), blob))
        elif kind == "command" and len(parts) == 4:
            anchor: Union[int, str] = "*" if parts[3] == "*" else _int(parts[3], where)
            truth.commands.append((parts[1], _int(parts[2], where), anchor))
        else:
            raise TruthFormatError(f"{where}: malformed record {line!r}")
    truth.files.update(l.path for l in truth.listeners)
    truth.files.update(c[0] for c in truth.commands)
    return truth


def load_truth(path: Union[str, Path]) -> GroundTruth:
    path = Path(path)
    return parse_truth(path.read_text(encoding="utf-8"), str(path))
