"""Blob listener classification."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Hashable, Mapping, Optional, Sequence

from .commands import Command, Variant
from .listeners import ListenerImpl, ListenerKind

DEFAULT_THRESHOLD = 3


class BlobType(enum.Enum):
    MULTI_OBJECT = "MultiObjectMultiCommand"
    SINGLE_OBJECT = "SingleObjectMultiCommand"
    NOT_BLOB = "NotBlob"


@dataclass(eq=False)
class BlobDiagnosis:
    listener: ListenerImpl
    commands: list[Command]
    cmd: int
    is_blob: bool
    blob_type: BlobType
    threshold: int

    @property
    def refactorable(self) -> bool:
        return self.blob_type is BlobType.MULTI_OBJECT


def _unresolved_key(command: Command) -> Hashable:
    ident = command.identification
    f = command.file or command.listener.file
    if ident is None or not ident.comparators:
        return ("unresolved", id(command))
    return ("unresolved", tuple(f.tree.text_of(c) for c in ident.comparators))


def classify(listener: ListenerImpl, commands: Sequence[Command],
             widgets: Optional[Mapping[Command, frozenset]] = None,
             threshold: int = DEFAULT_THRESHOLD) -> BlobDiagnosis:
    """Flag a listener with at least ``threshold`` commands and tell blob kinds apart.

    A blob is multi-object when it is a listener class whose commands are all
    tied to widget identity (reference, type, or identity property) and the
    commands map to at least two distinct widgets.  Commands whose widget
    could not be resolved count as one distinct widget per comparator.
    Everything else (key codes, mouse buttons, anonymous or lambda listeners)
    is single-object.
    """
    if threshold < 2:
        raise ValueError("threshold must be at least 2")
    widgets = widgets or {}
    cmd = len(commands)
    is_blob = cmd >= threshold
    if not is_blob:
        kind = BlobType.NOT_BLOB
    elif listener.kind is not ListenerKind.CLASS:
        kind = BlobType.SINGLE_OBJECT
    elif not all(_identity_anchored(c) for c in commands):
        kind = BlobType.SINGLE_OBJECT
    else:
        distinct: set = set()
        for c in commands:
            found = widgets.get(c)
            if found:
                distinct.update(found)
            else:
                distinct.add(_unresolved_key(c))
        kind = BlobType.MULTI_OBJECT if len(distinct) >= 2 else BlobType.SINGLE_OBJECT
    return BlobDiagnosis(listener, list(commands), cmd, is_blob, kind, threshold)


def _identity_anchored(command: Command) -> bool:
    ident = command.identification
    if ident is None:
        return False
    if ident.variant in (Variant.REFERENCE, Variant.TYPE_CHECK):
        return True
    return ident.identity
