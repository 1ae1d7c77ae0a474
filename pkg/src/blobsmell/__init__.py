"""Detection and refactoring of Blob listeners in Java Swing, SWT and JavaFX code.

Typical use::

    from blobsmell import Project, analyze, refactor_project
    project = Project.from_corpus({"A.java": text})
    index, results = analyze(project, threshold=3)
"""
from .blobs import DEFAULT_THRESHOLD, BlobDiagnosis, BlobType, classify
from .catalog import Catalog, CatalogError, default_catalog, load_catalog
from .commands import Command, DispatchMethod, SourceObjectIdentification, Variant, detect_commands
from .listeners import Handler, ListenerImpl, ListenerKind, Registration, find_registrations, find_ui_listeners
from .project import Project
from .refactor import (Reason, RefactorOutcome, RefactorPlan, RefactorReport, Style, analyze,
                       emit_edits, find_all_interactive_objects, plan, refactor_project)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_THRESHOLD", "BlobDiagnosis", "BlobType", "Catalog", "CatalogError", "Command",
    "DispatchMethod", "Handler", "ListenerImpl", "ListenerKind", "Project", "Reason",
    "RefactorOutcome", "RefactorPlan", "RefactorReport", "Registration", "SourceObjectIdentification",
    "Style", "Variant", "analyze", "classify", "default_catalog", "detect_commands", "emit_edits",
    "find_all_interactive_objects", "find_registrations", "find_ui_listeners", "load_catalog", "plan",
    "refactor_project",
]
