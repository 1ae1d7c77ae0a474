from pathlib import Path

import pytest

from blobsmell.frontend import apply_edits, read_corpus
from blobsmell.project import Project
from blobsmell.refactor import analyze

FIXTURES = Path(__file__).parent / "fixtures"


def corpus_of(name: str) -> dict[str, str]:
    return read_corpus(FIXTURES / name)


def project_of(source: str | dict[str, str], path: str = "A.java") -> Project:
    corpus = {path: source} if isinstance(source, str) else source
    return Project.from_corpus(corpus)


def diagnoses(project: Project, threshold: int = 3):
    _, results = analyze(project, threshold)
    return [d for d, _ in results]


def applied(corpus: dict[str, str], edits) -> dict[str, str]:
    return {path: apply_edits(text, edits.get(path, [])) for path, text in corpus.items()}


@pytest.fixture(scope="session")
def handlers() -> dict[str, str]:
    return corpus_of("handlers")


@pytest.fixture(scope="session")
def handlers_project(handlers) -> Project:
    return Project.from_corpus(handlers)


_SPAN_FIELDS = {"start", "end", "name_start"}


def shape(value):
    """A node tree as nested tuples, without source offsets."""
    from dataclasses import fields, is_dataclass

    if is_dataclass(value):
        return (type(value).__name__,) + tuple(
            (f.name, shape(getattr(value, f.name))) for f in fields(value) if f.name not in _SPAN_FIELDS)
    if isinstance(value, (list, tuple)):
        return tuple(shape(v) for v in value)
    if isinstance(value, (set, frozenset)):
        return tuple(sorted(value))
    return value


def structurally_equal(a: str, b: str) -> bool:
    from blobsmell.frontend import parse

    return shape(parse(a).root) == shape(parse(b).root)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
