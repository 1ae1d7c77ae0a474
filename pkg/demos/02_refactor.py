"""Split a Blob listener into one listener per widget and measure the result.

The input is the ``panel`` test fixture: a panel whose single
``actionPerformed`` dispatches on the event source. The refactoring moves
each command into a lambda registered on its widget, drops the now unused
``implements ActionListener`` clause, and cleans up imports. The script prints
the diff and the change in lines of code and cyclomatic complexity.

Run with ``python demos/02_refactor.py``.
"""
from pathlib import Path

from blobsmell import Project, Style, refactor_project
from blobsmell.evaluation import metrics_delta
from blobsmell.frontend import apply_edits, read_corpus, unified_diff

FIXTURE = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "panel"

before = read_corpus(FIXTURE)
report = refactor_project(Project.from_corpus(before), threshold=2, style=Style.LAMBDA)

for outcome in report.outcomes:
    status = "refactored" if outcome.refactored else f"skipped ({outcome.reason.value})"
    print(f"{outcome.blob.listener.file.path}: {status}")

after = {path: apply_edits(text, report.edits.get(path, [])) for path, text in before.items()}
for path in sorted(report.edits):
    print(unified_diff(path, before[path], after[path]))

delta = metrics_delta(before, after)
print(f"LoC {delta.loc:+d}  CC {delta.cc:+d}  duplicated lines {delta.dup}")

# A second pass over the refactored code has nothing left to do.
again = refactor_project(Project.from_corpus(after), threshold=2)
print("second pass edits:", sum(len(e) for e in again.edits.values()))
