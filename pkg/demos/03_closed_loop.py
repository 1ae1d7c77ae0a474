"""Generate a labelled corpus and score the detector against it.

``generate_fixtures`` writes one Java file per requested listener along with
the expected commands and blob type. Feeding the corpus back through the
detector should reproduce that truth exactly. The mix below covers every
listener style and every way of telling widgets apart.

Run with ``python demos/03_closed_loop.py``.
"""
from collections import Counter

from blobsmell import Project, analyze
from blobsmell.evaluation import all_mixes, evaluate, generate_fixtures

mix = all_mixes(max_commands=4, count=2)
corpus = generate_fixtures(mix, seed=42)
print(f"{len(corpus.files)} files, {len(corpus.truth.commands)} labelled commands")
print("expected kinds:", dict(Counter(l.kind for l in corpus.truth.listeners)))

_, results = analyze(Project.from_corpus(corpus.files))
report = evaluate([d for d, _ in results], corpus.truth, list(corpus.files))
print(report.to_table())

# Peek at one generated file to see what the detector was given.
path = sorted(corpus.files)[0]
print(f"--- {path}")
print(corpus.files[path])
