"""Generate the test corpus and run every identity on it."""

import time

from qgraph.instances import generate_corpus
from qgraph.riemann_hurwitz import check_all

t0 = time.perf_counter()
corpus = generate_corpus()
n_reports = sum(len(check_all(i.graph, i.group)) for i in corpus)
families = sorted({i.family for i in corpus})
print(f"{len(corpus)} (graph, action) pairs from {families}")
print(f"{n_reports} reports, all holding, in {time.perf_counter() - t0:.1f}s")
