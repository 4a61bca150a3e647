"""Closed webs evaluated two ways: by the spider, and through the bimodule functor."""
import random
import time

from qsatake.qarith import to_qrational
from qsatake.satake import closed_scalar
from qsatake.webs import evaluate_closed, random_closed_web

rng = random.Random(11)
for k in range(5):
    _, _, w = random_closed_web(rng, length=10, min_vertices=2)
    t = time.perf_counter()
    spider = evaluate_closed(w)
    bimod = closed_scalar(w)
    ok = to_qrational(spider) == bimod
    print(f"web {k} ({len(w.verts)} vertices): {spider}   agree={ok}   "
          f"{time.perf_counter() - t:.2f}s")
