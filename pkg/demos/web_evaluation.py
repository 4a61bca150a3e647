"""Evaluate a few closed sl_3 webs and reduce an open one."""
import random

from qsatake.webs import evaluate_closed, nested_circles, random_elliptic_web, reduce, theta

print("circle:", evaluate_closed(nested_circles(3, 1)))
print("three nested circles:", evaluate_closed(nested_circles(3, 3)))
print("theta:", evaluate_closed(theta()))

w = random_elliptic_web(random.Random(3), max_faces=6)
print(f"\nrandom web {w.source} -> {w.target} with {len(w.verts)} vertices reduces to")
for coef, web in reduce(w).items():
    print(f"  ({coef}) * web with {len(web.verts)} vertices")
