"""Dual bases for every extension in the sl_3 subset lattice."""
from qsatake.frobhypercube import dual_bases, extension, mu
from qsatake.polyring import Poly, realization

R = realization(3)
for lower in R.labels:
    for upper in R.labels:
        if lower == upper or not R.is_subset(lower, upper):
            continue
        ext = extension(R, lower, upper)
        b, dual = dual_bases(R, lower, upper)
        total = sum((x * y for x, y in zip(b, dual)), Poly.zero(R))
        print(f"{lower} ⊂ {upper}: trace {ext.describe()}, rank {len(b)}, "
              f"sum b b* = mu: {total == mu(R, lower, upper)}")
