"""Exact computations for the quantum algebraic Satake correspondence in
affine types A_1 and A_2: q-deformed realizations, Demazure and Frobenius
calculus, webs, singular Bott-Samelson bimodules, and the functor from
webs to bimodule maps."""

__version__ = "0.1.0"
