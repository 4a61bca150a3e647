"""(s_0 t)^m in the reflection representation when q^2 is a primitive m-th root of unity."""
from qsatake.weylrep import ReflRep, cyclotomic_orders, matrix_order, t_word, word_matrix

for n in (1, 2, 3):
    for m in (2, 3, 4):
        for k in cyclotomic_orders(m):
            rep = ReflRep(n, k)
            order = matrix_order(rep, word_matrix(rep, [0] + t_word(n)), 50)
            print(f"n={n} m={m} q of order {k}: (s0 t) has order {order}")
