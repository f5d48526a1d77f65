"""
Hilbert series of E_n from a truncated Groebner basis
=====================================================

"""

from fkalg import fk_presentation, truncated_groebner, hilbert_coefficients, dimension
from fkalg.hilbert import expand_t_product

# E_3: three generators x12, x13, x23 and five quadratic relations
p3 = fk_presentation(3)
print(p3.labels, len(p3.relations), "relations")

gb = truncated_groebner(p3, max_degree=6)
print("basis elements:", len(gb.elements))
print("series:", hilbert_coefficients(gb).coefficients)
print("dimension:", dimension(gb))

# E_4 vanishes in degree 13; the series is (2)^2 (3)^2 (4)^2
gb4 = truncated_groebner(fk_presentation(4), max_degree=13)
print(hilbert_coefficients(gb4).trimmed())
print(hilbert_coefficients(gb4).trimmed() == expand_t_product([2, 2, 3, 3, 4, 4]).coefficients)

# For E_6 only a prefix is reachable, so the dimension stays open
gb6 = truncated_groebner(fk_presentation(6), max_degree=5)
print(hilbert_coefficients(gb6).coefficients)
print(dimension(gb6))
