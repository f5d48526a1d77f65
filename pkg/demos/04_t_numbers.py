"""
Products of t-numbers
=====================

"""

from fkalg.hilbert import expand_t_product, factor_t_numbers, prefix_consistency, numerology_report

h5 = expand_t_product([4, 4, 4, 4, 5, 5, 6, 6, 6, 6])
print("degree", h5.degree, "dimension", h5.value_at_one())
print(h5.coefficients[:8])

# factoring recovers the multiset
print(factor_t_numbers(h5))
print(factor_t_numbers([1, 2, 2, 1]))
print(factor_t_numbers([1, 3, 5, 3, 1]))

# a prefix is enough to rule out any product
print(prefix_consistency([1, 3, 4]))
print(prefix_consistency([1, 15, 125]))

print(numerology_report(3, expand_t_product([2, 2, 3])).message)
