"""
The braiding on transpositions
==============================

"""

import numpy as np

from fkalg.braided import BraidedSpace, braid_matrix, braid_on_basis, check_yang_baxter
from fkalg.presentations import Transposition as T

# c(v_s (x) v_t) = chi(s, t) v_{s t s} (x) v_s
print(braid_on_basis(T(1, 2), T(2, 3)))
print(braid_on_basis(T(1, 2), T(1, 2)))

space = BraidedSpace(3)
c = braid_matrix(space, 2, 1)
# a signed permutation: one +-1 per column
print(c.toarray())
print("fixed columns:", c.fixed_columns())

# c^2 is not the identity, c^6 is
c2 = c @ c
print("c^2 == 1:", np.array_equal(c2.toarray(), np.eye(9)))
print("c^6 == 1:", np.array_equal((c2 @ c2 @ c2).toarray(), np.eye(9)))

for n in (3, 4, 5):
    print(n, "braid relation holds:", check_yang_baxter(BraidedSpace(n)))
