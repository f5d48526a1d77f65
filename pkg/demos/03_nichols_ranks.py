"""
Nichols algebra dimensions as symmetrizer ranks
===============================================

"""

from fkalg import fk_presentation, truncated_groebner, hilbert_coefficients
from fkalg.braided import BraidedSpace
from fkalg.nichols import nichols_dims, quantum_symmetrizer, quadratic_kernel_compare, symmetrizer_rank

space = BraidedSpace(4)
s3 = quantum_symmetrizer(space, 3)
print(s3.shape, "nonzeros:", s3.nnz)

# the symmetrizer splits into small blocks; ranks are taken per block
info = symmetrizer_rank(s3, backend="both")
print(info["blocks"], "blocks, rank", info["rank"], "per prime", info["per_prime"])

for n, d in [(3, 5), (4, 4)]:
    nd = nichols_dims(n, d).dims
    fk = hilbert_coefficients(truncated_groebner(fk_presentation(n), max_degree=d), d).coefficients
    print(n, nd, fk, nd == fk)

# in degree 2 the kernel of S_2 is exactly the span of the relations
for n in (3, 4, 5, 6):
    print(n, quadratic_kernel_compare(n))
