"""Finite-dimensional substrate: su(n) bases, invariant form, table data.

The basis is orthonormal for minus the trace form, and the dual Coxeter
number is not hard-coded anywhere: it emerges from the Casimir identity
sum_i [x_i, [x^i, Y]] = 2 g Y evaluated with explicit matrices.
"""

import numpy as np

from loopnet import lie

su3 = lie.build_su(3)
print(f"su(3): dimension {su3.dimension}, dual Coxeter {su3.dual_coxeter}")

gram = -np.einsum("iab,jba->ij", su3.basis, su3.basis)
print("orthonormality residual:", np.abs(gram - np.eye(8)).max())

y = su3.basis_element(4)
casimir = sum(lie.bracket(su3.basis_element(i),
                          lie.bracket(-1 * su3.basis_element(i), y)).matrix
              for i in range(8))
print("Casimir residual vs 2g Y:",
      np.abs(casimir - 2 * su3.dual_coxeter * y.matrix).max())

# the invariant form is the plain trace form; on diag(1, -1, 0) it returns 2,
# which is the highest-root normalization
h = su3.element(np.diag([1.0, -1.0, 0.0]))
print("<H, H> =", lie.basic_form(h, h).real)

print("\ncenter of SU(3):")
for k, z in enumerate(lie.center_elements(3)):
    print(f"  k={k}: {z[0, 0]:.6f} * Id, det = {np.linalg.det(z):.6f}")

print("\nsimple-type table (dimension, dual Coxeter):")
for rec in lie.simple_type_table(4):
    print(f"  {rec.family}_{rec.rank}: dim {rec.complex_dimension}, "
          f"g {rec.dual_coxeter}")
