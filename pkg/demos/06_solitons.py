"""Twisted loops: jumps, centrality verdicts, derived loops, composition.

A path with zeta(x + 2 pi) = zeta(x) h is stored as an ordered product of
periodic and linear exponential factors; h is computed and its x-independence
verified rather than assumed.  Central jumps give honest rotation-covariant
sectors; non-central jumps do not, and the failure is visible already in the
derived loop at 2 pi.
"""

import numpy as np

from loopnet import lie, soliton
from loopnet.loops import ScalarField

su2 = lie.build_su(2)

half = soliton.SolitonPath.linear(su2, np.diag([0.5j, -0.5j]))
quarter = soliton.SolitonPath.linear(su2, np.diag([0.25j, -0.25j]))

for name, path in (("half twist", half), ("quarter twist", quarter)):
    verdict = soliton.extendability(path)
    print(f"{name}: jump diag {np.round(verdict.jump.diagonal(), 6)}, "
          f"central={verdict.central}, center index={verdict.center_index}, "
          f"extendable={verdict.extendable}")

loop = soliton.rotation_cocycle_2pi(half)
print("rotation cocycle at 2 pi (central case) constancy residual:",
      np.abs(loop.samples - loop.samples[0]).max())

dressed = soliton.SolitonPath(su2, [
    soliton.PeriodicFactor(su2.basis[0], ScalarField({1: 0.2, -1: 0.2})),
    soliton.LinearFactor(np.diag([0.25j, -0.25j])),
])
loop = soliton.rotation_cocycle_2pi(dressed)
print("rotation cocycle at 2 pi (non-central, dressed) spread:",
      np.abs(loop.samples - loop.samples[0]).max())

combined = soliton.compose(half, quarter)
print("composition of torus twists: jump diag",
      np.round(soliton.jump(combined).diagonal(), 6))
trivial = soliton.compose(half, soliton.inverse(half))
print("twist times its inverse: jump residual vs Id:",
      np.abs(soliton.jump(trivial) - np.eye(2)).max())

key = soliton.equivalence_key(quarter)
g = np.array([[np.cos(0.4), np.sin(0.4)], [-np.sin(0.4), np.cos(0.4)]],
             dtype=complex)
conj_key = soliton.jump(soliton.conjugate(quarter, g))
print("conjugated family stays in the same class:",
      soliton.keys_conjugate(key, conj_key))
