"""loopnet: numerics for loop-group conformal nets.

Subpackages cover the finite-dimensional Lie substrate (``lie``), Sobolev
loop calculus and cocycles (``loops``), the truncated level-1 fermionic
representation with its Sugawara stress tensor (``fock``), exact
representation-theoretic data (``affine_data``), closed-form relative-entropy
profiles (``entropy``), twisted-loop classification (``soliton``), and a
scenario-driven command line (``cli``).
"""

__version__ = "0.1.0"

from . import affine_data, entropy, fock, lie, loops, soliton  # noqa: F401
