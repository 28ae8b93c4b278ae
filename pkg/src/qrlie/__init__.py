"""qrlie: exact quasi-reductivity analysis of algebraic Lie algebras.

Submodules:
  exactlin  - exact rational / polynomial linear algebra, Pfaffians,
              randomized generic rank with certificates
  liealg    - Lie algebras as structure constants, Kirillov form, index,
              stabilizers, regular-form sampling, Pfaffian polynomial
  jordan    - Jordan-Chevalley decomposition, unipotent defect,
              Cartan-Duflo rank, quasi-reductivity decisions
  classical - flags, generic alternating forms, so/sp/gl, flag
              stabilizers, parabolic subalgebras, root subsets, the zoo
  formulas  - closed-form index/defect formulas and Dynkin classifiers
  cli       - command-line interface and census machinery
"""

from .exactlin import SampleConfig
from .liealg import LieAlgebra, from_matrices, from_structure_constants

__all__ = ["SampleConfig", "LieAlgebra", "from_matrices",
           "from_structure_constants"]

__version__ = "0.1.0"
