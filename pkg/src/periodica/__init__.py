"""periodica: exact computations with m-periodic complexes over
finite-dimensional quiver algebras.

Highlights: quiver algebras with admissible relations and their modules;
the DG category of m-periodic complexes (shifts, cones, cohomology,
homotopy Hom spaces); K-projective replacements and derived Hom over
finite-global-dimension algebras; Hochschild cohomology of Laurent
extensions with the formality criterion; stable categories of
self-injective algebras with periodic tilting checks.
"""

from .common import (CheckFailed, ParseError, PeriodicaError,
                     PreconditionError, Trunc, TruncationError)
from .fields import Field, QQ
from .linalg import Mat, backend
from .quiver import (AlgebraPresentation, FinDimAlgebra, Quiver,
                     build_algebra, tensor_op_presentation)
from .families import (dual_numbers, enveloping, interval_module, linear_a,
                       nakayama, semisimple_product, serial_module,
                       truncated_polynomials)
from .rep import (Morphism, Rep, decompose, direct_sum, find_iso,
                  global_dimension, hom_space, indecomposable_q,
                  injective_envelope, iso_q, minimal_resolution,
                  projective_cover, syzygy)
from .percomplex import (BoundedComplex, ConeDiagram, GradedMorphism,
                         PeriodicComplex, K_of, chain_map, cohomology, cone,
                         decompose_acyclic_projective, fold, hom_complex,
                         homotopy_hom, is_acyclic, is_contractible,
                         is_quasi_iso, shift, stalk_complex, unroll)
from .derivedper import (DerivedContext, distinct_stalks_d2_dual_numbers,
                         ext_dims, ext_sum_check, hereditary_decompose,
                         list_indecomposables_hereditary, stalk_tilting_check)
from .hochschild import (BimoduleResolution, HochschildContext, LaurentSetup,
                         bar_hh_oracle, bimodule_resolution,
                         formality_criterion, hh_table, smooth_dimension)
from .stablecat import (StableContext, algebra_period,
                        check_periodic_tilting_stable, is_self_injective,
                        stable_end_algebra)

__version__ = "0.1.0"
