"""Spectra and Brown measures in the free product of two copies of ``M_2``.

Modules
-------
measures     laws on the line and rotation-invariant laws in the plane
transforms   psi, chi and S-transforms
brown        Brown measures of R-diagonal elements and worked examples
spectra      spectral regions of products and sums
freeprod     the decomposition of the second copy over the first copy's matrix units
moments      exact mixed moments, R-diagonality predicates, support classification
matrixmodel  Haar-conjugated random-matrix model
verify       the numbered reproduction checks
cli          the ``freespec`` command
"""

from .errors import (DiracInputError, DomainError, FreespecError, InvalidMeasureError,
                     PreconditionError, ResourceError, SingularityError)
from .mat2 import Mat2
from .measures import (MeasureR, RadialMeasure, arcsine01, arcsine_sym, integrate_moment,
                       log_potential, pushforward_square, sup_distance)
from .transforms import STransform, chi, psi, s_product, s_transform
from .brown import (BrownMixture, brown_example_64, brown_example_65, brown_product,
                    brown_sum_nilpotents, haagerup_larsen)
from .spectra import (EllipseComparison, SpectrumRegion, canonical_traceless,
                      ellipse_families_equal, representation_spectrum_sampler,
                      spectral_radius_product, spectrum_example_66,
                      spectrum_product_traceless)
from .moments import (FreeTraceEngine, FreeWord, classify_support, is_r_diagonal_product,
                      is_r_diagonal_sum, moment_sequence, r_diagonal_defect, trace_word)
from .freeprod import SymbolicMat2, WordExpr, decompose, evaluate_matrix_model, symbolic_trace
from .matrixmodel import (EmpiricalSpectrum, ModelConfig, embed_pair, empirical_brown,
                          empirical_radial_cdf, empirical_singular_values, haar_unitary,
                          log_determinant_potential)

__version__ = "0.1.0"
