"""Mixed recurrences and zero interlacing for MP, Pseudo-Jacobi and continuous Hahn polynomials."""
from .config import (ConstraintViolation, ConvergenceFailure, DEFAULT_CONFIG, DegenerateU, InvalidParams,
                     MergeCollision, MixedRecError, PrecisionConfig, RealnessViolation,
                     SharedZeroSuspected, SingularParams, SizeMismatch, load_config)
from .families import CH, MP, PJ, ch_polynomial, family_polynomial, mp_polynomial, pj_polynomial
from .identities import IdentityId, build_identity, christoffel_check, residual_report
from .interlace import completed_interlacing_classify, interlaces_adjacent, verify_proposition
from .polynomial import RealPolynomial
from .roots import find_real_zeros

__version__ = "0.1.0"
