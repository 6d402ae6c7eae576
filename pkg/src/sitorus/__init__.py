"""Exact algebra and finite-truncation tests for strongly independent matrix
tuples and measures on the torus invariant under ``x -> x A``."""

from .errors import *  # noqa: F401,F403
from .arith import Fp, parse_rational
from .polynomial import FpPoly, IntPoly
from .exact import FpMatrix, RatMatrix, char_poly, mat_det, mat_inverse
from .irreducible import (
    IrredVerdict,
    ModPFactorization,
    eisenstein_check,
    factor_mod_p,
    is_irreducible_mod_p,
    is_irreducible_q,
    kronecker_factor,
    rational_roots,
)
from .strong import (
    CertReport,
    MatrixTuple,
    certify_tuple_q,
    companion,
    find_dependency_witness_c,
    form_residual,
    generate_si,
    is_si_matrix,
    tuple_bruteforce_fp,
)
from .torus import (
    Atomic,
    Lebesgue,
    TorusPoint,
    apply_map,
    dirac,
    fourier,
    fourier_exact,
    fourier_is_one,
    is_invariant,
    orbit,
    pushforward,
    uniform,
)
from .criteria import (
    DensitySet,
    FolnerFamily,
    ergodic_criterion,
    folner_defect,
    strong_mixing_criterion,
    upper_density,
    weak_mixing_criterion,
)
from .rigidity import (
    RigidityCase,
    SupportConstraint,
    constraint_holds,
    filter_support,
    finite_support_enumerate,
    rigidity_audit,
    semigroup_generate,
)

__version__ = "0.1.0"
