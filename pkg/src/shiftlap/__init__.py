"""Exact Laplacian calculus on one-sided full shift spaces."""

from .boundary import (
    GaussGreenReport,
    HarmonicVerdict,
    LaplacianEstimate,
    NeumannDerivative,
    SolutionFunction,
    classify_harmonic,
    gauss_green_check,
    laplacian_estimate,
    neumann_derivative,
    solve_dirichlet,
    solve_neumann,
    weak_residual,
)
from .errors import (
    AlphabetMismatchError,
    ArityError,
    BoundaryMismatchError,
    DomainError,
    FunctionSpecError,
    IncompatibleBoundaryError,
    LevelMismatchError,
    LevelOrderError,
    LevelTooSmallError,
    ResourceLimitError,
    SamePointError,
    ShiftCalculusError,
)
from .forms import (
    DIFFERENCE_FORM,
    OPERATOR_FORM,
    DirichletReport,
    EnergySequence,
    ExtensionCertificate,
    apply_difference_operator,
    apply_difference_operator_inductive,
    difference_at,
    dirichlet_form,
    energy_of,
    energy_sequence,
    minimizer_extension,
    operator_matrix,
)
from .functions import (
    Constant,
    CoordinateSeries,
    CylinderFunction,
    GeometricModulus,
    LevelFunction,
    PointwiseSampler,
    Sampler,
    chi_extension,
    clamp,
    integrate,
    integrate_product,
    project,
    restrict,
)
from .green import (
    GreenApplication,
    apply_green,
    green_h_values,
    green_kernel,
    green_kernel_double_sum,
    green_matrix_entry,
    green_pair_integral,
)
from .scalars import FLOAT64, RATIONAL, format_scalar, parse_scalar
from .words import (
    Alphabet,
    CylinderSet,
    DEFAULT_POINT_CAP,
    VertexWord,
    first_disagreement,
    new_vertex_words,
    vertex_set,
    vertex_words,
)

__version__ = "0.1.0"
