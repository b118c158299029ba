"""Dyadic algebra, vector-field gradients in both layout conventions, the
strain/rotation decomposition, the equivalent geometric-algebra forms, and
a parser for dyadic-notation expressions."""

from .ga import (
    Multivector,
    Vec3,
    dot,
    geometric_product,
    grade,
    render_multivector,
    vector_dual,
    vector_part,
    wedge,
)
from .dyadics import (
    Tensor3,
    antisym,
    dyad,
    nonion_basis,
    postfactor,
    prefactor,
    sym,
    transpose,
)
from .fields import (
    BlackBoxField,
    FieldSpecError,
    Poly,
    PolyField,
    divergence,
    fd_grad,
    field_from_dict,
    grad_alt,
    grad_gibbs,
    load_field,
)
from .kinematics import (
    KinematicsReport,
    bidi_forward,
    bidi_reverse,
    decompose,
    dv_postfactor,
    dv_prefactor,
    nabla_wedge,
    omega_bivector,
    report,
    strain_split,
    vorticity,
)
from .notation import (
    AuditResult,
    BindingError,
    EvalContext,
    EvalError,
    LexError,
    NotationError,
    ParseError,
    audit_convention,
    evaluate,
    parse,
    render,
    tokenize,
)

__version__ = "0.1.0"

__all__ = [
    "Multivector",
    "Vec3",
    "dot",
    "geometric_product",
    "grade",
    "render_multivector",
    "vector_dual",
    "vector_part",
    "wedge",
    "Tensor3",
    "antisym",
    "dyad",
    "nonion_basis",
    "postfactor",
    "prefactor",
    "sym",
    "transpose",
    "BlackBoxField",
    "FieldSpecError",
    "Poly",
    "PolyField",
    "divergence",
    "fd_grad",
    "field_from_dict",
    "grad_alt",
    "grad_gibbs",
    "load_field",
    "KinematicsReport",
    "bidi_forward",
    "bidi_reverse",
    "decompose",
    "dv_postfactor",
    "dv_prefactor",
    "nabla_wedge",
    "omega_bivector",
    "report",
    "strain_split",
    "vorticity",
    "AuditResult",
    "BindingError",
    "EvalContext",
    "EvalError",
    "LexError",
    "NotationError",
    "ParseError",
    "audit_convention",
    "evaluate",
    "parse",
    "render",
    "tokenize",
    "__version__",
]
