"""lineaut: exact order-automorphisms of the real line.

Piecewise-linear maps over rationals with exact lattice-group algebra,
support/terrain analysis, conjugacy decision with effective conjugators,
and solvers for one-parameter group equations (words, commutators, roots,
x g x = f), all verified pointwise with zero tolerance.

Composition is left to right: ``compose(f, g)(q) == g(f(q))``.
"""

from ._backend import KERNEL_BACKEND
from .automorphism import (
    Automorphism,
    DomainError,
    PLAutomorphism,
    ProceduralAutomorphism,
    apply_power,
    compose,
    equals_pl,
    evaluate,
    inverse,
    join,
    meet,
    power,
    reflect,
)
from .conjugacy import (
    AffineBridge,
    ComponentOrbit,
    ComponentPairing,
    OrbitLocation,
    affine_bridge,
    anchor_point,
    conjugate_on_component,
    conjugate_on_fixed,
    conjugation,
    orbit_locate,
    solve_conjugacy,
    verify_pointwise,
)
from .equations import (
    Assignment,
    Subdivision,
    Word,
    XgxSolutionData,
    apply_word,
    commutator_decomposition,
    nth_root,
    solve_two_sided,
    solve_word,
    solve_xgx,
    validate_word,
    word_automorphism,
)
from .oracle import (
    CallCounter,
    CostReport,
    FastForwardCache,
    InstrumentedOracle,
    build_cache,
    measure_locate,
    wrap,
)
from .rational import (
    NEG_INF,
    POS_INF,
    ExtendedRational,
    Rational,
    format_extended,
    format_rational,
    parse_extended,
    parse_rational,
)
from .terrain import (
    Color,
    Terrain,
    TerrainElement,
    color_sequence,
    enumerate_color_sequences,
    is_isomorphic,
    realize,
    support_decompose,
)
from .terrain import validate as validate_terrain

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "Automorphism",
    "DomainError",
    "PLAutomorphism",
    "ProceduralAutomorphism",
    "apply_power",
    "compose",
    "equals_pl",
    "evaluate",
    "inverse",
    "join",
    "meet",
    "power",
    "reflect",
    "AffineBridge",
    "ComponentOrbit",
    "ComponentPairing",
    "OrbitLocation",
    "affine_bridge",
    "anchor_point",
    "conjugate_on_component",
    "conjugate_on_fixed",
    "conjugation",
    "orbit_locate",
    "solve_conjugacy",
    "verify_pointwise",
    "Assignment",
    "Subdivision",
    "Word",
    "XgxSolutionData",
    "apply_word",
    "commutator_decomposition",
    "nth_root",
    "solve_two_sided",
    "solve_word",
    "solve_xgx",
    "validate_word",
    "word_automorphism",
    "CallCounter",
    "CostReport",
    "FastForwardCache",
    "InstrumentedOracle",
    "build_cache",
    "measure_locate",
    "wrap",
    "NEG_INF",
    "POS_INF",
    "ExtendedRational",
    "Rational",
    "format_extended",
    "format_rational",
    "parse_extended",
    "parse_rational",
    "Color",
    "Terrain",
    "TerrainElement",
    "color_sequence",
    "enumerate_color_sequences",
    "is_isomorphic",
    "realize",
    "support_decompose",
    "validate_terrain",
    "__version__",
]
