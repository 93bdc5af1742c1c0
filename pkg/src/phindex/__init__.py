"""Index arithmetic for singular foliations of surfaces.

Half-integer singularity indices measured along circles, the
Bendixson/Hamburger tangency census, combinatorial surface checks, the
orientation double cover, and the pipe-surface feasibility ledger.
"""

__version__ = "0.1.0"

from .cover import (
    LiftCheckReport,
    ReductionReport,
    SingularPartition,
    index_lift_inverse,
    index_lift_relation,
    numeric_lift_check,
    reduction_sum_check,
    riemann_hurwitz,
)
from .fields import (
    CATALOG,
    CatalogEntry,
    LineModelField,
    PolynomialField,
    catalog_get,
    catalog_names,
    complex_monomial_field,
    complex_product,
    field_from_json,
    field_to_json,
    load_field_file,
    polynomial_field,
)
from .halfint import HalfIndex
from .obstruction import (
    BagpipeSpec,
    Verdict,
    bagpipe_euler,
    foliation_feasibility,
    witness_poles,
)
from .poly import PolyExpr, parse_polynomial
from .surface import (
    Triangulation,
    ValidationReport,
    connected_sum,
    discrete_ph_sum,
    format_triangulation,
    generate_surface,
    load_mesh_file,
    parse_triangulation,
    poincare_1885_check,
    projective_plane,
    seven_vertex_torus,
    tetrahedron,
    validate_triangulation,
)
from .svgplot import render_field_svg
from .tangency import (
    ArcKind,
    SurgeryStep,
    TaggedCircuit,
    Tangency,
    TangencyKind,
    VertexTag,
    bendixson_index,
    census_counts,
    circuit_from_tangencies,
    cross_check_index,
    find_tangencies,
    hamburger_index,
    loop_free_bound_check,
    surgery_replay,
)
from .winding import Circle, WindingResult, winding_index

__all__ = [
    "__version__",
    "ArcKind",
    "BagpipeSpec",
    "CATALOG",
    "CatalogEntry",
    "Circle",
    "HalfIndex",
    "LiftCheckReport",
    "LineModelField",
    "PolyExpr",
    "PolynomialField",
    "ReductionReport",
    "SingularPartition",
    "SurgeryStep",
    "TaggedCircuit",
    "Tangency",
    "TangencyKind",
    "Triangulation",
    "ValidationReport",
    "Verdict",
    "VertexTag",
    "WindingResult",
    "bagpipe_euler",
    "bendixson_index",
    "catalog_get",
    "catalog_names",
    "census_counts",
    "circuit_from_tangencies",
    "complex_monomial_field",
    "complex_product",
    "connected_sum",
    "cross_check_index",
    "discrete_ph_sum",
    "field_from_json",
    "field_to_json",
    "find_tangencies",
    "foliation_feasibility",
    "format_triangulation",
    "generate_surface",
    "hamburger_index",
    "index_lift_inverse",
    "index_lift_relation",
    "load_field_file",
    "load_mesh_file",
    "loop_free_bound_check",
    "numeric_lift_check",
    "parse_polynomial",
    "parse_triangulation",
    "poincare_1885_check",
    "polynomial_field",
    "projective_plane",
    "reduction_sum_check",
    "render_field_svg",
    "riemann_hurwitz",
    "seven_vertex_torus",
    "surgery_replay",
    "tetrahedron",
    "validate_triangulation",
    "winding_index",
    "witness_poles",
]
