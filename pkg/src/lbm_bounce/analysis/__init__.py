"""Taylor analysis of the wall closures: jets, boundary matrices, expansions, tables."""
from .closed_forms import closed_form_table
from .expansion import ExpansionResult, data_series, eliminate_time, expand, interior_equivalent_equations
from .jets import DerivativeJet
from .matrices import BoundaryMatrices, build_matrices
from .reconcile import ReconcileReport, reconcile
from .tables import coefficient_table

__all__ = [
    "BoundaryMatrices",
    "DerivativeJet",
    "ExpansionResult",
    "ReconcileReport",
    "build_matrices",
    "closed_form_table",
    "coefficient_table",
    "data_series",
    "eliminate_time",
    "expand",
    "interior_equivalent_equations",
    "reconcile",
]
