from .compare import ComparisonReport, ComparisonRow, SymbolicOrbispace, compare_orbispaces
from .core import (
    ChartReport,
    FiberCertificate,
    LocalizedMap,
    NeighborhoodCertificate,
    Orbispace,
    constant_map,
    extract_chart,
    fiber_report,
    global_quotient,
    good_neighborhood_check,
    localize_map,
    make_global_quotient,
    stabilizer,
    stabilizer_subgroup,
)
from .groupoid import ActionGroupoid, GroupoidComparison, action_groupoid, groupoid_equivalent
from .les import FiniteTag, Known, LESResult, LESSpec, Unknown, Zero, les_solve, parse_entry
from .sections import VerticalMapClasses, classify_vertical_maps
