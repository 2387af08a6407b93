"""nbgrid: the neighborhood grid.

A data structure that arranges N points into an n-by-...-by-n lattice,
one per cell, so that every row and column is sorted along its axis.
The package covers direct O(N log N) construction of such stable states,
iterative and data-parallel sorting strategies with an energy certificate,
exhaustive combinatorics of stable states (counts, uniqueness census,
Young tableaux), and measurement of nearest-neighbor estimation quality
against an exact oracle.
"""

from ._kernels import BACKEND
from .counting import (
    RankConfig,
    all_rank_configs,
    check_bin_conditions,
    check_submatrix_unique,
    count_bin_stable,
    count_fillings,
    count_point_sets,
    count_stable_fillings,
    count_stable_states,
    enumerate_stable_states,
    lower_bound_bits,
    lower_bound_bits_formula,
    stable_fraction,
)
from .census import CensusResult, census_unique, max_stable_states_probe
from .dynamics import (
    SortTrace,
    StepKind,
    StepRecord,
    column_sort,
    energy,
    full_pass,
    max_energy_swap_pass,
    odd_even_step,
    row_sort,
    run_until_stable,
    trace_to_jsonl,
    write_trace_jsonl,
)
from .grid import (
    Grid,
    StabilityReport,
    build_stable,
    grid_from_json,
    grid_to_json,
    is_stable,
    read_grid_json,
    write_grid_json,
)
from .points import (
    GuardError,
    ParseError,
    Point,
    PointSet,
    axis_key,
    normalize_ranks,
    pad_points,
    read_points_csv,
    total_less,
    write_points_csv,
)
from .quality import (
    NeighborEstimate,
    QualityReport,
    adversarial_all_grid,
    adversarial_single_grid,
    build_by_strategy,
    estimated_nn,
    exact_nn,
    gen_adversarial_all,
    gen_adversarial_single,
    gen_random,
    grid_quality_report,
    initial_grid,
    quality_report,
    report_to_json,
    ring_cells,
    write_report_csv,
    write_report_json,
)
from .tableaux import (
    Partition,
    count_linear_extensions_lattice,
    count_tableaux_enumerated,
    count_tableaux_hook,
    enumerate_tableaux,
    hook_lengths,
    square_hook_product,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CensusResult",
    "Grid",
    "GuardError",
    "NeighborEstimate",
    "ParseError",
    "Partition",
    "Point",
    "PointSet",
    "QualityReport",
    "RankConfig",
    "SortTrace",
    "StabilityReport",
    "StepKind",
    "StepRecord",
    "adversarial_all_grid",
    "adversarial_single_grid",
    "all_rank_configs",
    "axis_key",
    "build_by_strategy",
    "build_stable",
    "census_unique",
    "check_bin_conditions",
    "check_submatrix_unique",
    "column_sort",
    "count_bin_stable",
    "count_fillings",
    "count_linear_extensions_lattice",
    "count_point_sets",
    "count_stable_fillings",
    "count_stable_states",
    "count_tableaux_enumerated",
    "count_tableaux_hook",
    "energy",
    "enumerate_stable_states",
    "enumerate_tableaux",
    "estimated_nn",
    "exact_nn",
    "full_pass",
    "gen_adversarial_all",
    "gen_adversarial_single",
    "gen_random",
    "grid_from_json",
    "grid_quality_report",
    "grid_to_json",
    "hook_lengths",
    "initial_grid",
    "is_stable",
    "lower_bound_bits",
    "lower_bound_bits_formula",
    "max_energy_swap_pass",
    "max_stable_states_probe",
    "normalize_ranks",
    "odd_even_step",
    "pad_points",
    "quality_report",
    "read_grid_json",
    "read_points_csv",
    "report_to_json",
    "ring_cells",
    "row_sort",
    "run_until_stable",
    "square_hook_product",
    "stable_fraction",
    "total_less",
    "trace_to_jsonl",
    "write_grid_json",
    "write_points_csv",
    "write_report_csv",
    "write_report_json",
    "write_trace_jsonl",
]
