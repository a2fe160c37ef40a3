"""Numerical bilinear maximal operators on the plane.

Fixed-scale and multi-scale bilinear averages over eccentric rectangles
through diagonal points, directional and one-dimensional bilinear maximal
functions, bilinear multiplier operators over convex frequency domains,
the square-counting apparatus for witness rectangle families, sharpness
example generators, and empirical operator-norm growth fitting.
"""

from .convex import (BoundaryChart, BoundaryPartition, ConvexDomain,
                     DomainSpecError, boundary_chart, boundary_partition,
                     chart_directions, covering_number,
                     minkowski_dimension_estimate, minkowski_functional,
                     parse_domain_spec, smooth_approximation)
from .counting import (CountingReport, WitnessFamily,
                       check_direction_component_bound,
                       check_per_rectangle_bound, classify_directions,
                       fan_family, h_function, parallel_family, random_family,
                       select_witness_family, strip_counts, union_families,
                       verify_counting_bounds)
from .extremal import (AlphaExperimentResult, ExtremalPair,
                       ProductExtremalResult, alpha_near_one_experiment,
                       alpha_witness_rectangle, extremal_pair_bilinear,
                       fan_rectangle_linear, full_range_witness_rectangle,
                       pointwise_lower_bound_witness, product_extremal_linear)
from .fitting import (FitResult, SweepResult, best_fit, diagonal_points,
                      growth_fit, growth_sweep, operator_ratio, sample_norm,
                      sample_weak_norm, sweep_grid)
from .grids import (FunctionSpecError, Grid, ProductFunction2D,
                    SampledFunction, hl_maximal, lp_norm,
                    parse_function_spec, weak_lp_quasinorm)
from .kakeya import (DEFAULT_PROFILE, DominationReport, SearchProfile,
                     aimed_rectangle, diagonal_witness_rectangle,
                     directional_maximal, domination_report,
                     kakeya_fixed_scale, kakeya_full, lacey_maximal)
from .multiplier import (MultiplierSymbol, apply_bilinear_multiplier,
                         apply_bilinear_multiplier_oracle,
                         bochner_riesz_apply, bochner_riesz_symbol,
                         bump_symbol, dyadic_decomposition,
                         dyadic_reconstruction, kernel_l1_profile, one_symbol,
                         subordination_reconstruct)
from .rectangles import (Rectangle, cell_overlap_area, from_corner,
                         rect_average, rect_average_clipped, rect_integral)

__version__ = "0.1.0"
