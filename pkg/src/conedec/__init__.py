"""Exact signed decompositions of Diophantine solution sets into
shifted simplicial cones, with rational generating functions and
independent verification.
"""

from .cones import (ConeTerm, SeriesReading, coefficient, cone_of,
                    lattice_points, series_reading)
from .decompose import (Decomposition, S0, S1, S2, STRATEGIES, Strategy,
                        TermState, complete, decompose, decompose_counts,
                        get_strategy, run)
from .errors import (ConedecError, DegenerateConeError, EvalPointError,
                     FormulaError, NoPositiveSolutionError, ParseError,
                     PivotError, RankError, ShapeError, SingularMatrixError)
from .genfunc import (ConeGF, RationalGF, admissible_point, cone_gf,
                      decomposition_cone_gfs, decomposition_gfs, eval_point,
                      gf_evaluate, monomial_action, total_value, zy_rational)
from .linalg import (Mat, Rational, SnfResult, determinantal_divisors,
                     hstack, mat_det, mat_inverse, mat_rank,
                     smith_normal_form, vstack)
from .sysfile import (SystemFile, load_dual_matrix, load_system,
                      parse_dual_matrix, parse_system, render_system)
from .tableau import (ColumnClass, CountPair, Formula, Tableau,
                      build_initial, from_inequalities)
from .unimodular import (DenumerantTask, HatForm, UnityEvalReport, build_hat,
                         denumerant_task, homogenize_cone, terminal_block,
                         unity_root_eval)
from .verify import (Box, VerifyReport, bounded_solutions, brute_force_points,
                     cross_strategy_check, has_positive_solution,
                     pointwise_check, polytope_polynomial_check,
                     reciprocity_check, relation_check)

__version__ = "0.1.0"
