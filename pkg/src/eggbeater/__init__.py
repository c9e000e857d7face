"""Linked twist maps on the plumbing of two cotangent torus bundles.

Amplified twist flows composed along a free-group word give the
eggbeater maps tau(N, w).  The package finds their fixed points in
prescribed homotopy classes, certifies them (localization boxes,
expansion, per-step iteration), computes symplectic actions and
Conley-Zehnder indices two independent ways each, and assembles the
downstream quantities: linear action gaps, Hofer-type lower bounds,
orbit-density and periodic-growth experiments.
"""

__version__ = "0.1.0"

from .errors import (ConcatPreconditionError, ConfigError, EggbeaterError,
                     EscapedBoxError, IllConditionedWarning,
                     NoRootError, NonConvergenceError,
                     NonRegularCrossingError, SignConditionError,
                     SingularJacobianError, WordSyntaxError)
from .words import (EvenWord, PowerCase, Syllable, Word, parse_word,
                    power_word, reduce_word, to_even_form)
from .profiles import TwistParams, eval_h, eval_rho, eval_rho_prime
from .twist import ChartPoint, apply_word, chart_transition
from .orbits import (Boxes, DensityResult, ExpansionReport,
                     FixedPointRecord, HomotopyClassSpec, SignPattern,
                     TargetBox, census, density_experiment, growth_count,
                     solve_fixed_point, solve_profile_root,
                     verify_expansion)
from .actions import (ActionBreakdown, GapResult, action_closed,
                      action_exact, action_gap, analytic_flip_gap)
from .sympath import (IndexValue, J_matrix, cz_index_closed,
                      cz_index_pipeline, linear_hamiltonian_path,
                      rs_concat_deg, rs_concat_nondeg, rs_index_crossing,
                      rs_shear_index, signature)
from .bounds import (GapSweep, NormCertificate, PowerBoundTable,
                     gap_sweep_and_fit, hofer_norm_bound,
                     hofer_power_bound, nondegeneracy_check)
from .config import RunConfig, load_config
