"""Individual-rate comparison of two-user MIMO-NOMA and MIMO-OMA clusters."""

from .beamforming import (BeamformingSolution, DegenerateChannelError, EffectiveCluster,
                          SingularChannelError, align_receivers, beamform,
                          effective_cluster, effective_clusters, zf_precoder)
from .channel import (AlignmentInfeasibleError, ClusterChannel, SystemConfig,
                      draw_clusters, path_loss)
from .power_allocation import (DofMode, EmptyIntervalError, PaInterval, PaPolicy,
                               WeakUserUnreachableError, lemma1_margin, pa_interval,
                               pa_interval_equal_dof, pa_interval_optimal_dof, select_pa)
from .rates import (DegenerateClusterError, DofSplit, PowerSplit, RatePair, jain_index,
                    noma_rates, oma_rates, oma_sum_bound, optimal_dof)

__version__ = "0.1.0"
