"""Coherent information of bipartite states and quantum channels.

Finite-n coherent-information capacity bounds, isotropic and Bell-diagonal
state families, and numerical checks of the associated inequalities.
"""
from .capopt import OptConfig, OptResult, grid_oracle_diag, maximally_mixed_ci, maximize_ci
from .channels import (
    KrausChannel,
    apply,
    choi_state,
    extend_apply,
    identity_channel,
    standard_channel,
    tensor_power,
)
from .coherent import CIValue, channel_ci, coherent_info, entropy, hashing_rate, isotropic_ci
from .io import __version__
from .states import (
    DensityMatrix,
    Ensemble,
    IsotropicParams,
    PureState,
    bell_diagonal,
    isotropic,
    max_entangled,
    mix,
    purify,
    random_density,
    random_unitary,
    twirl_closed_form,
    twirl_monte_carlo,
)
from .verify import VerificationReport
