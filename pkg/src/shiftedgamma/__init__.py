"""Fox H and generalized Mellin-Barnes transform functions, with the
distribution algebra of shifted generalized gamma random variables."""

from . import algebra, errors, gengamma, hfun, ihat, oracle, quadrature, specfun
from .errors import (BranchCutError, ConfigError, DivergenceError, DomainError,
                     InversionQualityError, NoContourError, ParameterError,
                     PoleError, ShiftedGammaError, StripError)
from .gengamma import (GenGammaParams, erlang, exponential, maxwell, rayleigh,
                       weibull)
from .hfun import ContourSpec, HParams, eval_h, h_integrand, log_gamma, mellin_h, select_contour
from .ihat import (IhatFactor, IhatSpec, eval_ihat, ihat_from_I,
                   ihat_from_Y, ihat_from_gamma_product,
                   ihat_from_upper_incomplete, tricomi_u, upsilon,
                   upsilon_general)

__version__ = "0.1.0"
