"""The compactified resolved conifold: K-ring, small I-function, small J-functions."""

from .ifunction import IFunctionTerm, i_small
from .kring import (BASIS, BASIS_NAMES, W_BASIS_NAMES, KRing, KRingElem, TruncatedQuotient,
                    ring_invert_unit, ring_reduce, verify_ring_presentation)
from .smallj import (Reconstruction, conifold_gv_check, flow_inputs, restrict_to_conifold,
                     small_j_t, small_j_t0, verify_small_j_t, verify_small_j_t0)
