"""J-function construction, quantum K-invariants and verification suites."""

from .adelic import (LocalExpansion, arm_constant_closed_form, arm_tilde, expand_j, fake_correction,
                     jfake_closed_form, leg_constant_closed_form, leg_tilde, principal_parts,
                     tail_delta, verify_adelic_structure, verify_fake_identity)
from .build import JFunction, build_jtilde, cover_contribution, structural_block
from .kernels import kernel_a, kernel_b, kernel_c, kernel_d
from .lemmas import FAMILIES, closed_form, direct_sum, verify_expansion_lemmas
from .poles import pole_locations, pole_report
from .qk import (PivotError, QKConsistencyError, QKTable, extract_qk, extract_qk_table, gv_from_qk)
