"""Independent reference computations."""
from .direct import direct_jtildes, modp_direct
from .qexpansion import j_coefficients, modular_polynomial_qexp
from .reference import PINNED, ReferenceTable, load_reference

__all__ = ["direct_jtildes", "modp_direct", "j_coefficients", "modular_polynomial_qexp", "PINNED",
           "ReferenceTable", "load_reference"]
