"""rla: exact computations in restricted Lie algebras and their enveloping algebras."""

from rla.gf import Subspace, rref, nullspace, check_prime
from rla.lie import LieAlgebra, ValidationReport
from rla.env import EnvAlgebra, EnvElement, EnvSubspace, SizeLimitError
from rla.classify import classify, classify_minus, classify_plus, classify_full, verify

__all__ = [
    "Subspace", "rref", "nullspace", "check_prime",
    "LieAlgebra", "ValidationReport",
    "EnvAlgebra", "EnvElement", "EnvSubspace", "SizeLimitError",
    "classify", "classify_minus", "classify_plus", "classify_full", "verify",
    "kernel_backend",
]

__version__ = "0.1.0"


def kernel_backend() -> str:
    """Which straightening kernel is active: 'compiled' or 'python'."""
    from rla._kernel import BACKEND
    return BACKEND
