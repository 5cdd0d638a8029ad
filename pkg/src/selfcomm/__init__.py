"""Self-commutator norm estimates, numerical ranges and planar width functionals."""

from importlib.metadata import PackageNotFoundError, version

from .linalg import BACKEND, hermitian_eigen, operator_norm, self_commutator

try:
    __version__ = version("artifact")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"

__all__ = ["BACKEND", "__version__", "hermitian_eigen", "operator_norm", "self_commutator"]
