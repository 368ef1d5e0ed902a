"""Standard set-valued Young tableaux and k-ary product-coproduct prographs."""
from .tableaux import Density, SetValuedTableau, Shape, SkewShape, enumerate_svt, is_standard
from .prographs import Prograph, enumerate_prographs
from .bijections import phi, phi_inverse, psi, psi_inverse, tau
from .counting import count_1k1, count_k11

__all__ = [
    "Density", "Prograph", "SetValuedTableau", "Shape", "SkewShape", "count_1k1", "count_k11",
    "enumerate_prographs", "enumerate_svt", "is_standard", "phi", "phi_inverse", "psi",
    "psi_inverse", "tau",
]
