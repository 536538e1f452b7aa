"""Exact linear algebra for hom-connections over finite-dimensional algebras."""

from .exactlin import QQ, GF
from .algrep import FinAlgebra, RightModule, Bimodule, hom_space
from .calculus import GradedCalculus, universal_calculus
from .homconn import HomConnection, solve_homconnections, curvature, homology

__version__ = "0.1.0"
