"""Concrete rings: exterior, cube family, Rado and epsilon_0 algebras."""

from .cube import Cube, cube_x, flatten, tau_retraction, theta
from .epsilon import Epsilon, epsilon_basis, epsilon_mul
from .exterior import Exterior, exterior_mul
from .rado import Rado, bset, edge, extend_embedding, gamma_complete

__all__ = [
    "Cube",
    "Epsilon",
    "Exterior",
    "Rado",
    "bset",
    "cube_x",
    "edge",
    "epsilon_basis",
    "epsilon_mul",
    "extend_embedding",
    "exterior_mul",
    "flatten",
    "gamma_complete",
    "tau_retraction",
    "theta",
]
