"""Spherical and geodesic growth series of braid groups.

Braids are compared through Dynnikov coordinates, partitioned by templates
(permutation plus linking numbers) and reduced under a finite group of word
symmetries, so only one template per orbit is ever enumerated.
"""

from .dynnikov import DynnikovCoords, apply_sigma, braids_equal, dynnikov, hash64
from .engine import Enumeration, combi, red_combi, rep_set, sphere_levels, temp_rep_set
from .errors import (
    BraidGrowthError,
    CoordinateOverflowError,
    InsufficientCoefficientsError,
    MemoryCapError,
    OmegaOverflowError,
    StoreError,
)
from .oracle import bfs_enumerate
from .series import RationalFn, expand, find_fit, pade_fit, verify
from .symmetry import group, map_template, orbit, reduce
from .templates import Template, template_extend, template_of_word
from .words import Alphabet, Kind, Word

__version__ = "0.1.0"
