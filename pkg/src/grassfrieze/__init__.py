"""Exact integer Pluecker specializations, primitive representations and SL_k friezes."""

from .errors import GrassFriezeError, InputError, ResourceLimit
from .exactlin import Matrix
from .pluecker import Specialization, check_pluecker_relations, pluecker_of_matrix
from .realize import realize
from .volume_one import construct_volume_one, decide_volume_one

__version__ = "0.1.0"
