"""Finite groupoids, their actions and bisets, and a checker for the Mackey formula."""
__version__ = "0.1.0"

from .actions import (EquivariantMap, GroupoidAction, Side, check_equivariant, orbits, regular_action,
                      stabilizer, translation_groupoid, validate_action)
from .bisets import (Biset, BisetMap, check_biset_map, double_orbits, from_left_product_set, regular_biset,
                     to_left_product_set, validate_biset)
from .common import Partition, ValidationReport
from .cosets import CosetSpace, coset_eq, coset_space, orbit_decomposition, orbit_stabilizer_iso
from .errors import GkitError
from .generate import RandomConfig, random_instance, random_instances
from .groupoid import (FiniteGroupoid, GroupoidMorphism, Subgroupoid, build_groupoid, cyclic_group, eqrel,
                       opposite, pairs, product, subgroupoid_check, trivial, validate_groupoid)
from .mackey import MackeyInstance, MackeyReport, biset_isomorphic, star_product, verify_mackey
from .tensor import TensorProductBiset, coequalizer_factorization, tensor_product

__all__ = [name for name in dir() if not name.startswith("_")]
