"""Subuniverse counts and planarity of small finite join-semilattices."""

from .catalog import build, kr_members_up_to_nine, sharpness_family
from .census import all_join_semilattices, all_lattices, census
from .dyadic import DyadicValue
from .groupoid import PartialGroupoid, from_join_semilattice, parse_spec, parse_specs
from .order import Poset, add_bottom, canonical_form, dual, is_isomorphic, join_semilattice_table
from .planarity import semilattice_verdict, verify_drawing
from .subcount import count_subuniverses, count_subuniverses_naive, sigma

__version__ = "0.1.0"

__all__ = [
    "build", "kr_members_up_to_nine", "sharpness_family", "all_join_semilattices",
    "all_lattices", "census", "DyadicValue", "PartialGroupoid", "from_join_semilattice",
    "parse_spec", "parse_specs", "Poset", "add_bottom", "canonical_form", "dual",
    "is_isomorphic", "join_semilattice_table", "semilattice_verdict", "verify_drawing",
    "count_subuniverses", "count_subuniverses_naive", "sigma",
]
