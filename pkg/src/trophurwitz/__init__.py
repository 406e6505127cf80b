"""Tropical complex and real double Hurwitz numbers of the line, with brute-force cross-checks."""
from .errors import DegreeCeilingExceeded, HurwitzError, InvalidInput, SignLengthMismatch, UnsupportedConfiguration
from .graphs import (
    MonodromyGraph,
    automorphism_count,
    canonicalize,
    check_graph,
    complex_multiplicity,
    complex_tropical_double_hurwitz,
    enumerate_covers,
    marked_end_count,
    to_dot,
    wieners_and_forks,
)
from .local import expand, general_multiplicity, local_h53, local_h54, shrink
from .partitions import Partition, ProfileTuple, aut_count, aut_count_tuple, enumerate_partitions, simple_profile
from .signed import (
    LocalRuleTable,
    SignedCover,
    decorations,
    default_table,
    marked_number,
    multiplicity_signed,
    real_tropical_double_hurwitz,
    signed_dot,
)
from .symgroup import Perm, complex_double_hurwitz_oracle, complex_hurwitz_sphere, real_double_hurwitz_oracle

__all__ = [
    "DegreeCeilingExceeded",
    "HurwitzError",
    "InvalidInput",
    "SignLengthMismatch",
    "UnsupportedConfiguration",
    "MonodromyGraph",
    "automorphism_count",
    "canonicalize",
    "check_graph",
    "complex_multiplicity",
    "complex_tropical_double_hurwitz",
    "enumerate_covers",
    "marked_end_count",
    "to_dot",
    "wieners_and_forks",
    "expand",
    "general_multiplicity",
    "local_h53",
    "local_h54",
    "shrink",
    "Partition",
    "ProfileTuple",
    "aut_count",
    "aut_count_tuple",
    "enumerate_partitions",
    "simple_profile",
    "LocalRuleTable",
    "SignedCover",
    "decorations",
    "default_table",
    "marked_number",
    "multiplicity_signed",
    "real_tropical_double_hurwitz",
    "signed_dot",
    "Perm",
    "complex_double_hurwitz_oracle",
    "complex_hurwitz_sphere",
    "real_double_hurwitz_oracle",
]
