"""Cuntz algebras, recursive fermion systems and the CAR algebra.

Exact symbolic arithmetic in the Cuntz algebras O_d, embeddings and
endomorphisms, permutation representations and their branching, the
embedding of the CAR algebra by recursive fermion systems, the induced
endomorphisms and automorphisms of the CAR algebra, quasi-free states and
the verification suites that tie them together.
"""

from .algebra import Element, adjoint, canonical_form, check_cuntz_family, equals
from .carpoly import CarPolynomial, car_anticommutator, car_equal
from .induced import CarMorphism, closed_form_morphism, induced_automorphism, restrict_endomorphism
from .morphisms import Morphism, apply, catalogue, compose, phi_sigma
from .parse import format_value, parse
from .reps import Ket, PermRep
from .rfs import Rfs, from_cuntz, standard_rfs, to_cuntz, variant_rfs
from .states import QuasiFockState, fock_apply
from .suites import Report, SuiteConfig, run_suite

__version__ = "0.1.0"

__all__ = [
    "CarMorphism",
    "CarPolynomial",
    "Element",
    "Ket",
    "Morphism",
    "PermRep",
    "QuasiFockState",
    "Report",
    "Rfs",
    "SuiteConfig",
    "adjoint",
    "apply",
    "canonical_form",
    "car_anticommutator",
    "car_equal",
    "catalogue",
    "check_cuntz_family",
    "closed_form_morphism",
    "compose",
    "equals",
    "fock_apply",
    "format_value",
    "from_cuntz",
    "induced_automorphism",
    "parse",
    "phi_sigma",
    "restrict_endomorphism",
    "run_suite",
    "standard_rfs",
    "to_cuntz",
    "variant_rfs",
]
