"""Bi-reversible automata, their square complexes, and quaternion lattices."""

from .automata import (
    Automaton,
    AutomatonMorphism,
    all_automata,
    are_isomorphic,
    collapse_morphism,
    dual,
    eight_orbit,
    find_isomorphism,
    format_aut,
    inverse,
    inverse_closure,
    is_bireversible,
    is_invertible,
    is_morphism,
    is_reversible,
    parse_aut,
    validate,
)
from .complexes import (
    Edge,
    SquareComplex,
    automaton_from_directed,
    automaton_from_vht,
    build_sigma,
    format_sqc,
    height,
    is_vht,
    link,
    normal_form,
    parse_sqc,
    satisfies_minimal_link,
    swap_vh,
)
from .analysis import freeness_certificate, growth_table, infinite_order_witness, separating_depth
from .errors import BireversibleError, FormatError
from .quaternions import Quaternion, build_lattice_complex, enumerate_generators, lattice_automaton, solve_square
from .tree import acts_trivially, act_on_signed, apply, apply_word, portrait, rectangle, triviality
from .words import SignedSymbol, parse_word

__version__ = "0.1.0"
