"""Cellular automata over finite algebraic alphabets.

Build CA over finite groups and the lattices ``Z``/``Z2``, decide whether a CA
is an endomorphism of the configuration algebra through its local rule, and
enumerate and count the endomorphic ones.
"""

from .algebra import (
    FiniteAlgebra,
    HomMap,
    Operation,
    PowerAlgebra,
    boolean_algebra,
    check_entropic,
    cyclic_group_algebra,
    eval_op,
    hom_algebra_op,
    is_entropic,
    is_homomorphism,
    load_algebra,
    power_algebra,
    set_algebra,
    vector_space,
)
from .automata import (
    CellularAutomaton,
    LocalRule,
    apply,
    compose,
    config_op,
    eca,
    extend_memory,
    is_endomorphic,
    is_shift_equivariant,
    minimal_memory,
    pointwise_combine,
    recover_local,
    wolfram_number,
)
from .boolean import boolean_homs, boolean_view, kernel, maximal_ideals, principal_ideal
from .endo import (
    GroupAlgebraElement,
    classify_eca,
    convolve,
    count_endoca,
    enumerate_endoca,
    psi,
    psi_inverse,
    verify_direct_limit,
    verify_group_algebra,
    verify_phi,
)
from .errors import AlgCAError, CapExceeded, NotEntropicError, ParseError, ValidationError
from .groups import (
    Z,
    Z2,
    Configuration,
    FiniteGroup,
    LatticeGroup,
    MemorySet,
    cyclic_group,
    load_group,
    product_set,
    shift,
    symmetric_group,
)
from .homs import count_homs, enumerate_endomorphisms, enumerate_homs, module_homs, power_homs
from .report import Check, Report
from .suites import SUITES, run_suite

__version__ = "0.1.0"
