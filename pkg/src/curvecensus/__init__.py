"""Census of abelian group structures of elliptic curves over finite fields."""

from .arith import (
    PrimePower,
    as_prime_power,
    divisor_count,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    pi_progression,
    prime_powers_up_to,
    primes_up_to,
    quadratic_character,
)
from .classnum import (
    ClassNumberTable,
    build_table,
    class_number,
    fundamental_decomposition,
    is_discriminant,
    kronecker_H,
    reduced_forms,
)
from .census import (
    CensusEntry,
    CensusTable,
    GroupStructure,
    SweepRow,
    TraceData,
    admissible_trace,
    bounds_F,
    census,
    count_F,
    count_group_structures,
    f_per_trace,
    isogeny_class_size,
    proof_identities,
    st_partition,
    structure_exists,
    sum_F_upto,
    sweep,
    theta_constant,
    trace_data,
)

__version__ = "0.1.0"
