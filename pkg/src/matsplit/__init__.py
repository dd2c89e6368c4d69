"""Block-diagonal decomposability of matrices over local rings.

The base ring is the localization of Q[x1..xp] at the origin. The package
decides whether a matrix vanishing at the origin is equivalent, under
U*A*V with U, V invertible over the local ring, to a block-diagonal
matrix, and produces verifiable transformation certificates in the square
case. All arithmetic is exact.
"""

from .errors import (ConstantPartNonzeroError, DetMismatchError,
                     InternalInvariantViolation, NotInvertibleError,
                     NotSquareError, ParseError, ResourceBoundExceeded,
                     RingMismatchError, SemanticError, UnknownVariableError,
                     ZeroPolynomialError)
from .polyring import (DEGREVLEX, LEX, MonomialOrder, Polynomial, Ring,
                       elimination_order, parse_polynomial, try_exact_divide)
from .groebner import (GroebnerBasis, Ideal, Limits, MembershipCertificate,
                       buchberger, division, ideal_intersection,
                       ideal_product, ideal_quotient, ideal_sum,
                       member_with_certificate, normal_form, poly_gcd,
                       poly_lcm, syzygies)
from .localring import (LocalCertificate, LocalElement, LocalIdeal,
                        contains_power_of_maximal_ideal, ideal_order,
                        local_divide, local_ideal_contains, local_ideal_equal,
                        local_intersection, local_power, local_product,
                        local_sum, mutually_prime, parse_local_element)
from .matrices import (AuxiliaryB, FittingChain, LRMatrix,
                       SquareFreeCheckFailed, apply_equivalence,
                       buchsbaum_rim_b, fitting_chain_step_check,
                       is_square_free, matrix_syzygies)
from .decompose import (Certificate, CheckResult, ChipResult, DecompTrace,
                        DecompVerdict, JacobianReport, NotAugmentable,
                        Outcome, SplitNode, check_rectangular, check_square,
                        chip_constant_part, construct_certificate_square,
                        full_split, jacobian_obstruction, mf_augment,
                        power_decomposability_check)

__version__ = "0.1.0"
