"""Finite Yang-Baxter solutions and skew braces as explicit tables."""

from .errors import (CapExceeded, ConstructionRejected, Undecided,
                     ValidationError, YbeError)
from .solutions import (FinSolution, LyubashenkoReport, SolutionProfile,
                        affine_prime_solution, are_isomorphic,
                        classify_lyubashenko, congruence_closure,
                        derived_solution, diagonal_map, is_simple_bruteforce,
                        profile, quotient_solution, retraction, sigma_table,
                        validate_solution)
from .braces import (BraceInvariants, GeneratingSubsetReport, Ideal,
                     MinIdealReport, PermutationBrace, SkewBrace,
                     associated_solution, brace_invariants, brace_isomorphic,
                     ideal_closure, permutation_brace, quotient_brace,
                     restricted_solution, simplicity_by_generators,
                     simplicity_by_min_ideal, smallest_nonzero_ideal,
                     trivial_brace, validate_brace, validate_ideal)
from .constructions import (AbelianVBuild, AbelianVData, ByottBuild,
                            HypothesisCheck, IsoReport, NonabelianVData,
                            abelian_v_data, abelian_v_build, build_example,
                            byott_build, check_abelian_v, check_nonabelian_v,
                            conjugation_quandle, iso_criterion,
                            lyubashenko_build, nonabelian_v_build,
                            nonabelian_v_data, permutation_solution)
from .corpus import CorpusEntry, standard_corpus

__all__ = [
    "AbelianVBuild",
    "AbelianVData",
    "BraceInvariants",
    "ByottBuild",
    "CapExceeded",
    "ConstructionRejected",
    "CorpusEntry",
    "FinSolution",
    "GeneratingSubsetReport",
    "HypothesisCheck",
    "Ideal",
    "IsoReport",
    "LyubashenkoReport",
    "MinIdealReport",
    "NonabelianVData",
    "PermutationBrace",
    "SkewBrace",
    "SolutionProfile",
    "Undecided",
    "ValidationError",
    "YbeError",
    "abelian_v_build",
    "abelian_v_data",
    "affine_prime_solution",
    "are_isomorphic",
    "associated_solution",
    "brace_invariants",
    "brace_isomorphic",
    "build_example",
    "byott_build",
    "check_abelian_v",
    "check_nonabelian_v",
    "classify_lyubashenko",
    "congruence_closure",
    "conjugation_quandle",
    "derived_solution",
    "diagonal_map",
    "ideal_closure",
    "is_simple_bruteforce",
    "iso_criterion",
    "lyubashenko_build",
    "nonabelian_v_build",
    "nonabelian_v_data",
    "permutation_brace",
    "permutation_solution",
    "profile",
    "quotient_brace",
    "quotient_solution",
    "restricted_solution",
    "retraction",
    "sigma_table",
    "simplicity_by_generators",
    "simplicity_by_min_ideal",
    "smallest_nonzero_ideal",
    "standard_corpus",
    "trivial_brace",
    "validate_brace",
    "validate_ideal",
    "validate_solution",
]

__version__ = "0.1.0"
