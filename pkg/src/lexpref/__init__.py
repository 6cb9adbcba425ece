"""Lexicographic preferences: comparison oracles, axiom checks with witnesses,
classification, and discrete-choice audits."""

from .core import (FIRST, INCOMPARABLE, INDIFFERENT, SECOND, Oracle, Outcome, alternative,
                   compare, embed, induce, sign_pattern, strict_sets, totally_different)
from .errors import (BadGridSpec, CycleError, DimensionError, DimensionTooLarge,
                     IncompleteOracle, IncompleteRelation, LexprefError, LinkFailure,
                     MonotonicityPrereqFailed, ParseError, SchemaMismatch, SpecError,
                     SubsetError)
from .grid import (ContourBundle, Grid, GridSet, build_grid, candidate_unhappy_sets, contours,
                   fit_halfplane, is_unhappy, neighborhood, parse_grid)
from .verdict import AxiomVerdict, EpsSchedule, Status, Witness
from .axioms import (check_axiom, check_complete_transitive, check_imia, check_independence,
                     check_mild_continuity, check_noncompensation, check_noncompensation_full,
                     check_nraa, check_strong_monotonicity, run_pairwise)
from .classify import (ClassificationReport, ImportanceRelation, LexOrder, chain_witness,
                       classify_lexicographic, classify_pairwise_lex, detect_dominant,
                       extract_importance, order_attributes)
from .choicedata import (AttributeSchema, AuditReport, ChoiceObservation, RespondentRecord,
                         audit, detect_dominant_behavior, lex_consistency, load_choices,
                         load_schema)
from .zoo import (make_cobb_douglas, make_dominant, make_ex0, make_ex01, make_leximax,
                  make_lex_semiorder, make_lexicographic, make_min_multiplicative,
                  make_noncomparable_incomplete, make_noncomparable_indifferent,
                  make_pairwise_lex_ex2, make_perfect_substitutes, make_special,
                  make_utility_preference, parse_oracle)

__version__ = "0.1.0"
