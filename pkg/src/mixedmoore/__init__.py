"""Search, verification and IP-model export for mixed radial Moore graphs of radius 2."""

from .errors import (AsymmetricEdge, ConflictingPair, DegreeParity, FixingViolated, Infeasible,
                     InvalidGraph, InvalidParams, MixedMooreError, ModelTooLarge, NonBinaryValue,
                     OrderMismatch, ParseError, SelfLoop, StubFailure, UnknownVariable,
                     UnreachablePair)
from .exact import SearchReport, solve_exact, symmetry_orbits
from .graph import (DegreeProfile, DistanceMatrix, MixedGraph, StatusVector, degree_profile,
                    distances, eccentricity_profile, format_graph, parse_graph, read_graph,
                    status_vector, write_graph)
from .heuristic import HeuristicConfig, random_regular_completion, solve_heuristic
from .lp import parse_lp, parse_solution, write_lp
from .model import IpModel, assignment_to_graph, build_model, graph_to_assignment, model_stats
from .moore import MooreProfile, MooreTree, moore_bound, moore_profile, moore_status, moore_tree, status_norm1
from .verify import MOORE, NEITHER, RADIAL_MOORE, VerificationReport, verify

__version__ = "0.1.0"
