"""Long paths and cycles above the degeneracy of a graph."""

from .colorpath import TrialBudget, TrialLog, longest_cycle_at_least, longest_path_at_least, st_path_at_least
from .decompose import blocks_and_cuts, core_decomposition, d_core, degeneracy, is_two_connected
from .errors import FormatError, InternalError, PreconditionError
from .graph import CYCLE, PATH, Graph, Witness, parse_graph, read_graph, serialize_graph, verify_witness
from .reroute import TerminalPairs, cover_paths
from .segments import SegmentSystem, solve_extended_segments, solve_segments, validate_system
from .solver import SolverReport, dirac_cycle, erdos_gallai_path, lcad, lpad

__version__ = "0.1.0"
