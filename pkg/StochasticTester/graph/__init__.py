from .io import format_graph, load_graph, parse_graph, save_graph
from .models import CutReport, Graph, WitnessReport, WitnessSource
from .oracle import (
    component_sizes,
    connected_components,
    cut_report,
    cut_size,
    edge_connectivity,
    edge_connectivity_exhaustive,
    hamming_additions_to_connected,
    is_connected,
    is_k_connected,
    minimal_small_cut_sets,
    oracle_witness,
    potential,
    s_k_oracle,
)
