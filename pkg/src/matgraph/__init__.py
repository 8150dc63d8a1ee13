"""Graph distinguishability testbench.

Library and CLI for evaluating matrix-language sentences on graphs,
running Weisfeiler-Lehman refinement tests, building spectrally designed
message-passing convolution supports, counting small graphlets and
reproducing dataset-scale distinguishability censuses with random-weight
forward passes.
"""

from matgraph.graphcore import Graph, load_dataset, parse_graph6

__all__ = ["Graph", "load_dataset", "parse_graph6"]
