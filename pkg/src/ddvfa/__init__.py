"""Fuzzy ART family clustering: fuzzy ART, DVFA, DDVFA and Merge ART."""

from .datasets import (Dataset, DatasetParseError, linear_normalize, load_atom, load_csv,
                       load_spiral, load_target, make_spirals, shuffle)
from .ddvfa import DDVFA, LinkageMethod, LocalArt, global_activation, global_match
from .dvfa import DVFA
from .fuzzy_art import (FuzzyART, activation, complement_code, learn, match_normalized,
                        match_raw)
from .merge_art import (aggregate_pairs, compress_node, merge_pass, merge_scores,
                        pair_matrices, run_merge_art)
from .validation import PairCounts, adjusted_rand, compactness, pair_counts
from .vat import pairwise_dissimilarity, vat_order

__version__ = "0.1.0"

__all__ = [
    "DDVFA", "DVFA", "Dataset", "DatasetParseError", "FuzzyART", "LinkageMethod",
    "LocalArt", "PairCounts", "activation", "adjusted_rand", "aggregate_pairs",
    "compactness", "complement_code", "compress_node", "global_activation",
    "global_match", "learn", "linear_normalize", "load_atom", "load_csv", "load_spiral",
    "load_target", "make_spirals", "match_normalized", "match_raw", "merge_pass",
    "merge_scores", "pair_counts", "pairwise_dissimilarity", "run_merge_art", "shuffle",
    "vat_order",
]
