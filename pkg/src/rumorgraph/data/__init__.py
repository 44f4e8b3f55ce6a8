"""Claims, propagation trees, ingestion, featurization, batching, splits."""

from .batch import (Batch, PreparedClaim, assemble_batch, infer_classes,
                    make_batch, prepare_claim)
from .graph import DIRECTIONS, build_adjacency, gcn_normalize
from .parse import (ClaimFormatError, load_dataset, parse_claim_json,
                    save_dataset, serialize_claim)
from .splits import (make_balanced_split, make_fewshot_split,
                     make_imbalanced_testset)
from .stats import DepthStats, depth_stats, section_distribution
from .text import Featurizer, featurize, tokenize
from .types import (BINARY_CLASSES, FOUR_CLASSES, RUMOR_LABELS,
                    VALID_SECTIONS, Claim, Dataset, Post, PropagationTree)

__all__ = [
    "Batch", "PreparedClaim", "assemble_batch", "infer_classes", "make_batch",
    "prepare_claim", "DIRECTIONS", "build_adjacency", "gcn_normalize",
    "ClaimFormatError", "load_dataset", "parse_claim_json", "save_dataset",
    "serialize_claim", "make_balanced_split", "make_fewshot_split",
    "make_imbalanced_testset", "DepthStats", "depth_stats",
    "section_distribution", "Featurizer", "featurize", "tokenize",
    "BINARY_CLASSES", "FOUR_CLASSES", "RUMOR_LABELS", "VALID_SECTIONS",
    "Claim", "Dataset", "Post", "PropagationTree",
]
