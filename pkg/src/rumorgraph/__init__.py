"""Semi-supervised rumor detection over conversation propagation trees.

Claims (a source post plus its reply tree) are encoded with a graph
convolutional network and trained with a rumor-anchored supervised
contrastive loss plus a root-anchored mutual-information objective over
unlabeled claims, treating unlabeled data as the non-rumor background.
"""

from .diffcore import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
