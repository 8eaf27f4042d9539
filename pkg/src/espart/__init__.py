"""Elementary symmetric partitions: the maps pre_k, their image statistics,
rooted and color partition bijections, and exact checks of the identities
and conjectures relating them."""
from .espmap import pre_h, pre_k
from .partitions import Partition, PartitionFamily, enumerate_family
from .report import VerificationReport

__version__ = "0.1.0"

__all__ = ["Partition", "PartitionFamily", "enumerate_family", "pre_k", "pre_h", "VerificationReport"]
