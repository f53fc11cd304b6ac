"""Reconstruction of singular connectivity in 1-to-1 multi-block structured grids."""

from .errors import (
    BadTransform,
    EngineFailure,
    ExtentMismatch,
    InsufficientPoints,
    InvalidNode,
    InvalidPatch,
    InvalidSpec,
    MalformedSyntax,
    MBCError,
    MbconnError,
    RangeOutOfBounds,
    UnknownBlockId,
)
from .fast import reconstruct_fast
from .grid import (
    BlockDims,
    Grid,
    IndexRange,
    InterfacePatch,
    NodeRef,
    SingularityReport,
    format_report,
    is_edge_node,
)
from .mbc import parse_mbc, write_mbc
from .naive import reconstruct_naive
from .oracle import reconstruct_oracle, reports_equal
from .pairs import bucketize, enumerate_all, enumerate_pairs
from .synth import SynthSpec, expected_census, generate_split, scaling_series

__version__ = "0.1.0"
