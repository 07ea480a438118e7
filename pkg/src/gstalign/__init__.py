"""gstalign: anchor-based multiple sequence alignment for protocol messages.

Builds a generalized suffix tree over a set of short byte sequences,
collects the sub-words common to all of them, and aligns the set by
recursively anchoring on common sub-sequences.  Ships classical baselines
(Levenshtein, Needleman-Wunsch, a progressive aligner), alignment-quality
metrics, a benchmark harness and a regex-prototype emitter.
"""

__version__ = "0.1.0"

from .corpus import (  # noqa: F401
    Corpus,
    CorpusError,
    Sequence,
    from_bytes,
    generate_synthetic,
    load_fasta,
    load_lines,
    take_prefix,
)
from .gst import (  # noqa: F401
    Gst,
    MultiSubWord,
    build_gst,
    count_combinations,
    extract_msws,
    fully_coloured_values,
)
from .msalign import (  # noqa: F401
    Anchor,
    AnchorChain,
    Segment,
    StrategyConfig,
    align,
    regex_skeleton,
    remove_full_overlaps,
    render,
    restrict,
    select_anchor,
    skeleton_matches,
    trim_partial_overlaps,
    validate_chain,
)
from .baseline import (  # noqa: F401
    DISTANCE_SCORING,
    GuideTree,
    PairwiseAlignment,
    Scoring,
    build_guide_tree,
    clustalw_lite,
    levenshtein,
    needleman_wunsch,
    progressive_align,
    similarity_matrix,
)
from .metrics import (  # noqa: F401
    AlignmentReport,
    FitResult,
    fit_scaling,
    overlap_chars,
    overlap_chars_matrix,
    sp_edit_distance,
)
from .bench import BenchPlan, compare_backends, run_bench  # noqa: F401
