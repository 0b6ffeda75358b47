"""Toolkit for SignWriting text: FSW parsing, factorization, SWU conversion,
corpus preparation, and translation evaluation metrics."""

from .bpe import BpeModel, apply_bpe, learn_bpe, undo_bpe
from .corpus import CorpusRecord, SplitResult, clean, emit_factor_files, prepare, split, stats, tag
from .errors import FswError
from .factors import (
    FactorBundle,
    FactorMismatchWarning,
    ReconstructResult,
    defactorize,
    factorize,
    reconstruct,
    relative_ranks,
)
from .fsw import (
    BoxedSign,
    Coordinate,
    Placement,
    PunctuationSign,
    Sign,
    SignBox,
    SortPrefix,
    SymbolId,
    Utterance,
    is_punctuation,
    parse_symbol,
    parse_utterance,
    serialize_utterance,
    strip_sort_prefixes,
)
from .metrics import EvalReport, bleu, chrf, mae_positions, topn_accuracy
from .swu import SwuMappingTable, fsw_to_swu, load_mapping, swu_to_fsw

__version__ = "0.1.0"

__all__ = [
    "BpeModel", "apply_bpe", "learn_bpe", "undo_bpe",
    "CorpusRecord", "SplitResult", "clean", "emit_factor_files", "prepare",
    "split", "stats", "tag",
    "FswError",
    "FactorBundle", "FactorMismatchWarning", "ReconstructResult",
    "defactorize", "factorize", "reconstruct", "relative_ranks",
    "BoxedSign", "Coordinate", "Placement", "PunctuationSign", "Sign",
    "SignBox", "SortPrefix", "SymbolId", "Utterance",
    "is_punctuation", "parse_symbol", "parse_utterance", "serialize_utterance",
    "strip_sort_prefixes",
    "EvalReport", "bleu", "chrf", "mae_positions", "topn_accuracy",
    "SwuMappingTable", "fsw_to_swu", "load_mapping", "swu_to_fsw",
    "__version__",
]
