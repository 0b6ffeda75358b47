"""In-process access to the SignWriting toolkit for scripting pipelines.

Every function takes and returns plain data: text, integer lists, and
mappings keyed by the factor stream names ``symbol``, ``feat_x``,
``feat_y``, ``feat_x_rel``, ``feat_y_rel``, ``feat_core``, ``feat_col``,
``feat_row``. Semantics match the ``fswkit`` CLI byte for byte; toolkit
errors surface as BoundError carrying the originating error kind.
"""

from __future__ import annotations

import functools
import inspect
from typing import Iterable, Mapping, Sequence

import fswkit
from fswkit import errors as _errors
from fswkit import factors as _factors
from fswkit import fsw as _fsw
from fswkit import metrics as _metrics
from fswkit import swu as _swu

__version__ = fswkit.__version__

STREAM_NAMES = (
    "symbol", "feat_x", "feat_y", "feat_x_rel", "feat_y_rel",
    "feat_core", "feat_col", "feat_row",
)

# factor-stream field on FactorBundle for each exposed mapping key
_FIELD_FOR_STREAM = {
    "symbol": "symbol", "feat_x": "x", "feat_y": "y",
    "feat_x_rel": "x_rel", "feat_y_rel": "y_rel",
    "feat_core": "core", "feat_col": "col", "feat_row": "row",
}

# one bound kind per toolkit error class, discovered so the mapping can
# never drift out of sync with the primary component
ERROR_KINDS: dict[type, str] = {
    cls: name
    for name, cls in inspect.getmembers(_errors, inspect.isclass)
    if issubclass(cls, _errors.FswError) and cls is not _errors.FswError
}


class BoundError(Exception):
    """Toolkit error mirrored across the binding boundary."""

    def __init__(self, kind: str, message: str, location: tuple[int, int] | None = None):
        super().__init__(message)
        self.kind = kind
        self.message = message
        self.location = location


def _bound(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except _errors.FswError as exc:
            location = None if exc.column is None else (1, exc.column)
            raise BoundError(ERROR_KINDS[type(exc)], exc.message, location) from exc

    return wrapper


@_bound
def parse_utterance(text: str) -> dict:
    """Parse FSW text into a plain-dict tree (see serialize_utterance)."""
    return _fsw.utterance_to_dict(_fsw.parse_utterance(text))


@_bound
def serialize_utterance(tree: Mapping) -> str:
    return _fsw.serialize_utterance(_fsw.utterance_from_dict(dict(tree)))


@_bound
def factorize(text: str) -> dict:
    """FSW text to a mapping of the eight aligned factor streams."""
    bundle = _factors.factorize(_fsw.parse_utterance(text))
    return {
        name: list(getattr(bundle, field))
        for name, field in _FIELD_FOR_STREAM.items()
    }


@_bound
def defactorize(streams: Mapping) -> str:
    """Factor streams back to FSW text.

    Requires ``symbol``, ``feat_x``, and ``feat_y``; when all eight streams
    are present the derived ones are consistency-checked (mismatches emit
    the toolkit's FactorMismatchWarning).
    """
    if all(name in streams for name in STREAM_NAMES):
        bundle = _factors.FactorBundle(
            **{
                field: tuple(streams[name])
                for name, field in _FIELD_FOR_STREAM.items()
            }
        )
        return _fsw.serialize_utterance(_factors.defactorize(bundle))
    result = _factors.reconstruct(
        list(streams["symbol"]), list(streams["feat_x"]), list(streams["feat_y"])
    )
    return _fsw.serialize_utterance(result.utterance)


@_bound
def fsw_to_swu(text: str) -> str:
    return _swu.fsw_to_swu(text)


@_bound
def swu_to_fsw(text: str) -> str:
    return _swu.swu_to_fsw(text)


@_bound
def bleu(hypotheses: Sequence[Sequence[str]], references: Sequence[Sequence[str]]) -> float:
    return _metrics.bleu(hypotheses, references)


@_bound
def chrf(
    hypotheses: Sequence[Sequence[str]],
    references: Sequence[Sequence[str]],
    beta: float = 2.0,
    char_order: int = 6,
    word_order: int = 0,
) -> float:
    return _metrics.chrf(hypotheses, references, beta=beta,
                         char_order=char_order, word_order=word_order)


@_bound
def mae_positions(predicted: Sequence[int], gold: Sequence[int]) -> float:
    return _metrics.mae_positions(predicted, gold)


@_bound
def topn_accuracy(
    nbest_lists: Sequence[Sequence[str]],
    references: Sequence[str],
    n: int,
    casefold: bool = False,
) -> float:
    return _metrics.topn_accuracy(nbest_lists, references, n, casefold=casefold)


# batched variants amortize call overhead for corpus-scale use

@_bound
def factorize_batch(texts: Iterable[str]) -> list[dict]:
    return [factorize(t) for t in texts]


@_bound
def convert_batch(texts: Iterable[str], to: str = "swu") -> list[str]:
    convert = fsw_to_swu if to == "swu" else swu_to_fsw
    return [convert(t) for t in texts]


_SURFACE = (
    parse_utterance, serialize_utterance, factorize, defactorize,
    fsw_to_swu, swu_to_fsw, bleu, chrf, mae_positions, topn_accuracy,
    factorize_batch, convert_batch,
)


def bind_all() -> dict[str, object]:
    """Name-to-callable map of the full bound surface."""
    return {fn.__name__: fn for fn in _SURFACE}


__all__ = [
    "BoundError", "ERROR_KINDS", "STREAM_NAMES", "__version__", "bind_all",
    *(fn.__name__ for fn in _SURFACE),
]
