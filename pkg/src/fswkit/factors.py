"""Token-aligned factor streams for parsed utterances.

Every utterance maps to eight streams of equal length. A box marker
contributes one row (marker letter, extent x, extent y, -1, -1, marker
letter, -1, -1); each placed symbol contributes its key, absolute position,
relative position ranks within its own sign, base core, column, and row.
Punctuation signs contribute a single row with relative ranks 0. Sort
prefixes carry no position and are excluded from the streams, so
reassembly yields the prefix-free form of the original utterance.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .errors import (
    EmptyList,
    MalformedSign,
    MisalignedStreams,
    OrphanPlacement,
    ValueOutOfRange,
)
from .fsw import (
    BOX_MARKERS,
    COORD_MAX,
    COORD_MIN,
    BoxedSign,
    Coordinate,
    Placement,
    PunctuationSign,
    Sign,
    SignBox,
    Utterance,
    is_punctuation,
    parse_symbol,
)

MARKER_FILLER = -1  # derived-stream value at box marker positions


class FactorMismatchWarning(UserWarning):
    """Derived factor streams disagree with values recomputed from symbol/x/y."""


@dataclass(frozen=True)
class FactorBundle:
    """Eight strictly aligned factor streams."""

    symbol: tuple[str, ...]
    x: tuple[int, ...]
    y: tuple[int, ...]
    x_rel: tuple[int, ...]
    y_rel: tuple[int, ...]
    core: tuple[str, ...]
    col: tuple[int, ...]
    row: tuple[int, ...]

    def __post_init__(self):
        lengths = {
            name: len(getattr(self, name))
            for name in ("symbol", "x", "y", "x_rel", "y_rel", "core", "col", "row")
        }
        if len(set(lengths.values())) != 1:
            raise MisalignedStreams(f"factor stream lengths differ: {lengths}")

    def __len__(self) -> int:
        return len(self.symbol)


@dataclass(frozen=True)
class ReconstructResult:
    """Reassembled utterance plus how many values were clamped per token."""

    utterance: Utterance
    clamps: tuple[int, ...]

    @property
    def clamp_count(self) -> int:
        return sum(self.clamps)


def relative_ranks(values: list[int]) -> list[int]:
    """Stable ascending rank of each value; ties keep source order."""
    if not values:
        raise EmptyList("cannot rank an empty list")
    order = sorted(range(len(values)), key=lambda i: (values[i], i))
    ranks = [0] * len(values)
    for rank, i in enumerate(order):
        ranks[i] = rank
    return ranks


def _sign_rows(sign: Sign) -> list[tuple[str, int, int, int, int, str, int, int]]:
    if isinstance(sign, PunctuationSign):
        s = sign.symbol
        return [
            (s.text(), sign.position.x, sign.position.y, 0, 0, s.core, s.col, s.row)
        ]
    box = sign.box
    rows = [
        (
            box.marker,
            box.extent.x,
            box.extent.y,
            MARKER_FILLER,
            MARKER_FILLER,
            box.marker,
            MARKER_FILLER,
            MARKER_FILLER,
        )
    ]
    if box.placements:
        xr = relative_ranks([p.position.x for p in box.placements])
        yr = relative_ranks([p.position.y for p in box.placements])
        for p, rx, ry in zip(box.placements, xr, yr):
            s = p.symbol
            rows.append(
                (s.text(), p.position.x, p.position.y, rx, ry, s.core, s.col, s.row)
            )
    return rows


def factorize(u: Utterance) -> FactorBundle:
    """Convert an utterance to its eight aligned factor streams."""
    rows: list[tuple] = []
    for sign in u.signs:
        rows.extend(_sign_rows(sign))
    if not rows:
        return FactorBundle((), (), (), (), (), (), (), ())
    cols = tuple(zip(*rows))
    return FactorBundle(*(tuple(c) for c in cols))


def _assemble(symbols, xs, ys) -> Utterance:
    """Segment a symbol stream into signs and rebuild the utterance.

    A marker letter opens a boxed sign; a punctuation symbol is a sign by
    itself; any other symbol is a placement of the currently open box.
    """
    signs: list[Sign] = []
    open_marker: str | None = None
    open_extent: Coordinate | None = None
    open_placements: list[Placement] = []

    def close():
        nonlocal open_marker
        if open_marker is not None:
            signs.append(
                BoxedSign(None, SignBox(open_marker, open_extent, tuple(open_placements)))
            )
            open_marker = None
            open_placements.clear()

    for i, token in enumerate(symbols):
        x, y = xs[i], ys[i]
        for name, v in (("x", x), ("y", y)):
            if not COORD_MIN <= v <= COORD_MAX:
                raise ValueOutOfRange(
                    f"{name}={v} at stream position {i + 1} outside "
                    f"[{COORD_MIN}, {COORD_MAX}]"
                )
        if token in BOX_MARKERS:
            close()
            open_marker = token
            open_extent = Coordinate(x, y)
        elif token.startswith("S"):
            sym = parse_symbol(token)
            if is_punctuation(sym):
                close()
                signs.append(PunctuationSign(sym, Coordinate(x, y)))
            else:
                if open_marker is None:
                    raise OrphanPlacement(
                        f"symbol {token} at stream position {i + 1} appears "
                        "before any box marker"
                    )
                open_placements.append(Placement(sym, Coordinate(x, y)))
        else:
            raise MalformedSign(
                f"token {token!r} at stream position {i + 1} is neither a "
                "box marker nor a symbol"
            )
    close()
    return Utterance(tuple(signs))


def defactorize(b: FactorBundle) -> Utterance:
    """Rebuild an utterance from a bundle.

    Only the symbol/x/y streams drive reassembly. The derived streams are
    checked against recomputed values; disagreement emits a
    FactorMismatchWarning instead of failing, since decoder outputs may be
    internally inconsistent.
    """
    u = _assemble(b.symbol, b.x, b.y)
    expected = factorize(u)
    for name in ("x_rel", "y_rel", "core", "col", "row"):
        got = getattr(b, name)
        want = getattr(expected, name)
        if got != want:
            diff = next(i for i in range(len(want)) if got[i] != want[i])
            warnings.warn(
                f"derived stream {name!r} disagrees with recomputed values "
                f"at position {diff + 1}: {got[diff]!r} != {want[diff]!r}",
                FactorMismatchWarning,
                stacklevel=2,
            )
    return u


def reconstruct(symbols, xs, ys) -> ReconstructResult:
    """Assemble decoder output streams, clamping positions into 250..750."""
    if not (len(symbols) == len(xs) == len(ys)):
        raise MisalignedStreams(
            f"stream lengths differ: symbol={len(symbols)} x={len(xs)} y={len(ys)}"
        )
    clamped_x, clamped_y, clamps = [], [], []
    for x, y in zip(xs, ys):
        cx = min(max(x, COORD_MIN), COORD_MAX)
        cy = min(max(y, COORD_MIN), COORD_MAX)
        clamps.append((cx != x) + (cy != y))
        clamped_x.append(cx)
        clamped_y.append(cy)
    return ReconstructResult(
        utterance=_assemble(tuple(symbols), tuple(clamped_x), tuple(clamped_y)),
        clamps=tuple(clamps),
    )
