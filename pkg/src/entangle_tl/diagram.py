"""Decorated Temperley-Lieb / Brauer diagram calculus.

A diagram is a perfect matching on two rows of points (top arity n, bottom
arity m) whose strands may carry ordered operator decorations, together with
already-extracted closed loops and an exact scalar bookkeeping record.
Crossings are allowed (no planarity restriction); is_planar() identifies the
Temperley-Lieb sub-case.

Orientation: diagrams consume input at the top and emit at the bottom, so
evaluate() returns a d^bottom x d^top matrix and composing a over b gives
evaluate(b) @ evaluate(a).

Decoration semantics: every stored decoration is the operator applied in the
downward (flow) direction at its position on the strand, with arc decorations
normalized onto the branch of the strand's canonical start endpoint (top
endpoints, left to right, precede bottom endpoints).  Walking a strand from
its start, a decoration encountered while moving upward contributes its
transpose; composition keeps this normal form by toggling the transpose
flavor every time a traversal runs against the flow.  Each arc carries a
d^(-1/2) normalization held as an exact half-integer power of d in the scalar
until evaluation.
"""

from __future__ import annotations

import json
import string
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .linalg import DimensionError

FLAVORS = ("plain", "transpose", "dagger", "conjugate")

_TRANSPOSE_TOGGLE = {
    "plain": "transpose",
    "transpose": "plain",
    "dagger": "conjugate",
    "conjugate": "dagger",
}
_DAGGER_TOGGLE = {
    "plain": "dagger",
    "dagger": "plain",
    "transpose": "conjugate",
    "conjugate": "transpose",
}

TOP = "T"
BOTTOM = "B"


@dataclass(frozen=True, order=True)
class Endpoint:
    side: str
    index: int

    def __post_init__(self):
        if self.side not in (TOP, BOTTOM):
            raise ValueError(f"endpoint side must be 'T' or 'B', got {self.side!r}")
        if self.index < 0:
            raise ValueError("endpoint index must be nonnegative")

    @property
    def sort_key(self):
        return (0 if self.side == TOP else 1, self.index)

    def encode(self) -> str:
        return f"{self.side}{self.index}"

    @staticmethod
    def decode(text: str) -> "Endpoint":
        if len(text) < 2 or text[0] not in (TOP, BOTTOM) or not text[1:].isdigit():
            raise ValueError(f"bad endpoint {text!r}")
        return Endpoint(text[0], int(text[1:]))


@dataclass(frozen=True)
class Decoration:
    op: str
    flavor: str = "plain"

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"flavor must be one of {FLAVORS}, got {self.flavor!r}")

    def toggle_transpose(self) -> "Decoration":
        return Decoration(self.op, _TRANSPOSE_TOGGLE[self.flavor])

    def toggle_dagger(self) -> "Decoration":
        return Decoration(self.op, _DAGGER_TOGGLE[self.flavor])

    def matrix(self, ops: dict) -> np.ndarray:
        if self.op not in ops:
            raise ValueError(f"unresolvable operator label {self.op!r}")
        m = linalg.as_matrix(ops[self.op])
        if self.flavor == "plain":
            return m
        if self.flavor == "transpose":
            return m.T
        if self.flavor == "dagger":
            return m.conj().T
        return m.conj()

    def to_dict(self) -> dict:
        return {"op": self.op, "flavor": self.flavor}

    @staticmethod
    def from_dict(data: dict) -> "Decoration":
        return Decoration(str(data["op"]), str(data["flavor"]))


@dataclass(frozen=True)
class Strand:
    start: Endpoint
    end: Endpoint
    decorations: tuple = ()

    def __post_init__(self):
        if self.start == self.end:
            raise ValueError("a strand cannot connect an endpoint to itself")
        object.__setattr__(self, "decorations", tuple(self.decorations))

    @property
    def is_arc(self) -> bool:
        return self.start.side == self.end.side

    def canonical(self) -> "Strand":
        """Reorder so the canonical start comes first, adjusting flavors.

        Swapping the stored endpoints transposes the strand tensor, so the
        decoration list reverses; on arcs (where the walk parity at the
        decorations is the same from either end) each decoration additionally
        toggles transpose, while on through strands the flipped start side
        absorbs the transpose and the flavors stay put.
        """
        if self.start.sort_key <= self.end.sort_key:
            return self
        decos = tuple(reversed(self.decorations))
        if self.is_arc:
            decos = tuple(d.toggle_transpose() for d in decos)
        return Strand(self.end, self.start, decos)


@dataclass(frozen=True)
class ScalarFactor:
    """coeff * d^(half_power_of_d / 2), kept exact until evaluation."""

    coeff: complex = 1.0 + 0.0j
    half_power_of_d: int = 0

    def numeric(self, d: int) -> complex:
        return complex(self.coeff) * float(d) ** (self.half_power_of_d / 2.0)

    def __mul__(self, other: "ScalarFactor") -> "ScalarFactor":
        return ScalarFactor(complex(self.coeff) * complex(other.coeff),
                            self.half_power_of_d + other.half_power_of_d)


@dataclass(frozen=True)
class DecoratedDiagram:
    top: int
    bottom: int
    strands: tuple = ()
    loops: tuple = ()
    scalar: ScalarFactor = field(default_factory=ScalarFactor)

    def __post_init__(self):
        if self.top < 0 or self.bottom < 0:
            raise DimensionError("arities must be nonnegative")
        if (self.top + self.bottom) % 2 != 0:
            raise ValueError("top + bottom arity must be even")
        strands = tuple(sorted((s.canonical() for s in self.strands),
                               key=lambda s: s.start.sort_key))
        seen = set()
        for s in strands:
            for e in (s.start, s.end):
                limit = self.top if e.side == TOP else self.bottom
                if e.index >= limit:
                    raise ValueError(f"endpoint {e.encode()} out of range")
                if e in seen:
                    raise ValueError(f"endpoint {e.encode()} used twice")
                seen.add(e)
        if len(seen) != self.top + self.bottom:
            raise ValueError("strands must form a perfect matching on all endpoints")
        object.__setattr__(self, "strands", strands)
        object.__setattr__(self, "loops", tuple(tuple(l) for l in self.loops))


def identity_diagram(n: int) -> DecoratedDiagram:
    strands = tuple(Strand(Endpoint(TOP, i), Endpoint(BOTTOM, i)) for i in range(n))
    return DecoratedDiagram(n, n, strands)


def e_gen(i: int, n: int) -> DecoratedDiagram:
    """TL idempotent generator: top and bottom arcs joining points i-1, i
    (1-based i), carrying one cup and one cap normalization each."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator position {i} out of range for n={n}")
    strands = [Strand(Endpoint(TOP, i - 1), Endpoint(TOP, i)),
               Strand(Endpoint(BOTTOM, i - 1), Endpoint(BOTTOM, i))]
    for j in range(n):
        if j not in (i - 1, i):
            strands.append(Strand(Endpoint(TOP, j), Endpoint(BOTTOM, j)))
    return DecoratedDiagram(n, n, tuple(strands), scalar=ScalarFactor(1.0, -2))


def v_gen(i: int, n: int) -> DecoratedDiagram:
    """Virtual crossing generator: strands i-1 and i cross (1-based i)."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator position {i} out of range for n={n}")
    strands = [Strand(Endpoint(TOP, i - 1), Endpoint(BOTTOM, i)),
               Strand(Endpoint(TOP, i), Endpoint(BOTTOM, i - 1))]
    for j in range(n):
        if j not in (i - 1, i):
            strands.append(Strand(Endpoint(TOP, j), Endpoint(BOTTOM, j)))
    return DecoratedDiagram(n, n, tuple(strands))


def cup_diagram() -> DecoratedDiagram:
    """The (0, 2) diagram emitting a maximally entangled pair."""
    return DecoratedDiagram(0, 2, (Strand(Endpoint(BOTTOM, 0), Endpoint(BOTTOM, 1)),),
                            scalar=ScalarFactor(1.0, -1))


def cap_diagram() -> DecoratedDiagram:
    """The (2, 0) diagram absorbing a pair into a maximally entangled bra."""
    return DecoratedDiagram(2, 0, (Strand(Endpoint(TOP, 0), Endpoint(TOP, 1)),),
                            scalar=ScalarFactor(1.0, -1))


def tensor(a: DecoratedDiagram, b: DecoratedDiagram) -> DecoratedDiagram:
    """Side-by-side placement: b's points shift right of a's."""
    def shift(e: Endpoint) -> Endpoint:
        off = a.top if e.side == TOP else a.bottom
        return Endpoint(e.side, e.index + off)

    strands = list(a.strands)
    strands.extend(Strand(shift(s.start), shift(s.end), s.decorations) for s in b.strands)
    return DecoratedDiagram(a.top + b.top, a.bottom + b.bottom, tuple(strands),
                            a.loops + b.loops, a.scalar * b.scalar)


def decorate(diag: DecoratedDiagram, strand_index: int, position: int,
             decoration: Decoration) -> DecoratedDiagram:
    """Insert a decoration at the stated position of a strand's ordered list."""
    if not 0 <= strand_index < len(diag.strands):
        raise ValueError(f"strand index {strand_index} out of range")
    s = diag.strands[strand_index]
    if not 0 <= position <= len(s.decorations):
        raise ValueError(f"decoration position {position} out of range")
    decos = s.decorations[:position] + (decoration,) + s.decorations[position:]
    strands = list(diag.strands)
    strands[strand_index] = Strand(s.start, s.end, decos)
    return DecoratedDiagram(diag.top, diag.bottom, tuple(strands), diag.loops, diag.scalar)


def is_planar(diag: DecoratedDiagram) -> bool:
    """True when no two strands cross (Temperley-Lieb sub-case).

    Points are placed on a circle: top row left to right, then bottom row
    right to left; the matching is planar iff no two chords interleave.
    """
    def pos(e: Endpoint) -> int:
        if e.side == TOP:
            return e.index
        return diag.top + (diag.bottom - 1 - e.index)

    chords = [tuple(sorted((pos(s.start), pos(s.end)))) for s in diag.strands]
    for i, (a1, a2) in enumerate(chords):
        for b1, b2 in chords[i + 1:]:
            if (a1 < b1 < a2 < b2) or (b1 < a1 < b2 < a2):
                return False
    return True


# ---------------------------------------------------------------------------
# composition


def _segment_maps(diag: DecoratedDiagram):
    at = {}
    for s in diag.strands:
        at[s.start] = (s, True)   # True: this endpoint is the stored start
        at[s.end] = (s, False)
    return at


def _traverse(segment: Strand, enter_at_start: bool):
    """Walk one segment from the given end.

    Yields (decoration, moving_upward) pairs and returns the exit endpoint.
    Stored decorations sit on the start branch before the arc extremum, and
    denote downward-flow operators, so the walk direction at each decoration
    is fixed by the entry endpoint's side.
    """
    contributions = []
    if enter_at_start:
        entry, exit_ = segment.start, segment.end
        moving_up = entry.side == BOTTOM
        for deco in segment.decorations:
            contributions.append((deco, moving_up))
    else:
        entry, exit_ = segment.end, segment.start
        moving_up = entry.side == BOTTOM
        if segment.is_arc:
            moving_up = not moving_up  # extremum crossed before the decorations
        for deco in reversed(segment.decorations):
            contributions.append((deco, moving_up))
    return contributions, exit_


def _store(contributions, start_is_bottom: bool):
    """Normalize walked (decoration, moving_upward) pairs to stored flavors."""
    out = []
    for deco, moving_up in contributions:
        if moving_up != start_is_bottom:
            deco = deco.toggle_transpose()
        out.append(deco)
    return tuple(out)


def compose(top_diag: DecoratedDiagram, bottom_diag: DecoratedDiagram) -> DecoratedDiagram:
    """Glue top_diag's bottom row to bottom_diag's top row.

    Interface strands are traced through; cycles closed entirely inside the
    interface are extracted into loops.  evaluate(compose(a, b)) equals
    evaluate(b) @ evaluate(a): the diagram placed on top consumes the input
    first.
    """
    if top_diag.bottom != bottom_diag.top:
        raise DimensionError(
            f"cannot glue bottom arity {top_diag.bottom} to top arity {bottom_diag.top}")
    upper, lower = _segment_maps(top_diag), _segment_maps(bottom_diag)

    def hop(which: str, e: Endpoint):
        # crossing the interface: upper's bottom row meets lower's top row
        if which == "upper" and e.side == BOTTOM:
            return "lower", Endpoint(TOP, e.index)
        if which == "lower" and e.side == TOP:
            return "upper", Endpoint(BOTTOM, e.index)
        return None

    visited = set()

    def walk(which: str, entry: Endpoint):
        """Trace from an entry point; returns (contributions, terminal).

        terminal is the boundary endpoint reached, or None when the trace
        closes into a cycle back at the entry."""
        start_key = (which, entry)
        contributions = []
        first = True
        while True:
            if not first and (which, entry) == start_key:
                return contributions, None
            first = False
            seg, at_start = (upper if which == "upper" else lower)[entry]
            visited.add((which, seg.start))
            contrib, exit_ = _traverse(seg, at_start)
            contributions.extend(contrib)
            nxt = hop(which, exit_)
            if nxt is None:
                return contributions, (which, exit_)
            which, entry = nxt

    new_strands = []
    for which, side, count in (("upper", TOP, top_diag.top),
                               ("lower", BOTTOM, bottom_diag.bottom)):
        for i in range(count):
            start = Endpoint(side, i)
            seg, _ = (upper if which == "upper" else lower)[start]
            if (which, seg.start) in visited:
                continue
            contributions, terminal = walk(which, start)
            decos = _store(contributions, start_is_bottom=(side == BOTTOM))
            new_strands.append(Strand(start, terminal[1], decos))

    new_loops = list(top_diag.loops) + list(bottom_diag.loops)
    for which, diag in (("upper", top_diag), ("lower", bottom_diag)):
        for seg in diag.strands:
            if (which, seg.start) in visited:
                continue
            # unvisited interface segment: part of a closed cycle; stored
            # flavors normalize every contribution to the downward direction
            contributions, terminal = walk(which, seg.start)
            assert terminal is None
            new_loops.append(_store(contributions, start_is_bottom=False))

    return DecoratedDiagram(top_diag.top, bottom_diag.bottom, tuple(new_strands),
                            tuple(new_loops), top_diag.scalar * bottom_diag.scalar)


# ---------------------------------------------------------------------------
# evaluation


def _strand_tensor(s: Strand, d: int, ops: dict) -> np.ndarray:
    """S[x_end, x_start]: the walked operator product along the strand."""
    out = np.eye(d, dtype=np.complex128)
    start_is_bottom = s.start.side == BOTTOM
    for deco in s.decorations:
        m = deco.matrix(ops)
        if m.shape != (d, d):
            raise DimensionError(f"operator {deco.op!r} must be {d}x{d}, got {m.shape}")
        out = (m.T if start_is_bottom else m) @ out
    return out


def _loop_value(loop, d: int, ops: dict) -> complex:
    prod = np.eye(d, dtype=np.complex128)
    for deco in loop:
        m = deco.matrix(ops)
        if m.shape != (d, d):
            raise DimensionError(f"operator {deco.op!r} must be {d}x{d}, got {m.shape}")
        prod = m @ prod
    return complex(np.trace(prod))


def scalar_value(diag: DecoratedDiagram, d: int, ops: dict | None = None) -> complex:
    """coeff * d^(k/2) * product of loop traces."""
    ops = ops or {}
    value = diag.scalar.numeric(d)
    for loop in diag.loops:
        value *= _loop_value(loop, d, ops)
    return value


def evaluate(diag: DecoratedDiagram, d: int, ops: dict | None = None) -> np.ndarray:
    """Dense d^bottom x d^top matrix of the diagram (input at top)."""
    if d < 1:
        raise DimensionError("dimension must be >= 1")
    ops = ops or {}
    letters = string.ascii_letters
    if diag.top + diag.bottom > len(letters):
        raise ValueError("diagram too large to evaluate")
    letter = {}
    for i in range(diag.top):
        letter[Endpoint(TOP, i)] = letters[i]
    for i in range(diag.bottom):
        letter[Endpoint(BOTTOM, i)] = letters[diag.top + i]

    value = scalar_value(diag, d, ops)
    if not diag.strands:
        return np.array([[value]], dtype=np.complex128)

    operands, subs = [], []
    for s in diag.strands:
        operands.append(_strand_tensor(s, d, ops))
        subs.append(letter[s.end] + letter[s.start])
    out_sub = "".join(letter[Endpoint(BOTTOM, i)] for i in range(diag.bottom))
    out_sub += "".join(letter[Endpoint(TOP, i)] for i in range(diag.top))
    spec = ",".join(subs) + "->" + out_sub
    tensor_out = np.einsum(spec, *operands, optimize=True)
    return value * tensor_out.reshape(d ** diag.bottom, d ** diag.top)


def brute_force_evaluate(diag: DecoratedDiagram, d: int, ops: dict | None = None) -> np.ndarray:
    """Oracle evaluation: build the full tensor network node by node
    (normalized cup/cap tensors, one matrix node per decoration) and contract
    exhaustively over every internal index in a single einsum.

    Shares no strand-level matrix-product or flavor-toggling logic with
    evaluate(); agreement between the two is the correctness test for the
    normal-form bookkeeping.
    """
    if d < 1:
        raise DimensionError("dimension must be >= 1")
    ops = ops or {}
    letters = string.ascii_letters
    pool = iter(letters)
    letter = {}
    for i in range(diag.top):
        letter[Endpoint(TOP, i)] = next(pool)
    for i in range(diag.bottom):
        letter[Endpoint(BOTTOM, i)] = next(pool)

    def fresh():
        try:
            return next(pool)
        except StopIteration:
            raise ValueError("diagram too large for brute-force contraction") from None

    operands, subs = [], []
    arc_count = 0
    for s in diag.strands:
        # chain from the start endpoint; decorations are downward-flow
        # matrices on the start branch, extremum (if any) before the end
        start_down = s.start.side == TOP
        prev = letter[s.start]
        for deco in s.decorations:
            nxt = fresh()
            m = deco.matrix(ops)
            if m.shape != (d, d):
                raise DimensionError(f"operator {deco.op!r} must be {d}x{d}")
            operands.append(m)
            # wire runs start -> nxt; orient the matrix along physical flow
            subs.append((nxt + prev) if start_down else (prev + nxt))
            prev = nxt
        if s.is_arc:
            arc_count += 1
            operands.append(np.eye(d, dtype=np.complex128) / np.sqrt(d))
            subs.append(prev + letter[s.end])
        else:
            operands.append(np.eye(d, dtype=np.complex128))
            subs.append(prev + letter[s.end])

    loop_factor = 1.0 + 0.0j
    for loop in diag.loops:
        if not loop:
            loop_factor *= d
            continue
        wires = [fresh() for _ in loop]
        for i, deco in enumerate(loop):
            m = deco.matrix(ops)
            if m.shape != (d, d):
                raise DimensionError(f"operator {deco.op!r} must be {d}x{d}")
            operands.append(m)
            subs.append(wires[(i + 1) % len(wires)] + wires[i])

    out_sub = "".join(letter[Endpoint(BOTTOM, i)] for i in range(diag.bottom))
    out_sub += "".join(letter[Endpoint(TOP, i)] for i in range(diag.top))
    prefactor = diag.scalar.numeric(d) * float(d) ** (arc_count / 2.0) * loop_factor
    if not operands:
        return np.array([[prefactor]], dtype=np.complex128)
    spec = ",".join(subs) + "->" + out_sub
    tensor_out = np.einsum(spec, *operands, optimize=True)
    return prefactor * tensor_out.reshape(d ** diag.bottom, d ** diag.top)


def adjoint_diagram(diag: DecoratedDiagram) -> DecoratedDiagram:
    """The diagram of the adjoint map: evaluate(adjoint) = evaluate(diag)^dag.

    Endpoint sides flip and every decoration dagger-toggles in place; the
    canonicalization flip supplies the order reversal through strands need.
    """
    strands = []
    for s in diag.strands:
        start = Endpoint(BOTTOM if s.start.side == TOP else TOP, s.start.index)
        end = Endpoint(BOTTOM if s.end.side == TOP else TOP, s.end.index)
        decos = tuple(d.toggle_dagger() for d in s.decorations)
        strands.append(Strand(start, end, decos))
    loops = tuple(tuple(d.toggle_dagger() for d in reversed(loop)) for loop in diag.loops)
    scalar = ScalarFactor(complex(diag.scalar.coeff).conjugate(), diag.scalar.half_power_of_d)
    return DecoratedDiagram(diag.bottom, diag.top, tuple(strands), loops, scalar)


def structural_ratio(a: DecoratedDiagram, b: DecoratedDiagram, d: int,
                     ops: dict | None = None) -> complex | None:
    """If a and b have identical strand structure, the scalar ratio a/b at
    dimension d (loop traces evaluated); None when the structures differ."""
    if (a.top, a.bottom) != (b.top, b.bottom) or a.strands != b.strands:
        return None
    va, vb = scalar_value(a, d, ops), scalar_value(b, d, ops)
    if vb == 0:
        return None
    return va / vb


# ---------------------------------------------------------------------------
# serialization


def to_dict(diag: DecoratedDiagram) -> dict:
    return {
        "top": diag.top,
        "bottom": diag.bottom,
        "strands": [
            [s.start.encode(), s.end.encode()] + [d.to_dict() for d in s.decorations]
            for s in diag.strands
        ],
        "loops": [[d.to_dict() for d in loop] for loop in diag.loops],
        "scalar": {
            "coeff": [float(np.real(diag.scalar.coeff)), float(np.imag(diag.scalar.coeff))],
            "half_power": diag.scalar.half_power_of_d,
        },
    }


def from_dict(data: dict) -> DecoratedDiagram:
    try:
        strands = []
        for entry in data["strands"]:
            start, end = Endpoint.decode(entry[0]), Endpoint.decode(entry[1])
            decos = tuple(Decoration.from_dict(d) for d in entry[2:])
            strands.append(Strand(start, end, decos))
        loops = tuple(tuple(Decoration.from_dict(d) for d in loop) for loop in data["loops"])
        re, im = data["scalar"]["coeff"]
        scalar = ScalarFactor(complex(float(re), float(im)), int(data["scalar"]["half_power"]))
        return DecoratedDiagram(int(data["top"]), int(data["bottom"]),
                                tuple(strands), loops, scalar)
    except (KeyError, IndexError, TypeError) as exc:
        raise ValueError(f"malformed diagram data: {exc}") from exc


def dumps(diag: DecoratedDiagram) -> str:
    return json.dumps(to_dict(diag), sort_keys=True)


def loads(text: str) -> DecoratedDiagram:
    return from_dict(json.loads(text))
