"""Random-access generators for the map sequence a_1, a_2, ...

Each spec kind is a small immutable rule mapping an index k >= 1 to an
integer multiplier >= 2 (the slope of the k-th circle map).  Random access
matters: downstream analyses jump to arbitrary indices (spike neighbourhoods,
block interiors) without iterating from the start, and Monte Carlo workers
evaluate the same sequence concurrently.

Kinds
-----
constant    one multiplier forever.
periodic    a finite word repeated.
explicit    a finite head, then any other spec for the remaining indices.
triples     background value with spikes of three consecutive large values
            at geometrically spaced positions p0 * r^l, l = 0, 1, ...
blocks      background 2 with runs of 3 of length l starting at ceil(D^l),
            l = 1, 2, ...  (the variance-suppression schedule).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "SequenceSpec",
    "Constant",
    "Periodic",
    "Explicit",
    "Triples",
    "Blocks",
    "generate",
    "block_index",
    "log2_multiplier",
    "sequence_to_obj",
    "sequence_from_obj",
]

_LOG2_3 = math.log2(3.0)
_VALIDATE_HORIZON = 1 << 48


class SequenceSpec:
    """Base class; concrete kinds implement value_at and log2_multiplier."""

    kind: str = "?"

    def value_at(self, k: int) -> int:
        raise NotImplementedError

    def log2_multiplier(self, n: int) -> float:
        raise NotImplementedError

    def to_obj(self) -> dict:
        raise NotImplementedError


def _check_index(k: int) -> None:
    if k < 1:
        raise ValueError(f"sequence index must be >= 1, got {k}")


def _check_value(b: int) -> int:
    if not isinstance(b, int) or b < 2:
        raise ValueError(f"map multiplier must be an integer >= 2, got {b!r}")
    return b


@dataclass(frozen=True)
class Constant(SequenceSpec):
    b: int

    kind = "constant"

    def __post_init__(self):
        _check_value(self.b)

    def value_at(self, k: int) -> int:
        _check_index(k)
        return self.b

    def log2_multiplier(self, n: int) -> float:
        _check_index(n)
        return n * math.log2(self.b)

    def to_obj(self) -> dict:
        return {"kind": "constant", "b": self.b}


@dataclass(frozen=True)
class Periodic(SequenceSpec):
    values: tuple[int, ...]

    kind = "periodic"

    def __post_init__(self):
        if not self.values:
            raise ValueError("periodic spec needs a nonempty word")
        object.__setattr__(self, "values", tuple(_check_value(v) for v in self.values))

    def value_at(self, k: int) -> int:
        _check_index(k)
        return self.values[(k - 1) % len(self.values)]

    def log2_multiplier(self, n: int) -> float:
        _check_index(n)
        logs = [math.log2(v) for v in self.values]
        full, rest = divmod(n, len(self.values))
        return full * math.fsum(logs) + math.fsum(logs[:rest])

    def to_obj(self) -> dict:
        return {"kind": "periodic", "values": list(self.values)}


@dataclass(frozen=True)
class Explicit(SequenceSpec):
    values: tuple[int, ...]
    tail: SequenceSpec

    kind = "explicit"

    def __post_init__(self):
        if not self.values:
            raise ValueError("explicit spec needs a nonempty head")
        object.__setattr__(self, "values", tuple(_check_value(v) for v in self.values))
        if not isinstance(self.tail, SequenceSpec):
            raise ValueError("explicit tail must be a SequenceSpec")

    def value_at(self, k: int) -> int:
        _check_index(k)
        if k <= len(self.values):
            return self.values[k - 1]
        return self.tail.value_at(k - len(self.values))

    def log2_multiplier(self, n: int) -> float:
        _check_index(n)
        head = math.fsum(math.log2(v) for v in self.values[:n])
        if n <= len(self.values):
            return head
        return head + self.tail.log2_multiplier(n - len(self.values))

    def to_obj(self) -> dict:
        return {"kind": "explicit", "values": list(self.values), "tail": self.tail.to_obj()}


@dataclass(frozen=True)
class Triples(SequenceSpec):
    """Background b0 with a_p = a_{p+1} = a_{p+2} = B at p = p0 * r^l, l >= 0."""

    b0: int
    B: int
    p0: int
    r: int

    kind = "triples"

    def __post_init__(self):
        _check_value(self.b0)
        _check_value(self.B)
        if self.B <= self.b0:
            raise ValueError("spike value must exceed the background value")
        if not isinstance(self.p0, int) or self.p0 < 1:
            raise ValueError("first spike position p0 must be an integer >= 1")
        if not isinstance(self.r, int) or self.r < 2:
            raise ValueError("position ratio r must be an integer >= 2")
        if self.p0 * (self.r - 1) < 3:
            raise ValueError("spikes overlap: need p0*(r-1) >= 3")

    def spike_positions(self, limit: int):
        """Spike start positions p <= limit, in increasing order."""
        p = self.p0
        while p <= limit:
            yield p
            p *= self.r

    def spiked_count(self, n: int) -> int:
        """Number of indices k <= n carrying the spike value."""
        return sum(min(3, n - p + 1) for p in self.spike_positions(n))

    def value_at(self, k: int) -> int:
        _check_index(k)
        for p in self.spike_positions(k):
            if k <= p + 2:
                return self.B
        return self.b0

    def log2_multiplier(self, n: int) -> float:
        _check_index(n)
        s = self.spiked_count(n)
        return s * math.log2(self.B) + (n - s) * math.log2(self.b0)

    def to_obj(self) -> dict:
        return {"kind": "triples", "b0": self.b0, "B": self.B, "p0": self.p0, "r": self.r}


@dataclass(frozen=True)
class Blocks(SequenceSpec):
    """a_k = 3 on the runs [d_l, d_l + l), l >= 1, with d_l = ceil(D^l); else 2."""

    D: float

    kind = "blocks"

    def __post_init__(self):
        object.__setattr__(self, "D", float(self.D))
        if not self.D > 1.0:
            raise ValueError("block schedule needs growth D > 1")
        # Blocks must not overlap anywhere we may ever be asked to evaluate.
        prev_end = 0
        for l in range(1, 4096):
            d = self.block_start(l)
            if d < prev_end:
                raise ValueError(f"blocks overlap at l={l}: start {d} < previous end {prev_end}")
            prev_end = d + l
            if d > _VALIDATE_HORIZON:
                break

    def block_start(self, l: int) -> int:
        d = self.D**l
        if d > float(_VALIDATE_HORIZON) * 4:
            # avoid float blowup for absurd l; exact for integral D
            if self.D == int(self.D):
                return int(self.D) ** l
        return math.ceil(d)

    def value_at(self, k: int) -> int:
        _check_index(k)
        l = 1
        while True:
            d = self.block_start(l)
            if d > k:
                return 2
            if k < d + l:
                return 3
            l += 1

    def three_count(self, n: int) -> int:
        """Number of indices k <= n with value 3 (closed form over blocks)."""
        total = 0
        l = 1
        while True:
            d = self.block_start(l)
            if d > n:
                return total
            total += min(l, n - d + 1)
            l += 1

    def block_index(self, n: int) -> int:
        """l_n = max{l : d_l <= n}; undefined (error) below the first block."""
        if n < self.block_start(1):
            raise ValueError(f"n={n} precedes the first block start {self.block_start(1)}")
        l = 1
        while self.block_start(l + 1) <= n:
            l += 1
        return l

    def log2_multiplier(self, n: int) -> float:
        _check_index(n)
        t = self.three_count(n)
        return t * _LOG2_3 + (n - t)

    def to_obj(self) -> dict:
        return {"kind": "blocks", "D": self.D}


def generate(spec: SequenceSpec, k: int) -> int:
    """Value a_k; pure and random-access (same (spec, k) always agree)."""
    return spec.value_at(k)


def block_index(spec: Blocks, n: int) -> int:
    """Largest l with d_l <= n for a blocks spec."""
    if not isinstance(spec, Blocks):
        raise ValueError("block_index is only defined for blocks specs")
    return spec.block_index(n)


def log2_multiplier(spec: SequenceSpec, n: int) -> float:
    """log2(a_1 * ... * a_n), the expanding factor of the n-step composition."""
    return spec.log2_multiplier(n)


def sequence_to_obj(spec: SequenceSpec) -> dict:
    return spec.to_obj()


def sequence_from_obj(obj) -> SequenceSpec:
    """Parse the serialized {"kind": ..., ...} form."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("sequence must be an object with a 'kind' field")
    kind = obj["kind"]
    try:
        if kind == "constant":
            return Constant(int(obj["b"]))
        if kind == "periodic":
            return Periodic(tuple(int(v) for v in obj["values"]))
        if kind == "explicit":
            return Explicit(
                tuple(int(v) for v in obj["values"]), sequence_from_obj(obj["tail"])
            )
        if kind == "triples":
            return Triples(int(obj["b0"]), int(obj["B"]), int(obj["p0"]), int(obj["r"]))
        if kind == "blocks":
            return Blocks(float(obj["D"]))
    except KeyError as exc:
        raise ValueError(f"sequence kind {kind!r} is missing field {exc}") from exc
    raise ValueError(f"unknown sequence kind {kind!r}")
