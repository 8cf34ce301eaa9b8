"""Unit disk instances: generation, validation, and file I/O.

Coordinates, the radius and the region are kept in integer micro-units
(10^-6 of a region unit) so that edge decisions and file round-trips are
exact. Weights are exact rationals quantized to the same grid.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError, ValidationError

MICRO = 10**6

WeightMode = str  # "unit" or "uniform:<lo>:<hi>"


def _fmt(micro: int) -> str:
    """Format a micro-unit quantity as a fixed 6-decimal string."""
    sign = "-" if micro < 0 else ""
    micro = abs(micro)
    return f"{sign}{micro // MICRO}.{micro % MICRO:06d}"


def _parse_micro(token: str, line: int, col: int) -> int:
    try:
        if "." in token:
            whole, frac = token.split(".", 1)
            if len(frac) > 6 or not frac.isdigit():
                raise ValueError
            neg = whole.startswith("-")
            if neg:
                whole = whole[1:]
            val = int(whole) * MICRO + int(frac.ljust(6, "0"))
            return -val if neg else val
        return int(token) * MICRO
    except ValueError:
        raise ParseError(f"expected a decimal number, got {token!r}", line, col) from None


@dataclass(frozen=True)
class UnitDiskInstance:
    """Point set with a connection radius and per-node weights.

    All geometric quantities are integer micro-units. The derived graph
    is a pure function of this data.
    """

    n: int
    coords: tuple[tuple[int, int], ...]
    radius: int
    region: tuple[int, int]
    weights: tuple[Fraction, ...] = field(default=())
    seed: int | None = None

    def __post_init__(self):
        if self.radius <= 0:
            raise ValidationError("radius must be positive")
        if self.region[0] <= 0 or self.region[1] <= 0:
            raise ValidationError("region sides must be positive")
        if len(self.coords) != self.n or len(self.weights) != self.n:
            raise ValidationError("coordinate/weight count must equal n")
        for x, y in self.coords:
            if not (0 <= x <= self.region[0] and 0 <= y <= self.region[1]):
                raise ValidationError("coordinate outside region")
        for w in self.weights:
            if w < 0:
                raise ValidationError("weights must be nonnegative")

    def coords_float(self) -> list[tuple[float, float]]:
        return [(x / MICRO, y / MICRO) for x, y in self.coords]

    def region_label(self) -> str:
        return f"{_trim(self.region[0])}x{_trim(self.region[1])}"


def _trim(micro: int) -> str:
    """Compact label for a micro quantity: integral values lose the decimals."""
    return str(micro // MICRO) if micro % MICRO == 0 else _fmt(micro)


def parse_weight_mode(mode: WeightMode) -> tuple[str, int, int]:
    if mode == "unit":
        return ("unit", 0, 0)
    if mode.startswith("uniform:"):
        parts = mode.split(":")
        if len(parts) != 3:
            raise ValidationError(f"bad weight mode {mode!r}")
        lo = _parse_micro(parts[1], 0, 0)
        hi = _parse_micro(parts[2], 0, 0)
        if lo < 0 or hi < lo:
            raise ValidationError("uniform weight bounds need 0 <= lo <= hi")
        return ("uniform", lo, hi)
    raise ValidationError(f"bad weight mode {mode!r}")


def random_instance(
    n: int,
    region: tuple[float, float],
    radius: float,
    seed: int,
    weight_mode: WeightMode = "unit",
) -> UnitDiskInstance:
    """Sample n points uniformly over the region grid from a seeded generator.

    The same seed always yields the same instance, bit for bit: points are
    drawn on the micro-unit grid with `random.Random(seed)`, x before y,
    node by node, followed by one weight draw per node in uniform mode.
    """
    if n < 0:
        raise ValidationError("n must be nonnegative")
    w_micro = int(round(region[0] * MICRO))
    h_micro = int(round(region[1] * MICRO))
    r_micro = int(round(radius * MICRO))
    kind, lo, hi = parse_weight_mode(weight_mode)
    rng = random.Random(seed)
    coords = tuple((rng.randint(0, w_micro), rng.randint(0, h_micro)) for _ in range(n))
    if kind == "unit":
        weights = tuple(Fraction(1) for _ in range(n))
    else:
        weights = tuple(Fraction(rng.randint(lo, hi), MICRO) for _ in range(n))
    return UnitDiskInstance(
        n=n,
        coords=coords,
        radius=r_micro,
        region=(w_micro, h_micro),
        weights=weights,
        seed=seed,
    )


def write_instance(inst: UnitDiskInstance, path: str) -> None:
    lines = ["udg v1"]
    seed = "-" if inst.seed is None else str(inst.seed)
    lines.append(
        f"n {inst.n} radius {_fmt(inst.radius)} region {_fmt(inst.region[0])} "
        f"{_fmt(inst.region[1])} seed {seed}"
    )
    for i, (x, y) in enumerate(inst.coords):
        w = inst.weights[i]
        w_micro = w.numerator * MICRO // w.denominator
        lines.append(f"{i} {_fmt(x)} {_fmt(y)} {_fmt(w_micro)}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_instance(path: str) -> UnitDiskInstance:
    with open(path) as fh:
        raw = fh.read().splitlines()
    if not raw or raw[0].strip() != "udg v1":
        raise ParseError("missing 'udg v1' header", 1)
    if len(raw) < 2:
        raise ParseError("missing size line", 2)
    head = raw[1].split()
    if len(head) != 9 or head[0] != "n" or head[2] != "radius" or head[4] != "region" or head[7] != "seed":
        raise ParseError("expected 'n <n> radius <r> region <w> <h> seed <s|->'", 2)
    try:
        n = int(head[1])
    except ValueError:
        raise ParseError(f"bad node count {head[1]!r}", 2, 3) from None
    radius = _parse_micro(head[3], 2, 4)
    rw = _parse_micro(head[5], 2, 6)
    rh = _parse_micro(head[6], 2, 7)
    seed = None if head[8] == "-" else int(head[8])
    body = [ln for ln in raw[2:] if ln.strip()]
    if len(body) != n:
        raise ParseError(f"expected {n} node lines, found {len(body)}", 3)
    coords: list[tuple[int, int]] = []
    weights: list[Fraction] = []
    for off, ln in enumerate(body):
        lineno = off + 3
        toks = ln.split()
        if len(toks) != 4:
            raise ParseError("expected '<idx> <x> <y> <weight>'", lineno)
        try:
            idx = int(toks[0])
        except ValueError:
            raise ParseError(f"bad node index {toks[0]!r}", lineno, 1) from None
        if idx != off:
            raise ParseError(f"node index {idx} out of order (expected {off})", lineno, 1)
        x = _parse_micro(toks[1], lineno, 2)
        y = _parse_micro(toks[2], lineno, 3)
        w = _parse_micro(toks[3], lineno, 4)
        coords.append((x, y))
        weights.append(Fraction(w, MICRO))
    return UnitDiskInstance(
        n=n,
        coords=tuple(coords),
        radius=radius,
        region=(rw, rh),
        weights=tuple(weights),
        seed=seed,
    )


def write_node_set(nodes, path: str) -> None:
    """One ascending node index per line."""
    with open(path, "w") as fh:
        for v in sorted(nodes):
            fh.write(f"{v}\n")


def read_node_set(path: str) -> frozenset[int]:
    with open(path) as fh:
        return frozenset(int(ln) for ln in fh.read().split())
