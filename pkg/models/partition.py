from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Sequence, Tuple

from utils.errors import DimensionError, InputContractError

Block = Tuple[int, ...]
BlockType = Tuple[int, ...]


@dataclass(frozen=True)
class SetPartition:
    """A partition of [n] = {1..n}, always held in canonical form.

    Blocks are sorted by their minimum, elements ascending inside a block.
    Any ordering is accepted on construction and canonicalized.
    """
    n: int
    blocks: Tuple[Block, ...]

    def __post_init__(self):
        if self.n < 1:
            raise InputContractError(f"Partition ground set must be non-empty, got n={self.n}")
        blocks = []
        for b in self.blocks:
            block = tuple(sorted(int(x) for x in b))
            if not block:
                raise InputContractError("Partition blocks must be non-empty")
            blocks.append(block)
        blocks.sort(key=lambda b: b[0])
        seen = [x for b in blocks for x in b]
        if sorted(seen) != list(range(1, self.n + 1)):
            raise InputContractError(f"Blocks {blocks} do not partition {{1..{self.n}}}")
        object.__setattr__(self, "blocks", tuple(blocks))

    @classmethod
    def _trusted(cls, n: int, blocks: Tuple[Block, ...]) -> "SetPartition":
        # enumeration fast path: blocks are already canonical
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "blocks", blocks)
        return obj

    # -----------------------------
    # Constructors
    # -----------------------------
    @staticmethod
    def from_blocks(blocks: Iterable[Iterable[int]], n: int = None) -> "SetPartition":
        blocks = [tuple(b) for b in blocks]
        if n is None:
            n = sum(len(b) for b in blocks)
        return SetPartition(n, tuple(blocks))

    @staticmethod
    def from_labels(labels: Sequence[int]) -> "SetPartition":
        """labels[i-1] names the block of element i (any hashable labels)."""
        groups: Dict = {}
        for i, lab in enumerate(labels, start=1):
            groups.setdefault(lab, []).append(i)
        return SetPartition._trusted(len(labels), tuple(tuple(g) for g in groups.values()))

    @staticmethod
    def finest(n: int) -> "SetPartition":
        """0_n, all singletons."""
        return SetPartition._trusted(n, tuple((i,) for i in range(1, n + 1)))

    @staticmethod
    def coarsest(n: int) -> "SetPartition":
        """1_n, a single block."""
        return SetPartition._trusted(n, (tuple(range(1, n + 1)),))

    # -----------------------------
    # Structure
    # -----------------------------
    @cached_property
    def labels(self) -> Tuple[int, ...]:
        """0-based block index of each element; labels[i-1] is the block of i."""
        out = [0] * self.n
        for idx, block in enumerate(self.blocks):
            for x in block:
                out[x - 1] = idx
        return tuple(out)

    @property
    def size(self) -> int:
        """|π|, the number of blocks."""
        return len(self.blocks)

    @property
    def block_sizes(self) -> Tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    @property
    def type(self) -> BlockType:
        """Block sizes sorted descending; the orbit of π under relabeling."""
        return tuple(sorted(self.block_sizes, reverse=True))

    def is_finest(self) -> bool:
        return len(self.blocks) == self.n

    def is_coarsest(self) -> bool:
        return len(self.blocks) == 1

    def refines(self, other: "SetPartition") -> bool:
        """self ≤ other: every block of self lies inside a block of other."""
        if self.n != other.n:
            raise DimensionError(f"Partitions of [{self.n}] and [{other.n}] are not comparable")
        theirs = other.labels
        return all(len({theirs[x - 1] for x in block}) == 1 for block in self.blocks)

    def as_perm(self) -> "Perm":
        """The permutation whose cycles are the blocks, each traversed increasingly."""
        images = [0] * self.n
        for block in self.blocks:
            for a, b in zip(block, block[1:] + block[:1]):
                images[a - 1] = b
        return Perm(tuple(images))

    def to_dict(self):
        return {"n": self.n, "blocks": [list(b) for b in self.blocks]}

    @staticmethod
    def from_dict(data: dict) -> "SetPartition":
        return SetPartition(int(data["n"]), tuple(tuple(b) for b in data["blocks"]))

    def __str__(self):
        return "{" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"


@dataclass(frozen=True)
class Perm:
    """A permutation of [n]; images[i-1] = σ(i).

    Products follow (αβ)(k) = α(β(k)); `a * b` and `a.compose(b)` both mean that.
    """
    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if not images or sorted(images) != list(range(1, len(images) + 1)):
            raise InputContractError(f"{list(self.images)} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def _trusted(cls, images: Tuple[int, ...]) -> "Perm":
        obj = object.__new__(cls)
        object.__setattr__(obj, "images", images)
        return obj

    @staticmethod
    def identity(n: int) -> "Perm":
        return Perm._trusted(tuple(range(1, n + 1)))

    @staticmethod
    def from_cycles(n: int, cycles: Iterable[Iterable[int]]) -> "Perm":
        images = list(range(1, n + 1))
        for cyc in cycles:
            cyc = list(cyc)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                if not 1 <= a <= n:
                    raise DimensionError(f"Cycle entry {a} outside 1..{n}")
                images[a - 1] = b
        return Perm(tuple(images))

    @staticmethod
    def long_cycle(n: int) -> "Perm":
        """γ_n = (1, 2, ..., n)."""
        return Perm._trusted(tuple(list(range(2, n + 1)) + [1]))

    @staticmethod
    def annulus(t: int, s: int) -> "Perm":
        """γ_{t,s} = (1..t)(t+1..t+s)."""
        first = list(range(2, t + 1)) + [1]
        second = list(range(t + 2, t + s + 1)) + [t + 1]
        return Perm._trusted(tuple(first + second))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    @cached_property
    def cycles(self) -> Tuple[Tuple[int, ...], ...]:
        """Cycles listed by minimum element, each starting at its minimum."""
        seen = [False] * self.n
        out: List[Tuple[int, ...]] = []
        for start in range(1, self.n + 1):
            if seen[start - 1]:
                continue
            cyc = []
            k = start
            while not seen[k - 1]:
                seen[k - 1] = True
                cyc.append(k)
                k = self.images[k - 1]
            out.append(tuple(cyc))
        return tuple(out)

    @property
    def num_cycles(self) -> int:
        """|σ|."""
        return len(self.cycles)

    @property
    def cycle_type(self) -> BlockType:
        return tuple(sorted((len(c) for c in self.cycles), reverse=True))

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for i, x in enumerate(self.images, start=1):
            inv[x - 1] = i
        return Perm._trusted(tuple(inv))

    def compose(self, other: "Perm") -> "Perm":
        if self.n != other.n:
            raise DimensionError(f"Cannot compose permutations of {self.n} and {other.n} points")
        return Perm._trusted(tuple(self.images[k - 1] for k in other.images))

    __mul__ = compose

    def to_partition(self) -> SetPartition:
        return SetPartition._trusted(self.n, self.cycles)

    def to_dict(self):
        return {"n": self.n, "images": list(self.images)}

    @staticmethod
    def from_dict(data: dict) -> "Perm":
        return Perm(tuple(data["images"]))

    def __str__(self):
        moved = [c for c in self.cycles if len(c) > 1]
        if not moved:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in moved)
