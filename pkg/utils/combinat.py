"""
Set partitions, non-crossing partitions, permutations and the annulus.

Every enumeration is deterministic: partitions come out in restricted
growth string order, non-crossing partitions as the subsequence of that
order, annular permutations in lexicographic order of their images.
Results are cached per size; annular enumerations can also be persisted
to a cache directory (see configure_cache).
"""

from __future__ import annotations

import logging
import math
import os
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Dict, Iterator, List, Optional, Tuple

from models.partition import BlockType, Perm, SetPartition
from utils.errors import (
    DimensionError,
    NotNonCrossingError,
    PartitionOrderError,
    SizeLimitError,
)
from utils.storage import load_json, save_json

log = logging.getLogger(__name__)

MAX_PARTITION_N = 12
MAX_NONCROSSING_N = 14
MAX_ANNULAR_N = 10
MAX_CYCLIC_N = 12

_cache_dir: Optional[str] = None


def configure_cache(path: Optional[str]) -> None:
    """Persist annular enumerations under `path` (None disables the disk cache)."""
    global _cache_dir
    _cache_dir = path
    log.debug("annular cache directory set to %s", path)


def _check_size(n: int, limit: int, what: str) -> None:
    if n < 1:
        raise SizeLimitError(f"{what} needs n >= 1, got {n}")
    if n > limit:
        raise SizeLimitError(f"{what} is limited to n <= {limit}, got {n}")


# -----------------------------
# Partitions of [n]
# -----------------------------
def _partition_labels(n: int) -> Iterator[Tuple[int, ...]]:
    labels = [0] * n

    def grow(i: int, nblocks: int):
        if i == n:
            yield tuple(labels)
            return
        for b in range(nblocks + 1):
            labels[i] = b
            yield from grow(i + 1, max(nblocks, b + 1))

    labels[0] = 0
    yield from grow(1, 1)


def _noncrossing_labels(n: int) -> Iterator[Tuple[int, ...]]:
    # Joining element i to block b is allowed iff every element strictly
    # between last[b] and i sits in a block opened after last[b].
    labels = [0] * n
    last: List[int] = [0]
    first: List[int] = [0]

    def visible(b: int, i: int) -> bool:
        lb = last[b]
        return all(first[labels[j]] > lb for j in range(lb + 1, i))

    def grow(i: int):
        if i == n:
            yield tuple(labels)
            return
        nblocks = len(last)
        for b in range(nblocks):
            if visible(b, i):
                labels[i] = b
                previous = last[b]
                last[b] = i
                yield from grow(i + 1)
                last[b] = previous
        labels[i] = nblocks
        last.append(i)
        first.append(i)
        yield from grow(i + 1)
        last.pop()
        first.pop()

    yield from grow(1)


def _from_labels(labels: Tuple[int, ...]) -> SetPartition:
    blocks: List[List[int]] = []
    for i, lab in enumerate(labels, start=1):
        if lab == len(blocks):
            blocks.append([i])
        else:
            blocks[lab].append(i)
    return SetPartition._trusted(len(labels), tuple(tuple(b) for b in blocks))


@lru_cache(maxsize=None)
def enum_partitions(n: int) -> Tuple[SetPartition, ...]:
    """P(n) in restricted growth string order."""
    _check_size(n, MAX_PARTITION_N, "enum_partitions")
    out = tuple(_from_labels(lab) for lab in _partition_labels(n))
    log.debug("P(%d): %d partitions", n, len(out))
    return out


@lru_cache(maxsize=None)
def enum_noncrossing(n: int) -> Tuple[SetPartition, ...]:
    """NC(n), in the same order as enum_partitions restricted to NC(n)."""
    _check_size(n, MAX_NONCROSSING_N, "enum_noncrossing")
    out = tuple(_from_labels(lab) for lab in _noncrossing_labels(n))
    log.debug("NC(%d): %d partitions", n, len(out))
    return out


def is_noncrossing(pi: SetPartition) -> bool:
    """No a<b<c<d with a,c in one block and b,d in another."""
    labels = pi.labels
    for v in range(pi.size):
        for w in range(v + 1, pi.size):
            # compress the V/W subsequence into runs; four runs means V..W..V..W
            runs = 0
            prev = None
            for lab in labels:
                if lab == v or lab == w:
                    if lab != prev:
                        runs += 1
                        prev = lab
                        if runs >= 4:
                            return False
    return True


def is_noncrossing_algebraic(pi: SetPartition) -> bool:
    """|π| + |π⁻¹γ_n| = n + 1."""
    gamma = Perm.long_cycle(pi.n)
    return pi.size + (pi.as_perm().inverse() * gamma).num_cycles == pi.n + 1


def join(pi: SetPartition, theta: SetPartition) -> SetPartition:
    """π ∨ θ: connected components of the union of the two block graphs."""
    if pi.n != theta.n:
        raise DimensionError(f"join of partitions of [{pi.n}] and [{theta.n}]")
    parent = list(range(pi.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for part in (pi, theta):
        for block in part.blocks:
            root = find(block[0] - 1)
            for x in block[1:]:
                other = find(x - 1)
                if other != root:
                    parent[other] = root
    return SetPartition.from_labels([find(i) for i in range(pi.n)])


def _joins_to_one(a: Tuple[int, ...], b: Tuple[int, ...], na: int, nb: int) -> bool:
    # bipartite block graph of two label vectors is connected
    parent = list(range(na + nb))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    components = na + nb
    for la, lb in zip(a, b):
        ra, rb = find(la), find(na + lb)
        if ra != rb:
            parent[rb] = ra
            components -= 1
    return components == 1


# -----------------------------
# Möbius functions
# -----------------------------
def mobius_partition(pi: SetPartition, theta: SetPartition) -> int:
    """Möbius function of P(n) on [π, θ] ≅ Π [0_{k_i}, 1_{k_i}]."""
    if not pi.refines(theta):
        raise PartitionOrderError(f"{pi} is not below {theta}")
    inner = Counter(theta.labels[block[0] - 1] for block in pi.blocks)
    value = 1
    for k in inner.values():
        value *= (-1) ** (k - 1) * math.factorial(k - 1)
    return value


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def mobius_nc_from_bottom(pi: SetPartition) -> int:
    """Möb_NC(0_n, π) = (−1)^{n−|π|} Π_V C_{|V|−1}."""
    value = (-1) ** (pi.n - pi.size)
    for size in pi.block_sizes:
        value *= catalan(size - 1)
    return value


@lru_cache(maxsize=None)
def _mobius_nc_recursive(pi: SetPartition, theta: SetPartition) -> int:
    if pi == theta:
        return 1
    total = 0
    for sigma in enum_noncrossing(pi.n):
        if sigma != pi and pi.refines(sigma) and sigma.refines(theta):
            total -= _mobius_nc_recursive(sigma, theta)
    return total


def mobius_nc(pi: SetPartition, theta: SetPartition) -> int:
    """Möbius function of NC(n) on [π, θ].

    (0_n, π) uses the Catalan product; everything else goes through the
    defining relation Σ_{π≤σ≤θ} Möb(σ, θ) = δ_{πθ}, memoized.
    """
    if not (is_noncrossing(pi) and is_noncrossing(theta)):
        raise NotNonCrossingError(f"mobius_nc needs non-crossing input, got {pi} and {theta}")
    if not pi.refines(theta):
        raise PartitionOrderError(f"{pi} is not below {theta}")
    if pi.is_finest():
        return mobius_nc_from_bottom(theta)
    return _mobius_nc_recursive(pi, theta)


# -----------------------------
# Kreweras complements
# -----------------------------
def kreweras(pi: SetPartition) -> SetPartition:
    """Kr(π): the cycles of π⁻¹γ_n."""
    if not is_noncrossing(pi):
        raise NotNonCrossingError(f"Kreweras complement needs a non-crossing partition, got {pi}")
    return (pi.as_perm().inverse() * Perm.long_cycle(pi.n)).to_partition()


def kreweras_inverse(sigma: SetPartition) -> SetPartition:
    """Kr⁻¹(σ): the cycles of γ_n σ⁻¹."""
    if not is_noncrossing(sigma):
        raise NotNonCrossingError(f"Kreweras complement needs a non-crossing partition, got {sigma}")
    return (Perm.long_cycle(sigma.n) * sigma.as_perm().inverse()).to_partition()


# -----------------------------
# Annular non-crossing permutations
# -----------------------------
def _count_cycles(images: Tuple[int, ...]) -> int:
    n = len(images)
    seen = [False] * n
    count = 0
    for i in range(n):
        if not seen[i]:
            count += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = images[j]
    return count


def _annular_count(t: int, s: int) -> int:
    """|S_NC(t, s)| = 2ts/(t+s) · binom(2t−1, t) · binom(2s−1, s)."""
    return 2 * t * s * math.comb(2 * t - 1, t) * math.comb(2 * s - 1, s) // (t + s)


def _is_annular(images: Tuple[int, ...], t: int, gamma: Tuple[int, ...]) -> bool:
    # 0-based images; connects both circles and sits on a geodesic to gamma
    n = len(images)
    if not any(images[i] >= t for i in range(t)):
        return False
    inv = [0] * n
    for i, x in enumerate(images):
        inv[x] = i
    kr = tuple(inv[gamma[k]] for k in range(n))
    return _count_cycles(images) + _count_cycles(kr) == n


def _annular_cache_path(t: int, s: int) -> Optional[str]:
    if not _cache_dir:
        return None
    return os.path.join(_cache_dir, f"annular_{t}_{s}.json")


def _load_annular(t: int, s: int) -> Optional[Tuple[Perm, ...]]:
    """Cached S_NC(t, s), or None when the file is missing or does not hold exactly that set."""
    path = _annular_cache_path(t, s)
    if not path or not os.path.exists(path):
        return None
    n = t + s
    gamma = tuple(p - 1 for p in Perm.annulus(t, s).images)
    try:
        data = load_json(path)
        if data.get("t") != t or data.get("s") != s:
            raise ValueError("header mismatch")
        perms = tuple(Perm(tuple(images)) for images in data["perms"])
        if len(perms) != _annular_count(t, s):
            raise ValueError(f"expected {_annular_count(t, s)} permutations, found {len(perms)}")
        for p in perms:
            if p.n != n or not _is_annular(tuple(x - 1 for x in p.images), t, gamma):
                raise ValueError(f"{list(p.images)} is not in S_NC({t},{s})")
        if any(a.images >= b.images for a, b in zip(perms, perms[1:])):
            raise ValueError("permutations are not in lexicographic order")
    except (ValueError, KeyError, TypeError, AttributeError) as exc:
        log.warning("ignoring unusable annular cache %s (%s)", path, exc)
        return None
    log.debug("annular (%d,%d): %d permutations from %s", t, s, len(perms), path)
    return perms


def _store_annular(t: int, s: int, perms: Tuple[Perm, ...]) -> None:
    path = _annular_cache_path(t, s)
    if path:
        save_json(path, {"t": t, "s": s, "perms": [list(p.images) for p in perms]})


@lru_cache(maxsize=None)
def enum_annular(t: int, s: int) -> Tuple[Perm, ...]:
    """S_NC(t, s) by filtering S_{t+s}.

    Keeps σ connecting the two circles of γ_{t,s} with
    |σ| + |σ⁻¹γ_{t,s}| = t + s.
    """
    if t < 1 or s < 1:
        raise SizeLimitError(f"annular permutations need t, s >= 1, got ({t}, {s})")
    _check_size(t + s, MAX_ANNULAR_N, "enum_annular")
    cached = _load_annular(t, s)
    if cached is not None:
        return cached

    n = t + s
    gamma = tuple(p - 1 for p in Perm.annulus(t, s).images)
    if n >= 9:
        log.info("enumerating S_NC(%d,%d) over %d permutations", t, s, math.factorial(n))
    perms = tuple(
        Perm._trusted(tuple(x + 1 for x in images))
        for images in permutations(range(n))
        if _is_annular(images, t, gamma)
    )
    log.debug("S_NC(%d,%d): %d permutations", t, s, len(perms))
    _store_annular(t, s, perms)
    return perms


def kreweras_annular(sigma: Perm, t: int, s: int) -> Perm:
    """Kr_{t,s}(σ) = σ⁻¹γ_{t,s}."""
    if sigma.n != t + s:
        raise DimensionError(f"σ acts on {sigma.n} points, annulus ({t},{s}) has {t + s}")
    return sigma.inverse() * Perm.annulus(t, s)


# -----------------------------
# Cyclic interval partitions
# -----------------------------
@lru_cache(maxsize=None)
def cyclic_interval_terms(n: int) -> Tuple[Tuple[Tuple[int, ...], SetPartition], ...]:
    """(S, Kr⁻¹(S ∪ 0_{n∖S})) for every nonempty S ⊆ [n], with multiplicity."""
    _check_size(n, MAX_CYCLIC_N, "enum_cyclic_intervals")
    gamma = Perm.long_cycle(n)
    out = []
    for mask in range(1, 2 ** n):
        subset = tuple(i + 1 for i in range(n) if mask >> i & 1)
        rest = [(i,) for i in range(1, n + 1) if i not in subset]
        sigma = SetPartition.from_blocks([subset] + rest, n)
        out.append((subset, (gamma * sigma.as_perm().inverse()).to_partition()))
    return tuple(out)


def enum_cyclic_intervals(n: int) -> Tuple[SetPartition, ...]:
    """CI(n), deduplicated, in restricted growth string order."""
    distinct = {pi for _, pi in cyclic_interval_terms(n)}
    order = {pi: i for i, pi in enumerate(enum_partitions(n))}
    return tuple(sorted(distinct, key=order.__getitem__))


def is_cyclic_interval_partition(pi: SetPartition) -> bool:
    """Every block is a run of consecutive integers modulo n."""
    for block in pi.blocks:
        members = set(block)
        starts = [x for x in block if (x - 2) % pi.n + 1 not in members]
        if len(starts) > 1 or (not starts and len(block) != pi.n):
            return False
    return True


# -----------------------------
# Grouped sums (what the freeprob formulas actually consume)
# -----------------------------
@lru_cache(maxsize=None)
def partition_type_counts(n: int) -> Dict[BlockType, int]:
    return dict(Counter(pi.type for pi in enum_partitions(n)))


@lru_cache(maxsize=None)
def nc_type_counts(n: int) -> Dict[BlockType, int]:
    """Number of π ∈ NC(n) of each block type."""
    return dict(Counter(pi.type for pi in enum_noncrossing(n)))


@lru_cache(maxsize=None)
def kreweras_type_pairs(n: int) -> Dict[Tuple[BlockType, BlockType], int]:
    """Multiplicity of (type π, type Kr(π)) over π ∈ NC(n)."""
    return dict(Counter((pi.type, kreweras(pi).type) for pi in enum_noncrossing(n)))


@lru_cache(maxsize=None)
def partition_pair_table(n: int) -> Dict[Tuple[BlockType, BlockType], int]:
    """Number of pairs (π, θ) ∈ P(n)² with π ∨ θ = 1_n, grouped by block types.

    Relabeling acts on pairs preserving both types and the join condition,
    so one representative per type of π suffices.
    """
    parts = enum_partitions(n)
    representatives: Dict[BlockType, SetPartition] = {}
    for pi in parts:
        representatives.setdefault(pi.type, pi)
    counts = partition_type_counts(n)
    table: Counter = Counter()
    for lam, rep in representatives.items():
        for theta in parts:
            if _joins_to_one(rep.labels, theta.labels, rep.size, theta.size):
                table[(lam, theta.type)] += counts[lam]
    return dict(table)


@lru_cache(maxsize=None)
def annular_weights(n: int) -> Dict[BlockType, Fraction]:
    """Σ_{t+s=n} Σ_{σ∈S_NC(t,s)} 1/(ts), grouped by the cycle type of σ."""
    weights: Dict[BlockType, Fraction] = {}
    for t in range(1, n):
        s = n - t
        w = Fraction(1, t * s)
        for sigma in enum_annular(t, s):
            key = sigma.cycle_type
            weights[key] = weights.get(key, Fraction(0)) + w
    return weights


@lru_cache(maxsize=None)
def annular_kreweras_weights(n: int) -> Dict[Tuple[BlockType, BlockType], Fraction]:
    """As annular_weights, grouped by (type σ, type Kr_{t,s}(σ))."""
    weights: Dict[Tuple[BlockType, BlockType], Fraction] = {}
    for t in range(1, n):
        s = n - t
        w = Fraction(1, t * s)
        for sigma in enum_annular(t, s):
            key = (sigma.cycle_type, kreweras_annular(sigma, t, s).cycle_type)
            weights[key] = weights.get(key, Fraction(0)) + w
    return weights
