import json
from fractions import Fraction
from math import comb

import pytest

from models.partition import Perm, SetPartition
from utils.combinat import (
    catalan,
    configure_cache,
    cyclic_interval_terms,
    enum_annular,
    enum_cyclic_intervals,
    enum_noncrossing,
    enum_partitions,
    is_cyclic_interval_partition,
    is_noncrossing,
    is_noncrossing_algebraic,
    join,
    kreweras,
    kreweras_annular,
    kreweras_inverse,
    mobius_nc,
    mobius_partition,
)
from utils.errors import InputContractError, NotNonCrossingError, PartitionOrderError, SizeLimitError

BELL = [1, 2, 5, 15, 52, 203, 877]


# -----------------------------
# Partitions
# -----------------------------
@pytest.mark.parametrize("n", range(1, 8))
def test_partition_counts(n):
    assert len(enum_partitions(n)) == BELL[n - 1]
    assert len(set(enum_partitions(n))) == BELL[n - 1]


@pytest.mark.parametrize("n", range(1, 9))
def test_noncrossing_counts(n):
    assert len(enum_noncrossing(n)) == catalan(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_noncrossing_is_the_filtered_partition_list(n):
    filtered = tuple(pi for pi in enum_partitions(n) if is_noncrossing(pi))
    assert filtered == enum_noncrossing(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_noncrossing_tests_agree(n):
    for pi in enum_partitions(n):
        assert is_noncrossing(pi) == is_noncrossing_algebraic(pi)


def test_crossing_example():
    pi = SetPartition.from_blocks([[1, 3], [2, 4]])
    assert not is_noncrossing(pi)
    with pytest.raises(NotNonCrossingError):
        kreweras(pi)


def test_canonical_form():
    pi = SetPartition(4, ((4, 2), (3,), (1,)))
    assert pi.blocks == ((1,), (2, 4), (3,))
    assert pi.type == (2, 1, 1)
    assert str(pi) == "{{1},{2,4},{3}}"


def test_bad_partition_rejected():
    with pytest.raises(InputContractError):
        SetPartition(3, ((1, 2), (2, 3)))


def test_size_limit():
    with pytest.raises(SizeLimitError):
        enum_partitions(13)
    with pytest.raises(SizeLimitError):
        enum_annular(6, 5)


def test_join():
    a = SetPartition.from_blocks([[1, 2], [3], [4]])
    b = SetPartition.from_blocks([[1], [2, 3], [4]])
    assert join(a, b) == SetPartition.from_blocks([[1, 2, 3], [4]])


# -----------------------------
# Möbius functions
# -----------------------------
@pytest.mark.parametrize("n", range(1, 7))
def test_mobius_bottom_to_top(n):
    bottom, top = SetPartition.finest(n), SetPartition.coarsest(n)
    factorial = 1
    for k in range(1, n):
        factorial *= k
    assert mobius_partition(bottom, top) == (-1) ** (n - 1) * factorial
    assert mobius_nc(bottom, top) == (-1) ** (n - 1) * catalan(n - 1)


@pytest.mark.parametrize("n", range(1, 6))
def test_mobius_nc_inverts_zeta(n):
    # Σ_{π≤σ≤1} Möb(σ, 1) = δ_{π,1}
    top = SetPartition.coarsest(n)
    for pi in enum_noncrossing(n):
        total = sum(mobius_nc(sigma, top) for sigma in enum_noncrossing(n) if pi.refines(sigma))
        assert total == (1 if pi == top else 0)


def test_mobius_order_checked():
    with pytest.raises(PartitionOrderError):
        mobius_partition(SetPartition.coarsest(3), SetPartition.finest(3))


# -----------------------------
# Kreweras complement
# -----------------------------
@pytest.mark.parametrize("n", range(1, 7))
def test_kreweras_properties(n):
    assert kreweras(SetPartition.finest(n)) == SetPartition.coarsest(n)
    assert kreweras(SetPartition.coarsest(n)) == SetPartition.finest(n)
    for pi in enum_noncrossing(n):
        k = kreweras(pi)
        assert is_noncrossing(k)
        assert pi.size + k.size == n + 1
        assert kreweras_inverse(k) == pi


# -----------------------------
# Annular permutations
# -----------------------------
def annular_count(t: int, s: int) -> Fraction:
    return Fraction(2 * t * s, t + s) * comb(2 * t - 1, t) * comb(2 * s - 1, s)


@pytest.mark.parametrize("t,s", [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (3, 2), (4, 2), (3, 3)])
def test_annular_counts(t, s):
    assert len(enum_annular(t, s)) == annular_count(t, s)


def test_annular_small_listing():
    assert enum_annular(1, 1) == (Perm((2, 1)),)
    assert len(enum_annular(2, 1)) == 4


@pytest.mark.parametrize("t,s", [(2, 1), (2, 2), (3, 2)])
def test_annular_permutations_connect_and_are_geodesic(t, s):
    gamma = Perm.annulus(t, s)
    for sigma in enum_annular(t, s):
        assert any(min(c) <= t < max(c) for c in sigma.cycles)
        kr = kreweras_annular(sigma, t, s)
        assert sigma.num_cycles + kr.num_cycles == t + s
        assert sigma * kr == gamma


def test_annular_disk_cache(tmp_path):
    configure_cache(str(tmp_path))
    enum_annular.cache_clear()
    first = enum_annular(2, 2)
    assert (tmp_path / "annular_2_2.json").exists()
    enum_annular.cache_clear()
    assert enum_annular(2, 2) == first


def test_corrupt_annular_cache_is_ignored(tmp_path):
    (tmp_path / "annular_2_1.json").write_text("{not json", encoding="utf-8")
    configure_cache(str(tmp_path))
    enum_annular.cache_clear()
    assert len(enum_annular(2, 1)) == 4


@pytest.mark.parametrize("perms", [
    [[1, 2, 3], [1, 3, 2], [2, 3, 1], [3, 1, 2]],
    [[1, 3, 2], [2, 3, 1], [3, 1, 2]],
    [[2, 1], [2, 1], [2, 1], [2, 1]],
    [[1, 3, 2], [1, 3, 2], [2, 3, 1], [3, 1, 2]],
    [[1, 3, 2], [2, 3, 1], [3, 2, 1], [3, 1, 2]],
    [[1, 3, 2], [2, 3, 1], [3, 1, 2], [1, 1, 1]],
])
def test_wrong_annular_cache_is_recomputed(tmp_path, perms):
    enum_annular.cache_clear()
    expected = enum_annular(2, 1)
    assert [list(p.images) for p in expected] == [[1, 3, 2], [2, 3, 1], [3, 1, 2], [3, 2, 1]]
    cache = tmp_path / "annular_2_1.json"
    cache.write_text(json.dumps({"t": 2, "s": 1, "perms": perms}), encoding="utf-8")
    configure_cache(str(tmp_path))
    enum_annular.cache_clear()
    assert enum_annular(2, 1) == expected
    assert json.loads(cache.read_text(encoding="utf-8"))["perms"] == [list(p.images) for p in expected]


# -----------------------------
# Cyclic interval partitions
# -----------------------------
@pytest.mark.parametrize("n", range(1, 8))
def test_cyclic_intervals(n):
    listing = enum_cyclic_intervals(n)
    assert len(cyclic_interval_terms(n)) == 2 ** n - 1
    assert len(listing) == (2 ** n - n if n > 1 else 1)
    assert set(listing) == {pi for pi in enum_partitions(n) if is_cyclic_interval_partition(pi)}


def test_cyclic_interval_membership():
    assert is_cyclic_interval_partition(SetPartition.from_blocks([[1, 4], [2, 3]]))
    assert not is_cyclic_interval_partition(SetPartition.from_blocks([[1, 3], [2], [4]]))
