"""Tests for maximal elements."""

from __future__ import annotations

import pytest

from laver_tables.core import LaverEngine
from laver_tables.exceptions import DomainError, NotMaximalError, StructuralError
from laver_tables.helpers import submasks_ascending
from laver_tables.maximal import (
    count_binary_partitions,
    generate_by_insertion,
    insert_zero_block,
    is_maximal,
    is_maximal_by_period,
    is_reduction_closed,
    list_maximal,
    maximal_prod,
    maximal_row,
    maximal_to_partition,
    parse_pattern,
    partition_to_maximal,
    reductions,
    three_bit_rule,
)
from laver_tables.models import BinaryPartition, MaximalPattern, Row

WORD = 0b1010110000111100000000


class TestIsMaximal:
    """Tests for is_maximal and parse_pattern."""

    @pytest.mark.parametrize("p", [1, 2, 3, 4, 6, 7, 8, 10, 11, 12, 13, 16, 28])
    def test_maximal(self, p):
        """Test elements whose period is 2^bit(p - 1)."""
        assert is_maximal(p)

    @pytest.mark.parametrize("p", [14, 15, 22, 30])
    def test_not_maximal(self, p):
        """Test elements with a smaller period."""
        assert not is_maximal(p)

    def test_agrees_with_period(self, engine: LaverEngine):
        """Test the pattern test against the period test."""
        for p in range(1, 1025):
            assert is_maximal(p) == is_maximal_by_period(p, engine), p

    def test_pattern(self):
        """Test the blocks of a long pattern."""
        pattern = parse_pattern(WORD + 1)
        assert pattern == MaximalPattern(1, ((0, 1), (1, 2), (2, 2)))
        assert pattern.word() == format(WORD, "b")
        assert pattern.element == WORD + 1
        assert pattern.ones == WORD.bit_count()
        assert pattern.period == 1 << WORD.bit_count()

    def test_one(self):
        """Test 1 is maximal without a pattern and 0 is rejected."""
        assert parse_pattern(1) is None
        with pytest.raises(DomainError):
            is_maximal(0)

    def test_list(self):
        """Test the maximal elements up to 16."""
        assert list_maximal(1, 16) == [*range(1, 14), 16]
        with pytest.raises(DomainError, match="Empty range"):
            list_maximal(5, 4)


class TestMaximalProd:
    """Tests for maximal_prod and maximal_row."""

    def test_scatter(self):
        """Test the bits of q are placed on the ones of p - 1."""
        assert maximal_prod(WORD + 1, 0b11000101) == 0b1010000000010100000000

    def test_agrees_with_engine(self, engine: LaverEngine):
        """Test bit placement agrees with the recurrence."""
        for p in list_maximal(1, 300):
            for q in range(40):
                assert maximal_prod(p, q) == engine.back_prod(p, q)

    def test_not_maximal(self):
        """Test non-maximal elements are rejected."""
        with pytest.raises(NotMaximalError):
            maximal_prod(14, 1)

    def test_row(self, engine: LaverEngine):
        """Test maximal rows list the submasks of p - 1."""
        assert maximal_row(13) == Row(13, tuple(submasks_ascending(12)))
        assert maximal_row(13) == engine.compute_row(13)


class TestPartitions:
    """Tests for the correspondence with binary partitions."""

    def test_long_pattern(self):
        """Test the partition carried by a long pattern."""
        partition = maximal_to_partition(WORD + 1)
        assert partition == BinaryPartition(((0, 2), (1, 3), (2, 3)))
        assert partition.total == 20
        assert str(partition) == "2^0 x 2 + 2^1 x 3 + 2^2 x 3"
        assert partition_to_maximal(partition, b0=1) == WORD + 1

    def test_small(self):
        """Test small partitions."""
        assert str(maximal_to_partition(8)) == "2^1 x 1"
        assert str(maximal_to_partition(2)) == "0"
        assert partition_to_maximal(BinaryPartition.from_sizes([2])) == 8

    def test_round_trip(self):
        """Test every maximal element is rebuilt from its partition and gap."""
        for p in list_maximal(2, 2048):
            pattern = parse_pattern(p)
            assert partition_to_maximal(maximal_to_partition(p), pattern.b0) == p

    def test_errors(self):
        """Test invalid inputs are rejected."""
        with pytest.raises(DomainError):
            maximal_to_partition(1)
        with pytest.raises(NotMaximalError):
            maximal_to_partition(14)
        with pytest.raises(DomainError, match="power of 2"):
            BinaryPartition.from_sizes([3])
        with pytest.raises(DomainError):
            partition_to_maximal(BinaryPartition(), b0=-1)

    def test_sizes(self):
        """Test part sizes come back sorted."""
        assert BinaryPartition.from_sizes([4, 1, 1, 2]).sizes() == [1, 1, 2, 4]

    def test_count(self, binary_partition_counts):
        """Test partition counts against the published sequence."""
        assert [
            count_binary_partitions(n) for n in range(len(binary_partition_counts))
        ] == binary_partition_counts

    def test_count_domain(self):
        """Test negative n is rejected."""
        with pytest.raises(DomainError):
            count_binary_partitions(-1)

    def test_top_interval(self):
        """Test maximal elements of ]2^(n-1) + 2^(n-2), 2^n] count partitions of n - 1."""
        for n in range(2, 13):
            lo = (1 << (n - 1)) + (1 << (n - 2)) + 1
            assert len(list_maximal(lo, 1 << n)) == count_binary_partitions(n - 1)

    @pytest.mark.slow
    def test_top_interval_large(self):
        """Test the partition correspondence on the top intervals up to 2^20."""
        for n in range(13, 21):
            lo = (1 << (n - 1)) + (1 << (n - 2)) + 1
            elements = list_maximal(lo, 1 << n)
            assert len(elements) == count_binary_partitions(n - 1)
            for p in elements:
                pattern = parse_pattern(p)
                assert partition_to_maximal(maximal_to_partition(p), pattern.b0) == p


class TestInsertion:
    """Tests for zero-block insertion."""

    def test_insert(self):
        """Test single insertions."""
        assert insert_zero_block("11", 0, 2) == "1100"
        assert insert_zero_block("111", 1, 1) == "11100"
        assert insert_zero_block("111", 0, 1) == "1011"
        assert insert_zero_block("101", 0, 0) == "101"

    def test_errors(self):
        """Test bad words and parameters."""
        with pytest.raises(DomainError):
            insert_zero_block("", 0, 1)
        with pytest.raises(DomainError):
            insert_zero_block("12", 0, 1)
        with pytest.raises(DomainError):
            insert_zero_block("11", -1, 1)
        with pytest.raises(StructuralError):
            insert_zero_block("000", 0, 1)

    def test_closure_of_two_ones(self):
        """Test the words reached from 11."""
        assert generate_by_insertion(2, 4) == ["11", "110", "1100"]

    def test_closure(self):
        """Test every reached word is maximal and every maximal b0 = 0 word is reached."""
        for ones in range(1, 4):
            generated = set(generate_by_insertion(ones, 9))
            assert all(is_maximal(int(word, 2) + 1) for word in generated)
            expected = {
                format(value, "b")
                for value in range(1, 1 << 9)
                if value.bit_count() == ones
                and (value < 2 or format(value, "b")[1] == "1")
                and is_maximal(value + 1)
            }
            assert expected <= generated


class TestReductions:
    """Tests for reductions and the three-bit rule."""

    def test_reductions(self):
        """Test the reductions of 7."""
        assert list(reductions(7, 4)) == [1, 3, 11, 19]

    def test_closed(self):
        """Test reductions of maximal elements stay maximal."""
        assert all(is_reduction_closed(p, 12) for p in list_maximal(1, 1024))

    def test_three_bit_rule(self):
        """Test the rule agrees with the pattern test."""
        for p in range(1, 4096):
            if p.bit_count() == 3:
                assert three_bit_rule(p) == is_maximal(p), p

    def test_three_bit_domain(self):
        """Test other bit counts are rejected."""
        with pytest.raises(DomainError, match="three set bits"):
            three_bit_rule(5)
