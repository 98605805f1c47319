"""
Helper Utilities
Rational formatting, subset and set-partition enumeration
"""

from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, List, Sequence, Tuple, TypeVar, Union

T = TypeVar("T")


def format_rational(value: Union[Fraction, int]) -> str:
    """
    Render an exact rational as "p/q", or "p" when integral

    Args:
        value: Rational or integer

    Returns:
        Exact string form (e.g. "5/2")
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """
    Parse a "p/q" or integer string

    Args:
        text: String produced by format_rational

    Returns:
        The rational value

    Raises:
        ValueError: If the text is not a rational literal
    """
    return Fraction(text.strip())


def common_denominator(values: Iterable[Fraction]) -> int:
    """Least common denominator of a collection of rationals (1 when empty)"""
    result = 1
    for value in values:
        result = lcm(result, Fraction(value).denominator)
    return result


def nonempty_subsets(m: int) -> List[frozenset]:
    """
    All nonempty subsets of range(m), ordered by size then lexicographically

    Args:
        m: Ground set size

    Returns:
        List of frozensets
    """
    subsets = [frozenset(i for i in range(m) if mask >> i & 1) for mask in range(1, 1 << m)]
    return sorted(subsets, key=lambda s: (len(s), sorted(s)))


def set_partitions(items: Sequence[T]) -> Iterator[List[Tuple[T, ...]]]:
    """
    Enumerate set partitions of a sequence (restricted growth order)

    Args:
        items: Elements to partition

    Yields:
        Lists of blocks, each block a tuple in input order
    """
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in set_partitions(rest):
        yield [(first,)] + partition
        for index in range(len(partition)):
            yield partition[:index] + [(first,) + partition[index]] + partition[index + 1:]


def bell_number(n: int) -> int:
    """Number of set partitions of an n-set"""
    row = [1]
    for _ in range(n):
        next_row = [row[-1]]
        for value in row:
            next_row.append(next_row[-1] + value)
        row = next_row
    return row[0]


def to_labels(indices: Iterable[int]) -> List[int]:
    """0-based receiver indices to sorted 1-based labels"""
    return sorted(i + 1 for i in indices)
