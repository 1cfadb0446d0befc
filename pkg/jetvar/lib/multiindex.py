"""
Symmetric multi-indices over the base coordinates

A multi-index counts how often each base coordinate occurs in a derivative,
so y[1; x1^2 x3] is the jet coordinate of y^1 with multi-index (2, 0, 1).
"""
import itertools
import math
import re
from dataclasses import dataclass
from functools import lru_cache

from jetvar.lib.exceptions import DimensionMismatch

MAX_DIMENSION = 8

_FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


@dataclass(frozen=True)
class MultiIndex:
    """
    Multi-index with one count per base label 1..n
    """
    counts: tuple

    def __post_init__(self):
        counts = tuple(int(count) for count in self.counts)
        if not 1 <= len(counts) <= MAX_DIMENSION:
            raise DimensionMismatch(f"Base dimension must be between 1 and {MAX_DIMENSION}, got {len(counts)}")
        if any(count < 0 for count in counts):
            raise ValueError(f"Multi-index counts must be non-negative, got {counts}")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def zero(cls, dimension):
        return cls((0,) * dimension)

    @classmethod
    def unit(cls, dimension, label):
        """
        Multi-index of the single derivative along base label ``label`` (1-based)
        """
        if not 1 <= label <= dimension:
            raise DimensionMismatch(f"Base label {label} outside 1..{dimension}")
        return cls(tuple(1 if i == label - 1 else 0 for i in range(dimension)))

    @classmethod
    def parse(cls, text, dimension):
        """
        Parse the "x1^2 x3" rendering; the empty string is the zero index

        :param str text:  Rendered multi-index
        :param int dimension:  Base dimension
        :return MultiIndex:
        """
        counts = [0] * dimension
        for factor in text.split():
            match = _FACTOR.match(factor)
            if not match:
                raise ValueError(f"Invalid multi-index factor '{factor}'")
            label = int(match.group(1))
            if not 1 <= label <= dimension:
                raise DimensionMismatch(f"Base label x{label} outside 1..{dimension}")
            counts[label - 1] += int(match.group(2) or 1)
        return cls(tuple(counts))

    @property
    def dimension(self):
        return len(self.counts)

    @property
    def order(self):
        return sum(self.counts)

    @property
    def factorial(self):
        return math.prod(math.factorial(count) for count in self.counts)

    def count(self, label):
        return self.counts[label - 1]

    def labels(self):
        """
        Base labels with a non-zero count, ascending
        """
        return [i + 1 for i, count in enumerate(self.counts) if count]

    def _check(self, other):
        if self.dimension != other.dimension:
            raise DimensionMismatch(f"Cannot combine multi-indices of dimension {self.dimension} and {other.dimension}")

    def __add__(self, other):
        self._check(other)
        return MultiIndex(tuple(a + b for a, b in zip(self.counts, other.counts)))

    def __sub__(self, other):
        self._check(other)
        if not self.contains(other):
            raise ValueError(f"{other.render()} is not contained in {self.render()}")
        return MultiIndex(tuple(a - b for a, b in zip(self.counts, other.counts)))

    def contains(self, other):
        """
        Componentwise other ≤ self
        """
        self._check(other)
        return all(a >= b for a, b in zip(self.counts, other.counts))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def raised(self, label):
        return self + MultiIndex.unit(self.dimension, label)

    def lowered(self, label):
        return self - MultiIndex.unit(self.dimension, label)

    def sort_key(self):
        # graded, then the larger leading count first
        return self.order, tuple(-count for count in self.counts)

    def decompositions(self):
        """
        Pairs (α − 1_μ, μ) for every label μ occurring in α
        """
        return [(self.lowered(label), label) for label in self.labels()]

    def sub_indices(self):
        """
        All β ≤ α, in the global order
        """
        ranges = [range(count + 1) for count in self.counts]
        return sorted(MultiIndex(counts) for counts in itertools.product(*ranges))

    def render(self):
        parts = []
        for label, count in enumerate(self.counts, start=1):
            if count == 1:
                parts.append(f"x{label}")
            elif count > 1:
                parts.append(f"x{label}^{count}")
        return " ".join(parts)

    def __str__(self):
        return self.render() or "0"


def add(a, b):
    return a + b


def multinomial(m, a):
    """
    (m+a)! / (m! a!), an exact integer

    :param MultiIndex m:
    :param MultiIndex a:
    :return int:
    """
    total = m + a
    return total.factorial // (m.factorial * a.factorial)


@lru_cache(maxsize=None)
def enumerate_multiindices(dimension, max_order):
    """
    All multi-indices of order ≤ max_order in graded-lex order

    There are C(n+s, n) of them.

    :param int dimension:  Base dimension n
    :param int max_order:  Maximal order s
    :return tuple:
    """
    if dimension < 1:
        raise DimensionMismatch("Base dimension must be at least 1")
    if max_order < 0:
        raise ValueError("Maximal order must be non-negative")

    result = []
    for order in range(max_order + 1):
        for labels in itertools.combinations_with_replacement(range(dimension), order):
            counts = [0] * dimension
            for label in labels:
                counts[label] += 1
            result.append(MultiIndex(tuple(counts)))
    return tuple(sorted(result))


def multiindices_of_order(dimension, order):
    return tuple(index for index in enumerate_multiindices(dimension, order) if index.order == order)
