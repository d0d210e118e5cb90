"""Rank-vector generators for the supported orderings, plus validators.

Trees are stored in breadth-first array form: slot 0 is the root and the
children of slot i are slots b*i+1 .. b*i+b (those below n).  All levels
are full except possibly the last, which fills left to right, so a size
alone fixes the shape.

A generated program assigns rank k to the slot that should end up with
the k-th smallest value:

* ascending / descending are the two trivial rank lines;
* bst gives each slot its in-order position, so the filled tree is a
  binary search tree;
* heap gives the root the top rank and splits the remaining ranks into
  contiguous blocks, one block per child subtree, lowest block to the
  leftmost child, recursing; the filled tree is a max-heap and works for
  any branching factor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidSize, UnsupportedBranching
from .model import OrderProgram


@dataclass(frozen=True)
class TreeShape:
    """Breadth-first complete tree with `size` slots and arity `branching`."""

    size: int
    branching: int = 2

    def __post_init__(self):
        if int(self.size) < 1:
            raise InvalidSize("a tree needs at least one slot")
        if int(self.branching) < 2:
            raise UnsupportedBranching("branching must be at least 2")
        object.__setattr__(self, "size", int(self.size))
        object.__setattr__(self, "branching", int(self.branching))

    def children(self, slot: int) -> range:
        first = self.branching * slot + 1
        return range(first, min(first + self.branching, self.size))

    def subtree_size(self, slot: int) -> int:
        total = 0
        frontier = [slot]
        while frontier:
            j = frontier.pop()
            total += 1
            frontier.extend(self.children(j))
        return total


def ascending_program(n: int) -> OrderProgram:
    """Slot i receives the (i+1)-th smallest value: a plain sort."""
    _check_size(n)
    return OrderProgram(tuple(range(1, n + 1)), kind="ascending")


def descending_program(n: int) -> OrderProgram:
    """Reverse sort: slot 0 gets the largest value."""
    _check_size(n)
    return OrderProgram(tuple(range(n, 0, -1)), kind="descending")


def bst_program(n: int, branching: int = 2) -> OrderProgram:
    """Ranks equal to each slot's in-order position in the complete tree.

    Only branching 2 is meaningful for a search order.
    """
    _check_size(n)
    if branching != 2:
        raise UnsupportedBranching("search-tree programs exist for branching 2 only")
    ranks = [0] * n
    for position, slot in enumerate(_inorder(n)):
        ranks[slot] = position + 1
    return OrderProgram(tuple(ranks), kind="bst", branching=2)


def heap_program(n: int, branching: int = 2) -> OrderProgram:
    """Root gets rank n; child subtrees get contiguous blocks of 1..n-1."""
    _check_size(n)
    shape = TreeShape(n, branching)
    ranks = [0] * n

    def assign(root: int, low: int, high: int) -> None:
        ranks[root] = high
        block_low = low
        for child in shape.children(root):
            size = shape.subtree_size(child)
            assign(child, block_low, block_low + size - 1)
            block_low += size

    assign(0, 1, n)
    return OrderProgram(tuple(ranks), kind="heap", branching=branching)


def validate_bst(values, shape: TreeShape) -> bool:
    """True when every slot separates its whole left and right subtrees.

    Strict inequalities: equal values on both sides fail.  Never raises
    on value content; the shape must have branching 2.
    """
    if shape.branching != 2:
        raise UnsupportedBranching("search-tree validation exists for branching 2 only")
    vals = _as_values(values, shape)

    def within(slot: int, low: float, high: float) -> bool:
        if slot >= shape.size:
            return True
        v = vals[slot]
        if not (low < v < high):
            return False
        return within(2 * slot + 1, low, v) and within(2 * slot + 2, v, high)

    return within(0, -np.inf, np.inf)


def validate_heap(values, shape: TreeShape) -> bool:
    """True when every slot's value is >= each of its children's values."""
    vals = _as_values(values, shape)
    return all(
        vals[slot] >= vals[child]
        for slot in range(shape.size)
        for child in shape.children(slot)
    )


def _check_size(n: int) -> None:
    if int(n) < 1:
        raise InvalidSize("programs exist for n >= 1")


def _inorder(n: int) -> list[int]:
    order: list[int] = []

    def walk(slot: int) -> None:
        if slot >= n:
            return
        walk(2 * slot + 1)
        order.append(slot)
        walk(2 * slot + 2)

    walk(0)
    return order


def _as_values(values, shape: TreeShape) -> np.ndarray:
    vals = np.asarray(values, dtype=float).ravel()
    if vals.size != shape.size:
        raise DimensionMismatch(f"{vals.size} values for a tree of {shape.size} slots")
    return vals
