"""
Confluent Vandermonde matrices.

A node x with multiplicity m contributes rows R_{x,0}, ..., R_{x,m-1} where
R_{x,k}[j] = C(j, k) * x**(j - k). A node at infinity (x is None) contributes the unit
row on the last column; it sorts after every finite node and adds a factor 1 to the
determinant.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, List, Optional, Sequence, Tuple

from ..types import DuplicateNode
from .exact_core import ONE, ZERO, ExactMatrix, Scalar, as_scalar, binomial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Node:
    x: Optional[Scalar]
    multiplicity: int
    label: str = ""

    @property
    def is_infinite(self) -> bool:
        return self.x is None


@dataclass(frozen=True)
class NodeSpec:
    nodes: Tuple[Node, ...]

    @classmethod
    def of(cls, pairs: Iterable[Tuple[Optional[Scalar], int]]) -> "NodeSpec":
        return cls(tuple(Node(None if x is None else as_scalar(x), m) for x, m in pairs))

    @property
    def size(self) -> int:
        return sum(node.multiplicity for node in self.nodes)

    def finite(self) -> List[Tuple[int, Node]]:
        return [(index, node) for index, node in enumerate(self.nodes) if not node.is_infinite]


RowEntry = Tuple[int, int]


@dataclass(frozen=True)
class RowSequence:
    """Ordered (node index, derivative order) pairs."""
    entries: Tuple[RowEntry, ...]

    @classmethod
    def standard(cls, spec: NodeSpec) -> "RowSequence":
        return cls(tuple((i, k) for i, node in enumerate(spec.nodes) for k in range(node.multiplicity)))

    def __len__(self) -> int:
        return len(self.entries)


def confvand_row(x: Optional[Scalar], k: int, width: int) -> List[Scalar]:
    """R_{x,k} of the given width; x None gives the unit row on the last column."""
    if x is None:
        if k != 0:
            raise ValueError("a node at infinity carries a single row")
        return [ONE if j == width - 1 else ZERO for j in range(width)]
    x = as_scalar(x)
    row: List[Scalar] = []
    for j in range(width):
        if j < k:
            row.append(ZERO)
        else:
            row.append(as_scalar(binomial(j, k) * x ** (j - k)))
    return row


def _check_spec(spec: NodeSpec) -> None:
    seen = set()
    infinite = 0
    for node in spec.nodes:
        if node.multiplicity < 1:
            raise ValueError(f"node multiplicity must be positive, got {node.multiplicity}")
        if node.is_infinite:
            infinite += 1
            if node.multiplicity != 1:
                raise ValueError("a node at infinity must have multiplicity 1")
            continue
        if node.x in seen:
            raise DuplicateNode(f"node {node.x} appears twice")
        seen.add(node.x)
    if infinite > 1:
        raise DuplicateNode("at most one node at infinity")


def build_confvand(spec: NodeSpec, sequence: Optional[RowSequence] = None, width: Optional[int] = None) -> ExactMatrix:
    """Square confluent Vandermonde matrix with rows in `sequence` order (standard order by default)."""
    _check_spec(spec)
    sequence = sequence or RowSequence.standard(spec)
    width = spec.size if width is None else width
    if len(sequence) != width:
        raise ValueError(f"{len(sequence)} rows for width {width}")
    if len(set(sequence.entries)) != len(sequence.entries):
        raise ValueError("row sequence repeats an entry")
    rows = []
    for index, k in sequence.entries:
        node = spec.nodes[index]
        if not 0 <= k < node.multiplicity:
            raise ValueError(f"derivative order {k} outside 0..{node.multiplicity - 1} for node {index}")
        rows.append(confvand_row(node.x, k, width))
    return ExactMatrix(rows, width)


def confvand_det(spec: NodeSpec) -> Scalar:
    """prod_{a<b} (x_b - x_a)^(m_a m_b) over finite nodes in spec order."""
    finite = [node for node in spec.nodes if not node.is_infinite]
    result: Scalar = ONE
    for b in range(len(finite)):
        for a in range(b):
            result = result * (finite[b].x - finite[a].x) ** (finite[a].multiplicity * finite[b].multiplicity)
    return as_scalar(result)


def raised_confvand_det(spec: NodeSpec, node_index: int) -> Scalar:
    """
    Determinant after replacing the top row R_{x,m-1} of the given node by R_{x,m}.
    Equals (1/m) d/dx of confvand_det, i.e. confvand_det * sum_b m_b / (x - x_b).
    """
    node = spec.nodes[node_index]
    if node.is_infinite:
        raise ValueError("the node at infinity cannot be raised")
    base = confvand_det(spec)
    total: Scalar = ZERO
    for index, other in enumerate(spec.nodes):
        if index == node_index or other.is_infinite:
            continue
        total = total + as_scalar(other.multiplicity) / (node.x - other.x)
    return as_scalar(base * total)


def inversion_count(sequence: Sequence[RowEntry]) -> int:
    entries = list(sequence.entries if isinstance(sequence, RowSequence) else sequence)
    return sum(1 for i in range(len(entries)) for j in range(i + 1, len(entries)) if entries[i] > entries[j])


def inversion_sign(sequence: Sequence[RowEntry]) -> int:
    """(-1)^(inversions) relative to the (node index, derivative order) total order."""
    return -1 if inversion_count(sequence) % 2 else 1


def sequence_det(spec: NodeSpec, sequence: RowSequence) -> Scalar:
    """det of build_confvand(spec, sequence) from the closed form."""
    return as_scalar(inversion_sign(sequence) * confvand_det(spec))


def product(values: Iterable[Scalar]) -> Scalar:
    return reduce(lambda acc, v: acc * v, values, ONE)
