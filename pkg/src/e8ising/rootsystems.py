"""Simply-laced root systems, Cartan matrices, and Coxeter elements.

Root coordinates are exact: every vector is a tuple of Fractions (all
coordinates are integers or half-integers in the realizations used here),
so reflection closure and orbit bookkeeping never touch floating point.
Floats enter only in the Coxeter element's matrix and its eigenstructure.

Realizations: A_l lives in the sum-zero hyperplane of R^(l+1); D_l uses the
standard basis of R^l; E8 uses the even coordinate system of R^8 (roots
+-e_i +- e_j and half-integer vectors with an even number of minus signs);
E6 and E7 are the subsystems of E8 orthogonal to e6+e8 and/or e7+e8,
obtained by dropping simple roots from the E8 base.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

Vector = tuple[Fraction, ...]

FAMILIES = ("A", "D", "E")

#: Tolerances for the floating-point side (Coxeter matrix checks).
ORTHOGONALITY_TOL = 1e-12
ORDER_TOL = 1e-10
EXPONENT_ANGLE_TOL = 1e-8


@dataclass(frozen=True)
class SimpleTypeId:
    """A simple type label: family A (rank >= 1), D (rank >= 3), or E (6, 7, 8)."""

    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.family == "A" and self.rank < 1:
            raise ValueError("A-family rank must be >= 1")
        if self.family == "D" and self.rank < 3:
            raise ValueError("D-family rank must be >= 3")
        if self.family == "E" and self.rank not in (6, 7, 8):
            raise ValueError("E-family rank must be 6, 7, or 8")

    @classmethod
    def from_string(cls, label: str) -> "SimpleTypeId":
        label = label.strip()
        if len(label) < 2 or not label[1:].isdigit():
            raise ValueError(f"cannot parse type label {label!r} (expected e.g. 'A2', 'D4', 'E8')")
        return cls(label[0].upper(), int(label[1:]))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def dot(x: Vector, y: Vector) -> Fraction:
    """Exact inner product."""
    return sum(a * b for a, b in zip(x, y))


def reflect(x: Vector, beta: Vector) -> Vector:
    """Reflection of x in the hyperplane orthogonal to beta, exact."""
    c = 2 * dot(x, beta) / dot(beta, beta)
    return tuple(xi - c * bi for xi, bi in zip(x, beta))


def _unit(dim: int, i: int, j: int, sj: int) -> Vector:
    v = [Fraction(0)] * dim
    v[i] = Fraction(1)
    v[j] = Fraction(sj)
    return tuple(v)


def _e8_base() -> list[Vector]:
    # Standard ordering: matches the usual 8x8 E8 Cartan matrix with
    # node 1 -- node 3, node 2 -- node 4, and the chain 3-4-5-6-7-8.
    a1 = tuple(Fraction(s, 2) for s in (1, -1, -1, -1, -1, -1, -1, 1))
    a2 = _unit(8, 0, 1, +1)
    chain = [_unit(8, i, i - 1, -1) for i in range(1, 7)]
    return [a1, a2] + chain


def simple_roots(type_id: SimpleTypeId) -> list[Vector]:
    """Simple roots of the given type, normalized so every root has (b, b) = 2."""
    fam, l = type_id.family, type_id.rank
    if fam == "A":
        return [_unit(l + 1, i, i + 1, -1) for i in range(l)]
    if fam == "D":
        base = [_unit(l, i, i + 1, -1) for i in range(l - 1)]
        base.append(_unit(l, l - 2, l - 1, +1))
        return base
    return _e8_base()[:l]


def cartan_matrix(B: Sequence[Vector]) -> np.ndarray:
    """Cartan matrix C_ij = 2(b_i, b_j)/(b_j, b_j) of a base, as an integer array.

    Raises ValueError if any entry is not an integer (the base is not
    crystallographic).
    """
    n = len(B)
    C = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            v = 2 * dot(B[i], B[j]) / dot(B[j], B[j])
            if v.denominator != 1:
                raise ValueError(f"non-integer Cartan entry 2(b{i},b{j})/(b{j},b{j}) = {v}")
            C[i, j] = int(v)
    return C


@dataclass(frozen=True)
class RootSystem:
    """A finite root system: base, full root set, Cartan matrix, Coxeter number."""

    type_id: Optional[SimpleTypeId]
    ambient_dim: int
    simple_roots: tuple[Vector, ...]
    roots: tuple[Vector, ...]
    cartan: np.ndarray
    coxeter_number: int

    @property
    def rank(self) -> int:
        return len(self.simple_roots)


def close_under_reflections(B: Sequence[Vector], type_id: Optional[SimpleTypeId] = None) -> RootSystem:
    """Close a base under its simple reflections and assemble the root system.

    Worklist closure with exact arithmetic; deduplication is exact tuple
    equality.  A safety bound aborts if the orbit keeps growing, which
    happens only for non-crystallographic (infinite reflection group) input.
    """
    B = [tuple(Fraction(c) for c in b) for b in B]
    if not B:
        raise ValueError("empty base")
    dims = {len(b) for b in B}
    if len(dims) != 1:
        raise ValueError("base vectors of mixed dimension")
    rank = len(B)
    if np.linalg.matrix_rank(np.array([[float(c) for c in b] for b in B])) != rank:
        raise ValueError("base is linearly dependent")
    C = cartan_matrix(B)  # also validates crystallographic integrality

    max_roots = 16 * rank * (rank + 1)
    seen: set[Vector] = set(B)
    queue: deque[Vector] = deque(B)
    while queue:
        x = queue.popleft()
        for b in B:
            y = reflect(x, b)
            if y not in seen:
                seen.add(y)
                queue.append(y)
                if len(seen) > max_roots:
                    raise ValueError(f"reflection closure exceeded {max_roots} vectors; input is not a crystallographic base")
    roots = tuple(sorted(seen))

    if len(roots) % rank != 0:
        raise ValueError(f"|R| = {len(roots)} not divisible by rank {rank}")
    return RootSystem(
        type_id=type_id,
        ambient_dim=len(roots[0]),
        simple_roots=tuple(B),
        roots=roots,
        cartan=C,
        coxeter_number=len(roots) // rank,
    )


def root_system(type_id: SimpleTypeId) -> RootSystem:
    """Construct the full root system of a simple type."""
    return close_under_reflections(simple_roots(type_id), type_id)


def coxeter_number(rs: RootSystem) -> int:
    """Coxeter number h = |R| / rank."""
    if len(rs.roots) % rs.rank != 0:
        raise ValueError("root count not divisible by rank")
    return len(rs.roots) // rs.rank


@dataclass(frozen=True)
class Bicoloring:
    """Proper 2-coloring of the Dynkin diagram; colors[i] is +1 or -1."""

    colors: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.colors)


def bicolor(cartan: np.ndarray) -> Bicoloring:
    """2-color the Dynkin diagram encoded by a Cartan matrix.

    The lowest-index node of each connected component gets +1; neighbors
    alternate.  The diagram of a valid base is a forest, so the defensive
    bipartiteness check can only fire on corrupted input.
    """
    C = np.asarray(cartan)
    n = C.shape[0]
    colors = [0] * n
    for start in range(n):
        if colors[start] != 0:
            continue
        colors[start] = 1
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if j != i and C[i, j] != 0:
                    if colors[j] == 0:
                        colors[j] = -colors[i]
                        queue.append(j)
                    elif colors[j] == colors[i]:
                        raise ValueError("diagram is not bipartite")
    return Bicoloring(tuple(colors))


@dataclass(frozen=True)
class CoxeterElement:
    """Product of all simple reflections, +1-colored factors first.

    `matrix` is the l-by-l orthogonal matrix of the element in the
    orthonormal frame `frame` (ambient_dim-by-l, columns spanning the base).
    `ordering` lists the simple-root indices in product order; the exact
    action on root vectors composes the reflections right-to-left.
    """

    matrix: np.ndarray
    coloring: Bicoloring
    ordering: tuple[int, ...]
    frame: np.ndarray
    simple_roots: tuple[Vector, ...]

    def act(self, x: Vector) -> Vector:
        """Apply the element to an exact vector (exact arithmetic)."""
        for i in reversed(self.ordering):
            x = reflect(x, self.simple_roots[i])
        return x


def coxeter_element(rs: RootSystem, coloring: Optional[Bicoloring] = None) -> CoxeterElement:
    """Build the bicolored Coxeter element of a root system.

    The product order is all +1-colored reflections (ascending index)
    followed by all -1-colored ones.  Any proper coloring is accepted;
    different choices give conjugate elements.
    """
    if coloring is None:
        coloring = bicolor(rs.cartan)
    if len(coloring) != rs.rank:
        raise ValueError("coloring size does not match rank")
    for i in range(rs.rank):
        for j in range(rs.rank):
            if i != j and rs.cartan[i, j] != 0 and coloring.colors[i] == coloring.colors[j]:
                raise ValueError(f"coloring is not proper: adjacent nodes {i}, {j} share color")

    base_mat = np.array([[float(c) for c in b] for b in rs.simple_roots]).T
    frame, _ = np.linalg.qr(base_mat)
    coords = [frame.T @ base_mat[:, i] for i in range(rs.rank)]

    ordering = tuple(
        [i for i in range(rs.rank) if coloring.colors[i] == 1]
        + [i for i in range(rs.rank) if coloring.colors[i] == -1]
    )
    w = np.eye(rs.rank)
    for i in ordering:
        b = coords[i]
        w = w @ (np.eye(rs.rank) - 2.0 * np.outer(b, b) / (b @ b))
    return CoxeterElement(
        matrix=w,
        coloring=coloring,
        ordering=ordering,
        frame=frame,
        simple_roots=rs.simple_roots,
    )


def exponents(w: CoxeterElement, h: int) -> list[int]:
    """Exponents of the group: integers m with e^(2*pi*i*m/h) an eigenvalue of w.

    Returned sorted, with multiplicity; each lies in [1, h-1] and the
    multiset is symmetric under m -> h - m.
    """
    eigs = np.linalg.eigvals(w.matrix)
    ms: list[int] = []
    for lam in eigs:
        angle = np.angle(lam)
        m = round(angle * h / (2 * np.pi)) % h
        # compare angles modulo 2*pi (an eigenvalue of -1 may report +-pi)
        diff = (angle - 2 * np.pi * m / h + np.pi) % (2 * np.pi) - np.pi
        if abs(diff) > EXPONENT_ANGLE_TOL:
            raise ValueError(f"eigenvalue angle {angle} is not a multiple of 2*pi/{h}")
        if m == 0:
            raise ValueError("eigenvalue 1 encountered; element is not a Coxeter element of order h")
        ms.append(m)
    return sorted(ms)
