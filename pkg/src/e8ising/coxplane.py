"""Coxeter-plane projection of a root system and figure-data emitters.

The Coxeter element w acts on the span of the base with minimal polynomial
m(x) = x^2 - 2 cos(2pi/h) x + 1 on a unique plane P; projecting the roots
onto P drops them onto rank-many concentric circles (one per w-orbit),
whose radii reproduce the mass spectrum.  CSV and SVG emitters render the
projected points deterministically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .rootsystems import CoxeterElement, RootSystem, Vector
from .spectra import MassSpectrum, Orbit, orbit_decomposition

NULLSPACE_TOL = 1e-8
ROTATION_TOL = 1e-10
RADII_SPREAD_TOL = 1e-9
CIRCLE_CLUSTER_TOL = 1e-6  # display-only grouping of nearly equal radii

SVG_CANVAS = 1000
SVG_MAX_CIRCLE = 450.0


@dataclass(frozen=True)
class PlaneBasis:
    """Orthonormal ambient vectors u, v spanning the Coxeter plane."""

    u: np.ndarray
    v: np.ndarray


def coxeter_plane(w: CoxeterElement, h: int) -> PlaneBasis:
    """Extract the plane where w rotates by 2pi/h.

    Computed as the null space of w^2 - 2 cos(2pi/h) w + I (singular values
    below NULLSPACE_TOL); must be exactly 2-dimensional.  The in-plane frame
    is canonicalized by putting the first orbit representative's projection
    on the positive x-axis.
    """
    rank = w.matrix.shape[0]
    if rank < 2:
        raise ValueError("Coxeter plane needs rank >= 2")
    theta = 2 * math.pi / h
    m_of_w = w.matrix @ w.matrix - 2 * math.cos(theta) * w.matrix + np.eye(rank)
    _, svals, vt = np.linalg.svd(m_of_w)
    kernel = vt[svals < NULLSPACE_TOL]
    if kernel.shape[0] != 2:
        raise ValueError(f"kernel of the plane polynomial has dimension {kernel.shape[0]}, expected 2")

    u = w.frame @ kernel[0]
    v = w.frame @ kernel[1]

    # rotate (u, v) within the plane so the first representative lands on +x
    rep = w.simple_roots[0]
    rep_f = np.array([float(c) for c in rep]) * w.coloring.colors[0]
    a, b = rep_f @ u, rep_f @ v
    r = math.hypot(a, b)
    if r < 1e-12:
        raise ValueError("orbit representative projects to zero; plane extraction failed")
    u, v = (a * u + b * v) / r, (-b * u + a * v) / r

    # w restricted to the plane must be a rotation by +-2pi/h
    wu = w.frame @ (w.matrix @ (w.frame.T @ u))
    wv = w.frame @ (w.matrix @ (w.frame.T @ v))
    restricted = np.array([[u @ wu, u @ wv], [v @ wu, v @ wv]])
    expected = np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])
    if min(
        np.max(np.abs(restricted - expected)),
        np.max(np.abs(restricted - expected.T)),
    ) > ROTATION_TOL:
        raise ValueError("element does not restrict to a rotation by 2pi/h on the extracted plane")
    return PlaneBasis(u=u, v=v)


@dataclass(frozen=True)
class ProjectedRoot:
    """A root's orthogonal image in the plane, tagged with its orbit."""

    x: float
    y: float
    orbit_index: int
    root: Vector


def project(
    rs: RootSystem,
    basis: PlaneBasis,
    orbits: Optional[Sequence[Orbit]] = None,
) -> list[ProjectedRoot]:
    """Project every root onto the plane, labeling points by Coxeter orbit.

    If `orbits` is omitted it is recomputed from the default bicolored
    Coxeter element, which matches a basis built from the same default.
    """
    if orbits is None:
        from .rootsystems import bicolor, coxeter_element

        orbits = orbit_decomposition(rs, coxeter_element(rs, bicolor(rs.cartan)))
    orbit_of: dict[Vector, int] = {}
    for orb in orbits:
        for root in orb.members:
            orbit_of[root] = orb.index
    points = []
    for root in rs.roots:
        rf = np.array([float(c) for c in root])
        points.append(
            ProjectedRoot(x=float(rf @ basis.u), y=float(rf @ basis.v), orbit_index=orbit_of[root], root=root)
        )
    return points


def circle_radii(points: Sequence[ProjectedRoot], rel_tol: float = RADII_SPREAD_TOL) -> MassSpectrum:
    """Radii of the orbit circles as a normalized multiset (one entry per orbit).

    Raises if any orbit's points spread by more than rel_tol relative.
    """
    by_orbit: dict[int, list[float]] = {}
    for p in points:
        by_orbit.setdefault(p.orbit_index, []).append(math.hypot(p.x, p.y))
    radii = []
    for index in sorted(by_orbit):
        rs_ = by_orbit[index]
        lo, hi = min(rs_), max(rs_)
        if hi - lo > rel_tol * hi:
            raise ValueError(f"orbit {index} radius spread {(hi - lo) / hi:.3e} exceeds {rel_tol}")
        radii.append(hi)
    return MassSpectrum.from_values(radii)


def distinct_circle_count(points: Sequence[ProjectedRoot], rel_tol: float = CIRCLE_CLUSTER_TOL) -> int:
    """Number of visually distinct circles (radii clustered at rel_tol)."""
    radii = sorted(
        max(math.hypot(p.x, p.y) for p in points if p.orbit_index == i)
        for i in {p.orbit_index for p in points}
    )
    count = 1
    for prev, cur in zip(radii, radii[1:]):
        if cur - prev > rel_tol * cur:
            count += 1
    return count


def _sorted_for_output(points: Sequence[ProjectedRoot]) -> list[ProjectedRoot]:
    return sorted(points, key=lambda p: (p.orbit_index, math.atan2(p.y, p.x)))


def emit_csv(points: Sequence[ProjectedRoot]) -> str:
    """CSV document `x,y,orbit`, rows sorted by (orbit, angle), 12 significant digits."""
    if not points:
        raise ValueError("no points to emit")
    lines = ["x,y,orbit"]
    for p in _sorted_for_output(points):
        lines.append(f"{p.x:.12g},{p.y:.12g},{p.orbit_index}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SvgStyle:
    """Rendering knobs for the SVG emitter."""

    point_radius: float = 4.0
    background: str = "#ffffff"
    palette: tuple[str, ...] = (
        "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
        "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
    )


def emit_svg(points: Sequence[ProjectedRoot], style: SvgStyle = SvgStyle()) -> str:
    """SVG document with one circle element per projected root.

    Canvas is 1000x1000 units; radii are scaled so the largest orbit circle
    has radius 450.  Colors are keyed by orbit index.  Output is
    deterministic for fixed input and style.
    """
    if not points:
        raise ValueError("no points to emit")
    max_radius = max(math.hypot(p.x, p.y) for p in points)
    scale = SVG_MAX_CIRCLE / max_radius
    center = SVG_CANVAS / 2
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_CANVAS}" height="{SVG_CANVAS}" '
        f'viewBox="0 0 {SVG_CANVAS} {SVG_CANVAS}">',
        f'  <rect width="{SVG_CANVAS}" height="{SVG_CANVAS}" fill="{style.background}"/>',
    ]
    for p in _sorted_for_output(points):
        cx = center + p.x * scale
        cy = center - p.y * scale
        color = style.palette[p.orbit_index % len(style.palette)]
        lines.append(
            f'  <circle cx="{cx:.3f}" cy="{cy:.3f}" r="{style.point_radius:.3f}" fill="{color}"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
