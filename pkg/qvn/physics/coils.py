"""Magnetic field of filamentary coil systems and their homogeneous volume."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.constants import mu_0

from logic.logging_config import configured_logger as logger
from qvn.utils.exceptions import OutOfRange, SingularPoint

START_SEGMENTS = 32
MAX_SEGMENTS = 1 << 15
CONVERGENCE = 1e-13
SPHERE_POINTS = 256
MAXWELL_OUTER_TURNS = 49
MAXWELL_CENTER_TURNS = 64


class CoilKind(str, Enum):
    HELMHOLTZ = "Helmholtz"
    MAXWELL = "Maxwell"


def normalize(v: np.ndarray) -> np.ndarray:
    length = np.linalg.norm(v)
    if length < 1e-12:
        raise ValueError("cannot normalize a zero vector")
    return v / length


def orthonormal_frame(axis: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Two unit vectors spanning the plane normal to ``axis``, plus the axis."""
    n = normalize(np.asarray(axis, dtype=np.float64))
    helper = np.array([1.0, 0.0, 0.0]) if abs(n[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    u = normalize(helper - helper.dot(n) * n)
    v = np.cross(n, u)
    return u, v, n


@dataclass(frozen=True)
class CurrentLoop:
    """Filamentary circular loop centred at ``axial_offset`` along the system axis."""

    axial_offset: float
    radius: float
    current: float


@dataclass(frozen=True)
class CoilSystem:
    kind: CoilKind
    radius_m: float
    ampere_turns: float = 1.0
    axis: tuple[float, float, float] = (0.0, 0.0, 1.0)
    center: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self) -> None:
        if self.radius_m <= 0:
            raise ValueError("coil radius must be positive")

    def loops(self) -> list[CurrentLoop]:
        r, i = self.radius_m, self.ampere_turns
        if self.kind == CoilKind.HELMHOLTZ:
            # spacing equals the radius
            return [CurrentLoop(-r / 2, r, i), CurrentLoop(r / 2, r, i)]
        outer_r = r * math.sqrt(4 / 7)
        offset = r * math.sqrt(3 / 7)
        outer_i = i * MAXWELL_OUTER_TURNS / MAXWELL_CENTER_TURNS
        return [CurrentLoop(-offset, outer_r, outer_i), CurrentLoop(0.0, r, i), CurrentLoop(offset, outer_r, outer_i)]


def single_loop(radius_m: float, ampere_turns: float = 1.0) -> list[CurrentLoop]:
    return [CurrentLoop(0.0, radius_m, ampere_turns)]


def _loop_field(points: np.ndarray, loop: CurrentLoop, frame, center: np.ndarray, segments: int) -> np.ndarray:
    u, v, n = frame
    phi = 2 * np.pi * np.arange(segments) / segments
    ring = center + loop.axial_offset * n + loop.radius * (np.outer(np.cos(phi), u) + np.outer(np.sin(phi), v))
    tangent = loop.radius * (np.outer(-np.sin(phi), u) + np.outer(np.cos(phi), v))
    r = points[:, None, :] - ring[None, :, :]
    dist3 = np.linalg.norm(r, axis=2) ** 3
    integrand = np.cross(tangent[None, :, :], r) / dist3[:, :, None]
    return mu_0 * loop.current / (4 * np.pi) * integrand.sum(axis=1) * (2 * np.pi / segments)


def _check_points(points: np.ndarray, loops: list[CurrentLoop], frame, center: np.ndarray) -> None:
    u, v, n = frame
    rel = points - center
    z = rel @ n
    rho = np.linalg.norm(rel - np.outer(z, n), axis=1)
    for loop in loops:
        gap = np.hypot(rho - loop.radius, z - loop.axial_offset)
        bad = np.nonzero(gap < 1e-9 * loop.radius)[0]
        if bad.size:
            raise SingularPoint(tuple(float(c) for c in points[bad[0]]))


def field_at_points(
    loops: list[CurrentLoop],
    points: np.ndarray,
    axis: tuple[float, float, float] = (0.0, 0.0, 1.0),
    center: tuple[float, float, float] = (0.0, 0.0, 0.0),
) -> np.ndarray:
    """
    Biot-Savart field of a set of coaxial loops at many points.

    Each loop is integrated with the uniform-angle trapezoid rule, which converges
    geometrically for the periodic integrand; the segment count doubles until the
    largest relative change falls below ``CONVERGENCE``.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    frame = orthonormal_frame(np.asarray(axis, dtype=np.float64))
    origin = np.asarray(center, dtype=np.float64)
    _check_points(pts, loops, frame, origin)

    def total(segments: int) -> np.ndarray:
        return sum(_loop_field(pts, loop, frame, origin, segments) for loop in loops)  # type: ignore[return-value]

    segments = START_SEGMENTS
    previous = total(segments)
    while segments < MAX_SEGMENTS:
        segments *= 2
        current = total(segments)
        scale = np.maximum(np.linalg.norm(current, axis=1), np.finfo(np.float64).tiny)
        change = np.max(np.linalg.norm(current - previous, axis=1) / scale)
        previous = current
        if change < CONVERGENCE:
            break
    else:
        logger.warning(f"Biot-Savart quadrature stopped at {segments} segments")
    return previous


def field_at(coils: CoilSystem, point) -> np.ndarray:
    """Field vector in tesla at one point."""
    return field_at_points(coils.loops(), np.asarray(point, dtype=np.float64), coils.axis, coils.center)[0]


def fibonacci_sphere(n_points: int = SPHERE_POINTS) -> np.ndarray:
    """Deterministic near-uniform unit vectors plus the six coordinate directions."""
    k = np.arange(n_points) + 0.5
    polar = np.arccos(1 - 2 * k / n_points)
    azimuth = np.pi * (1 + 5**0.5) * k
    lattice = np.column_stack([np.cos(azimuth) * np.sin(polar), np.sin(azimuth) * np.sin(polar), np.cos(polar)])
    return np.vstack([lattice, np.eye(3), -np.eye(3)])


def max_deviation(coils: CoilSystem, r_over_R: float, directions: np.ndarray | None = None) -> float:
    """Largest ``|B - B0| / |B0|`` over a sphere of radius ``r_over_R * R`` about the centre."""
    directions = fibonacci_sphere() if directions is None else directions
    u, v, n = orthonormal_frame(np.asarray(coils.axis, dtype=np.float64))
    # sample in the coil frame so the result follows the coils under rotation
    frame = np.column_stack([u, v, n])
    center = np.asarray(coils.center, dtype=np.float64)
    points = center + r_over_R * coils.radius_m * directions @ frame.T
    loops = coils.loops()
    b0 = field_at_points(loops, center, coils.axis, coils.center)[0]
    b = field_at_points(loops, points, coils.axis, coils.center)
    return float(np.max(np.linalg.norm(b - b0, axis=1)) / np.linalg.norm(b0))


def homogeneous_sphere_radius(
    coils: CoilSystem, rel_tolerance: float, n_points: int = SPHERE_POINTS, upper: float = 0.5, iterations: int = 48
) -> float:
    """
    Largest sphere radius, relative to the coil radius, with field deviation within tolerance.

    Args:
        coils: Coil system
        rel_tolerance: Allowed relative deviation, in (0, 1e-2]
        n_points: Fibonacci-lattice points on the sphere (at least 200)
        upper: Largest r/R searched
        iterations: Bisection steps

    Returns:
        float: r/R
    """
    if not 0 < rel_tolerance <= 1e-2:
        raise OutOfRange("rel_tolerance", rel_tolerance, 0.0, 1e-2)
    directions = fibonacci_sphere(max(n_points, 200))
    if max_deviation(coils, upper, directions) <= rel_tolerance:
        return upper
    low, high = 0.0, upper
    for _ in range(iterations):
        mid = (low + high) / 2
        if max_deviation(coils, mid, directions) <= rel_tolerance:
            low = mid
        else:
            high = mid
    logger.debug(f"{coils.kind.value}: homogeneous to {rel_tolerance:g} within r/R={low:.4f}")
    return low


def required_coil_radius(kind: CoilKind, trap_diagonal_m: float, rel_tolerance: float) -> float:
    """Coil radius whose homogeneous sphere encloses a trap of the given diagonal."""
    if trap_diagonal_m <= 0:
        raise ValueError("trap diagonal must be positive")
    ratio = homogeneous_sphere_radius(CoilSystem(kind, 1.0), rel_tolerance)
    return (trap_diagonal_m / 2) / ratio


def shield_size_range(coil_radius_m: float) -> tuple[float, float]:
    """Magnetic shield extent, two to three times the coil radius."""
    return 2 * coil_radius_m, 3 * coil_radius_m
