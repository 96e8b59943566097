"""Unit helpers shared across the package."""

import math

NS_PER_S = 1_000_000_000


def to_ns(seconds: float) -> int:
    """Round a duration in seconds to integer nanoseconds."""
    return int(round(seconds * NS_PER_S))


def to_s(ns: int) -> float:
    return ns / NS_PER_S


def ceil_ratio(numerator_s: float, denominator_s: float) -> int:
    """Ceiling of a ratio of two durations, evaluated on the nanosecond grid."""
    num, den = to_ns(numerator_s), to_ns(denominator_s)
    if den <= 0:
        # sub-nanosecond denominators fall back to float arithmetic
        return math.ceil(numerator_s / denominator_s)
    return -(-num // den)


def per_second(count: float, duration_s: float) -> float:
    """Rate ``count / duration`` with the duration snapped to the nanosecond grid."""
    ns = to_ns(duration_s)
    if ns <= 0:
        return count / duration_s
    return count * NS_PER_S / ns
