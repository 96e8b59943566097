"""Detection and initialization pipeline: GHZ timing, zone count and photon budget."""
import math

from scipy.stats import binom

from logic.logging_config import configured_logger as logger
from model.dtos import DetectionBudget, DetectionReport, MachineParams
from qvn.utils.exceptions import InfeasibleCollection
from qvn.utils.units import ceil_ratio, to_ns, to_s

SWAP_GATES = 3
# a single cone of half-angle 90 degrees (NA 1) sees half the emission
MAX_CONE_COLLECTION = 0.5


def ghz_generation_time(n_ancillas: int, t_2q_s: float) -> float:
    """Swap onto the detection species (three entangling gates) plus one fan-out CNOT per extra ancilla."""
    if n_ancillas < 1:
        raise ValueError("a GHZ detection needs at least one ancilla")
    return to_s((SWAP_GATES + n_ancillas - 1) * to_ns(t_2q_s))


def initialization_time(t_2q_s: float) -> float:
    """Re-initialization by swapping with a freshly prepared detection ion."""
    return to_s(SWAP_GATES * to_ns(t_2q_s))


def required_detection_zones(ghz_time_s: float, required_interval_s: float) -> int:
    if ghz_time_s <= 0 or required_interval_s <= 0:
        raise ValueError("times must be positive")
    return max(1, ceil_ratio(ghz_time_s, required_interval_s))


def detection_zone_beat(params: MachineParams) -> float:
    """Slowest sub-zone of a detection zone: GHZ preparation or fluorescence detection."""
    return max(ghz_generation_time(params.n_ghz_ancillas, params.t_2q_s), params.detection_time_s)


def detection_budget(budget: DetectionBudget) -> DetectionReport:
    """
    Photon and error budget of a shelving detection with GHZ fan-out.

    Args:
        budget: Scatter rate, timing, efficiencies and ancilla count

    Returns:
        DetectionReport: Emitted photons, expected clicks, shelving infidelity, the
        collection efficiency and numerical aperture needed for the required clicks,
        and the majority-vote error as leading-order ``p**m`` and exact binomial tail

    Raises:
        InfeasibleCollection: The required collection efficiency exceeds what one
            collection cone can reach (half the solid angle, NA 1)
    """
    n = budget.n_ghz_ancillas
    photons = budget.scatter_rate_Hz * budget.detection_time_s * n
    clicks = photons * budget.collection_efficiency * budget.detector_efficiency
    p = -math.expm1(-budget.detection_time_s / budget.d_state_lifetime_s)
    min_collection = budget.clicks_required / (photons * budget.detector_efficiency)
    if min_collection > MAX_CONE_COLLECTION:
        raise InfeasibleCollection(min_collection, MAX_CONE_COLLECTION)
    # collection = (1 - cos θ) / 2 over the cone of half-angle θ
    cos_theta = 1 - 2 * min_collection
    min_na = math.sqrt(max(0.0, 1 - cos_theta**2))
    decays = n // 2 + 1
    report = DetectionReport(
        photons_emitted=photons,
        expected_clicks=clicks,
        shelving_infidelity=p,
        min_collection_for_clicks=min_collection,
        min_NA=min_na,
        decays_to_flip=decays,
        majority_vote_error_leading=p**decays,
        majority_vote_error_exact=float(binom.sf(decays - 1, n, p)),
    )
    logger.debug(f"Detection budget: {photons:.1f} photons, NA >= {min_na:.3f}")
    return report
