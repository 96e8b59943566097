"""Transport planners for the multiplexed four-segment-pair control scheme."""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Mapping, Optional, Sequence

from logic.logging_config import configured_logger as logger
from model.dtos import MachineParams
from qvn.core.ions import IonString, TrackLocation
from qvn.core.layout import PAIRS_PER_WELL, JunctionKind, Track, TrapLayout
from qvn.shuttle.plan import MovePlan, PlanStep, shifted
from qvn.utils.exceptions import (
    BankMismatch,
    BudgetExceeded,
    InvalidArm,
    MismatchedDisplacement,
    Obstructed,
    OutOfRange,
    SpacingViolation,
)

Occupancy = Mapping[str, tuple[int, int]]


@dataclass(frozen=True)
class Mover:
    string_id: str
    path: Sequence[int]
    start: int
    locate: Callable[[int], int]


@dataclass(frozen=True)
class StringMove:
    string_id: str
    track_id: int
    from_index: int
    displacement: int


def window_width(params: MachineParams) -> int:
    return PAIRS_PER_WELL + params.lookahead


def walk(
    movers: Sequence[Mover],
    n_steps: int,
    direction: int,
    params: MachineParams,
    t0: float = 0.0,
    blocking: frozenset[tuple[int, int]] = frozenset(),
) -> list[PlanStep]:
    """
    Advance every mover's well ``n_steps`` positions along its path.

    The window trailing pair, well, leading pair plus ``lookahead`` pairs ahead is
    DAC-driven; the pair at window offset k always uses DAC ``(p - start) mod width``,
    so the released trailing DAC becomes the next leading DAC and all movers share one
    DAC numbering.
    """
    width = window_width(params)
    step_s = params.shuttle_step_s + params.mux_switch_s
    steps = []
    t = t0
    for i in range(n_steps):
        assignments = set(blocking)
        releases = set()
        wells = {}
        guarded = {}
        for mover in movers:
            path, w = mover.path, mover.start + i * direction
            window = [w + direction * (k - 1) for k in range(width)]
            assignments |= {((p - mover.start) % width, path[p]) for p in window if 0 <= p < len(path)}
            neighbours = (w - direction, w, w + direction, w + 2 * direction)
            guarded[mover.string_id] = tuple(path[p] for p in neighbours if 0 <= p < len(path))
            releases.add(path[w - direction])
            wells[mover.string_id] = mover.locate(w + direction)
        steps.append(PlanStep(t, step_s, frozenset(assignments), frozenset(releases), wells, guarded))
        t += step_s
    return steps


def _check_index(track: Track, index: int) -> None:
    if not 1 <= index <= track.n_pairs - 2:
        raise OutOfRange(f"well index on track {track.id}", index, 1, track.n_pairs - 2)


def _check_clear(
    track: Track, start: int, stop: int, moving: set[str], occupancy: Optional[Occupancy], width: int
) -> None:
    if not occupancy or start == stop:
        return
    direction = 1 if stop > start else -1
    others = [(sid, idx) for sid, (tid, idx) in occupancy.items() if tid == track.id and sid not in moving]
    for position in range(start + direction, stop + direction, direction):
        for string_id, index in others:
            if abs(index - position) <= width - 1:
                raise Obstructed(track.id, index, string_id)


def plan_linear_move(
    layout: TrapLayout,
    string_id: str,
    track_id: int,
    from_index: int,
    to_index: int,
    params: MachineParams,
    occupancy: Optional[Occupancy] = None,
) -> MovePlan:
    """
    Move one well along a track, one index per step.

    Args:
        layout: Trap layout
        string_id: String being moved
        track_id: Track carrying the string
        from_index: Current well index
        to_index: Target well index
        params: Machine parameters (step and switch times, look-ahead)
        occupancy: Other strings as ``string_id -> (track_id, index)``

    Returns:
        MovePlan: At most ``3 + lookahead`` DAC pairs per step

    Raises:
        OutOfRange: An index leaves the interior of the track
        Obstructed: Another string sits in the swept window
    """
    track = layout.track(track_id)
    bank = layout.bank(track.bank_id)
    width = window_width(params)
    _check_index(track, from_index)
    _check_index(track, to_index)
    if width > bank.n_independent_dac_pairs:
        raise BudgetExceeded(bank.id, width, bank.n_independent_dac_pairs)
    _check_clear(track, from_index, to_index, {string_id}, occupancy, width)

    direction = 1 if to_index >= from_index else -1
    ids = [pair.id for pair in track.pairs]
    steps = walk([Mover(string_id, ids, from_index, lambda p: p)], abs(to_index - from_index), direction, params)
    logger.debug(f"Linear move {string_id} on track {track_id}: {from_index}->{to_index}, {len(steps)} steps")
    return MovePlan(
        kind="linear",
        bank_id=bank.id,
        budget=bank.n_independent_dac_pairs,
        strings=(string_id,),
        steps=tuple(steps),
        final_locations={string_id: (track_id, to_index)},
    )


def plan_multi_string_move(
    layout: TrapLayout,
    moves: Sequence[StringMove],
    params: MachineParams,
    occupancy: Optional[Occupancy] = None,
) -> MovePlan:
    """
    Move several strings in lockstep with one shared set of DAC waveforms.

    The demultiplexer fans each DAC out to the corresponding pair of every well, so
    the plan needs exactly as many DAC pairs as a single-string move. Per-string
    stray-field compensation is lost (``shared_waveform``).
    """
    if not moves:
        raise SpacingViolation("no strings to move")
    displacements = [move.displacement for move in moves]
    if len(set(displacements)) != 1:
        raise MismatchedDisplacement(displacements)
    banks = {layout.track(move.track_id).bank_id for move in moves}
    if len(banks) != 1:
        raise BankMismatch(banks)
    if len(moves) == 1:
        move = moves[0]
        return plan_linear_move(
            layout, move.string_id, move.track_id, move.from_index, move.from_index + move.displacement, params, occupancy
        )

    width = window_width(params)
    by_track: dict[int, list[int]] = {}
    for move in moves:
        by_track.setdefault(move.track_id, []).append(move.from_index)
    spacings = set()
    for track_id, starts in by_track.items():
        starts.sort()
        gaps = {b - a for a, b in zip(starts, starts[1:])}
        spacings |= gaps
    if len(spacings) > 1:
        raise SpacingViolation(f"strings are not evenly spaced: spacings {sorted(spacings)}")
    if spacings and min(spacings) < width:
        raise SpacingViolation(f"spacing {min(spacings)} is below the {width}-pair control window")

    displacement = displacements[0]
    moving = {move.string_id for move in moves}
    movers = []
    finals = {}
    for move in moves:
        track = layout.track(move.track_id)
        to_index = move.from_index + displacement
        _check_index(track, move.from_index)
        _check_index(track, to_index)
        _check_clear(track, move.from_index, to_index, moving, occupancy, width)
        movers.append(Mover(move.string_id, [pair.id for pair in track.pairs], move.from_index, lambda p: p))
        finals[move.string_id] = (move.track_id, to_index)

    bank = layout.bank(banks.pop())
    if width > bank.n_independent_dac_pairs:
        raise BudgetExceeded(bank.id, width, bank.n_independent_dac_pairs)
    direction = 1 if displacement >= 0 else -1
    steps = walk(movers, abs(displacement), direction, params)
    logger.debug(f"Shared-waveform move of {len(moves)} strings by {displacement}")
    return MovePlan(
        kind="multi",
        bank_id=bank.id,
        budget=bank.n_independent_dac_pairs,
        strings=tuple(move.string_id for move in moves),
        steps=tuple(steps),
        shared_waveform=True,
        final_locations=finals,
    )


def traverse_junction(
    layout: TrapLayout,
    string_id: str,
    junction_id: int,
    in_arm: int,
    out_arm: int,
    params: MachineParams,
    occupancy: Optional[Occupancy] = None,
) -> MovePlan:
    """
    Carry a string parked next to a junction from one arm onto another.

    Every arm other than the entry and exit gets a blocking DAC on its pair nearest the
    junction for the whole traversal; those DACs come from the junction's extra budget,
    booked as bank ``junction:<id>`` and numbered above both arm banks. Pairs of the exit
    arm are booked on the exit track's bank.

    Raises:
        InvalidArm: Arms coincide or do not belong to the junction
        BudgetExceeded: More arms to block than extra DAC pairs
        Obstructed: Another string sits within a control window of the landing well
    """
    junction = layout.junction(junction_id)
    for arm in (in_arm, out_arm):
        if arm not in junction.arm_track_ids:
            raise InvalidArm(junction_id, arm)
    if in_arm == out_arm:
        raise InvalidArm(junction_id, in_arm, "entry and exit arm coincide")

    width = window_width(params)
    in_track, out_track = layout.track(in_arm), layout.track(out_arm)
    in_end, out_end = junction.end_of(in_arm), junction.end_of(out_arm)
    bank = layout.bank(in_track.bank_id)
    out_bank = layout.bank(out_track.bank_id)
    for arm_bank in (bank, out_bank):
        if width > arm_bank.n_independent_dac_pairs:
            raise BudgetExceeded(arm_bank.id, width, arm_bank.n_independent_dac_pairs)
    landing = out_track.park_index(out_end)
    if occupancy:
        for other, (track_id, index) in occupancy.items():
            if other != string_id and track_id == out_arm and abs(index - landing) <= width - 1:
                raise Obstructed(out_arm, index, other)

    others = [arm for arm in junction.arm_track_ids if arm not in (in_arm, out_arm)]
    if len(others) > junction.extra_pair_budget:
        raise BudgetExceeded(f"junction {junction_id}", len(others), junction.extra_pair_budget)
    first_extra = max(bank.n_independent_dac_pairs, out_bank.n_independent_dac_pairs)
    blocking = frozenset(
        (first_extra + k, layout.track(arm).toward(junction.end_of(arm))[-1]) for k, arm in enumerate(others)
    )

    inbound = in_track.toward(in_end)[-PAIRS_PER_WELL:]
    outbound = out_track.toward(out_end)[::-1][:PAIRS_PER_WELL]
    path = inbound + outbound
    out_index = {pair.id: pair.index_on_track for pair in out_track.pairs}
    in_index = {pair.id: pair.index_on_track for pair in in_track.pairs}

    def locate(p: int) -> int:
        seg = path[p]
        return out_index[seg] if seg in out_index else in_index[seg]

    junction_bank = f"junction:{junction_id}"
    pair_banks = {seg: out_bank.id if seg in out_index else bank.id for seg in path}
    pair_banks.update({seg: junction_bank for _, seg in blocking})
    bank_budgets = {
        bank.id: bank.n_independent_dac_pairs,
        out_bank.id: out_bank.n_independent_dac_pairs,
        junction_bank: junction.extra_pair_budget,
    }

    steps = [
        replace(step, pair_banks=pair_banks)
        for step in walk([Mover(string_id, path, 1, locate)], PAIRS_PER_WELL, 1, params, blocking=blocking)
    ]
    logger.debug(f"Junction {junction_id} traversal {in_arm}->{out_arm} blocks arms {others}")
    return MovePlan(
        kind="junction",
        bank_id=bank.id,
        budget=bank.n_independent_dac_pairs,
        strings=(string_id,),
        steps=tuple(steps),
        extra_budget=junction.extra_pair_budget,
        final_locations={string_id: (out_arm, landing)},
        bank_budgets=bank_budgets,
    )


def junction_park(layout: TrapLayout, junction_id: int, arm: int) -> TrackLocation:
    """Where a string waits on ``arm`` before entering the junction."""
    junction = layout.junction(junction_id)
    return TrackLocation(arm, layout.track(arm).park_index(junction.end_of(arm)))


def rotate_string(layout: TrapLayout, string: IonString, junction_id: int, params: MachineParams) -> MovePlan:
    """
    Reverse a string's ion order with three traversals of a Y junction.

    The string leaves arm 1 for arm 2, arm 2 for arm 3 and arm 3 back to arm 1, ending
    where it started with its orientation toggled.
    """
    junction = layout.junction(junction_id)
    if junction.kind != JunctionKind.Y:
        raise InvalidArm(junction_id, junction.arm_track_ids[0], "rotation needs a Y junction")
    arm1, arm2, arm3 = junction.arm_track_ids
    if string.location != junction_park(layout, junction_id, arm1):
        raise InvalidArm(junction_id, arm1, f"string {string.id} is not parked on arm 1")

    legs = [
        traverse_junction(layout, string.id, junction_id, a, b, params)
        for a, b in ((arm1, arm2), (arm2, arm3), (arm3, arm1))
    ]
    steps: list[PlanStep] = []
    offset = 0.0
    for leg in legs:
        steps.extend(shifted(step, offset) for step in leg.steps)
        offset += leg.duration_s
    return MovePlan(
        kind="rotation",
        bank_id=legs[0].bank_id,
        budget=legs[0].budget,
        strings=(string.id,),
        steps=tuple(steps),
        extra_budget=junction.extra_pair_budget,
        orientation_toggles=(string.id,),
        bank_budgets={bank: budget for leg in legs for bank, budget in leg.bank_budgets.items()},
        final_locations={string.id: (arm1, string.location.index)},
    )
