"""Timed DAC/segment-pair assignment plans and their audit."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

IN_CELL = -1


@dataclass(frozen=True)
class PlanStep:
    """
    One well advance (or one multiplexer switch).

    ``assignments`` is the full (dac, segment pair) relation active during the step;
    a DAC may drive several pairs when a demultiplexer fans it out. ``releases`` revert
    to their static set or idle bank at the end of the step. ``guarded`` names, per
    string, the pairs that must be DAC-controlled while the step runs. ``pair_banks`` books
    pairs driven by a bank other than the plan's own.
    """

    time_offset_s: float
    duration_s: float
    assignments: frozenset[tuple[int, int]]
    releases: frozenset[int]
    well_positions: dict[str, int]
    guarded: dict[str, tuple[int, ...]] = field(default_factory=dict)
    pair_banks: dict[int, str] = field(default_factory=dict)

    @property
    def active_dacs(self) -> set[int]:
        return {dac for dac, _ in self.assignments}

    def to_record(self) -> dict:
        return {
            "t": self.time_offset_s,
            "assign": sorted([dac, seg] for dac, seg in self.assignments),
            "release": sorted(self.releases),
            "wells": dict(sorted(self.well_positions.items())),
        }


@dataclass(frozen=True)
class MovePlan:
    kind: str
    bank_id: str
    budget: int
    strings: tuple[str, ...]
    steps: tuple[PlanStep, ...] = ()
    extra_budget: int = 0
    shared_waveform: bool = False
    orientation_toggles: tuple[str, ...] = ()
    final_locations: dict[str, tuple[int, int]] = field(default_factory=dict)
    cell: Optional[tuple[str, tuple[int, int]]] = None
    # budgets of the banks named in step.pair_banks
    bank_budgets: dict[str, int] = field(default_factory=dict)

    @property
    def duration_s(self) -> float:
        return sum(step.duration_s for step in self.steps)

    @property
    def handoffs(self) -> int:
        """Multiplexer switch actions: one per step."""
        return len(self.steps)

    @property
    def dac_pairs_used(self) -> set[int]:
        return {dac for step in self.steps for dac in step.active_dacs}

    @property
    def peak_active(self) -> int:
        return max((len(step.active_dacs) for step in self.steps), default=0)

    @property
    def touched_pairs(self) -> set[int]:
        return {seg for step in self.steps for _, seg in step.assignments} | {
            seg for step in self.steps for seg in step.releases
        }

    def budget_of(self, bank_id: str) -> int:
        return self.bank_budgets.get(bank_id, self.budget)

    def bank_usage(self, step: PlanStep) -> dict[str, set[int]]:
        """DACs of each bank active during ``step``; the plan's own bank is always present."""
        usage: dict[str, set[int]] = {self.bank_id: set()}
        for dac, seg in step.assignments:
            usage.setdefault(step.pair_banks.get(seg, self.bank_id), set()).add(dac)
        return usage

    def final_location(self, string_id: str) -> Optional[tuple[int, int]]:
        return self.final_locations.get(string_id)

    def to_jsonl(self) -> str:
        """One JSON object per step."""
        return "".join(json.dumps(step.to_record()) + "\n" for step in self.steps)


def shifted(step: PlanStep, offset_s: float) -> PlanStep:
    return PlanStep(
        time_offset_s=step.time_offset_s + offset_s,
        duration_s=step.duration_s,
        assignments=step.assignments,
        releases=step.releases,
        well_positions=step.well_positions,
        guarded=step.guarded,
        pair_banks=step.pair_banks,
    )


def audit_plan(plan: MovePlan) -> list[str]:
    """
    Brute-force check of a plan against the multiplexing rules.

    Returns:
        list[str]: Human-readable violations; empty when the plan is sound
    """
    violations = []
    limit = max([plan.budget, *plan.bank_budgets.values()]) + plan.extra_budget
    for number, step in enumerate(plan.steps):
        active = step.active_dacs
        if len(active) > limit:
            violations.append(f"step {number}: {len(active)} DAC pairs active, budget {limit}")
        for bank_id, dacs in sorted(plan.bank_usage(step).items()):
            if len(dacs) > plan.budget_of(bank_id):
                violations.append(f"step {number}: bank {bank_id} drives {len(dacs)} DAC pairs, budget {plan.budget_of(bank_id)}")
        controllers: dict[int, int] = {}
        for dac, seg in step.assignments:
            if controllers.setdefault(seg, dac) != dac:
                violations.append(f"step {number}: pair {seg} driven by DACs {controllers[seg]} and {dac}")
        controlled = {seg for _, seg in step.assignments}
        for string_id, pairs in step.guarded.items():
            missing = [seg for seg in pairs if seg not in controlled]
            if missing:
                violations.append(f"step {number}: well of {string_id} loses control of pairs {missing}")
    return violations
