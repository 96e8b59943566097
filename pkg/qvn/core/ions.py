"""Ions, ion strings and circuits."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import TYPE_CHECKING, Optional

from qvn.core.layout import Cell
from qvn.utils.exceptions import ValidationError

if TYPE_CHECKING:
    from qvn.shuttle.plan import MovePlan


class IonRole(str, Enum):
    QUBIT = "qubit"
    COOLING = "cooling"
    DETECTION = "detection"


class Orientation(str, Enum):
    FORWARD = "forward"
    REVERSED = "reversed"

    def toggled(self) -> "Orientation":
        return Orientation.REVERSED if self is Orientation.FORWARD else Orientation.FORWARD


@dataclass(frozen=True)
class Ion:
    species_id: str
    role: IonRole


@dataclass(frozen=True)
class TrackLocation:
    track_id: int
    index: int


@dataclass(frozen=True)
class IonString:
    id: str
    ions: tuple[Ion, ...]
    location: TrackLocation
    orientation: Orientation = Orientation.FORWARD

    @property
    def qubit_ions(self) -> int:
        return sum(1 for ion in self.ions if ion.role == IonRole.QUBIT)

    def axis_order(self) -> tuple[Ion, ...]:
        """Ions as they read along the track axis."""
        return self.ions if self.orientation is Orientation.FORWARD else self.ions[::-1]

    def after(self, plan: "MovePlan") -> "IonString":
        """String state once ``plan`` has been applied."""
        orientation = self.orientation
        if plan.orientation_toggles.count(self.id) % 2:
            orientation = orientation.toggled()
        location = self.location
        final = plan.final_location(self.id)
        if final is not None:
            location = TrackLocation(*final)
        return replace(self, location=location, orientation=orientation)


def build_string(
    string_id: str,
    location: TrackLocation,
    qubit_species: str,
    cooling_species: str,
    qubit_ions: int = 8,
    cooling_ions: int = 2,
) -> IonString:
    """Qubit ions with the cooling ions split evenly around them."""
    left = cooling_ions // 2
    ions = (
        [Ion(cooling_species, IonRole.COOLING)] * left
        + [Ion(qubit_species, IonRole.QUBIT)] * qubit_ions
        + [Ion(cooling_species, IonRole.COOLING)] * (cooling_ions - left)
    )
    return IonString(string_id, tuple(ions), location)


class GateKind(str, Enum):
    SINGLE_QUBIT = "SingleQubitGate"
    TWO_QUBIT = "TwoQubitGate"
    MEASURE = "Measure"
    INIT = "Init"


OP_NAMES: dict[str, GateKind] = {
    **{name: GateKind.SINGLE_QUBIT for name in ("h", "x", "y", "z", "s", "sdg", "t", "tdg", "rx", "ry", "rz", "u")},
    **{name: GateKind.TWO_QUBIT for name in ("cx", "cnot", "cz", "ms", "xx", "zz")},
    "measure": GateKind.MEASURE,
    "init": GateKind.INIT,
    "reset": GateKind.INIT,
}

ARITY = {GateKind.SINGLE_QUBIT: 1, GateKind.TWO_QUBIT: 2, GateKind.MEASURE: 1, GateKind.INIT: 1}


@dataclass(frozen=True)
class CircuitOp:
    kind: GateKind
    qubits: tuple[int, ...]
    name: str = ""


@dataclass(frozen=True)
class CellRef:
    zone_id: str
    cell: Cell
    slot: int = 0

    @property
    def string_id(self) -> str:
        return f"{self.zone_id}:{self.cell[0]},{self.cell[1]}:{self.slot}"


@dataclass(frozen=True)
class Circuit:
    ops: tuple[CircuitOp, ...]
    qubit_map: dict[int, CellRef] = field(default_factory=dict)

    def __post_init__(self) -> None:
        used = {q for op in self.ops for q in op.qubits}
        n_logical = max(used) + 1 if used else 0
        if used != set(range(n_logical)):
            missing = sorted(set(range(n_logical)) - used)
            raise ValidationError(f"qubit ids are not dense, missing {missing}", invariant="dense qubit ids")
        for op in self.ops:
            if len(op.qubits) != ARITY[op.kind] or len(set(op.qubits)) != len(op.qubits):
                raise ValidationError(f"{op.kind.value} takes {ARITY[op.kind]} distinct qubits, got {op.qubits}")
        unmapped = [q for q in range(n_logical) if self.qubit_map and q not in self.qubit_map]
        if unmapped:
            raise ValidationError(f"qubits {unmapped} have no memory cell", invariant="qubit map")

    @property
    def n_logical(self) -> int:
        return len({q for op in self.ops for q in op.qubits})

    def string_of(self, qubit: int) -> str:
        return self.qubit_map[qubit].string_id

    def cell_of(self, qubit: int) -> Optional[CellRef]:
        return self.qubit_map.get(qubit)
