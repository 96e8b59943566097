class QVNError(Exception):
    """Base exception class for simulator and estimator errors."""
    pass


class ParseError(QVNError):
    """Raised when an input file cannot be parsed against its schema."""
    def __init__(self, message: str, path: str | None = None):
        self.path = path
        super().__init__(message)


class ValidationError(QVNError):
    """Raised when a parsed layout or circuit violates an invariant."""
    def __init__(self, message: str, invariant: str | None = None):
        self.invariant = invariant
        super().__init__(message)


class CapacityExceeded(QVNError):
    """Raised when a circuit needs more qubits than the mapped cells can store."""
    def __init__(self, message: str, cell: str | None = None):
        self.cell = cell
        super().__init__(message)


class DeadlockDetected(QVNError):
    """Raised when the engine has no runnable work but the circuit is incomplete."""
    def __init__(self, pending: int, time_ns: int):
        self.pending = pending
        self.time_ns = time_ns
        super().__init__(f"No runnable work at t={time_ns} ns with {pending} operations pending")


class IoError(QVNError):
    """Raised when an output file cannot be written or an input cannot be read."""
    def __init__(self, message: str, path: str | None = None):
        self.path = path
        super().__init__(message)


class OutOfRange(QVNError):
    """Raised when a value lies outside its admissible interval."""
    def __init__(self, name: str, value: float, low: float, high: float):
        self.name = name
        self.value = value
        self.low = low
        self.high = high
        super().__init__(f"{name}={value} outside [{low}, {high}]")


class ShuttleError(QVNError):
    """Base class for transport planning errors."""
    pass


class Obstructed(ShuttleError):
    def __init__(self, track_id: int, index: int, string_id: str | None = None):
        self.track_id = track_id
        self.index = index
        self.string_id = string_id
        super().__init__(f"Track {track_id} obstructed at index {index} by {string_id}")


class MismatchedDisplacement(ShuttleError):
    def __init__(self, displacements: list[int]):
        self.displacements = displacements
        super().__init__(f"Shared-waveform move needs one displacement, got {sorted(set(displacements))}")


class SpacingViolation(ShuttleError):
    pass


class BankMismatch(ShuttleError):
    def __init__(self, banks: set[str]):
        self.banks = banks
        super().__init__(f"Strings sit on tracks of different DAC banks: {sorted(banks)}")


class CellEmpty(ShuttleError):
    def __init__(self, zone_id: str, cell: tuple[int, int]):
        self.zone_id = zone_id
        self.cell = cell
        super().__init__(f"Memory cell {cell} of zone {zone_id} is empty")


class CellNotOnStaticSet(ShuttleError):
    def __init__(self, zone_id: str, cell: tuple[int, int]):
        self.zone_id = zone_id
        self.cell = cell
        super().__init__(f"Memory cell {cell} of zone {zone_id} is not on its static voltage set")


class InvalidArm(ShuttleError):
    def __init__(self, junction_id: int, arm: int, reason: str = "not an arm of the junction"):
        self.junction_id = junction_id
        self.arm = arm
        super().__init__(f"Junction {junction_id}, arm {arm}: {reason}")


class BudgetExceeded(ShuttleError):
    def __init__(self, bank_id: str, needed: int, budget: int):
        self.bank_id = bank_id
        self.needed = needed
        self.budget = budget
        super().__init__(f"Bank {bank_id} needs {needed} DAC pairs, budget is {budget}")


class InfeasibleCollection(QVNError):
    """Raised when detection needs more collection efficiency than the optics can reach."""
    def __init__(self, required: float, limit: float = 0.5):
        self.required = required
        self.limit = limit
        super().__init__(f"Required collection efficiency {required:.3g} exceeds {limit:g}")


class SingularPoint(QVNError):
    """Raised when a field is requested on a coil wire."""
    def __init__(self, point: tuple[float, float, float]):
        self.point = point
        super().__init__(f"Field point {point} lies on a coil wire")


class EmptyResult(QVNError):
    """Raised when no species triple satisfies the constraints."""
    pass
