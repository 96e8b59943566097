from qvn.shuttle.memory import MemoryState, access_memory_cell, return_to_memory_cell
from qvn.shuttle.plan import MovePlan, PlanStep, audit_plan
from qvn.shuttle.planner import StringMove, plan_linear_move, plan_multi_string_move, rotate_string, traverse_junction

__all__ = [
    "MemoryState",
    "MovePlan",
    "PlanStep",
    "StringMove",
    "access_memory_cell",
    "audit_plan",
    "plan_linear_move",
    "plan_multi_string_move",
    "return_to_memory_cell",
    "rotate_string",
    "traverse_junction",
]
