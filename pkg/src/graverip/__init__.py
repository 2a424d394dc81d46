"""Exact ILP toolkit built on Graver-best augmentation."""
from .core import ILPInstance, SolveReport, Status, UsageError, brute_force_solve
from .strongpoly import solve

__all__ = ["ILPInstance", "SolveReport", "Status", "UsageError", "brute_force_solve", "solve"]
