"""
Orchestrator module: the workbench that runs the engines.
"""

from src.orchestrator.workbench import Workbench

__all__ = ["Workbench"]
