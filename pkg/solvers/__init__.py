"""Time-series solvers built on the EQO engine"""
from .base_solver import BaseSolver
from .eqo_solver import EqoSolver, observable_reader
from .reference_solver import LorentzianExactSolver, MarkovSolver

__all__ = ['BaseSolver', 'EqoSolver', 'observable_reader', 'LorentzianExactSolver', 'MarkovSolver']
