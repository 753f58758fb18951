"""Scenario definitions, presets and experiment processors"""
from .scenario import Scenario, TimeGrid, OutputSpec
from .presets import get_preset, list_presets
from .scenario_processor import ScenarioProcessor, ScenarioResult
from .invariant_checker import InvariantChecker

__all__ = ['Scenario', 'TimeGrid', 'OutputSpec', 'get_preset', 'list_presets',
           'ScenarioProcessor', 'ScenarioResult', 'InvariantChecker']
