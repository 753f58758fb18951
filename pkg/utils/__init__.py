"""Utility modules"""
from .scenario_loader import ScenarioLoader
from .series_writer import SeriesWriter, emit, save_report

__all__ = ['ScenarioLoader', 'SeriesWriter', 'emit', 'save_report']
