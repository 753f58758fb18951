"""Simulation configuration module"""
from .sim_config import load_config, validate_config, SimulationConfig, SUPPORTED_FORMATS

__all__ = ['load_config', 'validate_config', 'SimulationConfig', 'SUPPORTED_FORMATS']
