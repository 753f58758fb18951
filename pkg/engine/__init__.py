"""EQO 수치 엔진"""
from .errors import (
    DimensionError, DomainError, EngineError, IntegratorStepError,
    InvalidObservableError, NumericDriftError, NumericError, ScenarioConfigError,
)
from .matexp import expm, mat_mul, one_norm
from .model import (
    BathGrid, ExplicitSpectrum, FlatSpectrum, HamiltonianSpec, LorentzianSpectrum,
    ModeLayout, OhmicSpectrum, RMatrix, assemble_r, coupling_at, coupling_from_spectrum,
    symplectic_form,
)
from .propagator import (
    KickSchedule, TransferMatrix, kick_cycle, parity_matrix, stroboscopic, transfer,
)
from .observables import (
    InitialMoments, TimeSeries, excitation_norm, momentum_variance,
    quadrature_variance, survival_probability,
)
from .reference import (
    FockState, LorentzianExactParams, lindblad_evolve, lorentzian_exact_survival,
    markov_decay_rate,
)

__all__ = [
    'EngineError', 'DimensionError', 'DomainError', 'NumericError', 'NumericDriftError',
    'IntegratorStepError', 'InvalidObservableError', 'ScenarioConfigError',
    'expm', 'mat_mul', 'one_norm',
    'ModeLayout', 'BathGrid', 'LorentzianSpectrum', 'OhmicSpectrum', 'FlatSpectrum',
    'ExplicitSpectrum', 'HamiltonianSpec', 'RMatrix', 'assemble_r', 'coupling_at',
    'coupling_from_spectrum', 'symplectic_form',
    'TransferMatrix', 'KickSchedule', 'transfer', 'parity_matrix', 'kick_cycle', 'stroboscopic',
    'InitialMoments', 'TimeSeries', 'quadrature_variance', 'momentum_variance',
    'excitation_norm', 'survival_probability',
    'LorentzianExactParams', 'FockState', 'lorentzian_exact_survival', 'markov_decay_rate',
    'lindblad_evolve',
]
