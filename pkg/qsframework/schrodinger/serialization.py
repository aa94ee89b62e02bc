"""
Wave functions in the field text format: a vector field with the real and imaginary part as its two
components. A scalar field is read as a real amplitude.
"""
from numbers import Number
from pathlib import Path
from typing import Union

import numpy as np

from qsframework.core.exceptions import OutOfRangeException
from qsframework.fields.field import ScalarField, VectorField
from qsframework.fields.serialization import read_field, write_field
from qsframework.fields.wavefunction import WaveFunction


def write_wavefunction(path: Union[str, Path], psi: WaveFunction) -> None:
    values = np.stack([psi.amplitudes.real, psi.amplitudes.imag], axis=-1)
    write_field(path, VectorField(psi.grid, values, 'psi'))


def read_wavefunction(path: Union[str, Path], mass: Number, hbar: Number, normalize: bool = True) -> WaveFunction:
    """
    :param path: A field file with one or two components.
    :param mass: Particle mass.
    :param hbar: Reduced Planck constant.
    :param normalize: Whether the amplitudes are rescaled to unit norm.
    :raises:
        OutOfRangeException: If the file holds more than two components.
        NormalizationException: If normalize is off and the amplitudes are not normalized.
    """
    field = read_field(path)
    if isinstance(field, ScalarField):
        amplitudes = field.values.astype(complex)
    elif field.components == 2:
        amplitudes = field.values[..., 0] + 1j * field.values[..., 1]
    else:
        raise OutOfRangeException(1, 2, field.components)
    if normalize:
        return WaveFunction.normalized(field.grid, amplitudes, mass, hbar)
    return WaveFunction(field.grid, amplitudes, mass, hbar)
