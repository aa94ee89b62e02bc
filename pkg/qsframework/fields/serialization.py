"""
Text format for fields: one header line followed by the node values in row-major order,
one node per line with its components separated by spaces.

    # dims=3,4 spacing=0.1,0.1 origin=0,0 boundary=periodic geometry=cartesian components=0

components=0 marks a scalar field.
"""
from pathlib import Path
from typing import Union

import numpy as np

from qsframework.core.exceptions import ConfigurationException
from .field import Field, ScalarField, VectorField
from .grid import Grid

FLOAT_FORMAT = '%.17g'


def _join(values) -> str:
    return ','.join(repr(float(v)) if isinstance(v, float) else str(v) for v in values)


def header(field: Field) -> str:
    grid = field.grid
    components = field.components if isinstance(field, VectorField) else 0
    return (f"# dims={_join(grid.dims)} spacing={_join(grid.spacing)} origin={_join(grid.origin)} "
            f"boundary={grid.boundary.value} geometry={grid.geometry.value} components={components}")


def write_field(path: Union[str, Path], field: Field) -> None:
    rows = field.values.reshape(field.grid.size, -1)
    np.savetxt(path, rows, fmt=FLOAT_FORMAT, header=header(field)[2:], comments='# ')


def _parse_header(line: str) -> dict:
    if not line.startswith('#'):
        raise ConfigurationException(["field file does not start with a header line"])
    entries = dict(item.split('=', 1) for item in line[1:].split())
    missing = [key for key in ('dims', 'spacing', 'origin', 'boundary', 'geometry', 'components') if key not in entries]
    if missing:
        raise ConfigurationException([f"field header misses '{key}'" for key in missing])
    return entries


def read_field(path: Union[str, Path]) -> Field:
    """
    :return: A ScalarField or VectorField depending on the header.
    :raises:
        ConfigurationException: If the header is malformed.
    """
    with open(path, 'r', encoding='utf-8') as stream:
        entries = _parse_header(stream.readline())
    grid = Grid(dims=[int(n) for n in entries['dims'].split(',')],
                spacing=[float(h) for h in entries['spacing'].split(',')],
                origin=[float(o) for o in entries['origin'].split(',')],
                boundary=Grid.Boundary(entries['boundary']),
                geometry=Grid.Geometry(entries['geometry']))
    components = int(entries['components'])
    values = np.loadtxt(path, comments='#', ndmin=2)
    if components == 0:
        return ScalarField(grid, values.reshape(grid.shape))
    return VectorField(grid, values.reshape(grid.shape + (components,)))


def export_csv(path: Union[str, Path], field: Field) -> None:
    """
    Writes one row per node: the coordinates followed by the values.
    """
    grid = field.grid
    coordinates = grid.coordinates().reshape(grid.size, grid.ndim)
    values = field.values.reshape(grid.size, -1)
    axis_names = ['x', 'y', 'z'][:grid.ndim] if not grid.is_radial else ['r']
    value_names = ['value'] if values.shape[1] == 1 and isinstance(field, ScalarField) \
        else [f"v{k}" for k in range(values.shape[1])]
    np.savetxt(path, np.hstack([coordinates, values]), fmt=FLOAT_FORMAT, delimiter=',',
               header=','.join(axis_names + value_names), comments='')
