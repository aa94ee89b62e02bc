import json
from pathlib import Path
from typing import Union

import numpy as np

from .diffusion import DiffusionFit, MSDCurve
from .stepper import PathEnsemble

FLOAT_FORMAT = '%.17g'


def export_ensemble_csv(path: Union[str, Path], ensemble: PathEnsemble) -> None:
    """
    Writes one row per path and recorded time: time, path id, coordinates.
    """
    n_paths, n_samples, dim = ensemble.positions.shape
    times = np.tile(ensemble.times, n_paths)
    ids = np.repeat(np.arange(n_paths), n_samples)
    rows = np.column_stack([times, ids, ensemble.positions.reshape(-1, dim)])
    names = ['time', 'path'] + ['x', 'y', 'z'][:dim]
    np.savetxt(path, rows, fmt=[FLOAT_FORMAT, '%d'] + [FLOAT_FORMAT] * dim, delimiter=',',
               header=','.join(names), comments='')


def export_msd_csv(path: Union[str, Path], curve: MSDCurve) -> None:
    np.savetxt(path, np.column_stack([curve.times, curve.msd]), fmt=FLOAT_FORMAT, delimiter=',',
               header='time,msd', comments='')


def ensemble_summary(ensemble: PathEnsemble, fit: DiffusionFit) -> dict:
    return {'config': ensemble.config.to_dict(), 'fit': fit.to_dict()}


def write_summary(path: Union[str, Path], ensemble: PathEnsemble, fit: DiffusionFit) -> None:
    with open(path, 'w', encoding='utf-8') as stream:
        json.dump(ensemble_summary(ensemble, fit), stream, indent=2, sort_keys=True)
