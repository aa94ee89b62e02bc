from enum import Enum
from math import pi
from numbers import Number
from typing import Sequence, Tuple, List

import numpy as np

from qsframework.core.exceptions import OutOfRangeException, WrongStrictTypeException, EmptyCollectionException


class Grid:
    """
    A uniform rectangular grid of 1 to 3 axes. Node i of an axis sits at origin + i * spacing.
    Non-periodic axes behave as if bounded by ghost nodes one spacing outside the first and last node.
    A radial grid is a 1-D grid in r whose nodes carry spherical shell weights.
    """

    class Boundary(Enum):
        DIRICHLET_ZERO = "dirichlet-zero"
        REFLECTING = "reflecting"
        PERIODIC = "periodic"

    class Geometry(Enum):
        CARTESIAN = "cartesian"
        RADIAL = "radial"

    def __init__(self,
                 dims: Sequence[int],
                 spacing: Sequence[Number],
                 origin: Sequence[Number] = None,
                 boundary: 'Grid.Boundary' = Boundary.DIRICHLET_ZERO,
                 geometry: 'Grid.Geometry' = Geometry.CARTESIAN):
        """
        :param dims: Points per axis, each at least 3.
        :param spacing: Node distance per axis, each positive.
        :param origin: Position of the first node per axis. Zero if None.
        :param boundary: Boundary condition shared by all axes.
        :param geometry: Cartesian or radial.
        :raises:
            EmptyCollectionException: If dims is empty.
            OutOfRangeException: If a dimension count, spacing or the number of axes is invalid.
            WrongStrictTypeException: If boundary or geometry is not the matching enum.
        """
        if len(dims) == 0:
            raise EmptyCollectionException('dims')
        if len(dims) > 3:
            raise OutOfRangeException(1, 3, len(dims))
        if len(spacing) != len(dims):
            raise OutOfRangeException(len(dims), len(dims), len(spacing))
        for n in dims:
            if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 3:
                raise OutOfRangeException(3, np.inf, n)
        for h in spacing:
            if not isinstance(h, Number) or not h > 0:
                raise OutOfRangeException(0.0, np.inf, h)
        if not isinstance(boundary, Grid.Boundary):
            raise WrongStrictTypeException(Grid.Boundary.__name__, type(boundary).__name__)
        if not isinstance(geometry, Grid.Geometry):
            raise WrongStrictTypeException(Grid.Geometry.__name__, type(geometry).__name__)

        origin = [0.0] * len(dims) if origin is None else origin
        if len(origin) != len(dims):
            raise OutOfRangeException(len(dims), len(dims), len(origin))

        if geometry == Grid.Geometry.RADIAL:
            if len(dims) != 1:
                raise OutOfRangeException(1, 1, len(dims))
            if boundary == Grid.Boundary.PERIODIC:
                raise WrongStrictTypeException("non-periodic boundary", boundary.value)
            if not origin[0] > 0:
                raise OutOfRangeException(0.0, np.inf, origin[0])

        self._dims: Tuple[int, ...] = tuple(int(n) for n in dims)
        self._spacing: Tuple[float, ...] = tuple(float(h) for h in spacing)
        self._origin: Tuple[float, ...] = tuple(float(o) for o in origin)
        self._boundary = boundary
        self._geometry = geometry

    @classmethod
    def box(cls,
            lower: Sequence[Number],
            upper: Sequence[Number],
            points: Sequence[int],
            boundary: 'Grid.Boundary' = Boundary.DIRICHLET_ZERO) -> 'Grid':
        """
        Creates a grid covering the box [lower, upper].
        Dirichlet grids keep the walls as ghost nodes, periodic grids start on the lower wall
        and reflecting grids place nodes at cell centres.

        :param lower: Lower wall per axis.
        :param upper: Upper wall per axis.
        :param points: Number of nodes per axis.
        :param boundary: The boundary condition.
        :return: The grid.
        """
        spacing, origin = [], []
        for lo, up, n in zip(lower, upper, points):
            length = up - lo
            if boundary == Grid.Boundary.DIRICHLET_ZERO:
                h = length / (n + 1)
                spacing.append(h)
                origin.append(lo + h)
            elif boundary == Grid.Boundary.PERIODIC:
                h = length / n
                spacing.append(h)
                origin.append(lo)
            else:
                h = length / n
                spacing.append(h)
                origin.append(lo + 0.5 * h)
        return cls(points, spacing, origin, boundary)

    @classmethod
    def radial(cls, r_max: Number, points: int) -> 'Grid':
        """
        Creates a radial grid on (0, r_max) with Dirichlet ghosts at r = 0 and r = r_max.
        """
        h = r_max / (points + 1)
        return cls([points], [h], [h], Grid.Boundary.DIRICHLET_ZERO, Grid.Geometry.RADIAL)

    @property
    def dims(self) -> Tuple[int, ...]:
        return self._dims

    @property
    def shape(self) -> Tuple[int, ...]:
        return self._dims

    @property
    def ndim(self) -> int:
        return len(self._dims)

    @property
    def size(self) -> int:
        return int(np.prod(self._dims))

    @property
    def spacing(self) -> Tuple[float, ...]:
        return self._spacing

    @property
    def origin(self) -> Tuple[float, ...]:
        return self._origin

    @property
    def boundary(self) -> 'Grid.Boundary':
        return self._boundary

    @property
    def geometry(self) -> 'Grid.Geometry':
        return self._geometry

    @property
    def is_periodic(self) -> bool:
        return self._boundary == Grid.Boundary.PERIODIC

    @property
    def is_radial(self) -> bool:
        return self._geometry == Grid.Geometry.RADIAL

    @property
    def cell_volume(self) -> float:
        """
        :return: Product of the spacings. For radial grids this is the radial step only, see weights.
        """
        return float(np.prod(self._spacing))

    def lengths(self) -> Tuple[float, ...]:
        """
        :return: Period length per axis, dims * spacing.
        """
        return tuple(n * h for n, h in zip(self._dims, self._spacing))

    def axes(self) -> List[np.ndarray]:
        """
        :return: Node coordinates per axis.
        """
        return [o + h * np.arange(n) for o, h, n in zip(self._origin, self._spacing, self._dims)]

    def mesh(self) -> List[np.ndarray]:
        """
        :return: One array of grid shape per axis, holding that coordinate of every node.
        """
        return np.meshgrid(*self.axes(), indexing='ij')

    def coordinates(self) -> np.ndarray:
        """
        :return: Node positions with shape (*dims, ndim).
        """
        return np.stack(self.mesh(), axis=-1)

    @property
    def weights(self) -> np.ndarray:
        """
        :return: Quadrature weight of every node, 4 pi r^2 dr on radial grids.
        """
        if self.is_radial:
            r = self.axes()[0]
            return 4.0 * pi * r ** 2 * self._spacing[0]
        return np.full(self._dims, self.cell_volume)

    def integrate(self, values: np.ndarray) -> np.ndarray:
        """
        :param values: Array whose leading axes have grid shape.
        :return: Weighted sum over the nodes.
        """
        weights = self.weights.reshape(self._dims + (1,) * (values.ndim - self.ndim))
        return np.sum(values * weights, axis=tuple(range(self.ndim)))

    def interior_mask(self, width: int = 1) -> np.ndarray:
        """
        :param width: Number of nodes excluded next to every non-periodic boundary.
        :return: Boolean mask, True away from non-periodic boundaries.
        """
        mask = np.ones(self._dims, dtype=bool)
        if self.is_periodic or width <= 0:
            return mask
        for axis in range(self.ndim):
            index = [slice(None)] * self.ndim
            index[axis] = slice(0, width)
            mask[tuple(index)] = False
            index[axis] = slice(self._dims[axis] - width, None)
            mask[tuple(index)] = False
        return mask

    def __eq__(self, other) -> bool:
        if not isinstance(other, Grid):
            return False
        return (self._dims == other._dims and self._boundary == other._boundary
                and self._geometry == other._geometry
                and np.allclose(self._spacing, other._spacing, rtol=1e-12, atol=0.0)
                and np.allclose(self._origin, other._origin, rtol=1e-12, atol=1e-300))

    def __hash__(self):
        return hash((self._dims, self._boundary, self._geometry))

    def __repr__(self) -> str:
        return (f"Grid(dims={self._dims}, spacing={self._spacing}, origin={self._origin}, "
                f"boundary={self._boundary.value}, geometry={self._geometry.value})")
