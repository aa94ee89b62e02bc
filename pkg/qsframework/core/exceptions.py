from typing import Sequence, Tuple


class WrongStrictTypeException(Exception):
    """
    Error when receiving different type than expected. No subtype allowed.
    """

    def __init__(self, expected: str, actual: str):
        super().__init__(f"Expected type '{expected}' but got '{actual}' instead.")


class WrongSubTypeException(Exception):
    """
    Error when receiving different type than expected. Subtype allowed.
    """

    def __init__(self, expected: str, actual: str):
        super().__init__(f"Expected sub-type of '{expected}' but got '{actual}' instead.")


class NoneValueException(Exception):
    """
    Error when a variable is none.
    """

    def __init__(self, variable_name: str):
        super().__init__(f"Variable '{variable_name}' is None.")


class EmptyCollectionException(Exception):
    """
    Error when a collection is empty.
    """

    def __init__(self, variable_name: str):
        super().__init__(f"Collection '{variable_name}' is empty.")


class OutOfRangeException(Exception):
    """
    Error when a variable is out of range.
    """

    def __init__(self, min_val, max_val, actual):
        super().__init__(f"Value {actual} is out of range [{min_val},{max_val}].")


class GridMismatchException(Exception):
    """
    Error when two fields do not live on the same grid.
    """

    def __init__(self, left: str, right: str):
        super().__init__(f"Grid of '{left}' does not match grid of '{right}'.")


class DimensionException(Exception):
    """
    Error when an operation requires a grid of a different dimension.
    """

    def __init__(self, expected: int, actual: int):
        super().__init__(f"Operation requires a {expected}-D grid but got a {actual}-D grid.")


class NonFiniteValueException(Exception):
    """
    Error when a field holds NaN or infinite values.
    """

    def __init__(self, variable_name: str, count: int):
        super().__init__(f"'{variable_name}' holds {count} non-finite values.")


class NormalizationException(Exception):
    """
    Error when a wave function or density does not integrate to one.
    """

    def __init__(self, measured: float, tolerance: float):
        self.measured = measured
        super().__init__(f"Expected total probability 1 within {tolerance} but measured {measured!r}.")


class DegenerateDensityException(Exception):
    """
    Error when a density vanishes everywhere.
    """

    def __init__(self):
        super().__init__("Density is zero at every node.")


class NodalSurfaceException(Exception):
    """
    Error when a wave function has zero amplitude at an interior node.
    """

    def __init__(self, node: Tuple[int, ...]):
        self.node = node
        super().__init__(f"Wave function amplitude vanishes at interior node {node}.")


class StabilityBoundException(Exception):
    """
    Error when an explicit time step exceeds its stability bound.
    """

    def __init__(self, dt: float, bound: float):
        self.bound = bound
        super().__init__(f"Time step {dt!r} exceeds the stability bound {bound!r}.")


class NegativeDensityException(Exception):
    """
    Error when clipping negative densities would remove too much probability.
    """

    def __init__(self, clipped_mass: float, limit: float):
        super().__init__(f"Clipped probability {clipped_mass!r} exceeds the allowed fraction {limit!r}.")


class NonFiniteDriftException(Exception):
    """
    Error when the drift of a path evaluates to NaN or infinity.
    """

    def __init__(self, path_index: int, step: int):
        self.path_index = path_index
        self.step = step
        super().__init__(f"Non-finite drift for path {path_index} at step {step}.")


class TooShortEnsembleException(Exception):
    """
    Error when an ensemble is too small for a statistical estimate.
    """

    def __init__(self, reason: str):
        super().__init__(f"Ensemble too short: {reason}.")


class NoAsymptoteException(Exception):
    """
    Error when a relaxation has no finite asymptote.
    """

    def __init__(self, xi: float):
        super().__init__(f"Friction coefficient {xi!r} gives no asymptote.")


class SolverConvergenceException(Exception):
    """
    Error when an iterative solver does not reach its tolerance.
    """

    def __init__(self, message: str, history: Sequence[float] = (), step: int = None):
        self.history = list(history)
        self.step = step
        location = f" at step {step}" if step is not None else ""
        super().__init__(f"Solver did not converge{location}: {message}.")


class SuperluminalException(Exception):
    """
    Error when a velocity reaches or exceeds the speed of light.
    """

    def __init__(self, velocity: float, c: float):
        super().__init__(f"|dv| = {velocity!r} is not below c = {c!r}.")


class UnphysicalTransitionException(Exception):
    """
    Error when a transition would leave no positive net energy.
    """

    def __init__(self, net_energy: float):
        super().__init__(f"Transition leaves net energy {net_energy!r} <= 0.")


class LedgerInvariantException(Exception):
    """
    Error when the stored mass disagrees with the mass recomputed from the ledger.
    """

    def __init__(self, stored: float, recomputed: float):
        super().__init__(f"Stored mass {stored!r} differs from recomputed mass {recomputed!r}.")


class UnknownTermException(Exception):
    """
    Error when a ledger term name is not one of the admissible terms.
    """

    def __init__(self, term: str, allowed: Sequence[str]):
        self.term = term
        super().__init__(f"Unknown ledger term {term!r}, expected one of {', '.join(allowed)}.")


class GuardRadiusException(Exception):
    """
    Error when a field point lies too close to a source node.
    """

    def __init__(self, distance: float, guard: float):
        super().__init__(f"Field point is {distance!r} from a source node, inside guard radius {guard!r}.")


class ConfigurationException(Exception):
    """
    Error when an experiment configuration is invalid.
    """

    def __init__(self, diagnostics: Sequence[str]):
        self.diagnostics = list(diagnostics)
        super().__init__("Invalid configuration: " + "; ".join(self.diagnostics))
