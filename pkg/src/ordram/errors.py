"""Exception types shared across the package."""


class OrdramError(Exception):
    """Base class for all package-specific errors."""


class IndexOutOfRange(OrdramError):
    """A vertex index falls outside 0..n-1."""


class InstanceTooLarge(OrdramError):
    """An exhaustive routine was asked to run beyond its size cap."""


class NoValidM(OrdramError):
    """No power of two fits in the reach lemma's window (parameter too small)."""


class SizeInfeasible(OrdramError):
    """The requested certificate size cannot be guaranteed from the given sets."""


class RetryExhausted(OrdramError):
    """The randomized embedding loop ran out of trials.

    Carries the seed, the number of trials and the measured cross-edge
    densities between endpoint sets so the caller can tell bad luck from
    violated hypotheses.
    """

    def __init__(self, seed: int, trials: int, densities):
        self.seed = seed
        self.trials = trials
        self.densities = densities
        super().__init__(
            f"no induced copy found after {trials} trials (seed={seed}); "
            f"measured cross densities: {densities}"
        )


class CurveMissesLine(OrdramError):
    """A curve does not properly cross the requested vertical line."""

    def __init__(self, index: int, message: str = ""):
        self.index = index
        super().__init__(f"curve {index}: {message or 'does not cross the line'}")


class DuplicateKey(OrdramError):
    """Two curves tie on the ordering key; the caller must perturb the input."""


class OracleContractViolation(OrdramError):
    """A supplied certificate oracle returned an invalid or undersized witness."""


class WitnessInvalid(OrdramError):
    """A triple-ordered decomposition failed one of its construction invariants."""

    def __init__(self, invariant: str):
        self.invariant = invariant
        super().__init__(f"witness invariant violated: {invariant}")


class OrderViolation(OrdramError):
    """Arguments do not respect the required first-order constraints."""


class InputFormatError(OrdramError):
    """A JSON input file failed validation; carries per-record diagnostics."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics) or "invalid input")
