"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid run configuration (bad model spec, counts, schedule file, ...)."""


class NumericalError(RuntimeError):
    """A numerical contract was violated (non-finite potential, unbounded rate, ...)."""


class PotentialError(NumericalError):
    """Potential evaluation produced a non-finite value for a named chain pair."""
