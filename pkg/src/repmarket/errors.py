"""Exception hierarchy shared across the package."""


class ModelError(Exception):
    """Base class for model-domain errors."""


class UndefinedPosteriorError(ModelError):
    """The conditioning signal has probability zero under (policy, xi)."""


class DegeneratePolicyError(ModelError):
    """One signal never occurs, so its purchase threshold is undefined.

    Raised only for the two corner policies (alpha, beta) = (0, 0) and (1, 1).
    """


class InfeasiblePointError(ModelError):
    """No interior coexistence equilibrium exists at the requested point."""


class InvalidStepError(ModelError, ValueError):
    """Integration was requested with a nonpositive step or horizon."""


class EmptyWindowError(ModelError):
    """The analysis window contains no periods with active sellers."""


class ConfigError(Exception):
    """Experiment configuration failed validation.

    The message starts with the dotted path of the offending field.
    """
