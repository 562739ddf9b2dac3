"""Exception types shared across the toolkit."""


class GroupToolError(Exception):
    """Base class for all errors raised by this package."""


class WordSyntaxError(GroupToolError):
    """Malformed word text or an invalid generator name."""


class PresentationError(GroupToolError):
    """Invalid presentation: bad file, undeclared generator, duplicate name."""


class SubstitutionError(GroupToolError):
    """A substitution met a generator with no assigned image."""


class ConstructionError(GroupToolError):
    """A presentation builder was given unusable parameters."""


class BudgetExceeded(GroupToolError):
    """A computation refused to continue past its configured work budget.

    This is a refusal, not a verdict: the property in question is left
    undecided.
    """


class NotCertified(GroupToolError):
    """Dehn rewriting was requested for a presentation that is not a
    verified C'(1/6) presentation."""
