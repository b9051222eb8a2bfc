"""Exception types shared across modules."""


class SurfsigError(Exception):
    """Base class."""


class InputError(SurfsigError, ValueError):
    """Malformed input or a violated size guard."""


class HypothesisViolation(SurfsigError, ValueError):
    """An operation's mathematical precondition does not hold."""

    code = "hypothesis_violation"


class BadPeriod(SurfsigError, ValueError):
    code = "bad_period"


class NoWitness(SurfsigError, LookupError):
    code = "no_witness"


class ConventionViolation(SurfsigError, ArithmeticError):
    """A fixed-point count came out non-integral or negative."""

    code = "convention_violation"
