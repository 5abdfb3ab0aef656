"""
Error hierarchy for the estimation library.

Every error carries the CLI exit code and the HTTP status it maps to, so the
command line and the API translate failures the same way.
"""

from wavediv.core import constants


class WaveDivError(Exception):
    """Base class for all library errors."""
    exit_code = constants.EXIT_USAGE
    status_code = 422


class InvalidParameter(WaveDivError, ValueError):
    pass


class MalformedInput(WaveDivError):
    status_code = 400

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnsupportedFamily(WaveDivError, ValueError):
    pass


class CascadeDivergence(WaveDivError):
    pass


class QuadratureUnderflow(WaveDivError):
    pass


class InvalidAlpha(WaveDivError, ValueError):
    pass


class EmptySample(WaveDivError):
    pass


class OutOfDomainValue(WaveDivError):
    exit_code = constants.EXIT_DOMAIN

    def __init__(self, index: int, value: float, domain: tuple[float, float], source: str | None = None):
        self.index = index
        self.value = value
        where = f"line {index + 1} of {source}" if source else f"index {index}"
        super().__init__(
            f"value {value!r} at {where} lies outside the domain [{domain[0]}, {domain[1]}]"
        )


class NonPositiveDensity(WaveDivError):
    pass


class NonFiniteIntegral(WaveDivError):
    pass


class DomainMismatch(WaveDivError):
    pass


class SampleSizeMismatch(WaveDivError):
    exit_code = constants.EXIT_SIZE_MISMATCH
    status_code = 409


class MissingRenyiBase(WaveDivError):
    pass


class DegenerateVariance(WaveDivError):
    pass


class UnknownDensity(WaveDivError, KeyError):
    exit_code = constants.EXIT_UNKNOWN_ID
    status_code = 404

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown density"
