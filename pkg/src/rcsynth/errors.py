"""Exception types shared across the toolkit."""


class FormatError(ValueError):
    """A circuit, permutation or mapping file does not match its format."""


class CapacityError(RuntimeError):
    """An exhaustive sweep, line allocation or helper budget was exceeded."""


class ParityError(ValueError):
    """An odd permutation was given where only even ones are realizable."""


class ParameterError(ValueError):
    """A synthesis parameter (k, s, K, phi, ancilla budget) is out of range."""
