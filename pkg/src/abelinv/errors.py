"""Exception types raised by the library."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class AliasingError(ValueError):
    """More Fourier coefficients were requested than the sample grid resolves."""
