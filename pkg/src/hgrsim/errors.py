"""Exception types shared across the simulator."""


class InvalidParameter(ValueError):
    pass


class UnreachableNodeError(RuntimeError):
    def __init__(self, node, anchor=None):
        self.node = node
        self.anchor = anchor
        msg = f"node {node} has no path to anchor {anchor}" if anchor is not None else f"node {node} unreachable"
        super().__init__(msg)


class DimensionMismatch(ValueError):
    pass


class MissingView(KeyError):
    pass


class ProtocolConfigError(RuntimeError):
    """A protocol was asked to run without the views it needs."""


class ConnectivityError(RuntimeError):
    pass


class ConfigParseError(ValueError):
    def __init__(self, lineno, message):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


class ConfigValidationError(ValueError):
    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")
