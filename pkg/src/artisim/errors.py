"""Error taxonomy shared by all modules.

DataError: the input data is wrong (bad dataset, unknown ids, mismatched
provenance). ConfigError: the requested computation is misconfigured
(bad weights, bad rule parameters). Validation findings are not errors;
they are reported as data (see model.ValidationReport).
"""


class ArtisimError(Exception):
    pass


class DataError(ArtisimError):
    pass


class ParseError(DataError):
    """Input document could not be parsed at all (position in message)."""


class ConfigError(ArtisimError):
    pass
