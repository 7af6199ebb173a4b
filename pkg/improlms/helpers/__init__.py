from improlms.helpers import data, options, raise_if

__all__ = [
    "data",
    "options",
    "raise_if",
]
