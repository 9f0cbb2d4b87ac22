from .expression import Namespace, format_element, format_scalar, lower, lower_scalar, parse
from .alg_file import dump_presentation, load_presentation, presentation_hash

__all__ = [
    "Namespace",
    "format_element",
    "format_scalar",
    "lower",
    "lower_scalar",
    "parse",
    "dump_presentation",
    "load_presentation",
    "presentation_hash",
]
