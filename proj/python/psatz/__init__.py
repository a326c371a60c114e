"""Exact rational SOS and Positivstellensatz witness search.

Problems and certificates use the same text formats as the ``psatz`` tool.
Rational values come back as :class:`fractions.Fraction`.
"""

from fractions import Fraction

try:
    from . import _psatz
except ImportError:  # in-tree build: extension next to the sources on sys.path
    import _psatz

InputError = _psatz.InputError


def prove(problem, max_degree=0, use_products=False, simplify=False, degrees=None, verbose=False):
    """Search for a witness. Returns a dict with ``found`` and either
    ``certificate`` or ``exit``/``reason``."""
    return _psatz.prove(problem, max_degree, use_products, simplify, degrees, verbose)


def check(certificate):
    """Exact check of certificate text. Returns ``(accepted, reason)``."""
    return _psatz.check(certificate)


def lll_reduce(basis, delta=Fraction(99, 100)):
    rows = [[str(int(x)) for x in row] for row in basis]
    return [[int(x) for x in row] for row in _psatz.lll_reduce(rows, str(Fraction(delta)))]


def _strings(matrix):
    return [[str(Fraction(x)) for x in row] for row in matrix]


def gaussian_decompose(matrix):
    """``[(c, v), ...]`` with ``sum c * outer(v, v) == matrix`` and c > 0, or
    None when the matrix is not positive semidefinite."""
    terms = _psatz.gaussian_decompose(_strings(matrix))
    if terms is None:
        return None
    return [(Fraction(c), [Fraction(x) for x in v]) for c, v in terms]


def is_psd(matrix):
    return _psatz.is_psd(_strings(matrix))


__all__ = ["InputError", "prove", "check", "lll_reduce", "gaussian_decompose", "is_psd"]
