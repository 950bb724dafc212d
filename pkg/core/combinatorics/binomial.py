import numpy as np
from scipy.special import gammaln
from scipy.stats import hypergeom

from core.errors import DomainError


def log_binomial(n, r):
    """Natural log of C(n, r) through log-gamma, -inf outside 0 <= r <= n.

    Works elementwise on array arguments.
    """
    n_arr = np.asarray(n, dtype=float)
    r_arr = np.asarray(r, dtype=float)
    with np.errstate(invalid='ignore'):
        out = gammaln(n_arr + 1) - gammaln(r_arr + 1) - gammaln(n_arr - r_arr + 1)
    out = np.where((r_arr >= 0) & (r_arr <= n_arr), out, -np.inf)
    return out.item() if out.ndim == 0 else out


def hypergeom_pmf(x, population: int, successes: int, draws: int):
    """Central hypergeometric pmf C(successes, x) C(population - successes, draws - x) / C(population, draws).

    :param x: number of marked items drawn, scalar or array
    :param population: total number of items
    :param successes: number of marked items
    :param draws: number of items drawn without replacement
    :return: probability (zero outside the support)
    """
    if not 0 <= successes <= population:
        raise DomainError(f'successes {successes} must lie in [0, {population}]')
    if not 0 <= draws <= population:
        raise DomainError(f'draws {draws} must lie in [0, {population}]')
    if population == 0:
        out = np.where(np.asarray(x) == 0, 1.0, 0.0)
    else:
        out = np.asarray(hypergeom.pmf(x, population, successes, draws), dtype=float)
    return out.item() if out.ndim == 0 else out
