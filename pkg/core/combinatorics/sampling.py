import numpy as np

from core.errors import DomainError


def weighted_sample_without_replacement(item_weights, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draws n distinct indices, each draw proportional to the weights of the items still in the urn.

    Every item gets an exponential key E_i / w_i and the n smallest keys win. The order of the keys is
    distributed exactly like the order of sequential weighted draws, so the group counts of the result
    follow Wallenius' distribution.

    :param item_weights: positive weight per item
    :param n: number of items to draw
    :param rng: random stream, consumed by exactly one call to rng.exponential
    :return: indices of the drawn items, in draw order
    """
    weights = np.asarray(item_weights, dtype=float)
    if n < 0 or n > len(weights):
        raise DomainError(f'cannot draw {n} items from {len(weights)}')
    if not np.all(np.isfinite(weights) & (weights > 0)):
        raise DomainError('item weights must be positive and finite')
    if n == 0:
        return np.empty(0, dtype=np.int64)
    keys = rng.exponential(size=len(weights)) / weights
    if n == len(weights):
        return np.argsort(keys)
    chosen = np.argpartition(keys, n - 1)[:n]
    return chosen[np.argsort(keys[chosen])]
