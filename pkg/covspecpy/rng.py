import numpy as np

_covspecpy_internal_rng = np.random.default_rng()


def set_seed(seed):
    """
    Set the seed of the random number generator used for sampled loops and words.

    The RNG is a ``np.random.default_rng`` under the hood.

    Parameters
    ----------
    seed : int
        The seed to use for the RNG.

    Returns
    -------
    np.random.Generator
        The RNG used internally.

    Examples
    --------
    >>> set_seed(42)
    Generator(PCG64) at 0x127EDE9E0
    """
    global _covspecpy_internal_rng
    _covspecpy_internal_rng = np.random.default_rng(seed)
    return _covspecpy_internal_rng


def _get_rng():
    return _covspecpy_internal_rng
