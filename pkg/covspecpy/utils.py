import math
import pathos.multiprocessing as mp

from tqdm import tqdm


YES = 'Yes'
NO = 'No'
UNKNOWN = 'Unknown'
EQUAL = 'Equal'
DIFFER = 'Differ'

CERTIFIED = 'Certified'
HOMOLOGY_ONLY = 'Homology-only'


def _vertex_key(v):
    # ints sort before strings
    return (1, v) if isinstance(v, str) else (0, v)


def _core_cuts(n, cores):
    cuts = [math.floor(n / cores) for _ in range(cores)]
    delta = n - sum(cuts)
    cuts[-1] += delta
    return cuts


def _init_tqdm(verbose=True, total=None):
    if verbose:
        return tqdm(total=total)
    else:
        return None


def _tick_tqdm(pbar, tick_size=1):
    if pbar is not None:
        pbar.update(tick_size)
    return pbar


def _flush_tqdm(pbar):
    if pbar is not None:
        pbar.close()
    return pbar


def parallel_map(fn, items, cores=1, verbose=False):
    """
    Map ``fn`` over ``items``, optionally on a process pool.

    Results are returned in input order, so the output does not depend on ``cores``.

    Parameters
    ----------
    fn : function
        Called once per item.
    items : list
        The work items.
    cores : int
        If 1, runs on a single core / process. If greater than 1, will run on a multiprocessing
        pool with that many cores / processes.
    verbose : bool
        If True, will print out statements on computational progress.

    Returns
    -------
    list

    Examples
    --------
    >>> parallel_map(lambda x: x * 2, [1, 2, 3])
    [2, 4, 6]
    """
    items = list(items)
    if cores == 1 or len(items) < 2:
        pbar = _init_tqdm(verbose=verbose, total=len(items))
        out = []
        for item in items:
            out.append(fn(item))
            _tick_tqdm(pbar)
        _flush_tqdm(pbar)
        return out

    cores = min(cores, len(items))
    cuts = _core_cuts(len(items), cores)
    chunks = []
    start = 0
    for cut in cuts:
        chunks.append(items[start:start + cut])
        start += cut

    def run_chunk(chunk):
        return [fn(item) for item in chunk]

    if verbose:
        print('Running {} items on {} cores...'.format(len(items), cores))
    with mp.ProcessingPool(cores) as pool:
        results = pool.map(run_chunk, chunks)
    if verbose:
        print('...Collected!')
    return [r for chunk in results for r in chunk]
