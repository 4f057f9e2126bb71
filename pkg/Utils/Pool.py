from multiprocessing import Pool, cpu_count
from os import environ
from time import sleep
from typing import Any, Callable, List, Optional, Sequence, Tuple

from Utils.Errors import ConfigError
from Utils.Logging.Logging import Logging

logger = Logging(__name__).logger

WORKERS_VARIABLE = 'AZTECFOCK_WORKERS'


def worker_count(workers: Optional[int] = None) -> int:
    """
    Number of worker processes: the argument, else the AZTECFOCK_WORKERS
    environment variable, else one

    :param workers: Explicit worker count

    :return: Positive worker count, at most the number of CPUs
    """
    if workers is None:
        value = environ.get(WORKERS_VARIABLE, '1')
        try:
            workers = int(value)
        except ValueError as error:
            raise ConfigError('{} must be an integer, got {!r}'.format(
                WORKERS_VARIABLE, value
            )) from error

    if workers < 1:
        raise ConfigError('workers must be positive, got {}'.format(workers))

    return min(workers, cpu_count())


def _indexed(function: Callable, index: int, arguments: Tuple) \
        -> Tuple[int, Any]:
    return index, function(*arguments)


def parallel_map(function: Callable, arguments: Sequence[Tuple],
                 workers: Optional[int] = None) -> List[Any]:
    """
    Apply a picklable function to every argument tuple. With more than one
    worker the calls run on a process pool and the results are put back in
    input order, so the output does not depend on scheduling.

    :param function: Module level function
    :param arguments: One argument tuple per call
    :param workers: Worker count, see worker_count

    :return: Results in input order
    """
    workers = worker_count(workers)

    if workers == 1 or len(arguments) < 2:
        return [function(*args) for args in arguments]

    results = []
    errors = []

    with Pool(processes=workers) as pool:
        [
            pool.apply_async(_indexed,
                             (function, index, args),
                             callback=results.append,
                             error_callback=errors.append)
            for index, args in enumerate(arguments)
        ]

        while len(results) + len(errors) != len(arguments):
            sleep(0.01)

    if errors:
        raise errors[0]

    logger.debug('%d tasks finished on %d workers', len(results), workers)

    return [value for _, value in sorted(results, key=lambda x: x[0])]
