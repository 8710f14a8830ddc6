"""
#    Copyright 2022 Red Hat
#
#    Licensed under the Apache License, Version 2.0 (the "License"); you may
#    not use this file except in compliance with the License. You may obtain
#    a copy of the License at
#
#         http://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
#    WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
#    License for the specific language governing permissions and limitations
#    under the License.

Worker pool over a fixed partition of the work.

Work is always cut into the same blocks, whatever the number of threads,
and block ``b`` draws its random numbers from ``default_rng([seed, b])``.
Results are returned in block order.
"""
import logging

import numpy as np
from joblib import Parallel, delayed

LOG = logging.getLogger(__name__)

DEFAULT_BLOCK_SIZE = 4096


def partition(total, block_size=DEFAULT_BLOCK_SIZE):
    """Cuts ``total`` items into consecutive blocks.

    :param total: Number of items.
    :type total: int
    :param block_size: Maximum number of items per block.
    :type block_size: int
    :return: The (start, stop) bounds of each block.
    :rtype: list[tuple[int, int]]
    """
    return [(start, min(start + block_size, total))
            for start in range(0, total, block_size)]


def block_rng(seed, block):
    """Random generator owned by one block of one seeded run."""
    return np.random.default_rng([seed, block])


def run_blocks(func, blocks, seed=None, threads=1):
    """Evaluates ``func`` on every block.

    ``func`` receives the block and, when a seed is given, the generator of
    that block.

    :param func: Function applied to each block.
    :param blocks: Fixed list of blocks.
    :type blocks: list
    :param seed: Seed of the run, None for deterministic work.
    :type seed: int or None
    :param threads: Size of the worker pool.
    :type threads: int
    :return: The results, in block order.
    :rtype: list
    """
    LOG.debug("Running %d blocks on %d threads", len(blocks), threads)

    if seed is None:
        tasks = (delayed(func)(block) for block in blocks)
    else:
        tasks = (delayed(func)(block, block_rng(seed, index))
                 for index, block in enumerate(blocks))

    if threads <= 1:
        return [task_func(*args, **kwargs)
                for task_func, args, kwargs in tasks]

    return Parallel(n_jobs=threads, prefer="threads")(tasks)
