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
"""
import numpy as np


def to_gray(grid):
    """Scales a real grid linearly onto 0..255, constant grids map to 0."""
    grid = np.asarray(grid, dtype=float)
    finite = np.isfinite(grid)
    if not np.any(finite):
        return np.zeros(grid.shape, dtype=np.uint8)
    low = grid[finite].min()
    high = grid[finite].max()
    span = high - low
    scaled = (grid - low) / span if span > 0 else np.zeros(grid.shape)
    scaled = np.where(finite, scaled, 0.0)
    return np.round(255 * np.clip(scaled, 0.0, 1.0)).astype(np.uint8)


def write_pgm(grid, file):
    """Writes a real grid as a binary 8-bit PGM heatmap.

    :param grid: 2D array, rows are written top to bottom.
    :param file: Destination path.
    """
    pixels = to_gray(grid)
    rows, columns = pixels.shape
    with open(file, 'wb') as buffer:
        buffer.write(f'P5\n{columns} {rows}\n255\n'.encode('ascii'))
        buffer.write(pixels.tobytes())
