"""Pure numpy implementation of the hot kernel; mirrors ``_core.collide_stream``."""
import numpy as np

from .lattice import VELOCITIES


def collide_stream(f, C, fstar, fout):
    fstar[...] = np.einsum("ij,jxy->ixy", C, f, optimize=True)
    for i, (ex, ey) in enumerate(VELOCITIES):
        fout[i] = np.roll(fstar[i], shift=(int(ex), int(ey)), axis=(0, 1))
