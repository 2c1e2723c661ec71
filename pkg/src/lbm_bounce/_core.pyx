# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled collide + periodic stream kernel."""
import numpy as np
cimport numpy as cnp

cdef int EX[9]
cdef int EY[9]
EX[:] = [0, 1, 0, -1, 0, 1, -1, -1, 1]
EY[:] = [0, 0, 1, 0, -1, 1, 1, -1, -1]


def collide_stream(double[:, :, ::1] f, double[:, ::1] C,
                   double[:, :, ::1] fstar, double[:, :, ::1] fout):
    """Linear collision ``fstar = C f`` followed by a periodic push into ``fout``."""
    cdef Py_ssize_t nx = f.shape[1], ny = f.shape[2]
    cdef Py_ssize_t x, y, i, j, xd, yd
    cdef double loc[9]
    cdef double Cl[81]
    cdef double acc
    for i in range(9):
        for j in range(9):
            Cl[9 * i + j] = C[i, j]
    with nogil:
        for x in range(nx):
            for y in range(ny):
                for j in range(9):
                    loc[j] = f[j, x, y]
                for i in range(9):
                    acc = 0.0
                    for j in range(9):
                        acc = acc + Cl[9 * i + j] * loc[j]
                    fstar[i, x, y] = acc
                    xd = x + EX[i]
                    yd = y + EY[i]
                    if xd < 0:
                        xd = nx - 1
                    elif xd == nx:
                        xd = 0
                    if yd < 0:
                        yd = ny - 1
                    elif yd == ny:
                        yd = 0
                    fout[i, xd, yd] = acc
