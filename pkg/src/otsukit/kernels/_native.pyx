# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; bit-for-bit equivalent to otsukit.kernels.pure."""

from cpython.bytes cimport PyBytes_AS_STRING, PyBytes_FromStringAndSize
from libc.math cimport floor
from libc.stdint cimport uint64_t

BACKEND = "native"

cdef uint64_t GAMMA = 0x9E3779B97F4A7C15ULL
cdef uint64_t MIX1 = 0xBF58476D1CE4E5B9ULL
cdef uint64_t MIX2 = 0x94D049BB133111EBULL
cdef double U01 = 1.0 / 9007199254740992.0  # 2**-53


cdef inline uint64_t _mix(uint64_t state) noexcept nogil:
    cdef uint64_t z = state
    z = (z ^ (z >> 30)) * MIX1
    z = (z ^ (z >> 27)) * MIX2
    return z ^ (z >> 31)


def histogram_u8(data):
    """Count occurrences of each byte value; returns 256 counts."""
    cdef const unsigned char[::1] buf = data
    cdef Py_ssize_t i, n = buf.shape[0]
    cdef long long counts[256]
    cdef int k
    for k in range(256):
        counts[k] = 0
    with nogil:
        for i in range(n):
            counts[buf[i]] += 1
    return [counts[k] for k in range(256)]


def binarize_u8(data, int threshold):
    """Map every byte to 255 when >= threshold, else 0."""
    cdef const unsigned char[::1] buf = data
    cdef Py_ssize_t i, n = buf.shape[0]
    out = PyBytes_FromStringAndSize(NULL, n)
    cdef unsigned char* dst = <unsigned char*> PyBytes_AS_STRING(out)
    with nogil:
        for i in range(n):
            dst[i] = 255 if buf[i] >= threshold else 0
    return out


def luma_rec601(rgb):
    """Convert interleaved 8-bit RGB triplets to gray (0.299R + 0.587G + 0.114B)."""
    cdef const unsigned char[::1] buf = rgb
    cdef Py_ssize_t k, n = buf.shape[0]
    if n % 3:
        raise ValueError("RGB buffer length must be a multiple of 3")
    out = PyBytes_FromStringAndSize(NULL, n // 3)
    cdef unsigned char* dst = <unsigned char*> PyBytes_AS_STRING(out)
    with nogil:
        for k in range(n // 3):
            dst[k] = <unsigned char> (
                <long> (0.299 * buf[3 * k] + 0.587 * buf[3 * k + 1]
                        + 0.114 * buf[3 * k + 2] + 0.5)
            )
    return out


def shuffle_u8(data, seed):
    """Seeded Fisher-Yates permutation of a byte string."""
    cdef uint64_t state = <uint64_t> (seed & 0xFFFFFFFFFFFFFFFF)
    cdef const unsigned char[::1] src = data
    cdef Py_ssize_t i, j, n = src.shape[0]
    out = PyBytes_FromStringAndSize(NULL, n)
    cdef unsigned char* buf = <unsigned char*> PyBytes_AS_STRING(out)
    cdef unsigned char tmp
    with nogil:
        for i in range(n):
            buf[i] = src[i]
        for i in range(n - 1, 0, -1):
            state = state + GAMMA
            j = <Py_ssize_t> (_mix(state) % <uint64_t> (i + 1))
            tmp = buf[i]
            buf[i] = buf[j]
            buf[j] = tmp
    return out


def bimodal_counts(int total, double mean0, double sigma0, double mean1,
                   double sigma1, double mix, seed):
    """Histogram of draws from a two-Gaussian mixture clamped to [0, 255]."""
    cdef uint64_t state = <uint64_t> (seed & 0xFFFFFFFFFFFFFFFF)
    cdef long long counts[256]
    cdef int k
    for k in range(256):
        counts[k] = 0
    cdef int s, u
    cdef double mean, sigma, acc, value
    cdef long idx
    with nogil:
        for s in range(total):
            state = state + GAMMA
            if (_mix(state) >> 11) * U01 < mix:
                mean = mean0
                sigma = sigma0
            else:
                mean = mean1
                sigma = sigma1
            acc = 0.0
            for u in range(12):
                state = state + GAMMA
                acc += (_mix(state) >> 11) * U01
            value = mean + sigma * (acc - 6.0)
            idx = <long> floor(value + 0.5)
            if idx < 0:
                idx = 0
            elif idx > 255:
                idx = 255
            counts[idx] += 1
    return [counts[k] for k in range(256)]
