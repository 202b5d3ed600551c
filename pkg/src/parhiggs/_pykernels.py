"""Reference convolution kernels on dense integer coefficient lists."""


def convolve(a, b):
    """Full linear convolution of two integer sequences.

    Arbitrary-precision throughout; this is the fallback used when the
    compiled kernel is missing or reports an int64 overflow.
    """
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a, j):
                out[i] += ai * bj
    return out
