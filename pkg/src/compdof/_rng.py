import numpy as np

_U64 = 1 << 64


def check_seed(seed):
    if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool) or not 0 <= seed < _U64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return int(seed)


def substream(seed, *key):
    """Independent generator for the structure identified by ``key`` under ``seed``.

    Streams for different keys are statistically independent, so trial ``t``
    can be regenerated without replaying trials ``0..t-1``.
    """
    ss = np.random.SeedSequence(check_seed(seed), spawn_key=tuple(int(x) for x in key))
    return np.random.Generator(np.random.PCG64(ss))
