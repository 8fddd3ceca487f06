"""Benchmark: compiled likelihood kernels vs the pure-numpy fallback.

Run as ``python benchmarks/bench_kernels.py``. Times one composite
negative log-likelihood call per family and one Gumbel copula call, at the
sample size the fits actually use.
"""

import time

import numpy as np

from claimsplice._kernels import _ref
from claimsplice.composite import CompositeModel, CompositeParams
from claimsplice.copula import GumbelCopula
from claimsplice.families import (
    InverseBurrParams,
    InverseWeibullParams,
    ParalogisticParams,
    WeibullParams,
)

try:
    from claimsplice._kernels import _fastkern
except ImportError:
    _fastkern = None

N = 5000
REPS = 200

MODELS = {
    "weibull (code 0)": (0, CompositeParams(WeibullParams(1.5, 2000.0), InverseWeibullParams(1.2, 8000.0), 5000.0)),
    "paralogistic (code 1)": (1, CompositeParams(ParalogisticParams(1.3, 0.0005), InverseWeibullParams(1.5, 9000.0), 6000.0)),
    "invburr (code 2)": (2, CompositeParams(InverseBurrParams(1.2, 1.6, 0.0004), InverseWeibullParams(1.3, 10000.0), 7000.0)),
}


def bench(fn, *args):
    fn(*args)  # warm up
    t0 = time.perf_counter()
    for _ in range(REPS):
        fn(*args)
    return (time.perf_counter() - t0) / REPS


def main():
    print(f"n = {N}, {REPS} reps per timing")
    for name, (code, params) in MODELS.items():
        data = np.ascontiguousarray(CompositeModel(params).sample(N, 1234))
        vec = params.as_vector()
        t_ref = bench(_ref.composite_nll, code, vec, data)
        line = f"composite_nll {name:22} python {t_ref * 1e3:8.3f} ms"
        if _fastkern is not None:
            t_fast = bench(_fastkern.composite_nll, code, vec, data)
            assert abs(_ref.composite_nll(code, vec, data) - _fastkern.composite_nll(code, vec, data)) < 1e-8
            line += f"   cython {t_fast * 1e3:8.3f} ms   speedup {t_ref / t_fast:5.1f}x"
        print(line)

    u, v = GumbelCopula(2.0).sample(N, 99)
    u, v = np.ascontiguousarray(u), np.ascontiguousarray(v)
    t_ref = bench(_ref.gumbel_nll, 2.0, u, v)
    line = f"gumbel_nll    {'phi=2':22} python {t_ref * 1e3:8.3f} ms"
    if _fastkern is not None:
        t_fast = bench(_fastkern.gumbel_nll, 2.0, u, v)
        line += f"   cython {t_fast * 1e3:8.3f} ms   speedup {t_ref / t_fast:5.1f}x"
    print(line)
    if _fastkern is None:
        print("compiled extension not available; fallback only")


if __name__ == "__main__":
    main()
