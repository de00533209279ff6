"""Heavy-tailed stochastic optimization core (pybind11 bindings)."""

try:
    from htopt._htopt import *  # noqa: F401,F403  (installed layout)
except ImportError:
    from _htopt import *  # noqa: F401,F403  (in-tree build dir on PYTHONPATH)
