"""Heat-kernel envelopes and killed-path Monte Carlo bindings."""

try:
    from hk._core import *  # noqa: F401,F403
except ImportError:  # running against a build tree on PYTHONPATH
    from _core import *  # noqa: F401,F403
