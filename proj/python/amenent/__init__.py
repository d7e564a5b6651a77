"""Entropy workbench for subshifts over Z^d x finite-abelian groups.

Thin wrapper over the C++ core: every heavy operation returns a JSON report
(parsed to a dict here); small group-arithmetic helpers return plain lists.
"""

import json as _json

try:  # installed wheel: the extension lives inside the package
    from . import _amenent as _core
except ImportError:  # build-tree layout: extension on sys.path
    import _amenent as _core

CapExceededError = _core.CapExceededError
ConfigError = _core.ConfigError
InfeasibleError = _core.InfeasibleError
PreconditionError = _core.PreconditionError
__version__ = _core.__version__

b_core = _core.b_core
folner_box = _core.folner_box
invariance_defect = _core.invariance_defect


def _dump(obj):
    if isinstance(obj, str):
        return obj
    return _json.dumps(obj)


def _report(text):
    return _json.loads(text)


def example82(trivial_z=False):
    """Exact reproduction of the Z_3 strong-subadditivity failure."""
    return _report(_core.example82(trivial_z))


def counting(system, cover_u, cover_w, n_max=6, relative=False, plateau=3, log_base="e"):
    """Conditional (and optionally relative) counting entropy sequences."""
    return _report(_core.counting(_dump(system), _dump(cover_u), _dump(cover_w),
                                  n_max, relative, plateau, log_base))


def measure_entropy(system, measure, p, q=None, n_max=6, mode="plain", tol=1e-9, log_base="e"):
    """Shannon/dynamical entropy tables for a parametric invariant measure."""
    return _report(_core.measure_entropy(_dump(system), _dump(measure), _dump(p),
                                         _dump(q) if q is not None else "", n_max, mode,
                                         tol, log_base))


def search_shearer(seed, trials, threads=1):
    """Seeded randomized search for a conditional Shearer violation."""
    return _report(_core.search_shearer(seed, trials, threads))


def varp(system, p, q, restarts=20, seed=0, grid=False, resolution=200):
    """Conditional variational principle check on a finite effective group."""
    return _report(_core.varp(_dump(system), _dump(p), _dump(q), restarts, seed,
                              grid, resolution))


def tail(system, k_max=3, m_max=5, n_max=6):
    """Inf-sup tail table over the refining box partitions."""
    return _report(_core.tail(_dump(system), k_max, m_max, n_max))


def tile(group, n, tiles):
    """Exact tiling of the Folner box [0,n) by translated tiles."""
    return _report(_core.tile(_dump(group), n, _dump(tiles)))
