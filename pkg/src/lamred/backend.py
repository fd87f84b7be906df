"""Pick the reduction core: the compiled extension when present, else Python.

Both cores are built from the same source (``_core.py``).  Setting the
environment variable ``LAMRED_PURE_PYTHON=1`` forces the pure-Python core
even when the extension is installed.  ``load("pure")`` and
``load("compiled")`` give direct access to either one, which is what the
backend benchmark uses.  Terms built by one core must not be handed to the
other.
"""

import importlib
import importlib.util
import os
import sys

_HERE = os.path.dirname(os.path.abspath(__file__))
_PURE_NAME = "lamred._core_pure"


def _load_pure():
    mod = sys.modules.get(_PURE_NAME)
    if mod is not None:
        return mod
    spec = importlib.util.spec_from_file_location(_PURE_NAME, os.path.join(_HERE, "_core.py"))
    mod = importlib.util.module_from_spec(spec)
    sys.modules[_PURE_NAME] = mod
    spec.loader.exec_module(mod)
    return mod


def _load_compiled():
    mod = importlib.import_module("lamred._core")
    if not mod.COMPILED:
        return None
    return mod


def available():
    """Names of the cores that can be loaded in this installation."""
    names = ["pure"]
    if _load_compiled() is not None:
        names.insert(0, "compiled")
    return names


def load(kind):
    if kind == "pure":
        return _load_pure()
    if kind == "compiled":
        mod = _load_compiled()
        if mod is None:
            raise ImportError("the compiled core is not built; run `pip install -e .` with Cython available")
        return mod
    raise ValueError("unknown backend %r" % (kind,))


def _select():
    if os.environ.get("LAMRED_PURE_PYTHON", "") not in ("", "0"):
        return _load_pure()
    mod = _load_compiled()
    return mod if mod is not None else _load_pure()


core = _select()
NAME = "compiled" if core.COMPILED else "pure"
