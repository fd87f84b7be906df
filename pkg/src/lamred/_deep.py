"""Run deeply recursive code on a thread with a large C stack.

Normal forms of Church products are tens of thousands of nodes deep and every
kernel recurses along them.  CPython's default stack and recursion limit are
far too small for that, so public entry points hop onto a worker thread with
a big stack.  Nested calls run inline.
"""

import functools
import sys
import threading

STACK_BYTES = 1 << 30
RECURSION_LIMIT = 1_000_000

_state = threading.local()


def run_deep(fn, *args, **kwargs):
    if getattr(_state, "deep", False):
        return fn(*args, **kwargs)
    box = {}

    def target():
        _state.deep = True
        try:
            box["value"] = fn(*args, **kwargs)
        except BaseException as exc:  # re-raised on the calling thread
            box["error"] = exc

    if sys.getrecursionlimit() < RECURSION_LIMIT:
        sys.setrecursionlimit(RECURSION_LIMIT)
    old = threading.stack_size()
    threading.stack_size(STACK_BYTES)
    try:
        worker = threading.Thread(target=target, name="lamred-deep")
        worker.start()
    finally:
        threading.stack_size(old)
    worker.join()
    if "error" in box:
        raise box["error"]
    return box["value"]


def deep(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        return run_deep(fn, *args, **kwargs)

    return wrapper
