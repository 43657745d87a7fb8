import importlib
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from ringstore import _pykernels  # noqa: E402


def _available_backends():
    mods = [_pykernels]
    try:
        mods.append(importlib.import_module("ringstore._ckernels"))
    except ImportError:
        pass
    return mods


BACKENDS = _available_backends()


@pytest.fixture(params=BACKENDS, ids=lambda m: m.NAME)
def kernels(request):
    return request.param


@pytest.fixture
def ed_4_2_5():
    from ringstore.scheme import build_ed_scheme

    return build_ed_scheme(4, 2, 5)


@pytest.fixture
def ed_5_2_5():
    from ringstore.scheme import build_ed_scheme

    return build_ed_scheme(5, 2, 5)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        text, ok = results[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}")
