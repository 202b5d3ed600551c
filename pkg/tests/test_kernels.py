import os
import subprocess
import sys

from hypothesis import given, strategies as st

from parhiggs import kernels

ints = st.lists(st.integers(-(2 ** 40), 2 ** 40), max_size=40)
huge = st.lists(st.integers(-(2 ** 200), 2 ** 200), max_size=20)


@given(ints, ints)
def test_selected_kernel_matches_pure(a, b):
    assert kernels.convolve(a, b) == kernels.py_convolve(a, b)


@given(huge, huge)
def test_overflow_falls_back_exactly(a, b):
    assert kernels.convolve(a, b) == kernels.py_convolve(a, b)


def test_pure_mode_env_switch():
    out = subprocess.run(
        [sys.executable, "-c", "from parhiggs import kernels; print(kernels.BACKEND)"],
        env=dict(os.environ, PARHIGGS_PURE="1"), capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_compiled_kernel_reports_overflow():
    if kernels.BACKEND != "cython":
        return
    from parhiggs import _ckernels
    import pytest
    with pytest.raises(OverflowError):
        _ckernels.convolve([2 ** 62], [4])
