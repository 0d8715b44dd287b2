import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reglab import _kernels
from reglab._kernels import _pykernels as py

compiled = pytest.mark.skipif(_kernels.BACKEND != "cython", reason="compiled kernels not built")
ints = st.lists(st.integers(-(7**30), 7**30), min_size=0, max_size=20)
small = st.lists(st.integers(0, 25), min_size=1, max_size=20)


def test_python_convolution_by_hand():
    assert py.conv_int([1, 2], [3, 4, 5]) == [3, 10, 13, 10]
    assert py.conv_int([], [1]) == []
    # min over (ma_i + vb_j, mb_j + va_i)
    assert py.conv_prec([0, 1], [5, 4], [2], [6]) == [6, 6]


def test_python_reduction_by_hand():
    # precision 25 is capped at 20; precision -1 forces the shift up to 1
    assert py.reduce_numerators(7, 20, 0, [3, 5], [25, -1]) == (1, [21, 0], [20, -1])
    # 98 = 2 * 7^2 with shift 2 strips to 2 with shift 0; the trailing zero at full precision goes
    assert py.reduce_numerators(7, 20, 2, [98, 0], [20, 20]) == (0, [2], [20])


@compiled
@settings(max_examples=80, deadline=None)
@given(ints, ints)
def test_compiled_convolution_matches(a, b):
    assert _kernels.c.conv_int(a, b) == py.conv_int(a, b)


@compiled
@settings(max_examples=80, deadline=None)
@given(small, small, st.data())
def test_compiled_precision_convolution_matches(va, vb, data):
    ma = data.draw(st.lists(st.integers(0, 25), min_size=len(va), max_size=len(va)))
    mb = data.draw(st.lists(st.integers(0, 25), min_size=len(vb), max_size=len(vb)))
    assert _kernels.c.conv_prec(va, ma, vb, mb) == py.conv_prec(va, ma, vb, mb)


@compiled
@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-(7**25), 7**25), max_size=12), st.integers(0, 4), st.data())
def test_compiled_reduction_matches(nums, shift, data):
    precs = data.draw(st.lists(st.integers(-shift - 3, 24), min_size=len(nums), max_size=len(nums)))
    scaled = [a * 7**shift for a in nums]
    assert _kernels.c.reduce_numerators(7, 20, shift, scaled, precs) == \
        py.reduce_numerators(7, 20, shift, scaled, precs)


def test_pure_python_backend_can_be_forced():
    out = subprocess.run([sys.executable, "-c", "from reglab import _kernels; print(_kernels.BACKEND)"],
                         env={"REGLAB_PURE_PYTHON": "1", "PATH": ""}, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
