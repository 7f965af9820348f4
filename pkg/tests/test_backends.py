"""Parity of the compiled kernels and the pure-Python fallback."""

import json
import os
import random
import subprocess
import sys
from fractions import Fraction

import pytest

from periodica import _kernels_py

try:
    from periodica import _kernels
except ImportError:          # pragma: no cover - compiled twin not built
    _kernels = None


requires_compiled = pytest.mark.skipif(
    _kernels is None, reason="compiled kernels not built")


@requires_compiled
def test_rref_parity_q():
    rng = random.Random(0)
    for _ in range(150):
        nr, nc = rng.randint(1, 7), rng.randint(1, 7)
        flat = [Fraction(rng.randint(-5, 5), rng.choice([1, 1, 2, 3]))
                for _ in range(nr * nc)]
        a = _kernels.q_rref(list(flat), nr, nc)
        b = _kernels_py.q_rref(list(flat), nr, nc)
        assert a[0] == b[0] and list(a[1]) == list(b[1])


@requires_compiled
def test_rref_parity_fp():
    rng = random.Random(1)
    p = 97
    for _ in range(150):
        nr, nc = rng.randint(1, 8), rng.randint(1, 8)
        flat = [rng.randrange(p) for _ in range(nr * nc)]
        a = _kernels.fp_rref(list(flat), nr, nc, p)
        b = _kernels_py.fp_rref(list(flat), nr, nc, p)
        assert a[0] == b[0] and list(a[1]) == list(b[1])


@requires_compiled
def test_matmul_parity():
    rng = random.Random(2)
    for _ in range(60):
        n, k, m = rng.randint(1, 6), rng.randint(1, 6), rng.randint(1, 6)
        qa = [Fraction(rng.randint(-4, 4)) for _ in range(n * k)]
        qb = [Fraction(rng.randint(-4, 4)) for _ in range(k * m)]
        assert _kernels.q_matmul(qa, qb, n, k, m) \
            == _kernels_py.q_matmul(qa, qb, n, k, m)
        fa = [rng.randrange(13) for _ in range(n * k)]
        fb = [rng.randrange(13) for _ in range(k * m)]
        assert _kernels.fp_matmul(fa, fb, n, k, m, 13) \
            == _kernels_py.fp_matmul(fa, fb, n, k, m, 13)


def test_pure_fallback_end_to_end():
    """The whole pipeline must give identical answers on the pure backend."""
    script = (
        "import json\n"
        "from periodica.linalg import backend\n"
        "from periodica.fields import QQ\n"
        "from periodica.families import nakayama, linear_a\n"
        "from periodica.stablecat import algebra_period\n"
        "from periodica.hochschild import HochschildContext\n"
        "ctx = HochschildContext(linear_a(2, QQ), 6)\n"
        "print(json.dumps({'backend': backend(),\n"
        "                  'period': algebra_period(nakayama(2, 2, QQ), 8).value,\n"
        "                  'hh': [ctx.hh(p) for p in range(3)]}))\n"
    )
    env = dict(os.environ, PERIODICA_PURE="1")
    proc = subprocess.run([sys.executable, "-c", script],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0, proc.stderr
    doc = json.loads(proc.stdout)
    assert doc["backend"] == "python"
    assert doc["period"] == 2
    assert doc["hh"] == [1, 0, 0]
