import numpy as np
import pytest

from toric_schubert import kernels, parse_type, parse_word
from toric_schubert.cohomology import mod2_structure, presentation, product_table
from toric_schubert.weyl_words import toric_words

BACKENDS = kernels.available_backends()


def _args(ring):
    t = product_table(ring)
    s = mod2_structure(ring)
    r = t.r
    sq = [s.table[a][a] for a in range(r)]
    prod = [[s.table[b][a] for a in range(r)] for b in range(r)]
    return t, sq, prod, r


@pytest.mark.parametrize("backend", BACKENDS)
def test_box_example(backend):
    ring = presentation(parse_word(parse_type("A5"), "3,1,4,5,2"))
    t, *_ = _args(ring)
    out = kernels.box_square_zero(t.array(), 2, np.ones(32, dtype=np.uint8), backend=backend)
    for z in out:
        assert not any(t.square(list(map(int, z))))
        assert next(x for x in z if x) > 0


def test_backends_agree():
    if len(BACKENDS) < 2:
        pytest.skip("compiled kernels not built")
    for w in list(toric_words(parse_type("D4")))[::3]:
        ring = presentation(w)
        t, sq, prod, r = _args(ring)
        allowed = np.ones(1 << r, dtype=np.uint8)
        a = kernels.box_square_zero(t.array(), 3, allowed, backend="python")
        b = kernels.box_square_zero(t.array(), 3, allowed, backend="cython")
        assert np.array_equal(a, b)
        assert kernels.gf2_eigen_dims(sq, prod, r, backend="python") == \
            kernels.gf2_eigen_dims(sq, prod, r, backend="cython")


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.box_square_zero(np.zeros((1, 1, 1)), 1, np.ones(2, dtype=np.uint8), backend="fortran")


def test_forced_fallback():
    import os
    import subprocess
    import sys

    code = ("from toric_schubert import kernels, parse_type, parse_word\n"
            "from toric_schubert.cohomology import presentation\n"
            "from toric_schubert.recovery import recover\n"
            "assert kernels.BACKEND == 'python'\n"
            "print(sorted(recover(presentation(parse_word(parse_type('E6'), '1,3,4,2,5,6'))).digraph.edges))\n")
    env = dict(os.environ, TORIC_SCHUBERT_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.count("(") == 5
