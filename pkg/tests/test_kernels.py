"""Differential tests: compiled bitset kernels against the pure-Python
reference on seeded random lattices.  Skipped wholesale when the extension
was not built."""

import random

import pytest

from oqlkit._kernels import BACKEND, backend_for, pure

try:
    from oqlkit._kernels import _bitops as compiled
except ImportError:
    compiled = None

from conftest import BOOLEAN3, MO2, NOTE13, O6, build, random_atomistic_lattice

pytestmark = pytest.mark.skipif(
    compiled is None, reason="compiled kernels not built"
)


def lattices():
    out = [build(s) for s in (BOOLEAN3, MO2, NOTE13, O6)]
    rng = random.Random(97531)
    out.extend(random_atomistic_lattice(rng, rng.randrange(3, 6)) for _ in range(8))
    return out


def _parts(lat):
    meet_flat, join_flat, down = lat._flat()
    return len(lat.elements), meet_flat, join_flat, down


@pytest.mark.parametrize("lat", lattices(), ids=lambda l: f"n{len(l.elements)}")
def test_pointwise_kernels_agree(lat):
    n, meet_flat, join_flat, down = _parts(lat)
    rng = random.Random(n * 1000 + 7)
    masks = [0, (1 << n) - 1] + [rng.randrange(1 << n) for _ in range(40)]
    for mask in masks:
        assert compiled.downclose(mask, down) == pure.downclose(mask, down)
        assert compiled.join_of(mask, join_flat, n, lat.bottom_i) == pure.join_of(
            mask, join_flat, n, lat.bottom_i
        )
        assert compiled.meet_of(mask, meet_flat, n, lat.top_i) == pure.meet_of(
            mask, meet_flat, n, lat.top_i
        )
        args = (mask, n, down, meet_flat, join_flat, lat.bottom_i)
        assert compiled.di_close(*args) == pure.di_close(*args)
        assert compiled.is_dideal(*args) == pure.is_dideal(*args)
        dargs = (mask, n, meet_flat, join_flat, lat.bottom_i)
        assert compiled.is_distributive_join(*dargs) == pure.is_distributive_join(
            *dargs
        )


@pytest.mark.parametrize("lat", lattices(), ids=lambda l: f"n{len(l.elements)}")
def test_enumeration_kernels_agree(lat):
    n, meet_flat, join_flat, down = _parts(lat)
    order = lat._linear_extension()
    assert list(compiled.downsets(n, down, order)) == list(pure.downsets(n, down, order))
    cargs = (n, down, meet_flat, join_flat, lat.bottom_i, order)
    assert list(compiled.dideals(*cargs)) == list(pure.dideals(*cargs))


def test_dispatch_prefers_compiled_under_64():
    assert BACKEND == "compiled"
    assert backend_for(10) is compiled
    assert backend_for(64) is compiled
    assert backend_for(65) is pure
