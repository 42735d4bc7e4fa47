"""Compiled and pure kernel lanes return identical results."""

import random

import pytest

from qclass._core import _pure

speed = pytest.importorskip("qclass._core._speed")


def rnd_poly(rng, nv=2):
    t = {}
    for _ in range(rng.randint(0, 6)):
        z = [rng.randint(-3, 3) for _ in range(rng.randint(0, nv))]
        while z and z[-1] == 0:
            z.pop()
        key = (rng.randint(-5, 5), tuple(z), rng.randint(-2, 2))
        val = (rng.randint(-9, 9), rng.randint(-9, 9))
        if val != (0, 0):
            t[key] = val
    return _pure.pnorm(t, rng.randint(1, 12))


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_lane_parity(seed):
    rng = random.Random(seed)
    for _ in range(800):
        a, da = rnd_poly(rng)
        b, db = rnd_poly(rng)
        assert _pure.padd(dict(a), da, dict(b), db) == speed.padd(dict(a), da, dict(b), db)
        assert _pure.pmul(dict(a), da, dict(b), db) == speed.pmul(dict(a), da, dict(b), db)
        assert _pure.pneg(dict(a), da) == speed.pneg(dict(a), da)
        assert _pure.pscale(dict(a), da, 3, -2, 4) == speed.pscale(dict(a), da, 3, -2, 4)
        assert _pure.pnorm(dict(a), 6 * da) == speed.pnorm(dict(a), 6 * da)


def test_zexp_add_parity():
    cases = [((), ()), ((1,), (-1,)), ((1, 2), (0, -2)), ((0, 0, 3), (1,))]
    for a, b in cases:
        assert _pure.zexp_add(a, b) == speed.zexp_add(a, b)


def test_backend_reports_a_lane():
    from qclass._core import BACKEND

    assert BACKEND in ("cython", "pure")
