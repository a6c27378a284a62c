import cmath
import math

import pytest

import dirilab


def test_corpus_names():
    names = dirilab.corpus_names()
    assert len(names) == 6
    assert len(set(names)) == 6
    for n in names:
        assert len(dirilab.corpus(n)) > 0


def test_eval_and_means():
    f = dirilab.polynomial([(1, 1.0), (2, 0.5)])
    s = complex(0.3, 1.7)
    assert abs(f(s) - (1 + 0.5 * 2 ** (-s))) < 1e-14
    assert abs(dirilab.torus_mean(f, 0.0, 2.0) - 1.25) < 1e-12
    assert abs(dirilab.parseval_mean(f, 1.0) - (1 + 0.25 / 4)) < 1e-14
    assert abs(dirilab.jessen(f, 0.5)) < 1e-10


def test_hardy_stein_monomial():
    f = dirilab.polynomial([(2, 1.0)])
    want = -2 * math.log(2) * 2 ** (-2 * 0.5)
    assert abs(dirilab.hardy_stein_rhs(f, 2.0, 0.5, 200.0) - want) <= 1e-6 * abs(want)


def test_zero_lattice():
    f = dirilab.corpus("davenport")
    zs = dirilab.isolate_zeros(f, 0.5, 1.5, -20.0, 20.0)
    assert len(zs) == 2 * math.floor(20 * math.log(2) / (2 * math.pi)) + 1
    for z, mult in zs:
        k = round(z.imag * math.log(2) / (2 * math.pi))
        assert mult == 1
        assert abs(z - complex(1, 2 * math.pi * k / math.log(2))) < 1e-9


def test_kronecker_point():
    x, y = dirilab.kronecker_point(2 * math.pi / math.log(2))
    assert min(x, 2 * math.pi - x) < 1e-12
    assert abs(cmath.exp(1j * y) - cmath.exp(-2j * math.pi * math.log(3) / math.log(2))) < 1e-12


def test_run_command_is_reproducible():
    cfg = {"f": "mono2", "xi": [0.27, 0.42], "seed": 3}
    a = dirilab.run("mean-counting", cfg)
    b = dirilab.run("mean-counting", cfg)
    assert a == b
    assert a[1]["command"] == "mean-counting"


def test_errors_raise():
    with pytest.raises(dirilab.DirilabError):
        dirilab.run("hardy-stein", {"f": "nope"})
    with pytest.raises(ValueError):
        dirilab.polynomial([(0, 1.0)])
