import numpy as np
import pytest

from hardy_interp.disk_geometry import (
    PointSequence,
    carleson_seed,
    exponential_ratio,
    pseudo_hyperbolic,
    separation_delta,
)
from hardy_interp.errors import ContractError, DomainError


def brute_force_products(z):
    out = []
    for n in range(len(z)):
        p = 1.0
        for k in range(len(z)):
            if k != n:
                p *= abs(z[k] - z[n]) / abs(1 - np.conj(z[k]) * z[n])
        out.append(p)
    return np.array(out)


def test_pseudo_hyperbolic_values():
    assert pseudo_hyperbolic(0, 0.3 + 0.4j) == pytest.approx(0.5)
    assert pseudo_hyperbolic(0.7j, 0.7j) == 0.0
    assert pseudo_hyperbolic(0.5, 0.8) == pytest.approx(0.5, abs=1e-15)


def test_pseudo_hyperbolic_domain():
    with pytest.raises(DomainError):
        pseudo_hyperbolic(1.0, 0.0)
    with pytest.raises(DomainError):
        pseudo_hyperbolic(0.0, 2j)


def test_pseudo_hyperbolic_metric_properties(rng):
    pts = 0.99 * np.sqrt(rng.random((500, 3))) * np.exp(2j * np.pi * rng.random((500, 3)))
    for a, b, c in pts:
        assert pseudo_hyperbolic(a, b) == pseudo_hyperbolic(b, a)
        ab, bc, ac = pseudo_hyperbolic(a, b), pseudo_hyperbolic(b, c), pseudo_hyperbolic(a, c)
        assert ac <= (ab + bc) / (1 + ab * bc) + 1e-12


def test_point_sequence_invariants():
    with pytest.raises(DomainError):
        PointSequence([0.1, 1.0])
    with pytest.raises(DomainError):
        PointSequence([1 - 1e-13])
    with pytest.raises(ContractError):
        PointSequence([0.1, 0.1])
    assert PointSequence.exponential(0.5, 5).is_real_increasing
    assert not PointSequence([0.5, 0.1]).is_real_increasing
    assert not PointSequence([0.1j, 0.5]).is_real_increasing


def test_exponential_gaps_are_exact():
    seq = PointSequence.exponential(0.5, 30)
    assert np.array_equal(seq.gaps, 0.5 ** np.arange(1, 31))


def test_separation_examples():
    assert separation_delta(PointSequence([0.5])).delta == 1.0
    rep = separation_delta(PointSequence([0.0, 0.5]))
    assert rep.delta == pytest.approx(0.5)
    assert np.allclose(rep.per_point_products, [0.5, 0.5])
    seq = PointSequence.exponential(0.5, 10)
    rep = separation_delta(seq)
    oracle = brute_force_products(seq.points)
    assert np.allclose(rep.per_point_products, oracle, rtol=1e-12)
    assert rep.delta == pytest.approx(oracle.min(), rel=1e-12)
    assert rep.exponential_ratio == 0.5
    assert 0 < rep.carleson_seed <= rep.delta


def test_separation_invariances(rng):
    z = 0.95 * np.sqrt(rng.random(9)) * np.exp(2j * np.pi * rng.random(9))
    base = separation_delta(PointSequence(z))
    perm = rng.permutation(9)
    assert separation_delta(PointSequence(z[perm])).delta == pytest.approx(base.delta, abs=1e-12)
    assert separation_delta(PointSequence(z).rotated(1.234)).delta == pytest.approx(base.delta, abs=1e-12)
    for k in range(9):
        keep = np.delete(np.arange(9), k)
        assert separation_delta(PointSequence(z[keep])).delta >= base.delta - 1e-15


def test_exponential_ratio():
    assert exponential_ratio(PointSequence.exponential(0.5, 8)) == pytest.approx(0.5)
    n = np.arange(2, 51)
    assert exponential_ratio(PointSequence(1 - 1 / n)) >= 0.97
    assert exponential_ratio(PointSequence([0.3])) is None
    with pytest.raises(ContractError):
        exponential_ratio(PointSequence([0.5, 0.2]))


def test_carleson_seed():
    assert carleson_seed(1.0) == 0.25
    assert carleson_seed(0.5) == 0.0625
    assert carleson_seed(0.9) == pytest.approx(0.2025)
    for bad in (0.0, -0.1, 1.5):
        with pytest.raises(DomainError):
            carleson_seed(bad)
