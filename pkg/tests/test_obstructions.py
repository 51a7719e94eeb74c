import numpy as np
import pytest

from hardy_interp.boundary_calculus import UPPER_CONSTANT, BoundaryFunction, WeightProfile
from hardy_interp.disk_geometry import PointSequence
from hardy_interp.errors import ContractError, DomainError
from hardy_interp.hardy_functions import (
    ClosedForm,
    Constant,
    InnerFunction,
    InnerSpec,
    Product,
    outer_from_log_modulus,
)
from hardy_interp.interpolation import TargetSequence, growth_interpolate
from hardy_interp.obstructions import (
    BLASCHKE_FORCED,
    INCONCLUSIVE,
    INNER_FORCED,
    OUTER_POSSIBLE,
    classify_decay,
    inner_liminf_check,
    mtone_envelope,
    radial_outer_decay_check,
    zero_free_envelope_check,
)

SEQ = PointSequence.exponential(0.5, 12)


# ---------------------------------------------------------------- classification


def test_exp_neg_over_gap_is_inner_forced():
    t = TargetSequence.from_generator(SEQ, {"kind": "exp_neg_c_over_gap", "c": 1.0})
    rep = classify_decay(SEQ, t)
    assert rep.classification == INNER_FORCED
    assert np.max(np.abs(rep.s_values + 1.0)) <= 1e-12
    assert rep.limit == -1.0


def test_exp_neg_over_gap_sq_is_blaschke_forced():
    t = TargetSequence.from_generator(SEQ, {"kind": "exp_neg_c_over_gap_sq", "c": 1.0})
    rep = classify_decay(SEQ, t)
    assert rep.classification == BLASCHKE_FORCED
    assert np.allclose(np.abs(rep.s_values), 1 / SEQ.gaps, rtol=1e-12)


def test_bounded_targets_are_outer_possible(rng):
    w = rng.uniform(0.5, 2.0, 12)
    t = TargetSequence.from_logs(np.log(w), {"kind": "bounded"})
    rep = classify_decay(SEQ, t)
    assert rep.classification == OUTER_POSSIBLE
    assert rep.tail_estimate <= np.log(2) * SEQ.gaps[-3]
    assert classify_decay(SEQ, w).classification == INCONCLUSIVE


def test_zero_target_rejected():
    with pytest.raises(DomainError):
        classify_decay(SEQ.subset([0, 1]), [1.0, 0.0])


# ---------------------------------------------------------------- radial checks


def test_radial_constant_and_one_minus_z():
    rep = radial_outer_decay_check(Constant(3.0))
    assert rep.passed
    assert np.allclose(rep.values, (1 - rep.r) * np.log(3.0))
    rep = radial_outer_decay_check(ClosedForm.one_minus_z())
    assert rep.passed
    assert np.allclose(rep.values, (1 - rep.r) * np.log(1 - rep.r), rtol=1e-12)


def test_radial_fails_on_singular_inner():
    rep = radial_outer_decay_check(ClosedForm.exp_neg_c_power(2.0, 1.0))
    assert not rep.passed
    # exactly -2(1 - r)/(1 - r) = -2 on the positive radius
    assert np.max(np.abs(rep.values + 2.0)) <= 1e-6


def test_zero_free_single_atom():
    rep = zero_free_envelope_check(InnerFunction(InnerSpec([], [(1.0, 1.0)])))
    assert rep.bound == 2.0
    assert np.allclose(rep.values, 1 + rep.r, rtol=1e-12)
    assert rep.passed


def test_zero_free_outer_reduces_to_decay():
    rep = zero_free_envelope_check(ClosedForm.one_minus_z())
    assert rep.bound == 0.0 and rep.passed


def test_zero_free_two_atoms_direct_oracle():
    atoms = [(1.0, 0.5), (np.exp(1j), 0.3)]
    f = InnerFunction(InnerSpec([], atoms))
    for theta in (0.0, 1.0, 2.5):
        rep = zero_free_envelope_check(f, theta=theta)
        z = rep.r * np.exp(1j * theta)
        direct = sum(m * np.real((zeta + z) / (zeta - z)) for zeta, m in atoms)
        assert np.allclose(rep.values, (1 - rep.r) * direct, rtol=1e-10)
        assert rep.passed and rep.bound == pytest.approx(1.6)


def test_zero_free_rejects_blaschke_zeros():
    with pytest.raises(ContractError):
        zero_free_envelope_check(InnerFunction(InnerSpec([0.5], [])))


# ---------------------------------------------------------------- inner liminf


def test_liminf_atom_at_one_tends_to_zero():
    rep = inner_liminf_check(SEQ, InnerFunction(InnerSpec([], [(1.0, 1.0)])))
    lam = SEQ.points.real
    assert np.allclose(rep.moduli_log, -(1 + lam) / (1 - lam), rtol=1e-12)
    assert rep.decreasing
    assert rep.moduli_log[-1] < -8000 and rep.estimate == 0.0


def test_liminf_atom_at_minus_one_stays_away_from_zero():
    rep = inner_liminf_check(SEQ, InnerFunction(InnerSpec([], [(-1.0, 1.0)])))
    lam = SEQ.points.real
    # exp(-(1 - l)/(1 + l)) -> 1
    assert np.allclose(rep.moduli_log, -(1 - lam) / (1 + lam), rtol=1e-12)
    assert rep.estimate > 0.5


def test_liminf_for_a_product_uses_declared_inner_part():
    f = Product([ClosedForm.one_minus_z(), InnerFunction(InnerSpec([0.3], [(1.0, 0.5)]))])
    rep = inner_liminf_check(SEQ, f)
    assert rep.estimate < 1e-10


def test_liminf_requires_inner_part():
    with pytest.raises(ContractError):
        inner_liminf_check(SEQ, Constant(1.0))


# ---------------------------------------------------------------- rearrangement envelope


def test_envelope_trivial_psi():
    env = mtone_envelope(SEQ, np.full(12, 2.0), BoundaryFunction.constant(np.log(2.0)))
    assert np.all(env.levels == 0.0)
    assert np.allclose(env.margins, 0.0)


def test_envelope_of_decreasing_profile_is_itself():
    # k = h(|t|) is already symmetric decreasing, so the envelope is ((2 + pi)/pi) h
    h = WeightProfile.power(0.5)
    env = mtone_envelope(SEQ, np.ones(12), BoundaryFunction.from_profile(h, sign=-1.0))
    x = np.array([1e-6, 1e-3, 0.1, 0.5, 0.99])
    assert np.allclose(env.integral(x), UPPER_CONSTANT * h.integral(x), rtol=1e-3)
    assert np.all(np.diff(env.levels) <= 0.0)


@pytest.mark.parametrize("h", [WeightProfile.power(0.5), WeightProfile.log_power(100, 3)], ids=["power", "log_power"])
def test_envelope_margins_for_growth_interpolant(h):
    seq = PointSequence.exponential(0.5, 10)
    psi, report, _ = growth_interpolate(seq, h)
    targets = np.abs(psi(seq.points))
    env = mtone_envelope(seq, targets, psi)
    assert env.min_margin >= -1e-8
    assert np.all(np.diff(env.levels) <= 0.0)
    assert np.all(env.levels >= 0.0)
    # margins recomputed from the exported envelope
    recomputed = env.integral(seq.gaps) + seq.gaps * (np.log(targets) - np.log(targets.max()))
    assert np.allclose(recomputed, env.margins, atol=1e-12)


def test_envelope_with_large_psi_needs_maximal_targets():
    env = mtone_envelope(SEQ, np.full(12, 1.0), BoundaryFunction.constant(0.5))
    assert np.all(env.levels == 0.0) and np.allclose(env.margins, 0.0)
    w = np.ones(12)
    w[3] = 0.5
    env = mtone_envelope(SEQ, w, BoundaryFunction.constant(0.5))
    assert env.margins[3] < 0
