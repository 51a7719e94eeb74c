import numpy as np
import pytest

from hardy_interp.boundary_calculus import BoundaryFunction, WeightProfile
from hardy_interp.errors import ContractError, DomainError
from hardy_interp.hardy_functions import (
    CERTIFIED,
    HAS_INNER,
    UNCERTIFIED,
    ClosedForm,
    Cayley,
    Constant,
    InnerFunction,
    InnerSpec,
    Product,
    boundary_mean_log,
    function_from_dict,
    outer_deficit,
    outer_from_log_modulus,
    power_fn,
    power_outer,
)
from hardy_interp.interpolation import gap_power_interpolate, schur_interpolate
from hardy_interp.disk_geometry import PointSequence
from hardy_interp.obstructions import radial_outer_decay_check, zero_free_envelope_check


def random_disk(rng, n, radius=0.95):
    return radius * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


# ---------------------------------------------------------------- inner parts


def test_inner_spec_invariants():
    with pytest.raises(DomainError):
        InnerSpec([], [(1.0, 0.0)])
    with pytest.raises(DomainError):
        InnerSpec([], [(0.9, 1.0)])
    with pytest.raises(DomainError):
        InnerSpec([1.2], [])
    assert InnerSpec([], []).is_trivial


def test_eval_examples():
    atom = InnerFunction(InnerSpec([], [(1.0, 1.0)]))
    assert atom(0.0) == pytest.approx(np.exp(-1))
    z = InnerFunction(InnerSpec([0.0], []))
    assert z(0.3) == pytest.approx(0.3)
    f = ClosedForm.exp_neg_c_power(2.0, 1.0)
    assert f(0.0) == pytest.approx(np.exp(-2))
    assert f.status == HAS_INNER


def test_inner_modulus_at_most_one(rng):
    I = InnerFunction(InnerSpec([0.3, 0.5j, -0.7 + 0.1j], [(1.0, 1.0), (np.exp(2j), 0.4)], np.exp(0.3j)))
    assert np.all(np.abs(I(random_disk(rng, 2000, 0.999))) <= 1.0)
    # avoid the atom angles 0 and 2, where the boundary value is undefined
    theta = np.linspace(-3, 3, 100) + 0.01
    assert np.allclose(np.abs(I.boundary(theta)), 1.0)


# ---------------------------------------------------------------- outer construction


def test_outer_from_zero_and_log_abs_one_minus():
    one = outer_from_log_modulus(BoundaryFunction.constant(0.0))
    assert one(0.4 - 0.2j) == pytest.approx(1.0)
    phi = outer_from_log_modulus(BoundaryFunction.log_abs_one_minus())
    assert abs(abs(phi(0.5)) - 0.5) <= 1e-6
    z = random_disk(np.random.default_rng(1), 20, 0.99)
    assert np.allclose(phi(z), 1 - z, atol=1e-9)


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
def test_outer_reproduces_closed_form_from_its_modulus(alpha):
    target = ClosedForm.exp_neg_c_power(1.0, alpha)
    # leading term of -Re (1 - e^{it})^-alpha is -cos(alpha pi / 2) |t|^-alpha
    W = BoundaryFunction.from_callable(target.boundary_log_abs, M=1 << 14, breakpoints=(0.0,),
                                       power_singularities={0.0: (-np.cos(alpha * np.pi / 2), alpha)})
    phi = outer_from_log_modulus(W)
    for z in (0.0, 0.5, 0.3j, -0.6 + 0.2j):
        assert abs(phi(z) - target(z)) <= 1e-6 * max(1.0, abs(target(z)))


def test_outer_rejects_nonintegrable_data():
    with pytest.raises(DomainError):
        BoundaryFunction.from_callable(lambda t: 1 / np.abs(t), M=64)


# ---------------------------------------------------------------- deficit


def test_deficit_of_outer_models():
    for h in (WeightProfile.power(0.5), WeightProfile.log_power(100, 3)):
        rep = outer_deficit(outer_from_log_modulus(h))
        assert abs(rep.deficit) <= 1e-6 and rep.certified_outer
    rep = outer_deficit(ClosedForm.one_minus_z())
    assert abs(rep.deficit) <= 1e-10 and rep.certified_outer


def test_deficit_of_singular_inner_example():
    f = ClosedForm.exp_neg_c_power(2.0, 1.0)
    rep = outer_deficit(f)
    assert rep.boundary_mean_log == pytest.approx(-1.0, abs=1e-8)
    assert rep.log_mod_at_0 == -2.0
    assert rep.deficit == pytest.approx(1.0, abs=1e-6)
    assert not rep.certified_outer


def test_deficit_blaschke_correction():
    g = outer_from_log_modulus(BoundaryFunction.log_abs_one_minus())
    at_origin = Product([InnerFunction(InnerSpec([0.0], [])), g])
    assert abs(outer_deficit(at_origin).deficit) <= 1e-8
    off_origin = Product([InnerFunction(InnerSpec([0.4 + 0.3j], [])), ClosedForm.one_minus_z()])
    rep = outer_deficit(off_origin)
    assert rep.blaschke_mass == pytest.approx(np.log(1 / 0.5))
    assert abs(rep.deficit) <= 1e-8 and not rep.certified_outer


def test_deficit_additivity():
    f = outer_from_log_modulus(WeightProfile.power(0.5))
    g = ClosedForm.exp_neg_c_power(1.5, 1.0)
    h = ClosedForm.one_minus_z()
    for a, b in ((f, g), (g, h), (f, h)):
        total = outer_deficit(Product([a, b])).deficit
        assert total == pytest.approx(outer_deficit(a).deficit + outer_deficit(b).deficit, abs=1e-8)


def test_boundary_mean_of_closed_form():
    assert boundary_mean_log(ClosedForm.one_minus_z()) == pytest.approx(0.0, abs=1e-12)


# ---------------------------------------------------------------- powers


def test_power_outer():
    f = ClosedForm.one_minus_z()
    assert power_outer(f, 1)(0.3j) == pytest.approx(f(0.3j))
    assert power_outer(f, 2)(0.5j) == pytest.approx((1 - 0.5j) ** 2, abs=1e-8)
    assert abs(outer_deficit(power_outer(f, 2)).deficit) <= 1e-8
    o = outer_from_log_modulus(WeightProfile.power(0.5))
    assert power_outer(o, 3)(0.2) == pytest.approx(o(0.2) ** 3, rel=1e-12)
    with pytest.raises(DomainError):
        power_outer(f, 0)
    with pytest.raises(ContractError):
        power_outer(ClosedForm.exp_neg_c_power(1.0, 1.0), 2)


def test_power_fn_examples():
    e = Constant(np.e)
    f = power_fn(e, Constant(1.0))
    assert f(0.3) == pytest.approx(np.e) and f.certificate != UNCERTIFIED
    psi = ClosedForm.mobius(-1, -1, -1, 1)  # -(1 + z)/(1 - z)
    g = power_fn(e, psi)
    assert g(0.0) == pytest.approx(np.exp(-1))
    assert g.certificate == UNCERTIFIED
    assert outer_deficit(g).deficit == pytest.approx(1.0, abs=1e-6)


def test_power_fn_bound_for_gap_power():
    seq = PointSequence.exponential(0.5, 8)
    d = np.linspace(0.5, 2.0, 8)
    f, cert = gap_power_interpolate(seq, d)
    psi = f.psi
    th = np.linspace(-np.pi, np.pi, 1 << 12, endpoint=False)
    psi_sup = np.max(np.abs(psi.boundary(th)))
    bound = np.exp(psi_sup * np.log(1 + 2.0) + np.pi / 2 * psi_sup)
    assert np.max(np.abs(f(0.99 * np.exp(1j * th)))) <= bound
    assert f.certificate == "bounded outer"


def test_missing_metadata_is_uncertified():
    phi = ClosedForm.exp_neg_c_power(1.0, 1.0)
    assert power_fn(phi, Constant(1.0)).certificate == UNCERTIFIED


# ---------------------------------------------------------------- radial behaviour


@pytest.mark.parametrize("h", [WeightProfile.power(0.5), WeightProfile.log_power(100, 3)], ids=["power", "log_power"])
@pytest.mark.parametrize("theta", [0.0, np.pi / 2])
def test_outer_radial_decay(h, theta):
    assert radial_outer_decay_check(outer_from_log_modulus(h), theta).passed


def test_zero_free_bound_for_atoms():
    two = InnerFunction(InnerSpec([], [(1.0, 0.5), (np.exp(1j), 0.3)]))
    rep = zero_free_envelope_check(two)
    assert rep.passed and rep.bound == pytest.approx(1.6)


# ---------------------------------------------------------------- serialization


def test_function_roundtrip():
    models = [
        Constant(2 - 1j),
        InnerFunction(InnerSpec([0.2], [(1j, 0.5)])),
        ClosedForm.exp_neg_c_power(1.0, 0.5),
        ClosedForm.mobius(1, 2, 0, 3),
        outer_from_log_modulus(WeightProfile.power(0.5)),
        Product([ClosedForm.one_minus_z(), Constant(3.0)]),
        Cayley(schur_interpolate([0.2, 0.5j], [0.3, -0.1j])[0], 2.0),
    ]
    z = np.array([0.1, 0.5j, -0.3 + 0.3j])
    for f in models:
        g = function_from_dict(f.to_dict())
        assert np.allclose(g(z), f(z), rtol=1e-12)
        assert g.status == f.status


def test_statuses():
    assert ClosedForm.one_minus_z().status == CERTIFIED
    assert outer_from_log_modulus(WeightProfile.power(0.3)).status == CERTIFIED
    assert InnerFunction(InnerSpec([], [(1.0, 1.0)])).status == HAS_INNER


def test_cayley_maps_into_right_half_plane():
    z = np.array([0.2, 0.5j, -0.4])
    w = z / 2 + 0.1
    g, _ = schur_interpolate(z, w)
    f = Cayley(g, 1.5)
    assert f.status == CERTIFIED and f.positivity > 0
    assert np.allclose(f(z), 1.5 * (1 + w) / (1 - w))
    assert abs(outer_deficit(f).deficit) <= 1e-8
