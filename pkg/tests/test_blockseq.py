import math

import numpy as np
import pytest

import framemult.blockseq as bs
import framemult.multipliers as mp
from framemult.errors import MetadataMissing, RatioNotCertified, UnknownExample
from framemult.frames import FiniteFrame, is_dual


def harmonic_demo():
    """Scalar blocks phi = (1, 1, -1), psi = m = (1, 1/k, 1/k)."""
    return bs.BlockSystem.harmonic_weight(
        phi=[[1.0], [1.0], [-1.0]], phi_exponents=[0, 0, 0],
        psi=[[1.0], [1.0], [1.0]], psi_exponents=[0, 1, 1],
        m=[1.0, 1.0, 1.0], m_exponents=[0, 1, 1],
    )


def interleave_demo():
    return bs.InterleavedSystem(
        phi_head=1.0, psi_head=1.0, m_head=1.0,
        phi_ratio=0.5, psi_ratio=2.0 ** -0.5, m_ratio=2.0 ** 0.5,
        transient_phi=1.0, transient_psi=1.0, transient_m=1.0,
        ratio_bound=0.5,
    )


# ------------------------------------------------------------- block systems


def test_block_generation_and_validation():
    sys = harmonic_demo()
    phi, psi, m = sys.block(4)
    assert np.allclose(phi.ravel(), [1.0, 1.0, -1.0], atol=1e-15, rtol=0.0)
    assert np.allclose(psi.ravel(), [1.0, 0.25, 0.25], atol=1e-15, rtol=0.0)
    assert np.allclose(m, [1.0, 0.25, 0.25], atol=1e-15, rtol=0.0)
    with pytest.raises(ValueError):
        sys.block(0)


def test_constant_template_blocks_do_not_change():
    sys = bs.BlockSystem.constant_template([[1.0, 0.0]], [[0.0, 1.0]], [2.0])
    a = sys.block(1)
    b = sys.block(97)
    for x, y in zip(a, b):
        assert np.array_equal(x, y)


def test_block_multiplier_identity_for_harmonic_demo():
    sys = harmonic_demo()
    for k in (1, 2, 10, 313):
        # 1*1*1 + (1/k)(1/k)... the reweighted terms cancel in pairs
        assert abs(bs.block_multiplier(sys, k)[0, 0] - 1.0) <= 1e-13


def test_weighted_block_operator_oracle():
    # the weighted output side (m phi) in block k has operator 1 + 2/k^2
    sys = harmonic_demo()
    templates = sys.side_templates("mphi", 5)
    s = templates.T @ np.conj(templates)
    assert s[0, 0] == pytest.approx(1.0 + 2.0 / 25.0, abs=1e-14)


def test_side_templates_reject_unknown_side():
    with pytest.raises(ValueError):
        harmonic_demo().side_templates("nope", 1)
    with pytest.raises(ValueError):
        bs.system_frame_bounds(harmonic_demo(), "nope", 5)


def test_assemble_blocks_is_entrywise_exact():
    rng = np.random.default_rng(13)
    base_phi = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
    base_psi = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
    weights = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    sys = bs.BlockSystem.harmonic_weight(
        base_phi, [0, 1, 2], base_psi, [1, 0, 0], weights, [0, 0, 1]
    )
    for count in (1, 7, 40):
        symbol, big_phi, big_psi = bs.assemble_blocks(sys, count)
        assert big_phi.dim == 2 * count
        assert len(symbol) == 3 * count
        big = mp.build(symbol, big_phi, big_psi).matrix
        expected = np.zeros_like(big)
        for k in range(1, count + 1):
            lo = 2 * (k - 1)
            expected[lo:lo + 2, lo:lo + 2] = bs.block_multiplier(sys, k)
        assert np.array_equal(big, expected)


def test_induced_duals_assemble_per_block():
    sys = harmonic_demo()
    for k in range(1, 51):
        symbol, phi_k, psi_k = bs.block_frames(sys, k)
        duals = mp.induced_duals(mp.build(symbol, phi_k, psi_k))
        assert is_dual(duals.psi_dagger, psi_k)
        assert is_dual(duals.phi_dagger, phi_k)


def test_system_frame_bounds_classifications():
    sys = harmonic_demo()
    weighted = bs.system_frame_bounds(sys, "mphi", horizon=200)
    assert weighted.classification == "frame"
    assert weighted.lambda_min == pytest.approx(1.0 + 2.0 / 200.0 ** 2, abs=1e-12)
    assert weighted.lambda_max == pytest.approx(3.0, abs=1e-12)

    constant_side = bs.system_frame_bounds(sys, "phi", horizon=50)
    assert constant_side.classification == "frame"
    assert constant_side.lambda_min == pytest.approx(3.0, abs=1e-12)


def test_negative_exponent_side_is_not_bessel():
    sys = bs.BlockSystem.harmonic_weight(
        phi=[[1.0]], phi_exponents=[-1], psi=[[1.0]], psi_exponents=[0],
        m=[1.0], m_exponents=[0],
    )
    assert bs.system_frame_bounds(sys, "phi", horizon=10).classification == "not_bessel"


def test_vanishing_limit_side_is_bessel_but_not_frame():
    sys = bs.BlockSystem.harmonic_weight(
        phi=[[1.0]], phi_exponents=[1], psi=[[1.0]], psi_exponents=[0],
        m=[1.0], m_exponents=[0],
    )
    assert bs.system_frame_bounds(sys, "phi", horizon=10).classification == "bessel_not_frame"


def test_generator_systems_need_constant_blocks_or_metadata():
    def varying(k):
        return np.array([[float(k)]]), np.array([[1.0]]), np.array([1.0])

    custom = bs.BlockSystem.from_generator(1, varying)
    with pytest.raises(MetadataMissing):
        bs.system_frame_bounds(custom, "phi", horizon=5)
    with pytest.raises(MetadataMissing):
        bs.symbol_profile(custom)

    def steady(k):
        return np.array([[1.0]]), np.array([[1.0]]), np.array([2.0])

    fine = bs.BlockSystem.from_generator(1, steady)
    assert bs.system_frame_bounds(fine, "phi", horizon=5).classification == "frame"
    profile = bs.symbol_profile(fine)
    assert profile.inf_modulus == pytest.approx(2.0)
    assert profile.sup_modulus == pytest.approx(2.0)


def test_symbol_profile_harmonic_demo():
    profile = bs.symbol_profile(harmonic_demo())
    assert profile.inf_modulus == 0.0
    assert profile.sup_modulus == pytest.approx(1.0)
    assert profile.all_nonzero
    assert profile.bounded
    assert not profile.semi_normalized


def test_symbol_prefix_order_block_system():
    prefix = harmonic_demo().symbol_prefix(7)
    expected = [1.0, 1.0, 1.0, 1.0, 0.5, 0.5, 1.0]
    assert np.allclose(prefix, expected, atol=1e-15, rtol=0.0)


# -------------------------------------------------------------- interleaved


def test_recurrent_products_are_geometric():
    sys = interleave_demo()
    # m_k phi_k conj(psi_k) = 2^{k/2} 2^{-k} 2^{-k/2} = 2^{-k}
    for k in range(8):
        assert sys.recurrent_product(k) == pytest.approx(0.5 ** k, abs=1e-14)
    assert sys.transient_product == pytest.approx(1.0)


def test_certify_ratio_accepts_the_true_bound():
    interleave_demo().certify_ratio()


def test_certify_ratio_rejects_wrong_bounds():
    bad = bs.InterleavedSystem(
        phi_head=1.0, psi_head=1.0, m_head=1.0,
        phi_ratio=0.5, psi_ratio=2.0 ** -0.5, m_ratio=2.0 ** 0.5,
        transient_phi=1.0, transient_psi=1.0, transient_m=1.0,
        ratio_bound=0.4,  # the true ratio is 0.5
    )
    with pytest.raises(RatioNotCertified):
        bad.certify_ratio()
    not_contracting = bs.InterleavedSystem(
        phi_head=1.0, psi_head=1.0, m_head=1.0,
        phi_ratio=1.0, psi_ratio=1.0, m_ratio=1.0,
        transient_phi=1.0, transient_psi=1.0, transient_m=1.0,
        ratio_bound=1.0,
    )
    with pytest.raises(RatioNotCertified):
        not_contracting.certify_ratio()


def test_interleaved_symbol_prefix_order():
    prefix = interleave_demo().symbol_prefix(7)
    expected = [1.0, 1.0, math.sqrt(2.0), 1.0, 2.0, 1.0, 2.0 * math.sqrt(2.0)]
    assert np.allclose(prefix, expected, atol=1e-14, rtol=0.0)


def test_interleaved_symbol_profile():
    profile = bs.symbol_profile(interleave_demo())
    assert profile.inf_modulus == pytest.approx(1.0)
    assert math.isinf(profile.sup_modulus)
    assert profile.all_nonzero
    assert not profile.bounded
    assert not profile.semi_normalized


def test_interleaved_apply_recurrent_direction():
    out, bound = bs.interleaved_apply(interleave_demo(), [1.0, 0.0, 0.0], 1e-12)
    assert bound <= 1e-12
    assert abs(out[0] - 2.0) <= 1e-11
    assert out[1] == 0.0 and out[2] == 0.0


def test_interleaved_apply_transient_is_exact():
    out, bound = bs.interleaved_apply(interleave_demo(), [0.0, 3.0, -1.0j], 1e-12)
    assert bound == 0.0
    assert np.array_equal(out, np.array([0.0, 3.0, -1.0j], dtype=np.complex128))


def test_interleaved_apply_bound_is_sound_under_refinement():
    sys = interleave_demo()
    coarse, bound = bs.interleaved_apply(sys, [1.0, 0.0], 1e-6)
    fine, _ = bs.interleaved_apply(sys, [1.0, 0.0], 1e-15)
    assert abs(coarse[0] - fine[0]) <= bound


def test_interleaved_side_bounds():
    sys = interleave_demo()
    mphi = bs.system_frame_bounds(sys, "mphi", horizon=200)
    assert mphi.classification == "frame"
    assert mphi.lambda_min == pytest.approx(1.0, abs=1e-12)
    assert mphi.lambda_max == pytest.approx(2.0, abs=1e-12)

    phi = bs.system_frame_bounds(sys, "phi", horizon=400)
    assert phi.classification == "frame"
    assert phi.lambda_max == pytest.approx(4.0 / 3.0, abs=1e-12)

    conj_weighted_input = bs.system_frame_bounds(sys, "mbar_psi", horizon=50)
    assert conj_weighted_input.classification == "not_bessel"


# ----------------------------------------------------------------- registry


def test_registry_contents():
    reg = bs.example_registry()
    assert sorted(reg) == ["ex4_1", "ex4_2", "ex5_3", "ex5_final"]
    assert reg["ex4_2"].annotations
    with pytest.raises(UnknownExample):
        bs.get_example("ex9_9")
    with pytest.raises(UnknownExample):
        bs.run_example("ex9_9")


def test_ex5_3_symbol_envelope():
    profile = bs.symbol_profile(bs.get_example("ex5_3").system)
    sqrt5 = math.sqrt(5.0)
    assert profile.inf_modulus == pytest.approx((5.0 - 2.0 * sqrt5) / 5.0, abs=1e-14)
    assert profile.sup_modulus == pytest.approx((5.0 + 2.0 * sqrt5) / 5.0, abs=1e-14)
    assert profile.semi_normalized


def test_run_example_verdicts():
    assert bs.run_example("ex4_1", horizon=60).verdict == "pass"
    assert bs.run_example("ex5_3", horizon=60).verdict == "pass"
    assert bs.run_example("ex5_final", horizon=60).verdict == "pass"
    flagged = bs.run_example("ex4_2", horizon=60)
    assert flagged.verdict == "flagged"
    departures = [c for c in flagged.checks if c.documented_departure]
    assert len(departures) == 1
    assert departures[0].ok
    # the computed recurrent total is 2, not the claimed 1
    assert departures[0].value == pytest.approx(2.0, abs=1e-9)


def test_run_example_checks_all_pass():
    for name in ("ex4_1", "ex4_2", "ex5_3", "ex5_final"):
        run = bs.run_example(name, horizon=40)
        assert all(c.ok for c in run.checks), [c.name for c in run.checks if not c.ok]


def test_example_run_as_dict_shape():
    run = bs.run_example("ex5_final", horizon=10)
    doc = run.as_dict()
    assert doc["name"] == "ex5_final"
    assert doc["verdict"] == "pass"
    assert all("name" in c and "ok" in c for c in doc["checks"])
