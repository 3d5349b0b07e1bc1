"""Smoke test for the Python bindings. Run with pytest or as a script."""

import json

import mpmath
import pytest

import qharmonic as qh


def qexp_sq(x, q):
    # e_{q^2}(-x^2) = 1 / (-(1-q^2) x^2; q^2)_inf, evaluated independently
    q2 = mpmath.mpf(q) ** 2
    return 1 / mpmath.qp(-(1 - q2) * mpmath.mpf(x) ** 2, q2)


def test_context_and_errors():
    ctx = qh.Context(0.5, 0.0)
    assert ctx.q == 0.5 and ctx.is_lattice_compatible()
    assert abs(ctx.c_alpha - 1.0) < 1e-14
    with pytest.raises(qh.InvalidParameterError):
        qh.Context(1.2, 0.0)
    with pytest.raises(qh.QHarmonicError):
        qh.Context(0.5, -0.7)


def test_special_values_against_mpmath():
    ctx = qh.Context(0.5, 0.0)
    for x in [0.5, 1.0, 2.0, 8.0]:
        assert abs(qh.exp_q(x, ctx) - float(qexp_sq(x, 0.5))) < 1e-13 * float(qexp_sq(x, 0.5))
    assert qh.j_alpha(0.0, ctx) == 1.0
    assert abs(qh.q_gamma(2.0, ctx) - 1.0) < 1e-14


def test_fourier_round_trip():
    ctx = qh.Context(0.5, 0.5)
    f = qh.sample_exp_q(ctx)
    back = qh.inverse_fourier(qh.fourier(f, ctx), ctx)
    assert back.rel_l2_error(f, ctx) < 1e-7
    assert qh.Function.from_csv(f.to_csv(ctx)).values == f.values


def test_wavelet_round_trip():
    ctx = qh.Context(0.5, 0.0)
    f = qh.sample_exp_q(ctx, n_min=-8, n_max=20)
    w = qh.Wavelet.gaussian(ctx)
    plane = qh.wavelet_transform(f, w, ctx)
    back = qh.wavelet_reconstruct(plane, w, ctx, n_min=-8, n_max=20)
    assert back.rel_l2_error(f, ctx) < 1e-4
    assert qh.kernel_check(plane, w, ctx) < 1e-4
    zero = qh.Function(-10, [0j] * 41, 0j)
    with pytest.raises(qh.NotAdmissibleError):
        qh.Wavelet(zero, ctx)


def test_fractional_inverse_warns_on_uncertified_input():
    ctx = qh.Context(0.5, 0.5)
    g = qh.gaussian(ctx)
    _, warning = qh.riemann_liouville_inverse(g, ctx)
    assert warning is not None


def test_verify_core():
    report = json.loads(qh.verify(qh.Context(0.5, 0.0), "core"))
    assert report["checks"] and all(c["pass"] for c in report["checks"])


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
