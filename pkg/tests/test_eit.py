import pytest
from hypothesis import given
from hypothesis import strategies as st

from kerrscissors.eit import EitParams, kerr_estimate

pos = st.floats(1e3, 1e10)


@given(pos, pos, pos, pos, st.floats(1, 1e6))
def test_scaling_laws(g13, g24, rabi, detuning, n):
    base = kerr_estimate(EitParams(g13, g24, rabi, detuning, n)).chi
    assert kerr_estimate(EitParams(g13, g24, rabi, detuning, 2 * n)).chi == pytest.approx(2 * base, rel=1e-12)
    assert kerr_estimate(EitParams(g13, g24, 2 * rabi, detuning, n)).chi == pytest.approx(base / 4, rel=1e-12)


def test_round_trip_target():
    # 3 |g13|^2 |g24|^2 n / (rabi^2 detuning) = 2e8 with g = 1e8, rabi = 2e8 -> detuning = 3.75e7
    est = kerr_estimate(EitParams(1e8, 1e8j, 2e8, 3.75e7, 1))
    assert est.chi == pytest.approx(1e8, rel=1e-12)
    assert 3 * (1e8) ** 4 / ((2e8) ** 2 * 3.75e7) == pytest.approx(2 * est.chi, rel=1e-12)
    assert est.adiabatic_ok


def test_validity_flag():
    assert not kerr_estimate(EitParams(1e8, 1e8, 1e8, 1e7, 2)).adiabatic_ok
    assert kerr_estimate(EitParams(1e8, 1e8, 1e9, 1e7, 2)).adiabatic_ok


@pytest.mark.parametrize("kwargs", [dict(rabi=0.0), dict(detuning=0.0), dict(n_atom=0.5)])
def test_domain_errors(kwargs):
    base = dict(g13=1.0, g24=1.0, rabi=1.0, detuning=1.0, n_atom=1)
    base.update(kwargs)
    with pytest.raises(ValueError):
        EitParams(**base)
