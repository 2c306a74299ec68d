import itertools

import numpy as np
import pytest

from qhe import SOT_KEYS, SchemeFactory
from qhe.metrics import correctness_eps, data_privacy_eps, metrics
from qhe.privacy import (
    chosen_basis_purification, circuit_privacy_lb, circuit_privacy_lb_search, circuit_privacy_ub,
    circuit_privacy_ub_certified, cor2_witness, hypothesis_testing_error, hypothesis_testing_simulator,
    identity_simulator_ub, p_max_search, uniform_witness, verify_chosen_basis, verify_correct_chance,
)
from qhe.schemes import CorrelatedPadScheme, IndependentQotpScheme, TrivialScheme
from quantum.channelzoo import identity_channel
from quantum.exceptions import CertificationError, PreconditionError, UnknownNameError
from quantum.matcore import RegisterShape
from quantum.qstate import DensityState, Povm, PureState, apply_channel, random_pure, trace_distance

SCHEMES = ['trivial', 'correlated-pad', 'independent-qotp']
TOL = 1e-9


@pytest.fixture(params=SCHEMES)
def scheme(request):
    return SchemeFactory.create(request.param)


class TestFactory:
    def test_supported(self):
        assert SchemeFactory.get_supported_schemes() == SCHEMES

    @pytest.mark.parametrize('name,cls', [
        ('trivial', TrivialScheme),
        ('correlated-pad', CorrelatedPadScheme),
        ('Independent-QOTP', IndependentQotpScheme),
    ])
    def test_create(self, name, cls):
        assert isinstance(SchemeFactory.create(name), cls)

    @pytest.mark.parametrize('name', ['', None, 'qotp', 'bb84'])
    def test_unknown(self, name):
        with pytest.raises(UnknownNameError):
            SchemeFactory.create(name)


class TestSchemes:
    def test_key_space(self):
        assert [len(SchemeFactory.create(n).keys()) for n in SCHEMES] == [1, 8, 16]

    def test_key_gen_is_seeded(self, make_rng):
        s = IndependentQotpScheme()
        assert s.key_gen(make_rng()) == s.key_gen(make_rng())
        assert len(s.key_gen(make_rng())) == 4

    def test_bad_key(self):
        s = CorrelatedPadScheme()
        with pytest.raises(PreconditionError):
            s.encrypt((0, 1), DensityState.basis((0, 0)))
        with pytest.raises(PreconditionError):
            s.encrypt((0, 2, 0), DensityState.basis((0, 0)))

    def test_qotp_averaged_ciphertext_is_maximally_mixed(self, rng):
        s = IndependentQotpScheme()
        avg = s.averaged_ciphertext(random_pure((2, 2), rng).density())
        assert np.allclose(avg.mat, np.eye(4) / 4, atol=1e-12)

    def test_correlated_pad_keeps_parity(self):
        s = CorrelatedPadScheme()
        avg = s.averaged_ciphertext(DensityState.basis((0, 0)))
        expected = (DensityState.basis((0, 0)).mat + DensityState.basis((1, 1)).mat) / 2
        assert np.allclose(avg.mat, expected, atol=1e-12)

    @pytest.mark.parametrize('key', list(itertools.product((0, 1), repeat=3)))
    def test_correlated_pad_is_correct(self, key):
        s = CorrelatedPadScheme()
        for fkey, bits in itertools.product(SOT_KEYS, itertools.product((0, 1), repeat=2)):
            rho = DensityState.basis(bits)
            assert trace_distance(s.evaluate_protocol(key, fkey, rho), s.ideal(fkey, rho)) <= 1e-12

    def test_describe(self, scheme):
        info = scheme.describe()
        assert info['name'] == scheme.name
        assert len(info['family']) == 4


class TestCorrectnessAndDataPrivacy:
    def test_trivial(self):
        s = TrivialScheme()
        assert correctness_eps(s, n_random=4).value <= TOL
        eps_d = data_privacy_eps(s, n_random=4)
        assert abs(eps_d.value - 1) <= TOL
        assert eps_d.witness['pair'] == ['|0,0>', '|1,0>']

    def test_correlated_pad(self):
        s = CorrelatedPadScheme()
        assert correctness_eps(s, n_random=4).value <= TOL
        eps_d = data_privacy_eps(s, n_random=4)
        assert abs(eps_d.value - 1) <= TOL
        assert eps_d.witness['pair'] == ['|0,0>', '|1,0>']

    def test_independent_qotp(self):
        s = IndependentQotpScheme()
        eps = correctness_eps(s, n_random=4)
        assert abs(eps.value - 1) <= TOL
        assert eps.witness == {'key': [1, 0, 0, 0], 'channel': [0, 1], 'input': 'basis|0,0>'}
        assert data_privacy_eps(s, n_random=4).value <= TOL

    def test_data_privacy_is_seed_stable(self):
        s = CorrelatedPadScheme()
        assert data_privacy_eps(s, seed=7, n_random=6) == data_privacy_eps(s, seed=7, n_random=6)


class TestCircuitPrivacyUpperBound:
    def test_cor2_witness_is_half(self, scheme):
        psi, povm = cor2_witness()
        assert abs(circuit_privacy_ub(scheme, psi, povm) - 0.5) <= TOL

    def test_uniform_povm(self, scheme):
        psi, povm = uniform_witness()
        assert abs(circuit_privacy_ub(scheme, psi, povm) - 0.75) <= TOL

    def test_singleton_family(self):
        family = {'id': identity_channel(RegisterShape((2, 2)))}
        psi = PureState.basis((0, 0, 0, 0), (2, 2, 2, 2))
        err = hypothesis_testing_error(family, psi, Povm({'id': np.eye(16)}))
        assert err.value <= TOL

    def test_key_mismatch(self, scheme):
        psi, _ = cor2_witness()
        povm = Povm({(0, 0): np.eye(16) / 2, (1, 1): np.eye(16) / 2})
        with pytest.raises(PreconditionError):
            circuit_privacy_ub(scheme, psi, povm)

    def test_p_max_search(self, scheme):
        best = p_max_search(scheme)
        assert abs(best.value - 0.5) <= TOL
        assert best.witness['simulator'] == 'hypothesis-testing'

    def test_identity_simulator(self, scheme):
        assert identity_simulator_ub(scheme).value <= TOL

    def test_certified_takes_minimum(self, scheme):
        ub = circuit_privacy_ub_certified(scheme)
        assert ub.value <= TOL
        assert ub.witness['simulator'] == 'identity'

    def test_simulator_cost_bounded_by_error(self, make_rng):
        s = CorrelatedPadScheme()
        psi_prime, povm = cor2_witness()
        psi = random_pure((2, 2, 2), make_rng(3))
        sim = hypothesis_testing_simulator(s, psi, povm, RegisterShape((2, 2, 2, 2)))
        assert sim.is_trace_preserving()
        err = hypothesis_testing_error(s.family, psi_prime, povm)
        for fkey in SOT_KEYS:
            target = apply_channel(s.eval_channel(fkey), psi.density(), [0, 1])
            produced = sim(s.ideal(fkey, psi_prime.density()).mat)
            assert trace_distance(target, produced) <= err.witness['errors'][str(fkey)] + TOL


class TestCircuitPrivacyLowerBound:
    def test_bell_probe(self):
        s = CorrelatedPadScheme()
        bell = np.zeros(8)
        bell[[0, 5]] = 1 / np.sqrt(2)
        lb = circuit_privacy_lb(s, PureState(bell, (2, 2, 2)))
        assert 0 <= lb <= circuit_privacy_ub_certified(s).value + TOL

    def test_search(self, scheme):
        lb = circuit_privacy_lb_search(scheme)
        assert 0 <= lb.value <= 0.75
        assert lb.value <= circuit_privacy_ub_certified(scheme).value + TOL
        assert lb.witness['probe'] is not None


class TestClaims:
    def test_chosen_basis(self, scheme, make_rng):
        for n in range(5):
            report = verify_chosen_basis(scheme, random_pure((2, 2, 3), make_rng(n)))
            assert report['holds'], report

    def test_chosen_basis_with_zero_weight_branch(self, scheme):
        psi = PureState.basis((0, 1, 0, 0), (2, 2, 2, 2))
        psi2, channel = chosen_basis_purification(psi)
        assert channel.is_trace_preserving()
        assert abs(psi2.vec[1 * 4 + 1]) == pytest.approx(1.0)
        assert verify_chosen_basis(scheme, psi)['holds']

    def test_correct_chance(self, scheme):
        report = verify_correct_chance(scheme, seed=11)
        assert report['holds']
        assert report['max_success'] <= 0.5 + TOL
        assert report['duality_deviation'] <= TOL


class TestMetrics:
    @pytest.mark.parametrize('name,expected', [
        ('trivial', (0, 1, 0, 0)),
        ('correlated-pad', (0, 1, 0, 0)),
        ('independent-qotp', (1, 0, 0, 0)),
    ])
    def test_values(self, name, expected):
        m = metrics(SchemeFactory.create(name), n_random=4)
        got = (m.eps, m.eps_d, m.eps_c_lb, m.eps_c_ub)
        assert got == pytest.approx(expected, abs=TOL)
        assert m.holds

    def test_to_dict(self):
        data = metrics(TrivialScheme(), n_random=2).to_dict()
        assert set(data) >= {'scheme', 'eps', 'eps_d', 'eps_c_lb', 'eps_c_ub', 'bound_lhs', 'holds', 'provenance'}
        assert data['provenance']['eps_d'] == {'pair': ['|0,0>', '|1,0>']}

    def test_inverted_bounds_raise(self, monkeypatch):
        from qhe import metrics as metrics_module
        from qhe.base import CertifiedValue

        monkeypatch.setattr(metrics_module, 'circuit_privacy_lb_search', lambda s: CertifiedValue(0.4, {}))
        with pytest.raises(CertificationError):
            metrics_module.metrics(TrivialScheme(), n_random=1)
