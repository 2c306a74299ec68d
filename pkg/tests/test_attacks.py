import math

import pytest

from attacks import (
    AttackReport, alice_ideal_vs_actual_attack, alice_pgm_attack, bob_helstrom_attack_on_protocol4,
    bob_superposition_attack, certify_corollary1, certify_theorem2, fidelity_complement_check,
)
from attacks import certify as certify_module
from attacks.report import CEILING, FLOOR
from otproto.instances import bell_pair_instance, flipped_guess, no_encoding_instance, rotation_instance
from qhe import SchemeFactory
from quantum.exceptions import CertificationError, PreconditionError

THETAS = [k * math.pi / 9 for k in range(1, 9)]
SCHEMES = ['trivial', 'correlated-pad', 'independent-qotp']


class TestAttackReport:
    def test_floor_slack(self):
        report = AttackReport('a', 0.75, 0.5, FLOOR)
        assert report.slack == pytest.approx(0.25)
        assert report.holds

    def test_ceiling_slack(self):
        report = AttackReport('a', 0.75, 0.5, CEILING)
        assert report.slack == pytest.approx(-0.25)
        assert not report.holds

    def test_rejects_non_probability(self):
        with pytest.raises(PreconditionError):
            AttackReport('a', 1.5, 0.5)

    def test_rejects_unknown_kind(self):
        with pytest.raises(PreconditionError):
            AttackReport('a', 0.5, 0.5, 'middle')

    def test_to_dict(self):
        data = AttackReport('a', 0.5, 0.25, witness={'probe': 'x'}).to_dict()
        assert {'attack', 'success', 'bound', 'slack', 'witness'} <= set(data)
        assert data['witness'] == {'probe': 'x'}


class TestAlicePgm:
    def test_bell_pair_is_perfect(self):
        report = alice_pgm_attack(bell_pair_instance())
        assert report.success == pytest.approx(1.0, abs=1e-9)
        assert report.bound == pytest.approx(1.0, abs=1e-9)
        assert report.witness['f'] == pytest.approx(0.0, abs=1e-9)

    @pytest.mark.parametrize('theta', THETAS)
    def test_rotation_closed_form(self, theta):
        report = alice_pgm_attack(rotation_instance(theta))
        expected = 0.25 * (1.0 + abs(math.sin(theta))) ** 2
        assert report.success == pytest.approx(expected, abs=1e-8)
        assert report.holds
        assert report.success >= report.witness['pgm_fidelity_floor'] - 1e-9

    def test_no_encoding_guesses(self):
        report = alice_pgm_attack(no_encoding_instance())
        assert report.success == pytest.approx(0.25, abs=1e-9)
        assert report.bound == pytest.approx(0.0, abs=1e-9)


class TestBobSuperposition:
    def test_bell_pair(self):
        report = bob_superposition_attack(bell_pair_instance())
        assert report.success == pytest.approx(0.5, abs=1e-9)
        assert report.witness['pair'] == [[0, 0], [0, 1]]
        assert not report.witness['relabeled']

    @pytest.mark.parametrize('theta', THETAS)
    def test_rotation_floor(self, theta):
        report = bob_superposition_attack(rotation_instance(theta))
        assert report.holds
        assert report.success >= 0.5 - 1e-9
        assert report.witness['uhlmann_overlap'] == pytest.approx(abs(math.cos(theta)), abs=1e-8)
        assert report.witness['trace_distance'] >= report.witness['trace_floor'] - 1e-6
        assert report.witness['cauchy_schwarz_slack'] >= -1e-9

    def test_first_bit_pair_is_relabeled(self):
        report = bob_superposition_attack(rotation_instance(math.pi / 4), pair=((0, 0), (1, 0)))
        assert report.witness['relabeled']
        assert report.holds

    def test_second_bit_pair_is_not_relabeled(self):
        report = bob_superposition_attack(rotation_instance(math.pi / 4), pair=((1, 0), (1, 1)))
        assert not report.witness['relabeled']
        assert report.holds

    @pytest.mark.parametrize('pair', [((0, 0), (0, 0)), ((0, 0), (1, 1)), ((0, 1), (1, 0))])
    def test_pair_must_differ_in_one_bit(self, pair):
        with pytest.raises(PreconditionError):
            bob_superposition_attack(bell_pair_instance(), pair=pair)

    def test_pair_must_be_bits(self):
        with pytest.raises(PreconditionError):
            bob_superposition_attack(bell_pair_instance(), pair=((0, 2), (0, 1)))

    def test_no_encoding_never_below_guessing(self):
        report = bob_superposition_attack(no_encoding_instance())
        assert report.success >= 0.5 - 1e-9


class TestFidelityComplement:
    def test_bell_pair(self):
        check = fidelity_complement_check(bell_pair_instance())
        assert check['applicable']
        assert check['max_fidelity'] == pytest.approx(0.0, abs=1e-9)
        assert check['holds']

    def test_rotation_near_half_pi(self):
        theta = 4 * math.pi / 9
        check = fidelity_complement_check(rotation_instance(theta))
        assert check['applicable']
        assert check['max_fidelity'] == pytest.approx(math.cos(theta) ** 2, abs=1e-8)
        assert check['holds']

    def test_vacuous_when_delta_large(self):
        check = fidelity_complement_check(flipped_guess(bell_pair_instance()))
        assert not check['applicable']
        assert check['holds']


class TestTheorem2:
    def test_bell_pair_is_tight(self):
        report = certify_theorem2(bell_pair_instance())
        assert report['p_a'] == pytest.approx(1.0, abs=1e-9)
        assert report['p_b'] == pytest.approx(0.5, abs=1e-9)
        assert report['delta'] == pytest.approx(0.0, abs=1e-9)
        assert report['lhs'] == pytest.approx(2.0, abs=1e-6)

    @pytest.mark.parametrize('theta', THETAS)
    def test_rotation_grid(self, theta):
        report = certify_theorem2(rotation_instance(theta))
        assert report['holds']
        assert report['slack'] >= -1e-6

    @pytest.mark.parametrize('inst', [no_encoding_instance(), flipped_guess(bell_pair_instance())],
                             ids=['no-encoding', 'flipped'])
    def test_degenerate_instances(self, inst):
        assert certify_theorem2(inst)['holds']

    def test_violation_raises(self, monkeypatch):
        def weak(inst):
            return AttackReport('alice-pgm', 0.0, 1.0, FLOOR)

        monkeypatch.setattr(certify_module, 'alice_pgm_attack', weak)
        with pytest.raises(CertificationError):
            certify_theorem2(bell_pair_instance())


class TestProtocolFourAttacks:
    @pytest.mark.parametrize('name,expected', [
        ('trivial', 1.0), ('correlated-pad', 1.0), ('independent-qotp', 0.5),
    ])
    def test_bob_helstrom(self, name, expected):
        report = bob_helstrom_attack_on_protocol4(SchemeFactory.create(name))
        assert report.success == pytest.approx(expected, abs=1e-9)
        assert report.holds

    def test_bob_helstrom_reaches_ceiling(self):
        report = bob_helstrom_attack_on_protocol4(SchemeFactory.create('trivial'), eps_d=1.0)
        assert report.slack == pytest.approx(0.0, abs=1e-9)

    @pytest.mark.parametrize('name', SCHEMES)
    def test_alice_ideal_vs_actual(self, name):
        report = alice_ideal_vs_actual_attack(SchemeFactory.create(name), eps_c_ub=0.0)
        assert report.success == pytest.approx(0.5, abs=1e-9)
        assert report.holds


class TestCorollary1:
    @pytest.mark.parametrize('name', SCHEMES)
    def test_consistency_chain(self, name):
        report = certify_corollary1(SchemeFactory.create(name), seed=7, n_random=4)
        assert all(check['holds'] for check in report['checks'].values())
        assert report['holds']
        assert report['bound_lhs'] >= 0.5 - 1e-9

    def test_monte_carlo_is_tagged(self):
        report = certify_corollary1(SchemeFactory.create('trivial'), seed=7, n_random=4, trials=200)
        assert report['monte_carlo']['kind'] == 'monte-carlo'
        assert report['monte_carlo']['success_rate'] == 1.0

    def test_exact_part_ignores_seed(self):
        a = certify_corollary1(SchemeFactory.create('correlated-pad'), seed=1, n_random=0)
        b = certify_corollary1(SchemeFactory.create('correlated-pad'), seed=2, n_random=0)
        assert a == b
