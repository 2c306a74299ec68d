"""
Standard OT from a QHE scheme for the SOT family.

Alice (index i) draws a key, sends Enc_k(|i,0><i,0|); Bob (bits x0, x1)
evaluates F-hat_(x0,x1) and returns the result; Alice decrypts and measures
{M_x}, the Helstrom measurement between the two possible ideal outputs
(I/2) (x) |0><0| and (I/2) (x) |1><1|.
"""

import itertools
import logging

import numpy as np

import config
from otproto.base import STANDARD, OtOutcome, StandardOt, Verdict, check_bit
from otproto.transcript import Transcript
from qhe.base import QheScheme
from quantum.qstate import DensityState, helstrom, measure

log = logging.getLogger(__name__)

INPUTS = list(itertools.product((0, 1), repeat=3))


def decision_povm(s: QheScheme, i):
    """Helstrom POVM {M_0, M_1} between the ideal outputs for x_i = 0 and x_i = 1."""
    basis = DensityState.basis((i, 0))
    povm, _ = helstrom(s.family[(0, 0)](basis.mat), s.family[(1, 1)](basis.mat))
    return povm


def ot_from_qhe(s: QheScheme, i, x0, x1, rng, transcript: Transcript = None) -> OtOutcome:
    """One sampled run: fresh key, encrypt |i,0>, evaluate, decrypt, measure."""
    i = check_bit('i', i)
    key = (check_bit('x0', x0), check_bit('x1', x1))
    k = s.key_gen(rng)

    sigma = s.encrypt(k, DensityState.basis((i, 0)))
    if transcript is not None:
        transcript.record(1, 'alice', sigma.shape.dims, sigma.mat)
    theta = s.evaluate(key, sigma)
    if transcript is not None:
        transcript.record(1, 'bob', theta.shape.dims, theta.mat)
    rho = s.decrypt(k, theta)

    probs = measure(decision_povm(s, i), rho)
    x_hat = 1 if rng.random() < probs[1] else 0
    return OtOutcome(STANDARD, x_hat, Verdict.ACCEPT)


def honest_success(s: QheScheme, i, x0, x1) -> float:
    """Exact Pr[x_hat = x_i] averaged over all keys."""
    i = check_bit('i', i)
    key = (check_bit('x0', x0), check_bit('x1', x1))
    m = decision_povm(s, i)[key[i]]
    basis = DensityState.basis((i, 0))
    total = sum(np.trace(m @ s.evaluate_protocol(k, key, basis).mat).real for k in s.keys())
    return float(total) / len(s.keys())


def protocol4_completeness(s: QheScheme):
    """
    Exact honest success for every (i, x0, x1).

    returns dict with delta (worst error), mean_success and the per-input table
    """
    table = {inp: honest_success(s, *inp) for inp in INPUTS}
    delta = max(1.0 - p for p in table.values())
    return {
        'scheme': s.name,
        'delta': max(0.0, delta),
        'mean_success': sum(table.values()) / len(table),
        'success': {f"i={i},x=({x0},{x1})": p for (i, x0, x1), p in table.items()},
    }


def protocol4_monte_carlo(s: QheScheme, trials=None, rng=None):
    """Sampled honest runs with uniformly random (i, x0, x1); tagged monte-carlo."""
    trials = config.DEFAULT_TRIALS if trials is None else trials
    if rng is None:
        rng = np.random.default_rng(config.get_default_seed())
    correct = 0
    for _ in range(trials):
        i, x0, x1 = (int(b) for b in rng.integers(0, 2, size=3))
        outcome = ot_from_qhe(s, i, x0, x1, rng)
        correct += int(outcome.alice == (x0, x1)[i])
    rate = correct / trials
    log.info(f"{s.name}: monte-carlo honest success {rate:.6f} over {trials} trials")
    return {'kind': 'monte-carlo', 'scheme': s.name, 'trials': trials, 'success_rate': rate}


class QheOtRunner(StandardOt):
    """Standard OT runner backed by a QHE scheme."""

    name = 'qhe'

    def __init__(self, scheme: QheScheme):
        self.scheme = scheme

    def run(self, i, x0, x1, rng, transcript: Transcript = None):
        return ot_from_qhe(self.scheme, i, x0, x1, rng, transcript)
