"""
Classical OT runners: ideal, noisy, aborting and scripted adversaries.

The scripted runners stand in for a cheating party whose guess succeeds with a
fixed probability, so the reductions' guess bookkeeping can be tested exactly.
"""

import logging

from otproto.base import SEMI_RANDOM, STANDARD, OtOutcome, SemiRandomOt, StandardOt, Verdict, check_bit
from quantum.exceptions import PreconditionError

log = logging.getLogger(__name__)


def _check_prob(name, p):
    if p is None:
        return None
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise PreconditionError(f"{name} must be in [0, 1], got {p}")
    return p


def _guess(truth, p, rng):
    """truth with probability p, its complement otherwise"""
    return truth if rng.random() < p else 1 - truth


def _pair_guess(pair, p, rng):
    return pair if rng.random() < p else (1 - pair[0], pair[1])


class IdealSemiRandomOt(SemiRandomOt):
    name = 'ideal-semi-random'

    def run(self, x0, x1, rng):
        x = (check_bit('x0', x0), check_bit('x1', x1))
        i = int(rng.integers(2))
        return OtOutcome(SEMI_RANDOM, (i, x[i]), Verdict.ACCEPT)


class NoisySemiRandomOt(SemiRandomOt):
    """Ideal run whose x_hat is flipped with probability delta."""

    name = 'noisy-semi-random'

    def __init__(self, delta=0.1):
        self.delta = _check_prob('delta', delta)

    def run(self, x0, x1, rng):
        x = (check_bit('x0', x0), check_bit('x1', x1))
        i = int(rng.integers(2))
        x_hat = x[i] ^ int(rng.random() < self.delta)
        return OtOutcome(SEMI_RANDOM, (i, x_hat), Verdict.ACCEPT)


class AbortingSemiRandomOt(SemiRandomOt):
    name = 'aborting-semi-random'

    def run(self, x0, x1, rng):
        return OtOutcome.abort(SEMI_RANDOM)


class ScriptedSemiRandomOt(SemiRandomOt):
    """
    Semi-random OT with scripted outputs and cheating guesses.

    args:
        j, x_hat: force Alice's output; None samples j and returns x_j
        bob_guess_prob: cheating Bob guesses j correctly with this probability
        alice_guess_prob: cheating Alice guesses (x0, x1) correctly with this probability
    """

    name = 'scripted-semi-random'

    def __init__(self, j=None, x_hat=None, bob_guess_prob=None, alice_guess_prob=None):
        self.j = None if j is None else check_bit('j', j)
        self.x_hat = None if x_hat is None else check_bit('x_hat', x_hat)
        self.bob_guess_prob = _check_prob('bob_guess_prob', bob_guess_prob)
        self.alice_guess_prob = _check_prob('alice_guess_prob', alice_guess_prob)

    def run(self, x0, x1, rng):
        x = (check_bit('x0', x0), check_bit('x1', x1))
        j = int(rng.integers(2)) if self.j is None else self.j
        x_hat = x[j] if self.x_hat is None else self.x_hat
        bob_guess = None if self.bob_guess_prob is None else _guess(j, self.bob_guess_prob, rng)
        alice_guess = None if self.alice_guess_prob is None else _pair_guess(x, self.alice_guess_prob, rng)
        return OtOutcome(SEMI_RANDOM, (j, x_hat), Verdict.ACCEPT, bob_guess, alice_guess)


class IdealStandardOt(StandardOt):
    name = 'ideal-standard'

    def run(self, i, x0, x1, rng):
        x = (check_bit('x0', x0), check_bit('x1', x1))
        return OtOutcome(STANDARD, x[check_bit('i', i)], Verdict.ACCEPT)


class NoisyStandardOt(StandardOt):
    """Ideal run whose output is flipped with probability delta."""

    name = 'noisy-standard'

    def __init__(self, delta=0.1):
        self.delta = _check_prob('delta', delta)

    def run(self, i, x0, x1, rng):
        x = (check_bit('x0', x0), check_bit('x1', x1))
        return OtOutcome(STANDARD, x[check_bit('i', i)] ^ int(rng.random() < self.delta), Verdict.ACCEPT)


class AbortingStandardOt(StandardOt):
    name = 'aborting-standard'

    def run(self, i, x0, x1, rng):
        return OtOutcome.abort(STANDARD)


class ScriptedStandardOt(StandardOt):
    """Ideal standard OT with cheating-party guesses of i and (x0, x1)."""

    name = 'scripted-standard'

    def __init__(self, bob_guess_prob=None, alice_guess_prob=None):
        self.bob_guess_prob = _check_prob('bob_guess_prob', bob_guess_prob)
        self.alice_guess_prob = _check_prob('alice_guess_prob', alice_guess_prob)

    def run(self, i, x0, x1, rng):
        x = (check_bit('x0', x0), check_bit('x1', x1))
        i = check_bit('i', i)
        bob_guess = None if self.bob_guess_prob is None else _guess(i, self.bob_guess_prob, rng)
        alice_guess = None if self.alice_guess_prob is None else _pair_guess(x, self.alice_guess_prob, rng)
        return OtOutcome(STANDARD, x[i], Verdict.ACCEPT, bob_guess, alice_guess)
