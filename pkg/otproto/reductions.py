"""
Classical reductions between standard and semi-random OT.

- srot_to_standard: standard OT from one semi-random OT call plus two masked bits
- standard_to_srot: semi-random OT from one standard OT call with a random index

Both wrappers are bijective relabelings, so a sub-protocol adversary's guess
maps to a wrapper adversary's guess with the same success probability.
"""

import logging

from otproto.base import SEMI_RANDOM, STANDARD, OtOutcome, SemiRandomOt, StandardOt, Verdict, check_bit
from otproto.transcript import Transcript
from quantum.exceptions import PreconditionError

log = logging.getLogger(__name__)


def srot_to_standard(ot: SemiRandomOt, i, x0, x1, rng, y=None, transcript: Transcript = None) -> OtOutcome:
    """
    Run standard OT on top of a semi-random OT.

    Bob feeds random bits (y0, y1) to the sub-protocol and Alice gets (j, y_hat).
    Alice announces r = i xor j; Bob replies s0 = x_r xor y0, s1 = x_(1-r) xor y1;
    Alice outputs s_j xor y_hat. ``y`` pins Bob's mask bits for exhaustive checks.
    """
    if ot.flavor != SEMI_RANDOM:
        raise PreconditionError(f"runner {ot.name!r} is not a semi-random OT")
    i = check_bit('i', i)
    x = (check_bit('x0', x0), check_bit('x1', x1))
    if y is None:
        y = (int(rng.integers(2)), int(rng.integers(2)))
    y = (check_bit('y0', y[0]), check_bit('y1', y[1]))

    sub = ot.run(y[0], y[1], rng)
    if sub.aborted:
        # either side's abort is declared to the other; both output Abort
        log.debug("sub-protocol aborted, declaring Abort")
        return OtOutcome.abort(STANDARD)

    j, y_hat = sub.alice
    r = i ^ j
    s = (x[r] ^ y[0], x[1 - r] ^ y[1])
    if transcript is not None:
        transcript.record(1, 'alice', [], [r])
        transcript.record(2, 'bob', [], list(s))

    bob_guess = None if sub.bob_guess is None else r ^ sub.bob_guess
    alice_guess = None
    if sub.alice_guess is not None:
        # guessing (y0, y1) unmasks (x_r, x_(1-r))
        g = (s[0] ^ sub.alice_guess[0], s[1] ^ sub.alice_guess[1])
        alice_guess = (g[0], g[1]) if r == 0 else (g[1], g[0])
    return OtOutcome(STANDARD, s[j] ^ y_hat, Verdict.ACCEPT, bob_guess, alice_guess)


def standard_to_srot(ot: StandardOt, x0, x1, rng, i=None) -> OtOutcome:
    """Alice draws i uniformly and runs standard OT with it; Abort propagates to both."""
    if ot.flavor != STANDARD:
        raise PreconditionError(f"runner {ot.name!r} is not a standard OT")
    i = int(rng.integers(2)) if i is None else check_bit('i', i)
    sub = ot.run(i, x0, x1, rng)
    if sub.aborted:
        return OtOutcome.abort(SEMI_RANDOM)
    return OtOutcome(SEMI_RANDOM, (i, sub.alice), Verdict.ACCEPT, sub.bob_guess, sub.alice_guess)
