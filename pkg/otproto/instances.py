"""
Shipped Protocol-1 instances.

Alice prepares two Bell pairs |Phi+>_(A1 R1) |Phi+>_(A2 R2) and sends A1 A2.
Bob encodes x_b on message qubit b with a phase, one round, no ancilla.
Honest Alice picks pair i uniformly and measures its X (x) X parity: Phi+ reads 0,
Phi- reads 1.

- bell-pair: Bob applies Z^x0 (x) Z^x1; f = 0, delta = 0
- rotation(theta): Bob applies exp(-i theta x_b Z); f = |cos theta|, delta = cos^2 theta
- no-encoding: rotation(0); every sigma coincides
"""

import dataclasses
import itertools
import logging
import math

import numpy as np
from scipy.linalg import expm

from otproto.protocol_one import ProtocolOneInstance
from qhe.base import SOT_KEYS
from quantum import matcore
from quantum.channelzoo import I2, X, Z
from quantum.exceptions import PreconditionError, UnknownNameError
from quantum.qstate import Povm, PureState

log = logging.getLogger(__name__)

# register order inside Alice's state: (A1, A2, R1, R2)
_ALICE_DIMS = (2, 2, 2, 2)
_PAIRS = ([0, 2], [1, 3])


def _two_bell_pairs():
    vec = np.zeros(16, dtype=np.complex128)
    for a, b in itertools.product((0, 1), repeat=2):
        vec[np.ravel_multi_index((a, b, a, b), _ALICE_DIMS)] = 0.5
    return PureState(vec, _ALICE_DIMS)


def parity_povm():
    """N_(i, x_hat) = 1/2 Pi^(XX = (-1)^x_hat) on pair i, identity on the other pair."""
    xx = np.kron(X, X)
    elements = {}
    for i, regs in enumerate(_PAIRS):
        for x_hat in (0, 1):
            proj = (np.eye(4) + (-1) ** x_hat * xx) / 2
            elements[(i, x_hat)] = 0.5 * matcore.embed_operator(proj, matcore.RegisterShape(_ALICE_DIMS), regs)
    return Povm(elements)


def _phase_instance(name, gate_for_bit, params):
    bob = {}
    for x0, x1 in SOT_KEYS:
        # R_B is a single trivial register
        bob[(x0, x1)] = (np.kron(gate_for_bit(x0), gate_for_bit(x1)),)
    return ProtocolOneInstance(
        name=name,
        message_dims=(2, 2),
        alice_ref_dims=(2, 2),
        bob_ref_dims=(1,),
        alice_init=_two_bell_pairs(),
        bob_unitaries=bob,
        alice_unitaries=(np.eye(16),),
        final_povm=parity_povm(),
        params=params,
    )


def bell_pair_instance() -> ProtocolOneInstance:
    return _phase_instance('bell-pair', lambda x: Z if x else I2, {})


def rotation_instance(theta) -> ProtocolOneInstance:
    """Bob rotates message qubit b by exp(-i theta x_b Z)."""
    theta = float(theta)
    if not math.isfinite(theta) or not 0.0 <= theta <= math.pi:
        raise PreconditionError(f"theta must lie in [0, pi], got {theta}")
    gate = expm(-1j * theta * Z)
    return _phase_instance(f"rotation(theta={theta:.12g})", lambda x: gate if x else I2, {'theta': theta})


def no_encoding_instance() -> ProtocolOneInstance:
    return dataclasses.replace(rotation_instance(0.0), name='no-encoding')


def flipped_guess(inst: ProtocolOneInstance) -> ProtocolOneInstance:
    """Same instance with Alice's x_hat labels swapped."""
    povm = Povm({(i, 1 - x_hat): e for (i, x_hat), e in inst.final_povm.elements.items()})
    return dataclasses.replace(inst, name=f"flipped({inst.name})", final_povm=povm)


INSTANCES = ('bell-pair', 'rotation', 'no-encoding', 'flipped-bell-pair')


def get_instance(name, theta=None) -> ProtocolOneInstance:
    """
    look up a shipped instance by name

    raises:
        UnknownNameError for unregistered names
        PreconditionError when 'rotation' has no theta
    """
    if name == 'bell-pair':
        return bell_pair_instance()
    if name == 'rotation':
        if theta is None:
            raise PreconditionError("the rotation instance needs theta")
        return rotation_instance(theta)
    if name == 'no-encoding':
        return no_encoding_instance()
    if name == 'flipped-bell-pair':
        return flipped_guess(bell_pair_instance())
    log.warning(f"Unknown instance: {name}")
    raise UnknownNameError(f"unknown instance {name!r}")
