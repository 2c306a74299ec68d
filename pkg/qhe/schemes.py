"""
Concrete QHE schemes over the SOT family.

- trivial: no key, plaintext goes to the evaluator
- correlated-pad: one X bit shared by both qubits, independent Z bits
- independent-qotp: full quantum one-time pad on both qubits

For the pad schemes output qubit 1 of F is maximally mixed, so Dec only corrects
output qubit 2 with X.
"""

import numpy as np

from qhe.base import QheScheme
from quantum.channelzoo import I2, TWO_QUBITS, identity_channel, pauli, pauli_pad, unitary_channel


def _fix_output(a):
    return unitary_channel(np.kron(I2, pauli(a, 0)), TWO_QUBITS)


class TrivialScheme(QheScheme):
    """Alice sends the plaintext; perfect circuit privacy, no data privacy."""

    name = 'trivial'
    key_length = 0

    def enc_channel(self, key):
        return identity_channel(TWO_QUBITS)

    def eval_channel(self, family_key):
        return self.family[tuple(family_key)]

    def dec_channel(self, key):
        return identity_channel(TWO_QUBITS)


class CorrelatedPadScheme(QheScheme):
    """Key (a, b1, b2): Enc = X^a Z^b1 (x) X^a Z^b2, Dec = X^a on output qubit 2."""

    name = 'correlated-pad'
    key_length = 3

    def enc_channel(self, key):
        a, b1, b2 = self._check_key(key)
        return pauli_pad(a, b1, a, b2)

    def eval_channel(self, family_key):
        return self.family[tuple(family_key)]

    def dec_channel(self, key):
        a, _, _ = self._check_key(key)
        return _fix_output(a)


class IndependentQotpScheme(QheScheme):
    """Key (a1, b1, a2, b2): Enc = X^a1 Z^b1 (x) X^a2 Z^b2, Dec = X^a2 on output qubit 2."""

    name = 'independent-qotp'
    key_length = 4

    def enc_channel(self, key):
        a1, b1, a2, b2 = self._check_key(key)
        return pauli_pad(a1, b1, a2, b2)

    def eval_channel(self, family_key):
        return self.family[tuple(family_key)]

    def dec_channel(self, key):
        _, _, a2, _ = self._check_key(key)
        return _fix_output(a2)


def scheme_trivial():
    return TrivialScheme()


def scheme_correlated_pad():
    return CorrelatedPadScheme()


def scheme_independent_qotp():
    return IndependentQotpScheme()
