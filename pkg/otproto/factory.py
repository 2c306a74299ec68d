"""
runner factory

creates OT runners by name
"""

import logging

from otproto import runners
from otproto.from_qhe import QheOtRunner
from otproto.instances import get_instance
from otproto.protocol_one import ProtocolOneRunner
from qhe.factory import SchemeFactory
from quantum.exceptions import UnknownNameError

log = logging.getLogger(__name__)

_SIMPLE = {
    'ideal-semi-random': runners.IdealSemiRandomOt,
    'noisy-semi-random': runners.NoisySemiRandomOt,
    'aborting-semi-random': runners.AbortingSemiRandomOt,
    'scripted-semi-random': runners.ScriptedSemiRandomOt,
    'ideal-standard': runners.IdealStandardOt,
    'noisy-standard': runners.NoisyStandardOt,
    'aborting-standard': runners.AbortingStandardOt,
    'scripted-standard': runners.ScriptedStandardOt,
}


def get_runner(name, **params):
    """
    create a runner

    args:
        name: a simple runner name, 'protocol-one' or 'qhe'
        params: runner options; 'protocol-one' takes instance (and theta),
                'qhe' takes scheme

    raises:
        UnknownNameError for unregistered runner, instance or scheme names
    """
    if name in _SIMPLE:
        log.debug(f"Creating {name} runner")
        return _SIMPLE[name](**params)
    if name == 'protocol-one':
        return ProtocolOneRunner(get_instance(params.get('instance', 'bell-pair'), params.get('theta')))
    if name == 'qhe':
        return QheOtRunner(SchemeFactory.create(params.get('scheme', 'trivial')))
    log.warning(f"Unknown runner: {name}")
    raise UnknownNameError(f"unknown runner {name!r}")


def get_supported_runners():
    return list(_SIMPLE) + ['protocol-one', 'qhe']
