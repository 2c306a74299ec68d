"""
scheme factory

creates the scheme instance for a scheme name
"""

import logging

from qhe.base import QheScheme
from qhe.schemes import CorrelatedPadScheme, IndependentQotpScheme, TrivialScheme
from quantum.exceptions import UnknownNameError

log = logging.getLogger(__name__)

_SCHEMES = {
    'trivial': TrivialScheme,
    'correlated-pad': CorrelatedPadScheme,
    'independent-qotp': IndependentQotpScheme,
}


class SchemeFactory:
    """factory for creating QHE scheme instances"""

    @staticmethod
    def create(scheme_name: str) -> QheScheme:
        """
        create a scheme instance

        args:
            scheme_name: 'trivial', 'correlated-pad' or 'independent-qotp'

        raises:
            UnknownNameError for unregistered names
        """
        if not scheme_name:
            log.warning("No scheme name specified")
            raise UnknownNameError("no scheme name specified")

        cls = _SCHEMES.get(scheme_name.lower())
        if cls is None:
            log.warning(f"Unknown scheme: {scheme_name}")
            raise UnknownNameError(f"unknown scheme {scheme_name!r}")
        log.debug(f"Creating {scheme_name} scheme")
        return cls()

    @staticmethod
    def get_supported_schemes():
        """
        get list of supported scheme names

        returns:
            list of scheme names
        """
        return list(_SCHEMES)
