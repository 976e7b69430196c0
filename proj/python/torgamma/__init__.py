"""Twisted-sector cohomology, K-theory and Gamma series for Gorenstein cones."""

import json

try:
    from . import _core
except ImportError:  # built without scikit-build: extension on sys.path
    import _core


class Toolkit:
    """One fan with its sector algebras, K-theory and Gamma series."""

    def __init__(self, fan):
        if isinstance(fan, dict):
            fan = json.dumps(fan)
        self._t = _core.Toolkit(fan)

    def sectors(self):
        return json.loads(self._t.sectors())

    def chi(self, alpha, simplex):
        return self._t.chi(list(alpha), list(simplex))

    def pairing_matrix(self):
        return json.loads(self._t.pairing_matrix())

    def gamma(self, c, compact=False, truncation=12, lambda_=4.7, theta=0.1,
              large_side=False):
        return json.loads(self._t.gamma(list(c), compact, truncation, lambda_,
                                        theta, large_side))

    def verify_gkz(self, truncation=12, large_side=False):
        return json.loads(self._t.verify_gkz(truncation, large_side))

    def verify_volume(self, truncation=12, lambda_=4.7, theta=0.05,
                      large_side=False):
        return json.loads(self._t.verify_volume(truncation, lambda_, theta,
                                                large_side))

    def verify_pairing(self, table, truncation=12, lambda_=4.7, theta=0.05,
                       large_side=False):
        if not isinstance(table, str):
            table = json.dumps(table)
        return json.loads(self._t.verify_pairing(table, truncation, lambda_,
                                                 theta, large_side))

    def verify_hrr(self):
        return json.loads(self._t.verify_hrr())


__all__ = ["Toolkit"]
