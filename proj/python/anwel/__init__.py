"""Signed counts of real members on the discriminant strata of A_n deformations.

Thin wrapper over the compiled module: the count / invariance / table calls
return parsed JSON dictionaries, everything else passes through.
"""

import json as _json

try:
    from . import _anwel as _impl
except ImportError:  # in-tree builds put the module on sys.path directly
    import _anwel as _impl

delta_invariant = _impl.delta_invariant
milnor_number = _impl.milnor_number
cusp_count_ec = _impl.cusp_count_ec
multiplicity_eg = _impl.multiplicity_eg
multiplicity_ec = _impl.multiplicity_ec
ec_closed_form = _impl.ec_closed_form
table_csv = _impl.table_csv


def count(stratum, n=0, i=0, k=0, form="", seed=0, epsilon=1e-3):
    """One signed count over a random slice of the given stratum."""
    if stratum == "eg":
        if i < 1:
            i = _impl.delta_invariant(n)
        raw = _impl.count_eg(n, i, form, seed, epsilon)
    elif stratum == "ec":
        if k < 1:
            if n < 1 or n % 2 != 0:
                raise ValueError("ec needs k, or an even n")
            k = n // 2
        raw = _impl.count_ec(k, seed, epsilon)
    elif stratum == "discr":
        raw = _impl.count_discr(n, form, seed, epsilon)
    else:
        raise ValueError("stratum must be eg, ec or discr")
    return _json.loads(raw)


def invariance(stratum, n=0, i=0, k=0, form="", trials=20, seed=0, epsilon=1e-3):
    """Repeat a sampled count over independent slices; parsed verdict."""
    if stratum == "ec" and n < 1:
        if k < 1:
            raise ValueError("ec needs k, or an even n")
        n = 2 * k
    return _json.loads(_impl.invariance(stratum, n, i, form, trials, seed, epsilon))


def table(n_max=6, seed=0):
    """Closed-form comparison table; parsed JSON document."""
    return _json.loads(_impl.table_json(n_max, seed))


__all__ = [
    "count",
    "cusp_count_ec",
    "delta_invariant",
    "ec_closed_form",
    "invariance",
    "milnor_number",
    "multiplicity_ec",
    "multiplicity_eg",
    "table",
    "table_csv",
]
