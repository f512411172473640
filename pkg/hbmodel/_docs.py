"""Shared docstrings for function parameters.
"""

doc_datum = """\
datum
    Validated :class:`~hbmodel.equivariant.EquivariantDatum`.\
"""

doc_weight_cap = """\
weight_cap
    Truncation cap W on the t-weight of R_G; an even integer.
    Defaults to :attr:`~hbmodel._settings.HBConfig.weight_cap`.\
"""

doc_raise_on_failure = """\
raise_on_failure
    Raise :class:`~hbmodel._errors.IdentityFailed` on the first failing check
    instead of returning the report.\
"""

doc_window = """\
Dimension reports are exact in total degrees ≤ W. Operator identities are
checked on elements of t-weight ≤ W − max deg t_j, so that one more
application of ∂ stays under the cap.\
"""
