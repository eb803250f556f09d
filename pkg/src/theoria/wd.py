"""Well-definedness predicates for expressions.

Total constructs contribute ⊤; division requires a nonzero divisor; an
extension application adds the operator's declared WD condition, when the
defining theory is in scope.  Results are simplified by ⊤-elimination.
"""

from __future__ import annotations

from .formula import Formula, TRUE, conjoin, lnot, mk_node
from .specialise import Specialisation, specialise


def wd(e: Formula, wd_lookup=None) -> Formula:
    """WD predicate of `e`; `wd_lookup(name)` may supply an operator's
    declared condition as (argument names, predicate)."""
    parts = [wd(c, wd_lookup) for c in e.children]
    if e.kind == "div":
        divisor = e.children[1]
        parts.append(lnot(mk_node("equal", (divisor, Formula("intlit", value=0)))))
    elif e.kind == "ext" and wd_lookup is not None:
        hit = wd_lookup(e.name)
        if hit is not None:
            arg_names, condition = hit
            s = Specialisation({}, dict(zip(arg_names, e.children)))
            parts.append(specialise(condition, s))
    return conjoin(parts)
