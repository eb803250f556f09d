"""Simultaneous type and variable substitution with a type-safety guarantee.

A specialisation replaces type parameters by types and free variables by
expressions at the same time; if the input formula is well-typed the output
is well-typed, with its type obtained by applying the type half.
Substitution is capture-avoiding: bound identifiers are renamed with primes
on collision.
"""

from __future__ import annotations

from dataclasses import replace as _dc_replace

from .errors import InconsistentSpecialisation
from .formula import Formula, free_idents, mk_node
from .stypes import SType, subst_params


class Specialisation:
    """type_map: TypeParam name -> SType; var_map: identifier -> expression.

    `var_types` records the declared type of each substituted variable when
    known; it is used for the consistency check and by the matcher.
    """

    def __init__(self, type_map=None, var_map=None, var_types=None):
        self.type_map = dict(type_map or {})
        self.var_map = dict(var_map or {})
        self.var_types = dict(var_types or {})
        overlap = set(self.type_map) & set(self.var_map)
        if overlap:
            raise InconsistentSpecialisation(sorted(overlap)[0])

    @property
    def is_empty(self) -> bool:
        return not self.type_map and not self.var_map

    def __eq__(self, other):
        return (
            isinstance(other, Specialisation)
            and self.type_map == other.type_map
            and self.var_map == other.var_map
        )

    def __repr__(self):
        ts = {k: str(v) for k, v in self.type_map.items()}
        vs = {k: str(v) for k, v in self.var_map.items()}
        return f"Specialisation(types={ts}, vars={vs})"

    def check_consistent(self, env=None):
        """Each substituted variable's expression must have the specialised
        declared type, when both are known."""
        for v, e in self.var_map.items():
            declared = self.var_types.get(v)
            if declared is None and env is not None:
                declared = env.vars.get(v)
            if declared is not None and e.type is not None:
                if e.type != apply_type(declared, self):
                    raise InconsistentSpecialisation(v)


def apply_type(t: SType, s: Specialisation) -> SType:
    return subst_params(t, s.type_map)


def specialise(f: Formula, s: Specialisation, env=None) -> Formula:
    """Apply `s` to `f`: types and free variables replaced simultaneously."""
    s.check_consistent(env)
    return _subst(f, s.type_map, dict(s.var_map))


def _apply_t(t, tmap):
    return subst_params(t, tmap) if t is not None else None


def _subst(f: Formula, tmap: dict, vmap: dict) -> Formula:
    if f.kind == "ident":
        if f.name in vmap:
            return vmap[f.name]
        return _dc_replace(f, type=_apply_t(f.type, tmap))

    if f.kind in ("forall", "exists"):
        inner = {v: e for v, e in vmap.items() if v not in f.bound}
        range_free = set()
        for e in inner.values():
            range_free |= set(free_idents(e))
        bound = list(f.bound)
        bound_types = [_apply_t(bt, tmap) for bt in f.bound_types]
        renames = {}
        taken = range_free | set(free_idents(f.children[0])) | set(inner)
        for i, b in enumerate(bound):
            if b in range_free:
                fresh = b
                while fresh in taken:
                    fresh += "'"
                taken.add(fresh)
                renames[b] = Formula("ident", name=fresh, type=bound_types[i])
                bound[i] = fresh
        inner.update(renames)
        body = _subst(f.children[0], tmap, inner)
        return mk_node(
            f.kind,
            (body,),
            bound=tuple(bound),
            bound_types=tuple(bound_types),
            factory=f.factory,
        )

    children = tuple(_subst(c, tmap, vmap) for c in f.children)
    return mk_node(
        f.kind,
        children,
        name=f.name,
        value=f.value,
        ctype=_apply_t(f.ctype, tmap),
        factory=f.factory,
        type=_apply_t(f.type, tmap),
    )


def compose(s1: Specialisation, s2: Specialisation) -> Specialisation:
    """s1 then s2 as a single specialisation: s2 applied to s1's ranges."""
    tmap = {p: apply_type(t, s2) for p, t in s1.type_map.items()}
    for p, t in s2.type_map.items():
        tmap.setdefault(p, t)
    vmap = {v: specialise(e, s2) for v, e in s1.var_map.items()}
    for v, e in s2.var_map.items():
        vmap.setdefault(v, e)
    vtypes = {v: apply_type(t, s2) for v, t in s1.var_types.items()}
    for v, t in s2.var_types.items():
        vtypes.setdefault(v, t)
    return Specialisation(tmap, vmap, vtypes)
