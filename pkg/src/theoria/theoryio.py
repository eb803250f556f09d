"""Parsing of theory (.thy) and sequent (.seq) files.

Both formats are UTF-8 and line-oriented with keyword blocks; `#` starts a
comment.  Theory declarations take effect in order, so forward references
are rejected.  The full grammar is documented in docs/file-formats.md.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import FormulaSyntaxError
from .factory import CORE, FormulaFactory, factory_union
from .formula import Formula
from .parser import _Parser, _symbols, parse_formula
from .lexer import tokenize
from .signatures import (
    AxiomaticTypeSig,
    ConstructorSig,
    DatatypeSig,
    EXPRESSION,
    INFIX,
    OperatorSig,
    PREDICATE,
    PREFIX,
)
from .stypes import SType, param_names
from .theory import (
    Axiomatic,
    BACKWARD,
    BOTH,
    Direct,
    FORWARD,
    Inductive,
    InductiveCase,
    InferenceRule,
    OperatorDef,
    RewriteRule,
    Theory,
    compile_factory,
)


@dataclass
class SequentSpec:
    """One proof obligation read from a .seq file."""

    name: str
    theory_names: tuple
    idents: dict  # declared identifier types
    hypotheses: tuple  # tuple of (name, Formula)
    goal: Formula


def _logical_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


class _Lines:
    def __init__(self, text: str, file: str):
        self.items = list(_logical_lines(text))
        self.pos = 0
        self.file = file

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else (None, None)

    def next(self):
        no, line = self.peek()
        if line is None:
            raise FormulaSyntaxError(f"{self.file}: unexpected end of file")
        self.pos += 1
        return no, line

    def at_end(self):
        return self.pos >= len(self.items)

    def error(self, no, msg):
        raise FormulaSyntaxError(f"{self.file}:{no}: {msg}")


_IDENT_RE = re.compile(r"[^\W\d]\w*'*", re.UNICODE)


def _parse_type_text(text, factory, allowed_params, lines, no) -> SType:
    try:
        toks = tokenize(text, (), lines.file)
        p = _Parser(toks, factory)
        t = p.type_expr()
        if not p.at_end():
            lines.error(no, f"trailing input in type {text!r}")
    except FormulaSyntaxError as e:
        lines.error(no, f"bad type {text!r}: {e}")
    unknown = param_names(t) - set(allowed_params)
    if unknown:
        lines.error(no, f"unknown type {sorted(unknown)[0]!r}")
    return t


def _split_commas(text):
    """Split on commas outside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        depth += ch in "("
        depth -= ch in ")"
        cur.append(ch)
    parts.append("".join(cur))
    return parts


def _parse_args(argtext, factory, allowed_params, lines, no):
    args = []
    argtext = argtext.strip()
    if not argtext:
        return ()
    for part in _split_commas(argtext):
        if ":" not in part:
            lines.error(no, f"argument {part.strip()!r} needs a type annotation")
        name, ty = part.split(":", 1)
        args.append(
            (name.strip(), _parse_type_text(ty, factory, allowed_params, lines, no))
        )
    return tuple(args)


def parse_theory(text: str, imports=(), file: str = "<theory>") -> Theory:
    """Parse a theory file; imports must be pairwise compatible."""
    lines = _Lines(text, file)
    no, header = lines.next()
    m = re.fullmatch(r"theory\s+(\S+)", header)
    if not m:
        lines.error(no, "expected 'theory <name>' header")
    name = m.group(1)

    type_params: tuple = ()
    datatypes, axiomatic_types, operators = [], [], []
    rewrites, inferences, axioms = [], [], []

    base = CORE
    for imp in imports:
        base = factory_union(base, imp)

    def current_factory():
        t = Theory(name, type_params, tuple(datatypes), tuple(axiomatic_types),
                   tuple(operators))
        return compile_factory(t, imports)

    def parse_f(ftext, factory, no):
        try:
            return parse_formula(ftext, factory, file)
        except FormulaSyntaxError as e:
            lines.error(no, f"in formula {ftext!r}: {e}")

    while not lines.at_end():
        no, line = lines.next()
        head = line.split()[0]

        if head == "type":
            m = re.fullmatch(r"type\s+parameters\s+(.+)", line)
            if not m:
                lines.error(no, "expected 'type parameters <names>'")
            type_params = tuple(p.strip() for p in m.group(1).split(","))

        elif head == "datatype":
            m = re.fullmatch(r"datatype\s+(\w+)\s*(?:\(([^)]*)\))?", line)
            if not m:
                lines.error(no, "bad datatype header")
            dt_name = m.group(1)
            dt_params = tuple(
                p.strip() for p in (m.group(2) or "").split(",") if p.strip()
            )
            fac = current_factory()
            constructors = []
            while True:
                cno, cline = lines.next()
                if cline == "end":
                    break
                cm = re.fullmatch(r"constructor\s+(\w+)\s*(?:\((.*)\))?", cline)
                if not cm:
                    lines.error(cno, "expected 'constructor <name>(...)' or 'end'")
                # the datatype may appear in its own destructor types
                self_sig = DatatypeSig(dt_name, dt_params, ())
                from .factory import factory_with

                fac_self = factory_with(fac, [self_sig])
                dest = _parse_args(cm.group(2) or "", fac_self, dt_params, lines, cno)
                constructors.append(ConstructorSig(cm.group(1), dest))
            datatypes.append(DatatypeSig(dt_name, dt_params, tuple(constructors)))

        elif head == "axiomatic":
            m = re.fullmatch(r"axiomatic\s+type\s+(\w+)", line)
            if not m:
                lines.error(no, "expected 'axiomatic type <name>'")
            axiomatic_types.append(AxiomaticTypeSig(m.group(1)))

        elif head == "operator":
            m = re.fullmatch(
                r"operator\s+(\w+)\s+(infix\s+)?(predicate|expression)\s*"
                r"\((.*)\)\s*(?::\s*(.+))?",
                line,
            )
            if not m:
                lines.error(no, "bad operator header")
            op_name = m.group(1)
            notation = INFIX if m.group(2) else PREFIX
            kind = PREDICATE if m.group(3) == "predicate" else EXPRESSION
            fac = current_factory()
            args = _parse_args(m.group(4), fac, type_params, lines, no)
            result = None
            if m.group(5):
                result = _parse_type_text(m.group(5), fac, type_params, lines, no)
            if kind == EXPRESSION and result is None:
                lines.error(no, f"expression operator {op_name!r} needs ': <type>'")
            if kind == PREDICATE and result is not None:
                lines.error(no, f"predicate operator {op_name!r} has a result type")

            associative = commutative = False
            symbol = None
            definition = None
            wd_condition = None
            defining_axioms: tuple = ()
            body_lines = []
            while True:
                bno, bline = lines.next()
                if bline == "end":
                    break
                body_lines.append((bno, bline))

            # signature facts first, so the definition can refer to the operator
            pending = []
            for bno, bline in body_lines:
                w = bline.split()[0]
                if w == "associative":
                    associative = True
                elif w == "commutative":
                    commutative = True
                elif w == "symbol":
                    sm = re.fullmatch(r'symbol\s+"([^"]+)"', bline)
                    if not sm:
                        lines.error(bno, "expected: symbol \"<token>\"")
                    symbol = sm.group(1)
                else:
                    pending.append((bno, bline))
            try:
                sig = OperatorSig(op_name, notation, kind, args, result,
                                  associative, commutative, symbol)
            except Exception as e:
                lines.error(no, str(e))

            operators.append(OperatorDef(sig, None))
            fac = current_factory()

            cases = []
            scrutinee = None
            for bno, bline in pending:
                w = bline.split()[0]
                if w == "direct":
                    definition = Direct(parse_f(bline[len("direct"):].strip(),
                                                fac, bno))
                elif w == "inductive":
                    scrutinee = bline[len("inductive"):].strip()
                elif w == "case":
                    cm = re.fullmatch(
                        r"case\s+(\w+)\s*(?:\(([^)]*)\))?\s*:\s*(.+)", bline
                    )
                    if not cm:
                        lines.error(bno, "bad inductive case")
                    params = tuple(
                        p.strip() for p in (cm.group(2) or "").split(",")
                        if p.strip()
                    )
                    cases.append(InductiveCase(cm.group(1), params,
                                               parse_f(cm.group(3), fac, bno)))
                elif w == "wd":
                    wd_condition = parse_f(bline[len("wd"):].strip(), fac, bno)
                elif w == "axioms":
                    defining_axioms = tuple(
                        a.strip() for a in bline[len("axioms"):].split(",")
                    )
                else:
                    lines.error(bno, f"unexpected line in operator block: {bline!r}")
            if scrutinee is not None:
                if definition is not None:
                    lines.error(no, f"operator {op_name!r} has two definitions")
                definition = Inductive(scrutinee, tuple(cases))
            elif cases:
                lines.error(no, "cases without an 'inductive <arg>' line")
            if definition is None:
                definition = Axiomatic(defining_axioms, wd_condition)
            operators[-1] = OperatorDef(sig, definition)

        elif head == "rewrite":
            m = re.fullmatch(r"rewrite\s+(\w+)(\s+auto)?", line)
            if not m:
                lines.error(no, "bad rewrite header")
            fac = current_factory()
            lhs = None
            cases = []
            complete = None
            while True:
                bno, bline = lines.next()
                if bline == "end":
                    break
                w = bline.split()[0]
                if w == "lhs":
                    lhs = parse_f(bline[len("lhs"):].strip(), fac, bno)
                elif w == "rhs":
                    cases.append((parse_f("⊤", fac, bno),
                                  parse_f(bline[len("rhs"):].strip(), fac, bno)))
                elif w == "case":
                    body = bline[len("case"):].strip()
                    if ":" not in body:
                        lines.error(bno, "expected 'case <condition>: <rhs>'")
                    cond, rhs = body.split(":", 1)
                    cases.append((parse_f(cond.strip(), fac, bno),
                                  parse_f(rhs.strip(), fac, bno)))
                elif bline == "complete":
                    complete = True
                elif bline == "incomplete":
                    complete = False
                else:
                    lines.error(bno, f"unexpected line in rewrite block: {bline!r}")
            if lhs is None or not cases:
                lines.error(no, f"rewrite {m.group(1)!r} needs lhs and rhs/case")
            if complete is None:
                # unconditional single-case rules are complete by definition
                complete = len(cases) == 1 and cases[0][0].kind == "true"
            rewrites.append(RewriteRule(m.group(1), lhs, tuple(cases), complete,
                                        automatic=bool(m.group(2))))

        elif head == "inference":
            m = re.fullmatch(
                r"inference\s+(\w+)(\s+auto)?(?:\s+(forward|backward|both))?", line
            )
            if not m:
                lines.error(no, "bad inference header")
            direction = {None: BOTH, "forward": FORWARD, "backward": BACKWARD,
                         "both": BOTH}[m.group(3)]
            fac = current_factory()
            givens = []
            infer = None
            while True:
                bno, bline = lines.next()
                if bline == "end":
                    break
                w = bline.split()[0]
                if w == "given":
                    givens.append(parse_f(bline[len("given"):].strip(), fac, bno))
                elif w == "infer":
                    infer = parse_f(bline[len("infer"):].strip(), fac, bno)
                else:
                    lines.error(bno, f"unexpected line in inference block: {bline!r}")
            if infer is None:
                lines.error(no, f"inference {m.group(1)!r} needs an infer clause")
            inferences.append(InferenceRule(m.group(1), tuple(givens), infer,
                                            direction, automatic=bool(m.group(2))))

        elif head == "axiom":
            m = re.fullmatch(r"axiom\s+(\w+)\s*:\s*(.+)", line)
            if not m:
                lines.error(no, "expected 'axiom <name>: <predicate>'")
            axioms.append((m.group(1), parse_f(m.group(2), current_factory(), no)))

        else:
            lines.error(no, f"unexpected declaration {head!r}")

    return Theory(name, type_params, tuple(datatypes), tuple(axiomatic_types),
                  tuple(operators), tuple(rewrites), tuple(inferences),
                  tuple(axioms), tuple(imports))


def parse_sequents(text: str, factory: FormulaFactory,
                   file: str = "<sequents>") -> list:
    """Parse a .seq file: a list of named sequents against `factory`."""
    lines = _Lines(text, file)
    theory_names = []
    out = []
    while not lines.at_end():
        no, line = lines.next()
        head = line.split()[0]
        if head == "theory":
            theory_names.extend(p.strip() for p in line[len("theory"):].split(","))
            continue
        if head != "sequent":
            lines.error(no, f"expected 'theory' or 'sequent', found {head!r}")
        m = re.fullmatch(r"sequent\s+(\S+)", line)
        if not m:
            lines.error(no, "expected 'sequent <name>'")
        po_name = m.group(1)
        idents = {}
        hyps = []
        goal = None
        while True:
            bno, bline = lines.next()
            if bline == "end":
                break
            w = bline.split()[0]
            if w == "ident":
                im = re.fullmatch(r"ident\s+(\S+)\s*:\s*(.+)", bline)
                if not im:
                    lines.error(bno, "expected 'ident <name>: <type>'")
                idents[im.group(1)] = _parse_type_text(
                    im.group(2), factory, (), lines, bno
                )
            elif w == "hyp":
                hm = re.fullmatch(r"hyp\s+(\S+)\s*:\s*(.+)", bline)
                if not hm:
                    lines.error(bno, "expected 'hyp <name>: <predicate>'")
                hyps.append((hm.group(1),
                             parse_formula(hm.group(2), factory, file)))
            elif w == "goal":
                goal = parse_formula(bline[len("goal"):].strip(), factory, file)
            else:
                lines.error(bno, f"unexpected line in sequent block: {bline!r}")
        if goal is None:
            lines.error(no, f"sequent {po_name!r} has no goal")
        out.append(SequentSpec(po_name, tuple(theory_names), idents,
                               tuple(hyps), goal))
    return out
