"""S-expression definition language for algebras, pairs, functions,
elements, and representations.

A source file is a sequence of top-level forms:

    (superalgebra NAME (basis (z even) (x odd)) (bracket x x (1 z)) ...)
    (pair NAME ALGEBRA (line z))
    (pair NAME ALGEBRA (finite (elements e s) (table (e s) (s e))
                               (ad s ((-1)))))
    (function NAME PAIR <function literal>)
    (element NAME PAIR (tensor (ue (COEF x x) ...) <function>) ...)
    (rep NAME PAIR (grading 1 -1) (rho x ((...) ...)) (freq 2)  ; or (pi g M)
    (family NAME REP ...)

Function literals are `(finitefunc (delta g COEF) (delta (g eps) COEF) ...)`
for finite pairs and `(linefunc (plus (gauss RATE CENTER COEF...)) (eps ...))`
for line pairs; inside an element, `<function>` may be a literal or the name
of a previously defined function on the same pair.

Scalars are exact: `3`, `-1/2`, `2i`, `-1/3i`, or `(c RE IM)`.  Matrix and
Gaussian entries additionally accept decimal floats.  Every diagnostic
carries a line and column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .crossed import CrossedElement
from .enveloping import UEElement
from .errors import DslError
from .functions import FiniteFunction, GaussTerm, GaussianPoly
from .groups import (
    FINITE,
    LINE,
    FiniteGroup,
    GroupData,
    GroupPoint,
    Supergroup,
    build_pair,
)
from .reps import MatrixRep, validate_rep
from .scalars import GaussianRational
from .superalgebra import EVEN, ODD, build_superalgebra

import numpy as np

# ---------------------------------------------------------------------------
# lexer / reader
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"""\(|\)|;[^\n]*|[^\s();]+""")
_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?(i)?\Z")
_FLOAT = re.compile(r"[+-]?(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?(i)?\Z")


@dataclass(frozen=True)
class Atom:
    kind: str  # "symbol" | "rational" | "float" | "imag-rational" | "imag-float"
    value: object
    line: int
    col: int


@dataclass(frozen=True)
class SList:
    items: tuple
    line: int
    col: int


def _classify(text: str, line: int, col: int) -> Atom:
    m = _RATIONAL.match(text)
    if m:
        body = text[:-1] if m.group(2) else text
        if "/" in body:
            num, den = body.split("/")
            if int(den) == 0:
                raise DslError("zero denominator in rational literal", line, col)
            value = Fraction(int(num), int(den))
        else:
            value = Fraction(int(body))
        return Atom("imag-rational" if m.group(2) else "rational", value, line, col)
    m = _FLOAT.match(text)
    if m and any(ch in text for ch in ".eE"):
        body = text[:-1] if m.group(3) else text
        return Atom("imag-float" if m.group(3) else "float", float(body), line, col)
    return Atom("symbol", text, line, col)


def tokenize(source: str):
    for lineno, line in enumerate(source.split("\n"), start=1):
        for m in _TOKEN.finditer(line):
            text = m.group(0)
            if text.startswith(";"):
                break
            col = m.start() + 1
            if text in "()":
                yield Atom("paren", text, lineno, col)
            else:
                yield _classify(text, lineno, col)


def read_forms(source: str) -> list:
    """Read all top-level forms as nested Atom/SList trees."""
    stack: list[list] = []
    marks: list[tuple[int, int]] = []
    out: list = []
    for tok in tokenize(source):
        if tok.kind == "paren" and tok.value == "(":
            stack.append([])
            marks.append((tok.line, tok.col))
        elif tok.kind == "paren":
            if not stack:
                raise DslError("unbalanced ')'", tok.line, tok.col)
            items = stack.pop()
            line, col = marks.pop()
            node = SList(tuple(items), line, col)
            (stack[-1] if stack else out).append(node)
        else:
            if not stack:
                raise DslError("expected '(' at top level", tok.line, tok.col)
            stack[-1].append(tok)
    if stack:
        line, col = marks[-1]
        raise DslError("unclosed '('", line, col)
    return out


# ---------------------------------------------------------------------------
# form helpers
# ---------------------------------------------------------------------------


def _expect_list(node, what: str) -> SList:
    if not isinstance(node, SList):
        raise DslError(f"expected {what} (a parenthesized form)", node.line, node.col)
    return node


def _expect_symbol(node, what: str) -> str:
    if not isinstance(node, Atom) or node.kind != "symbol":
        raise DslError(f"expected {what}", node.line, node.col)
    return node.value


def _head(form: SList) -> str:
    if not form.items:
        raise DslError("empty form", form.line, form.col)
    return _expect_symbol(form.items[0], "form keyword")


def _scalar(node) -> GaussianRational:
    """Exact Gaussian-rational literal."""
    if isinstance(node, Atom):
        if node.kind == "rational":
            return GaussianRational(node.value, Fraction(0))
        if node.kind == "imag-rational":
            return GaussianRational(Fraction(0), node.value)
        raise DslError("expected an exact scalar (rational, Ni, or (c re im))",
                       node.line, node.col)
    if _head(node) == "c" and len(node.items) == 3:
        re_part = node.items[1]
        im_part = node.items[2]
        for part in (re_part, im_part):
            if not (isinstance(part, Atom) and part.kind == "rational"):
                raise DslError("expected rational component", part.line, part.col)
        return GaussianRational(re_part.value, im_part.value)
    raise DslError("expected an exact scalar (rational, Ni, or (c re im))",
                   node.line, node.col)


def _number(node) -> float:
    if isinstance(node, Atom) and node.kind in ("rational", "float"):
        return float(node.value)
    raise DslError("expected a real number", node.line, node.col)


def _complex_entry(node) -> complex:
    """Numeric literal allowing floats; used for matrices and Gaussians."""
    if isinstance(node, Atom):
        if node.kind in ("rational", "float"):
            return complex(float(node.value))
        if node.kind in ("imag-rational", "imag-float"):
            return complex(0.0, float(node.value))
        raise DslError("expected a numeric entry", node.line, node.col)
    if _head(node) == "c" and len(node.items) == 3:
        return complex(_number(node.items[1]), _number(node.items[2]))
    raise DslError("expected a numeric entry", node.line, node.col)


# ---------------------------------------------------------------------------
# workspace
# ---------------------------------------------------------------------------


class Workspace:
    """Named definitions parsed from one or more sources."""

    def __init__(self):
        self.algebras: dict[str, object] = {}
        self.pairs: dict[str, Supergroup] = {}
        self.functions: dict[str, object] = {}
        self.elements: dict[str, CrossedElement] = {}
        self.reps: dict[str, MatrixRep] = {}
        self.families: dict[str, list[str]] = {}
        self._sites: dict[tuple[str, str], tuple[int, int]] = {}
        # pair name per function (GaussianPoly carries no back-reference)
        self._function_pairs: dict[str, str] = {}

    _TABLES = {
        "algebra": "algebras",
        "pair": "pairs",
        "function": "functions",
        "element": "elements",
        "rep": "reps",
        "family": "families",
    }

    def table(self, category: str) -> dict:
        return getattr(self, self._TABLES[category])

    def _define(self, category: str, name: str, node, value):
        key = (category, name)
        if key in self._sites:
            line, col = self._sites[key]
            raise DslError(
                f"duplicate {category} name {name!r} (first defined at "
                f"line {line}, column {col})",
                node.line,
                node.col,
            )
        self._sites[key] = (node.line, node.col)
        self.table(category)[name] = value

    def _lookup(self, category: str, name: str, node):
        table = self.table(category)
        if name not in table:
            raise DslError(f"unknown {category} {name!r}", node.line, node.col)
        return table[name]


def parse(source: str, workspace: Workspace | None = None) -> Workspace:
    ws = workspace or Workspace()
    for form in read_forms(source):
        form = _expect_list(form, "top-level form")
        head = _head(form)
        builder = _BUILDERS.get(head)
        if builder is None:
            raise DslError(
                f"unknown form {head!r}; expected one of "
                f"{', '.join(sorted(_BUILDERS))}",
                form.line,
                form.col,
            )
        builder(ws, form)
    return ws


def parse_file(path: str, workspace: Workspace | None = None) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), workspace)


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------


def _build_superalgebra(ws: Workspace, form: SList):
    if len(form.items) < 3:
        raise DslError("superalgebra needs a name and a basis", form.line, form.col)
    name = _expect_symbol(form.items[1], "algebra name")
    basis_form = _expect_list(form.items[2], "(basis ...)")
    if _head(basis_form) != "basis":
        raise DslError("expected (basis ...)", basis_form.line, basis_form.col)
    names, parity = [], []
    for entry in basis_form.items[1:]:
        entry = _expect_list(entry, "(name even|odd)")
        if len(entry.items) != 2:
            raise DslError("basis entry is (name even|odd)", entry.line, entry.col)
        names.append(_expect_symbol(entry.items[0], "basis name"))
        par = _expect_symbol(entry.items[1], "parity")
        if par not in ("even", "odd"):
            raise DslError("parity must be 'even' or 'odd'", entry.items[1].line,
                           entry.items[1].col)
        parity.append(EVEN if par == "even" else ODD)
    n = len(names)
    index = {nm: i for i, nm in enumerate(names)}
    constants = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]

    def basis_index(node) -> int:
        nm = _expect_symbol(node, "basis name")
        if nm not in index:
            raise DslError(f"unknown basis element {nm!r}", node.line, node.col)
        return index[nm]

    for entry in form.items[3:]:
        entry = _expect_list(entry, "(bracket ...)")
        if _head(entry) != "bracket" or len(entry.items) < 3:
            raise DslError("expected (bracket X Y (coef Z) ...)", entry.line, entry.col)
        i = basis_index(entry.items[1])
        j = basis_index(entry.items[2])
        vec = [Fraction(0)] * n
        for piece in entry.items[3:]:
            piece = _expect_list(piece, "(coef basis)")
            if len(piece.items) != 2:
                raise DslError("bracket term is (coef basis)", piece.line, piece.col)
            coef_atom = piece.items[0]
            if not (isinstance(coef_atom, Atom) and coef_atom.kind == "rational"):
                raise DslError("bracket coefficients are exact rationals",
                               piece.items[0].line, piece.items[0].col)
            vec[basis_index(piece.items[1])] += coef_atom.value
        constants[i][j] = vec
        # fill the super-skew partner unless it was given explicitly
        if i != j:
            sign = -1 if (parity[i] and parity[j]) else 1
            constants[j][i] = [-sign * c for c in vec]
    try:
        algebra = build_superalgebra(name, names, parity, constants)
    except Exception as exc:
        raise DslError(str(exc), form.line, form.col) from exc
    ws._define("algebra", name, form, algebra)


def _build_pair(ws: Workspace, form: SList):
    if len(form.items) != 4:
        raise DslError("pair is (pair NAME ALGEBRA <group form>)", form.line, form.col)
    name = _expect_symbol(form.items[1], "pair name")
    algebra = ws._lookup("algebra", _expect_symbol(form.items[2], "algebra name"),
                         form.items[2])
    gform = _expect_list(form.items[3], "group form")
    kind = _head(gform)
    if kind == "line":
        if len(gform.items) != 2:
            raise DslError("line group is (line GENERATOR)", gform.line, gform.col)
        group = GroupData(LINE, f"{name}-line",
                          generator_name=_expect_symbol(gform.items[1], "generator"))
    elif kind == "finite":
        elements = table = None
        ad: dict[str, list[list[Fraction]]] = {}
        for sub in gform.items[1:]:
            sub = _expect_list(sub, "finite group clause")
            sk = _head(sub)
            if sk == "elements":
                elements = [_expect_symbol(s, "element name") for s in sub.items[1:]]
            elif sk == "table":
                table = sub
            elif sk == "ad":
                if len(sub.items) != 3:
                    raise DslError("expected (ad ELEMENT ((row) ...))", sub.line, sub.col)
                gname = _expect_symbol(sub.items[1], "element name")
                mat_form = _expect_list(sub.items[2], "matrix")
                mat = []
                for row in mat_form.items:
                    row = _expect_list(row, "matrix row")
                    out_row = []
                    for cell in row.items:
                        if not (isinstance(cell, Atom) and cell.kind == "rational"):
                            raise DslError("adjoint entries are exact rationals",
                                           cell.line, cell.col)
                        out_row.append(cell.value)
                    mat.append(out_row)
                ad[gname] = mat
            else:
                raise DslError(f"unknown finite-group clause {sk!r}", sub.line, sub.col)
        if elements is None or table is None:
            raise DslError("finite group needs (elements ...) and (table ...)",
                           gform.line, gform.col)
        eindex = {nm: i for i, nm in enumerate(elements)}
        rows = []
        for row in table.items[1:]:
            row = _expect_list(row, "table row")
            out_row = []
            for cell in row.items:
                nm = _expect_symbol(cell, "element name")
                if nm not in eindex:
                    raise DslError(f"unknown group element {nm!r}", cell.line, cell.col)
                out_row.append(eindex[nm])
            rows.append(tuple(out_row))
        fg = FiniteGroup(f"{name}-group", tuple(elements), tuple(rows))
        n = algebra.dim
        identity_mat = tuple(
            tuple(Fraction(1) if i == j else Fraction(0) for j in range(n))
            for i in range(n)
        )
        mats = []
        for nm in elements:
            if nm in ad:
                mats.append(tuple(tuple(r) for r in ad[nm]))
            else:
                mats.append(identity_mat)
        group = GroupData(FINITE, f"{name}-group", finite=fg, ad_matrices=tuple(mats))
    else:
        raise DslError(f"unknown group kind {kind!r}", gform.line, gform.col)
    try:
        pair = build_pair(name, group, algebra)
    except Exception as exc:
        raise DslError(str(exc), form.line, form.col) from exc
    ws._define("pair", name, form, pair)


def _point(pair: Supergroup, node) -> GroupPoint:
    """A finite group point: `g` or `(g eps)`."""
    fg = pair.group.finite
    if isinstance(node, Atom):
        nm = _expect_symbol(node, "group element")
        if nm not in fg.element_names:
            raise DslError(f"unknown group element {nm!r}", node.line, node.col)
        return GroupPoint(fg.element_names.index(nm), False)
    node = _expect_list(node, "(g eps)")
    if len(node.items) != 2 or _expect_symbol(node.items[1], "'eps'") != "eps":
        raise DslError("expected (ELEMENT eps)", node.line, node.col)
    base = _point(pair, node.items[0])
    return GroupPoint(base.base, True)


def _function_literal(ws: Workspace, pair: Supergroup, node):
    node = _expect_list(node, "function literal")
    head = _head(node)
    if head == "finitefunc":
        if pair.group.kind != FINITE:
            raise DslError("finitefunc literal on a line pair", node.line, node.col)
        values: dict[GroupPoint, GaussianRational] = {}
        for entry in node.items[1:]:
            entry = _expect_list(entry, "(delta POINT COEF)")
            if _head(entry) != "delta" or len(entry.items) != 3:
                raise DslError("expected (delta POINT COEF)", entry.line, entry.col)
            point = _point(pair, entry.items[1])
            coef = _scalar(entry.items[2])
            values[point] = values.get(point, GaussianRational()) + coef
        return FiniteFunction(pair, values)
    if head == "linefunc":
        if pair.group.kind != LINE:
            raise DslError("linefunc literal on a finite pair", node.line, node.col)
        plus: list[GaussTerm] = []
        eps: list[GaussTerm] = []
        for comp in node.items[1:]:
            comp = _expect_list(comp, "(plus|eps (gauss ...) ...)")
            ck = _head(comp)
            if ck not in ("plus", "eps"):
                raise DslError("component tag must be 'plus' or 'eps'",
                               comp.line, comp.col)
            for term in comp.items[1:]:
                term = _expect_list(term, "(gauss RATE CENTER COEF...)")
                if _head(term) != "gauss" or len(term.items) < 4:
                    raise DslError("expected (gauss RATE CENTER COEF...)",
                                   term.line, term.col)
                rate = _number(term.items[1])
                if rate <= 0:
                    raise DslError("Gaussian rate must be positive",
                                   term.items[1].line, term.items[1].col)
                center = _number(term.items[2])
                coeffs = tuple(_complex_entry(c) for c in term.items[3:])
                (plus if ck == "plus" else eps).append(GaussTerm(coeffs, rate, center))
        return GaussianPoly(tuple(plus), tuple(eps))
    raise DslError("expected finitefunc or linefunc", node.line, node.col)


def _function_ref(ws: Workspace, pair: Supergroup, node):
    if isinstance(node, Atom) and node.kind == "symbol":
        func = ws._lookup("function", node.value, node)
        return func
    return _function_literal(ws, pair, node)


def _build_function(ws: Workspace, form: SList):
    if len(form.items) != 4:
        raise DslError("function is (function NAME PAIR <literal>)",
                       form.line, form.col)
    name = _expect_symbol(form.items[1], "function name")
    pair_name = _expect_symbol(form.items[2], "pair name")
    pair = ws._lookup("pair", pair_name, form.items[2])
    func = _function_literal(ws, pair, form.items[3])
    ws._define("function", name, form, func)
    ws._function_pairs[name] = pair_name


def _ue_literal(pair: Supergroup, node) -> UEElement:
    node = _expect_list(node, "(ue (COEF names...) ...)")
    if _head(node) != "ue":
        raise DslError("expected (ue ...)", node.line, node.col)
    algebra = pair.algebra
    out = UEElement.zero(algebra)
    for term in node.items[1:]:
        term = _expect_list(term, "(COEF basis names...)")
        if not term.items:
            raise DslError("empty enveloping term", term.line, term.col)
        coef = _scalar(term.items[0])
        word = []
        for sym in term.items[1:]:
            nm = _expect_symbol(sym, "basis name")
            try:
                word.append(algebra.index(nm))
            except Exception:
                raise DslError(f"unknown basis element {nm!r}", sym.line, sym.col) from None
        from .enveloping import normal_form

        out = out + normal_form(algebra, tuple(word), coef)
    return out


def _build_element(ws: Workspace, form: SList):
    if len(form.items) < 4:
        raise DslError("element is (element NAME PAIR (tensor UE FUNC) ...)",
                       form.line, form.col)
    name = _expect_symbol(form.items[1], "element name")
    pair = ws._lookup("pair", _expect_symbol(form.items[2], "pair name"),
                      form.items[2])
    total = CrossedElement.zero(pair)
    for term in form.items[3:]:
        term = _expect_list(term, "(tensor UE FUNC)")
        if _head(term) != "tensor" or len(term.items) != 3:
            raise DslError("expected (tensor UE FUNC)", term.line, term.col)
        ue = _ue_literal(pair, term.items[1])
        func = _function_ref(ws, pair, term.items[2])
        total = total + CrossedElement.tensor(pair, ue, func)
    ws._define("element", name, form, total)


def _matrix(node) -> np.ndarray:
    node = _expect_list(node, "matrix")
    rows = []
    for row in node.items:
        row = _expect_list(row, "matrix row")
        rows.append([_complex_entry(c) for c in row.items])
    if not rows or any(len(r) != len(rows) for r in rows):
        raise DslError("matrix must be square and nonempty", node.line, node.col)
    return np.array(rows, dtype=complex)


def _build_rep(ws: Workspace, form: SList):
    if len(form.items) < 4:
        raise DslError("rep needs a name, a pair and clauses", form.line, form.col)
    name = _expect_symbol(form.items[1], "rep name")
    pair = ws._lookup("pair", _expect_symbol(form.items[2], "pair name"),
                      form.items[2])
    algebra = pair.algebra
    grading = None
    rho: dict[int, np.ndarray] = {}
    pi_table: dict[int, np.ndarray] = {}
    freq = None
    for clause in form.items[3:]:
        clause = _expect_list(clause, "rep clause")
        ck = _head(clause)
        if ck == "grading":
            grading = np.diag([_number(c) for c in clause.items[1:]]).astype(complex)
        elif ck == "rho":
            if len(clause.items) != 3:
                raise DslError("expected (rho BASIS MATRIX)", clause.line, clause.col)
            nm = _expect_symbol(clause.items[1], "basis name")
            try:
                idx = algebra.index(nm)
            except Exception:
                raise DslError(f"unknown basis element {nm!r}",
                               clause.items[1].line, clause.items[1].col) from None
            rho[idx] = _matrix(clause.items[2])
        elif ck == "pi":
            if pair.group.kind != FINITE:
                raise DslError("(pi ...) clauses only apply to finite pairs",
                               clause.line, clause.col)
            if len(clause.items) != 3:
                raise DslError("expected (pi ELEMENT MATRIX)", clause.line, clause.col)
            nm = _expect_symbol(clause.items[1], "group element")
            names = pair.group.finite.element_names
            if nm not in names:
                raise DslError(f"unknown group element {nm!r}",
                               clause.items[1].line, clause.items[1].col)
            pi_table[names.index(nm)] = _matrix(clause.items[2])
        elif ck == "freq":
            if pair.group.kind != LINE:
                raise DslError("(freq ...) only applies to line pairs",
                               clause.line, clause.col)
            freq = _number(clause.items[1])
        else:
            raise DslError(f"unknown rep clause {ck!r}", clause.line, clause.col)
    if grading is None:
        raise DslError("rep needs a (grading ...) clause", form.line, form.col)
    dim = grading.shape[0]
    rho_list = tuple(rho.get(i, np.zeros((dim, dim), dtype=complex))
                     for i in range(algebra.dim))
    if pair.group.kind == FINITE:
        size = pair.group.finite.size
        table = tuple(pi_table.get(g, np.eye(dim, dtype=complex)) for g in range(size))
        rep = MatrixRep(name, pair, grading, rho_list, pi_table=table)
    else:
        if freq is None:
            raise DslError("line rep needs a (freq ...) clause", form.line, form.col)
        rep = MatrixRep(name, pair, grading, rho_list, freq=freq)
    report = validate_rep(rep)
    if not report.ok:
        bad = "; ".join(f"{c.name}: {c.detail}" for c in report.failures())
        raise DslError(f"representation {name!r} fails validation ({bad})",
                       form.line, form.col)
    ws._define("rep", name, form, rep)


def _build_family(ws: Workspace, form: SList):
    if len(form.items) < 3:
        raise DslError("family is (family NAME REP ...)", form.line, form.col)
    name = _expect_symbol(form.items[1], "family name")
    members = []
    for node in form.items[2:]:
        nm = _expect_symbol(node, "rep name")
        ws._lookup("rep", nm, node)
        members.append(nm)
    ws._define("family", name, form, members)


_BUILDERS = {
    "superalgebra": _build_superalgebra,
    "pair": _build_pair,
    "function": _build_function,
    "element": _build_element,
    "rep": _build_rep,
    "family": _build_family,
}


# ---------------------------------------------------------------------------
# canonical printer
# ---------------------------------------------------------------------------


def format_float(x: float) -> str:
    """Shortest round-trip decimal, capped at 15 significant digits."""
    x = float(f"{float(x):.15g}")
    s = repr(x)
    return s


def _print_scalar(v: GaussianRational) -> str:
    if v.im == 0:
        return str(v.re)
    if v.re == 0:
        return f"{v.im}i"
    return f"(c {v.re} {v.im})"


def _print_entry(z: complex) -> str:
    if z.imag == 0:
        return format_float(z.real)
    if z.real == 0:
        return f"{format_float(z.imag)}i"
    return f"(c {format_float(z.real)} {format_float(z.imag)})"


def _print_point(pair: Supergroup, p: GroupPoint) -> str:
    nm = pair.group.finite.element_names[p.base]
    return f"({nm} eps)" if p.eps else nm


def _print_function(pair: Supergroup, f) -> str:
    if isinstance(f, FiniteFunction):
        entries = sorted(f.values.items(), key=lambda kv: (kv[0].eps, kv[0].base))
        body = " ".join(
            f"(delta {_print_point(pair, p)} {_print_scalar(v)})" for p, v in entries
        )
        return f"(finitefunc {body})" if body else "(finitefunc)"
    parts = []
    for tag, terms in (("plus", f.plus), ("eps", f.eps)):
        if not terms:
            continue
        body = " ".join(
            "(gauss {} {} {})".format(
                format_float(t.rate),
                format_float(t.center),
                " ".join(_print_entry(c) for c in t.coeffs),
            )
            for t in sorted(terms, key=lambda t: (t.rate, t.center))
        )
        parts.append(f"({tag} {body})")
    return "(linefunc " + " ".join(parts) + ")" if parts else "(linefunc)"


def print_workspace(ws: Workspace) -> str:
    """Canonical source text; parsing it back reproduces the workspace and
    printing again is byte-identical."""
    out: list[str] = []
    for name, alg in ws.algebras.items():
        basis = " ".join(
            f"({nm} {'odd' if p else 'even'})"
            for nm, p in zip(alg.basis_names, alg.parity)
        )
        lines = [f"(superalgebra {name} (basis {basis})"]
        for i in range(alg.dim):
            for j in range(i, alg.dim):
                vec = alg.bracket_basis(i, j)
                if any(c != 0 for c in vec):
                    body = " ".join(
                        f"({c} {alg.basis_names[k]})" for k, c in enumerate(vec) if c != 0
                    )
                    lines.append(
                        f"  (bracket {alg.basis_names[i]} {alg.basis_names[j]} {body})"
                    )
        out.append("\n".join(lines) + ")")
    for name, pair in ws.pairs.items():
        alg_name = pair.algebra.name
        if pair.group.kind == LINE:
            out.append(f"(pair {name} {alg_name} (line {pair.group.generator_name}))")
        else:
            fg = pair.group.finite
            elements = " ".join(fg.element_names)
            table = " ".join(
                "(" + " ".join(fg.element_names[v] for v in row) + ")"
                for row in fg.table
            )
            ident = tuple(
                tuple(Fraction(1) if i == j else Fraction(0)
                      for j in range(pair.algebra.dim))
                for i in range(pair.algebra.dim)
            )
            ads = []
            for g, mat in enumerate(pair.group.ad_matrices):
                if mat != ident:
                    rows = " ".join(
                        "(" + " ".join(str(c) for c in row) + ")" for row in mat
                    )
                    ads.append(f" (ad {fg.element_names[g]} ({rows}))")
            out.append(
                f"(pair {name} {alg_name} (finite (elements {elements}) "
                f"(table {table}){''.join(ads)}))"
            )
    for name, func in ws.functions.items():
        pname = _pair_name(ws, func, name)
        out.append(f"(function {name} {pname} {_print_function(ws.pairs[pname], func)})")
    for name, elem in ws.elements.items():
        pname = next(n for n, p in ws.pairs.items() if p == elem.pair)
        terms = []
        alg = elem.pair.algebra
        for w in sorted(elem.terms):
            word = " ".join(alg.basis_names[i] for i in w)
            ue = f"(ue (1 {word}))" if word else "(ue (1))"
            terms.append(f"  (tensor {ue} {_print_function(elem.pair, elem.terms[w])})")
        out.append(f"(element {name} {pname}\n" + "\n".join(terms) + ")")
    for name, rep in ws.reps.items():
        pname = next(n for n, p in ws.pairs.items() if p == rep.pair)
        lines = [f"(rep {name} {pname}"]
        diag = " ".join(format_float(v.real) for v in np.diag(rep.grading))
        lines.append(f"  (grading {diag})")
        for i, mat in enumerate(rep.rho):
            if np.any(mat):
                lines.append(
                    f"  (rho {rep.pair.algebra.basis_names[i]} {_print_matrix(mat)})"
                )
        if rep.pair.group.kind == FINITE:
            for g, mat in enumerate(rep.pi_table):
                if not np.array_equal(mat, np.eye(rep.dim, dtype=complex)):
                    name_g = rep.pair.group.finite.element_names[g]
                    lines.append(f"  (pi {name_g} {_print_matrix(mat)})")
        else:
            lines.append(f"  (freq {format_float(rep.freq)})")
        out.append("\n".join(lines) + ")")
    for name, members in ws.families.items():
        out.append(f"(family {name} {' '.join(members)})")
    return "\n".join(out) + "\n"


def _print_matrix(mat: np.ndarray) -> str:
    rows = " ".join(
        "(" + " ".join(_print_entry(z) for z in row) + ")" for row in mat
    )
    return f"({rows})"


def _pair_name(ws: Workspace, func, fname: str) -> str:
    pname = ws._function_pairs.get(fname)
    if pname is None:
        raise DslError(f"function {fname!r} has no recorded pair")
    return pname
