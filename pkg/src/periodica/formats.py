"""Input file formats: algebra presentations and periodic complexes.

Algebra files are declarative text (one directive per line)::

    # the path algebra of 1 -> 2 with rad^2 = 0
    field rationals          # or: field fp 5
    vertices 2
    arrow a: 1 -> 2
    relation a*a             # words multiply like functions: a*b = "b then a"
    nilpotency 2

Coefficients may be integers or fractions (``-3/2``).  Parser errors carry
1-based line and column numbers.

Complexes are JSON documents validated strictly at load (shapes, module
relations, d^2 = 0); see ``load_complex`` for the schema.
"""

from __future__ import annotations

import json
import os
import re
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .common import ParseError, PreconditionError
from .families import is_cyclic_nakayama, serial_module
from .fields import Field
from .linalg import Mat
from .percomplex import GradedMorphism, PeriodicComplex
from .quiver import AlgebraPresentation, FinDimAlgebra, Quiver, build_algebra
from .rep import Morphism, Rep, direct_sum


def _field_from_words(words: List[str], line: int, col: int) -> Field:
    head = words[0].lower()
    if head in ("rationals", "q", "qq"):
        return Field.rationals()
    if head in ("fp", "gf", "f"):
        if len(words) < 2 or not words[1].isdigit():
            raise ParseError(line, col, "prime field needs a prime, e.g. 'fp 5'")
        return Field.gf(int(words[1]))
    m = re.fullmatch(r"[fF](\d+)", words[0])
    if m:
        return Field.gf(int(m.group(1)))
    raise ParseError(line, col, f"unknown field {' '.join(words)!r}")


def field_from_string(text: str) -> Field:
    return _field_from_words(text.replace("_", " ").split(), 0, 0)


def _split_terms(expr: str, line: int, base_col: int):
    """Split a relation body into (sign, term, column) pieces."""
    terms = []
    sign = 1
    i = 0
    n = len(expr)
    while i < n:
        while i < n and expr[i].isspace():
            i += 1
        if i >= n:
            break
        if expr[i] == "+":
            sign = 1
            i += 1
            continue
        if expr[i] == "-":
            sign = -1
            i += 1
            continue
        j = i
        while j < n and expr[j] not in "+-":
            j += 1
        piece = expr[i:j].strip()
        if not piece:
            raise ParseError(line, base_col + i + 1, "empty relation term")
        terms.append((sign, piece, base_col + i + 1))
        sign = 1
        i = j
    if not terms:
        raise ParseError(line, base_col + 1, "relation has no terms")
    return terms


def parse_algebra_text(text: str, default_field: Optional[Field] = None,
                       label: str = "") -> AlgebraPresentation:
    field: Optional[Field] = default_field
    n_vertices: Optional[int] = None
    arrows: List[Tuple[str, int, int]] = []
    raw_relations: List[Tuple[int, str]] = []
    nilpotency: Optional[int] = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.lstrip()
        col = len(line) - len(stripped) + 1
        words = stripped.split()
        key = words[0].lower()
        if key == "field":
            if len(words) < 2:
                raise ParseError(lineno, col, "field needs an argument")
            field = _field_from_words(words[1:], lineno, col)
        elif key == "vertices":
            if len(words) != 2 or not words[1].isdigit():
                raise ParseError(lineno, col, "vertices needs a count")
            n_vertices = int(words[1])
        elif key == "arrow":
            body = stripped[len("arrow"):].strip()
            m = re.fullmatch(r"([A-Za-z_]\w*)\s*:\s*(\d+)\s*->\s*(\d+)", body)
            if not m:
                raise ParseError(lineno, col,
                                 "arrow syntax is 'arrow name: u -> v'")
            arrows.append((m.group(1), int(m.group(2)), int(m.group(3))))
        elif key == "relation":
            raw_relations.append((lineno, stripped[len("relation"):]))
        elif key == "nilpotency":
            if len(words) != 2 or not words[1].isdigit():
                raise ParseError(lineno, col, "nilpotency needs an integer")
            nilpotency = int(words[1])
        else:
            raise ParseError(lineno, col, f"unknown directive {words[0]!r}")

    if field is None:
        env = os.environ.get("PERIODICA_FIELD")
        if env:
            field = field_from_string(env)
    if field is None:
        raise ParseError(0, 0, "no 'field' line (and PERIODICA_FIELD unset)")
    if n_vertices is None:
        raise ParseError(0, 0, "missing 'vertices' line")
    if nilpotency is None:
        raise ParseError(0, 0, "missing 'nilpotency' line")
    quiver = Quiver(n_vertices, arrows)

    relations = []
    for lineno, body in raw_relations:
        base_col = 9
        rel = []
        for sign, piece, col in _split_terms(body, lineno, base_col):
            coeff = Fraction(sign)
            word = piece
            if "*" in piece:
                head, rest = piece.split("*", 1)
                head = head.strip()
                if re.fullmatch(r"-?\d+(/\d+)?", head):
                    coeff = coeff * Fraction(head)
                    word = rest
            names = [w.strip() for w in word.split("*")]
            if any(not w for w in names):
                raise ParseError(lineno, col, f"malformed word {piece!r}")
            for w in names:
                if w not in quiver.by_name:
                    raise ParseError(lineno, col, f"unknown arrow {w!r}")
            rel.append((coeff, names))
        relations.append(rel)
    try:
        return AlgebraPresentation(quiver, field, relations, nilpotency,
                                   label=label)
    except PreconditionError as exc:
        raise ParseError(0, 0, str(exc))


def parse_algebra_file(path: str,
                       default_field: Optional[Field] = None) -> AlgebraPresentation:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    label = os.path.splitext(os.path.basename(path))[0]
    return parse_algebra_text(text, default_field, label=label)


def load_algebra(path: str) -> FinDimAlgebra:
    return build_algebra(parse_algebra_file(path))


# -- module expressions -------------------------------------------------------------


_MODULE_TOKEN = re.compile(
    r"\s*(?:(?P<mult>\d+)\s*\*\s*)?"
    r"(?P<kind>[PSIMR0])\s*(?:\(\s*(?P<args>\d+(?:\s*,\s*\d+)?)\s*\))?\s*$")


def parse_module_expr(alg: FinDimAlgebra, expr: str) -> Rep:
    """Named modules: ``P(v)``, ``S(v)``, ``I(v)``, ``M(a,l)``, ``R``, ``0``,
    combined with ``+`` and optional multiplicities like ``2*P(1)``."""
    parts: List[Rep] = []
    for piece in expr.split("+"):
        m = _MODULE_TOKEN.fullmatch(piece)
        if not m:
            raise ParseError(0, 0, f"bad module term {piece.strip()!r}")
        kind = m.group("kind")
        mult = int(m.group("mult") or 1)
        args = [int(x) for x in (m.group("args") or "").replace(" ", "").split(",")
                if x != ""]
        if kind == "0":
            continue
        if kind == "R":
            M = Rep.regular(alg)
        elif kind in "PSI":
            if len(args) != 1:
                raise ParseError(0, 0, f"{kind}(v) needs one vertex")
            v = args[0]
            if not (1 <= v <= alg.quiver.n):
                raise ParseError(0, 0, f"vertex {v} out of range")
            M = {"P": Rep.projective, "S": Rep.simple,
                 "I": Rep.injective}[kind](alg, v)
        else:
            if len(args) != 2:
                raise ParseError(0, 0, "M(a,l) needs two arguments")
            if not is_cyclic_nakayama(alg):
                raise ParseError(0, 0,
                                 "M(a,l) needs a cyclic Nakayama algebra")
            M = serial_module(alg, args[0], args[1])
        parts.extend([M] * mult)
    if not parts:
        return Rep.zero(alg)
    if len(parts) == 1:
        return parts[0]
    return direct_sum(parts)[0]


# -- complexes -----------------------------------------------------------------------


def _parse_entry(field: Field, x):
    if isinstance(x, str):
        return field.parse(x)
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(0, 0, f"matrix entries must be ints or strings, got {x!r}")
    return field.coerce(x)


def _parse_matrix(field: Field, rows, nrows, ncols, what: str) -> Mat:
    if not isinstance(rows, list) or len(rows) != nrows or \
            any(not isinstance(r, list) or len(r) != ncols for r in rows):
        raise ParseError(0, 0, f"{what}: need a {nrows}x{ncols} matrix")
    return Mat.from_rows(field, [[_parse_entry(field, x) for x in r]
                                 for r in rows]) if nrows else \
        Mat.zeros(field, 0, ncols)


def _module_from_spec(alg: FinDimAlgebra, spec) -> Rep:
    if isinstance(spec, str):
        return parse_module_expr(alg, spec)
    if not isinstance(spec, dict):
        raise ParseError(0, 0, "module spec must be a name or an object")
    dims = spec.get("dims")
    if not isinstance(dims, list) or len(dims) != alg.quiver.n:
        raise ParseError(0, 0, "module dims must list one size per vertex")
    arrows = spec.get("arrows", {})
    act = []
    for i, a in enumerate(alg.quiver.arrows):
        nr, nc = dims[a.source - 1], dims[a.target - 1]
        if a.name in arrows:
            act.append(_parse_matrix(alg.field, arrows[a.name], nr, nc,
                                     f"arrow {a.name}"))
        else:
            act.append(Mat.zeros(alg.field, nr, nc))
    try:
        M = Rep(alg, dims, act)
        M.check_relations()
    except PreconditionError as exc:
        raise ParseError(0, 0, f"invalid module: {exc}")
    return M


def load_complex(alg: FinDimAlgebra, doc: dict) -> PeriodicComplex:
    """Schema: {"period": m, "modules": [m specs], "differentials": [m maps]}.

    A differential is a list with one matrix per vertex mapping component i
    to component i+1 (target rows, source columns); omitted or null means 0.
    """
    if not isinstance(doc, dict):
        raise ParseError(0, 0, "complex document must be an object")
    m = doc.get("period")
    if not isinstance(m, int) or m < 1:
        raise ParseError(0, 0, "period must be a positive integer")
    specs = doc.get("modules")
    if not isinstance(specs, list) or len(specs) != m:
        raise ParseError(0, 0, f"need exactly {m} modules")
    comps = [_module_from_spec(alg, s) for s in specs]
    raw_diffs = doc.get("differentials")
    if raw_diffs is None:
        raw_diffs = [None] * m
    if not isinstance(raw_diffs, list) or len(raw_diffs) != m:
        raise ParseError(0, 0, f"need exactly {m} differentials")
    diffs = []
    for i, d in enumerate(raw_diffs):
        src, tgt = comps[i], comps[(i + 1) % m]
        if d is None:
            diffs.append(Morphism.zero(src, tgt))
            continue
        if not isinstance(d, list) or len(d) != alg.quiver.n:
            raise ParseError(0, 0,
                             f"differential {i}: need one block per vertex")
        blocks = []
        for v in range(alg.quiver.n):
            nr, nc = tgt.dims[v], src.dims[v]
            if d[v] is None:
                blocks.append(Mat.zeros(alg.field, nr, nc))
            else:
                blocks.append(_parse_matrix(alg.field, d[v], nr, nc,
                                            f"differential {i}, vertex {v+1}"))
        diffs.append(Morphism(src, tgt, blocks))
    try:
        return PeriodicComplex(alg, m, comps, diffs)
    except PreconditionError as exc:
        raise ParseError(0, 0, f"invalid complex: {exc}")


def load_complex_file(alg: Optional[FinDimAlgebra], path: str
                      ) -> PeriodicComplex:
    """Load a complex; an ``"algebra"`` key (path, relative to the document)
    supplies the algebra when none is passed in."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.lineno, exc.colno, exc.msg)
    if alg is None:
        ref = doc.get("algebra")
        if not isinstance(ref, str):
            raise ParseError(0, 0, "no algebra given and none embedded")
        apath = os.path.join(os.path.dirname(os.path.abspath(path)), ref)
        alg = load_algebra(apath)
    return load_complex(alg, doc)


def load_chain_map_file(alg: FinDimAlgebra, path: str
                        ) -> GradedMorphism:
    """Schema: {"source": <complex>, "target": <complex>,
    "components": [m blocks-lists]}; validated as a chain map."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.lineno, exc.colno, exc.msg)
    V = load_complex(alg, doc.get("source"))
    W = load_complex(alg, doc.get("target"))
    raw = doc.get("components")
    if not isinstance(raw, list) or len(raw) != V.m:
        raise ParseError(0, 0, f"need exactly {V.m} components")
    comps = []
    for i, blocks_raw in enumerate(raw):
        src, tgt = V.comps[i], W.comps[i]
        if blocks_raw is None:
            comps.append(Morphism.zero(src, tgt))
            continue
        blocks = []
        for v in range(alg.quiver.n):
            nr, nc = tgt.dims[v], src.dims[v]
            entry = blocks_raw[v] if v < len(blocks_raw) else None
            blocks.append(Mat.zeros(alg.field, nr, nc) if entry is None else
                          _parse_matrix(alg.field, entry, nr, nc,
                                        f"component {i}, vertex {v+1}"))
        comps.append(Morphism(src, tgt, blocks))
    f = GradedMorphism(V, W, 0, comps)
    if not f.is_closed():
        raise ParseError(0, 0, "components do not define a chain map")
    return f


def complex_to_doc(V: PeriodicComplex) -> dict:
    """Serialize a complex back to the JSON schema (explicit matrices)."""
    field = V.algebra.field
    mods = []
    for c in V.comps:
        arrows = {}
        for i, a in enumerate(V.algebra.quiver.arrows):
            if not c.act[i].is_zero():
                arrows[a.name] = [[field.to_str(x) for x in c.act[i].row_list(r)]
                                  for r in range(c.act[i].rows)]
        mods.append({"dims": list(c.dims), "arrows": arrows})
    diffs = []
    for d in V.diffs:
        if d.is_zero():
            diffs.append(None)
        else:
            diffs.append([[[field.to_str(x) for x in b.row_list(r)]
                           for r in range(b.rows)] for b in d.blocks])
    return {"period": V.m, "modules": mods, "differentials": diffs}
