"""Text formats for families, graphs, skeletons, reaction systems and DOT export.

Element labels are resolved through a symbol table at the boundary; inside
the library everything is an integer.  Lines starting with ``#`` and blank
lines are ignored everywhere except inside a ``matrix`` block.
"""
import json
import re

from .core_sets import (FaithfulCorrespondence, SetFamily, elements_of, format_mask,
                        iter_bits)
from .errors import DomainError, ParseError
from .graphs import Digraph, OneOutGraph
from .lattice import MainSkeleton, PowersetPoset
from .reaction_systems import Reaction, ReactionSystem
from .skeletons import Skeleton

_BRACES = re.compile(r"^\{(.*)\}$")
_PALETTE = ("lightblue", "palegreen", "lightpink", "khaki", "plum", "lightsalmon",
            "paleturquoise", "wheat", "thistle", "lightcyan", "mistyrose", "honeydew")


def default_labels(n):
    """Elements are written ``1 .. n`` unless a file names them."""
    return tuple(str(i) for i in range(1, n + 1))


def _lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _split_labels(rest):
    tokens = rest.split()
    if len(tokens) == 1:
        tokens = [t.strip() for t in rest.split(",")]
    if any(not t for t in tokens):
        raise ValueError("empty label")
    if len(set(tokens)) != len(tokens):
        raise ValueError("duplicate label")
    return tuple(tokens)


def parse_brace_set(token, labels, source="<input>", line=None):
    """``{a,c}`` -> mask over the positions of ``labels``."""
    match = _BRACES.match(token.strip())
    if not match:
        raise ParseError(f"expected a braced set, got {token!r}", source, line)
    index = {lab: i for i, lab in enumerate(labels)}
    m = 0
    for part in match.group(1).split(","):
        part = part.strip()
        if not part:
            continue
        if part not in index:
            raise ParseError(f"unknown element {part!r}", source, line)
        m |= 1 << index[part]
    return m


def state_labels(n, labels):
    """Labels for the ``2^n`` states of a background with element ``labels``."""
    return tuple(format_mask(x, labels) for x in range(1 << n))


def _header(lines, keyword, source):
    try:
        no, line = next(lines)
    except StopIteration:
        raise ParseError(f"empty input, expected '{keyword}'", source) from None
    head, _, rest = line.partition(" ")
    if head != keyword:
        raise ParseError(f"expected '{keyword} ...', got {line!r}", source, no)
    return no, rest.strip()


def _size_and_labels(lines, keyword, source):
    no, rest = _header(lines, keyword, source)
    try:
        n = int(rest)
    except ValueError:
        raise ParseError(f"'{keyword}' needs an integer, got {rest!r}", source, no) from None
    if n < 0:
        raise ParseError(f"'{keyword}' must be non-negative", source, no)
    labels = default_labels(n)
    pending = None
    for no, line in lines:
        if line.startswith("labels ") or line == "labels":
            try:
                labels = _split_labels(line[len("labels"):].strip())
            except ValueError as err:
                raise ParseError(str(err), source, no) from None
            if len(labels) != n:
                raise ParseError(f"{len(labels)} labels for {n} elements", source, no)
        else:
            pending = (no, line)
        break
    return n, labels, pending


def _rest(lines, pending):
    if pending is not None:
        yield pending
    yield from lines


# set families

def parse_family(text, source="<input>"):
    lines = _lines(text)
    n, labels, pending = _size_and_labels(lines, "universe", source)
    members = [parse_brace_set(line, labels, source, no) for no, line in _rest(lines, pending)]
    try:
        return SetFamily(n, tuple(members)), labels
    except DomainError as err:
        raise ParseError(str(err), source) from None


def format_family(fam, labels=None):
    labels = labels or default_labels(fam.universe_size)
    out = [f"universe {fam.universe_size}"]
    if labels != default_labels(fam.universe_size):
        out.append("labels " + ",".join(labels))
    out.extend(format_mask(m, labels) for m in fam.members)
    return "\n".join(out) + "\n"


# graphs

_TRUE_CELLS = {"x", "X", "×", "1", r"\times", "$\\times$"}
_FALSE_CELLS = {"", ".", "0"}


def _parse_matrix_rows(lines, labels, source):
    r"""Rows of ``x``/``×``/``1`` (edge) and blank/``.``/``0`` (no edge) cells.

    Cells are split on ``&`` or ``|``; an optional leading row label, a
    column header row and LaTeX decorations (``\\``, ``\hline``, array
    delimiters) are skipped.
    """
    n = len(labels)
    rows = []
    for no, line in lines:
        line = line.replace(r"\hline", "").strip().rstrip("\\").strip()
        if not line or set(line) <= set("-|=+ ") or line[0] in "\\$":
            continue
        cells = [c.strip() for c in re.split(r"[&|]", line)]
        if len(cells) == n + 1:
            if not rows and not cells[0] and tuple(cells[1:]) == labels:
                continue
            cells = cells[1:]
        if len(cells) != n:
            raise ParseError(f"matrix row has {len(cells)} cells, expected {n}", source, no)
        row = 0
        for j, cell in enumerate(cells):
            if cell in _TRUE_CELLS:
                row |= 1 << j
            elif cell not in _FALSE_CELLS:
                raise ParseError(f"unrecognized matrix cell {cell!r}", source, no)
        rows.append(row)
        if len(rows) == n:
            break
    if len(rows) != n:
        raise ParseError(f"matrix has {len(rows)} rows, expected {n}", source)
    return rows


def parse_graph(text, source="<input>"):
    """Parse an edge list (``u -> v`` lines) or a ``matrix`` block."""
    lines = _lines(text)
    n, labels, pending = _size_and_labels(lines, "vertices", source)
    index = {lab: i for i, lab in enumerate(labels)}
    rows = [0] * n
    body = _rest(lines, pending)
    for no, line in body:
        if line == "matrix":
            # blank matrix cells matter, so re-read the raw text from here on
            raw = text.splitlines()[no:]
            numbered = [(no + k + 1, r) for k, r in enumerate(raw) if r.strip()]
            rows = _parse_matrix_rows(iter(numbered), labels, source)
            break
        if "->" not in line:
            raise ParseError(f"expected 'u -> v', got {line!r}", source, no)
        u, _, v = (s.strip() for s in line.partition("->"))
        if u not in index or v not in index:
            raise ParseError(f"unknown vertex in {line!r}", source, no)
        rows[index[u]] |= 1 << index[v]
    return Digraph(n, tuple(rows)), labels


def format_graph(g, labels=None):
    if isinstance(g, OneOutGraph):
        g = g.to_digraph()
    labels = labels or default_labels(g.num_vertices)
    out = [f"vertices {g.num_vertices}"]
    if labels != default_labels(g.num_vertices):
        out.append("labels " + " ".join(labels))
    out.extend(f"{labels[u]} -> {labels[v]}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def _dot_id(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g, labels=None, partition=None, marked=(), name="G"):
    """DOT text; vertices of one companion block share a fill colour."""
    if isinstance(g, OneOutGraph):
        g = g.to_digraph()
    labels = labels or default_labels(g.num_vertices)
    out = [f"digraph {name} {{", "  node [style=filled];"]
    for v in range(g.num_vertices):
        attrs = [f"label={_dot_id(labels[v])}"]
        if partition is not None:
            attrs.append(f"fillcolor={_PALETTE[partition.class_of[v] % len(_PALETTE)]}")
        else:
            attrs.append("fillcolor=white")
        if v in marked:
            attrs.append("peripheries=2")
        out.append(f"  {_dot_id(v)} [{', '.join(attrs)}];")
    for u, v in g.edges():
        out.append(f"  {_dot_id(u)} -> {_dot_id(v)};")
    out.append("}")
    return "\n".join(out) + "\n"


# skeletons

def parse_skeleton(text, source="<input>"):
    lines = _lines(text)
    n, labels, pending = _size_and_labels(lines, "universe", source)
    index = {lab: i for i, lab in enumerate(labels)}

    def vertex(tok, no):
        tok = tok.strip()
        if tok not in index:
            raise ParseError(f"unknown vertex {tok!r}", source, no)
        return index[tok]

    section = None
    sets = {}
    f = {}
    for no, line in _rest(lines, pending):
        if line in ("sets:", "f:"):
            section = line[:-1]
            continue
        if section == "sets":
            m = re.match(r"^rep\s+(\S+)\s*:\s*(\{.*\})$", line)
            if not m:
                raise ParseError(f"expected 'rep <z>: {{...}}', got {line!r}", source, no)
            z = vertex(m.group(1), no)
            if z in sets:
                raise ParseError(f"representative {m.group(1)} used twice", source, no)
            sets[z] = parse_brace_set(m.group(2), labels, source, no)
        elif section == "f":
            if "->" not in line:
                raise ParseError(f"expected 'x -> z', got {line!r}", source, no)
            x, _, z = line.partition("->")
            f[vertex(x, no)] = vertex(z, no)
        else:
            raise ParseError("expected a 'sets:' or 'f:' section", source, no)
    missing = [labels[x] for x in range(n) if x not in f]
    if missing:
        raise ParseError(f"f undefined on {', '.join(missing)}", source)
    try:
        return Skeleton.from_sets(n, {z: elements_of(m) for z, m in sets.items()},
                                  tuple(f[x] for x in range(n))), labels
    except DomainError as err:
        raise ParseError(str(err), source) from None


def format_skeleton(s, labels=None):
    labels = labels or default_labels(s.universe_size)
    out = [f"universe {s.universe_size}"]
    if labels != default_labels(s.universe_size):
        out.append("labels " + " ".join(labels))
    out.append("sets:")
    for z, m in zip(s.representatives, s.family.members):
        out.append(f"rep {labels[z]}: {format_mask(m, labels)}")
    out.append("f:")
    out.extend(f"{labels[x]} -> {labels[z]}" for x, z in enumerate(s.f))
    return "\n".join(out) + "\n"


# reaction systems

_REACTION = re.compile(r"^(?:(?P<name>[^:{}]+):)?\s*(?P<r>\{[^}]*\})\s*!\s*(?P<i>\{[^}]*\})"
                       r"\s*->\s*(?P<p>\{[^}]*\})$")


def parse_rs(text, source="<input>"):
    """Reaction system from the text format or its JSON mirror."""
    if text.lstrip().startswith("{"):
        return _parse_rs_json(text, source)
    lines = _lines(text)
    no, rest = _header(lines, "background", source)
    try:
        labels = _split_labels(rest)
    except ValueError as err:
        raise ParseError(str(err), source, no) from None
    reactions = []
    for no, line in lines:
        m = _REACTION.match(line)
        if not m:
            raise ParseError(f"expected 'name: {{R}} ! {{I}} -> {{P}}', got {line!r}", source, no)
        masks = [parse_brace_set(m.group(k), labels, source, no) for k in "rip"]
        try:
            reactions.append(Reaction(*masks))
        except DomainError as err:
            raise ParseError(str(err), source, no) from None
    return _build_rs(labels, reactions, source)


def _build_rs(labels, reactions, source):
    try:
        return ReactionSystem(len(labels), tuple(reactions), labels)
    except DomainError as err:
        raise ParseError(str(err), source) from None


def _parse_rs_json(text, source):
    try:
        data = json.loads(text)
        labels = tuple(str(s) for s in data["background"])
        index = {lab: i for i, lab in enumerate(labels)}
        reactions = []
        for entry in data["reactions"]:
            masks = []
            for key in "rip":
                m = 0
                for e in entry[key]:
                    m |= 1 << index[str(e)]
                masks.append(m)
            reactions.append(Reaction(*masks))
    except (ValueError, KeyError, TypeError) as err:
        raise ParseError(f"bad JSON reaction system: {err}", source) from None
    return _build_rs(labels, reactions, source)


def format_rs(rs, names=None):
    labels = rs.labels or default_labels(rs.background_size)
    out = ["background " + ",".join(labels)]
    for k, a in enumerate(rs.reactions):
        name = names[k] if names else f"a{k + 1}"
        out.append(f"{name}: {format_mask(a.reactants, labels)} ! "
                   f"{format_mask(a.inhibitors, labels)} -> {format_mask(a.products, labels)}")
    return "\n".join(out) + "\n"


def rs_to_json(rs):
    labels = rs.labels or default_labels(rs.background_size)
    return json.dumps({
        "background": list(labels),
        "reactions": [{"r": [labels[x] for x in iter_bits(a.reactants)],
                       "i": [labels[x] for x in iter_bits(a.inhibitors)],
                       "p": [labels[x] for x in iter_bits(a.products)]}
                      for a in rs.reactions],
    }, indent=2)


def parse_state(token, rs, source="<argument>"):
    labels = rs.labels or default_labels(rs.background_size)
    return parse_brace_set(token, labels, source)


def parse_sequence(text, rs, source="<input>"):
    labels = rs.labels or default_labels(rs.background_size)
    return [parse_brace_set(line, labels, source, no) for no, line in _lines(text)]


# main skeletons

def parse_main_skeleton(text, source="<input>"):
    lines = _lines(text)
    n, labels, pending = _size_and_labels(lines, "n", source)
    poset = PowersetPoset(n)
    f = {}
    for no, line in _rest(lines, pending):
        if "->" not in line:
            raise ParseError(f"expected 'X -> Y', got {line!r}", source, no)
        x, _, y = line.partition("->")
        x = parse_brace_set(x, labels, source, no)
        if x in f:
            raise ParseError(f"f defined twice on {format_mask(x, labels)}", source, no)
        f[x] = parse_brace_set(y, labels, source, no)
    missing = [format_mask(x, labels) for x in poset.points() if x not in f]
    if missing:
        raise ParseError(f"f undefined on {len(missing)} points, e.g. {missing[0]}", source)
    return MainSkeleton(poset, tuple(f[x] for x in poset.points())), labels


def format_main_skeleton(m, labels=None):
    n = m.poset.ground_size
    labels = labels or default_labels(n)
    out = [f"n {n}"]
    if labels != default_labels(n):
        out.append("labels " + ",".join(labels))
    out.extend(f"{format_mask(x, labels)} -> {format_mask(y, labels)}" for x, y in enumerate(m.f))
    return "\n".join(out) + "\n"


# witnesses

def _label_list(m, labels):
    return [labels[x] for x in iter_bits(m)]


def _mask_of_labels(items, labels, source):
    index = {lab: i for i, lab in enumerate(labels)}
    m = 0
    for lab in items:
        if str(lab) not in index:
            raise ParseError(f"witness names unknown element {lab!r}", source)
        m |= 1 << index[str(lab)]
    return m


def witness_to_dict(w, labels_a, labels_b):
    """JSON-ready form of a correspondence; sets are lists of element labels."""
    out = {"set_map": [[_label_list(x, labels_a), _label_list(y, labels_b)]
                       for x, y in w.as_dict().items()]}
    if w.vertex_map is not None:
        out["vertex_map"] = {labels_a[x]: labels_b[y] for x, y in enumerate(w.vertex_map)}
    return out


def witness_from_dict(data, closure_a, closure_b, labels_a, labels_b, source="<witness>"):
    """Rebuild a correspondence against known closures (not validated here)."""
    try:
        pairs = [(_mask_of_labels(x, labels_a, source), _mask_of_labels(y, labels_b, source))
                 for x, y in data["set_map"]]
        set_map = [None] * len(closure_a)
        for x, y in pairs:
            if x not in closure_a or y not in closure_b:
                raise ParseError("witness pairs a set outside the closures", source)
            set_map[closure_a.index(x)] = closure_b.index(y)
        if None in set_map:
            raise ParseError("witness leaves closure sets unmapped", source)
        vmap = None
        if "vertex_map" in data:
            index_b = {lab: i for i, lab in enumerate(labels_b)}
            vmap = tuple(index_b[str(data["vertex_map"][lab])] for lab in labels_a)
    except (KeyError, TypeError, ValueError) as err:
        raise ParseError(f"malformed witness: {err!r}", source) from None
    return FaithfulCorrespondence(closure_a, closure_b, tuple(set_map), vmap)


def perm_to_dict(perm, labels_a, labels_b):
    return {labels_a[x]: labels_b[y] for x, y in enumerate(perm)}


def perm_from_dict(data, labels_a, labels_b, source="<witness>"):
    index_b = {lab: i for i, lab in enumerate(labels_b)}
    try:
        return tuple(index_b[str(data[lab])] for lab in labels_a)
    except (KeyError, TypeError) as err:
        raise ParseError(f"malformed vertex map: {err!r}", source) from None
