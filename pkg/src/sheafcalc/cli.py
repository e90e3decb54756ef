"""Batch command line: one verb and one action per invocation.

Inputs arrive as JSON documents (bitmaps as 0/1 text grids), results
leave as a single JSON value on stdout, so runs can be scripted and
diffed.  The exit code carries the verdict: 0 for success, 1 for a
domain failure (an obstruction or violated axiom, with its witness on
stdout), 2 for input the tool refuses, with a location path into the
offending document.

Numbers cross the boundary as exact rational strings ("1/2", "-3",
"0.5"); floats are refused on input and never emitted.  Faces must
arrive already sorted by the complex's vertex order, because the
attachment signs depend on that order; unsorted faces are rejected
rather than silently reordered.  Output is deterministic: the same
command on the same files produces the same bytes.
"""

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .cellsheaf import (
    Assignment,
    CellularSheaf,
    covering_pairs,
    extend,
    global_section_space,
    validate_sheaf,
)
from .cohomology import BayesModel, bayes_build, bayes_check, cohomology_dims
from .complexes import face_name, homology_dims, validate_complex
from .finsheaf import FinitePresheaf, irredundant_covers, sheaf_check, validate_presheaf
from .galois import (
    AdjointSynthesisError,
    GaloisConnection,
    check_connection,
    left_adjoint_of,
    right_adjoint_of,
)
from .modal import DirectedMultigraph, boundary, modal_iterate, subgraph
from .morphology import BinaryImage, StructuringElement, closing, dilate, erode, opening
from .poset import (
    OrderViolation,
    downset_family,
    is_monotone,
    set_label,
    validate_poset,
    validate_topology,
    yoneda_check,
)
from .rationals import RationalMatrix, rational

__all__ = ["Command", "InputError", "Failure", "parse_inputs", "run", "main"]


class InputError(Exception):
    """Unusable input; exit code 2.  ``location`` points into the
    offending document, e.g. ``sheaf:maps.a->ab[0][1]``."""

    def __init__(self, message: str, location: str):
        super().__init__(f"{message} ({location})")
        self.message = message
        self.location = location


class Failure(Exception):
    """Domain failure; exit code 1 with ``witness`` on stdout."""

    def __init__(self, witness: dict):
        super().__init__(str(witness))
        self.witness = witness


@dataclass(frozen=True)
class Command:
    verb: str
    action: str
    inputs: dict   # flag -> file path
    options: dict  # flag -> raw string value


@dataclass(frozen=True)
class PlainText:
    """Payload emitted verbatim instead of as JSON (bitmap grids)."""

    text: str


# ------------------------------------------------------------- helpers

def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (frozenset, set)):
        return sorted((_jsonable(v) for v in value), key=repr)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


def _emit(payload, out):
    if isinstance(payload, PlainText):
        out.write(payload.text + "\n")
    else:
        out.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")


def _load_document(path, flag):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise InputError(f"cannot read {path}: {err.strerror or err}", flag)
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError(
            f"invalid JSON: {err.msg} (line {err.lineno} column {err.colno})", flag)


def _as_object(doc, where, keys=None, required=()):
    if not isinstance(doc, dict):
        raise InputError("expected an object", where)
    if keys is not None:
        for k in doc:
            if k not in keys:
                raise InputError(f"unknown key {k!r}", where)
    for k in required:
        if k not in doc:
            raise InputError(f"missing key {k!r}", where)
    return doc


def _string_list(doc, where, allow_empty=False):
    if not isinstance(doc, list) or any(not isinstance(x, str) for x in doc):
        raise InputError("expected an array of strings", where)
    if not doc and not allow_empty:
        raise InputError("expected a nonempty array of strings", where)
    return list(doc)


def _rational_value(value, where) -> Fraction:
    # JSON floats are refused: 0.1 arrives already rounded to binary
    if isinstance(value, float):
        raise InputError(
            f"floats are inexact, write {value!r} as a quoted rational string", where)
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InputError(f"not a rational: {value!r}", where)
    try:
        return rational(value)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational: {value!r}", where)


def _face_from_name(base, text, where):
    """Resolve a face name: comma-joined labels, a bare vertex label, or
    concatenated single characters when every vertex label is one."""
    if not isinstance(text, str) or not text:
        raise InputError("face names are nonempty strings", where)
    vertices = set(base.vertex_order)
    if "," in text:
        parts = tuple(text.split(","))
    elif text in vertices:
        parts = (text,)
    elif all(len(v) == 1 for v in vertices):
        parts = tuple(text)
    else:
        parts = (text,)
    for v in parts:
        if v not in vertices:
            raise InputError(f"unknown vertex {v!r} in face {text!r}", where)
    if base.has_face(parts):
        return parts
    rank = {v: i for i, v in enumerate(base.vertex_order)}
    if tuple(sorted(set(parts), key=rank.get)) != parts:
        raise InputError(
            f"face {text!r} is not sorted by the vertex order", where)
    raise InputError(f"unknown face {text!r}", where)


# ------------------------------------------------------------- parsers

def _parse_complex(doc, where):
    obj = _as_object(doc, where, keys={"vertices", "faces"}, required=("faces",))
    vertices = None
    if "vertices" in obj:
        vertices = _string_list(obj["vertices"], f"{where}:vertices")
        if len(set(vertices)) != len(vertices):
            raise InputError("duplicate vertex labels", f"{where}:vertices")
    faces_doc = obj["faces"]
    if not isinstance(faces_doc, list) or not faces_doc:
        raise InputError("faces must be a nonempty array", f"{where}:faces")
    faces = [tuple(_string_list(f, f"{where}:faces[{i}]"))
             for i, f in enumerate(faces_doc)]
    for i, face in enumerate(faces):
        # probe one face at a time so the error names its index
        try:
            validate_complex([face], vertices=vertices)
        except ValueError as err:
            raise InputError(str(err), f"{where}:faces[{i}]")
    return validate_complex(faces, vertices=vertices)


def _parse_matrix(doc, where, default_cols=0):
    if not isinstance(doc, list):
        raise InputError("matrix must be an array of rows", where)
    rows = []
    for i, rdoc in enumerate(doc):
        if not isinstance(rdoc, list):
            raise InputError("matrix rows are arrays", f"{where}[{i}]")
        rows.append([_rational_value(x, f"{where}[{i}][{j}]")
                     for j, x in enumerate(rdoc)])
    if not rows:
        # a 0-row matrix cannot carry its own width
        return RationalMatrix.zero(0, default_cols)
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise InputError("ragged matrix", f"{where}[{i}]")
    return RationalMatrix.from_rows(rows)


def _parse_sheaf(doc, where, base_dir):
    obj = _as_object(doc, where, keys={"complex", "stalks", "maps", "variance"},
                     required=("complex", "stalks", "maps"))
    cdoc = obj["complex"]
    if isinstance(cdoc, str):
        cpath = Path(base_dir) / cdoc
        base = _parse_complex(_load_document(cpath, f"{where}:complex"), str(cpath))
    else:
        base = _parse_complex(cdoc, f"{where}:complex")
    variance = obj.get("variance", "sheaf")
    if variance not in ("sheaf", "cosheaf"):
        raise InputError('variance must be "sheaf" or "cosheaf"', f"{where}:variance")
    dims = {}
    for name, value in _as_object(obj["stalks"], f"{where}:stalks").items():
        face = _face_from_name(base, name, f"{where}:stalks.{name}")
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            raise InputError("stalk dimensions are nonnegative integers",
                             f"{where}:stalks.{name}")
        dims[face] = value
    for face in base.all_faces():
        if face not in dims:
            raise InputError(f"no stalk dimension for face {face_name(base, face)!r}",
                             f"{where}:stalks")
    pairs = set(covering_pairs(base))
    maps = {}
    for key, rows in _as_object(obj["maps"], f"{where}:maps").items():
        kwhere = f"{where}:maps.{key}"
        if key.count("->") != 1:
            raise InputError('map keys look like "a->ab"', kwhere)
        left, right = key.split("->")
        sigma = _face_from_name(base, left, kwhere)
        tau = _face_from_name(base, right, kwhere)
        if (sigma, tau) not in pairs:
            raise InputError(f"{key!r} is not a covering attachment", kwhere)
        cols = dims[sigma] if variance == "sheaf" else dims[tau]
        maps[(sigma, tau)] = _parse_matrix(rows, kwhere, default_cols=cols)
    return CellularSheaf(base, dims, maps, variance)


def _parse_seed(text, s, flag="seed"):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError(f"invalid JSON: {err.msg}", flag)
    values = {}
    for name, vec in _as_object(doc, flag).items():
        face = _face_from_name(s.base, name, f"{flag}:{name}")
        if not isinstance(vec, list):
            raise InputError("seed vectors are arrays", f"{flag}:{name}")
        values[face] = tuple(_rational_value(x, f"{flag}:{name}[{j}]")
                             for j, x in enumerate(vec))
        if len(values[face]) != s.stalk_dim[face]:
            raise InputError(
                f"seed at {name!r} needs {s.stalk_dim[face]} entries",
                f"{flag}:{name}")
    return Assignment(values)


def _parse_poset(doc, where):
    obj = _as_object(doc, where, keys={"elements", "leq"}, required=("elements",))
    elements = _string_list(obj["elements"], f"{where}:elements")
    if len(set(elements)) != len(elements):
        raise InputError("duplicate elements", f"{where}:elements")
    known = set(elements)
    pairs = []
    leq_doc = obj.get("leq", [])
    if not isinstance(leq_doc, list):
        raise InputError("leq must be an array of pairs", f"{where}:leq")
    for i, pdoc in enumerate(leq_doc):
        pair = _string_list(pdoc, f"{where}:leq[{i}]")
        if len(pair) != 2:
            raise InputError("relation entries are pairs", f"{where}:leq[{i}]")
        for e in pair:
            if e not in known:
                raise InputError(f"unknown element {e!r}", f"{where}:leq[{i}]")
        pairs.append(tuple(pair))
    try:
        return validate_poset(elements, pairs)
    except OrderViolation as err:
        raise Failure({"kind": "antisymmetry", "witness": list(err.cycle)})


def _parse_monotone_map(doc, dom, cod, where):
    obj = _as_object(doc, where)
    known_dom, known_cod = set(dom.elements), set(cod.elements)
    out = {}
    for k, v in obj.items():
        if k not in known_dom:
            raise InputError(f"unknown element {k!r}", f"{where}.{k}")
        if not isinstance(v, str) or v not in known_cod:
            raise InputError(f"{v!r} is not in the codomain", f"{where}.{k}")
        out[k] = v
    for e in dom.elements:
        if e not in out:
            raise InputError(f"map is partial at {e!r}", where)
    return out


@dataclass(frozen=True)
class _ConnectionDoc:
    source: object
    target: object
    left: dict
    right: dict


def _parse_connection(doc, where):
    obj = _as_object(doc, where, keys={"source", "target", "left", "right"},
                     required=("source", "target"))
    source = _parse_poset(obj["source"], f"{where}:source")
    target = _parse_poset(obj["target"], f"{where}:target")
    left = right = None
    if "left" in obj:
        left = _parse_monotone_map(obj["left"], source, target, f"{where}:left")
    if "right" in obj:
        right = _parse_monotone_map(obj["right"], target, source, f"{where}:right")
    return _ConnectionDoc(source, target, left, right)


def _parse_graph(doc, where):
    obj = _as_object(doc, where, keys={"vertices", "edges"}, required=("vertices",))
    vertices = _string_list(obj["vertices"], f"{where}:vertices")
    if len(set(vertices)) != len(vertices):
        raise InputError("duplicate vertices", f"{where}:vertices")
    known = set(vertices)
    edges = []
    seen = set()
    edges_doc = obj.get("edges", [])
    if not isinstance(edges_doc, list):
        raise InputError("edges must be an array", f"{where}:edges")
    for i, edoc in enumerate(edges_doc):
        ewhere = f"{where}:edges[{i}]"
        eobj = _as_object(edoc, ewhere, keys={"id", "src", "dst"},
                          required=("id", "src", "dst"))
        eid, src, dst = eobj["id"], eobj["src"], eobj["dst"]
        if not all(isinstance(x, str) for x in (eid, src, dst)):
            raise InputError("id, src and dst are strings", ewhere)
        if eid in seen:
            raise InputError(f"duplicate edge id {eid!r}", ewhere)
        seen.add(eid)
        for v in (src, dst):
            if v not in known:
                raise InputError(f"unknown vertex {v!r}", ewhere)
        edges.append((eid, src, dst))
    return DirectedMultigraph(tuple(vertices), tuple(edges))


def _parse_subgraph(doc, g, where):
    obj = _as_object(doc, where, keys={"vertices", "edges"})
    vertices = _string_list(obj.get("vertices", []), f"{where}:vertices",
                            allow_empty=True)
    edges = _string_list(obj.get("edges", []), f"{where}:edges", allow_empty=True)
    for v in vertices:
        if v not in set(g.vertices):
            raise InputError(f"unknown vertex {v!r}", f"{where}:vertices")
    for e in edges:
        if e not in g.edges:
            raise InputError(f"unknown edge id {e!r}", f"{where}:edges")
    try:
        return subgraph(g, vertices, edges)
    except ValueError as err:
        raise InputError(str(err), where)


@dataclass(frozen=True)
class _PresheafDoc:
    presheaf: FinitePresheaf
    open_sets: dict  # name -> frozenset of points
    name_of: dict    # frozenset -> name


def _parse_presheaf(doc, where):
    obj = _as_object(doc, where, keys={"opens", "restrictions", "topology"},
                     required=("opens", "restrictions", "topology"))
    entries = obj["topology"]
    if not isinstance(entries, list):
        raise InputError("topology must be an array", f"{where}:topology")
    open_sets = {}
    for i, entry in enumerate(entries):
        row = _string_list(entry, f"{where}:topology[{i}]")
        name, points = row[0], frozenset(row[1:])
        if name in open_sets:
            raise InputError(f"open {name!r} declared twice", f"{where}:topology[{i}]")
        open_sets[name] = points
    name_of = {}
    for name, members in open_sets.items():
        if members in name_of:
            raise InputError(
                f"{name_of[members]!r} and {name!r} denote the same open",
                f"{where}:topology")
        name_of[members] = name
    points = sorted(set().union(*open_sets.values())) if open_sets else []
    try:
        topology = validate_topology(points, open_sets.values())
    except ValueError as err:
        raise InputError(str(err), f"{where}:topology")

    stalk = {}
    opens_doc = _as_object(obj["opens"], f"{where}:opens")
    for name in opens_doc:
        if name not in open_sets:
            raise InputError(f"open {name!r} not declared in the topology",
                             f"{where}:opens.{name}")
    for name in open_sets:
        if name not in opens_doc:
            raise InputError(f"no sections listed for open {name!r}",
                             f"{where}:opens")
    for name, sections in opens_doc.items():
        listed = _string_list(sections, f"{where}:opens.{name}", allow_empty=True)
        if len(set(listed)) != len(listed):
            raise InputError("duplicate section labels", f"{where}:opens.{name}")
        stalk[open_sets[name]] = frozenset(listed)

    restriction = {}
    for key, table_doc in _as_object(obj["restrictions"],
                                     f"{where}:restrictions").items():
        kwhere = f"{where}:restrictions.{key}"
        if key.count("<=") != 1:
            raise InputError('restriction keys look like "V<=U"', kwhere)
        small_name, big_name = key.split("<=")
        for name in (small_name, big_name):
            if name not in open_sets:
                raise InputError(f"unknown open {name!r}", kwhere)
        v, u = open_sets[small_name], open_sets[big_name]
        if not v <= u:
            raise InputError(f"{small_name!r} is not inside {big_name!r}", kwhere)
        table = {}
        for s, t in _as_object(table_doc, kwhere).items():
            if s not in stalk[u]:
                raise InputError(f"{s!r} is not a section of {big_name!r}",
                                 f"{kwhere}.{s}")
            if not isinstance(t, str) or t not in stalk[v]:
                raise InputError(f"{t!r} is not a section of {small_name!r}",
                                 f"{kwhere}.{s}")
            table[s] = t
        for s in stalk[u]:
            if s not in table:
                raise InputError(f"restriction is partial at {s!r}", kwhere)
        restriction[(u, v)] = table
    for u in topology.opens:
        # identity tables may be omitted; a presheaf that breaks the
        # identity law must spell the offending table out
        if (u, u) not in restriction:
            restriction[(u, u)] = {s: s for s in stalk[u]}
    for u in topology.opens:
        for v in topology.opens:
            if v <= u and (u, v) not in restriction:
                raise InputError(
                    f"missing restriction {name_of[v]}<={name_of[u]}",
                    f"{where}:restrictions")
    return _PresheafDoc(FinitePresheaf(topology, stalk, restriction),
                        open_sets, name_of)


def _parse_model(doc, where):
    obj = _as_object(doc, where, keys={"variables"}, required=("variables",))
    vdocs = obj["variables"]
    if not isinstance(vdocs, list) or not vdocs:
        raise InputError("variables must be a nonempty array", f"{where}:variables")
    names = []
    for i, vdoc in enumerate(vdocs):
        vobj = _as_object(vdoc, f"{where}:variables[{i}]",
                          keys={"name", "outcomes", "parents", "cpt"},
                          required=("name", "outcomes", "cpt"))
        if not isinstance(vobj["name"], str):
            raise InputError("variable names are strings", f"{where}:variables[{i}]")
        names.append(vobj["name"])
    if len(set(names)) != len(names):
        raise InputError("duplicate variable names", f"{where}:variables")
    outcomes, parents, cpt = {}, {}, {}
    for i, vdoc in enumerate(vdocs):
        vwhere = f"{where}:variables[{i}]"
        name = vdoc["name"]
        listed = _string_list(vdoc["outcomes"], f"{vwhere}:outcomes")
        if len(set(listed)) != len(listed):
            raise InputError("duplicate outcomes", f"{vwhere}:outcomes")
        outcomes[name] = tuple(listed)
        declared = _string_list(vdoc.get("parents", []), f"{vwhere}:parents",
                                allow_empty=True)
        for j, p in enumerate(declared):
            if p not in set(names):
                raise InputError(f"unknown parent {p!r}", f"{vwhere}:parents[{j}]")
        if len(set(declared)) != len(declared):
            raise InputError("duplicate parents", f"{vwhere}:parents")
        parents[name] = tuple(declared)
        cpt_doc = vdoc["cpt"]
        if not isinstance(cpt_doc, list):
            raise InputError("cpt must be an array of rows", f"{vwhere}:cpt")
        rows = []
        for r, rdoc in enumerate(cpt_doc):
            if not isinstance(rdoc, list):
                raise InputError("cpt rows are arrays", f"{vwhere}:cpt[{r}]")
            rows.append(tuple(_rational_value(x, f"{vwhere}:cpt[{r}][{c}]")
                              for c, x in enumerate(rdoc)))
        cpt[name] = tuple(rows)
    return BayesModel(tuple(names), outcomes, parents, cpt)


def _parse_bitmap(path, flag):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise InputError(f"cannot read {path}: {err.strerror or err}", flag)
    lines = text.splitlines()
    while lines and lines[-1] == "":
        lines.pop()
    if not lines or not lines[0]:
        raise InputError("empty bitmap", flag)
    width = len(lines[0])
    pixels = set()
    for y, line in enumerate(lines):
        if len(line) != width:
            raise InputError(f"row width {len(line)} differs from {width}",
                             f"{flag}:line {y + 1}")
        for x, ch in enumerate(line):
            if ch == "1":
                pixels.add((x, y))
            elif ch != "0":
                raise InputError(f"unexpected character {ch!r}",
                                 f"{flag}:line {y + 1} column {x + 1}")
    return BinaryImage.of(width, len(lines), pixels)


def _parse_element(doc, flag):
    if not isinstance(doc, list) or not doc:
        raise InputError("offsets must be a nonempty array", flag)
    offsets = []
    for i, odoc in enumerate(doc):
        ok = (isinstance(odoc, list) and len(odoc) == 2
              and all(isinstance(x, int) and not isinstance(x, bool) for x in odoc))
        if not ok:
            raise InputError("offsets are [dx, dy] integer pairs", f"{flag}[{i}]")
        offsets.append((odoc[0], odoc[1]))
    return StructuringElement(frozenset(offsets))


def parse_inputs(command: Command) -> dict:
    """Load and type-check every file named by the command, in the
    order the action declares them (a subgraph needs its graph first)."""
    spec = ACTIONS[(command.verb, command.action)]
    objects = {}
    for flag in spec.paths:
        path = command.inputs[flag]
        if flag == "complex":
            objects[flag] = _parse_complex(_load_document(path, flag), flag)
        elif flag == "sheaf":
            doc = _load_document(path, flag)
            objects[flag] = _parse_sheaf(doc, flag, Path(path).parent)
        elif flag == "poset":
            objects[flag] = _parse_poset(_load_document(path, flag), flag)
        elif flag == "connection":
            objects[flag] = _parse_connection(_load_document(path, flag), flag)
        elif flag == "graph":
            objects[flag] = _parse_graph(_load_document(path, flag), flag)
        elif flag == "subgraph":
            doc = _load_document(path, flag)
            objects[flag] = _parse_subgraph(doc, objects["graph"], flag)
        elif flag == "presheaf":
            objects[flag] = _parse_presheaf(_load_document(path, flag), flag)
        elif flag == "model":
            objects[flag] = _parse_model(_load_document(path, flag), flag)
        elif flag == "bitmap":
            objects[flag] = _parse_bitmap(path, flag)
        elif flag == "element":
            objects[flag] = _parse_element(_load_document(path, flag), flag)
        else:
            assert False, flag
    return objects


# ------------------------------------------------------------- actions

def _sheaf_witness(base, report):
    if report.kind == "missing-map":
        sigma, tau = report.witness
        return {"kind": report.kind,
                "attachment": [face_name(base, sigma), face_name(base, tau)]}
    if report.kind == "shape":
        sigma, tau, got, want = report.witness
        return {"kind": report.kind,
                "attachment": [face_name(base, sigma), face_name(base, tau)],
                "got": list(got), "want": list(want)}
    assert report.kind == "path-independence"
    return {"kind": report.kind,
            "faces": [face_name(base, f) for f in report.witness]}


def _checked_sheaf(objects):
    s = objects["sheaf"]
    report = validate_sheaf(s)
    if not report.ok:
        raise Failure(_sheaf_witness(s.base, report))
    return s


def _require_sheaf_variance(s, action):
    if s.variance != "sheaf":
        raise InputError(f"{action} needs sheaf variance", "sheaf:variance")


def _assignment_json(base, assignment):
    return {face_name(base, face): [str(x) for x in assignment[face]]
            for face in base.all_faces() if face in assignment.support}


def _cmd_complex_validate(objects, options):
    base = objects["complex"]
    return {"vertices": list(base.vertex_order),
            "faces": [list(f) for f in base.all_faces()]}


def _cmd_complex_homology(objects, options):
    return list(homology_dims(objects["complex"]))


def _cmd_sheaf_validate(objects, options):
    _checked_sheaf(objects)
    return {"ok": True}


def _cmd_sheaf_extend(objects, options):
    s = _checked_sheaf(objects)
    _require_sheaf_variance(s, "extend")
    seed = _parse_seed(options["seed"], s)
    outcome = extend(s, seed)
    if outcome.ok:
        return _assignment_json(s.base, outcome.result)
    raise Failure({"obstruction": face_name(s.base, outcome.obstruction),
                   "kind": outcome.kind})


def _cmd_sheaf_sections(objects, options):
    s = _checked_sheaf(objects)
    _require_sheaf_variance(s, "sections")
    space = global_section_space(s)
    return {"dimension": space.dimension,
            "basis": [_assignment_json(s.base, a) for a in space.basis]}


def _cmd_cohomology_dims(objects, options):
    s = _checked_sheaf(objects)
    _require_sheaf_variance(s, "cohomology")
    return list(cohomology_dims(s))


def _cmd_poset_validate(objects, options):
    p = objects["poset"]
    return {"elements": list(p.elements),
            "leq": sorted([x, y] for x, y in p.pairs())}


def _cmd_poset_downsets(objects, options):
    try:
        family = downset_family(objects["poset"])
    except ValueError as err:
        raise InputError(str(err), "poset:elements")
    return [set_label(s) for s in family]


def _cmd_poset_yoneda(objects, options):
    ok, witness = yoneda_check(objects["poset"])
    if ok:
        return {"ok": True}
    raise Failure({"kind": witness[0], "witness": _jsonable(list(witness[1:]))})


def _cmd_galois_check(objects, options):
    c = objects["connection"]
    for side in ("left", "right"):
        if getattr(c, side) is None:
            raise InputError(f"connection needs a {side} map", f"connection:{side}")
    report = check_connection(GaloisConnection(c.source, c.target, c.left, c.right))
    if report.ok:
        return {"ok": True}
    raise Failure({"kind": report.kind, "witness": _jsonable(list(report.witness))})


def _cmd_galois_adjoint(objects, options):
    c = objects["connection"]
    direction = options.get("direction", "right")
    if direction not in ("right", "left"):
        raise InputError("direction must be right or left", "direction")
    given = "left" if direction == "right" else "right"
    mapping = getattr(c, given)
    if mapping is None:
        raise InputError(f"synthesis needs the {given} map", f"connection:{given}")
    dom, cod = (c.source, c.target) if given == "left" else (c.target, c.source)
    if not is_monotone(dom, cod, mapping):
        bad = next((x, y) for x, y in dom.pairs()
                   if not cod.leq(mapping[x], mapping[y]))
        raise Failure({"kind": f"{given}-not-monotone", "witness": list(bad)})
    try:
        if direction == "right":
            adjoint = right_adjoint_of(mapping, c.source, c.target)
        else:
            adjoint = left_adjoint_of(mapping, c.source, c.target)
    except AdjointSynthesisError as err:
        raise Failure({"kind": err.kind, "at": err.at,
                       "subset": list(err.subset),
                       "bound": err.bound, "image": err.image})
    return {"direction": direction, "adjoint": adjoint}


def _morph_action(op):
    def handler(objects, options):
        out = op(objects["bitmap"], objects["element"])
        return PlainText(_render_bitmap(out))
    return handler


def _render_bitmap(image):
    return "\n".join(
        "".join("1" if (x, y) in image.foreground else "0"
                for x in range(image.width))
        for y in range(image.height))


def _subgraph_json(s):
    return {"vertices": sorted(s.vertices), "edges": sorted(s.edges)}


def _modal_action(which):
    def handler(objects, options):
        trace = modal_iterate(objects["graph"], objects["subgraph"], which)
        return _subgraph_json(trace.stabilized)
    return handler


def _cmd_modal_boundary(objects, options):
    return _subgraph_json(boundary(objects["graph"], objects["subgraph"]))


def _cmd_presheaf_validate(objects, options):
    bundle = objects["presheaf"]
    report = validate_presheaf(bundle.presheaf)
    if report.ok:
        return {"ok": True}
    if report.kind == "identity":
        u, s, got = report.witness
        raise Failure({"kind": "identity", "open": bundle.name_of[u],
                       "section": s, "got": got})
    u, v, w, s, direct, stepped = report.witness
    raise Failure({"kind": "composition",
                   "opens": [bundle.name_of[x] for x in (u, v, w)],
                   "section": s, "direct": direct, "stepped": stepped})


def _cover_witness(bundle, target, members, condition):
    out = {"target": bundle.name_of[target],
           "cover": sorted(bundle.name_of[frozenset(u)] for u in members)}
    if condition.locality[0] == "fail":
        s, t = condition.locality[1]
        out["axiom"] = "locality"
        out["sections"] = [s, t]
    else:
        family = condition.gluing[1]
        out["axiom"] = "gluing"
        out["family"] = [[bundle.name_of[u], family.section(u)]
                         for u in sorted(family.cover,
                                         key=lambda u: (len(u), tuple(sorted(u))))]
    return out


def _cmd_presheaf_check(objects, options):
    bundle = objects["presheaf"]
    p = bundle.presheaf
    target_name = options.get("target")
    cover_opt = options.get("cover")
    if cover_opt is not None and target_name is None:
        raise InputError("a cover needs a target open", "target")
    if target_name is not None and target_name not in bundle.open_sets:
        raise InputError(f"unknown open {target_name!r}", "target")
    checks = []
    if cover_opt is not None:
        names = cover_opt.split(",")
        for n in names:
            if n not in bundle.open_sets:
                raise InputError(f"unknown open {n!r}", "cover")
        checks.append((bundle.open_sets[target_name],
                       tuple(bundle.open_sets[n] for n in names)))
    elif target_name is not None:
        target = bundle.open_sets[target_name]
        checks = [(target, cover)
                  for cover in irredundant_covers(p.topology, target)]
    else:
        for target in p.topology.opens_sorted():
            for cover in irredundant_covers(p.topology, target):
                checks.append((target, cover))
    count = 0
    for target, cover in checks:
        members = list(cover)
        try:
            condition = sheaf_check(p, members, target)
        except ValueError as err:
            raise InputError(str(err), "cover")
        if not condition.ok:
            raise Failure(_cover_witness(bundle, target, members, condition))
        count += 1
    return {"ok": True, "covers": count}


def _expected_joint_length(m):
    n = 1
    for name in m.variables:
        n *= len(m.outcomes[name])
    return n


def _cmd_bayes_check(objects, options):
    m = objects["model"]
    vector = None
    if "joint" in options:
        try:
            doc = json.loads(options["joint"])
        except json.JSONDecodeError as err:
            raise InputError(f"invalid JSON: {err.msg}", "joint")
        if not isinstance(doc, list):
            raise InputError("joint must be an array", "joint")
        vector = tuple(_rational_value(x, f"joint[{j}]")
                       for j, x in enumerate(doc))
        if len(vector) != _expected_joint_length(m):
            raise InputError(
                f"joint vector needs {_expected_joint_length(m)} entries", "joint")
    try:
        report = bayes_check(m, vector)
    except ValueError as err:
        raise Failure({"error": str(err)})
    if report.ok:
        return {"ok": True}
    raise Failure({"ok": False,
                   "violations": [_jsonable(v) for v in report.violations]})


def _cmd_bayes_joint(objects, options):
    try:
        assembly = bayes_build(objects["model"])
    except ValueError as err:
        raise Failure({"error": str(err)})
    return [str(x) for x in assembly.joint]


@dataclass(frozen=True)
class _ActionSpec:
    paths: tuple
    options: tuple  # (name, required) pairs
    fn: object
    help: str


ACTIONS = {
    ("poset", "validate"): _ActionSpec(
        ("poset",), (), _cmd_poset_validate,
        "close the relation and echo it in canonical order"),
    ("poset", "downsets"): _ActionSpec(
        ("poset",), (), _cmd_poset_downsets,
        "list every downset as a brace label"),
    ("poset", "yoneda"): _ActionSpec(
        ("poset",), (), _cmd_poset_yoneda,
        "confirm the embedding into the downset lattice"),
    ("galois", "check"): _ActionSpec(
        ("connection",), (), _cmd_galois_check,
        "test the adjunction equivalence on every pair"),
    ("galois", "adjoint"): _ActionSpec(
        ("connection",), (("direction", False),), _cmd_galois_adjoint,
        "synthesize the missing adjoint, or report why none exists"),
    ("morph", "dilate"): _ActionSpec(
        ("bitmap", "element"), (), _morph_action(dilate), "Minkowski sum"),
    ("morph", "erode"): _ActionSpec(
        ("bitmap", "element"), (), _morph_action(erode), "Minkowski difference"),
    ("morph", "open"): _ActionSpec(
        ("bitmap", "element"), (), _morph_action(opening), "erode, then dilate"),
    ("morph", "close"): _ActionSpec(
        ("bitmap", "element"), (), _morph_action(closing), "dilate, then erode"),
    ("modal", "diamond"): _ActionSpec(
        ("graph", "subgraph"), (), _modal_action("diamond"),
        "iterate co-negation of negation to its fixpoint"),
    ("modal", "box"): _ActionSpec(
        ("graph", "subgraph"), (), _modal_action("box"),
        "iterate negation of co-negation to its fixpoint"),
    ("modal", "boundary"): _ActionSpec(
        ("graph", "subgraph"), (), _cmd_modal_boundary,
        "the subgraph meet its co-negation"),
    ("complex", "validate"): _ActionSpec(
        ("complex",), (), _cmd_complex_validate,
        "complete the downward closure and echo canonical form"),
    ("complex", "homology"): _ActionSpec(
        ("complex",), (), _cmd_complex_homology,
        "Betti numbers over the rationals"),
    ("presheaf", "validate"): _ActionSpec(
        ("presheaf",), (), _cmd_presheaf_validate,
        "check the functor laws"),
    ("presheaf", "check"): _ActionSpec(
        ("presheaf",), (("target", False), ("cover", False)), _cmd_presheaf_check,
        "test locality and gluing over irredundant covers"),
    ("sheaf", "validate"): _ActionSpec(
        ("sheaf",), (), _cmd_sheaf_validate,
        "shapes, completeness and path independence"),
    ("sheaf", "extend"): _ActionSpec(
        ("sheaf",), (("seed", True),), _cmd_sheaf_extend,
        "extend a partial assignment to a global section"),
    ("sheaf", "sections"): _ActionSpec(
        ("sheaf",), (), _cmd_sheaf_sections,
        "dimension and basis of the space of global sections"),
    ("cohomology", "dims"): _ActionSpec(
        ("sheaf",), (), _cmd_cohomology_dims,
        "Betti numbers of the sheaf cochain complex"),
    ("bayes", "check"): _ActionSpec(
        ("model",), (("joint", False),), _cmd_bayes_check,
        "marginalization coherence of a joint against its model"),
    ("bayes", "joint"): _ActionSpec(
        ("model",), (), _cmd_bayes_joint,
        "assemble the joint distribution from the tables"),
}


def run(command: Command, out=None) -> int:
    out = sys.stdout if out is None else out
    if (command.verb, command.action) not in ACTIONS:
        _emit({"error": f"unknown action {command.verb} {command.action}"}, out)
        return 2
    spec = ACTIONS[(command.verb, command.action)]
    try:
        payload = spec.fn(parse_inputs(command), command.options)
    except InputError as err:
        _emit({"error": err.message, "location": err.location}, out)
        return 2
    except Failure as fail:
        _emit(fail.witness, out)
        return 1
    _emit(payload, out)
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="sheafcalc",
        description="exact lattice, sheaf and morphology calculations on files")
    sub = parser.add_subparsers(dest="verb", metavar="verb", required=True)
    verbs = {}
    for (verb, action), spec in ACTIONS.items():
        if verb not in verbs:
            vp = sub.add_parser(verb)
            verbs[verb] = vp.add_subparsers(dest="action", metavar="action",
                                            required=True)
        ap = verbs[verb].add_parser(action, help=spec.help)
        for flag in spec.paths:
            ap.add_argument(f"--{flag}", required=True, metavar="FILE")
        for name, required in spec.options:
            ap.add_argument(f"--{name}", required=required)
    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as stop:
        return int(stop.code or 0)
    spec = ACTIONS[(args.verb, args.action)]
    inputs = {flag: getattr(args, flag) for flag in spec.paths}
    options = {}
    for name, _required in spec.options:
        value = getattr(args, name)
        if value is not None:
            options[name] = value
    return run(Command(args.verb, args.action, inputs, options))


if __name__ == "__main__":
    raise SystemExit(main())
