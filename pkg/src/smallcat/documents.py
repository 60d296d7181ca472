"""Reading and writing structure documents.

Documents are YAML mappings with a ``kind`` and a ``name``.  Tables are
written row by row as strings of space-separated integers; an undefined
composite is written ``-``.  A file may hold several documents separated by
``---``.  Example::

    kind: category
    name: arrow
    objects: 2
    source: [0, 1, 0]
    target: [0, 1, 1]
    identity: [0, 1]
    compose:
    - 0 - 2
    - '- 1 -'
    - '- 2 -'

Other kinds: ``groupoid`` (a category plus ``inverse``), ``group`` (``table``),
``bundle`` (``points``, ``classes``, ``fibers``), ``action`` (nested ``G`` and
``H`` documents, ``phi`` and ``table`` rows ``g h value``), ``group-action``
(nested ``group``, ``points`` and one ``action`` row per element) and
``witness`` (``object_map`` and ``morphism_map``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import yaml

from .action import ActionError, LeftAction, group_action_violations
from .bundle import FiniteGroup, GroupBundle
from .core import FiniteCategory, Groupoid, IsoWitness, Partition, as_groupoid

KINDS = ("category", "groupoid", "group", "bundle", "action", "group-action", "witness")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message, self.line, self.column = message, line, column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class GroupAction:
    """A group acting on the points ``0..n_points-1``; ``beta[g][x]`` is the image of ``x``."""

    group: FiniteGroup
    n_points: int
    beta: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "beta", tuple(tuple(int(v) for v in row) for row in self.beta))


@dataclass(frozen=True)
class Document:
    kind: str
    name: str
    payload: dict = field(compare=True)

    def build(self) -> Any:
        """The validated structure; raises LawError if its tables break the laws."""
        return _BUILDERS[self.kind](self.payload)


# -- payload <-> objects ---------------------------------------------------


def _row(values) -> str:
    return " ".join("-" if v < 0 else str(int(v)) for v in values)


def _category_payload(c: FiniteCategory) -> dict:
    out = {
        "objects": c.n_objects,
        "source": c.source.tolist(),
        "target": c.target.tolist(),
        "identity": c.identity.tolist(),
        "compose": [_row(r) for r in c.compose.tolist()],
    }
    if isinstance(c, Groupoid):
        out["inverse"] = c.inverse.tolist()
    return out


def _group_payload(g: FiniteGroup) -> dict:
    return {"order": g.order, "table": [_row(r) for r in g.table.tolist()]}


def _table(rows) -> list[list[int]]:
    return [[-1 if tok == "-" else int(tok) for tok in str(r).split()] for r in rows]


def _build_category(p: dict) -> FiniteCategory:
    args = (p["objects"], p["source"], p["target"], p["identity"], _table(p["compose"]))
    if "inverse" in p:
        return Groupoid(*args, p["inverse"])
    return FiniteCategory(*args)


def _build_groupoid(p: dict) -> Groupoid:
    return as_groupoid(_build_category(p))


def _build_group(p: dict) -> FiniteGroup:
    return FiniteGroup(_table(p["table"]))


def _build_bundle(p: dict) -> GroupBundle:
    part = Partition(p["points"], tuple(tuple(c) for c in p["classes"]))
    return GroupBundle(part, tuple(_build_group(f) for f in p["fibers"]))


def _build_action(p: dict) -> LeftAction:
    G, H = _BUILDERS[p["G"]["kind"]](p["G"]), _BUILDERS[p["H"]["kind"]](p["H"])
    table = {(g, h): v for g, h, v in _table(p["table"])}
    return LeftAction(G, H, p["phi"], table)


def _build_group_action(p: dict) -> GroupAction:
    act = GroupAction(_build_group(p["group"]), p["points"], _table(p["action"]))
    bad = group_action_violations(act.group, act.n_points, act.beta)
    if bad:
        raise ActionError(bad)
    return act


def _build_witness(p: dict) -> IsoWitness:
    return IsoWitness(tuple(p["object_map"]), tuple(p["morphism_map"]))


_BUILDERS = {
    "category": _build_category,
    "groupoid": _build_groupoid,
    "group": _build_group,
    "bundle": _build_bundle,
    "action": _build_action,
    "group-action": _build_group_action,
    "witness": _build_witness,
}


def _nested(kind: str, payload: dict) -> dict:
    return {"kind": kind, **payload}


def document_from(obj, name: str) -> Document:
    """Wrap a structure in a document of the matching kind."""
    if isinstance(obj, Groupoid):
        return Document("groupoid", name, _category_payload(obj))
    if isinstance(obj, FiniteCategory):
        return Document("category", name, _category_payload(obj))
    if isinstance(obj, FiniteGroup):
        return Document("group", name, _group_payload(obj))
    if isinstance(obj, GroupBundle):
        return Document("bundle", name, {
            "points": obj.partition.n_points,
            "classes": [list(c) for c in obj.partition.classes],
            "fibers": [_group_payload(f) for f in obj.fibers],
        })
    if isinstance(obj, LeftAction):
        g, h = document_from(obj.G, ""), document_from(obj.H, "")
        return Document("action", name, {
            "G": _nested(g.kind, g.payload),
            "H": _nested(h.kind, h.payload),
            "phi": list(obj.phi),
            "table": [_row((a, b, v)) for (a, b), v in sorted(obj.table.items())],
        })
    if isinstance(obj, GroupAction):
        return Document("group-action", name, {
            "group": _group_payload(obj.group),
            "points": obj.n_points,
            "action": [_row(r) for r in obj.beta],
        })
    if isinstance(obj, IsoWitness):
        return Document("witness", name, {"object_map": list(obj.object_map),
                                          "morphism_map": list(obj.morphism_map)})
    raise TypeError(f"no document kind for {type(obj).__name__}")


# -- emitting ----------------------------------------------------------------


class _Dumper(yaml.SafeDumper):
    pass


def _flow_ints(dumper, data):
    if data and all(isinstance(x, int) for x in data):
        return dumper.represent_sequence("tag:yaml.org,2002:seq", data, flow_style=True)
    return dumper.represent_sequence("tag:yaml.org,2002:seq", data)


_Dumper.add_representer(list, _flow_ints)


def emit_document(doc: Document) -> str:
    return yaml.dump({"kind": doc.kind, "name": doc.name, **doc.payload}, Dumper=_Dumper,
                     sort_keys=False, default_flow_style=False)


def emit_documents(docs) -> str:
    return "---\n".join(emit_document(d) for d in docs)


# -- parsing -----------------------------------------------------------------


class _Marks:
    """Line/column (1-based) of every node, keyed by its path in the document."""

    def __init__(self, node):
        self.marks: dict[tuple, tuple[int, int]] = {}
        self._walk(node, ())

    def _walk(self, node, path):
        self.marks[path] = (node.start_mark.line + 1, node.start_mark.column + 1)
        if isinstance(node, yaml.MappingNode):
            seen = set()
            for k, v in node.value:
                key = k.value
                if key in seen:
                    raise ParseError(f"duplicate key {key!r}", k.start_mark.line + 1, k.start_mark.column + 1)
                seen.add(key)
                self._walk(v, path + (key,))
        elif isinstance(node, yaml.SequenceNode):
            for i, v in enumerate(node.value):
                self._walk(v, path + (i,))

    def error(self, message: str, path: tuple) -> ParseError:
        while path not in self.marks and path:
            path = path[:-1]
        line, col = self.marks.get(path, (None, None))
        return ParseError(message, line, col)


class _Checker:
    def __init__(self, marks: _Marks):
        self.marks = marks

    def fail(self, message, path):
        raise self.marks.error(message, path)

    def get(self, p: dict, key: str, path: tuple, kind=None):
        if not isinstance(p, dict) or key not in p:
            self.fail(f"missing field {key!r}", path)
        v = p[key]
        if kind is int and (not isinstance(v, int) or isinstance(v, bool) or v < 0):
            self.fail(f"{key!r} must be a nonnegative integer", path + (key,))
        if kind is list and not isinstance(v, list):
            self.fail(f"{key!r} must be a list", path + (key,))
        return v

    def ints(self, p, key, path, bound, what) -> list[int]:
        vals = self.get(p, key, path, list)
        for i, v in enumerate(vals):
            if not isinstance(v, int) or isinstance(v, bool):
                self.fail(f"{key}[{i}] is not an integer", path + (key, i))
            if not 0 <= v < bound:
                self.fail(f"{key}[{i}] = {v} is not a valid {what} (0..{bound - 1})", path + (key, i))
        return vals

    def rows(self, p, key, path, n_rows, n_cols, bound, allow_undefined=False) -> list[list[int]]:
        raw = self.get(p, key, path, list)
        if n_rows is not None and len(raw) != n_rows:
            self.fail(f"{key!r} needs {n_rows} rows, got {len(raw)}", path + (key,))
        out = []
        for i, r in enumerate(raw):
            toks = str(r).split()
            if len(toks) != n_cols:
                self.fail(f"{key} row {i} needs {n_cols} entries, got {len(toks)}", path + (key, i))
            row = []
            for tok in toks:
                if tok == "-" and allow_undefined:
                    row.append(-1)
                    continue
                try:
                    v = int(tok)
                except ValueError:
                    self.fail(f"{key} row {i}: bad entry {tok!r}", path + (key, i))
                if not 0 <= v < bound:
                    self.fail(f"{key} row {i}: entry {v} out of range 0..{bound - 1}", path + (key, i))
                row.append(v)
            out.append(row)
        return out

    def category(self, p, path):
        n = self.get(p, "objects", path, int)
        src = self.get(p, "source", path, list)
        m = len(src)
        self.ints(p, "source", path, n, "object")
        self.ints(p, "target", path, n, "object")
        if len(p["target"]) != m:
            self.fail("source and target differ in length", path + ("target",))
        self.ints(p, "identity", path, m, "morphism")
        if len(p["identity"]) != n:
            self.fail(f"identity needs {n} entries", path + ("identity",))
        self.rows(p, "compose", path, m, m, m, allow_undefined=True)
        if "inverse" in p:
            self.ints(p, "inverse", path, m, "morphism")
            if len(p["inverse"]) != m:
                self.fail(f"inverse needs {m} entries", path + ("inverse",))

    groupoid = category

    def group(self, p, path):
        n = self.get(p, "order", path, int)
        self.rows(p, "table", path, n, n, n)

    def bundle(self, p, path):
        n = self.get(p, "points", path, int)
        classes = self.get(p, "classes", path, list)
        seen = set()
        for i, c in enumerate(classes):
            if not isinstance(c, list) or not c:
                self.fail(f"class {i} must be a nonempty list of points", path + ("classes", i))
            for j, x in enumerate(c):
                if not isinstance(x, int) or not 0 <= x < n:
                    self.fail(f"class {i} references unknown point {x!r}", path + ("classes", i, j))
                if x in seen:
                    self.fail(f"point {x} appears in two classes", path + ("classes", i, j))
                seen.add(x)
        missing = sorted(set(range(n)) - seen)
        if missing:
            self.fail(f"points {missing} are in no class", path + ("classes",))
        fibers = self.get(p, "fibers", path, list)
        if len(fibers) != len(classes):
            self.fail(f"{len(classes)} classes but {len(fibers)} fibers", path + ("fibers",))
        for i, f in enumerate(fibers):
            self.group(f, path + ("fibers", i))

    def action(self, p, path):
        for key in ("G", "H"):
            sub = self.get(p, key, path)
            if not isinstance(sub, dict) or sub.get("kind") not in ("category", "groupoid"):
                self.fail(f"{key} must be a nested category or groupoid document", path + (key,))
            self.category(sub, path + (key,))
        G, H = p["G"], p["H"]
        phi = self.ints(p, "phi", path, G["objects"], "object of G")
        if len(phi) != H["objects"]:
            self.fail(f"phi needs {H['objects']} entries", path + ("phi",))
        rows = self.get(p, "table", path, list)
        self.rows(p, "table", path, None, 3, max(len(G["source"]), len(H["source"])))
        table = {}
        for i, (g, h, v) in enumerate(_table(rows)):
            if g >= len(G["source"]) or h >= len(H["source"]) or v >= len(H["source"]):
                self.fail(f"table row {i} refers to a nonexistent morphism", path + ("table", i))
            if (g, h) in table:
                self.fail(f"table row {i} repeats pair {(g, h)}", path + ("table", i))
            table[(g, h)] = v
        domain = {
            (g, h)
            for h in range(len(H["source"]))
            if phi[H["source"][h]] == phi[H["target"][h]]
            for g in range(len(G["source"]))
            if G["source"][g] == phi[H["source"][h]]
        }
        missing = sorted(domain - set(table))
        if missing:
            self.fail(f"table is missing on-domain pairs {missing[:10]}", path + ("table",))
        extra = sorted(set(table) - domain)
        if extra:
            self.fail(f"table has pairs outside the domain {extra[:10]}", path + ("table",))

    def group_action(self, p, path):
        self.group(self.get(p, "group", path), path + ("group",))
        n = self.get(p, "points", path, int)
        self.rows(p, "action", path, p["group"]["order"], n, max(n, 1))

    def witness(self, p, path):
        self.get(p, "object_map", path, list)
        self.get(p, "morphism_map", path, list)


def _check(kind, payload, marks):
    ch = _Checker(marks)
    getattr(ch, kind.replace("-", "_"))(payload, ())


def parse_documents(text: str) -> list[Document]:
    """Parse every document in ``text``, checking structure and index ranges."""
    try:
        nodes = list(yaml.compose_all(text, Loader=yaml.SafeLoader))
        datas = list(yaml.safe_load_all(text))
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        raise ParseError(f"syntax error: {exc.problem}", mark.line + 1 if mark else None,
                         mark.column + 1 if mark else None) from None
    docs, names = [], {}
    for node, data in zip(nodes, datas):
        if node is None:
            continue
        marks = _Marks(node)
        if not isinstance(data, dict):
            raise marks.error("a document must be a mapping", ())
        kind = data.get("kind")
        if kind not in KINDS:
            raise marks.error(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", ("kind",))
        name = str(data.get("name", ""))
        if name and name in names:
            raise marks.error(f"duplicate name {name!r}", ("name",))
        names[name] = True
        payload = {k: v for k, v in data.items() if k not in ("kind", "name")}
        _check(kind, payload, marks)
        docs.append(Document(kind, name, payload))
    return docs


def parse_document(text: str) -> Document:
    docs = parse_documents(text)
    if len(docs) != 1:
        raise ParseError(f"expected one document, found {len(docs)}")
    return docs[0]
