"""Reading and writing the structures as self-describing documents.

Two concrete syntaxes share one schema: JSON (a `kind` field selects the
shape) and a terse line-oriented text form for hand-written fixtures.
Structural problems (bad syntax, missing fields, unknown names) raise
ParseError with line and field; axiom failures are the validators'
business and come back as Diagnostic lists from realize().
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Union

from . import _bits
from .bidcpo import BiDcpo, EmbeddedBiDcpo, validate_bidcpo, validate_embedded_bidcpo
from .kospace import CRelation, Diagnostic, KoSpace, validate_crelation, validate_kospace
from .localcompact import Dirspace, dirspace_violation
from .order import FinLattice, FinPoset, WeakRel, lattice_violation, subset_name
from .polarity import DoubleBaseLattice, GaloisMorphism, Polarity, concept_lattice

KINDS = ("poset", "kospace", "polarity", "embedded", "dirspace", "crelation", "galois")

# kinds expressible in the text syntax; the two morphism kinds nest whole
# structures and are JSON-only
TEXT_KINDS = ("poset", "kospace", "polarity", "embedded", "dirspace")


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, field: str = "") -> None:
        where = []
        if line:
            where.append(f"line {line}")
        if field:
            where.append(f"field {field!r}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.line = line
        self.field = field


@dataclass(frozen=True)
class ParsedDoc:
    """Syntax-checked but not yet validated content."""

    kind: str
    payload: dict


Structure = Union[
    FinPoset, KoSpace, BiDcpo, EmbeddedBiDcpo, Dirspace, CRelation, GaloisMorphism
]


# ---------------------------------------------------------------- parsing

def parse_document(text: str) -> ParsedDoc:
    """Dispatch on the first non-space character: '{' means JSON."""
    stripped = text.lstrip()
    if not stripped:
        raise ParseError("empty document")
    if stripped[0] == "{":
        return _parse_json(text)
    return _parse_text(text)


def _parse_json(text: str) -> ParsedDoc:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as ex:
        raise ParseError(ex.msg, line=ex.lineno) from ex
    return _json_doc(data)


def _json_doc(data: object) -> ParsedDoc:
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    kind = data.get("kind")
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", field="kind")
    payload: dict = {}
    for field in _FIELDS[kind]:
        if field not in data:
            raise ParseError(f"missing field for kind {kind!r}", field=field)
    extra = set(data) - {"kind"} - set(_FIELDS[kind])
    if extra:
        raise ParseError(f"unexpected field for kind {kind!r}", field=sorted(extra)[0])
    if kind in ("crelation", "galois"):
        payload["source"] = _json_doc(_expect(data, "source", dict))
        payload["target"] = _json_doc(_expect(data, "target", dict))
        inner = "kospace" if kind == "crelation" else "polarity"
        for end in ("source", "target"):
            if payload[end].kind != inner:
                raise ParseError(f"{kind} endpoints must be {inner} documents", field=end)
        if kind == "crelation":
            payload["rel"] = _pair_list(data, "rel")
        else:
            payload["fwd"] = _pair_list(data, "fwd")
            payload["bwd"] = _pair_list(data, "bwd")
        return ParsedDoc(kind, payload)
    for field in _FIELDS[kind]:
        if field in ("elements", "points", "k", "o", "kset", "oset"):
            payload[field] = _name_list(data, field)
        elif field in ("leq", "rel"):
            payload[field] = _pair_list(data, field)
        elif field in ("kfam", "ofam", "opens"):
            payload[field] = _family(data, field)
    return ParsedDoc(kind, payload)


_FIELDS = {
    "poset": ("elements", "leq"),
    "kospace": ("elements", "leq", "kfam", "ofam"),
    "polarity": ("k", "o", "rel"),
    "embedded": ("elements", "leq", "kset", "oset"),
    "dirspace": ("points", "opens"),
    "crelation": ("source", "target", "rel"),
    "galois": ("source", "target", "fwd", "bwd"),
}


def _expect(data: dict, field: str, typ: type):
    v = data[field]
    if not isinstance(v, typ):
        raise ParseError(f"expected {typ.__name__}", field=field)
    return v


def _name_list(data: dict, field: str) -> list[str]:
    v = _expect(data, field, list)
    out = []
    for item in v:
        if not isinstance(item, str) or not item:
            raise ParseError("names must be nonempty strings", field=field)
        out.append(item)
    return out


def _pair_list(data: dict, field: str) -> list[tuple[str, str]]:
    v = _expect(data, field, list)
    out = []
    for item in v:
        if not (isinstance(item, list) and len(item) == 2 and all(isinstance(x, str) for x in item)):
            raise ParseError("pairs must be two-element string arrays", field=field)
        out.append((item[0], item[1]))
    return out


def _family(data: dict, field: str) -> list[list[str]]:
    v = _expect(data, field, list)
    out = []
    for item in v:
        if not (isinstance(item, list) and all(isinstance(x, str) for x in item)):
            raise ParseError("family members must be arrays of names", field=field)
        out.append(list(item))
    return out


_TEXT_BAD = set("<>{},")


def _parse_text(text: str) -> ParsedDoc:
    fields: dict[str, tuple[int, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise ParseError("expected 'field: value'", line=lineno)
        key, _, value = line.partition(":")
        key = key.strip()
        if key in fields:
            raise ParseError("duplicate field", line=lineno, field=key)
        fields[key] = (lineno, value.strip())
    if "kind" not in fields:
        raise ParseError("missing field", field="kind")
    kind = fields.pop("kind")[1]
    if kind not in TEXT_KINDS:
        raise ParseError(
            f"unknown kind {kind!r}; the text syntax supports {', '.join(TEXT_KINDS)}",
            field="kind",
        )
    payload: dict = {}
    for field in _FIELDS[kind]:
        if field not in fields:
            raise ParseError(f"missing field for kind {kind!r}", field=field)
    for key, (lineno, value) in fields.items():
        if key not in _FIELDS[kind]:
            raise ParseError(f"unexpected field for kind {kind!r}", line=lineno, field=key)
        tokens = value.split()
        if key in ("elements", "points", "k", "o", "kset", "oset"):
            for t in tokens:
                if set(t) & _TEXT_BAD:
                    raise ParseError(f"name {t!r} uses a reserved character", line=lineno, field=key)
            payload[key] = tokens
        elif key in ("leq", "rel"):
            pairs = []
            for t in tokens:
                if t.count("<") != 1:
                    raise ParseError(f"expected 'a<b', got {t!r}", line=lineno, field=key)
                a, _, b = t.partition("<")
                if not a or not b:
                    raise ParseError(f"expected 'a<b', got {t!r}", line=lineno, field=key)
                pairs.append((a, b))
            payload[key] = pairs
        else:
            members = []
            for t in tokens:
                if not (t.startswith("{") and t.endswith("}")):
                    raise ParseError(f"expected '{{a,b}}', got {t!r}", line=lineno, field=key)
                body = t[1:-1]
                members.append([] if not body else body.split(","))
            payload[key] = members
    return ParsedDoc(kind, payload)


# ---------------------------------------------------------------- realizing

def realize(
    doc: ParsedDoc, override_guardrail: bool = False
) -> Union[Structure, list[Diagnostic]]:
    """Build and validate the structure a parsed document describes.

    Name errors inside relations or families are still ParseError (the
    document is self-inconsistent); axiom failures return Diagnostics.
    """
    p = doc.payload
    if doc.kind == "poset":
        return _build_poset(p["elements"], p["leq"])
    if doc.kind == "kospace":
        base = _build_poset(p["elements"], p["leq"])
        if isinstance(base, list):
            return base
        kfam = [_mask(base, m, "kfam") for m in p["kfam"]]
        ofam = [_mask(base, m, "ofam") for m in p["ofam"]]
        return validate_kospace(base, kfam, ofam, override_guardrail)
    if doc.kind == "polarity":
        pol = _build_polarity(p)
        return validate_bidcpo(pol, override_guardrail)
    if doc.kind == "embedded":
        base = _build_poset(p["elements"], p["leq"])
        if isinstance(base, list):
            return base
        bad = lattice_violation(base)
        if bad is not None:
            return [Diagnostic("lattice", bad, ())]
        lat = FinLattice(base)
        kmask = _mask(base, p["kset"], "kset")
        omask = _mask(base, p["oset"], "oset")
        try:
            dbl = DoubleBaseLattice(lat, kmask, omask)
        except ValueError as ex:
            return [Diagnostic("density", str(ex), ())]
        return validate_embedded_bidcpo(dbl, override_guardrail)
    if doc.kind == "dirspace":
        seen = set()
        for name in p["points"]:
            if name in seen:
                raise ParseError(f"duplicate point {name!r}", field="points")
            seen.add(name)
        index = {x: i for i, x in enumerate(p["points"])}
        masks = set()
        for member in p["opens"]:
            for name in member:
                if name not in index:
                    raise ParseError(f"unknown point {name!r}", field="opens")
            masks.add(_bits.mask_of(index[x] for x in member))
        d = Dirspace(tuple(p["points"]), tuple(sorted(masks)))
        bad = dirspace_violation(d, override_guardrail)
        if bad is not None:
            return [Diagnostic("directed-unions", bad, ())]
        return d
    if doc.kind == "crelation":
        source = realize(p["source"], override_guardrail)
        if isinstance(source, list):
            return source
        target = realize(p["target"], override_guardrail)
        if isinstance(target, list):
            return target
        assert isinstance(source, KoSpace) and isinstance(target, KoSpace)
        rows = [0] * source.n
        for a, b in p["rel"]:
            if a not in source.base._index:
                raise ParseError(f"unknown source element {a!r}", field="rel")
            if b not in target.base._index:
                raise ParseError(f"unknown target element {b!r}", field="rel")
            rows[source.base.index(a)] |= _bits.bit(target.base.index(b))
        rel = WeakRel(source.base, target.base, tuple(rows))
        return validate_crelation(rel, source, target)
    if doc.kind == "galois":
        b1 = realize(p["source"], override_guardrail)
        if isinstance(b1, list):
            return b1
        b2 = realize(p["target"], override_guardrail)
        if isinstance(b2, list):
            return b2
        assert isinstance(b1, BiDcpo) and isinstance(b2, BiDcpo)
        fwd = _fn_table(p["fwd"], b1.pol.kset, b2.pol.kset, "fwd")
        bwd = _fn_table(p["bwd"], b2.pol.oset, b1.pol.oset, "bwd")
        try:
            return GaloisMorphism(b1.pol, b2.pol, fwd, bwd)
        except ValueError as ex:
            return [Diagnostic("galois", str(ex), ())]
    raise AssertionError(doc.kind)


def _build_poset(elements: list[str], leq: list[tuple[str, str]]) -> Union[FinPoset, list[Diagnostic]]:
    try:
        return FinPoset.from_leq(elements, leq)
    except ValueError as ex:
        msg = str(ex)
        if "unknown element" in msg or "duplicate element" in msg:
            raise ParseError(msg, field="leq" if "unknown" in msg else "elements") from ex
        return [Diagnostic("order", msg, ())]


def _build_polarity(p: dict) -> Polarity:
    for side, names in (("k", p["k"]), ("o", p["o"])):
        if len(set(names)) != len(names):
            raise ParseError("duplicate names", field=side)
    known_k = set(p["k"])
    known_o = set(p["o"])
    for a, b in p["rel"]:
        if a not in known_k:
            raise ParseError(f"unknown k-element {a!r}", field="rel")
        if b not in known_o:
            raise ParseError(f"unknown o-element {b!r}", field="rel")
    return Polarity.from_pairs(p["k"], p["o"], p["rel"])


def _mask(base: FinPoset, names: list[str], field: str) -> int:
    for name in names:
        if name not in base._index:
            raise ParseError(f"unknown element {name!r}", field=field)
    return base.mask_from_names(names)


def _fn_table(
    pairs: list[tuple[str, str]], dom: tuple[str, ...], cod: tuple[str, ...], field: str
) -> tuple[int, ...]:
    table: dict[str, str] = {}
    for a, b in pairs:
        if a in table:
            raise ParseError(f"{a!r} mapped twice", field=field)
        table[a] = b
    missing = [a for a in dom if a not in table]
    if missing:
        raise ParseError(f"no image for {missing[0]!r}", field=field)
    extra = [a for a in table if a not in dom]
    if extra:
        raise ParseError(f"unknown domain element {sorted(extra)[0]!r}", field=field)
    cod_ix = {x: i for i, x in enumerate(cod)}
    for a, b in table.items():
        if b not in cod_ix:
            raise ParseError(f"unknown codomain element {b!r}", field=field)
    return tuple(cod_ix[table[a]] for a in dom)


# ---------------------------------------------------------------- writing

def document_of(s: Structure) -> dict:
    """The JSON-shaped dict for any supported structure, fully sorted."""
    if isinstance(s, FinPoset):
        return {"kind": "poset", **_poset_fields(s)}
    if isinstance(s, KoSpace):
        return {
            "kind": "kospace",
            **_poset_fields(s.base),
            "kfam": [_names(s.base, m) for m in s.kfam.members],
            "ofam": [_names(s.base, m) for m in s.ofam.members],
        }
    if isinstance(s, (BiDcpo, Polarity)):
        pol = s.pol if isinstance(s, BiDcpo) else s
        return {
            "kind": "polarity",
            "k": list(pol.kset),
            "o": list(pol.oset),
            "rel": [list(pair) for pair in pol.pairs()],
        }
    if isinstance(s, (EmbeddedBiDcpo, DoubleBaseLattice)):
        dbl = s.dbl if isinstance(s, EmbeddedBiDcpo) else s
        carrier = dbl.lattice.carrier
        return {
            "kind": "embedded",
            **_poset_fields(carrier),
            "kset": list(carrier.names_from_mask(dbl.kset_mask)),
            "oset": list(carrier.names_from_mask(dbl.oset_mask)),
        }
    if isinstance(s, Dirspace):
        return {
            "kind": "dirspace",
            "points": list(s.points),
            "opens": [sorted(x for i, x in enumerate(s.points) if m >> i & 1) for m in s.opens],
        }
    if isinstance(s, CRelation):
        return {
            "kind": "crelation",
            "source": document_of(s.source),
            "target": document_of(s.target),
            "rel": [
                [s.source.base.elements[i], s.target.base.elements[j]]
                for i in range(s.source.n)
                for j in _bits.bits_of(s.rel.rows[i])
            ],
        }
    if isinstance(s, GaloisMorphism):
        return {
            "kind": "galois",
            "source": document_of(s.source),
            "target": document_of(s.target),
            "fwd": [[k, s.target.kset[s.fwd[i]]] for i, k in enumerate(s.source.kset)],
            "bwd": [[u, s.source.oset[s.bwd[j]]] for j, u in enumerate(s.target.oset)],
        }
    raise TypeError(f"cannot serialize {type(s).__name__}")


def _poset_fields(p: FinPoset) -> dict:
    return {
        "elements": list(p.elements),
        "leq": sorted([p.elements[i], p.elements[j]] for i, j in p.covers()),
    }


def _names(p: FinPoset, mask: int) -> list[str]:
    return list(p.names_from_mask(mask))


def to_json(s: Structure) -> str:
    return json.dumps(document_of(s), indent=2, sort_keys=True) + "\n"


def to_text(s: Structure) -> str:
    doc = document_of(s)
    kind = doc["kind"]
    if kind not in TEXT_KINDS:
        raise ValueError(f"kind {kind!r} has no text form; use JSON")
    for field in ("elements", "points", "k", "o"):
        for name in doc.get(field, ()):
            if set(name) & _TEXT_BAD:
                raise ValueError(
                    f"name {name!r} uses a character the text syntax reserves; use JSON"
                )
    lines = [f"kind: {kind}"]
    for field in _FIELDS[kind]:
        value = doc[field]
        if field in ("elements", "points", "k", "o", "kset", "oset"):
            body = " ".join(value)
        elif field in ("leq", "rel"):
            body = " ".join(f"{a}<{b}" for a, b in value)
        else:
            body = " ".join("{" + ",".join(member) + "}" for member in value)
        lines.append(f"{field}: {body}".rstrip())
    return "\n".join(lines) + "\n"


def render(s: Structure, fmt: str) -> str:
    if fmt == "json":
        return to_json(s)
    if fmt == "text":
        return to_text(s)
    raise ValueError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------- DOT export

def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _hasse_lines(p: FinPoset, label_of=None) -> list[str]:
    out = []
    for i, name in enumerate(p.elements):
        label = name if label_of is None else label_of(i)
        out.append(f"  {_dot_id(name)} [label={_dot_id(label)}];")
    for i, j in p.covers():
        out.append(f"  {_dot_id(p.elements[i])} -> {_dot_id(p.elements[j])};")
    return out


def export_dot(s: Structure) -> str:
    """Hasse diagram, drawn upward. Concept lattices carry extent/intent
    labels, embedded structures mark side membership, ko-spaces list their
    families in the graph label."""
    head = ["digraph {", "  rankdir=BT;", "  node [shape=box];"]
    if isinstance(s, FinPoset):
        return "\n".join(head + _hasse_lines(s) + ["}"]) + "\n"
    if isinstance(s, KoSpace):
        kf = " ".join(subset_name(s.base, m) for m in s.kfam.members)
        of = " ".join(subset_name(s.base, m) for m in s.ofam.members)
        body = _hasse_lines(s.base)
        body.append(f"  label={_dot_id(f'kfam: {kf}  ofam: {of}')};")
        return "\n".join(head + body + ["}"]) + "\n"
    if isinstance(s, (BiDcpo, Polarity)):
        pol = s.pol if isinstance(s, BiDcpo) else s
        cl = concept_lattice(pol)
        carrier = cl.lattice.carrier

        def label(i: int) -> str:
            return cl.concept_label(i)

        return "\n".join(head + _hasse_lines(carrier, label) + ["}"]) + "\n"
    if isinstance(s, (EmbeddedBiDcpo, DoubleBaseLattice)):
        dbl = s.dbl if isinstance(s, EmbeddedBiDcpo) else s
        carrier = dbl.lattice.carrier

        def label(i: int) -> str:
            marks = ""
            if dbl.kset_mask >> i & 1:
                marks += "K"
            if dbl.oset_mask >> i & 1:
                marks += "O"
            return f"{carrier.elements[i]} [{marks}]" if marks else carrier.elements[i]

        return "\n".join(head + _hasse_lines(carrier, label) + ["}"]) + "\n"
    if isinstance(s, Dirspace):
        body = [f"  {_dot_id(x)};" for x in s.points]
        opens = " ".join(s.sname(m) for m in s.opens)
        body.append(f"  label={_dot_id(f'opens: {opens}')};")
        return "\n".join(head + body + ["}"]) + "\n"
    raise TypeError(f"cannot export {type(s).__name__}")
