"""JSON documents: instance definitions in, analysis reports out.

Instance document::

    {
      "name": "grigorchuk",                      # optional
      "A": {"kind": "cyclic_product", "orders": [2, 2]}
           | {"kind": "table", "elements": [...], "table": [[label, ...], ...]},
      "B": <same as A>,
      "alphabet": ["0", "1"],
      "action": {"<b label>": ["<image of letter 0>", ...], ...},
      "psi": {"<letter>": {"kind": "aut", "map": {"<a>": "<a>"}}
                        | {"kind": "hom", "map": {"<a>": "<b>"}}}
    }

Table entries may be labels or integer indices. Rationals are written as
``"p/q"`` strings and large integers as decimal strings, so reports are exact
and diff-stable.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from .analyzer import AnalysisOptions, AnalysisReport, TruncationRow, WitnessInfo
from .errors import ParseError, ValidationError
from .groups import FiniteGroup, cyclic_product, make_hom, validate_action, validate_group
from .model import MultispinalInstance, build_instance

FIXTURE_ALIASES = {"gupta-variant": "nonsimple-variant"}


# -- instances ---------------------------------------------------------------


def _group_from_spec(spec: Any, what: str) -> FiniteGroup:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ParseError(f"{what} must be an object with a 'kind'")
    kind = spec["kind"]
    if kind == "cyclic_product":
        orders = spec.get("orders")
        if not isinstance(orders, list) or not all(isinstance(n, int) for n in orders):
            raise ParseError(f"{what}.orders must be a list of integers")
        return cyclic_product(orders)
    if kind == "table":
        elements = spec.get("elements")
        table = spec.get("table")
        if not isinstance(elements, list) or not isinstance(table, list):
            raise ParseError(f"{what} needs 'elements' and 'table' lists")
        elements = [str(e) for e in elements]
        pos = {e: i for i, e in enumerate(elements)}
        rows = []
        for row in table:
            if not isinstance(row, list):
                raise ParseError(f"{what}.table rows must be lists")
            out = []
            for v in row:
                if isinstance(v, bool):
                    raise ParseError(f"{what}.table entry {v!r} is not an element")
                if isinstance(v, int):
                    out.append(v)
                elif isinstance(v, str) and v in pos:
                    out.append(pos[v])
                else:
                    raise ParseError(f"{what}.table entry {v!r} does not resolve")
            rows.append(out)
        return validate_group(elements, rows)
    raise ParseError(f"{what}.kind must be 'cyclic_product' or 'table', got {kind!r}")


def _lookup(group: FiniteGroup, label: Any, what: str) -> int:
    try:
        return group.index(str(label))
    except KeyError:
        raise ParseError(f"{what}: unknown element {label!r}") from None


def instance_from_document(doc: Any) -> MultispinalInstance:
    if not isinstance(doc, dict):
        raise ParseError("instance document must be a JSON object")
    for key in ("A", "B", "alphabet", "action", "psi"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}")
    A = _group_from_spec(doc["A"], "A")
    B = _group_from_spec(doc["B"], "B")
    alphabet = doc["alphabet"]
    if not isinstance(alphabet, list) or not alphabet:
        raise ParseError("alphabet must be a nonempty list")
    alphabet = [str(x) for x in alphabet]
    letter = {x: i for i, x in enumerate(alphabet)}

    action = doc["action"]
    if not isinstance(action, dict):
        raise ParseError("action must map B labels to permutations")
    perms: list[list[int] | None] = [None] * B.order
    for label, images in action.items():
        b = _lookup(B, label, "action")
        if not isinstance(images, list) or len(images) != len(alphabet):
            raise ParseError(f"action[{label!r}] must list one image per letter")
        try:
            perms[b] = [letter[str(y)] for y in images]
        except KeyError as exc:
            raise ParseError(f"action[{label!r}]: unknown letter {exc.args[0]!r}") from None
    missing = [B.elements[b] for b, p in enumerate(perms) if p is None]
    if missing:
        raise ParseError(f"action is missing B elements {missing}")
    act = validate_action(B, alphabet, perms)

    psi_doc = doc["psi"]
    if not isinstance(psi_doc, dict) or set(map(str, psi_doc)) != set(alphabet):
        raise ParseError("psi must have exactly one entry per letter")
    psi = []
    for x in alphabet:
        entry = psi_doc[x]
        if not isinstance(entry, dict) or entry.get("kind") not in ("aut", "hom"):
            raise ParseError(f"psi[{x!r}] must have kind 'aut' or 'hom'")
        target = A if entry["kind"] == "aut" else B
        mapping = entry.get("map")
        if not isinstance(mapping, dict) or len(mapping) != A.order:
            raise ParseError(f"psi[{x!r}].map must give an image for every element of A")
        images = [None] * A.order
        for src, dst in mapping.items():
            images[_lookup(A, src, f"psi[{x!r}]")] = _lookup(target, dst, f"psi[{x!r}]")
        if None in images:
            raise ParseError(f"psi[{x!r}].map has duplicate keys")
        psi.append((entry["kind"], make_hom(A, target, images)))
    return build_instance(A, B, act, psi)


def _group_spec(group: FiniteGroup) -> dict:
    return {
        "kind": "table",
        "elements": list(group.elements),
        "table": [[group.elements[v] for v in row] for row in group.table],
    }


def instance_to_document(instance: MultispinalInstance, name: str | None = None) -> dict:
    A, B = instance.A, instance.B
    doc: dict[str, Any] = {}
    if name is not None:
        doc["name"] = name
    doc["A"] = _group_spec(A)
    doc["B"] = _group_spec(B)
    doc["alphabet"] = list(instance.X)
    doc["action"] = {
        B.elements[b]: [instance.X[y] for y in instance.action.perms[b]] for b in range(B.order)
    }
    psi = {}
    for x, h in enumerate(instance.psi):
        target = B if x in instance.Y else A
        psi[instance.X[x]] = {
            "kind": "hom" if x in instance.Y else "aut",
            "map": {A.elements[a]: target.elements[h(a)] for a in range(A.order)},
        }
    doc["psi"] = psi
    return doc


def bundled_fixtures() -> list[str]:
    root = resources.files("multispinal.fixtures")
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))


def read_fixture_text(name: str) -> str:
    stem = name[:-5] if name.endswith(".json") else name
    stem = FIXTURE_ALIASES.get(stem, stem)
    path = resources.files("multispinal.fixtures") / f"{stem}.json"
    if not path.is_file():
        raise ParseError(f"no bundled fixture named {name!r}")
    return path.read_text(encoding="utf-8")


def load_instance(path: str | Path) -> MultispinalInstance:
    """Load and validate an instance file.

    A path that does not exist but names a bundled fixture (``grigorchuk.json``,
    ``nonsimple-variant.json``, ``z3xz3.json``) loads the fixture.
    """
    p = Path(path)
    if p.is_file():
        text = p.read_text(encoding="utf-8")
    elif p.parent == Path("."):
        text = read_fixture_text(p.name)
    else:
        raise ParseError(f"cannot read {str(path)!r}")
    return loads_instance(text)


def loads_instance(text: str) -> MultispinalInstance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    try:
        return instance_from_document(doc)
    except ValidationError:
        raise
    except (TypeError, ValueError, KeyError, AttributeError) as exc:
        raise ParseError(f"malformed instance document: {exc}") from None


# -- reports -----------------------------------------------------------------


def rational_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    num, sep, den = s.partition("/")
    if not sep:
        raise ValueError(f"rational must be written p/q, got {s!r}")
    return Fraction(int(num), int(den))


def report_to_dict(r: AnalysisReport) -> dict:
    out: dict[str, Any] = {
        "instance": {
            "A_order": r.A_order,
            "B_order": r.B_order,
            "alphabet": list(r.alphabet),
            "Y": list(r.Y),
            "transitive": r.transitive,
            "BA_size": r.BA_size,
            "nucleus_size": r.nucleus_size,
            "nucleus": list(r.nucleus),
        },
        "A_elements": list(r.A_elements),
        "psi": {a: rational_str(v) for a, v in zip(r.A_elements, r.psi)},
        "gram_matrix": [[rational_str(v) for v in row] for row in r.gram],
        "scale": str(r.scale),
        "scaled_matrix": [[str(v) for v in row] for row in r.scaled_matrix],
        "determinant": rational_str(r.determinant),
        "scaled_determinant": str(r.scaled_determinant),
        "gram_psd": r.gram_psd,
        "kernel_rank": r.kernel_rank,
        "matrix_criterion": r.matrix_criterion,
        "kernel_criterion": r.kernel_criterion,
        "criteria_agree": r.criteria_agree,
        "amenability": r.amenability,
        "verdict": r.verdict,
        "kirchberg": r.kirchberg,
        "witness": None
        if r.witness is None
        else {
            "agent": r.witness.agent,
            "period": r.witness.period,
            "escape": r.witness.escape,
            "phases": list(r.witness.phases),
        },
        "truncation": None
        if r.truncation is None
        else [
            {
                "agent": t.agent,
                "depth": t.depth,
                "count": str(t.count),
                "ratio": rational_str(t.ratio),
                "psi": rational_str(t.psi),
                "gap": rational_str(t.gap),
            }
            for t in r.truncation
        ],
        "options": {
            "truncation_depth": r.options.truncation_depth,
            "witness_period": r.options.witness_period,
            "witness_preperiod": r.options.witness_preperiod,
            "timing": r.options.timing,
        },
    }
    if r.timing is not None:
        out["timing"] = {name: seconds for name, seconds in r.timing}
    return out


def report_from_dict(d: dict) -> AnalysisReport:
    inst = d["instance"]
    elements = tuple(d["A_elements"])
    w = d["witness"]
    t = d["truncation"]
    o = d["options"]
    return AnalysisReport(
        A_order=inst["A_order"],
        B_order=inst["B_order"],
        alphabet=tuple(inst["alphabet"]),
        Y=tuple(inst["Y"]),
        transitive=inst["transitive"],
        BA_size=inst["BA_size"],
        nucleus=tuple(inst["nucleus"]),
        A_elements=elements,
        psi=tuple(parse_rational(d["psi"][a]) for a in elements),
        gram=tuple(tuple(parse_rational(v) for v in row) for row in d["gram_matrix"]),
        scale=int(d["scale"]),
        scaled_matrix=tuple(tuple(int(v) for v in row) for row in d["scaled_matrix"]),
        determinant=parse_rational(d["determinant"]),
        scaled_determinant=int(d["scaled_determinant"]),
        gram_psd=d["gram_psd"],
        kernel_rank=d["kernel_rank"],
        matrix_criterion=d["matrix_criterion"],
        kernel_criterion=d["kernel_criterion"],
        criteria_agree=d["criteria_agree"],
        amenability=d["amenability"],
        verdict=d["verdict"],
        kirchberg=d["kirchberg"],
        witness=None if w is None else WitnessInfo(w["agent"], w["period"], w["escape"], tuple(w["phases"])),
        truncation=None
        if t is None
        else tuple(
            TruncationRow(
                row["agent"],
                row["depth"],
                int(row["count"]),
                parse_rational(row["ratio"]),
                parse_rational(row["psi"]),
                parse_rational(row["gap"]),
            )
            for row in t
        ),
        options=AnalysisOptions(
            truncation_depth=o["truncation_depth"],
            witness_period=o["witness_period"],
            witness_preperiod=o["witness_preperiod"],
            timing=o["timing"],
        ),
        timing=None if "timing" not in d else tuple(d["timing"].items()),
    )


def dumps_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
