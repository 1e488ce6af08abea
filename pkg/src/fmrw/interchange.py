"""Interchange formats for short lists and their failure data.

Three forms round-trip losslessly:

* short-list CSV: one row per cut set, cells ``CHANNEL:STATE``, columns
  padded to the widest cut set (human-facing table layout);
* short-list JSON: target, warnings and cut sets (used by system models);
* fault-tree interchange: an XML document carrying the cut sets plus the
  failure model of every referenced event, and a flat CSV join with one row
  per (cut set, event) pair for tools that prefer tabular import.

Interchange files carry full float precision; human reports round to three
significant digits.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
import xml.etree.ElementTree as ET
from typing import Mapping

from fmrw.exceptions import MissingFailureDataError, ProgramStructureError
from fmrw.quant import Dormant, FailureDatabase, FailureModel, Fixed, Rate
from fmrw.reasoning.literals import ChannelState, CutSet, Mode, ShortList, StateLiteral

SCHEMA_VERSION = "1"


def _parse_state_literal(text: str) -> StateLiteral:
    channel, sep, state = text.rpartition(":")
    if not sep:
        raise ProgramStructureError(f"bad literal {text!r}, expected CHANNEL:STATE")
    try:
        return StateLiteral(channel, ChannelState(state))
    except ValueError:
        raise ProgramStructureError(f"bad channel state in {text!r}") from None


# -- short-list CSV (table layout) -------------------------------------------


def shortlist_to_csv(sl: ShortList) -> str:
    width = max((len(cs.literals) for cs in sl.cut_sets), default=0)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    for cs in sl.cut_sets:
        cells = [str(l) for l in cs.sorted_literals()]
        cells += [""] * (width - len(cells))
        writer.writerow(cells)
    return out.getvalue()


def shortlist_from_csv(text: str, target_net: str, mode: Mode | str) -> ShortList:
    cut_sets = []
    for row in csv.reader(io.StringIO(text)):
        literals = frozenset(_parse_state_literal(c) for c in row if c)
        if literals:
            cut_sets.append(CutSet(literals))
    cut_sets.sort(key=CutSet.sort_key)
    return ShortList(target_net, Mode(mode), tuple(cut_sets))


# -- short-list JSON -----------------------------------------------------------


def shortlist_to_json(sl: ShortList) -> str:
    doc = {
        "target": {"net": sl.target_net, "mode": sl.mode.value},
        "warnings": list(sl.warnings),
        "cut_sets": [
            {"literals": [str(l) for l in cs.sorted_literals()], "approx": cs.approx}
            for cs in sl.cut_sets
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def shortlist_from_json(text: str) -> ShortList:
    doc = json.loads(text)
    cut_sets = tuple(
        CutSet(
            frozenset(_parse_state_literal(l) for l in entry["literals"]),
            bool(entry.get("approx", False)),
        )
        for entry in doc["cut_sets"]
    )
    return ShortList(
        target_net=doc["target"]["net"],
        mode=Mode(doc["target"]["mode"]),
        cut_sets=cut_sets,
        warnings=tuple(doc.get("warnings", [])),
    )


# -- XML interchange -----------------------------------------------------------


def _collect_bindings(sl: ShortList, db: FailureDatabase) -> dict[str, FailureModel]:
    bindings: dict[str, FailureModel] = {}
    for cs in sl.cut_sets:
        for lit in cs.literals:
            bindings[str(lit)] = db.model(str(lit))
    return bindings


def export_hiphops_xml(sl: ShortList, db: FailureDatabase, path: str | os.PathLike) -> None:
    root = ET.Element("FMRExport", version=SCHEMA_VERSION)
    ET.SubElement(root, "Target", net=sl.target_net, mode=sl.mode.value)
    events = ET.SubElement(root, "Events")
    for event_id, model in sorted(_collect_bindings(sl, db).items()):
        attrs = {"id": event_id}
        if isinstance(model, Fixed):
            attrs.update(model="FIXED", p=repr(model.p))
        elif isinstance(model, Rate):
            attrs.update(model="RATE", **{"lambda": repr(model.lam)}, mttr=repr(model.mttr))
        else:
            attrs.update(model="DORMANT", **{"lambda": repr(model.lam)}, tau=repr(model.tau))
        ET.SubElement(events, "Event", attrs)
    cut_sets = ET.SubElement(root, "CutSets")
    for cs in sl.cut_sets:
        cs_el = ET.SubElement(cut_sets, "CutSet")
        if cs.approx:
            cs_el.set("approx", "true")
        for lit in cs.sorted_literals():
            ET.SubElement(cs_el, "Ref", id=str(lit))
    tree = ET.ElementTree(root)
    ET.indent(tree)
    _atomic_write_bytes(path, ET.tostring(root, encoding="utf-8", xml_declaration=True) + b"\n")


def import_hiphops_xml(path: str | os.PathLike) -> tuple[ShortList, dict[str, FailureModel]]:
    root = ET.parse(path).getroot()
    if root.tag != "FMRExport" or root.get("version") != SCHEMA_VERSION:
        raise ProgramStructureError(f"{path}: not a version-{SCHEMA_VERSION} FMRExport file")
    target = root.find("Target")
    bindings: dict[str, FailureModel] = {}
    for ev in root.find("Events") or ():
        bindings[ev.get("id")] = _model_from_attrs(ev)
    cut_sets = []
    for cs_el in root.find("CutSets") or ():
        literals = frozenset(_parse_state_literal(ref.get("id")) for ref in cs_el)
        cut_sets.append(CutSet(literals, cs_el.get("approx") == "true"))
    cut_sets.sort(key=CutSet.sort_key)
    sl = ShortList(target.get("net"), Mode(target.get("mode")), tuple(cut_sets))
    return sl, bindings


def _model_from_attrs(el: ET.Element) -> FailureModel:
    kind = el.get("model")
    if kind == "FIXED":
        return Fixed(float(el.get("p")))
    if kind == "RATE":
        return Rate(float(el.get("lambda")), float(el.get("mttr")))
    if kind == "DORMANT":
        return Dormant(float(el.get("lambda")), float(el.get("tau")))
    raise ProgramStructureError(f"unknown model {kind!r} in XML event {el.get('id')!r}")


# -- flat CSV interchange --------------------------------------------------------

CFT_CSV_HEADER = [
    "cutset_index",
    "event_id",
    "model",
    "p",
    "lambda_per_hour",
    "mttr_hours",
    "tau_hours",
]


def export_cft_csv(sl: ShortList, db: FailureDatabase, path: str | os.PathLike) -> None:
    from fmrw.quant import model_row

    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CFT_CSV_HEADER)
    for index, cs in enumerate(sl.cut_sets, start=1):
        for lit in cs.sorted_literals():
            writer.writerow([str(index)] + model_row(str(lit), db.model(str(lit))))
    _atomic_write_bytes(path, out.getvalue().encode("utf-8"))


def import_cft_csv(
    path: str | os.PathLike, target_net: str, mode: Mode | str
) -> tuple[ShortList, dict[str, FailureModel]]:
    with open(path, "r", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CFT_CSV_HEADER:
            raise ProgramStructureError(
                f"{path}: header must be {','.join(CFT_CSV_HEADER)}"
            )
        groups: dict[int, set[StateLiteral]] = {}
        bindings: dict[str, FailureModel] = {}
        for row in reader:
            idx = int(row["cutset_index"])
            lit = _parse_state_literal(row["event_id"])
            groups.setdefault(idx, set()).add(lit)
            kind = row["model"]
            if kind == "FIXED":
                bindings[row["event_id"]] = Fixed(float(row["p"]))
            elif kind == "RATE":
                bindings[row["event_id"]] = Rate(
                    float(row["lambda_per_hour"]), float(row["mttr_hours"])
                )
            elif kind == "DORMANT":
                bindings[row["event_id"]] = Dormant(
                    float(row["lambda_per_hour"]), float(row["tau_hours"])
                )
            else:
                raise ProgramStructureError(f"unknown model {kind!r}")
    cut_sets = sorted(
        (CutSet(frozenset(lits)) for lits in groups.values()), key=CutSet.sort_key
    )
    return ShortList(target_net, Mode(mode), tuple(cut_sets)), bindings


# -- atomic file writes -----------------------------------------------------------


def _atomic_write_bytes(path: str | os.PathLike, data: bytes) -> None:
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".fmrw-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def atomic_write_text(path: str | os.PathLike, text: str) -> None:
    _atomic_write_bytes(path, text.encode("utf-8"))
