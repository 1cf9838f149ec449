"""Text formats for representations (``.rep``) and formula batches (``.fml``).

A ``.rep`` file is line-oriented.  ``#`` starts a comment (whole-line or
trailing), blank lines are ignored, and the five keys are required, in any
order, each at most once:

    ring.modulus = 3              # scalar
    module.cyclic_orders = 3      # one or more cyclic orders, space-separated
    group.identity = 0            # scalar, cross-checked against the table
    group.cayley =                # table: one row per line, row = left factor
    0 1
    1 0
    action =                      # table: one row per group element; columns
    0 1 2                         # are module indices, mixed-radix with the
    0 2 1                         # last cyclic coordinate varying fastest

A table runs until the next ``key =`` line or the end of file.  Loading
validates everything: the Cayley table must be a group, the stated identity
must match the computed one, and the action must satisfy the representation
axioms.

A ``.fml`` file holds one formula per line in the grammar of
:mod:`repkit.formulas`, with ``#`` comments and blank lines ignored; the
coefficient modulus is supplied by the caller, since formulas are written
against a ring.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path
from typing import Sequence

from repkit.algebra import (
    FiniteGroup,
    FiniteModule,
    FiniteRing,
    Representation,
    validate_representation,
)
from repkit.classes import Catalog, FormulaSet
from repkit.errors import AxiomViolation, ParseError
from repkit.formulas import parse

_SCALAR_KEYS = ("ring.modulus", "group.identity")
_LIST_KEY = "module.cyclic_orders"
_TABLE_KEYS = ("group.cayley", "action")
_ALL_KEYS = _SCALAR_KEYS + (_LIST_KEY,) + _TABLE_KEYS


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _ints(text: str, lineno: int) -> list[int]:
    out = []
    for piece in text.split():
        try:
            out.append(int(piece))
        except ValueError:
            raise ParseError(lineno, f"an integer, not {piece!r}") from None
    return out


def parse_representation(text: str) -> Representation:
    """Parse and fully validate ``.rep`` content.  Positions in errors are
    1-based line numbers."""
    values: dict[str, object] = {}
    table_key: str | None = None
    table_rows: list[list[int]] = []

    def finish_table():
        nonlocal table_key
        if table_key is not None:
            values[table_key] = table_rows[:]
            table_rows.clear()
            table_key = None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        if "=" in line:
            finish_table()
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key not in _ALL_KEYS:
                raise ParseError(lineno, f"one of {', '.join(_ALL_KEYS)}, not {key!r}")
            if key in values or key == table_key:
                raise ParseError(lineno, f"{key} given once, not twice")
            if key in _TABLE_KEYS:
                if value:
                    raise ParseError(lineno, f"table rows on the lines after '{key} ='")
                table_key = key
            elif key == _LIST_KEY:
                orders = _ints(value, lineno)
                if not orders:
                    raise ParseError(lineno, "at least one cyclic order")
                values[key] = orders
            else:
                scalars = _ints(value, lineno)
                if len(scalars) != 1:
                    raise ParseError(lineno, f"a single integer for {key}")
                values[key] = scalars[0]
        else:
            if table_key is None:
                raise ParseError(lineno, "'key = value' (numbers belong under a table key)")
            table_rows.append(_ints(line, lineno))
    finish_table()

    missing = [k for k in _ALL_KEYS if k not in values]
    if missing:
        raise ParseError(0, f"missing key(s): {', '.join(missing)}")

    ring = FiniteRing(values["ring.modulus"])
    module = FiniteModule(ring, tuple(values["module.cyclic_orders"]))
    group = FiniteGroup.from_cayley(values["group.cayley"])
    stated = values["group.identity"]
    if stated != group.identity:
        raise AxiomViolation(
            "group.identity", (stated,),
            f"stated identity {stated} but the table's identity is {group.identity}")
    return validate_representation(module, group, values["action"])


def load_representation(path) -> Representation:
    return parse_representation(Path(path).read_text())


def dump_representation(rep: Representation, notes: Sequence[str] = ()) -> str:
    """Render in the file format; ``notes`` become leading comment lines.
    The output is canonical, so load → dump round-trips byte-identically on
    dump output."""
    lines = [f"# {note}" for note in notes]
    lines.append(f"ring.modulus = {rep.module.ring.modulus}")
    lines.append(f"module.cyclic_orders = {' '.join(map(str, rep.module.cyclic_orders))}")
    lines.append(f"group.identity = {rep.group.identity}")
    lines.append("group.cayley =")
    lines.extend(" ".join(map(str, row)) for row in rep.group.cayley)
    lines.append("action =")
    lines.extend(" ".join(map(str, row)) for row in rep.action)
    return "\n".join(lines) + "\n"


def parse_formulas(text: str, modulus: int, prefix: str = "line") -> FormulaSet:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        entries.append((f"{prefix}{lineno}", parse(line, modulus)))
    return FormulaSet.create(entries)


def load_formulas(path, modulus: int) -> FormulaSet:
    path = Path(path)
    return parse_formulas(path.read_text(), modulus, prefix=f"{path.stem}:")


def load_catalog(directory) -> Catalog:
    """All ``*.rep`` files in a directory, sorted by filename; entry names
    are the file stems."""
    directory = Path(directory)
    pairs = []
    for path in sorted(directory.glob("*.rep")):
        pairs.append((path.stem, load_representation(path)))
    return Catalog.create(pairs)


def bundled_catalog() -> Catalog:
    """The catalog shipped inside the package."""
    root = resources.files("repkit").joinpath("data/catalog")
    pairs = []
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".rep"):
            pairs.append((entry.name[:-4], parse_representation(entry.read_text())))
    return Catalog.create(pairs)


def catalog_dir() -> Path:
    """Filesystem path of the bundled catalog (for CLI default arguments)."""
    return Path(str(resources.files("repkit").joinpath("data/catalog")))
