"""Input documents and JSON encoding of verdicts."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from .configuration import AffineMap, PointConfiguration
from .linalg import IntegerMatrix
from .polytope import AmbientLattice, LatticePolytope

# integers beyond this magnitude are written as decimal strings
SAFE_INT = 2**53


class InputError(ValueError):
    """Malformed or schema-invalid input document."""


@dataclass
class InputDocument:
    kind: str
    points: list[tuple[Fraction, ...]]
    lattice_basis: AmbientLattice | None = None
    name: str | None = None

    @property
    def dim(self) -> int:
        return len(self.points[0])

    @property
    def ambient(self) -> AmbientLattice:
        return self.lattice_basis or AmbientLattice.standard(self.dim)

    def polytope(self) -> LatticePolytope:
        try:
            return LatticePolytope(self.points, self.ambient)
        except ValueError as exc:
            raise InputError(f"points: {exc}") from None

    def configuration(self) -> PointConfiguration:
        """The point set a command works on, in lattice coordinates.

        For ``kind == "points"`` these are the listed points; for a polytope
        they are its lattice points.
        """
        if self.kind == "polytope":
            return self.polytope().lattice_points
        coords = []
        for i, p in enumerate(self.points):
            c = self.ambient.to_coords(p)
            if any(x.denominator != 1 for x in c):
                raise InputError(f"points[{i}]: not a point of the ambient lattice")
            coords.append(tuple(int(x) for x in c))
        return PointConfiguration(coords, dim=self.dim)


def parse_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"{where}: expected an integer or a 'p/q' string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise InputError(f"{where}: expected an integer or a 'p/q' string, got {value!r}")


def _parse_int(value: Any, where: str) -> int:
    if isinstance(value, bool):
        raise InputError(f"{where}: expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    raise InputError(f"{where}: expected an integer, got {value!r}")


def parse_document(data: Any) -> InputDocument:
    if not isinstance(data, dict):
        raise InputError("document: expected a JSON object")
    unknown = set(data) - {"kind", "points", "lattice_basis", "name"}
    if unknown:
        raise InputError(f"{sorted(unknown)[0]}: unknown field")
    kind = data.get("kind")
    if kind not in ("points", "polytope"):
        raise InputError(f"kind: expected 'points' or 'polytope', got {kind!r}")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise InputError("name: expected a string")
    raw = data.get("points")
    if not isinstance(raw, list) or not raw:
        raise InputError("points: expected a nonempty list of vectors")
    basis_raw = data.get("lattice_basis")
    points = []
    for i, p in enumerate(raw):
        if not isinstance(p, list) or not p:
            raise InputError(f"points[{i}]: expected a nonempty list of coordinates")
        if basis_raw is None:
            points.append(tuple(Fraction(_parse_int(x, f"points[{i}][{j}]")) for j, x in enumerate(p)))
        else:
            points.append(tuple(parse_rational(x, f"points[{i}][{j}]") for j, x in enumerate(p)))
    d = len(points[0])
    for i, p in enumerate(points):
        if len(p) != d:
            raise InputError(f"points[{i}]: has length {len(p)}, expected {d}")
    lattice = None
    if basis_raw is not None:
        if not isinstance(basis_raw, list) or len(basis_raw) != d:
            raise InputError(f"lattice_basis: expected {d} rows")
        rows = []
        for i, r in enumerate(basis_raw):
            if not isinstance(r, list) or len(r) != d:
                raise InputError(f"lattice_basis[{i}]: expected {d} entries")
            rows.append(tuple(parse_rational(x, f"lattice_basis[{i}][{j}]") for j, x in enumerate(r)))
        try:
            lattice = AmbientLattice(tuple(rows))
        except ValueError as exc:
            raise InputError(f"lattice_basis: {exc}") from None
    return InputDocument(kind, points, lattice, name)


def load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: cannot read file ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def load_document(path: str | Path) -> InputDocument:
    try:
        return parse_document(load_json(path))
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


# -- output -----------------------------------------------------------------


def encode(value: Any) -> Any:
    """Make ``value`` JSON-safe: big ints and rationals become strings."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value if abs(value) < SAFE_INT else str(value)
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return encode(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, IntegerMatrix):
        return encode(value.tolist())
    if isinstance(value, dict):
        return {k: encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    raise TypeError(f"cannot encode {type(value).__name__}")


def dumps(doc: dict) -> str:
    return json.dumps(encode(doc), indent=2) + "\n"


def certificate(phi: AffineMap, level: str) -> dict:
    return {"A": phi.A.tolist(), "b": list(phi.b), "level": level}


def parse_certificate(data: Any) -> tuple[AffineMap, str]:
    """Accept a bare certificate or a full verdict document carrying one."""
    if isinstance(data, dict) and "certificate" in data:
        data = data["certificate"]
    if not isinstance(data, dict):
        raise InputError("certificate: expected a JSON object")
    level = data.get("level")
    if level not in ("reduced", "ambient"):
        raise InputError(f"certificate.level: expected 'reduced' or 'ambient', got {level!r}")
    b_raw = data.get("b")
    if not isinstance(b_raw, list):
        raise InputError("certificate.b: expected a list of integers")
    b = tuple(_parse_int(x, f"certificate.b[{i}]") for i, x in enumerate(b_raw))
    A_raw = data.get("A")
    if not isinstance(A_raw, list) or len(A_raw) != len(b):
        raise InputError(f"certificate.A: expected {len(b)} rows")
    rows = []
    for i, r in enumerate(A_raw):
        if not isinstance(r, list) or len(r) != len(b):
            raise InputError(f"certificate.A[{i}]: expected {len(b)} entries")
        rows.append([_parse_int(x, f"certificate.A[{i}][{j}]") for j, x in enumerate(r)])
    return AffineMap(IntegerMatrix.from_rows(rows, len(b)), b), level
