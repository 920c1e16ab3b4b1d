"""Input schema: a toric variety, a special fiber ideal and an optional nef partition."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

from .errors import SchemaError
from .mirror import NefPartition, nef_partition_from_ideal
from .monomials import MonomialIdeal
from .polytope import convex_hull
from .toric import ToricData, toric_from_fano, toric_from_rays


@dataclass
class Problem:
    toric: ToricData
    ideal: MonomialIdeal
    partition_blocks: Optional[list[list[int]]] = None

    def partition(self) -> NefPartition:
        if self.partition_blocks is not None:
            P = NefPartition(self.toric, self.partition_blocks)
            if P.ideal() != self.ideal:
                raise SchemaError("nefPartition does not match the ideal generators")
            return P
        return nef_partition_from_ideal(self.ideal, self.toric)

    def to_json(self) -> dict:
        data: dict[str, Any] = {
            "toric": {"rays": [list(r) for r in self.toric.rays], "maxCones": [sorted(c) for c in self.toric.max_cones]},
            "ideal": {"generators": [list(g) for g in self.ideal.generators]},
        }
        if self.partition_blocks is not None:
            data["nefPartition"] = self.partition_blocks
        return data


def _int(x: Any, where: str) -> int:
    # large integers may arrive as decimal strings
    if isinstance(x, bool):
        raise SchemaError(f"{where}: expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x, 10)
        except ValueError:
            pass
    raise SchemaError(f"{where}: expected an integer, got {x!r}")


def _int_matrix(rows: Any, where: str) -> list[list[int]]:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise SchemaError(f"{where}: expected a list of integer lists")
    return [[_int(x, where) for x in r] for r in rows]


def load_problem(data: Any) -> Problem:
    """Validate the JSON input and build the toric data.

    Schema errors raise :class:`SchemaError`; mathematical problems (for
    example a polytope that is not Fano) raise precondition errors.
    """
    if not isinstance(data, dict):
        raise SchemaError("input must be a JSON object")
    toric = data.get("toric")
    if not isinstance(toric, dict):
        raise SchemaError("missing 'toric' object")
    var = toric.get("var", "x")
    if not isinstance(var, str):
        raise SchemaError("'toric.var' must be a string")
    if "rays" in toric:
        rays = _int_matrix(toric["rays"], "toric.rays")
        cones = toric.get("maxCones")
        cones = _int_matrix(cones, "toric.maxCones") if cones is not None else None
        if not rays or len({len(r) for r in rays}) != 1:
            raise SchemaError("toric.rays must be nonempty and of equal length")
        T = toric_from_rays(rays, cones, var=var)
    elif "fanoVertices" in toric:
        verts = _int_matrix(toric["fanoVertices"], "toric.fanoVertices")
        if not verts or len({len(r) for r in verts}) != 1:
            raise SchemaError("toric.fanoVertices must be nonempty and of equal length")
        T = toric_from_fano(convex_hull(verts), var=var)
    else:
        raise SchemaError("'toric' needs 'rays' or 'fanoVertices'")
    ideal = data.get("ideal")
    if not isinstance(ideal, dict) or "generators" not in ideal:
        raise SchemaError("missing 'ideal.generators'")
    gens = _int_matrix(ideal["generators"], "ideal.generators")
    if any(len(g) != T.nrays for g in gens):
        raise SchemaError(f"every generator needs {T.nrays} exponents")
    if any(x < 0 for g in gens for x in g):
        raise SchemaError("exponents must be nonnegative")
    blocks = data.get("nefPartition")
    if blocks is not None:
        blocks = _int_matrix(blocks, "nefPartition")
    return Problem(T, T.ideal(gens), blocks)
