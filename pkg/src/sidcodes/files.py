"""Code files, sweep CSVs, DOT rendering, and random-subset generation.

The interchange format for codes is a small JSON object::

    {"format_version": 1, "m": 3, "n": 9, "topology": "path",
     "codewords": [[0, 0], [0, 1], ...],
     "family": "path-general", "k": 3, "parity_case": "odd",
     "residue_case": 0, "predicted_size": 24, "parts": {"S1": [...], ...}}

Codewords are sorted by canonical index, construction metadata is optional,
and parsing then serializing is the identity on well-formed files.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from typing import IO, Iterable

from .constructions import ConstructionFamily, ConstructionPlan
from .graphs import ProductGraph, Topology, VertexSet, build_product_graph
from .verification import CodeSet

FORMAT_VERSION = 1

SWEEP_COLUMNS = (
    "m", "n", "topology", "lower", "construction", "upper", "exact",
    "density_lower", "density_construction", "density_upper",
)


class CodeFileError(ValueError):
    """Malformed or inconsistent code file content."""


def code_to_json(code: CodeSet, plan: ConstructionPlan | None = None) -> dict:
    graph = code.graph
    payload: dict = {
        "format_version": FORMAT_VERSION,
        "m": graph.m,
        "n": graph.n,
        "topology": graph.topology.value,
        "codewords": [list(v) for v in code.vertices()],
    }
    if plan is not None:
        payload["family"] = plan.family.value
        payload["k"] = plan.k
        payload["parity_case"] = plan.parity_case
        payload["residue_case"] = plan.residue_case
        payload["predicted_size"] = plan.predicted_size
        payload["parts"] = {
            name: [list(v) for v in part.vertices()] for name, part in plan.parts.items()
        }
    return payload


def code_from_json(payload: dict) -> tuple[CodeSet, ConstructionPlan | None]:
    try:
        version = payload["format_version"]
        if version != FORMAT_VERSION:
            raise CodeFileError(f"unsupported format_version {version}")
        m, n = int(payload["m"]), int(payload["n"])
        topology = Topology.from_string(payload["topology"])
        codewords = [tuple(map(int, v)) for v in payload["codewords"]]
    except CodeFileError:
        raise
    except Exception as exc:
        raise CodeFileError(f"malformed code file: {exc}") from exc
    if len(set(codewords)) != len(codewords):
        raise CodeFileError("duplicate codewords")
    graph = build_product_graph(m, n, topology)
    try:
        members = graph.vertex_set(codewords)
    except ValueError as exc:
        raise CodeFileError(str(exc)) from exc
    code = CodeSet(graph, members)
    plan = None
    if "family" in payload:
        try:
            parts = {
                name: VertexSet.from_vertices(m, n, [tuple(map(int, v)) for v in verts])
                for name, verts in payload.get("parts", {}).items()
            }
            plan = ConstructionPlan(
                family=ConstructionFamily(payload["family"]),
                m=m,
                n=n,
                k=int(payload.get("k", n // 3)),
                parity_case=str(payload.get("parity_case", "")),
                residue_case=int(payload.get("residue_case", n % 3)),
                parts=parts,
                predicted_size=int(payload.get("predicted_size", len(code))),
            )
        except (KeyError, ValueError) as exc:
            raise CodeFileError(f"malformed construction metadata: {exc}") from exc
    return code, plan


def dump_code(fp: IO[str], code: CodeSet, plan: ConstructionPlan | None = None) -> None:
    json.dump(code_to_json(code, plan), fp, indent=2)
    fp.write("\n")


def load_code(fp: IO[str]) -> tuple[CodeSet, ConstructionPlan | None]:
    try:
        payload = json.load(fp)
    except json.JSONDecodeError as exc:
        raise CodeFileError(f"invalid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise CodeFileError("code file must hold a JSON object")
    return code_from_json(payload)


# ---------------------------------------------------------------------------
# sweep CSV
# ---------------------------------------------------------------------------

def _csv_number(value) -> str:
    if value is None:
        return ""
    if isinstance(value, Fraction):
        return f"{float(value):.12g}"
    return str(value)


def write_sweep_csv(fp: IO[str], rows: Iterable[dict]) -> int:
    """Write sweep rows in the fixed column order; returns the row count."""
    fp.write(",".join(SWEEP_COLUMNS) + "\n")
    count = 0
    for row in rows:
        fp.write(",".join(_csv_number(row.get(col)) for col in SWEEP_COLUMNS) + "\n")
        count += 1
    return count


# ---------------------------------------------------------------------------
# DOT rendering
# ---------------------------------------------------------------------------

def render_dot(graph: ProductGraph, code: CodeSet | None = None) -> str:
    """Undirected DOT text; codeword vertices are filled black.

    Vertices appear in canonical order and edges with the lower canonical
    endpoint first, so output is deterministic.
    """
    if code is not None and code.graph is not graph:
        if (code.graph.m, code.graph.n, code.graph.topology) != (graph.m, graph.n, graph.topology):
            raise CodeFileError("code file does not match the requested graph")
    members = code.members if code is not None else None
    lines = ["graph product_code {", "  node [shape=circle];"]
    for i, j in graph.vertices():
        name = f"\"{i},{j}\""
        if members is not None and (i, j) in members:
            lines.append(f"  {name} [style=filled, fillcolor=black, fontcolor=white];")
        else:
            lines.append(f"  {name};")
    for idx in range(graph.num_vertices):
        i, j = graph.vertex_at(idx)
        mask = graph.open_bits[idx] >> (idx + 1)
        other = idx + 1
        while mask:
            if mask & 1:
                oi, oj = graph.vertex_at(other)
                lines.append(f"  \"{i},{j}\" -- \"{oi},{oj}\";")
            mask >>= 1
            other += 1
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# random subsets (test support)
# ---------------------------------------------------------------------------

def random_subsets(graph: ProductGraph, count: int, seed: int) -> list[VertexSet]:
    """Reproducible uniform-random vertex subsets."""
    rng = random.Random(seed)
    nv = graph.num_vertices
    return [VertexSet(graph.m, graph.n, rng.getrandbits(nv)) for _ in range(count)]


def subsets_to_json(graph: ProductGraph, subsets: list[VertexSet], seed: int) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "m": graph.m,
        "n": graph.n,
        "topology": graph.topology.value,
        "seed": seed,
        "subsets": [[list(v) for v in subset.vertices()] for subset in subsets],
    }
