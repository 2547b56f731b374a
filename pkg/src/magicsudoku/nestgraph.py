"""Generator-labeled nest graphs and group certificates.

Vertices are the variant's nest labels. For each nest representative R
and each generator g, an edge runs from R's label to the label of the
canonicalized image of act(g, R). Weak components of the graph are the
orbit candidates; a candidate group is complete when the component
count matches the variant's true orbit count, and minimal when its
order also equals the least common multiple of the true orbit sizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import catalog
from .boards import is_modular_magic, is_semi_magic
from .catalog import NamedGenerator, parse_generator
from .errors import DomainError
from .nests import (
    MM,
    SM,
    Census,
    NestLabel,
    canonicalize,
    census,
    labels,
    normalize_variant,
    representative,
)
from .perms import act, closure

__all__ = [
    "NestGraph",
    "MinimalityReport",
    "EXPECTED_ORBITS",
    "default_physical_generators",
    "build_nest_graph",
    "weak_components",
    "to_dot",
    "completeness",
    "orbit_sizes",
    "minimality",
]

#: True orbit counts under the full symmetry group per variant.
EXPECTED_ORBITS = {MM: 2, SM: 3}


@dataclass(frozen=True)
class NestGraph:
    variant: str
    vertices: tuple[NestLabel, ...]
    edges: tuple[tuple[NestLabel, NestLabel, str], ...]


@dataclass(frozen=True)
class MinimalityReport:
    group_order: int
    largest_orbit: int
    component_count: int
    expected_orbit_count: int
    complete: bool
    minimal: bool
    orbit_sizes: tuple[int, ...]
    orbit_lcm: int


def _as_generators(gens: Iterable[NamedGenerator | str]) -> tuple[NamedGenerator, ...]:
    out = []
    for g in gens:
        out.append(g if isinstance(g, NamedGenerator) else parse_generator(str(g)))
    return tuple(out)


def default_physical_generators(variant: str) -> tuple[NamedGenerator, ...]:
    """Physical generators that extend the nest-defining group to the
    variant's full physical group: none for modular-magic, the leading
    band and pillar swaps for semi-magic."""
    if normalize_variant(variant) == MM:
        return ()
    return (catalog.swap_bands(0, 1), catalog.swap_pillars(0, 1))


def build_nest_graph(
    variant: str,
    rel_generators: Iterable[NamedGenerator | str],
    phys_generators: Iterable[NamedGenerator | str] | None = None,
) -> NestGraph:
    """Apply each generator to each nest representative and record the
    nest of the image."""
    v = normalize_variant(variant)
    rel = _as_generators(rel_generators)
    phys = (
        default_physical_generators(v)
        if phys_generators is None
        else _as_generators(phys_generators)
    )
    predicate = is_modular_magic if v == MM else is_semi_magic
    verts = labels(v)
    edges = []
    for label in verts:
        board = representative(label)
        for gen in rel + phys:
            image = act(gen.symmetry, board)
            if not predicate(image):
                raise DomainError(
                    f"generator {gen.name} does not preserve the {v} predicate"
                )
            target, _ = canonicalize(v, image)
            edges.append((label, target, gen.name))
    return NestGraph(v, verts, tuple(edges))


def weak_components(graph: NestGraph) -> tuple[tuple[NestLabel, ...], ...]:
    """Connected components ignoring edge direction, each sorted by
    label, listed smallest first (ties by label)."""
    index = {label: i for i, label in enumerate(graph.vertices)}
    parent = list(range(len(graph.vertices)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for src, dst, _ in graph.edges:
        a, b = find(index[src]), find(index[dst])
        if a != b:
            parent[a] = b
    groups: dict[int, list[NestLabel]] = {}
    for label, i in index.items():
        groups.setdefault(find(i), []).append(label)
    comps = [tuple(sorted(members)) for members in groups.values()]
    comps.sort(key=lambda c: (len(c), c))
    return tuple(comps)


def to_dot(graph: NestGraph) -> str:
    """Deterministic DOT text: vertices in sorted order, then one edge
    statement per (from, to, generator) including self-loops."""
    lines = ["digraph nests {"]
    for label in sorted(graph.vertices):
        lines.append(f'  "{label}";')
    for src, dst, name in sorted(graph.edges, key=lambda e: (e[0], e[1], e[2])):
        lines.append(f'  "{src}" -> "{dst}" [label="{name}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def completeness(
    variant: str,
    rel_generators: Iterable[NamedGenerator | str],
    phys_generators: Iterable[NamedGenerator | str] | None = None,
) -> bool:
    """True when the nest graph has exactly the true orbit count of
    weak components."""
    v = normalize_variant(variant)
    graph = build_nest_graph(v, rel_generators, phys_generators)
    return len(weak_components(graph)) == EXPECTED_ORBITS[v]


def _full_relabeling_generators(variant: str) -> tuple[NamedGenerator, ...]:
    if variant == MM:
        return catalog.s_mm_generators()
    group = catalog.s_sm_group()
    return tuple(
        catalog.relabeling(s.digit) for s in group if not s.is_identity
    )


def orbit_sizes(
    variant: str,
    rel_generators: Iterable[NamedGenerator | str] | None = None,
    phys_generators: Iterable[NamedGenerator | str] | None = None,
    nest_census: Census | None = None,
) -> tuple[int, ...]:
    """Board counts of the graph's weak components, ascending.

    Defaults use the full relabeling group, so the result is the true
    orbit size list. Pass a precomputed census to skip re-enumeration.
    """
    v = normalize_variant(variant)
    rel = (
        _full_relabeling_generators(v)
        if rel_generators is None
        else _as_generators(rel_generators)
    )
    graph = build_nest_graph(v, rel, phys_generators)
    if nest_census is None:
        nest_census = census(v)
    sizes = [
        sum(nest_census.counts[label] for label in comp)
        for comp in weak_components(graph)
    ]
    return tuple(sorted(sizes))


def minimality(
    variant: str,
    phys_group: object | None = None,
    rel_generators: Iterable[NamedGenerator | str] = (),
    nest_census: Census | None = None,
) -> MinimalityReport:
    """Certify the candidate group (physical x relabeling closure).

    Complete means its nest graph splits into the true orbit count of
    components. Minimal additionally requires the group order to equal
    lcm of the true orbit sizes, the smallest order any complete group
    can have.
    """
    v = normalize_variant(variant)
    if phys_group is None:
        phys_group = catalog.h_mm_group() if v == MM else catalog.h9_group()
    phys_order = phys_group if isinstance(phys_group, int) else phys_group.order
    rel = _as_generators(rel_generators)
    rel_order = closure([g.symmetry for g in rel]).order
    group_order = phys_order * rel_order
    graph = build_nest_graph(v, rel)
    component_count = len(weak_components(graph))
    sizes = orbit_sizes(v, nest_census=nest_census)
    orbit_lcm = math.lcm(*sizes)
    complete = component_count == EXPECTED_ORBITS[v]
    return MinimalityReport(
        group_order=group_order,
        largest_orbit=max(sizes),
        component_count=component_count,
        expected_orbit_count=EXPECTED_ORBITS[v],
        complete=complete,
        minimal=complete and group_order == orbit_lcm,
        orbit_sizes=sizes,
        orbit_lcm=orbit_lcm,
    )
