"""
Plumbings of spheres embedded in a blown-up plane, and their intersection matrices
"""

from __future__ import annotations
from dataclasses import dataclass
from typing import Optional, Sequence

import networkx as nx

from blowdown.blowup.configuration import Configuration
from blowdown.blowup.homology import HomologyClass
from blowdown.kernel.linalg import RationalMatrix, as_rational_matrix
from blowdown.utils import _check


class NotASimplePlumbingError(ValueError):
    """
    Two spheres of the plumbing meet more than once, or negatively.
    """


class NotATreeError(ValueError):
    """
    The spheres of the plumbing don't form a tree.
    """


@dataclass(frozen=True)
class PlumbingVertex:
    """
    A sphere of the plumbing.

    Parameters
    ----------
    name : str
        label of the sphere in the plumbing, e.g., ``"u1"``
    curve : str
        name of the curve in the configuration which is this sphere
    homology : HomologyClass
        class of the sphere
    """

    name: str
    curve: str
    homology: HomologyClass

    @property
    def weight(self) -> int:
        return self.homology.self_intersection


@dataclass(frozen=True)
class PlumbingGraph:
    """
    A weighted tree of spheres which pairwise meet once (if adjacent) or not at all.

    Parameters
    ----------
    vertices : tuple[PlumbingVertex, ...]
        spheres, in the order of the rows of the intersection matrix
    edges : tuple[tuple[str, str], ...]
        pairs of vertex names which meet once
    """

    vertices: tuple[PlumbingVertex, ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self):
        _check.unique_names(self.names, variable_name="plumbing vertex names")
        names = set(self.names)
        for a, b in self.edges:
            if a not in names or b not in names:
                raise ValueError(f"Edge ({a}, {b}) has a vertex outside the plumbing.")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(vertex.name for vertex in self.vertices)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(vertex.weight for vertex in self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def vertex(self, name: str) -> PlumbingVertex:
        for vertex in self.vertices:
            if vertex.name == name:
                return vertex
        raise KeyError(f"The plumbing has no vertex {name!r}. Vertices: {self.names}.")

    def index(self, name: str) -> int:
        return self.names.index(self.vertex(name).name)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        for vertex in self.vertices:
            graph.add_node(vertex.name, weight=vertex.weight, curve=vertex.curve)
        graph.add_edges_from(self.edges)
        return graph

    def neighbors(self, name: str) -> list[str]:
        graph = self.to_networkx()
        return sorted(graph.neighbors(self.vertex(name).name), key=self.names.index)

    def valence(self, name: str) -> int:
        return len(self.neighbors(name))


def extract_plumbing(
    config: Configuration,
    curves: Sequence[str],
    labels: Optional[Sequence[str]] = None,
) -> PlumbingGraph:
    """
    Reads off the plumbing formed by some curves of a configuration.

    Parameters
    ----------
    config : Configuration
        configuration which contains the curves
    curves : Sequence[str]
        names of the curves which are the spheres of the plumbing, in matrix order
    labels : Sequence[str] | None, optional
        names of the spheres in the plumbing, e.g., ``["u1", ..., "u8"]``. By default,
        the curve names are used

    Returns
    -------
    PlumbingGraph
        vertices weighted by self-intersection. Curves with intersection number 1 are
        adjacent, curves with intersection number 0 aren't

    Raises
    ------
    NotASimplePlumbingError
        if two of the curves have intersection number other than 0 or 1
    NotATreeError
        if the curves don't form a tree
    """
    _check.nonempty_and_ordered(curves, variable_name="curves")
    labels = list(curves) if labels is None else list(labels)
    if len(labels) != len(curves):
        raise ValueError(
            f"Got {len(labels)} labels for {len(curves)} curves. They must match."
        )
    _check.unique_names(list(curves), variable_name="plumbing curves")
    vertices = tuple(
        PlumbingVertex(name=label, curve=curve, homology=config.curve(curve).homology)
        for label, curve in zip(labels, curves)
    )
    edges = []
    for i, u in enumerate(vertices):
        for v in vertices[i + 1 :]:
            product = u.homology.pairing(v.homology)
            if product not in (0, 1):
                raise NotASimplePlumbingError(
                    f"{u.name} ({u.curve}) . {v.name} ({v.curve}) = {product}. Spheres "
                    "of a plumbing meet exactly once or not at all."
                )
            if product == 1:
                edges.append((u.name, v.name))
    plumbing = PlumbingGraph(vertices=vertices, edges=tuple(edges))
    graph = plumbing.to_networkx()
    if not nx.is_tree(graph):
        problem = (
            "isn't connected"
            if not nx.is_connected(graph)
            else f"has a cycle {nx.find_cycle(graph)}"
        )
        raise NotATreeError(f"The plumbing graph {problem}.")
    return plumbing


def intersection_matrix(plumbing: PlumbingGraph) -> RationalMatrix:
    """
    Weights on the diagonal, 1 where two spheres meet, 0 elsewhere. Rows are in the
    order of ``plumbing.vertices``.
    """
    index = {name: i for i, name in enumerate(plumbing.names)}
    rows = [[0] * len(plumbing) for _ in plumbing.vertices]
    for i, weight in enumerate(plumbing.weights):
        rows[i][i] = weight
    for a, b in plumbing.edges:
        rows[index[a]][index[b]] = rows[index[b]][index[a]] = 1
    return as_rational_matrix(rows)
