"""Instances, kernels and certificates shared by the two solvers."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph


@dataclass(frozen=True)
class Instance:
    """A decision instance ``(G, k)``: is there a solution of size at most k?"""

    g: Graph
    k: int


MdInstance = Instance
GsInstance = Instance


@dataclass(frozen=True)
class KernelResult:
    """Outcome of kernelization.

    ``removed`` lists ``(deleted vertex, surviving twin)`` pairs in deletion
    order, original numbering.  ``readd`` are the deleted vertices that must be
    put back into a kernel solution when lifting it to the original graph.
    ``id_map[i]`` is the original id of kernel vertex ``i``.
    """

    reduced: Instance
    removed: tuple[tuple[int, int], ...]
    id_map: tuple[int, ...]
    readd: tuple[int, ...] = ()
    cover: tuple[int, ...] = ()

    @property
    def is_trivial_no(self) -> bool:
        return self.reduced.k < 0


def trivial_no_instance() -> Instance:
    """Constant-size NO-instance: one vertex and a negative budget."""
    return Instance(Graph(1, ((),)), -1)


@dataclass(frozen=True)
class SolutionCertificate:
    problem: str
    k: int
    vertices: tuple[int, ...]
    verified: bool
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def size(self) -> int:
        return len(self.vertices)
