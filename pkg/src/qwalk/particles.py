"""Two-particle walks: exchange symmetry, extended graphs, and correlations.

A two-particle walk on an n-vertex graph is equivalent to a single-particle
walk on an extended graph whose size depends on the exchange symmetry:
n^2 states for distinguishable particles, C(n+1, 2) for bosons and
C(n, 2) for fermions. ``two_particle_correlation`` computes output
correlations directly from the single-particle unitary (permanent /
determinant forms) and serves as the independent oracle for the
extended-walk route.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .evolution import HermitianOperator, as_distribution, basis_state, evolve_quantum, measure
from .graphs import Graph

__all__ = [
    "ParticleKind",
    "DISTINGUISHABLE",
    "BOSON",
    "FERMION",
    "phased",
    "ExtendedBasis",
    "build_extended_hamiltonian",
    "extended_graph",
    "two_particle_correlation",
    "correlation_via_extended_walk",
]


@dataclass(frozen=True)
class ParticleKind:
    """Exchange symmetry of a particle pair.

    ``phase`` interpolates between bosonic (0) and fermionic (pi) exchange;
    it is only meaningful for tag "phased".
    """

    tag: str  # "distinguishable" | "boson" | "fermion" | "phased"
    phase: float = 0.0

    def __post_init__(self):
        if self.tag not in ("distinguishable", "boson", "fermion", "phased"):
            raise ValueError(f"unknown particle kind {self.tag!r}")
        if not (0.0 <= self.phase < 2 * math.pi):
            raise ValueError("phase must lie in [0, 2*pi)")

    @classmethod
    def parse(cls, text: str) -> "ParticleKind":
        """Parse CLI syntax: distinguishable | boson | fermion | phase:<radians>."""
        if text.startswith("phase:"):
            return phased(float(text.split(":", 1)[1]))
        return cls(text)

    @property
    def exchange_phase(self) -> complex:
        if self.tag == "boson":
            return 1.0 + 0j
        if self.tag == "fermion":
            return -1.0 + 0j
        if self.tag == "phased":
            return complex(np.exp(1j * self.phase))
        raise ValueError("distinguishable particles carry no exchange phase")


DISTINGUISHABLE = ParticleKind("distinguishable")
BOSON = ParticleKind("boson")
FERMION = ParticleKind("fermion")


def phased(phi: float) -> ParticleKind:
    return ParticleKind("phased", phase=float(phi) % (2 * math.pi))


class ExtendedBasis:
    """Ordered two-particle mode-pair basis for one exchange symmetry.

    States are lexicographic: ordered pairs (i, j) for distinguishable
    particles, unordered with repetition i <= j for bosons, strictly
    ordered i < j for fermions.
    """

    def __init__(self, base_n: int, kind: ParticleKind):
        if base_n < 2:
            raise ValueError("base graph needs at least 2 vertices")
        if kind.tag == "distinguishable":
            states = list(itertools.product(range(base_n), repeat=2))
        elif kind.tag in ("boson", "phased"):
            states = list(itertools.combinations_with_replacement(range(base_n), 2))
        elif kind.tag == "fermion":
            states = list(itertools.combinations(range(base_n), 2))
        self.base_n = base_n
        self.kind = kind
        self.states = states
        self._index = {s: i for i, s in enumerate(states)}

    def __len__(self):
        return len(self.states)

    def index(self, i: int, j: int) -> int:
        """Index of the basis state containing modes (i, j)."""
        if self.kind.tag == "distinguishable":
            return self._index[(i, j)]
        key = (min(i, j), max(i, j))
        if key not in self._index:
            raise KeyError(f"state {key} not in basis ({self.kind.tag})")
        return self._index[key]

    def to_json_list(self) -> list[list[int]]:
        return [list(s) for s in self.states]


def _isometry(basis: ExtendedBasis) -> np.ndarray:
    """Rows: extended basis states; columns: ordered pairs i*n + j."""
    n = basis.base_n
    s = np.zeros((len(basis), n * n))
    for row, (i, j) in enumerate(basis.states):
        if basis.kind.tag == "distinguishable" or i == j:
            s[row, i * n + j] = 1.0
        else:
            sign = -1.0 if basis.kind.tag == "fermion" else 1.0
            s[row, i * n + j] = 1.0 / math.sqrt(2)
            s[row, j * n + i] = sign / math.sqrt(2)
    return s


def build_extended_hamiltonian(g: Graph, kind: ParticleKind) -> tuple[ExtendedBasis, HermitianOperator]:
    """Adjacency of the extended graph: S (A(x)I + I(x)A) S^dag.

    Real symmetric; for an unweighted base graph the bosonic off-diagonal
    entries are 0, 1 or sqrt(2).
    """
    if kind.tag == "phased":
        raise ValueError("phased exchange has no real extended graph; use correlations")
    basis = ExtendedBasis(g.n, kind)
    a = g.adjacency()
    two = np.kron(a, np.eye(g.n)) + np.kron(np.eye(g.n), a)
    s = _isometry(basis)
    return basis, HermitianOperator(s @ two @ s.T)


def extended_graph(g: Graph, kind: ParticleKind) -> tuple[ExtendedBasis, Graph]:
    """Extended Hamiltonian repackaged as a weighted Graph.

    Useful when the classical-walk machinery (which takes graphs, not
    operators) should run on the extended topology.
    """
    basis, h_ext = build_extended_hamiltonian(g, kind)
    a = np.real(h_ext.entries)
    dim = len(basis)
    edges = [
        (i, j, a[i, j])
        for i in range(dim) for j in range(i + 1, dim)
        if abs(a[i, j]) > 1e-12
    ]
    return basis, Graph.from_edges(dim, edges)


def _check_unitary(u: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError("U must be square")
    if np.abs(u @ u.conj().T - np.eye(u.shape[0])).max() > tol:
        raise ValueError("U is not unitary")
    return u


def two_particle_correlation(u, inputs: tuple[int, int], kind: ParticleKind) -> tuple[ExtendedBasis, np.ndarray]:
    """Output correlation of a particle pair injected at ``inputs`` through U.

    Distinguishable: P(i, j) = |U_ia U_jb|^2 over ordered pairs.
    Boson / fermion / phased: permanent-like amplitudes
    A(i, j) = U_ia U_jb + e^{i phi} U_ib U_ja with phi = 0, pi, or the
    interpolating phase; unordered outcomes are normalized by the input and
    output mode multiplicities.
    """
    u = _check_unitary(u)
    n = u.shape[0]
    a, b = inputs
    if not (0 <= a < n and 0 <= b < n):
        raise ValueError("input modes out of range")
    basis = ExtendedBasis(n, kind)
    if kind.tag == "distinguishable":
        p = np.abs(u[:, a][:, None] * u[:, b][None, :]) ** 2
        return basis, as_distribution(p.ravel())
    if kind.tag == "fermion" and a == b:
        raise ValueError("fermions cannot doubly occupy an input mode")
    xp = kind.exchange_phase
    # doubly-occupied input: the (a, a) state has squared norm |1 + xp|^2 / 2
    # (2 for bosons); it vanishes as the phase approaches the fermionic point
    input_norm = abs(1 + xp) ** 2 / 2.0 if a == b else 1.0
    if a == b and input_norm < 1e-12:
        raise ValueError("no two-particle state with this exchange phase "
                         "occupies a single mode")
    probs = np.empty(len(basis))
    for row, (i, j) in enumerate(basis.states):
        amp_ij = u[i, a] * u[j, b] + xp * u[i, b] * u[j, a]
        if i == j:
            probs[row] = abs(amp_ij) ** 2 / 2.0
        else:
            amp_ji = u[j, a] * u[i, b] + xp * u[j, b] * u[i, a]
            probs[row] = (abs(amp_ij) ** 2 + abs(amp_ji) ** 2) / 2.0
        probs[row] /= input_norm
    return basis, as_distribution(probs)


def correlation_via_extended_walk(g: Graph, kind: ParticleKind, inputs: tuple[int, int], t: float) -> tuple[ExtendedBasis, np.ndarray]:
    """Cross-check route: single-particle walk on the extended graph.

    Must match ``two_particle_correlation(exp(-iAt), inputs, kind)``
    elementwise.
    """
    if kind.tag == "phased":
        raise ValueError("phased exchange is only available via correlations")
    basis, h_ext = build_extended_hamiltonian(g, kind)
    start = basis.index(*inputs)
    psi = evolve_quantum(h_ext, basis_state(len(basis), start), t)
    return basis, measure(psi)
