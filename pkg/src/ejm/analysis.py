"""Entanglement measures, single-qubit reductions, and geometric symmetry
checks (mirror tetrahedra, vanishing vector sums, rectangular parallelepipeds)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

import numpy as np

from .bases import BasisFamily, BasisLabel, EjmParams
from .qla import BlochVector, ContractError, StateVector, bloch_vector, partial_trace

TANGLE_CLAMP_ATOL = 1e-12
GEOMETRY_ATOL = 1e-9


def three_tangle(state: StateVector) -> float:
    """Residual tangle of a three-qubit pure state.

    Evaluates the degree-4 polynomial in the eight amplitudes (the modulus
    of Cayley's hyperdeterminant form): 0 for product and W-class states,
    1 for GHZ.  The result is clamped into [0, 1]; a clamp beyond 1e-12
    indicates a bug and raises ContractError.
    """
    if state.n_qubits != 3:
        raise ValueError(f"three_tangle needs a 3-qubit state, got {state.n_qubits} qubits")
    a000, a001, a010, a011, a100, a101, a110, a111 = state.amplitudes
    quartic = (
        (a000 * a111 - a001 * a110) ** 2
        + (a010 * a101 - a100 * a011) ** 2
        + 4 * (a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100)
        - 2 * (a000 * a111 + a001 * a110) * (a010 * a101 + a100 * a011)
    )
    tau = 4.0 * abs(quartic)
    if tau > 1.0 + TANGLE_CLAMP_ATOL:
        raise ContractError(f"three-tangle {tau!r} exceeds 1 beyond tolerance")
    return min(float(tau), 1.0)


def tangle_law(params: EjmParams) -> float:
    """Common three-tangle sin^2(2*gamma) sin(theta) shared by every
    three-qubit EJM basis state at the given parameters."""
    return math.sin(2.0 * params.gamma) ** 2 * math.sin(params.theta)


def concurrence(state: StateVector) -> float:
    """Pure-state concurrence 2|a00*a11 - a01*a10| of a two-qubit state."""
    if state.n_qubits != 2:
        raise ValueError(f"concurrence needs a 2-qubit state, got {state.n_qubits} qubits")
    a00, a01, a10, a11 = state.amplitudes
    return min(float(2.0 * abs(a00 * a11 - a01 * a10)), 1.0)


def m_prime_vector(params: EjmParams, i: int) -> np.ndarray:
    """Unit vector of the secondary tetrahedron traced out by the two-qubit
    block reductions: proportional to (sqrt(2) cos(2g) cos(phi_i - phi_z),
    sqrt(2) cos(2g) sin(phi_i - phi_z), (-1)^i)."""
    c2g = math.cos(2.0 * params.gamma)
    delta = params.phi_i(i) - params.phi_z
    vec = np.array(
        [
            math.sqrt(2.0) * c2g * math.cos(delta),
            math.sqrt(2.0) * c2g * math.sin(delta),
            (-1.0) ** i,
        ]
    )
    return vec / math.sqrt(1.0 + 2.0 * c2g * c2g)


def reduction_coefficients(params: EjmParams) -> tuple[float, float]:
    """Signed scale factors of the reduction vectors.

    Returns (block_scale, tail_scale): two-qubit-block positions reduce to
    +-block_scale * m', the odd extra qubit to +-tail_scale * m, where
    block_scale = (1/2) sqrt(1 + 2 cos^2(2g)) cos(theta) and
    tail_scale = cos(2g).
    """
    c2g = math.cos(2.0 * params.gamma)
    block = 0.5 * math.sqrt(1.0 + 2.0 * c2g * c2g) * math.cos(params.theta)
    return block, c2g


def reduced_bloch_vectors(
    family: BasisFamily,
) -> dict[tuple[BasisLabel, int], BlochVector]:
    """Bloch vector of every single-qubit reduction, keyed by
    (basis label, 1-based qubit position)."""
    vectors: dict[tuple[BasisLabel, int], BlochVector] = {}
    for label, state in family.states.items():
        for qubit in range(1, family.n_qubits + 1):
            vectors[(label, qubit)] = bloch_vector(partial_trace(state, {qubit}))
    return vectors


@dataclass(frozen=True)
class OrthonormalityReport:
    """Worst-entry deviations of the Gram matrix and the completeness sum."""

    gram_error: float
    completeness_error: float


def verify_orthonormal_complete(family: BasisFamily) -> OrthonormalityReport:
    """Measure how far the family is from an orthonormal, complete basis.

    gram_error is max |<s|t> - delta_st|; completeness_error is the largest
    entry of |sum_s |s><s| - I|.  Both are reported, never asserted.
    """
    v = family.matrix()
    eye_states = np.eye(v.shape[0])
    eye_space = np.eye(v.shape[1])
    gram_error = float(np.max(np.abs(v.conj() @ v.T - eye_states)))
    completeness_error = float(np.max(np.abs(v.T @ v.conj() - eye_space)))
    return OrthonormalityReport(gram_error, completeness_error)


@dataclass(frozen=True)
class SymmetryReport:
    """Geometric summary of a family's single-qubit reductions."""

    vectors: Mapping[tuple[BasisLabel, int], BlochVector]
    radii: tuple[float, ...]
    vector_sum: BlochVector
    parallelepiped_ok: bool
    mirror_pairs_ok: bool
    degenerate: bool


def _cluster_magnitudes(values: np.ndarray, tol: float) -> tuple[float, ...]:
    ordered = np.sort(values)
    groups: list[list[float]] = []
    for v in ordered:
        if groups and v - groups[-1][-1] <= tol:
            groups[-1].append(float(v))
        else:
            groups.append([float(v)])
    return tuple(float(np.mean(g)) for g in groups)


def _dedupe_points(points: list[np.ndarray], tol: float) -> list[np.ndarray]:
    distinct: list[np.ndarray] = []
    for p in points:
        if not any(np.max(np.abs(p - q)) <= tol for q in distinct):
            distinct.append(p)
    return distinct


def _mirror_symmetric(points: list[np.ndarray], tol: float) -> bool:
    used = [False] * len(points)
    for a in range(len(points)):
        if used[a]:
            continue
        if np.max(np.abs(points[a])) <= tol:
            used[a] = True
            continue
        partner = next(
            (
                b
                for b in range(len(points))
                if b != a and not used[b] and np.max(np.abs(points[a] + points[b])) <= tol
            ),
            None,
        )
        if partner is None:
            return False
        used[a] = used[partner] = True
    return True


def _is_rectangular_box(points: list[np.ndarray], tol: float) -> bool:
    """True iff the eight distinct points admit an orthogonal edge frame
    that regenerates the full vertex set."""
    if len(points) != 8:
        return False
    origin = points[0]
    others = points[1:]
    for combo in combinations(range(7), 3):
        edges = [others[c] - origin for c in combo]
        if any(np.linalg.norm(e) <= tol for e in edges):
            continue
        if any(abs(float(np.dot(edges[a], edges[b]))) > tol for a, b in combinations(range(3), 2)):
            continue
        expected = [
            origin + s1 * edges[0] + s2 * edges[1] + s3 * edges[2]
            for s1 in (0, 1)
            for s2 in (0, 1)
            for s3 in (0, 1)
        ]
        unused = list(range(8))
        ok = True
        for vertex in expected:
            hit = next(
                (u for u in unused if np.max(np.abs(points[u] - vertex)) <= 1e-7), None
            )
            if hit is None:
                ok = False
                break
            unused.remove(hit)
        if ok:
            return True
    return False


def symmetry_report(family: BasisFamily, *, tol: float = GEOMETRY_ATOL) -> SymmetryReport:
    """Collect the reduction vectors of a family and check its symmetry.

    Checks performed: the total vector sum (over every basis state and
    every qubit position), the distinct circumradii, mirror (+v/-v)
    pairing of the full vector multiset, and for each qubit position the
    rectangular-parallelepiped predicate on the eight points +-v formed
    by that position's reduction directions.  Positions whose vertex set
    collapses (radius below tol or coincident vertices) are flagged
    degenerate and skipped, leaving the predicate vacuously true.
    """
    vectors = reduced_bloch_vectors(family)
    arrays = {key: v.as_array() for key, v in vectors.items()}
    stack = np.array(list(arrays.values()))
    vector_sum = BlochVector(*(float(c) for c in stack.sum(axis=0)))
    radii = _cluster_magnitudes(np.linalg.norm(stack, axis=1), tol)
    mirror_ok = _mirror_symmetric(list(arrays.values()), tol)

    parallelepiped_ok = True
    degenerate = False
    for qubit in range(1, family.n_qubits + 1):
        at_position = [a for (label, q), a in arrays.items() if q == qubit]
        octet = _dedupe_points(at_position + [-a for a in at_position], tol)
        if max(np.linalg.norm(p) for p in octet) <= tol or len(octet) < 8:
            degenerate = True
            continue
        if not _is_rectangular_box(octet, tol):
            parallelepiped_ok = False
    return SymmetryReport(
        vectors=vectors,
        radii=radii,
        vector_sum=vector_sum,
        parallelepiped_ok=parallelepiped_ok,
        mirror_pairs_ok=mirror_ok,
        degenerate=degenerate,
    )
