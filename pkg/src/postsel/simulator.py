"""Exact integer statevector simulation of {h, x, cx, ccx} circuits.

A state over n qubits after m Hadamards is stored as a length-2**n integer
coefficient vector ``coeffs`` with the global scale factor 1/sqrt(2)**m kept
symbolically: amplitude(z) == coeffs[z] / sqrt(2)**m.  Unitarity gives the
invariant sum(coeffs**2) == 2**m, which also bounds every coefficient by
2**(m/2).  For circuits with at most ``_INT64_SAFE_H`` Hadamards that bound
proves every coefficient, square and partial sum of squares fits in int64, so
the hot path runs on numpy int64 vectors; larger circuits fall back to an
object-dtype vector of Python ints.  Either way the arithmetic is exact.

The practical width cap defaults to 24 qubits and can be raised with the
``POSTSEL_MAX_QUBITS`` environment variable or the ``max_qubits`` argument.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .circuit import Circuit
from .errors import CapExceeded, ZeroPostselection
from .exactring import DyadicRational, PathAmplitude, SqrtDyadic

DEFAULT_MAX_QUBITS = 24
_INT64_SAFE_H = 60  # sum(coeffs**2) == 2**m <= 2**60 keeps all int64 math exact


def _width_cap(max_qubits: int | None) -> int:
    if max_qubits is not None:
        return max_qubits
    env = os.environ.get("POSTSEL_MAX_QUBITS")
    return int(env) if env else DEFAULT_MAX_QUBITS


def _normalize_bits(bits, width: int) -> tuple[int, ...]:
    if isinstance(bits, str):
        bits = [c for c in bits]
    out = []
    for b in bits:
        if b in (0, 1):
            out.append(int(b))
        elif b in ("0", "1"):
            out.append(int(b))
        else:
            raise ValueError(f"input bits must be 0/1, got {b!r}")
    if len(out) != width:
        raise ValueError(f"expected {width} input bits, got {len(out)}")
    return tuple(out)


@dataclass
class QuantumState:
    """coeffs[z] / sqrt(2)**m for each basis state z (bit i of z = qubit i)."""

    width: int
    coeffs: np.ndarray
    m: int

    def amplitude(self, z: int) -> SqrtDyadic:
        return PathAmplitude(int(self.coeffs[z]), self.m).as_sqrt_dyadic()

    def norm_sq(self) -> int:
        return int(_dot(self.coeffs, self.coeffs))

    def canonical(self) -> "QuantumState":
        """Divide out common factors of 2 in sqrt(2)**2 steps."""
        coeffs = self.coeffs.copy()
        m = self.m
        while m >= 2 and not np.any(coeffs & 1):
            coeffs >>= 1
            m -= 2
        return QuantumState(self.width, coeffs, m)

    def __eq__(self, other):
        if not isinstance(other, QuantumState):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        return (
            a.width == b.width
            and a.m == b.m
            and bool(np.all(a.coeffs == b.coeffs))
        )


@dataclass(frozen=True)
class PostselStats:
    """Exact statistics of a postselecting circuit on one input."""

    p_post: DyadicRational  # P(p = 1)
    p_joint: DyadicRational  # P(o = 1, p = 1)
    p_cond: Fraction  # P(o = 1 | p = 1)


def _dot(a: np.ndarray, b: np.ndarray) -> int:
    if a.dtype == object:
        return int((a * b).sum()) if a.size else 0
    return int(np.dot(a, b))


def run(circuit: Circuit, input_bits, *, max_qubits: int | None = None) -> QuantumState:
    """Exactly simulate an mcx-free circuit on the given basis-state input.

    Raises if the circuit still contains mcx macros (expand first), if the
    width cap would be exceeded, or if an input bit contradicts a declared
    ancilla value.
    """
    cap = _width_cap(max_qubits)
    if circuit.width > cap:
        raise CapExceeded(
            f"width {circuit.width} exceeds cap {cap} "
            "(raise POSTSEL_MAX_QUBITS to override)"
        )
    bits = _normalize_bits(input_bits, circuit.width)
    for q, v in circuit.ancillas:
        if bits[q] != v:
            raise ValueError(f"ancilla qubit {q} requires input value {v}")
    if any(g.kind == "mcx" for g in circuit.gates):
        raise ValueError("circuit contains unexpanded mcx gates; run expand_mcx first")

    n = circuit.width
    size = 1 << n
    dtype = np.int64 if circuit.h_count <= _INT64_SAFE_H else object
    vec = np.zeros(size, dtype=dtype)
    z0 = sum(b << i for i, b in enumerate(bits))
    vec[z0] = 1
    # qubit q lives on axis n-1-q of the (2,)*n view; pinning control axes
    # with integer indices leaves a view of just the firing subspace
    grid = vec.reshape((2,) * n) if n <= 30 else None
    idx = np.arange(size, dtype=np.int64) if grid is None else None

    m = 0
    for g in circuit.gates:
        if g.kind == "h":
            v3 = vec.reshape(-1, 2, 1 << g.target)
            lo = v3[:, 0, :].copy()
            hi = v3[:, 1, :].copy()
            v3[:, 0, :] = lo + hi
            v3[:, 1, :] = lo - hi
            m += 1
        elif grid is not None:
            ix: list = [slice(None)] * n
            for c, neg in zip(g.controls, g.negated):
                ix[n - 1 - c] = 0 if neg else 1
            sub = grid[tuple(ix)]
            pos = (n - 1 - g.target) - sum(1 for c in g.controls if c > g.target)
            sw = np.moveaxis(sub, pos, 0)
            tmp = sw[0].copy()
            sw[0] = sw[1]
            sw[1] = tmp
        else:
            sel = ((idx >> g.target) & 1) == 0
            for c, neg in zip(g.controls, g.negated):
                sel &= ((idx >> c) & 1) == (0 if neg else 1)
            i0 = idx[sel]
            i1 = i0 | (1 << g.target)
            lo = vec[i0]
            hi = vec[i1]
            vec[i0] = hi
            vec[i1] = lo
    return QuantumState(n, vec, m)


def _masked_square_sum(state: QuantumState, constraints) -> int:
    pinned: dict[int, int] = {}
    for q, v in constraints:
        if not 0 <= q < state.width:
            raise ValueError(f"constraint qubit {q} outside width {state.width}")
        if v not in (0, 1):
            raise ValueError("constraint value must be 0 or 1")
        if pinned.setdefault(q, v) != v:
            return 0
    if state.width <= 30:
        ix: list = [slice(None)] * state.width
        for q, v in pinned.items():
            ix[state.width - 1 - q] = v
        c = state.coeffs.reshape((2,) * state.width)[tuple(ix)].ravel()
        return _dot(c, c)
    idx = np.arange(1 << state.width, dtype=np.int64)
    sel = np.ones(idx.size, dtype=bool)
    for q, v in pinned.items():
        sel &= ((idx >> q) & 1) == v
    c = state.coeffs[sel]
    return _dot(c, c)


def measure_prob(state: QuantumState, qubit: int, value: int) -> DyadicRational:
    """Exact probability that measuring ``qubit`` yields ``value``."""
    return DyadicRational(_masked_square_sum(state, [(qubit, value)]), state.m)


def joint_prob(state: QuantumState, constraints) -> DyadicRational:
    """Exact probability that every (qubit, value) constraint holds at once."""
    return DyadicRational(_masked_square_sum(state, constraints), state.m)


def postselect_stats(
    circuit: Circuit, input_bits, *, max_qubits: int | None = None
) -> PostselStats:
    """Run the circuit and return exact (P(p=1), P(o=1,p=1), P(o=1|p=1)).

    The conditional is never rounded: it is returned as an exact Fraction.
    Raises ZeroPostselection when P(p=1) == 0.
    """
    if circuit.postselect is None:
        raise ValueError("circuit declares no postselect qubit")
    state = run(circuit, input_bits, max_qubits=max_qubits)
    p_post = measure_prob(state, circuit.postselect, 1)
    if p_post.is_zero():
        raise ZeroPostselection("P(postselect=1) is exactly zero")
    p_joint = joint_prob(state, [(circuit.output, 1), (circuit.postselect, 1)])
    p_cond = p_joint.as_fraction() / p_post.as_fraction()
    return PostselStats(p_post, p_joint, p_cond)


def ancillas_restored(circuit: Circuit, state: QuantumState) -> bool:
    """True when every declared ancilla is back at its declared value in every
    basis state carrying nonzero amplitude."""
    idx = np.arange(1 << state.width, dtype=np.int64)
    live = state.coeffs != 0
    for q, v in circuit.ancillas:
        if np.any(((idx[live] >> q) & 1) != v):
            return False
    return True
