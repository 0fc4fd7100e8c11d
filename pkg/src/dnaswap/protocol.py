"""Recognition unitary, pair assembly, and the five-step swap protocol.

Pipeline for a template/incoming base pair:

1. Each base's 3-qubit pairing face is promoted from its initial basis ket
   to a tautomer superposition by the recognition unitary U.
2. The two 3-qubit states are tensored and the register is interleaved so
   that bonded atom pairs sit next to each other: template qubits land on
   positions (1, 3, 5), incoming qubits on (2, 4, 6).
3. The swap protocol S runs: the entangler V on qubits (3, 5); a Bell
   measurement on (3, 4); on outcome b00/b10, Pauli-X on qubits 4 and 5;
   a Bell measurement on (1, 2); on outcome b00/b10, Pauli-X on 2 and 5.

Every measurement trajectory is enumerated exactly; ``sample`` re-draws the
same trajectories stochastically from a counter-based seeded stream.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gates
from .encodings import BaseCode, UnsupportedEncodingError, wc_initial_state
from .gates import BELL_LABELS, BellLabel, Gate, bell_basis, bell_state, equality_entangler, pauli
from .statevec import (
    StateVector,
    apply_unitary,
    basis_state,
    measure_two_qubit,
    permute_qubits,
    tensor,
)

DEFAULT_THETA = math.acos(math.sqrt(2.0) / math.sqrt(3.0))
DEFAULT_PHI = math.acos(1.0 / math.sqrt(2.0))

# New position i carries old qubit INTERLEAVE[i-1]: template (1,2,3) to
# odd positions, incoming (4,5,6) to even positions.
INTERLEAVE = (1, 4, 2, 5, 3, 6)

COMPLETIONS = ("ascending", "descending", "mixed")

_MERGE_ATOL = 1e-10
_ZERO_SNAP = 1e-12


@dataclass(frozen=True)
class ProtocolConfig:
    """Angles and thresholds; the defaults reproduce the reference tables.

    ``phi`` fixes the equal-superposition amplitudes of the two-component
    recognition targets and ``theta`` splits the three-component ones; both
    are absorbed into the recognition unitary's target states.
    """

    theta: float = DEFAULT_THETA
    phi: float = DEFAULT_PHI
    bell_convention: str = gates.BELL_CONVENTION
    prune_threshold: float = 1e-14

    def __post_init__(self) -> None:
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise ValueError("theta and phi must be finite")


@dataclass(frozen=True)
class OutcomeBranch:
    """One trajectory of the swap protocol.

    ``bell_34``/``bell_12`` are the raw measurement outcomes; the final
    state carries the corrected labels (k forced to 1 wherever a Pauli-X
    pair was applied). ``third_pair`` holds the complex amplitudes (a, b)
    of |01> and |10> on qubits (5, 6) of the final state.
    """

    bell_34: BellLabel
    bell_12: BellLabel
    x45_applied: bool
    x25_applied: bool
    probability: float
    final_state: StateVector
    third_pair: tuple[complex, complex]

    @property
    def final_bell_34(self) -> BellLabel:
        return BellLabel(self.bell_34.j, 1)

    @property
    def final_bell_12(self) -> BellLabel:
        return BellLabel(self.bell_12.j, 1)

    @property
    def group(self) -> tuple[int, int]:
        """(j, m): first bits of the corrected (1,2) and (3,4) Bell labels."""
        return (self.bell_12.j, self.bell_34.j)

    @property
    def corrections(self) -> tuple[str, ...]:
        out = []
        if self.x45_applied:
            out.append("x45")
        if self.x25_applied:
            out.append("x25")
        return tuple(out)


@dataclass(eq=False)
class Ensemble:
    """Exact outcome distribution of one swap run."""

    pair: tuple[BaseCode, BaseCode] | None
    branches: list[OutcomeBranch]
    dropped_mass: float

    def __post_init__(self) -> None:
        if len(self.branches) > 16:
            raise ValueError(f"at most 16 branches possible, got {len(self.branches)}")
        total = sum(b.probability for b in self.branches) + self.dropped_mass
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"branch probabilities + dropped mass must be 1, got {total}")


@dataclass(frozen=True)
class CanonicalRow:
    """Phase-normalized ensemble row comparable to the reference tables.

    Global phase is chosen so that ``a`` is real and >= 0, falling back to
    ``b`` when ``a`` vanishes. Rows are ranked within their (j, m) group by
    descending probability, ties broken by descending |a|.
    """

    group: tuple[int, int]
    rank: int
    a: float
    b: float
    probability: float

    def __post_init__(self) -> None:
        if self.a < 0 or (self.a == 0 and self.b < 0):
            raise ValueError(f"row not phase-normalized: a={self.a}, b={self.b}")
        if self.rank < 1:
            raise ValueError("rank is 1-based")


def recognition_targets(cfg: ProtocolConfig) -> dict[tuple[int, ...], np.ndarray]:
    """Target states of the recognition unitary on the four initial kets.

    The angle parametrization keeps the four targets orthonormal for every
    finite (theta, phi); the defaults give the equal-amplitude states.
    """
    ct, st = math.cos(cfg.theta), math.sin(cfg.theta)
    cp, sp_ = math.cos(cfg.phi), math.sin(cfg.phi)

    def vec(terms: dict[str, float]) -> np.ndarray:
        out = np.zeros(8, dtype=complex)
        for bits, amp in terms.items():
            out[int(bits, 2)] = amp
        return out

    return {
        (1, 0, 1): vec({"011": cp, "101": -sp_}),
        (0, 1, 0): vec({"010": cp, "100": sp_}),
        (0, 1, 1): vec({"011": ct * sp_, "101": ct * cp, "110": st}),
        (1, 0, 0): vec({"100": ct * cp, "010": -ct * sp_, "001": st}),
    }


def build_recognition_unitary(
    cfg: ProtocolConfig | None = None, completion: str = "ascending"
) -> Gate:
    """The 3-qubit recognition unitary U.

    U is pinned by its action on the four initial kets; the remaining four
    columns are a deterministic orthonormal completion (Gram-Schmidt over
    computational kets). ``completion`` selects among equivalent
    completions - protocol output never depends on the choice because U is
    only ever applied to the four pinned kets.
    """
    cfg = cfg or ProtocolConfig()
    if completion not in COMPLETIONS:
        raise ValueError(f"completion must be one of {COMPLETIONS}, got {completion!r}")
    targets = recognition_targets(cfg)
    cols = list(targets.values())
    gram = np.array([[np.vdot(a, b) for b in cols] for a in cols])
    if np.max(np.abs(gram - np.eye(4))) > 1e-12:
        raise ValueError("recognition targets are not orthonormal for these angles")

    mat = np.zeros((8, 8), dtype=complex)
    assigned = []
    for bits, col in targets.items():
        idx = int("".join(str(b) for b in bits), 2)
        mat[:, idx] = col
        assigned.append(idx)

    free = [i for i in range(8) if i not in assigned]
    free_order = free[::-1] if completion == "descending" else free
    # Candidate pool: the unassigned kets first (sufficient at the default
    # angles), then the rest, so degenerate angle choices still complete.
    candidates = free_order + (assigned[::-1] if completion == "descending" else assigned)
    fixed = list(cols)
    completed = []
    for cand in candidates:
        if len(completed) == len(free):
            break
        v = np.zeros(8, dtype=complex)
        v[cand] = 1.0
        for c in fixed:
            v = v - np.vdot(c, v) * c
        norm = np.linalg.norm(v)
        if norm < 1e-9:
            continue
        v = v / norm
        fixed.append(v)
        completed.append(v)
    if len(completed) != len(free):
        raise ValueError("orthonormal completion failed")
    if completion == "mixed":
        h = 1.0 / math.sqrt(2.0)
        c0, c1, c2, c3 = completed
        completed = [h * (c0 + c1), h * (c0 - c1), h * (c2 + c3), h * (c2 - c3)]
    for idx, col in zip(free_order, completed):
        mat[:, idx] = col
    return Gate(f"U[{completion}]", mat)


def recognize(b: BaseCode, cfg: ProtocolConfig | None = None, u_gate: Gate | None = None) -> StateVector:
    """Apply the recognition unitary to a base's initial pairing-face ket."""
    cfg = cfg or ProtocolConfig()
    initial = wc_initial_state(b)  # rejects rare tautomers
    u = u_gate if u_gate is not None else build_recognition_unitary(cfg)
    return StateVector(3, u.matrix @ initial.amplitudes)


_SUPPORTED_PAIRS = {("A", "T"), ("T", "A"), ("G", "C"), ("C", "G")}


def assemble_pair(
    template: BaseCode,
    incoming: BaseCode,
    cfg: ProtocolConfig | None = None,
    u_gate: Gate | None = None,
) -> StateVector:
    """Interleaved 6-qubit state of a recognized complementary base pair."""
    if template.rare or incoming.rare:
        raise UnsupportedEncodingError(
            f"pairing is defined for canonical bases only, got {template}.{incoming}"
        )
    if (template.base, incoming.base) not in _SUPPORTED_PAIRS:
        raise ValueError(f"unsupported pairing {template}.{incoming}")
    cfg = cfg or ProtocolConfig()
    product = tensor(recognize(template, cfg, u_gate), recognize(incoming, cfg, u_gate))
    return permute_qubits(product, INTERLEAVE)


def _third_pair_amplitudes(
    state: StateVector, f12: BellLabel, f34: BellLabel
) -> tuple[complex, complex]:
    ref = tensor(bell_state(f12), bell_state(f34))
    a = np.vdot(tensor(ref, basis_state("01")).amplitudes, state.amplitudes)
    b = np.vdot(tensor(ref, basis_state("10")).amplitudes, state.amplitudes)
    return complex(a), complex(b)


def swap(
    pair_state: StateVector,
    cfg: ProtocolConfig | None = None,
    pair: tuple[BaseCode, BaseCode] | None = None,
    v_gate: Gate | None = None,
) -> Ensemble:
    """Run the five-step protocol with exact branch enumeration.

    Branches are keyed by the raw (pre-correction) measurement outcomes;
    trajectories below the pruning threshold are dropped and their mass is
    recorded on the ensemble. ``v_gate`` substitutes the step-1 entangler
    (the protocol family is not unique; this is the extension hook).
    """
    cfg = cfg or ProtocolConfig()
    if pair_state.num_qubits != 6:
        raise ValueError(f"swap needs a 6-qubit register, got {pair_state.num_qubits}")
    v = v_gate if v_gate is not None else equality_entangler()
    x = pauli("X")
    basis = bell_basis()

    stage1 = apply_unitary(pair_state, v, (3, 5))
    branches: list[OutcomeBranch] = []
    kept34 = 0.0
    dropped = 0.0
    for br34 in measure_two_qubit(stage1, basis, (3, 4), cfg.prune_threshold):
        kept34 += br34.probability
        label34 = BELL_LABELS[br34.outcome_label]
        x45 = label34.k == 0
        state = br34.post_state
        if x45:
            state = apply_unitary(apply_unitary(state, x, (4,)), x, (5,))
        kept12 = 0.0
        for br12 in measure_two_qubit(state, basis, (1, 2), cfg.prune_threshold):
            kept12 += br12.probability
            label12 = BELL_LABELS[br12.outcome_label]
            x25 = label12.k == 0
            final = br12.post_state
            if x25:
                final = apply_unitary(apply_unitary(final, x, (2,)), x, (5,))
            a, b = _third_pair_amplitudes(
                final, BellLabel(label12.j, 1), BellLabel(label34.j, 1)
            )
            branches.append(
                OutcomeBranch(
                    bell_34=label34,
                    bell_12=label12,
                    x45_applied=x45,
                    x25_applied=x25,
                    probability=br34.probability * br12.probability,
                    final_state=final,
                    third_pair=(a, b),
                )
            )
        dropped += br34.probability * max(0.0, 1.0 - kept12)
    dropped += max(0.0, 1.0 - kept34)

    order = {label: i for i, label in enumerate(BELL_LABELS)}
    branches.sort(key=lambda br: (order[br.bell_34], order[br.bell_12]))
    return Ensemble(pair=pair, branches=branches, dropped_mass=dropped)


def run_pair(
    template: BaseCode,
    incoming: BaseCode,
    cfg: ProtocolConfig | None = None,
    v_gate: Gate | None = None,
) -> Ensemble:
    """Assemble a pair and run the swap, labeling the resulting ensemble."""
    cfg = cfg or ProtocolConfig()
    state = assemble_pair(template, incoming, cfg)
    return swap(state, cfg, pair=(template, incoming), v_gate=v_gate)


def canonical_table(e: Ensemble) -> list[CanonicalRow]:
    """Group, phase-normalize, merge, and rank the ensemble's branches.

    Branches whose corrected final states coincide (same group and same
    normalized third-pair amplitudes within 1e-10) merge into one row with
    summed probability.
    """
    grouped: dict[tuple[int, int], list[list[float]]] = {}
    for br in e.branches:
        a, b = br.third_pair
        if abs(a) > _ZERO_SNAP:
            phase = a / abs(a)
        elif abs(b) > _ZERO_SNAP:
            phase = b / abs(b)
        else:
            phase = 1.0
        an, bn = a / phase, b / phase
        if abs(an.imag) > 1e-9 or abs(bn.imag) > 1e-9:
            raise ValueError("third-pair amplitudes have a non-real relative phase")
        af = 0.0 if abs(an.real) < _ZERO_SNAP else float(an.real)
        bf = 0.0 if abs(bn.real) < _ZERO_SNAP else float(bn.real)
        rows = grouped.setdefault(br.group, [])
        for row in rows:
            if abs(row[0] - af) <= _MERGE_ATOL and abs(row[1] - bf) <= _MERGE_ATOL:
                row[2] += br.probability
                break
        else:
            rows.append([af, bf, br.probability])

    out: list[CanonicalRow] = []
    for group in sorted(grouped):
        rows = sorted(grouped[group], key=lambda r: (-r[2], -abs(r[0])))
        for rank, (a, b, p) in enumerate(rows, start=1):
            out.append(CanonicalRow(group=group, rank=rank, a=a, b=b, probability=p))
    return out


def sample(
    pair_state: StateVector,
    cfg: ProtocolConfig | None = None,
    shots: int = 1,
    seed: int = 0,
) -> dict[tuple[BellLabel, BellLabel], int]:
    """Stochastic trajectory sampling of the two Bell measurements.

    Uses the counter-based Philox stream keyed by ``seed``; shot i consumes
    uniforms (2i, 2i+1), so counts are reproducible for a fixed
    (seed, shots) no matter how evaluation is scheduled. Returns counts for
    every enumerated branch, keyed by raw (bell_34, bell_12) outcome.
    """
    cfg = cfg or ProtocolConfig()
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    if not 0 <= int(seed) < 2**64:
        raise ValueError(f"seed must fit in 64 bits, got {seed}")

    ensemble = swap(pair_state, cfg)
    joint = np.zeros((4, 4))
    order = {label: i for i, label in enumerate(BELL_LABELS)}
    for br in ensemble.branches:
        joint[order[br.bell_34], order[br.bell_12]] = br.probability

    def pick(probs: np.ndarray, u: np.ndarray) -> np.ndarray:
        """Inverse CDF over the positive-probability outcomes only."""
        live = np.flatnonzero(probs > 0)
        cdf = np.cumsum(probs[live] / probs[live].sum())
        cdf[-1] = 1.0  # guard the float tail
        return live[np.searchsorted(cdf, u, side="right")]

    uniforms = np.random.Generator(np.random.Philox(key=int(seed))).random((shots, 2))
    idx34 = pick(joint.sum(axis=1), uniforms[:, 0])
    idx12 = np.empty(shots, dtype=np.int64)
    for i in np.unique(idx34):
        mask = idx34 == i
        idx12[mask] = pick(joint[i], uniforms[mask, 1])
    counts = np.bincount(idx34 * 4 + idx12, minlength=16)

    return {
        (br.bell_34, br.bell_12): int(counts[order[br.bell_34] * 4 + order[br.bell_12]])
        for br in ensemble.branches
    }
