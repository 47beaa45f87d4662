"""Fault-site enumeration, the (theta, phi) grid, circuit mutation, and
full injection campaigns.

A fault is one u(theta, phi, 0) gate inserted immediately after an
existing gate on one of that gate's target qubits.  Sites therefore map
1:1 onto (gate, target-qubit) pairs; a two-qubit gate contributes two
sites.  The measurement boundary is not a site: faults attach to gates
only.

Injected gates are ordinary circuit gates from then on; in particular a
noise model treats them like any other u gate (duration, depolarizing),
so under noise even a (0, 0) fault can score slightly worse than the
fault-free baseline.

Campaigns sweep every site against every grid point, preceded by one
fault-free baseline record (site_index -1).  Records stream in canonical
order (site-major, grid-minor) no matter how many workers run, and every
sampled record draws from its own seed sequence derived from
(campaign seed, site, grid point), so reruns and re-schedules are
byte-identical.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from .circuit import Circuit, Gate
from .metrics import qvf_of_distribution
from .noise import measured_probabilities_noisy
from .records import QvfRecord
from .simulator import (
    SimulationError,
    distribution_from_vector,
    measured_probabilities,
    sample_vector,
)

import numpy as np


@dataclass(frozen=True)
class FaultSite:
    """One injectable position: a gate index and one of its targets."""

    gate_index: int
    qubit: int


@dataclass(frozen=True)
class FaultParams:
    """Rotation angles of an injected u gate; lam is pinned to 0."""

    theta: float  # radians, [0, pi]
    phi: float  # radians, [0, 2*pi)
    lam: float = 0.0

    def __post_init__(self):
        if self.lam != 0.0:
            raise ValueError("fault gates fix lam = 0")
        if not 0.0 <= self.theta <= math.pi + 1e-12:
            raise ValueError(f"theta {self.theta!r} outside [0, pi]")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise ValueError(f"phi {self.phi!r} outside [0, 2*pi)")


@dataclass(frozen=True)
class FaultSpec:
    site: FaultSite
    params: FaultParams


class CampaignError(RuntimeError):
    """A campaign aborted; the offending fault is named in the message."""


@dataclass(frozen=True)
class CampaignConfig:
    """Sweep settings.

    mode "exact" records the analytic distribution; "sampled" draws
    ``shots`` counts per record.  ``sites`` limits the sweep to a subset of
    site indices (indices keep their meaning from the full enumeration).
    ``jobs`` > 1 fans sites out across processes.
    """

    grid_step: int = 15
    shots: int = 1024
    mode: str = "exact"
    noise: object = None
    seed: int = 0
    sites: tuple = None
    jobs: int = 1

    def __post_init__(self):
        if self.mode not in ("exact", "sampled"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if 360 % self.grid_step != 0:
            raise ValueError(f"grid step {self.grid_step} does not divide 360")
        if self.shots < 1:
            raise ValueError("shots must be >= 1")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.sites is not None:
            object.__setattr__(self, "sites", tuple(int(s) for s in self.sites))


def enumerate_sites(circuit: Circuit):
    """All fault sites in circuit order, one per (gate, target) pair."""
    sites = []
    for gi, gate in enumerate(circuit.gates):
        for q in gate.qubits:
            sites.append(FaultSite(gi, q))
    return sites


def build_grid(step: int = 15):
    """Fault parameters on the sweep lattice.

    phi runs over {0, step, ..., 360 - step} degrees and theta over
    {0, step, ..., 180}; theta is the outer (slower) axis, so the first
    element is (theta=0, phi=0).  A 15 degree step gives 13 * 24 = 312
    points.
    """
    if 360 % step != 0:
        raise ValueError(f"grid step {step} does not divide 360")
    params = []
    for t in range(0, 181, step):
        for p in range(0, 360, step):
            params.append(FaultParams(math.radians(t), math.radians(p)))
    return params


def grid_degrees(step: int = 15):
    """(theta_deg, phi_deg) integer pairs in the same order as build_grid."""
    return [(t, p) for t in range(0, 181, step) for p in range(0, 360, step)]


def inject(circuit: Circuit, faults) -> Circuit:
    """New circuit with one u(theta, phi, 0) gate per fault.

    Each fault gate lands immediately after its site's gate, on the
    site's qubit; for several faults behind one gate the insertion order
    follows the fault list.  The input circuit is not modified.
    """
    sites = enumerate_sites(circuit)
    valid = {(s.gate_index, s.qubit) for s in sites}
    followers = {}
    for fault in faults:
        key = (fault.site.gate_index, fault.site.qubit)
        if key not in valid:
            raise ValueError(
                f"no site at gate {fault.site.gate_index}, qubit {fault.site.qubit}"
            )
        followers.setdefault(fault.site.gate_index, []).append(fault)
    gates = []
    for gi, gate in enumerate(circuit.gates):
        gates.append(gate)
        for fault in followers.get(gi, ()):
            p = fault.params
            gates.append(Gate("u", (fault.site.qubit,), (p.theta, p.phi, p.lam)))
    return replace(circuit, gates=tuple(gates))


# ---------------------------------------------------------------------------
# campaign runner
# ---------------------------------------------------------------------------


def _correct_states(circuit: Circuit):
    if not circuit.correct_states:
        raise CampaignError(
            "circuit has no correct_states metadata; derive or supply one"
        )
    return circuit.correct_states


def _record_seed(campaign_seed: int, site_index: int, grid_index: int):
    # site slot 0 is the baseline; fault sites start at 1
    return np.random.SeedSequence([campaign_seed, site_index + 1, grid_index])


def _measure(circuit, config, seed_seq):
    """Metric summary of one circuit run under the campaign settings."""
    if config.noise is not None:
        probs = measured_probabilities_noisy(circuit, config.noise)
    else:
        probs = measured_probabilities(circuit)
    width = len(circuit.measured)
    if config.mode == "sampled":
        dist = sample_vector(probs, width, config.shots, seed_seq)
    else:
        dist = distribution_from_vector(probs, width)
    return qvf_of_distribution(dist, _correct_states(circuit))


def _site_worker(args):
    """All grid records for one site; runs in a worker process."""
    circuit, config, circuit_id, site_index, site, degs, baseline_qvf = args
    records = []
    for grid_index, (t_deg, p_deg) in enumerate(degs):
        params = FaultParams(math.radians(t_deg), math.radians(p_deg))
        faulted = inject(circuit, [FaultSpec(site, params)])
        try:
            summary = _measure(
                faulted, config, _record_seed(config.seed, site_index, grid_index)
            )
        except SimulationError as exc:
            raise CampaignError(
                f"simulation failed at site {site_index} "
                f"(gate {site.gate_index}, qubit {site.qubit}), "
                f"theta={t_deg} phi={p_deg}: {exc}"
            ) from exc
        records.append(
            QvfRecord(
                circuit_id=circuit_id,
                site_index=site_index,
                gate_index=site.gate_index,
                qubit=site.qubit,
                theta_deg=float(t_deg),
                phi_deg=float(p_deg),
                mode=config.mode,
                shots=config.shots if config.mode == "sampled" else 0,
                seed=config.seed,
                pst=summary.pst,
                p_b=summary.p_b,
                contrast=summary.contrast,
                qvf=summary.qvf,
                baseline_qvf=baseline_qvf,
                improved=summary.qvf < baseline_qvf,
            )
        )
    return records


def baseline_record(circuit: Circuit, config: CampaignConfig, circuit_id=None) -> QvfRecord:
    """Fault-free reference row, evaluated with the campaign settings."""
    summary = _measure(circuit, config, _record_seed(config.seed, -1, 0))
    return QvfRecord(
        circuit_id=circuit_id or circuit.name or "circuit",
        site_index=-1,
        gate_index=-1,
        qubit=-1,
        theta_deg=0.0,
        phi_deg=0.0,
        mode=config.mode,
        shots=config.shots if config.mode == "sampled" else 0,
        seed=config.seed,
        pst=summary.pst,
        p_b=summary.p_b,
        contrast=summary.contrast,
        qvf=summary.qvf,
        baseline_qvf=summary.qvf,
        improved=False,
    )


def run_campaign(circuit: Circuit, config: CampaignConfig = CampaignConfig()):
    """Stream campaign records: the baseline first, then site-major sweeps.

    Yields one QvfRecord per (site, grid point); the total fault-record
    count is len(sites) * len(grid).  Output order and values depend only
    on the circuit and config, never on worker scheduling.
    """
    _correct_states(circuit)
    circuit_id = circuit.name or "circuit"
    base = baseline_record(circuit, config, circuit_id)
    yield base

    all_sites = enumerate_sites(circuit)
    if config.sites is None:
        picked = list(enumerate(all_sites))
    else:
        for s in config.sites:
            if not 0 <= s < len(all_sites):
                raise CampaignError(f"site index {s} out of range")
        picked = [(s, all_sites[s]) for s in config.sites]
    degs = grid_degrees(config.grid_step)
    jobs = [
        (circuit, config, circuit_id, idx, site, degs, base.qvf)
        for idx, site in picked
    ]
    if config.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            for records in pool.map(_site_worker, jobs):
                yield from records
    else:
        for job in jobs:
            yield from _site_worker(job)
