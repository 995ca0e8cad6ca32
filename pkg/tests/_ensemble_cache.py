"""Shared on-disk cache of heavy disorder ensembles used by the test suite.

Computing a 100-realization ensemble at L = 9 takes tens of minutes, so each
realization's reusable artifacts (eigenphases of U and U0, the state after m
cycles, provenance defects) are stored once under .cache/ and reloaded by
every test that needs that parameter point.  Regenerate by deleting .cache/.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from floqlab.model import SpinChainSpec, draw_disorder
from floqlab.propagator import evolve, floquet_unitary, initial_state
from floqlab.spectra import EigenphaseSet

CACHE_ROOT = Path(__file__).resolve().parent.parent / ".cache" / "ensembles"

MASTER_SEED = 20260823
ENSEMBLE_L = 9
ENSEMBLE_D = 100
ENSEMBLE_M = 10

# (W, omega) of every heavy parameter point exercised by the acceptance suite.
POINTS = {
    "thermal_r": (4.0, 4.2),
    "mbl": (30.0, 8.0),
    "prethermal_r": (4.0, 20.1),
    "thermal_kld": (3.0, 8.0),
    "prethermal_kld": (4.0, 20.0),
}


@dataclass(frozen=True)
class Ensemble:
    spec: SpinChainSpec
    m: int
    phases_u: np.ndarray      # (D, N) sorted eigenphases of U
    phases_u0: np.ndarray     # (D, N) sorted eigenphases of U0
    states: np.ndarray        # (D, N) state after m cycles
    slices: np.ndarray        # (D,)
    conv_defects: np.ndarray  # (D,)
    unit_defects: np.ndarray  # (D,) max|U^dag U - I|
    magnus0: np.ndarray       # (D,) max|U - U0|

    @property
    def D(self) -> int:
        return self.phases_u.shape[0]

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.states) ** 2


def _dirname(spec: SpinChainSpec, m: int, D: int) -> Path:
    tag = (f"L{spec.L}_W{spec.W:g}_om{spec.omega:g}_B{spec.B0:g}"
           f"_dB{spec.deltaB:g}_s{spec.seed}_m{m}_D{D}")
    return CACHE_ROOT / tag


def compute_realization(spec: SpinChainSpec, k: int, m: int) -> dict[str, np.ndarray]:
    disorder = draw_disorder(spec, k)
    fl = floquet_unitary(spec, disorder)
    u = fl.u.matrix
    state = evolve(initial_state(spec.L), fl.u, m)
    return {
        "phases_u": EigenphaseSet.from_unitary(fl.u).phases,
        "phases_u0": EigenphaseSet.from_unitary(fl.u0).phases,
        "state": state.amplitudes,
        "slices": np.array(fl.slices_used),
        "conv_defect": np.array(fl.convergence_defect),
        "unit_defect": np.abs(u.conj().T @ u - np.eye(spec.dim)).max(),
        "magnus0": np.abs(u - fl.u0.matrix).max(),
    }


def get_ensemble(
    W: float,
    omega: float,
    L: int = ENSEMBLE_L,
    D: int = ENSEMBLE_D,
    m: int = ENSEMBLE_M,
    B0: float = 1.25,
    deltaB: float = -1.25,
    seed: int = MASTER_SEED,
) -> Ensemble:
    """Load (or compute and cache) one disorder ensemble."""
    spec = SpinChainSpec(L=L, B0=B0, deltaB=deltaB, omega=omega, W=W, seed=seed)
    cdir = _dirname(spec, m, D)
    cdir.mkdir(parents=True, exist_ok=True)
    rows = []
    for k in range(D):
        path = cdir / f"r{k:03d}.npz"
        if path.exists():
            with np.load(path) as z:
                rows.append({key: z[key] for key in z.files})
        else:
            row = compute_realization(spec, k, m)
            tmp = path.with_suffix(".tmp.npz")
            np.savez_compressed(tmp, **row)
            tmp.replace(path)
            rows.append(row)
    return Ensemble(
        spec=spec,
        m=m,
        phases_u=np.stack([r["phases_u"] for r in rows]),
        phases_u0=np.stack([r["phases_u0"] for r in rows]),
        states=np.stack([r["state"] for r in rows]),
        slices=np.array([int(r["slices"]) for r in rows]),
        conv_defects=np.array([float(r["conv_defect"]) for r in rows]),
        unit_defects=np.array([float(r["unit_defect"]) for r in rows]),
        magnus0=np.array([float(r["magnus0"]) for r in rows]),
    )


def main() -> None:
    """Prewarm every acceptance-suite parameter point (several CPU-hours)."""
    import time

    for name, (W, omega) in POINTS.items():
        t = time.time()
        ens = get_ensemble(W, omega)
        print(f"{name}: W={W} omega={omega} D={ens.D} "
              f"[{time.time() - t:.0f}s]", flush=True)


if __name__ == "__main__":
    main()
