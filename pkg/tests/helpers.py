"""Shared oracles and resource matrices for the test suite.

Oracles here are deliberately independent of the package fast paths:
brute-force partial sums, dense ladder-operator algebra, explicit grids.
"""

import numpy as np

from cvteleport import (
    NlaConfig,
    TruncationPolicy,
    TwbParams,
    make_added_then_subtracted_twb,
    make_amplified_twb,
    make_photon_subtracted_twb,
    make_twb,
)

# Tight truncation for tests whose tolerances (1e-9..1e-10) sit below the
# default 1e-12 tail once amplified by moment cancellations.
TIGHT = TruncationPolicy(epsilon=1e-16)


def brute_success_probability(chi: float, g: float, p: int, terms: int = 10_000) -> float:
    """Partial-sum evaluation of the heralding probability, term by term."""
    total = 0.0
    for n in range(terms):
        weight = g ** (2 * (n - p)) if n <= p else 1.0
        total += weight * chi ** (2 * n)
    return (1.0 - chi * chi) * total


def brute_pair_ladder(diag: np.ndarray, add_first: bool) -> np.ndarray:
    """Apply a b (optionally preceded by a_dag b_dag) to a Schmidt-diagonal
    dense matrix, returning the new normalized diagonal."""
    dim = diag.size
    mat = np.diag(diag.astype(complex))
    lower = np.diag(np.sqrt(np.arange(1.0, dim)), k=1)  # annihilation
    raise_ = lower.T
    if add_first:
        mat = raise_ @ mat @ raise_.T
    mat = lower @ mat @ lower.T
    out = np.real(np.diag(mat)).copy()
    return out / np.linalg.norm(out)


def fidelity_matrix(chi: float, policy: TruncationPolicy = TruncationPolicy()):
    """The resource matrix used by the fidelity consistency criteria."""
    params = TwbParams(chi)
    resources = [make_twb(params, policy)]
    for p in (2, 4):
        for g in (2.0, 3.0, 4.0):
            resources.append(make_amplified_twb(params, NlaConfig(g, p), policy)[0])
    resources.append(make_photon_subtracted_twb(params, policy))
    resources.append(make_added_then_subtracted_twb(params, policy))
    return resources


def oracle_matrix(policy: TruncationPolicy = TruncationPolicy()):
    """Small-dimension (chi, g, p) matrix where dense cross-checks run.

    Parameters chosen so every state truncates at dimension 30 or below
    under the default tail tolerance.
    """
    combos = []
    for chi in (0.2, 0.4, 0.55):
        params = TwbParams(chi)
        combos.append(make_twb(params, policy))
        for g in (2.0, 4.0):
            for p in (2, 4):
                combos.append(make_amplified_twb(params, NlaConfig(g, p), policy)[0])
    for chi in (0.2, 0.4, 0.5):
        combos.append(make_photon_subtracted_twb(TwbParams(chi), policy))
        combos.append(make_added_then_subtracted_twb(TwbParams(chi), policy))
    return combos
