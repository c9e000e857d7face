"""Figure rendering for the CLI report paths.

Figures are presentation artifacts written next to the delimited output;
nothing downstream depends on them and no acceptance check reads them.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .profiles import TwistParams, eval_h, eval_rho  # noqa: E402


def profile_figure(params: TwistParams, path: str | Path) -> Path:
    """Sampled twist profile and Hamiltonian, smoothed and unsmoothed."""
    e = params.epsilon
    r = np.linspace(0.0, 1.2 * e, 600)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.4))
    ax1.plot(r / e, [eval_rho(x, params, smoothed=False) for x in r],
             label="rho", lw=1)
    ax1.plot(r / e, [eval_rho(x, params, smoothed=True) for x in r],
             label="rho (smoothed)", lw=1, ls="--")
    ax1.set_xlabel("r / epsilon")
    ax1.set_ylabel("profile")
    ax1.legend(fontsize=8)
    ax2.plot(r / e, [eval_h(x, params, smoothed=False) for x in r],
             label="h", lw=1)
    ax2.plot(r / e, [eval_h(x, params, smoothed=True) for x in r],
             label="h (smoothed)", lw=1, ls="--")
    ax2.set_xlabel("r / epsilon")
    ax2.set_ylabel("Hamiltonian")
    ax2.legend(fontsize=8)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def gap_figure(N_values, D_values, slope: float, intercept: float,
               path: str | Path) -> Path:
    """Action gap against amplification with the fitted line."""
    Ns = np.asarray(N_values, dtype=float)
    fig, ax = plt.subplots(figsize=(5, 3.4))
    ax.plot(Ns, D_values, "o", ms=4, label="gap D(N)")
    grid = np.linspace(Ns.min(), Ns.max(), 100)
    ax.plot(grid, slope * grid + intercept, lw=1,
            label=f"fit {slope:.3e} N + {intercept:.3e}")
    ax.set_xlabel("N")
    ax.set_ylabel("action gap")
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def bounds_figure(N_values, table: dict[str, tuple[float, ...]],
                  path: str | Path) -> Path:
    """Lower-bound families against amplification."""
    Ns = np.asarray(N_values, dtype=float)
    fig, ax = plt.subplots(figsize=(5, 3.4))
    for label, values in table.items():
        ax.plot(Ns, values, "o-", ms=3, lw=1, label=label)
    ax.set_xlabel("N")
    ax.set_ylabel("lower bound")
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
