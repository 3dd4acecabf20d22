"""File-based figure rendering for the batch reports.

Everything here writes to disk through the Agg backend; no display is
ever opened. Figures accompany the delimited trajectory output and the
monodromy reports.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def plot_trajectory(traj, labels, path, title="", integrals=None):
    """Time series of the state components; optional second panel with
    first-integral drift curves (dict label -> values)."""
    nrows = 2 if integrals else 1
    fig, axes = plt.subplots(nrows, 1, figsize=(8, 3.2 * nrows), sharex=True)
    if nrows == 1:
        axes = [axes]
    t = np.asarray(traj.times, dtype=float)
    states = np.asarray(traj.states)
    for i, lab in enumerate(labels):
        axes[0].plot(t, states[:, i].real, label=lab, lw=1.0)
    axes[0].set_ylabel("state")
    axes[0].legend(loc="upper right", fontsize=8, ncol=min(3, len(labels)))
    if title:
        axes[0].set_title(title)
    if integrals:
        for lab, vals in integrals.items():
            vals = np.asarray(vals, dtype=float)
            axes[1].plot(t, vals - vals[0], label=f"{lab} drift", lw=1.0)
        axes[1].set_ylabel("drift")
        axes[1].legend(loc="upper right", fontsize=8)
    axes[-1].set_xlabel("t")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_monodromy(matrix, singular_points, path, title=""):
    """Loop geometry in the z plane with the singular points, plus the
    monodromy eigenvalues against the unit circle."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 4))
    loop = matrix.loop
    tau = np.linspace(0.0, 1.0, 256)
    zs = np.array([loop.point(x) for x in tau])
    ax1.plot(zs.real, zs.imag, lw=1.2)
    for z in singular_points:
        z = complex(z)
        ax1.plot([z.real], [z.imag], "rx", ms=8)
    ax1.plot([loop.center.real], [loop.center.imag], "k+")
    ax1.set_aspect("equal")
    ax1.set_xlabel("Re z")
    ax1.set_ylabel("Im z")
    ax1.set_title("loop and singular points")

    eig = matrix.eigenvalues()
    circle = np.exp(2j * np.pi * tau)
    ax2.plot(circle.real, circle.imag, "k--", lw=0.6)
    ax2.plot(eig.real, eig.imag, "bo", ms=8)
    ax2.set_aspect("equal")
    ax2.set_xlabel("Re")
    ax2.set_ylabel("Im")
    ax2.set_title("monodromy eigenvalues")
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
