"""Matplotlib renderings of the sweep tables.

Kept apart from :mod:`eurqm.harness`: figures are a convenience on top of
the CSV output, never an input to any check.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

FIGSIZE = (6.0, 4.0)


def _save(fig, path):
    fig.tight_layout()
    # fixed metadata keeps repeated renders byte-stable
    fig.savefig(path, dpi=150, metadata={"Software": None})
    plt.close(fig)


def plot_scan_p(records, path):
    """Theorem bound against Coles-Piani (and the entropic sum) across ``p``."""
    x = [r.parameter for r in records]
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.plot(x, [r.values["lhs_conditional"] for r in records], color="0.5", lw=1, label="H(R|B) + H(S|B)")
    ax.plot(x, [r.values["theorem_new"] for r in records], color="tab:blue", label="all-overlap bound")
    ax.plot(x, [r.values["coles_piani"] for r in records], color="tab:orange", ls="--", label="Coles-Piani")
    ax.set_xlabel("p")
    ax.set_ylabel("bits")
    ax.legend(frameon=False)
    _save(fig, path)


def plot_scan_theta(records, path):
    x = [r.parameter for r in records]
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.plot(x, [r.values["corollary_new"] for r in records], color="tab:blue", label="all-overlap bound")
    ax.plot(
        x,
        [r.values["direct_sum_majorization"] for r in records],
        color="tab:red",
        ls="--",
        label="direct-sum majorization",
    )
    ax.set_xlabel(r"$\theta$")
    ax.set_ylabel("bits")
    ax.set_xlim(x[0], x[-1])
    ax.legend(frameon=False)
    _save(fig, path)
