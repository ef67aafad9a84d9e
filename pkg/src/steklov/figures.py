"""Figure rendering for sweep reports.

Draws the straight-line eigenvalue fans lambda(eps) = k + eps * slope, one
figure per (p, q, k), next to the delimited sweep output.  Rendering is
deterministic: a fixed hash salt and no embedded timestamps.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "steklov"

import matplotlib.pyplot as plt

__all__ = ["render_fan_figures"]


def render_fan_figures(rows, eps_grid, outdir: Path, fmt: str = "svg") -> list[Path]:
    """Render one eigenvalue-fan figure per (p, q, k) group of sweep rows.

    ``rows`` are dicts with keys p, q, k, branch, slope; ``eps_grid`` is the
    abscissa.  Returns the written paths.
    """
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    groups: dict[tuple[int, int, int], list[dict]] = {}
    for row in rows:
        groups.setdefault((row["p"], row["q"], row["k"]), []).append(row)

    written = []
    for (p, q, k), branch_rows in sorted(groups.items()):
        fig, ax = plt.subplots(figsize=(4.0, 3.0))
        for row in sorted(branch_rows, key=lambda r: r["branch"]):
            ax.plot(
                eps_grid,
                [k + e * row["slope"] for e in eps_grid],
                label=f"branch {row['branch']}",
                linewidth=1.2,
            )
        ax.set_xlabel(r"$\varepsilon$")
        ax.set_ylabel(r"$\lambda$")
        ax.set_title(f"group k={k}, perturbation ({p},{q})")
        ax.legend(fontsize=7, loc="best")
        fig.tight_layout()
        path = outdir / f"fan_p{p}_q{q}_k{k}.{fmt}"
        fig.savefig(path, metadata={"Date": None} if fmt == "svg" else None)
        plt.close(fig)
        written.append(path)
    return written
