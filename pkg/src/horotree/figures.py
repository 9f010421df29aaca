"""Figure rendering for the report path.

Figures are a convenience view of the exact CSV data written next to them;
floats appear here only, never in the computational modules.  matplotlib is
imported lazily so the library has no hard runtime dependency on a display
stack, and PNG metadata that would break byte-stability is suppressed.
"""

from __future__ import annotations

import os


def _plt():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


_SAVE_KW = {"dpi": 110, "metadata": {"Software": None}}


def plot_ray_values(path, q, ns, values_by_z0):
    """|E(n)| against n for a few sampled z0, log scale."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(5.2, 3.4))
    for z0, vals in values_by_z0.items():
        ax.semilogy(ns, [abs(float(v)) for v in vals], marker="o", ms=3,
                    label="z0 = %s" % z0)
    ax.set_xlabel("ray index n")
    ax.set_ylabel("|E(n)|")
    ax.set_title("ray series values, q = %d" % q)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def plot_partial_sums(path, q, series_by_z0):
    """Partial sums of the coset sum by bottom-row degree."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(5.2, 3.4))
    for z0, sums in series_by_z0.items():
        ax.plot(range(len(sums)), [float(s) for s in sums], marker="o", ms=3,
                label="z0 = %s" % z0)
    ax.set_xlabel("bottom-row degree D")
    ax.set_ylabel("partial sum at sigma_0")
    ax.set_title("brute-force partial sums, q = %d" % q)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def plot_compare_ratio(path, q, rows):
    """Brute/ray ratio per ray vertex (constancy is the oracle-match statement)."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(5.2, 3.4))
    xs = range(len(rows))
    ax.plot(xs, [float(r.ratio) for r in rows], marker="s", ms=4)
    ax.set_xticks(list(xs))
    ax.set_xticklabels([r.vertex for r in rows], fontsize=8)
    ax.set_ylabel("brute / ray model")
    ax.set_title("oracle comparison, q = %d" % q)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def plot_pole_profile(path, data, grid=None):
    """|E(0)| on a rational grid across the pole of the continued series."""
    from fractions import Fraction

    from .exactalg import PoleError

    plt = _plt()
    if grid is None:
        grid = [Fraction(k, 200) for k in range(2, 199)]
    xs, ys = [], []
    for z0 in grid:
        try:
            val = data.value(0).evaluate(z0)
        except PoleError:
            continue
        xs.append(float(z0))
        ys.append(abs(float(val)))
    fig, ax = plt.subplots(figsize=(5.2, 3.4))
    ax.semilogy(xs, ys, lw=1)
    for r in (Fraction(1, data.q),):
        ax.axvline(float(r), color="crimson", ls="--", lw=1, label="pole z = %s" % r)
    ax.set_xlabel("z")
    ax.set_ylabel("|E(0)(z)|")
    ax.set_title("continued series across its pole, q = %d" % data.q)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def render_report_figures(outdir, q, ray_values_by_z0, ns, brute_sums_by_z0,
                          compare_rows, data):
    figdir = os.path.join(outdir, "figures")
    os.makedirs(figdir, exist_ok=True)
    plot_ray_values(os.path.join(figdir, "ray_values.png"), q, ns, ray_values_by_z0)
    plot_partial_sums(os.path.join(figdir, "partial_sums.png"), q, brute_sums_by_z0)
    plot_compare_ratio(os.path.join(figdir, "oracle_ratio.png"), q, compare_rows)
    plot_pole_profile(os.path.join(figdir, "pole_profile.png"), data)
    return figdir
