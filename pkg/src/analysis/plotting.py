# src/analysis/plotting.py
import io

import matplotlib

matplotlib.use("Agg")
# fixed element ids in the SVG output
matplotlib.rcParams["svg.hashsalt"] = "level-engine"
import matplotlib.pyplot as plt  # noqa: E402

from src.analysis.spectral import PeakSet, Spectrum  # noqa: E402


def render_spectrum_svg(spectrum: Spectrum, peaks: PeakSet, title: str = "") -> str:
    """Static SVG line chart of Re A(omega) with the detected peaks marked."""
    fig, ax = plt.subplots(figsize=(8, 4))
    ax.plot(spectrum.omegas, spectrum.real, linewidth=1.0, label="Re A(ω)")
    if len(peaks):
        ax.plot([p.omega for p in peaks], [p.height for p in peaks], "v",
                color="tab:red", label="peaks")
    ax.set_xlabel("ω (units of J)")
    ax.set_ylabel("Re A(ω)")
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="upper right")
    fig.tight_layout()

    buffer = io.StringIO()
    # no timestamp so identical runs produce identical files
    fig.savefig(buffer, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buffer.getvalue()
