"""How the synchronous-approximation rate sequence R_n(D) behaves in n.

An asynchronously sampled source (irrational mismatch eps) has no exactly
periodic variance, so its rate is estimated through the rational stand-ins
eps_n = floor(n*eps)/n.  This script traces R_n(D) for n = 1..500 at four
duty cycles and two sampling time offsets.  Two things to look for:

* for small n the rate swings hard and the swings depend on the offset;
* past n ~ 230 the sequence settles into a narrow, offset-insensitive band
  whose maximum is the reported limit-superior estimate.
"""

import os

from wscs_rdf import CtVarianceProfile, PiFraction, PulseParams, PulseShape, SamplingSpec, rdf_series
from wscs_rdf.svgplot import line_plot_svg

OUT_DIR = os.path.join(os.path.dirname(__file__), "output")
D = 0.18
EPS = PiFraction(1, 7)


def profile(duty_cycle, phase_offset):
    return CtVarianceProfile(PulseShape(0.2, 4.8, PulseParams(duty_cycle, 0.01)), 5e-6, phase_offset)


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    spec = SamplingSpec(p=2, eps=EPS)

    for phi, tag in ((0.0, "phi0"), (1.0 / 16.0, "phi_1_16")):
        print(f"\n=== offset phi = {phi:g}, eps = {EPS.expr()}, D = {D} ===")
        curves = []
        for dc in (0.20, 0.45, 0.75, 0.98):
            series = rdf_series(profile(dc, phi), spec, D, n_max=500)
            curves.append((f"duty {dc:.0%}",
                           [e.n for e in series.entries],
                           [e.rate_bits for e in series.entries]))
            early = [series.entry(n).rate_bits for n in range(4, 16)]
            print(f"duty {dc:.0%}: early n in [4,15] swings over "
                  f"[{min(early):.3f}, {max(early):.3f}] bits; "
                  f"tail limsup {series.limsup_estimate:.4f} "
                  f"(spread {series.tail_spread:.4f}, argmax n={series.limsup_at})")
        path = os.path.join(OUT_DIR, f"rate_vs_n_{tag}.svg")
        with open(path, "w") as fh:
            fh.write(line_plot_svg(curves, f"R_n(D), offset {phi:g}", "n", "bits per sample"))
        print(f"wrote {path}")

    print("\nThe tail bands match across the two offsets even though the")
    print("small-n behaviour differs: the asynchronous rate forgets the offset.")


if __name__ == "__main__":
    main()
