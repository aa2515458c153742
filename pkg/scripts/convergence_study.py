"""Oracle step-size study and analytic-vs-oracle agreement on an energy grid.

    python scripts/convergence_study.py --model fig4 --emin 4 --emax 250 --n 25
"""
import argparse
import math

import numpy as np

from pdem_scatter import BarrierModel, WellModel, match
from pdem_scatter.oracle import OracleConfig, integrate

MODELS = {
    "well": WellModel(4, 3, 2),
    "fig3": BarrierModel(0.4, 5, 1, -0.8, 0.8),
    "fig4": BarrierModel(0.4, 5, 1, -1.5, 1.5),
}


def richardson(model, E, h0=0.02, levels=4):
    """Observed order of |T| from successive step halvings."""
    T = [abs(integrate(model, E, OracleConfig(step=h0 / 2**j, check=False)).T) for j in range(levels)]
    return [math.log2(abs(T[j] - T[j + 1]) / abs(T[j + 1] - T[j + 2])) for j in range(levels - 2)]


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--model", choices=sorted(MODELS), default="well")
    p.add_argument("--emin", type=float, default=1.0)
    p.add_argument("--emax", type=float, default=100.0)
    p.add_argument("--n", type=int, default=20)
    args = p.parse_args(argv)
    model = MODELS[args.model]

    mid = 0.5 * (args.emin + args.emax)
    print(f"# Richardson orders at E={mid:g}:", " ".join(f"{q:.3f}" for q in richardson(model, mid)))
    print("E,R_err,T_err")
    for E in np.linspace(args.emin, args.emax, args.n):
        a, o = match(model, float(E)), integrate(model, float(E))
        print(f"{E:.6g},{abs(a.R - o.R):.3e},{abs(a.T - o.T):.3e}")


if __name__ == "__main__":
    main()
