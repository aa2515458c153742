"""Write the CSV data behind the profile, wavefunction and transmission plots.

Each file is produced through the command-line front end, so its ``#`` header
records the full configuration.

    python scripts/reproduce_figures.py --outdir figures
"""
import argparse
import pathlib
import sys

from pdem_scatter.cli import parse_config, run

JOBS = {
    "fig1_well_profile.csv": ["profile", "--preset", "fig1", "--nz", "801"],
    "fig2_well_wavefunction.csv": ["wavefunction", "--preset", "fig2", "--nz", "801", "--engine", "both"],
    "fig3_barrier_profile.csv": ["profile", "--preset", "fig3", "--nz", "801"],
    "fig4_barrier_wavefunction.csv": ["wavefunction", "--preset", "fig4", "--nz", "801", "--engine", "both"],
    "fig5_well_sweep.csv": ["sweep", "--preset", "fig1", "--emin", "0.05", "--emax", "100", "--n", "400"],
    "fig6_barrier_sweep_narrow.csv": ["sweep", "--preset", "fig3", "--emin", "4", "--emax", "250", "--n", "400"],
    "fig6_barrier_sweep_wide.csv": ["sweep", "--preset", "fig4", "--emin", "4", "--emax", "250", "--n", "400"],
}


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--outdir", default="figures")
    p.add_argument("--only", nargs="*", help="subset of output file names")
    args = p.parse_args(argv)

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    status = 0
    for name, job in JOBS.items():
        if args.only and name not in args.only:
            continue
        cfg = parse_config(job + ["--out", str(outdir / name)])
        rc = run(cfg)
        print(f"{name}: {'ok' if rc == 0 else f'exit {rc}'}")
        status = max(status, rc)
    return status


if __name__ == "__main__":
    sys.exit(main())
