"""``pdem-scatter``: profiles, wavefunctions, sweeps and verification as CSV.

Usage::

    pdem-scatter <job> [--config FILE] [--preset NAME] [--model well|barrier]
                 [model parameters] [--E E] [--emin A --emax B --n N]
                 [--zmin A --zmax B --nz N] [--engine analytic|oracle|both]
                 [--out PATH]

Config files hold ``key = value`` lines with ``#`` comments, using the flag
names as keys. Precedence is preset < file < flags.
"""
from __future__ import annotations

import argparse
import io
import sys
from dataclasses import dataclass, fields
from typing import Optional

import numpy as np

from . import matcher, oracle
from .errors import ConfigError, MissingRequired, ParseError, PdemError, UnknownKey
from .models import BarrierModel, WellModel

JOBS = ("profile", "wavefunction", "sweep", "verify")
ENGINES = ("analytic", "oracle", "both")
VERIFY_AMP_TOL = 1e-6
VERIFY_FLUX_TOL = 1e-8

PRESETS = {
    "fig1": {"model": "well", "beta": 4.0, "mu": 3.0, "a0": 2.0},
    "fig2": {"model": "well", "beta": 4.0, "mu": 3.0, "a0": 2.0, "E": 40.0},
    "fig3": {"model": "barrier", "m0": 0.4, "V0": 5.0, "alpha": 1.0,
             "a1": -0.8, "a2": 0.8, "E": 33.0},
    "fig4": {"model": "barrier", "m0": 0.4, "V0": 5.0, "alpha": 1.0,
             "a1": -1.5, "a2": 1.5, "E": 33.0},
}
# presets whose decay constant alpha is an assumed default
_ALPHA_DEFAULTED = {"fig3", "fig4"}

_FLOAT_KEYS = ("beta", "mu", "a0", "m0", "V0", "alpha", "a1", "a2",
               "E", "emin", "emax", "zmin", "zmax")
_INT_KEYS = ("n", "nz")
_STR_KEYS = ("model", "job", "engine", "out", "preset")
KEYS = _FLOAT_KEYS + _INT_KEYS + _STR_KEYS
_MODEL_KEYS = {"well": ("beta", "mu", "a0"),
               "barrier": ("m0", "V0", "alpha", "a1", "a2")}


@dataclass
class JobConfig:
    model_kind: str
    job: str
    beta: Optional[float] = None
    mu: Optional[float] = None
    a0: Optional[float] = None
    m0: Optional[float] = None
    V0: Optional[float] = None
    alpha: Optional[float] = None
    a1: Optional[float] = None
    a2: Optional[float] = None
    E: Optional[float] = None
    E_min: Optional[float] = None
    E_max: Optional[float] = None
    n_points: int = 100
    z_min: Optional[float] = None
    z_max: Optional[float] = None
    n_z: int = 401
    engine: str = "analytic"
    output_path: Optional[str] = None
    preset: Optional[str] = None
    alpha_defaulted: bool = False

    def model(self):
        if self.model_kind == "well":
            return WellModel(self.beta, self.mu, self.a0)
        return BarrierModel(self.m0, self.V0, self.alpha, self.a1, self.a2)


def _convert(key, raw, line=None):
    if key in _FLOAT_KEYS:
        try:
            return float(raw)
        except ValueError:
            raise ParseError(key, f"expected a number, got {raw!r}", line) from None
    if key in _INT_KEYS:
        try:
            return int(raw)
        except ValueError:
            raise ParseError(key, f"expected an integer, got {raw!r}", line) from None
    return raw


def read_config_file(text: str) -> dict:
    """Parse ``key = value`` lines into ``{key: (value, line_number)}``."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(line, "expected 'key = value'", lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KEYS:
            raise UnknownKey(key, "unknown configuration key", lineno)
        if not value:
            raise ParseError(key, "empty value", lineno)
        values[key] = (_convert(key, value, lineno), lineno)
    return values


def _parser():
    p = argparse.ArgumentParser(prog="pdem-scatter", allow_abbrev=False,
                                description="Scattering states with position-dependent mass.")
    p.add_argument("job_pos", nargs="?", metavar="job", help="|".join(JOBS))
    p.add_argument("--job")
    p.add_argument("--config")
    for key in KEYS:
        if key != "job":
            p.add_argument(f"--{key}")
    return p


def parse_config(args: list[str], file: Optional[str] = None) -> JobConfig:
    """Build a :class:`JobConfig` from flags and an optional config file.

    ``file`` is the file's text; a ``--config PATH`` flag is read from disk
    when ``file`` is not given.
    """
    ns, extra = _parser().parse_known_args(args)
    if extra:
        raise UnknownKey(extra[0], "unknown flag")
    flags = {k: v for k, v in vars(ns).items() if v is not None}
    job_pos = flags.pop("job_pos", None)
    if job_pos is not None:
        flags.setdefault("job", job_pos)
    config_path = flags.pop("config", None)
    if file is None and config_path is not None:
        try:
            with open(config_path, encoding="utf-8") as fh:
                file = fh.read()
        except OSError as exc:
            raise ParseError("config", str(exc)) from None

    from_file = read_config_file(file) if file else {}
    values = {k: v for k, (v, _) in from_file.items()}
    lines = {k: ln for k, (_, ln) in from_file.items()}
    values.update({k: _convert(k, v) for k, v in flags.items()})

    preset = values.get("preset")
    alpha_defaulted = False
    if preset is not None:
        if preset not in PRESETS:
            raise ParseError("preset", f"unknown preset {preset!r}; choose from {sorted(PRESETS)}",
                             lines.get("preset"))
        merged = dict(PRESETS[preset])
        alpha_defaulted = preset in _ALPHA_DEFAULTED and "alpha" not in values
        merged.update(values)
        values = merged

    def need(key):
        if key not in values:
            raise MissingRequired(key)
        return values[key]

    model_kind = need("model")
    if model_kind not in _MODEL_KEYS:
        raise ParseError("model", f"expected well or barrier, got {model_kind!r}", lines.get("model"))
    job = need("job")
    if job not in JOBS:
        raise ParseError("job", f"expected one of {JOBS}, got {job!r}", lines.get("job"))
    for key in _MODEL_KEYS[model_kind]:
        need(key)
    engine = values.get("engine", "analytic")
    if engine not in ENGINES:
        raise ParseError("engine", f"expected one of {ENGINES}, got {engine!r}", lines.get("engine"))

    cfg = JobConfig(
        model_kind=model_kind, job=job,
        **{k: values.get(k) for k in _MODEL_KEYS[model_kind]},
        E=values.get("E"), E_min=values.get("emin"), E_max=values.get("emax"),
        n_points=values.get("n", 100), z_min=values.get("zmin"), z_max=values.get("zmax"),
        n_z=values.get("nz", 401), engine=engine, output_path=values.get("out"),
        preset=preset, alpha_defaulted=alpha_defaulted,
    )
    try:
        model = cfg.model()
    except ValueError as exc:
        raise ParseError(model_kind, str(exc)) from None

    if job == "wavefunction":
        need("E")
    if job == "sweep" or (job == "verify" and (cfg.E is None or "emin" in values or "emax" in values)):
        need("emin")
        need("emax")
        if not cfg.E_min < cfg.E_max:
            raise ParseError("emin", "emin must be below emax", lines.get("emin"))
        if cfg.n_points < 2:
            raise ParseError("n", "need at least 2 energies", lines.get("n"))
    if job in ("profile", "wavefunction"):
        a1, a2 = model.junctions
        half = 0.5 * (a2 - a1)
        if cfg.z_min is None:
            cfg.z_min = a1 - half
        if cfg.z_max is None:
            cfg.z_max = a2 + half
        if not cfg.z_min < cfg.z_max:
            raise ParseError("zmin", "zmin must be below zmax", lines.get("zmin"))
        if cfg.n_z < 2:
            raise ParseError("nz", "need at least 2 grid points", lines.get("nz"))
    return cfg


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def fmt(x: float) -> str:
    return f"{float(x) + 0.0:.17g}"


def _metadata(cfg: JobConfig) -> list[str]:
    out = ["# pdem-scatter"]
    for f in fields(cfg):
        value = getattr(cfg, f.name)
        if value is None:
            continue
        out.append(f"# {f.name} = {value}")
    if cfg.model_kind == "barrier" and cfg.alpha_defaulted:
        out.append(f"# note: alpha = {cfg.alpha} is a preset default, not a measured value")
    out.append("# units: hbar = 1, dimensionless")
    return out


class _Job:
    def __init__(self, cfg):
        self.cfg = cfg
        self.model = cfg.model()
        self.header: list[str] = []
        self.rows: list[str] = []
        self.failures: list[str] = []
        self.status = 0

    def row(self, *values):
        self.rows.append(",".join(fmt(v) for v in values))

    def fail(self, E, exc):
        self.failures.append(f"E={fmt(E)}: {type(exc).__name__}: {exc}")


def _solvers(engine):
    out = []
    if engine in ("analytic", "both"):
        out.append(("", matcher.match))
    if engine in ("oracle", "both"):
        out.append(("_oracle", oracle.integrate))
    return out


def _energies(cfg):
    if cfg.job == "verify" and cfg.E_min is None:
        return [cfg.E]
    return [float(e) for e in np.linspace(cfg.E_min, cfg.E_max, cfg.n_points)]


def _job_profile(job):
    cfg, model = job.cfg, job.model
    job.header = ["z", "m", "V"]
    for z in np.linspace(cfg.z_min, cfg.z_max, cfg.n_z):
        job.row(z, model.mass(float(z)), model.potential(float(z)))


def _oracle_wave(model, E, zs):
    sol = oracle.integrate(model, E)
    a1, a2 = model.junctions
    k2, m2 = sol.asym.k2, sol.asym.m2
    u0 = np.exp(1j * k2 * a2)
    trace = oracle.interior_trace(model, E, oracle.OracleConfig(),
                                  oracle.StateVector(u0, 1j * k2 / m2 * u0))
    tz = np.array([t[0] for t in trace])[::-1]
    tu = np.array([t[1].u for t in trace])[::-1] * sol.T
    out = []
    for z in zs:
        if z < a1:
            out.append(np.exp(1j * sol.asym.k1 * z) + sol.R * np.exp(-1j * sol.asym.k1 * z))
        elif z > a2:
            out.append(sol.T * np.exp(1j * k2 * z))
        else:
            out.append(np.interp(z, tz, tu.real) + 1j * np.interp(z, tz, tu.imag))
    return out


def _job_wavefunction(job):
    cfg, model = job.cfg, job.model
    zs = [float(z) for z in np.linspace(cfg.z_min, cfg.z_max, cfg.n_z)]
    columns = []
    try:
        for suffix, _ in _solvers(cfg.engine):
            if suffix:
                psi = _oracle_wave(model, cfg.E, zs)
            else:
                sol = matcher.match(model, cfg.E)
                psi = [s.psi for s in matcher.wavefunction_grid(model, sol, zs[0], zs[-1], len(zs))]
            job.header += [f"re_psi{suffix}", f"im_psi{suffix}", f"abs_psi{suffix}"]
            columns.append(psi)
    except PdemError as exc:
        job.fail(cfg.E, exc)
        return
    job.header = ["z"] + job.header
    for i, z in enumerate(zs):
        vals = [z]
        for psi in columns:
            vals += [psi[i].real, psi[i].imag, abs(psi[i])]
        job.row(*vals)


def _job_sweep(job):
    cfg, model = job.cfg, job.model
    solvers = _solvers(cfg.engine)
    job.header = ["E"] + [f"{c}{s}" for s, _ in solvers for c in ("T_sq", "R_sq", "Tc", "Rc")]
    for E in _energies(cfg):
        vals = [E]
        try:
            for _, solve in solvers:
                c = matcher.coefficients(solve(model, E))
                vals += [c.T_sq, c.Rc, c.Tc, c.Rc]
        except PdemError as exc:
            job.fail(E, exc)
            continue
        job.row(*vals)


def _job_verify(job):
    cfg, model = job.cfg, job.model
    job.header = ["E", "R_err", "T_err", "flux_residual"]
    for E in _energies(cfg):
        try:
            a = matcher.match(model, E)
            o = oracle.integrate(model, E)
        except PdemError as exc:
            job.fail(E, exc)
            continue
        r_err, t_err = abs(a.R - o.R), abs(a.T - o.T)
        flux = matcher.flux_residual(a)
        job.row(E, r_err, t_err, flux)
        if r_err > VERIFY_AMP_TOL or t_err > VERIFY_AMP_TOL or flux > VERIFY_FLUX_TOL:
            job.status = 1
            job.failures.append(
                f"E={fmt(E)}: R_err={r_err:.3e} T_err={t_err:.3e} flux_residual={flux:.3e} exceeds tolerance"
            )


_JOBS = {"profile": _job_profile, "wavefunction": _job_wavefunction,
         "sweep": _job_sweep, "verify": _job_verify}


def render(cfg: JobConfig) -> tuple[int, str, list[str]]:
    """Run a job; return ``(exit_status, csv_text, diagnostics)``."""
    job = _Job(cfg)
    _JOBS[cfg.job](job)
    incomplete = any(not f.endswith("exceeds tolerance") for f in job.failures)
    buf = io.StringIO()
    for line in _metadata(cfg):
        buf.write(line + "\n")
    if job.header:
        buf.write(",".join(job.header) + "\n")
    for r in job.rows:
        buf.write(r + "\n")
    if incomplete:
        buf.write("# INCOMPLETE\n")
    status = 1 if (job.failures or job.status) else 0
    return status, buf.getvalue(), job.failures


def run(cfg: JobConfig, stdout=None, stderr=None) -> int:
    """Execute ``cfg`` and write its CSV; returns the process exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    status, text, diagnostics = render(cfg)
    if cfg.output_path and cfg.output_path != "-":
        with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    for d in diagnostics:
        print(d, file=stderr)
    return status


def main(argv: Optional[list[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except ConfigError as exc:
        print(f"pdem-scatter: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
