"""Command-line driver.

    infoquanta [--config PATH] [--seed N] [--out DIR] [--units natural|si] COMMAND

Commands: word, spectrum, entropy, trajectory, generate, detect, power.
Global flags may also follow the command name. Each command writes its
files into ``--out`` and prints its JSON summary on stdout. Exit status is
0 on success, 2 for invalid input and 3 for numerical non-convergence.
"""

from __future__ import annotations

import argparse
import copy
import hashlib
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import io as qio
from .dynamics import FockSpace, build_hamiltonian, eigen_spectrum, evolve, ground_energy_analytic
from .entropy import (DensityMatrix, JointDistribution, PureState, entanglement_entropy,
                      joint_shannon_entropy, mutual_information, to_bits, von_neumann_entropy)
from .errors import ConvergenceError, InfoQuantaError, ValidationError
from .infocore import PhysicalConstants, ProbabilityWeights, word_information, zeta
from .signal import (Damping, NoiseModel, SignalModel, Tone, analytic_floor, detect_excess_power,
                     inject_tones, measured_power, signal_power_rate, synthesize_noise,
                     tone_amplitude, welch_psd)
from .stochastic import MarkovChain, RandomSource, entropy_trajectory, stationary_distribution

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3

COMMANDS = ("word", "spectrum", "entropy", "trajectory", "generate", "detect", "power")

DEFAULTS = {
    "units": "natural",
    "seed": 0,
    "constants": {},
    "word": {"weights": {"0": 1.0}},
    "hamiltonian": {
        "omega": 1.0, "zeta": None, "word_index": 0, "lambda": 0.1, "dim": 64,
        "evolve_t": None, "evolve_steps": 100, "initial_fock": 0,
    },
    "entropy": {"joint": None, "density": None, "state": None, "dims": None},
    "chain": {"states": [0, 1], "transition": [[0.5, 0.5], [0.5, 0.5]], "start": None,
              "max_iter": 1_000_000},
    "trajectory": {"states": [[1.0, 0.0], [0.0, 1.0]], "t_stop": 100.0, "num": 1001,
                   "window": 200, "bins": 20},
    "noise": {"K": 1.0, "T": 1.0, "M": 1.0},
    "signal": {"tones": [], "rate_scale": 1.0, "damping": {"gamma0": 0.0, "tau": None}},
    "generate": {"duration": 64.0, "sample_rate": 1024.0},
    "detect": {"segment_length": 256, "overlap": 0.5, "window": "hann",
               "threshold_sigma": 5.0, "guard": 1},
    "power": {"Z": None, "T": None, "omega": 1.0, "times": None, "t_start": 1.0,
              "t_stop": 10.0, "num": 10, "Z_dot": None},
}

# blocks whose values are free-form (not merged key by key)
_OPAQUE = {"constants", "weights"}


def _merge(defaults: dict, given: dict, where: str) -> dict:
    unknown = set(given) - set(defaults)
    if unknown:
        raise ValidationError(f"unknown key(s) in {where}: {', '.join(sorted(unknown))}")
    out = copy.deepcopy(defaults)
    for key, value in given.items():
        sub = defaults[key]
        if isinstance(sub, dict) and key not in _OPAQUE:
            if not isinstance(value, dict):
                raise ValidationError(f"{where}.{key} must be an object")
            out[key] = _merge(sub, value, f"{where}.{key}")
        else:
            out[key] = copy.deepcopy(value)
    return out


def resolve_config(raw: dict | None, seed=None, units=None) -> dict:
    """Merge a user config over the defaults; command-line flags win."""
    raw = {} if raw is None else raw
    if not isinstance(raw, dict):
        raise ValidationError("config must be a JSON object")
    cfg = _merge(DEFAULTS, raw, "config")
    if seed is not None:
        cfg["seed"] = seed
    if units is not None:
        cfg["units"] = units
    return cfg


def _constants(cfg) -> PhysicalConstants:
    base = PhysicalConstants.from_units(cfg["units"])
    if not isinstance(cfg["constants"], dict):
        raise ValidationError("constants must be an object")
    over = dict(cfg["constants"])
    if not over:
        return base
    if "h" in over and "hbar" not in over:
        over["hbar"] = over["h"] / (2.0 * math.pi)
    elif "hbar" in over and "h" not in over:
        over["h"] = 2.0 * math.pi * over["hbar"]
    merged = base.to_dict()
    merged.update(over)
    return PhysicalConstants.from_dict(merged)


def _num(value, name, positive=False, nonneg=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ValidationError(f"{name} must be a finite number, got {value!r}")
    if positive and not value > 0:
        raise ValidationError(f"{name} must be positive, got {value!r}")
    if nonneg and not value >= 0:
        raise ValidationError(f"{name} must be non-negative, got {value!r}")
    return float(value)


def _int(value, name, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{name} must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ValidationError(f"{name} must be >= {minimum}, got {value!r}")
    return value


class Setup:
    """Validated domain objects for every config block."""

    def __init__(self, cfg: dict):
        self.cfg = cfg
        seed = cfg["seed"]
        if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < 2**64:
            raise ValidationError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
        self.constants = _constants(cfg)

        self.weights = ProbabilityWeights(cfg["word"]["weights"])

        h = cfg["hamiltonian"]
        self.space = FockSpace(_int(h["dim"], "hamiltonian.dim", 2), _num(h["omega"], "hamiltonian.omega", positive=True))
        z = zeta(_int(h["word_index"], "hamiltonian.word_index", 0)) if h["zeta"] is None \
            else _num(h["zeta"], "hamiltonian.zeta", nonneg=True)
        self.hamiltonian = build_hamiltonian(self.space, z, _num(h["lambda"], "hamiltonian.lambda"), self.constants)
        if h["evolve_t"] is not None:
            _num(h["evolve_t"], "hamiltonian.evolve_t", nonneg=True)
            _int(h["evolve_steps"], "hamiltonian.evolve_steps", 1)
            fock = _int(h["initial_fock"], "hamiltonian.initial_fock", 0)
            if fock >= self.space.dim:
                raise ValidationError("hamiltonian.initial_fock must be below dim")

        c = cfg["chain"]
        self.chain = MarkovChain(tuple(c["states"]), np.asarray(c["transition"], dtype=float))
        if c["start"] is not None and _int(c["start"], "chain.start", 0) not in self.chain.states:
            raise ValidationError("chain.start is not a chain state")
        _int(c["max_iter"], "chain.max_iter", 1)

        tr = cfg["trajectory"]
        self.trajectory_states = [PureState.normalized(qio.decode_complex(s, 1)) for s in tr["states"]]
        self.t_grid = np.linspace(0.0, _num(tr["t_stop"], "trajectory.t_stop", positive=True),
                                  _int(tr["num"], "trajectory.num", 2))
        _int(tr["window"], "trajectory.window", 1)
        _int(tr["bins"], "trajectory.bins", 1)
        if len(self.trajectory_states) != self.chain.size:
            raise ValidationError(f"trajectory.states has {len(self.trajectory_states)} entries "
                                  f"for a {self.chain.size}-state chain")
        if len({p.dim for p in self.trajectory_states}) != 1:
            raise ValidationError("trajectory.states must share one dimension")

        e = cfg["entropy"]
        self.joint = None if e["joint"] is None else JointDistribution(e["joint"])
        self.density = None if e["density"] is None else DensityMatrix(qio.decode_complex(e["density"], 2))
        self.state = None
        if e["state"] is not None:
            if not isinstance(e["dims"], list) or len(e["dims"]) != 2:
                raise ValidationError("entropy.dims must be [dimA, dimB] when a state is given")
            self.dims = (_int(e["dims"][0], "entropy.dims[0]", 1), _int(e["dims"][1], "entropy.dims[1]", 1))
            self.state = PureState.normalized(qio.decode_complex(e["state"], 1))
            if self.state.dim != self.dims[0] * self.dims[1]:
                raise ValidationError(f"entropy.state has dim {self.state.dim}, dims give "
                                      f"{self.dims[0] * self.dims[1]}")

        n = cfg["noise"]
        self.noise = NoiseModel(_num(n["K"], "noise.K", positive=True),
                                _num(n["T"], "noise.T", nonneg=True), self.constants)
        self.M = _num(n["M"], "noise.M", nonneg=True)

        s = cfg["signal"]
        tones = []
        for i, tone in enumerate(s["tones"]):
            if not isinstance(tone, dict) or set(tone) != {"omega", "Z"}:
                raise ValidationError(f"signal.tones[{i}] must be an object with keys omega and Z")
            tones.append(Tone(_num(tone["omega"], f"signal.tones[{i}].omega", positive=True),
                              _num(tone["Z"], f"signal.tones[{i}].Z", nonneg=True)))
        d = s["damping"]
        damping = Damping(_num(d["gamma0"], "signal.damping.gamma0", nonneg=True),
                          None if d["tau"] is None else _num(d["tau"], "signal.damping.tau", positive=True))
        self.signal = SignalModel(tuple(tones), self.M, damping, self.noise,
                                  _num(s["rate_scale"], "signal.rate_scale", positive=True),
                                  phase_seed=seed)

        g = cfg["generate"]
        self.duration = _num(g["duration"], "generate.duration", positive=True)
        self.sample_rate = _num(g["sample_rate"], "generate.sample_rate", positive=True)
        nyquist = 0.5 * self.sample_rate
        for tone in tones:
            if tone.omega / (2.0 * math.pi) >= nyquist:
                raise ValidationError(f"tone at {tone.omega / (2 * math.pi):g} Hz is above Nyquist {nyquist:g} Hz")

        det = cfg["detect"]
        _int(det["segment_length"], "detect.segment_length", 2)
        _num(det["overlap"], "detect.overlap", nonneg=True)
        _num(det["threshold_sigma"], "detect.threshold_sigma", positive=True)
        _int(det["guard"], "detect.guard", 0)

        p = cfg["power"]
        if p["times"] is not None:
            self.power_times = np.asarray([_num(v, "power.times[]") for v in p["times"]])
        else:
            self.power_times = np.linspace(_num(p["t_start"], "power.t_start"),
                                           _num(p["t_stop"], "power.t_stop"),
                                           _int(p["num"], "power.num", 1))
        if np.any(self.power_times <= 0):
            raise ValidationError("power window must start at t > 0")
        self.power_Z = zeta(0) if p["Z"] is None else _num(p["Z"], "power.Z")
        self.power_T = self.noise.T if p["T"] is None else _num(p["T"], "power.T", nonneg=True)
        self.power_omega = _num(p["omega"], "power.omega", positive=True)
        self.power_Z_dot = None if p["Z_dot"] is None else _num(p["Z_dot"], "power.Z_dot")


def _emit(out: Path, name: str, payload: dict) -> dict:
    qio.write_json(out / f"{name}.json", payload)
    sys.stdout.write(qio.dumps(payload))
    return payload


def cmd_word(setup: Setup, out: Path, args) -> dict:
    word = word_information(setup.weights)
    return _emit(out, "word", {
        "config": setup.cfg,
        "zeta": {str(n): zeta(n) for n in word.weights},
        "contributions": {str(n): v for n, v in word.contributions.items()},
        "Z": word.value,
    })


def cmd_spectrum(setup: Setup, out: Path, args) -> dict:
    model = setup.hamiltonian
    energies = eigen_spectrum(model)
    qio.write_csv(out / "spectrum.csv", "level,energy", [np.arange(energies.size), energies])
    analytic = ground_energy_analytic(model.space.omega, model.zeta, model.coupling, model.constants)
    summary = {
        "config": setup.cfg,
        "dim": model.dim,
        "zeta": model.zeta,
        "ground_energy": float(energies[0]),
        "ground_energy_analytic": analytic,
        "discrepancy": float(energies[0] - analytic),
    }
    h = setup.cfg["hamiltonian"]
    if h["evolve_t"] is not None:
        result = evolve(PureState.basis(model.dim, h["initial_fock"]), model, h["evolve_t"], h["evolve_steps"])
        qio.write_csv(out / "evolution.csv", "t,number,energy", [result.times, result.number, result.energy])
        summary["evolution"] = {"steps": h["evolve_steps"], "t": h["evolve_t"],
                                "energy_drift": float(np.ptp(result.energy))}
    return _emit(out, "spectrum", summary)


def cmd_entropy(setup: Setup, out: Path, args) -> dict:
    if setup.joint is None and setup.density is None and setup.state is None:
        raise ValidationError("entropy block needs at least one of joint, density, state")
    result = {"config": setup.cfg}

    def both(value):
        return {"nats": value, "bits": to_bits(value)}

    if setup.joint is not None:
        result["shannon"] = both(joint_shannon_entropy(setup.joint))
        result["mutual_information"] = both(mutual_information(setup.joint))
    if setup.density is not None:
        result["von_neumann"] = both(von_neumann_entropy(setup.density))
    if setup.state is not None:
        result["entanglement"] = both(entanglement_entropy(setup.state, *setup.dims))
    return _emit(out, "entropy", result)


def cmd_trajectory(setup: Setup, out: Path, args) -> dict:
    tr = setup.cfg["trajectory"]
    pi = stationary_distribution(setup.chain, max_iter=setup.cfg["chain"]["max_iter"])
    traj = entropy_trajectory(setup.chain, setup.trajectory_states, setup.t_grid,
                              RandomSource(setup.cfg["seed"]), tr["window"], bins=tr["bins"],
                              start=setup.cfg["chain"]["start"])
    qio.write_csv(out / "trajectory.csv", "t,value", [traj.times, traj.entropies])
    return _emit(out, "trajectory", {
        "config": setup.cfg,
        "mean_entropy": traj.mean,
        "histogram": {"counts": traj.histogram.tolist(), "edges": traj.bin_edges.tolist()},
        "stationary": {str(k): v for k, v in pi.items()},
    })


def cmd_generate(setup: Setup, out: Path, args) -> dict:
    source = RandomSource(setup.cfg["seed"])
    series = synthesize_noise(setup.noise, setup.M, setup.duration, setup.sample_rate, source)
    series = inject_tones(series, setup.signal)
    qio.write_series_csv(out / "series.csv", series)
    tones = [{"omega": t.omega, "Z": t.Z, "freq_hz": t.omega / (2.0 * math.pi),
              "amplitude": tone_amplitude(t.Z, setup.noise.T, setup.constants, setup.signal.rate_scale)}
             for t in setup.signal.tones]
    return _emit(out, "generate", {
        "config": setup.cfg,
        "n_samples": len(series),
        "sample_rate": series.sample_rate,
        "tones": tones,
    })


def cmd_detect(setup: Setup, out: Path, args) -> dict:
    if args.input is None:
        raise ValidationError("detect needs --input <series.csv>")
    series = qio.read_series_csv(args.input)
    det = setup.cfg["detect"]
    psd = welch_psd(series, det["segment_length"], det["overlap"], det["window"])
    floor = analytic_floor(psd, setup.noise, setup.M)
    T = setup.noise.T if setup.noise.T > 0 else None
    report = detect_excess_power(psd, floor, det["threshold_sigma"], T=T, constants=setup.constants,
                                 rate_scale=setup.signal.rate_scale, guard=det["guard"])
    qio.write_psd_csv(out / "psd.csv", psd)
    digest = hashlib.sha256(Path(args.input).read_bytes()).hexdigest()
    return _emit(out, "detection", {"config": setup.cfg, "input_sha256": digest, **report.to_dict()})


def cmd_power(setup: Setup, out: Path, args) -> dict:
    t = setup.power_times
    H = np.atleast_1d(measured_power(setup.power_Z, setup.power_T, t, setup.signal, setup.power_omega))
    result = {"config": setup.cfg, "t": t.tolist(), "H": H.tolist()}
    if setup.power_Z_dot is not None:
        result["rate"] = [signal_power_rate(setup.power_Z_dot, setup.power_T, setup.signal,
                                            setup.power_omega, float(ti)) for ti in t]
    return _emit(out, "power", result)


HANDLERS = {
    "word": cmd_word, "spectrum": cmd_spectrum, "entropy": cmd_entropy,
    "trajectory": cmd_trajectory, "generate": cmd_generate, "detect": cmd_detect,
    "power": cmd_power,
}


def _add_globals(parser: argparse.ArgumentParser) -> None:
    S = argparse.SUPPRESS
    parser.add_argument("--config", default=S, help="JSON config file")
    parser.add_argument("--seed", type=int, default=S, help="unsigned 64-bit seed")
    parser.add_argument("--out", default=S, help="output directory (default: out)")
    parser.add_argument("--units", choices=("natural", "si"), default=S)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="infoquanta", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    _add_globals(parser)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        _add_globals(p)
        if name == "detect":
            p.add_argument("--input", help="time-series CSV (t,value)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    opts = vars(args)
    if not hasattr(args, "input"):
        args.input = None
    try:
        raw = None
        if opts.get("config"):
            try:
                raw = json.loads(Path(opts["config"]).read_text(encoding="utf-8"))
            except OSError as exc:
                raise ValidationError(f"cannot read config: {exc}") from exc
            except json.JSONDecodeError as exc:
                raise ValidationError(f"config is not valid JSON: {exc}") from exc
        cfg = resolve_config(raw, seed=opts.get("seed"), units=opts.get("units"))
        setup = Setup(cfg)
        out = Path(opts.get("out", "out"))
        out.mkdir(parents=True, exist_ok=True)
        HANDLERS[args.command](setup, out, args)
    except ConvergenceError as exc:
        print(f"infoquanta: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (InfoQuantaError, ValueError, TypeError) as exc:
        print(f"infoquanta: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
