"""Run configuration: flat sectioned key-value files or JSON.

The native format is an INI-style file:

    [model]
    n = 1
    epsilon = 0.01
    delta_rule = inverse_N_squared   ; or a fixed number, e.g. 1e-5

    [word]
    literal = ab

    [classes]
    rule = quarter                   ; quarter | midrange | midrange-distinct
    ; or explicit:  alphas = 3 4   betas = -3 4

    [sweep]
    N = 500 1000 2000

    [tolerances]
    residual = 1e-10
    signature = 1e-8

    [output]
    directory = out
    formats = csv json

    [run]
    threads = 1
    seed = 0

A JSON file with the same section/key nesting is accepted interchangeably.
Overrides are dotted assignments like ``model.epsilon=0.005``.
"""

from __future__ import annotations

import configparser
import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError, WordSyntaxError
from .orbits import HomotopyClassSpec, RESIDUAL_REQUIRED
from .profiles import TwistParams, default_delta
from .sympath import SIGNATURE_REL_TOL
from .words import Word, parse_word

_SECTIONS = ("model", "word", "classes", "sweep", "tolerances", "output",
             "run", "bounds", "density", "growth")


@dataclass(frozen=True)
class RunConfig:
    n: int
    epsilon: float
    delta_rule: str  # "inverse_N_squared" or repr of a fixed delta
    word: str
    class_rule: str
    explicit_alphas: tuple[int, ...] | None
    explicit_betas: tuple[int, ...] | None
    sweep: tuple[int, ...]
    residual_tol: float
    signature_tol: float
    out_dir: str
    formats: tuple[str, ...]
    threads: int
    seed: int
    bound_ks: tuple[int, ...]
    density_radius_factor: float
    density_max_index: int
    growth_ks: tuple[int, ...]

    def parsed_word(self) -> Word:
        return parse_word(self.word)

    def params_for(self, N: int) -> TwistParams:
        if self.delta_rule == "inverse_N_squared":
            delta = None
        else:
            try:
                delta = float(self.delta_rule)
            except ValueError:
                raise ConfigError(
                    f"delta_rule must be 'inverse_N_squared' or a number, "
                    f"got {self.delta_rule!r}") from None
        return TwistParams.make(n=self.n, epsilon=self.epsilon, N=N,
                                delta=delta)

    def class_for(self, m: int, params: TwistParams) -> HomotopyClassSpec:
        if self.explicit_alphas is not None:
            if len(self.explicit_alphas) != m or len(self.explicit_betas) != m:
                raise ConfigError(
                    f"explicit class needs {m} alphas and betas")
            return HomotopyClassSpec(alphas=self.explicit_alphas,
                                     betas=self.explicit_betas)
        if self.class_rule == "quarter":
            return HomotopyClassSpec.quarter(m, params)
        if self.class_rule == "midrange":
            return HomotopyClassSpec.midrange(m, params)
        if self.class_rule == "midrange-distinct":
            return HomotopyClassSpec.midrange(m, params, distinct=True)
        raise ConfigError(f"unknown class rule {self.class_rule!r}")

    def canonical(self) -> dict:
        """Experiment definition only: runtime and IO knobs (threads,
        output directory, formats) are excluded so they cannot change
        output bytes through the config digest."""
        return {
            "model": {"n": self.n, "epsilon": self.epsilon,
                      "delta_rule": self.delta_rule},
            "word": {"literal": self.word},
            "classes": {"rule": self.class_rule,
                        "alphas": list(self.explicit_alphas)
                        if self.explicit_alphas else None,
                        "betas": list(self.explicit_betas)
                        if self.explicit_betas else None},
            "sweep": {"N": list(self.sweep)},
            "tolerances": {"residual": self.residual_tol,
                           "signature": self.signature_tol},
            "run": {"seed": self.seed},
            "bounds": {"ks": list(self.bound_ks)},
            "density": {"radius_factor": self.density_radius_factor,
                        "max_index": self.density_max_index},
            "growth": {"ks": list(self.growth_ks)},
        }

    def digest(self) -> str:
        data = json.dumps(self.canonical(), sort_keys=True).encode()
        return hashlib.sha256(data).hexdigest()[:16]


_DEFAULTS = {
    "model": {"n": "1", "epsilon": "0.01",
              "delta_rule": "inverse_N_squared"},
    "word": {"literal": "ab"},
    "classes": {"rule": "quarter"},
    "sweep": {"n": "500 1000 2000"},
    "tolerances": {"residual": repr(RESIDUAL_REQUIRED),
                   "signature": repr(SIGNATURE_REL_TOL)},
    "output": {"directory": "out", "formats": "csv json"},
    "run": {"threads": "1", "seed": "0"},
    "bounds": {"ks": "2 3 4"},
    "density": {"radius_factor": "0.1", "max_index": "400"},
    "growth": {"ks": "1 2 3"},
}


def _raw_from_ini(path: Path) -> dict[str, dict[str, str]]:
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    return {s: dict(parser.items(s)) for s in parser.sections()}


def _raw_from_json(path: Path) -> dict[str, dict[str, str]]:
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be an object")
    raw = {}
    for section, body in data.items():
        if not isinstance(body, dict):
            raise ConfigError(f"{path}: section {section!r} must be an object")
        raw[section] = {
            key: " ".join(str(x) for x in val) if isinstance(val, list)
            else str(val)
            for key, val in body.items() if val is not None}
    return raw


def apply_overrides(raw: dict[str, dict[str, str]],
                    overrides: list[str]) -> None:
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not key=value")
        key, value = item.split("=", 1)
        if "." not in key:
            raise ConfigError(f"override key {key!r} needs a section prefix")
        section, name = key.split(".", 1)
        raw.setdefault(section, {})[name] = value


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split())
    except ValueError as exc:
        raise ConfigError(f"expected integers, got {text!r}") from exc


def build_config(raw: dict[str, dict[str, str]]) -> RunConfig:
    merged = {s: dict(v) for s, v in _DEFAULTS.items()}
    for section, body in raw.items():
        if section not in _SECTIONS:
            raise ConfigError(f"unknown config section {section!r}")
        merged.setdefault(section, {}).update(body)

    def get(section, key):
        return merged[section][key]

    try:
        n = int(get("model", "n"))
        epsilon = float(get("model", "epsilon"))
        sweep = _ints(get("sweep", "n"))
        residual = float(get("tolerances", "residual"))
        sigtol = float(get("tolerances", "signature"))
        threads = int(get("run", "threads"))
        seed = int(get("run", "seed"))
        bound_ks = _ints(get("bounds", "ks"))
        radius_factor = float(get("density", "radius_factor"))
        max_index = int(get("density", "max_index"))
        growth_ks = _ints(get("growth", "ks"))
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"bad config value: {exc}") from exc

    classes = merged["classes"]
    explicit_alphas = explicit_betas = None
    if "alphas" in classes or "betas" in classes:
        if not ("alphas" in classes and "betas" in classes):
            raise ConfigError("explicit classes need both alphas and betas")
        explicit_alphas = _ints(classes["alphas"])
        explicit_betas = _ints(classes["betas"])

    if not sweep or any(N <= 0 for N in sweep):
        raise ConfigError("sweep must list positive amplifications")
    if any(b <= a for a, b in zip(sweep, sweep[1:])):
        raise ConfigError("sweep amplifications must strictly increase")
    if threads < 1:
        raise ConfigError("threads must be at least 1")

    cfg = RunConfig(
        n=n, epsilon=epsilon, delta_rule=get("model", "delta_rule"),
        word=get("word", "literal"), class_rule=classes.get("rule", "quarter"),
        explicit_alphas=explicit_alphas, explicit_betas=explicit_betas,
        sweep=sweep, residual_tol=residual, signature_tol=sigtol,
        out_dir=get("output", "directory"),
        formats=tuple(get("output", "formats").split()),
        threads=threads, seed=seed, bound_ks=bound_ks,
        density_radius_factor=radius_factor, density_max_index=max_index,
        growth_ks=growth_ks)

    for fmt in cfg.formats:
        if fmt not in ("csv", "json"):
            raise ConfigError(f"unknown output format {fmt!r}")
    try:
        cfg.parsed_word()
    except WordSyntaxError:
        raise
    # validate model parameters and the delta rule on the first sweep point
    cfg.params_for(cfg.sweep[0])
    return cfg


def load_config(path: str | Path | None,
                overrides: list[str] | None = None) -> RunConfig:
    if path is None:
        raw = {}
    else:
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"config file {path} does not exist")
        if path.suffix == ".json":
            raw = _raw_from_json(path)
        else:
            raw = _raw_from_ini(path)
    # configparser lowercases keys; mirror that for JSON input
    raw = {s.lower(): {k.lower(): v for k, v in body.items()}
           for s, body in raw.items()}
    if overrides:
        apply_overrides(raw, [o for o in overrides])
        raw = {s.lower(): {k.lower(): v for k, v in body.items()}
               for s, body in raw.items()}
    return build_config(raw)
