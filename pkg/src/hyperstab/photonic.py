"""Exact amplitude simulation of the four-photon generation protocol.

Photons keep their source labels (a, b, c, d); a term of the state fixes
polarization, frequency and path for each of them.  PBS, demultiplexer and
multiplexer elements relabel paths and are permutations on terms.
Cross-Kerr QND stages are ideal projective filters keyed on integer
multiples of the probe phase.  Amplitudes are Gaussian rationals, so every
probability and fidelity is an exact ``Fraction``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Iterable, Mapping

from .errors import ModelingError, ParseError

PHOTONS = ("a", "b", "c", "d")
POLARIZATIONS = ("H", "V")
FREQUENCIES = ("w1", "w2")


@dataclass(frozen=True)
class GaussianRational:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __add__(self, other: GaussianRational) -> GaussianRational:
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __mul__(self, other: GaussianRational) -> GaussianRational:
        return GaussianRational(
            self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re
        )

    def conj(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


ONE = GaussianRational(Fraction(1))


@dataclass(frozen=True, order=True)
class PhotonMode:
    photon: str
    polarization: str
    frequency: str
    path: str

    def __str__(self) -> str:
        return f"{self.photon}[{self.polarization},{self.frequency},{self.path}]"


Term = tuple[PhotonMode, ...]


@dataclass(frozen=True)
class AmplitudeState:
    terms: Mapping[Term, GaussianRational]
    stage: str = ""

    def __post_init__(self):
        object.__setattr__(self, "terms", {k: v for k, v in self.terms.items() if v})

    def norm2(self) -> Fraction:
        return sum((a.abs2() for a in self.terms.values()), Fraction(0))

    def __len__(self) -> int:
        return len(self.terms)

    def with_stage(self, stage: str) -> AmplitudeState:
        return AmplitudeState(self.terms, stage)


@dataclass(frozen=True)
class QndConfig:
    """Per-path probe phase in units of theta; terms summing to ``keep_total`` survive."""

    shifts: Mapping[str, int]
    keep_total: int = 1

    def total_paths(self, paths: Iterable[str]) -> int:
        return sum(self.shifts.get(p, 0) for p in paths)

    def total(self, term: Term) -> int:
        return self.total_paths(mode.path for mode in term)


@dataclass(frozen=True)
class DoubleXpmConfig:
    """Two probe beams with non-negative couplings; accept when the phases agree."""

    upper: Mapping[str, int]
    lower: Mapping[str, int]

    def __post_init__(self):
        for beam in (self.upper, self.lower):
            if any(v < 0 for v in beam.values()):
                raise ModelingError("double-XPM couplings must be non-negative")

    def accepts(self, paths: Iterable[str]) -> bool:
        paths = list(paths)
        up = sum(self.upper.get(p, 0) for p in paths)
        low = sum(self.lower.get(p, 0) for p in paths)
        return up == low


def _relabel(state: AmplitudeState, photon: str, fn, stage: str | None = None) -> AmplitudeState:
    out: dict[Term, GaussianRational] = {}
    for term, amp in state.terms.items():
        new = tuple(fn(m) if m.photon == photon else m for m in term)
        if new in out:
            raise ModelingError(f"two terms collide on {', '.join(map(str, new))}")
        out[new] = amp
    return AmplitudeState(out, state.stage if stage is None else stage)


def spdc_initial(pairs: list[dict] | None = None) -> AmplitudeState:
    """Product of pair states (HH+VV)(w1w2+w2w1)(path branch 1 + branch 2)."""
    if pairs is None:
        pairs = _default_scenario()["stages"][0]["elements"][0]["pairs"]
    factors = []
    for pair in pairs:
        p, q = pair["photons"]
        branch = []
        for pol in POLARIZATIONS:
            for fp, fq in (("w1", "w2"), ("w2", "w1")):
                for path_p, path_q in pair["paths"]:
                    branch.append(
                        {p: PhotonMode(p, pol, fp, path_p), q: PhotonMode(q, pol, fq, path_q)}
                    )
        factors.append(branch)
    terms = {}
    for combo in itertools.product(*factors):
        modes = {}
        for part in combo:
            modes.update(part)
        terms[tuple(modes[k] for k in sorted(modes))] = ONE
    return AmplitudeState(terms, "source")


def apply_pbs(state: AmplitudeState, photon: str, ports: Mapping[str, Mapping[str, str]]) -> AmplitudeState:
    """``ports[in_path][pol]`` is the output path: H transmitted, V reflected."""

    def route(mode: PhotonMode) -> PhotonMode:
        try:
            out = ports[mode.path][mode.polarization]
        except KeyError:
            raise ModelingError(f"PBS has no input port for {mode}") from None
        return PhotonMode(mode.photon, mode.polarization, mode.frequency, out)

    return _relabel(state, photon, route)


def apply_qnd(state: AmplitudeState, cfg: QndConfig) -> tuple[AmplitudeState, Fraction]:
    kept = {t: a for t, a in state.terms.items() if cfg.total(t) == cfg.keep_total}
    if not kept:
        raise ModelingError("QND post-selection removed every term")
    out = AmplitudeState(kept, state.stage)
    return out, out.norm2() / state.norm2()


def apply_od(state: AmplitudeState, photon: str, splits: Mapping[str, Mapping[str, str]]) -> AmplitudeState:
    """``splits[path][frequency]`` is the demultiplexer output arm."""

    def split(mode: PhotonMode) -> PhotonMode:
        try:
            out = splits[mode.path][mode.frequency]
        except KeyError:
            raise ModelingError(f"demultiplexer has no arm for {mode}") from None
        return PhotonMode(mode.photon, mode.polarization, mode.frequency, out)

    return _relabel(state, photon, split)


def apply_om(state: AmplitudeState, photon: str, merges: Mapping[str, Iterable[str]]) -> AmplitudeState:
    """``merges[out_path]`` lists the arms combined into ``out_path``."""
    inverse = {arm: out for out, arms in merges.items() for arm in arms}

    def merge(mode: PhotonMode) -> PhotonMode:
        try:
            out = inverse[mode.path]
        except KeyError:
            raise ModelingError(f"multiplexer has no input for {mode}") from None
        return PhotonMode(mode.photon, mode.polarization, mode.frequency, out)

    return _relabel(state, photon, merge)


@dataclass(frozen=True)
class Scenario:
    name: str
    stages: list[dict]
    vocabulary: dict[str, dict[str, list[str]]]
    readout_ports: dict[str, list[str]]
    target: str
    double_xpm: list[dict] = field(default_factory=list)

    @classmethod
    def from_dict(cls, doc: dict) -> Scenario:
        try:
            return cls(
                name=doc.get("name", ""),
                stages=list(doc["stages"]),
                vocabulary=doc.get("vocabulary", {}),
                readout_ports=doc["readout"]["ports"],
                target=doc.get("target", ""),
                double_xpm=list(doc.get("double_xpm", [])),
            )
        except (KeyError, TypeError) as exc:
            raise ParseError(f"scenario missing field {exc}") from None

    @classmethod
    def load(cls, path: str | None = None) -> Scenario:
        if path is None:
            return cls.from_dict(_default_scenario())
        with open(path, encoding="utf-8") as fh:
            try:
                return cls.from_dict(json.load(fh))
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid scenario JSON: {exc.msg}", exc.pos) from None

    def qnd(self, stage: str) -> QndConfig:
        for st in self.stages:
            if st["name"] == stage:
                for el in st["elements"]:
                    if el["type"] == "qnd":
                        return QndConfig(el["shifts"], el.get("keep_total", 1))
        raise KeyError(stage)


def _default_scenario() -> dict:
    text = resources.files("hyperstab").joinpath("data/protocol.json").read_text("utf-8")
    return json.loads(text)


def check_vocabulary(state: AmplitudeState, vocab: Mapping[str, Iterable[str]]) -> None:
    allowed = {p: set(paths) for p, paths in vocab.items()}
    for term in state.terms:
        for mode in term:
            if mode.photon in allowed and mode.path not in allowed[mode.photon]:
                raise ModelingError(f"{mode} is outside the {state.stage!r} stage vocabulary")


@dataclass(frozen=True)
class ProtocolResult:
    final: AmplitudeState
    p_success: Fraction
    stage_probabilities: dict[str, Fraction]
    norms: dict[str, Fraction]


def run_protocol(scenario: Scenario | None = None) -> ProtocolResult:
    scenario = scenario or Scenario.load()
    state = None
    p_success = Fraction(1)
    probs: dict[str, Fraction] = {}
    norms: dict[str, Fraction] = {}
    for stage in scenario.stages:
        for el in stage["elements"]:
            kind = el["type"]
            if kind == "spdc":
                state = spdc_initial(el["pairs"])
            elif state is None:
                raise ModelingError("the first element must be the photon source")
            elif kind == "pbs":
                state = apply_pbs(state, el["photon"], el["ports"])
            elif kind == "qnd":
                state, p = apply_qnd(state, QndConfig(el["shifts"], el.get("keep_total", 1)))
                probs[stage["name"]] = p
                p_success *= p
            elif kind == "od":
                state = apply_od(state, el["photon"], el["splits"])
            elif kind == "om":
                state = apply_om(state, el["photon"], el["merges"])
            else:
                raise ParseError(f"unknown element type {kind!r}")
        state = state.with_stage(stage["name"])
        if stage["name"] in scenario.vocabulary:
            check_vocabulary(state, scenario.vocabulary[stage["name"]])
        norms[stage["name"]] = state.norm2()
    return ProtocolResult(state, p_success, probs, norms)


def double_xpm_equivalence(
    double: DoubleXpmConfig, single: QndConfig, domain: Iterable[Iterable[str]]
) -> bool:
    """Do both probes accept the same joint path configurations?

    ``domain`` gives, per photon, the paths it can occupy.
    """
    for config in itertools.product(*[tuple(d) for d in domain]):
        if double.accepts(config) != (single.total_paths(config) == single.keep_total):
            return False
    return True


def accept_set(predicate, domain: Iterable[Iterable[str]]) -> set[tuple[str, ...]]:
    return {c for c in itertools.product(*[tuple(d) for d in domain]) if predicate(c)}


def _port_of(path: str, ports: Mapping[str, list[str]]) -> tuple[str, int]:
    for port, paths in ports.items():
        if path in paths:
            return port, paths.index(path)
    raise ModelingError(f"path {path!r} reaches no detector")


def encode_term(term: Term, ports: Mapping[str, list[str]]) -> str:
    """12-bit outcome: polarization, frequency, then spatial bit per port."""
    by_port: dict[str, tuple[PhotonMode, int]] = {}
    for mode in term:
        port, spatial = _port_of(mode.path, ports)
        if port in by_port:
            raise ModelingError(f"two photons reach port {port}")
        by_port[port] = (mode, spatial)
    order = sorted(ports)
    if set(by_port) != set(order):
        raise ModelingError("some detector port received no photon")
    pol = "".join(str(POLARIZATIONS.index(by_port[p][0].polarization)) for p in order)
    freq = "".join(str(FREQUENCIES.index(by_port[p][0].frequency)) for p in order)
    spat = "".join(str(by_port[p][1]) for p in order)
    return pol + freq + spat


def encoded_amplitudes(state: AmplitudeState, ports: Mapping[str, list[str]]) -> dict[str, GaussianRational]:
    out: dict[str, GaussianRational] = {}
    for term, amp in state.terms.items():
        key = encode_term(term, ports)
        out[key] = out.get(key, GaussianRational()) + amp
    return {k: v for k, v in out.items() if v}


FINAL_STAGES = ("final",)


def measurement_readout(
    state: AmplitudeState, ports: Mapping[str, list[str]] | None = None
) -> dict[str, Fraction]:
    """Outcome distribution over 12-bit strings for the final-stage state."""
    if state.stage not in FINAL_STAGES:
        raise ModelingError(f"readout needs a final-stage state, got {state.stage!r}")
    ports = ports or Scenario.load().readout_ports
    amps = encoded_amplitudes(state, ports)
    total = sum((a.abs2() for a in amps.values()), Fraction(0))
    return {k: amps[k].abs2() / total for k in sorted(amps)}


def fidelity(state: AmplitudeState, vector, ports: Mapping[str, list[str]] | None = None) -> Fraction:
    """|<psi|v>|^2 / (<psi|psi><v|v>) against an integer qubit vector."""
    ports = ports or Scenario.load().readout_ports
    amps = encoded_amplitudes(state, ports)
    nbits = len(next(iter(amps)))
    target = {
        format(i, f"0{nbits}b"): GaussianRational(Fraction(int(v)))
        for i, v in enumerate(vector)
        if v
    }
    overlap = GaussianRational()
    for key, amp in amps.items():
        if key in target:
            overlap = overlap + amp.conj() * target[key]
    norm_s = sum((a.abs2() for a in amps.values()), Fraction(0))
    norm_t = sum((a.abs2() for a in target.values()), Fraction(0))
    return overlap.abs2() / (norm_s * norm_t)


def double_xpm_configs(
    scenario: Scenario | None = None,
) -> list[tuple[str, DoubleXpmConfig, QndConfig, list[list[str]]]]:
    """The double-XPM set-ups listed in a scenario (default: the shipped one)."""
    scenario = scenario or Scenario.load()
    out = []
    for item in scenario.double_xpm:
        out.append(
            (
                item["name"],
                DoubleXpmConfig(item["upper"], item["lower"]),
                scenario.qnd(item["replaces"]),
                item["domain"],
            )
        )
    return out
