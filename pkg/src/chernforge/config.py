"""Structured-text configuration for the command-line front end.

The format is line oriented: ``key = value`` pairs, ``[line]``,
``[rho]`` and ``[component]`` section headers, ``#`` comments.  Exact
rationals are written ``p/q``; differential forms use the term grammar
``(a+bi) t^m exp[k1,...,kn] d{t,1,3}`` with terms joined by ``+``.
Parsing failures carry 1-based line numbers; a parsed configuration
re-serializes bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .bundles import DiagBundle, LineBundle, OddKCycle
from .diffchar import KCycle
from .errors import ConfigError
from .forms import TorusForm, parse_form, split_form_terms


@dataclass
class LineSpec:
    K: Optional[list[list[int]]] = None
    theta: Optional[list[Fraction]] = None
    beta: Optional[TorusForm] = None


@dataclass
class ComponentSpec:
    winding: Optional[list[int]] = None
    phase: Optional[TorusForm] = None


@dataclass
class Config:
    dim: Optional[int] = None
    degree: Optional[int] = None
    indices: list[int] = field(default_factory=list)
    seed: int = 0
    cases: Optional[int] = None
    fmt: Optional[str] = None
    lines: list[LineSpec] = field(default_factory=list)
    rho: Optional[TorusForm] = None
    components: list[ComponentSpec] = field(default_factory=list)

    def build_bundle(self) -> DiagBundle:
        if self.dim is None:
            raise ConfigError("missing 'dim'")
        specs = self.lines or [LineSpec()]
        built = []
        for spec in specs:
            built.append(LineBundle(self.dim, spec.K, spec.theta, spec.beta))
        return DiagBundle(built)

    def build_cycle(self) -> KCycle:
        rho = self.rho if self.rho is not None else TorusForm.zero(self.dim)
        return KCycle(self.build_bundle(), rho)

    def build_odd_cycle(self) -> OddKCycle:
        if self.dim is None:
            raise ConfigError("missing 'dim'")
        if not self.components:
            raise ConfigError("no [component] blocks for an odd cycle")
        comps = []
        for spec in self.components:
            if spec.winding is None:
                raise ConfigError("odd component is missing 'winding'")
            phase = spec.phase if spec.phase is not None else TorusForm.zero(self.dim)
            comps.append((tuple(spec.winding), phase))
        return OddKCycle(self.dim, comps)


def _parse_int(value: str, lineno: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"expected an integer, got {value!r}", lineno) from None


def _parse_int_list(value: str, lineno: int) -> list[int]:
    return [_parse_int(tok, lineno) for tok in value.split()]


def _parse_fraction_list(value: str, lineno: int) -> list[Fraction]:
    out = []
    for tok in value.split():
        try:
            out.append(Fraction(tok))
        except ValueError:
            raise ConfigError(f"expected a rational, got {tok!r}", lineno) from None
    return out


def _parse_matrix(value: str, lineno: int) -> list[list[int]]:
    rows = [row.strip() for row in value.split("/")]
    return [_parse_int_list(row, lineno) for row in rows if row]


def _parse_form_value(value: str, dim: Optional[int], lineno: int) -> TorusForm:
    if dim is None:
        raise ConfigError("'dim' must be set before any form data", lineno)
    try:
        return parse_form(value, n=dim, has_t=False)
    except ValueError as exc:
        raise ConfigError(str(exc), lineno) from None


_TOP_KEYS = {"dim", "degree", "seed", "cases", "format", "indices"}


def parse_config(text: str) -> Config:
    config = Config()
    section: Optional[str] = None
    current_line: Optional[LineSpec] = None
    current_component: Optional[ComponentSpec] = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError("unterminated section header", lineno)
            section = line[1:-1].strip()
            if section == "line":
                current_line = LineSpec()
                config.lines.append(current_line)
            elif section == "rho":
                pass
            elif section == "component":
                current_component = ComponentSpec()
                config.components.append(current_component)
            else:
                raise ConfigError(f"unknown section [{section}]", lineno)
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", lineno, raw.index(raw.strip()[0]) + 1)
        key, value = (part.strip() for part in line.split("=", 1))
        if section is None:
            if key not in _TOP_KEYS:
                raise ConfigError(f"unknown key {key!r}", lineno)
            if key == "dim":
                config.dim = _parse_int(value, lineno)
            elif key == "degree":
                config.degree = _parse_int(value, lineno)
            elif key == "seed":
                config.seed = _parse_int(value, lineno)
            elif key == "cases":
                config.cases = _parse_int(value, lineno)
            elif key == "format":
                if value not in ("text", "json", "csv"):
                    raise ConfigError(f"unknown format {value!r}", lineno)
                config.fmt = value
            elif key == "indices":
                config.indices = _parse_int_list(value, lineno)
        elif section == "line":
            if key == "K":
                current_line.K = _parse_matrix(value, lineno)
            elif key == "theta":
                current_line.theta = _parse_fraction_list(value, lineno)
            elif key == "beta":
                current_line.beta = _parse_form_value(value, config.dim, lineno)
            else:
                raise ConfigError(f"unknown key {key!r} in [line]", lineno)
        elif section == "rho":
            if key == "terms":
                config.rho = _parse_form_value(value, config.dim, lineno)
            else:
                raise ConfigError(f"unknown key {key!r} in [rho]", lineno)
        elif section == "component":
            if key == "winding":
                current_component.winding = _parse_int_list(value, lineno)
            elif key == "phase":
                current_component.phase = _parse_form_value(value, config.dim, lineno)
            else:
                raise ConfigError(f"unknown key {key!r} in [component]", lineno)
    if config.dim is None:
        raise ConfigError("missing 'dim'")
    return config


def _form_line(form: TorusForm) -> str:
    return " + ".join(split_form_terms(form.to_text()))


def serialize_config(config: Config) -> str:
    """Canonical text for a configuration; parses back bit-exactly."""
    out = [f"dim = {config.dim}"]
    if config.degree is not None:
        out.append(f"degree = {config.degree}")
    if config.indices:
        out.append("indices = " + " ".join(str(i) for i in config.indices))
    if config.seed:
        out.append(f"seed = {config.seed}")
    if config.cases is not None:
        out.append(f"cases = {config.cases}")
    if config.fmt is not None:
        out.append(f"format = {config.fmt}")
    for spec in config.lines:
        out.append("")
        out.append("[line]")
        if spec.K is not None:
            out.append("K = " + " / ".join(" ".join(str(v) for v in row)
                                           for row in spec.K))
        if spec.theta is not None:
            out.append("theta = " + " ".join(str(v) for v in spec.theta))
        if spec.beta is not None and not spec.beta.is_zero():
            out.append("beta = " + _form_line(spec.beta))
    if config.rho is not None and not config.rho.is_zero():
        out.append("")
        out.append("[rho]")
        out.append("terms = " + _form_line(config.rho))
    for spec in config.components:
        out.append("")
        out.append("[component]")
        if spec.winding is not None:
            out.append("winding = " + " ".join(str(v) for v in spec.winding))
        if spec.phase is not None and not spec.phase.is_zero():
            out.append("phase = " + _form_line(spec.phase))
    return "\n".join(out) + "\n"
