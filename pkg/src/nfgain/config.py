"""Scenario configuration: defaults, JSON load/save, and geometry builders.

The file format is a flat JSON object keyed by the field names below, with
the wavelength stored under the key "lambda".  Validation is delegated to the
geometry types when builders are called, so a config object itself can hold
work-in-progress values.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields
from pathlib import Path

from .geometry import CapAperture, Medium, SpdArray, UserPosition

ARRAY_KINDS = ("spd_upa", "spd_ula", "cap")

# "lambda" is a reserved word in Python, so the dataclass field is named
# wavelength and mapped on (de)serialization.
_FIELD_TO_JSON = {"wavelength": "lambda"}
_JSON_TO_FIELD = {v: k for k, v in _FIELD_TO_JSON.items()}

_DEFAULT_WAVELENGTH = 0.1256


@dataclass
class ScenarioConfig:
    """Everything a gain evaluation needs besides the array size."""

    r: float = 5.0
    theta: float = math.pi / 6
    phi: float = math.pi / 3
    d: float = 0.0628
    wavelength: float = _DEFAULT_WAVELENGTH
    element_area: float = _DEFAULT_WAVELENGTH**2 / (4.0 * math.pi)
    radiation_factor: float = 1.0
    array_kind: str = "spd_upa"

    def user(self) -> UserPosition:
        return UserPosition(r=self.r, theta=self.theta, phi=self.phi)

    def medium(self) -> Medium:
        return Medium(wavelength=self.wavelength, radiation_factor=self.radiation_factor)

    def spd_array(self, m_x: int, m_z: int) -> SpdArray:
        return SpdArray(m_x=m_x, m_z=m_z, d=self.d, a=self.element_area)

    def cap_aperture(self, l_x: float, l_z: float) -> CapAperture:
        return CapAperture(l_x=l_x, l_z=l_z)

    @property
    def mu_oc(self) -> float:
        return self.element_area / self.d**2

    def validate_kind(self) -> None:
        if self.array_kind not in ARRAY_KINDS:
            raise ValueError(
                f"array_kind must be one of {ARRAY_KINDS}, got {self.array_kind!r}"
            )

    def to_json_dict(self) -> dict:
        out = {}
        for f in fields(self):
            out[_FIELD_TO_JSON.get(f.name, f.name)] = getattr(self, f.name)
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "ScenarioConfig":
        known = {f.name for f in fields(cls)}
        kwargs = {}
        for key, value in data.items():
            name = _JSON_TO_FIELD.get(key, key)
            if name not in known:
                raise ValueError(f"unknown config key {key!r}")
            kwargs[name] = value
        cfg = cls(**kwargs)
        cfg.validate_kind()
        return cfg


def load_config(path: str | Path) -> ScenarioConfig:
    with open(path, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    if not isinstance(data, dict):
        raise ValueError(f"config file {path} must hold a flat JSON object")
    return ScenarioConfig.from_json_dict(data)


def dump_config(config: ScenarioConfig) -> str:
    return json.dumps(config.to_json_dict(), indent=2, sort_keys=True)
