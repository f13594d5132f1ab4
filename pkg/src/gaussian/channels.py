"""
Channel constructors and JSON channel/input specifications
"""
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Annotated, List, Literal, Optional, Union

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, field_validator
from pydantic import ValidationError as PydanticValidationError

from ..utils.errors import PreconditionError, ValidationError
from .covariance import OneModeCovariance, TwoModeCovariance


@dataclass(frozen=True)
class ChannelParams:
    """Squeezing r of the shared two-mode squeezed vacuum and thermal noise b0 added on Bob's mode"""
    r: float
    b0: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.r) and self.r >= 0):
            raise ValidationError(f"squeezing r must be >= 0, got {self.r}")
        if not (math.isfinite(self.b0) and self.b0 >= 0):
            raise ValidationError(f"noise b0 must be >= 0, got {self.b0}")


def make_tmsv_noisy(params: ChannelParams) -> TwoModeCovariance:
    """
    Noisy two-mode squeezed vacuum in standard form

    a = 1 + 2 sinh^2 r, b = a + b0, c1 = -sinh 2r, c2 = sinh 2r.
    b0 = 0 gives the pure two-mode squeezed vacuum.

    Args:
        params: Squeezing r and the thermal noise b0 added on Bob's mode

    Returns:
        Tridiagonal channel covariance
    """
    a = 1.0 + 2.0 * math.sinh(params.r) ** 2
    c = math.sinh(2.0 * params.r)
    return TwoModeCovariance.tridiagonal(a, a + params.b0, -c, c)


def squeezing_threshold(b0: float) -> float:
    """
    Squeezing below which a damping CP map on Bob's side beats every
    symplectic operation for coherent inputs: -ln(1 - b0)/2
    """
    if b0 < 0:
        raise ValidationError(f"noise b0 must be >= 0, got {b0}")
    if b0 >= 1.0:
        return math.inf
    return -math.log1p(-b0) / 2.0


def damping_transmittance(params: ChannelParams) -> float:
    """Amplitude transmittance c2/(b - 1) of the beam splitter realising the optimal damping map"""
    a = 1.0 + 2.0 * math.sinh(params.r) ** 2
    denominator = a + params.b0 - 1.0
    if denominator <= 0:
        raise PreconditionError("damping transmittance undefined for the two-vacua channel (r = b0 = 0)")
    return math.sinh(2.0 * params.r) / denominator


# JSON specifications

class _SpecModel(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class TmsvNoisySpec(_SpecModel):
    kind: Literal["tmsv_noisy"]
    r: float = Field(ge=0, allow_inf_nan=False)
    b0: float = Field(default=0.0, ge=0, allow_inf_nan=False)

    def to_covariance(self) -> TwoModeCovariance:
        return make_tmsv_noisy(ChannelParams(r=self.r, b0=self.b0))


class ExplicitChannelSpec(_SpecModel):
    kind: Literal["explicit"]
    gamma: List[List[float]]

    @field_validator("gamma")
    @classmethod
    def _four_by_four(cls, value: List[List[float]]) -> List[List[float]]:
        if len(value) != 4 or any(len(row) != 4 for row in value):
            raise ValueError("gamma must have 4 rows of 4 numbers")
        return value

    def to_covariance(self) -> TwoModeCovariance:
        return TwoModeCovariance(self.gamma)


class CoherentInputSpec(_SpecModel):
    kind: Literal["coherent", "vacuum"]

    def to_covariance(self) -> OneModeCovariance:
        return OneModeCovariance.coherent()


class SqueezedInputSpec(_SpecModel):
    kind: Literal["squeezed"]
    s: float = Field(allow_inf_nan=False)
    phi: float = Field(default=0.0, allow_inf_nan=False)

    def to_covariance(self) -> OneModeCovariance:
        return OneModeCovariance.squeezed(self.s, self.phi)


class ExplicitInputSpec(_SpecModel):
    kind: Literal["explicit"]
    d: List[List[float]]

    @field_validator("d")
    @classmethod
    def _two_by_two(cls, value: List[List[float]]) -> List[List[float]]:
        if len(value) != 2 or any(len(row) != 2 for row in value):
            raise ValueError("d must have 2 rows of 2 numbers")
        return value

    def to_covariance(self) -> OneModeCovariance:
        return OneModeCovariance(self.d)


ChannelSpec = Annotated[Union[TmsvNoisySpec, ExplicitChannelSpec], Field(discriminator="kind")]
InputSpec = Annotated[
    Union[CoherentInputSpec, SqueezedInputSpec, ExplicitInputSpec], Field(discriminator="kind")
]

_CHANNEL_ADAPTER = TypeAdapter(ChannelSpec)
_INPUT_ADAPTER = TypeAdapter(InputSpec)
_INPUT_KEYWORDS = {"coherent", "vacuum"}


def _read_argument(text: str) -> str:
    """Inline JSON or @path to a JSON file"""
    if text.startswith("@"):
        path = Path(text[1:])
        try:
            return path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ValidationError(f"cannot read specification file {path}: {exc}") from exc
    return text


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"malformed {what} JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc


def _describe(exc: PydanticValidationError, what: str) -> str:
    first = exc.errors()[0]
    location = ".".join(str(part) for part in first["loc"]) or "<root>"
    return f"invalid {what} field '{location}': {first['msg']}"


def parse_channel_spec(text: str) -> TwoModeCovariance:
    """
    Parse a channel specification into a covariance matrix

    Args:
        text: Inline JSON, or @path to a JSON file, of kind tmsv_noisy or explicit

    Returns:
        The channel covariance; physicality is checked by whatever consumes it

    Raises:
        ValidationError: if the JSON is malformed or fails the schema
    """
    payload = _load_json(_read_argument(text), "channel")
    try:
        spec = _CHANNEL_ADAPTER.validate_python(payload)
    except PydanticValidationError as exc:
        raise ValidationError(_describe(exc, "channel")) from exc
    gamma = spec.to_covariance()
    logger.debug(f"Parsed channel spec kind={spec.kind}")
    return gamma


def parse_input_spec(text: str) -> OneModeCovariance:
    """Parse an input-state specification; bare 'coherent' and 'vacuum' are accepted"""
    if text.strip() in _INPUT_KEYWORDS:
        return OneModeCovariance.coherent()
    payload = _load_json(_read_argument(text), "input")
    try:
        spec = _INPUT_ADAPTER.validate_python(payload)
    except PydanticValidationError as exc:
        raise ValidationError(_describe(exc, "input")) from exc
    return spec.to_covariance()


def channel_to_spec(gamma: TwoModeCovariance) -> dict:
    """Explicit JSON form of any channel"""
    return {"kind": "explicit", "gamma": gamma.m.tolist()}


class TmsvFamilySpec(_SpecModel):
    """A sweep family: only b0 is fixed, r is swept (an r given here is ignored)"""
    kind: Literal["tmsv_noisy"]
    b0: float = Field(default=0.0, ge=0, allow_inf_nan=False)
    r: Optional[float] = Field(default=None, ge=0, allow_inf_nan=False)


def parse_sweep_family(text: str) -> float:
    """Added noise b0 of a tmsv_noisy channel specification"""
    payload = _load_json(_read_argument(text), "channel")
    try:
        spec = TmsvFamilySpec.model_validate(payload)
    except PydanticValidationError as exc:
        raise ValidationError(_describe(exc, "sweep channel") + " (sweeps need kind 'tmsv_noisy')") from exc
    return spec.b0
