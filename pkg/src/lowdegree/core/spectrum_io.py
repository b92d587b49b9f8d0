"""
Spectrum file format.

A YAML document::

    version: 1
    kind: operator | superop | boolean
    n: 3
    channel: yes | no | unknown      # superop only
    entries:
      - {key: "013", re: 0.5, im: 0.0}            # operator
      - {key: ["01", "01"], re: 0.25, im: 0.0}    # superop
      - {key: "101", re: -0.5, im: 0.0}           # boolean subset bits

Entries are written in lexicographic key order. Floats are written with repr, so values
round-trip exactly.
"""
import logging
from typing import Any, Dict, Optional, Union

import yaml

from .exceptions import InvalidInputError
from .pauli import PauliString
from .spectra import BooleanSpectrum, OperatorSpectrum, SuperopSpectrum

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1

Spectrum = Union[OperatorSpectrum, SuperopSpectrum, BooleanSpectrum]

_CHANNEL_FLAGS = {True: "yes", False: "no", None: "unknown"}


def _entry(key: Any, value: complex) -> Dict[str, Any]:
    value = complex(value)
    return {"key": key, "re": float(value.real), "im": float(value.imag)}


def spectrum_to_document(spectrum: Spectrum) -> Dict[str, Any]:
    document: Dict[str, Any] = {"version": FORMAT_VERSION, "kind": spectrum.kind, "n": spectrum.n}
    if isinstance(spectrum, SuperopSpectrum):
        document["channel"] = _CHANNEL_FLAGS[spectrum.is_channel]
        document["entries"] = [_entry([str(x), str(y)], v) for (x, y), v in spectrum.items()]
    elif isinstance(spectrum, OperatorSpectrum):
        document["entries"] = [_entry(str(x), v) for x, v in spectrum.items()]
    elif isinstance(spectrum, BooleanSpectrum):
        document["entries"] = [_entry("".join(str(b) for b in s), v) for s, v in spectrum.items()]
    else:
        raise InvalidInputError(f"Unsupported spectrum type {type(spectrum).__name__}")
    return document


def spectrum_from_document(document: Dict[str, Any]) -> Spectrum:
    try:
        version = document["version"]
        kind = document["kind"]
        n = int(document["n"])
        entries = document.get("entries") or []
    except (KeyError, TypeError) as e:
        raise InvalidInputError(f"Malformed spectrum document: {e}") from e
    if version != FORMAT_VERSION:
        raise InvalidInputError(f"Unsupported spectrum format version {version}")
    values = [complex(float(e["re"]), float(e["im"])) for e in entries]
    if kind == "operator":
        return OperatorSpectrum(n, {PauliString.from_str(e["key"]): v for e, v in zip(entries, values)})
    if kind == "superop":
        flag = {v: k for k, v in _CHANNEL_FLAGS.items()}[document.get("channel", "unknown")]
        coeffs = {(PauliString.from_str(e["key"][0]), PauliString.from_str(e["key"][1])): v
                  for e, v in zip(entries, values)}
        return SuperopSpectrum(n, coeffs, is_channel=flag)
    if kind == "boolean":
        coeffs = {tuple(int(ch) for ch in e["key"]): v for e, v in zip(entries, values)}
        return BooleanSpectrum(n, coeffs)
    raise InvalidInputError(f"Unknown spectrum kind {kind!r}")


def save_spectrum(spectrum: Spectrum, path: str, metadata: Optional[Dict[str, Any]] = None) -> None:
    document = spectrum_to_document(spectrum)
    if metadata:
        document["metadata"] = metadata
    with open(path, "w") as f:
        yaml.safe_dump(document, f, default_flow_style=False, sort_keys=False)
    logger.info(f"Wrote {spectrum.kind} spectrum with {len(spectrum)} entries to {path}")


def load_spectrum(path: str) -> Spectrum:
    with open(path, "r") as f:
        document = yaml.safe_load(f)
    if not isinstance(document, dict):
        raise InvalidInputError(f"Spectrum file '{path}' does not hold a mapping")
    return spectrum_from_document(document)
