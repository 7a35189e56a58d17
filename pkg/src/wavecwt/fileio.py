"""Binary file formats.

WFLD v1 (fields): a JSON header line with keys
``version, kind, n, h, origin, c (optional), dtype`` terminated by a newline
and a NUL byte, followed by the raw samples as little-endian IEEE-754 double
pairs (re, im) in linear order ``(iz*ny + iy)*nx + ix`` (x fastest).

WCF v1 (coefficients): a JSON header describing the parameter grid, the
frequency tag, the synthesis constant and the wavelet, then NUL, then raw
complex doubles ordered a slowest, theta1, theta2, [theta3], then b in WFLD
linear order.

Both formats round-trip bit exactly.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np

from .cwt import WaveletCoefficients, build_parameter_grid
from .errors import ValidationError
from .fields import ComplexField3, Grid3, SpectralField3

__all__ = ["write_field", "read_field", "write_coefficients", "read_coefficients"]

_MAGIC_DTYPE = "c128le"


def _split_header(blob: bytes, path) -> Tuple[dict, bytes]:
    sep = blob.find(b"\x00")
    if sep < 1 or not blob[:sep].endswith(b"\n"):
        raise ValidationError(f"{path}: missing NUL-terminated JSON header")
    try:
        header = json.loads(blob[:sep].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ValidationError(f"{path}: bad header ({exc})") from exc
    return header, blob[sep + 1:]


def _grid_from_header(header: dict, path) -> Grid3:
    try:
        nx, ny, nz = (int(v) for v in header["n"])
        hx, hy, hz = (float(v) for v in header["h"])
        origin = tuple(float(v) for v in header["origin"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"{path}: bad grid description ({exc})") from exc
    return Grid3(nx, ny, nz, hx, hy, hz, origin)


def _payload_complex(payload: bytes, count: int, path) -> np.ndarray:
    if len(payload) != 16 * count:
        raise ValidationError(
            f"{path}: payload holds {len(payload)} bytes, expected {16 * count}"
        )
    return np.frombuffer(payload, dtype="<c16").astype(np.complex128)


def write_field(path, field: Union[ComplexField3, SpectralField3],
                c: Optional[float] = None) -> None:
    """Write a position or spectral field as WFLD v1."""
    if isinstance(field, ComplexField3):
        kind = "position"
    elif isinstance(field, SpectralField3):
        kind = "spectral"
    else:
        raise ValidationError(f"cannot write object of type {type(field)!r}")
    g = field.grid
    header = {
        "version": 1,
        "kind": kind,
        "n": [g.n_x, g.n_y, g.n_z],
        "h": [g.h_x, g.h_y, g.h_z],
        "origin": list(g.origin),
        "dtype": _MAGIC_DTYPE,
    }
    if c is not None:
        header["c"] = float(c)
    data = field.values.astype("<c16", copy=False).tobytes()
    Path(path).write_bytes(json.dumps(header).encode() + b"\n\x00" + data)


def read_field(path):
    """Read a WFLD v1 file; returns ``(field, c_or_None)``."""
    header, payload = _split_header(Path(path).read_bytes(), path)
    if header.get("version") != 1 or header.get("dtype") != _MAGIC_DTYPE:
        raise ValidationError(f"{path}: unsupported WFLD version/dtype")
    grid = _grid_from_header(header, path)
    values = _payload_complex(payload, grid.node_count, path).reshape(grid.shape)
    kind = header.get("kind")
    if kind == "position":
        field = ComplexField3(grid, values)
    elif kind == "spectral":
        field = SpectralField3(grid, values)
    else:
        raise ValidationError(f"{path}: unknown field kind {kind!r}")
    c = header.get("c")
    return field, (float(c) if c is not None else None)


def write_coefficients(path, coeffs: WaveletCoefficients, c: float = 1.0) -> None:
    """Write wavelet coefficients as WCF v1."""
    g = coeffs.nu_grid
    fg = g.field_grid
    shape = list(g.angle_shape)
    header = {
        "version": 1,
        "sign": coeffs.sign,
        "c_const": [float(np.real(coeffs.constant)), float(np.imag(coeffs.constant))],
        "c": float(c),
        "wavelet": {"name": coeffs.wavelet_name, "params": dict(coeffs.wavelet_params)},
        "nu_grid": {
            "symmetry": g.symmetry,
            "axis": list(g.axis),
            "a_min": float(g.a_nodes[0]),
            "a_max": float(g.a_nodes[-1]),
            "n_a": int(g.n_a),
            "angle_shape": shape,
            "constant_factor": float(g.constant_factor),
        },
        "field": {
            "n": [fg.n_x, fg.n_y, fg.n_z],
            "h": [fg.h_x, fg.h_y, fg.h_z],
            "origin": list(fg.origin),
        },
        "dtype": _MAGIC_DTYPE,
    }
    data = coeffs.values.astype("<c16", copy=False).tobytes()
    Path(path).write_bytes(json.dumps(header).encode() + b"\n\x00" + data)


def read_coefficients(path) -> Tuple[WaveletCoefficients, float]:
    """Read a WCF v1 file; returns ``(coefficients, wave_speed)``."""
    header, payload = _split_header(Path(path).read_bytes(), path)
    if header.get("version") != 1 or header.get("dtype") != _MAGIC_DTYPE:
        raise ValidationError(f"{path}: unsupported WCF version/dtype")
    fg = _grid_from_header(header["field"], path)
    ng = header["nu_grid"]
    shape = list(ng["angle_shape"])
    thetas = (shape + [8, 8, 8])[:3] if shape else [8, 8, 8]
    grid = build_parameter_grid(
        fg, ng["symmetry"], ng["axis"], float(ng["a_min"]), float(ng["a_max"]),
        int(ng["n_a"]), *(int(v) for v in thetas),
    )
    if list(grid.angle_shape) != shape:
        raise ValidationError(f"{path}: angle shape mismatch after rebuild")
    values = _payload_complex(payload, grid.n_a * grid.n_rotations * fg.node_count, path)
    values = values.reshape((grid.n_a, grid.n_rotations) + fg.shape)
    re, im = header["c_const"]
    wav = header.get("wavelet", {})
    params = tuple(sorted(
        (str(k), float(v) if isinstance(v, (int, float)) else str(v))
        for k, v in wav.get("params", {}).items()
    ))
    coeffs = WaveletCoefficients(grid, values, header["sign"], complex(re, im),
                                 wav.get("name", ""), params)
    return coeffs, float(header.get("c", 1.0))
