"""JSON state/channel files, run manifests and atomic output writes."""
import datetime
import json
import os
import tempfile

import numpy as np

from .channels import KrausChannel
from .exceptions import CicapError
from .states import DensityMatrix

__version__ = "0.1.0"


class FileFormatError(CicapError, ValueError):
    """File does not follow the expected JSON layout."""


def _split(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=complex)
    # json writes floats as shortest round-trip repr, so re/im reload bit-exactly
    return {"re": m.real.tolist(), "im": m.imag.tolist()}


def _join(obj: dict, what: str) -> np.ndarray:
    try:
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"{what}: expected numeric 're'/'im' arrays ({exc})") from exc
    if re.shape != im.shape or re.ndim != 2:
        raise FileFormatError(f"{what}: 're' {re.shape} and 'im' {im.shape} must be equal 2-d shapes")
    return re + 1j * im


def _read_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: invalid JSON ({exc})") from exc


def state_to_dict(rho: DensityMatrix) -> dict:
    return {"dims": list(rho.dims), **_split(rho.matrix)}


def state_from_dict(obj: dict) -> DensityMatrix:
    if "dims" not in obj:
        raise FileFormatError("state file needs a 'dims' entry")
    return DensityMatrix(_join(obj, "state"), tuple(obj["dims"]))


def load_state(path) -> DensityMatrix:
    return state_from_dict(_read_json(path))


def save_state(rho: DensityMatrix, path) -> None:
    write_json(path, state_to_dict(rho))


def channel_to_dict(channel: KrausChannel) -> dict:
    return {
        "d_in": channel.d_in,
        "d_out": channel.d_out,
        "kraus": [_split(k) for k in channel.kraus_ops],
    }


def channel_from_dict(obj: dict, name: str = "channel") -> KrausChannel:
    try:
        d_in, d_out, kraus = int(obj["d_in"]), int(obj["d_out"]), obj["kraus"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"channel file needs 'd_in', 'd_out' and 'kraus' ({exc})") from exc
    ops = tuple(_join(k, f"kraus[{i}]") for i, k in enumerate(kraus))
    return KrausChannel(ops, d_in, d_out, name=name)


def load_channel(path) -> KrausChannel:
    return channel_from_dict(_read_json(path), name=os.path.basename(str(path)))


def save_channel(channel: KrausChannel, path) -> None:
    write_json(path, channel_to_dict(channel))


def manifest(command: str, inputs=(), parameters=None, seed=None, output=None) -> dict:
    return {
        "command": command,
        "inputs": [str(p) for p in inputs],
        "parameters": dict(parameters or {}),
        "seed": 0 if seed is None else int(seed),
        "seed_defaulted": seed is None,
        "output": None if output is None else str(output),
        "version": __version__,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }


def atomic_write(path, text: str) -> None:
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=True) + "\n"


def write_json(path, obj) -> None:
    atomic_write(path, dumps(obj))
