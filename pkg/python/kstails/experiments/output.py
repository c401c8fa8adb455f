"""Run-directory files: CSV series, JSON summaries and the echoed config.

Every file except ``run.json`` is a pure function of (config, seed). Floats in
CSVs are written with 17 significant digits, so parsing them back recovers
the recorded values exactly.
"""

from __future__ import annotations

import csv
import json
import math
import os
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import yaml

from kstails.diagnostics.history import NormHistory, NormSample, order_label
from kstails.diagnostics.tails import TailProfile
from kstails.errors import RunDirectoryError
from kstails.models import Variant
from kstails.record import RunRecord

NORMS_CSV = "norms.csv"
TAILS_CSV = "tails.csv"
FITS_JSON = "fits.json"
RUN_JSON = "run.json"
SCALING_JSON = "scaling.json"
CONFIG_YAML = "config.yaml"
FINAL_CHECKPOINT = "final.ckpt"

TAILS_HEADER = ("t", "j", "threshold_index", "I_j")

PathLike = Union[str, os.PathLike]


def fmt(value: float) -> str:
    return format(float(value), ".17g")


def norms_header(p_list: Sequence[float], s_list: Sequence[float]) -> List[str]:
    return (
        ["t", "l2"]
        + [f"lp_{order_label(p)}" for p in p_list]
        + [f"hs_{order_label(s)}" for s in s_list]
        + ["mean_minus_phi", "grad_sq_integral", "grad_sq"]
    )


def _norm_row(s: NormSample, p_list: Sequence[float], s_list: Sequence[float]) -> List[str]:
    return (
        [fmt(s.t), fmt(s.l2)]
        + [fmt(s.lp[p]) for p in p_list]
        + [fmt(s.hs[q]) for q in s_list]
        + [fmt(s.mean_minus_phi), fmt(s.grad_sq_integral), fmt(s.grad_sq)]
    )


def write_norms_csv(history: NormHistory, path: PathLike) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(norms_header(history.p_list, history.s_list))
        for s in history.samples:
            writer.writerow(_norm_row(s, history.p_list, history.s_list))


def write_tails_csv(tails: Sequence[TailProfile], path: PathLike) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TAILS_HEADER)
        for profile in tails:
            for j, energy in profile.entries:
                writer.writerow([fmt(profile.t), str(j), fmt(profile.threshold(j)), fmt(energy)])


def emit_csv(record: RunRecord, directory: PathLike) -> None:
    """``norms.csv`` and ``tails.csv`` for ``record``; header-only when empty."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    write_norms_csv(record.history, directory / NORMS_CSV)
    write_tails_csv(record.tails, directory / TAILS_CSV)


def _read_rows(path: Path) -> Tuple[List[str], List[List[str]]]:
    if not path.is_file():
        raise RunDirectoryError(f"missing {path.name} in {path.parent}")
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise RunDirectoryError(f"{path} is empty")
    return rows[0], rows[1:]


def _float_cell(path: Path, line: int, text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise RunDirectoryError(f"{path}:{line}: not a number: {text!r}") from None


def _orders(header: Sequence[str], prefix: str) -> Tuple[float, ...]:
    return tuple(float(h[len(prefix):]) for h in header if h.startswith(prefix))


def read_norms_csv(path: PathLike, variant: Optional[Variant] = None) -> NormHistory:
    path = Path(path)
    header, rows = _read_rows(path)
    p_list, s_list = _orders(header, "lp_"), _orders(header, "hs_")
    if header != norms_header(p_list, s_list):
        raise RunDirectoryError(f"{path}: unexpected header {header}")
    samples = []
    for line, row in enumerate(rows, start=2):
        if len(row) != len(header):
            raise RunDirectoryError(f"{path}:{line}: expected {len(header)} fields, got {len(row)}")
        values = dict(zip(header, (_float_cell(path, line, cell) for cell in row)))
        samples.append(
            NormSample(
                t=values["t"],
                l2=values["l2"],
                lp={p: values[f"lp_{order_label(p)}"] for p in p_list},
                hs={s: values[f"hs_{order_label(s)}"] for s in s_list},
                mean_minus_phi=values["mean_minus_phi"],
                grad_sq=values["grad_sq"],
                grad_sq_integral=values["grad_sq_integral"],
            )
        )
    try:
        return NormHistory(tuple(samples), p_list, s_list, variant)
    except ValueError as exc:
        raise RunDirectoryError(f"{path}: {exc}") from exc


def read_tails_csv(path: PathLike, L: float) -> Tuple[TailProfile, ...]:
    """Profiles grouped by ``t``; ``energy`` is left 0 (it lives in ``norms.csv``)."""
    path = Path(path)
    header, rows = _read_rows(path)
    if tuple(header) != TAILS_HEADER:
        raise RunDirectoryError(f"{path}: unexpected header {header}")
    grouped: Dict[float, List[Tuple[int, float, float]]] = {}
    order: List[float] = []
    for line, row in enumerate(rows, start=2):
        if len(row) != 4:
            raise RunDirectoryError(f"{path}:{line}: expected 4 fields, got {len(row)}")
        t = _float_cell(path, line, row[0])
        try:
            j = int(row[1])
        except ValueError:
            raise RunDirectoryError(f"{path}:{line}: bad index {row[1]!r}") from None
        threshold = _float_cell(path, line, row[2])
        energy = _float_cell(path, line, row[3])
        if t not in grouped:
            grouped[t] = []
            order.append(t)
        grouped[t].append((j, threshold, energy))
    profiles = []
    for t in order:
        entries = grouped[t]
        j0, m0, _ = entries[0]
        multiplier = m0 / (2.0**j0 * L)
        profiles.append(
            TailProfile(t=t, multiplier=multiplier, L=L, entries=tuple((j, e) for j, _, e in entries))
        )
    return tuple(profiles)


def _json_safe(value: Any) -> Any:
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, Mapping):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if hasattr(value, "item") and callable(value.item):
        return _json_safe(value.item())
    return value


def dumps_json(data: Mapping[str, Any]) -> str:
    return json.dumps(_json_safe(data), sort_keys=True, indent=2) + "\n"


def write_json(data: Mapping[str, Any], path: PathLike) -> None:
    Path(path).write_text(dumps_json(data), encoding="utf-8")


def read_json(path: PathLike) -> Dict[str, Any]:
    path = Path(path)
    if not path.is_file():
        raise RunDirectoryError(f"missing {path.name} in {path.parent}")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise RunDirectoryError(f"{path}: {exc}") from exc


def write_config_yaml(flat: Mapping[str, Any], path: PathLike) -> None:
    text = yaml.safe_dump(dict(flat), sort_keys=False, default_flow_style=None)
    Path(path).write_text(text, encoding="utf-8")


def read_config_yaml(path: PathLike) -> Dict[str, Any]:
    path = Path(path)
    if not path.is_file():
        raise RunDirectoryError(f"missing {path.name} in {path.parent}")
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except yaml.YAMLError as exc:
        raise RunDirectoryError(f"{path}: {exc}") from exc
    if not isinstance(data, Mapping):
        raise RunDirectoryError(f"{path}: expected a mapping")
    return dict(data)


def run_summary(record: RunRecord) -> Dict[str, Any]:
    return {
        "wall_seconds": record.wall_seconds,
        "steps": record.steps,
        "t_final": record.t_final,
        "diverged_at": record.history.diverged_at,
        "verdict": record.verdict.as_dict(),
        "warnings": list(record.warnings),
    }
