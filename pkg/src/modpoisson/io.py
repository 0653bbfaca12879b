"""Serialization: weight files, mass-function CSV/JSON, report tables."""

from __future__ import annotations

import json
import math

CSV_MASS_HEADER = "k,mass"


def fmt17(x) -> str:
    """Floats with 17 significant digits (round-trip exact)."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return format(x, ".17g")
    return str(x)


def read_weights_csv(path) -> list:
    """One probability per line; '#' starts a comment; blanks ignored."""
    weights = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                weights.append(float(line))
            except ValueError:
                raise ValueError(f"{path}:{lineno}: not a probability: {line!r}")
    return weights


def mass_csv_lines(measure) -> list:
    lines = [CSV_MASS_HEADER]
    for k, m in zip(measure.support(), measure.masses):
        lines.append(f"{k},{fmt17(float(m))}")
    return lines


def mass_json_obj(measure) -> dict:
    return {"offset": measure.offset, "masses": [float(m) for m in measure.masses]}


def report_csv_lines(reports) -> list:
    from .metrics import CSV_HEADER
    lines = [CSV_HEADER]
    for rep in reports:
        lines.append(",".join([
            rep.model, rep.family, str(rep.n), str(rep.r),
            fmt17(rep.lam), fmt17(rep.sigma2), fmt17(rep.tv), fmt17(rep.bound),
            rep.name, fmt17(rep.holds), fmt17(rep.slack),
        ]))
    return lines


def report_json_obj(rep) -> dict:
    return {
        "model": rep.model, "family": rep.family, "n": rep.n, "r": rep.r,
        "lambda": rep.lam, "sigma2": rep.sigma2, "tv": rep.tv,
        "bound": rep.bound, "name": rep.name, "holds": rep.holds,
        "slack": (None if rep.slack is None
                  else (rep.slack if math.isfinite(rep.slack) else "inf")),
    }


def report_jsonl_lines(reports) -> list:
    return [json.dumps(report_json_obj(rep), sort_keys=True) for rep in reports]
