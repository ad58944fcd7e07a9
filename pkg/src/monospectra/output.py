"""Deterministic CSV/JSON writers for the CLI.

Floats print with 17 significant digits (binary64 round-trip safe);
exact rationals print as num/den strings.  Identical inputs produce
byte-identical files.
"""
from __future__ import annotations

import json

import numpy as np

from ._numbers import fmt_float, fmt_number

SPECTRUM_CSV_HEADER = "model,qn1,qn2,p,u,E,E_prime,degeneracy,max_residual"


def spectrum_csv(rows) -> str:
    lines = [SPECTRUM_CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                [
                    r.model.value,
                    fmt_number(r.qn[0]),
                    fmt_number(r.qn[1]),
                    str(r.p),
                    fmt_number(r.u),
                    fmt_number(r.E),
                    fmt_number(r.E_primed) if r.E_primed is not None else "",
                    str(r.degeneracy),
                    fmt_float(r.max_residual),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def matrix_csv(mat: np.ndarray) -> str:
    lines = []
    for row in np.atleast_2d(mat):
        lines.append(",".join(fmt_float(v) for v in row))
    return "\n".join(lines) + "\n"


def write_text(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
