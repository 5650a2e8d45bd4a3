"""Spinor norms on unitary and orthogonal groups over finite fields.

Field elements are lists of base-p digits in the polynomial basis of their
level (a bare int is a constant). Matrices are lists of rows.
"""

import json

from . import _spinor

__all__ = ["Tower", "check_names", "replay", "sn_orthogonal", "sn_unitary", "verify"]


class Tower:
    """The tower F_p ⊆ E0 ⊆ E with [E0:F] = m0 and [E:E0] = 2."""

    def __init__(self, p=3, m0=1, c0_index=0):
        self.p, self.m0, self.c0_index = int(p), int(m0), int(c0_index)
        self._info = json.loads(_spinor.describe(json.dumps(self.to_dict())))

    def to_dict(self):
        return {"p": self.p, "m0": self.m0, "c0_index": self.c0_index}

    def __getattr__(self, name):
        info = self.__dict__.get("_info", {})
        if name in info:
            return info[name]
        raise AttributeError(name)

    def __repr__(self):
        return f"Tower(p={self.p}, m0={self.m0}, c0_index={self.c0_index})"


def _payload(tower, form, matrix, kind, form_level, matrix_level, **extra):
    body = {
        "tower": tower.to_dict(),
        "form": {"kind": kind, "level": form_level, "gram": form},
        "matrix": {"level": matrix_level, "entries": matrix},
    }
    body.update(extra)
    return json.dumps(body)


def sn_unitary(tower, gram, matrix):
    """Spinor norm in E^x/E0^x of a unitary matrix for the hermitian form `gram`.

    Returns a dict with the coset via the determinant formula, the Cayley
    product (None when the decomposition is not available), and whether the
    induced norm class is a square.
    """
    return json.loads(_spinor.sn_unitary(_payload(tower, gram, matrix, "hermitian", "E", "E")))


def sn_orthogonal(tower, gram, matrix, level="F", kind="hermitian"):
    """Spinor norm square class of an orthogonal map.

    With kind="hermitian" the matrix is a unitary map over E and is viewed
    as an isometry of the trace form over `level`. With kind="symmetric"
    both the form and the matrix live over `level`.
    """
    if kind == "hermitian":
        text = _payload(tower, gram, matrix, "hermitian", "E", "E", level=level)
    else:
        text = _payload(tower, gram, matrix, "symmetric", level, level, level=level)
    return json.loads(_spinor.sn_orthogonal(text))


def verify(p=3, m0=1, c0_index=0, dims=(1, 2), trials=1000, seed=0, exhaustive=False, only=(), timing=False):
    """Run the check suite and return its report as a dict."""
    text = _spinor.verify(p, m0, c0_index, list(dims), trials, seed, exhaustive, list(only), timing)
    return json.loads(text)


def replay(record):
    """Re-run one failure record from a report. Returns (passed, detail)."""
    return _spinor.replay(json.dumps(record))


def check_names():
    return list(_spinor.check_names())
