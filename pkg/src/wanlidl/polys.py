"""Dense polynomials over F_q and the brute-force function analysis oracles.

Analysis kernels elsewhere accept evaluatable closures so that structured
polynomials evaluate in O(log s) with tables; the dense form here exists
for oracles and I/O.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import FieldCtx


@dataclass(frozen=True)
class Poly:
    """Coefficients constant-first; trailing zeros trimmed; zero poly is ()."""

    field: FieldCtx
    coeffs: tuple[int, ...]

    @classmethod
    def make(cls, field: FieldCtx, coeffs) -> "Poly":
        cs = [c % field.q for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        if len(cs) > field.q:
            raise ValueError(
                f"degree {len(cs) - 1} exceeds the reduced-representative bound {field.q - 1}"
            )
        return cls(field, tuple(cs))

    @classmethod
    def parse(cls, field: FieldCtx, text: str) -> "Poly":
        """Parse the CLI text format: comma-separated, constant term first."""
        parts = [s.strip() for s in text.split(",") if s.strip() != ""]
        if not parts:
            raise ValueError("empty polynomial text")
        return cls.make(field, [int(s) for s in parts])

    @property
    def degree(self) -> int:
        """Degree of the canonical form; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def eval(self, x: int) -> int:
        f = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    __call__ = eval

    def eval_vec(self, xs: np.ndarray) -> np.ndarray:
        f = self.field
        acc = np.zeros(np.shape(xs), dtype=np.int64)
        for c in reversed(self.coeffs):
            acc = f.add_vec(f.mul_vec(acc, xs), c)
        return acc

    def table(self) -> np.ndarray:
        """Value table of the induced function over all of F_q."""
        return self.eval_vec(self.field.elements())

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return ",".join(str(c) for c in self.coeffs)


def _values(field: FieldCtx, f):
    if isinstance(f, Poly):
        yield from (f.eval(x) for x in range(field.q))
    else:
        yield from (f(x) for x in range(field.q))


def is_permutation_bruteforce(field: FieldCtx, f) -> bool:
    """True iff x -> f(x) hits q distinct values; O(q) occupancy scan."""
    seen = bytearray(field.q)
    for v in _values(field, f):
        if seen[v]:
            return False
        seen[v] = 1
    return True


def image_size(field: FieldCtx, f) -> int:
    return len(set(_values(field, f)))
