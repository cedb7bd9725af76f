"""Exact seed data and the discrete moves on it.

A seed is a finite list of labels, a square integer exchange matrix ``eps``
indexed by those labels, and positive integer multipliers ``d`` such that
``eps[i][j] / d[j]`` is skew-symmetric.  Everything in this module is exact
integer / rational arithmetic; no floats enter.

Conventions used throughout the package:

* ``sgn(0) == 0``.
* Mutation keeps labels and multipliers; only the exchange matrix moves.
* The Langlands dual is returned with its multipliers rescaled by the lcm of
  their denominators so they stay positive integers (only the ratios
  ``d_i/d_j`` and the reciprocals ``1/d_k`` ever enter downstream formulas,
  and a global rescale leaves those ratios usable).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Label = int | str

__all__ = [
    "Seed",
    "SeedError",
    "new_seed",
    "mutate_seed",
    "apply_symmetry",
    "relabel_seed",
    "chiral_dual",
    "langlands_dual",
    "seed_to_json",
    "seed_from_json",
    "sgn",
    "h_k",
]


class SeedError(ValueError):
    """Malformed seed data or an invalid discrete operation."""


def sgn(x) -> int:
    """Sign with sgn(0) = 0 (the convention used by every formula here)."""
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


@dataclass(frozen=True)
class Seed:
    """Immutable seed: labels, integer exchange matrix, positive multipliers."""

    labels: tuple[Label, ...]
    epsilon: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]

    def index(self, label: Label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise SeedError(f"unknown label {label!r}") from None

    @property
    def rank(self) -> int:
        return len(self.labels)

    def eps(self, i: Label, j: Label) -> int:
        return self.epsilon[self.index(i)][self.index(j)]

    def epsilon_hat(self) -> tuple[tuple[Fraction, ...], ...]:
        """The skew-symmetric normalization eps[i][j] / d[j]."""
        return tuple(
            tuple(Fraction(e, dj) for e, dj in zip(row, self.d))
            for row in self.epsilon
        )

    def d_hat(self, i: int) -> Fraction:
        """Reciprocal multiplier 1/d_i (by positional index)."""
        return Fraction(1, self.d[i])

    def multiplier_lcm(self) -> int:
        return lcm(*self.d) if self.d else 1

    def __str__(self) -> str:
        return f"Seed(labels={list(self.labels)}, epsilon={[list(r) for r in self.epsilon]}, d={list(self.d)})"


def h_k(seed: Seed, k: Label) -> int:
    """Denominator of the fractional q-power attached to direction k.

    The package interprets it as d_k, the single place this reading is fixed:
    the per-direction deformation parameters are q_k = q**(1/d_k) and
    hbar_k = hbar/d_k, so the same d_k is used on both the algebraic and the
    analytic side.
    """
    return seed.d[seed.index(k)]


def _validate(labels, epsilon, d) -> None:
    n = len(labels)
    if len(set(labels)) != n:
        raise SeedError("labels must be distinct")
    if len(epsilon) != n or any(len(row) != n for row in epsilon):
        raise SeedError(f"epsilon must be {n}x{n} to match the labels")
    if len(d) != n:
        raise SeedError("d must have one entry per label")
    for di in d:
        if not isinstance(di, int) or di < 1:
            raise SeedError(f"multipliers must be integers >= 1, got {di!r}")
    for row in epsilon:
        for e in row:
            if not isinstance(e, int):
                raise SeedError(f"exchange matrix entries must be integers, got {e!r}")
    for i in range(n):
        for j in range(n):
            if Fraction(epsilon[i][j], d[j]) != -Fraction(epsilon[j][i], d[i]):
                raise SeedError(
                    f"epsilon[i][j]/d[j] is not skew-symmetric at ({labels[i]}, {labels[j]})"
                )


def new_seed(labels: Sequence[Label], epsilon: Sequence[Sequence[int]], d: Sequence[int]) -> Seed:
    """Validate and build a seed; rejects non-skew data and bad multipliers."""
    labels = tuple(labels)
    epsilon = tuple(tuple(int(e) for e in row) for row in epsilon)
    d = tuple(int(x) for x in d)
    _validate(labels, epsilon, d)
    return Seed(labels, epsilon, d)


def mutate_seed(s: Seed, k: Label) -> Seed:
    """Mutation in direction k: negate row/column k, add |eps_ik|*eps_kj when
    eps_ik*eps_kj > 0, keep everything else.  Multipliers and labels are kept,
    so applying it twice returns the original seed."""
    kk = s.index(k)
    n = s.rank
    old = s.epsilon
    new = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == kk or j == kk:
                new[i][j] = -old[i][j]
            elif old[i][kk] * old[kk][j] > 0:
                new[i][j] = old[i][j] + abs(old[i][kk]) * old[kk][j]
            else:
                new[i][j] = old[i][j]
    return Seed(s.labels, tuple(tuple(row) for row in new), s.d)


def _normalize_sigma(s: Seed, sigma: Mapping[Label, Label]) -> dict[Label, Label]:
    mapping = dict(sigma)
    for a in s.labels:
        mapping.setdefault(a, a)
    if sorted(map(str, mapping.keys())) != sorted(map(str, s.labels)) or set(
        mapping.values()
    ) != set(s.labels):
        raise SeedError("sigma must permute the seed labels")
    return mapping


def relabel_seed(s: Seed, sigma: Mapping[Label, Label]) -> Seed:
    """Transport the seed along the relabeling sigma: the entry at
    (sigma(i), sigma(j)) of the result equals epsilon[i][j].  Always valid."""
    mapping = _normalize_sigma(s, sigma)
    pos = {lab: idx for idx, lab in enumerate(s.labels)}
    n = s.rank
    eps = [[0] * n for _ in range(n)]
    d = [0] * n
    for i, a in enumerate(s.labels):
        d[pos[mapping[a]]] = s.d[i]
        for j, b in enumerate(s.labels):
            eps[pos[mapping[a]]][pos[mapping[b]]] = s.epsilon[i][j]
    return Seed(s.labels, tuple(tuple(r) for r in eps), tuple(d))


def apply_symmetry(s: Seed, sigma: Mapping[Label, Label]) -> Seed:
    """Apply a symmetry: sigma must fix epsilon and d, i.e. the relabeled seed
    must equal the original.  Raises SeedError otherwise."""
    out = relabel_seed(s, sigma)
    if out != s:
        raise SeedError("sigma is not a symmetry of (epsilon, d)")
    return out


def chiral_dual(s: Seed) -> Seed:
    """Flip the sign of the exchange matrix."""
    return Seed(s.labels, tuple(tuple(-e for e in row) for row in s.epsilon), s.d)


def langlands_dual(s: Seed) -> Seed:
    """Dual seed with eps^v[i][j] = (d_i/d_j) * eps[i][j] and inverted
    multipliers, the latter rescaled by their common lcm to stay integral.

    For a valid seed eps^v[i][j] = -eps[j][i] exactly, so integrality of the
    dual matrix is automatic; it is still checked defensively.
    """
    n = s.rank
    eps_v = [[Fraction(s.d[i], s.d[j]) * s.epsilon[i][j] for j in range(n)] for i in range(n)]
    for row in eps_v:
        for e in row:
            if e.denominator != 1:
                raise SeedError("dual exchange matrix is not integral")
    d_v = [Fraction(1, di) for di in s.d]
    scale = lcm(*(f.denominator for f in d_v)) if d_v else 1
    d_new = tuple(int(f * scale) for f in d_v)
    g = gcd(*d_new) if d_new else 1
    d_new = tuple(x // g for x in d_new)
    return Seed(s.labels, tuple(tuple(int(e) for e in row) for row in eps_v), d_new)


# ---------------------------------------------------------------------------
# JSON wire format: {"labels": [...], "epsilon": [[...]], "d": [...]}
# ---------------------------------------------------------------------------

def seed_to_json(s: Seed, schema: int | None = 1) -> str:
    doc = {
        "labels": list(s.labels),
        "epsilon": [list(r) for r in s.epsilon],
        "d": list(s.d),
    }
    if schema is not None:
        doc["schema"] = schema
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def seed_from_json(text: str) -> Seed:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SeedError(f"invalid seed JSON: {exc}") from None
    for key in ("labels", "epsilon", "d"):
        if key not in doc:
            raise SeedError(f"seed JSON missing key {key!r}")
    return new_seed(doc["labels"], doc["epsilon"], doc["d"])


def random_seed(rng, rank: int, max_entry: int = 2, max_d: int = 3) -> Seed:
    """Random valid seed for property tests: draw a skew integer matrix c and
    multipliers d, then set eps[i][j] = c[i][j] * d[j] / gcd(d_i, d_j)."""
    d = [int(rng.integers(1, max_d + 1)) for _ in range(rank)]
    eps = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        for j in range(i + 1, rank):
            c = int(rng.integers(-max_entry, max_entry + 1))
            g = gcd(d[i], d[j])
            eps[i][j] = c * d[j] // g
            eps[j][i] = -c * d[i] // g
    return new_seed(list(range(1, rank + 1)), eps, d)
