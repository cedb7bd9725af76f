"""Exact rational-function models of the seed coordinate tori.

Two coordinate families live on a seed: multiplicative coordinates ``X_i``
with mutation

    X_k -> 1/X_k,     X_i -> X_i * (1 + X_k**(-sgn(eps_ik)))**(-eps_ik),

and coordinates ``A_i`` with mutation

    A_i -> A_i  (i != k),
    A_k -> (prod_{eps_ki>0} A_i**eps_ki + prod_{eps_ki<0} A_i**(-eps_ki)) / A_k.

Both are subtraction-free, so they restrict to self-maps of the positive
orthant; ``eval_positive`` exploits that.  All symbolic arithmetic is exact
rational-function arithmetic over Q (sympy polynomials underneath), kept in
reduced form after every step so that word composition stays small and
equality is decidable by cross-multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import sympy as sp

from .seeds import Label, Seed, SeedError, mutate_seed, relabel_seed, sgn

__all__ = [
    "RationalExpr",
    "CoordinateMap",
    "WordError",
    "mutate_x_map",
    "mutate_a_map",
    "projection_p",
    "identity_map",
    "compose_word",
    "is_trivial_word",
    "word_report",
    "eval_positive",
    "log_mutation_image",
    "parse_word",
]


class WordError(ValueError):
    """A mutation/symmetry word that is invalid or does not return."""


def xvar(label: Label) -> sp.Symbol:
    return sp.Symbol(f"X_{label}")


def avar(label: Label) -> sp.Symbol:
    return sp.Symbol(f"A_{label}")


_FAMILY_VAR = {"x": xvar, "a": avar}


class RationalExpr:
    """Reduced rational function over Q in seed-indexed variables.

    The numerator/denominator pair is kept with gcd cancelled (sympy
    ``cancel``); equality cross-multiplies, which is exact.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        expr = sp.cancel(sp.together(sp.sympify(num) / sp.sympify(den)))
        n, d = sp.fraction(expr)
        if d == 0 or sp.simplify(d) == 0:
            raise ZeroDivisionError("zero denominator in RationalExpr")
        self.num = sp.expand(n)
        self.den = sp.expand(d)

    @property
    def expr(self) -> sp.Expr:
        return self.num / self.den

    def __add__(self, other):
        other = _coerce(other)
        return RationalExpr(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        other = _coerce(other)
        return RationalExpr(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other):
        other = _coerce(other)
        return RationalExpr(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = _coerce(other)
        return RationalExpr(self.num * other.den, self.den * other.num)

    def __pow__(self, n: int):
        if n >= 0:
            return RationalExpr(self.num**n, self.den**n)
        return RationalExpr(self.den**(-n), self.num**(-n))

    def __eq__(self, other) -> bool:
        if not isinstance(other, (RationalExpr, int, Fraction)):
            return NotImplemented
        other = _coerce(other)
        return sp.expand(self.num * other.den - other.num * self.den) == 0

    def __hash__(self):
        return hash((sp.srepr(self.num), sp.srepr(self.den)))

    def is_one(self) -> bool:
        return sp.expand(self.num - self.den) == 0

    def subs(self, mapping: Mapping[sp.Symbol, sp.Expr]) -> "RationalExpr":
        return RationalExpr(self.num.subs(mapping, simultaneous=True),
                            self.den.subs(mapping, simultaneous=True))

    def free_symbols(self):
        return self.num.free_symbols | self.den.free_symbols

    def evaluate(self, values: Mapping[sp.Symbol, object]):
        """Exact evaluation for rational inputs, float otherwise."""
        exact = all(isinstance(v, (int, Fraction)) for v in values.values())
        if exact:
            subs = {k: sp.Rational(v) for k, v in values.items()}
            n = self.num.subs(subs)
            d = self.den.subs(subs)
            if d == 0:
                raise ZeroDivisionError("evaluation hit a pole")
            return Fraction(sp.Rational(n / d).p, sp.Rational(n / d).q)
        subs = {k: sp.Float(v, 17) for k, v in values.items()}
        return float((self.num / self.den).subs(subs))

    def __repr__(self):
        return f"RationalExpr({sp.sstr(self.expr)})"

    def __str__(self):
        return sp.sstr(sp.together(self.expr))


def _coerce(x) -> RationalExpr:
    if isinstance(x, RationalExpr):
        return x
    return RationalExpr(sp.Rational(x))


@dataclass(frozen=True)
class CoordinateMap:
    """Pullback map: each target-seed variable goes to a RationalExpr in the
    source-seed variables of the ``source_family``."""

    source: Seed
    target: Seed
    family: str                      # family of the target variables: 'x' | 'a'
    source_family: str               # family the image expressions live in
    images: Mapping[Label, RationalExpr]

    def image(self, label: Label) -> RationalExpr:
        return self.images[label]

    def is_identity(self) -> bool:
        if self.family != self.source_family:
            return False
        var = _FAMILY_VAR[self.family]
        return all(self.images[l] == RationalExpr(var(l)) for l in self.target.labels)

    def then(self, outer: "CoordinateMap") -> "CoordinateMap":
        """Pullback composition: ``outer`` maps its target variables into this
        map's target family; substitute this map's images into it."""
        if outer.source_family != self.family:
            raise WordError("coordinate maps are not composable")
        var = _FAMILY_VAR[self.family]
        subs = {var(l): self.images[l].expr for l in self.target.labels}
        images = {l: outer.images[l].subs(subs) for l in outer.target.labels}
        return CoordinateMap(self.source, outer.target, outer.family, self.source_family, images)

    def __str__(self):
        var = _FAMILY_VAR[self.family]
        lines = [f"{var(l)} -> {self.images[l]}" for l in self.target.labels]
        return "\n".join(lines)


def identity_map(s: Seed, family: str) -> CoordinateMap:
    var = _FAMILY_VAR[family]
    return CoordinateMap(s, s, family, family,
                         {l: RationalExpr(var(l)) for l in s.labels})


def mutate_x_map(s: Seed, k: Label) -> CoordinateMap:
    """X-coordinate pullback of the mutation in direction k."""
    kk = s.index(k)
    target = mutate_seed(s, k)
    xk = RationalExpr(xvar(k))
    images: dict[Label, RationalExpr] = {}
    for i, lab in enumerate(s.labels):
        xi = RationalExpr(xvar(lab))
        if i == kk:
            images[lab] = RationalExpr(1) / xk
        else:
            e = s.epsilon[i][kk]
            if e == 0:
                images[lab] = xi
            else:
                base = RationalExpr(1) + xk ** (-sgn(e))
                images[lab] = xi * base ** (-e)
    return CoordinateMap(s, target, "x", "x", images)


def mutate_a_map(s: Seed, k: Label) -> CoordinateMap:
    """A-coordinate pullback of the mutation in direction k; both exchange
    products empty gives A_k -> 2/A_k."""
    kk = s.index(k)
    target = mutate_seed(s, k)
    images: dict[Label, RationalExpr] = {}
    pos = RationalExpr(1)
    neg = RationalExpr(1)
    for j, lab in enumerate(s.labels):
        e = s.epsilon[kk][j]
        if e > 0:
            pos = pos * RationalExpr(avar(lab)) ** e
        elif e < 0:
            neg = neg * RationalExpr(avar(lab)) ** (-e)
    for i, lab in enumerate(s.labels):
        if i == kk:
            images[lab] = (pos + neg) / RationalExpr(avar(lab))
        else:
            images[lab] = RationalExpr(avar(lab))
    return CoordinateMap(s, target, "a", "a", images)


def projection_p(s: Seed) -> CoordinateMap:
    """Monomial pullback X_k -> prod_i A_i**eps_ki."""
    images: dict[Label, RationalExpr] = {}
    for i, lab in enumerate(s.labels):
        m = RationalExpr(1)
        for j, other in enumerate(s.labels):
            e = s.epsilon[i][j]
            if e:
                m = m * RationalExpr(avar(other)) ** e
        images[lab] = m
    return CoordinateMap(s, s, "x", "a", images)


def symmetry_map(s: Seed, sigma: Mapping[Label, Label], family: str) -> CoordinateMap:
    """Pullback of a relabeling: the variable at sigma(i) pulls back to the
    variable at i."""
    target = relabel_seed(s, sigma)
    var = _FAMILY_VAR[family]
    inv = {v: k for k, v in sigma.items()}
    images = {l: RationalExpr(var(inv.get(l, l))) for l in s.labels}
    return CoordinateMap(s, target, family, family, images)


WordStep = tuple  # ("m", label) | ("s", {label: label})


def compose_word(s: Seed, word: Sequence[WordStep], family: str = "x") -> tuple[Seed, CoordinateMap]:
    """Compose a left-to-right word of mutations and symmetries into a single
    pullback map from the final seed's variables to the initial ones."""
    running = identity_map(s, family)
    cur = s
    for step in word:
        kind = step[0]
        if kind == "m":
            elem = mutate_x_map(cur, step[1]) if family == "x" else mutate_a_map(cur, step[1])
        elif kind == "s":
            elem = symmetry_map(cur, step[1], family)
        else:
            raise WordError(f"unknown word step {step!r}")
        running = running.then(elem)
        cur = elem.target
    return cur, running


def word_report(s: Seed, word: Sequence[WordStep]) -> dict:
    """Compose the word on both families and report triviality of each.

    The boolean contract of :func:`is_trivial_word` is A-triviality; the
    X-side result is included for inspection only.
    """
    final_a, amap = compose_word(s, word, family="a")
    final_x, xmap = compose_word(s, word, family="x")
    returns = final_a == s
    return {
        "returns_to_seed": returns,
        "a_trivial": returns and amap.is_identity(),
        "x_trivial": returns and xmap.is_identity(),
        "final_seed": final_a,
    }


def is_trivial_word(s: Seed, word: Sequence[WordStep]) -> bool:
    """True iff the composed A-coordinate map is the identity, exactly.

    Raises WordError when the word does not return to the starting seed
    (the triviality question is ill-posed there).
    """
    rep = word_report(s, word)
    if not rep["returns_to_seed"]:
        raise WordError(
            f"word does not return to the starting seed (got {rep['final_seed']})"
        )
    return rep["a_trivial"]


def eval_positive(cmap: CoordinateMap, point: Mapping[Label, object]) -> dict[Label, object]:
    """Evaluate the map at a strictly positive point; the mutation maps are
    subtraction-free so the output is strictly positive as well."""
    var = _FAMILY_VAR[cmap.source_family]
    values = {}
    for l in cmap.source.labels:
        v = point[l]
        if not (v > 0):
            raise ValueError(f"coordinate {l} must be strictly positive, got {v!r}")
        values[var(l)] = v
    out = {}
    for l in cmap.target.labels:
        w = cmap.images[l].evaluate(values)
        if not (w > 0):
            raise ArithmeticError("positivity lost; map is not subtraction-free?")
        out[l] = w
    return out


def log_mutation_image(s: Seed, k: Label, x: Sequence[float]) -> list[float]:
    """Mutation in logarithmic coordinates, directly:

        x'_i = x_i - eps_ik * log(1 + exp(-sgn(eps_ik) * x_k))   (i != k)
        x'_k = -x_k

    Used as the additive-coordinates cross-check of the multiplicative map.
    """
    import numpy as np

    kk = s.index(k)
    out = []
    for i in range(s.rank):
        if i == kk:
            out.append(-x[kk])
            continue
        e = s.epsilon[i][kk]
        if e == 0:
            out.append(float(x[i]))
        else:
            out.append(float(x[i] - e * np.logaddexp(0.0, -sgn(e) * x[kk])))
    return out


def parse_word(text: str, labels: Iterable[Label] | None = None) -> list[WordStep]:
    """Parse words like ``"m1,m2,m1,s(1 2)"`` into step tuples.

    Mutations are ``m<label>``; symmetries are ``s(...)`` with one or more
    space-separated cycles in parentheses.
    """
    label_set = set(labels) if labels is not None else None

    def cast(tok: str) -> Label:
        val: Label = int(tok) if tok.lstrip("-").isdigit() else tok
        if label_set is not None and val not in label_set:
            raise WordError(f"label {tok!r} not in seed")
        return val

    steps: list[WordStep] = []
    depth = 0
    current = ""
    parts: list[str] = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(current)
            current = ""
        else:
            current += ch
    if current.strip():
        parts.append(current)
    for part in parts:
        part = part.strip()
        if not part:
            continue
        if part.startswith("m"):
            steps.append(("m", cast(part[1:].strip())))
        elif part.startswith("s"):
            body = part[1:].strip()
            if not (body.startswith("(") and body.endswith(")")):
                raise WordError(f"malformed symmetry step {part!r}")
            sigma: dict[Label, Label] = {}
            for cycle in body[1:-1].split(")("):
                items = [cast(t) for t in cycle.replace("(", "").replace(")", "").split()]
                for a, b in zip(items, items[1:] + items[:1]):
                    sigma[a] = b
            steps.append(("s", sigma))
        else:
            raise WordError(f"malformed word step {part!r}")
    return steps
