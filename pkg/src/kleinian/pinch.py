"""Pinched words: group elements whose image has trace +-2.

Words live in the free product ``(Z x Z) * Z * ... * Z`` generated by
``alpha, beta`` (letters ``a``/``A``, ``b``/``B``) and ``gamma_j`` (letters
``gj``/``Gj``), capitals denoting inverses.  A word is kept as a tuple of
syllables: ``("P", p, q)`` for the peripheral block ``alpha^p beta^q`` and
``("G", j, k)`` for ``gamma_j^k``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .comprbody import GAMMA1, CompressionBodyRep, DegenerateLattice
from .moebius import PARABOLIC_TOL, MoebiusMap

MAX_WORD_LEN = 12


class UnknownGenerator(KeyError):
    pass


class BudgetExceeded(ValueError):
    pass


class NoConvergence(RuntimeError):
    pass


class Singular(RuntimeError):
    pass


class OverConstrained(ValueError):
    pass


_LETTER = re.compile(r"^([aAbB])$|^([gG])([1-9][0-9]*)$")


def _letter_syllable(tok: str):
    m = _LETTER.match(tok)
    if not m:
        raise UnknownGenerator(tok)
    if m.group(1):
        sign = 1 if tok.islower() else -1
        return ("P", sign, 0) if tok in "aA" else ("P", 0, sign)
    sign = 1 if m.group(2) == "g" else -1
    return ("G", int(m.group(3)), sign)


def _push(stack: list, syl) -> None:
    if stack:
        top = stack[-1]
        if top[0] == syl[0] == "P":
            merged = ("P", top[1] + syl[1], top[2] + syl[2])
            stack.pop()
            if merged[1] or merged[2]:
                stack.append(merged)
            return
        if top[0] == syl[0] == "G" and top[1] == syl[1]:
            merged = ("G", top[1], top[2] + syl[2])
            stack.pop()
            if merged[2]:
                stack.append(merged)
            return
    stack.append(syl)


def _mergeable(s, t) -> bool:
    return s[0] == t[0] and (s[0] == "P" or s[1] == t[1])


@dataclass(frozen=True)
class GroupWord:
    """A reduced word, stored in syllable normal form."""

    syllables: tuple = ()

    @classmethod
    def parse(cls, text: str | list | tuple) -> "GroupWord":
        toks = text.split() if isinstance(text, str) else list(text)
        stack: list = []
        for tok in toks:
            _push(stack, _letter_syllable(tok))
        return cls(tuple(stack))

    @classmethod
    def from_syllables(cls, syllables) -> "GroupWord":
        stack: list = []
        for s in syllables:
            _push(stack, tuple(s))
        return cls(tuple(stack))

    def letters(self) -> list[str]:
        out = []
        for kind, x, y in self.syllables:
            if kind == "P":
                out += ["a" if x > 0 else "A"] * abs(x)
                out += ["b" if y > 0 else "B"] * abs(y)
            else:
                out += [("g" if y > 0 else "G") + str(x)] * abs(y)
        return out

    def __len__(self):
        return sum(abs(x) + abs(y) if k == "P" else abs(y) for k, x, y in self.syllables)

    def __str__(self):
        return " ".join(self.letters())

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((k, -x, -y) if k == "P" else (k, x, -y) for k, x, y in reversed(self.syllables)))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord.from_syllables(self.syllables + other.syllables)

    def cyclically_reduced(self) -> "GroupWord":
        syl = self.syllables
        while len(syl) >= 2 and _mergeable(syl[0], syl[-1]):
            syl = GroupWord.from_syllables((syl[-1],) + syl[:-1]).syllables
        return GroupWord(syl)

    def is_peripheral(self) -> bool:
        return all(k == "P" for k, _, _ in self.syllables)

    def max_generator(self) -> int:
        return max((x for k, x, _ in self.syllables if k == "G"), default=0)

    def rotations(self) -> list["GroupWord"]:
        s = self.syllables
        return [GroupWord(s[i:] + s[:i]) for i in range(len(s))] or [self]

    def is_proper_power(self) -> bool:
        s = self.syllables
        m = len(s)
        if m == 1:
            kind, _, y = s[0]
            return kind == "G" and abs(y) > 1
        return any(m % d == 0 and s[d:] + s[:d] == s for d in range(1, m))

    def sort_key(self) -> tuple:
        return tuple(_letter_rank(t) for t in self.letters())

    def canonical(self) -> "GroupWord":
        """Least representative up to cyclic rotation and inversion."""
        cands = self.rotations() + self.inverse().rotations()
        return min(cands, key=GroupWord.sort_key)


def _letter_rank(tok: str) -> int:
    if tok[0] in "aAbB":
        return "aAbB".index(tok)
    return 2 + 2 * int(tok[1:]) + (tok[0] == "G")


# ---------------------------------------------------------------------------
# matrices


def generator_lifts(rep: CompressionBodyRep, n: int | None = None) -> tuple[list[str], np.ndarray]:
    """SL(2, C) lifts of every generator; inverses are exact adjugates of the lifts."""
    names = ["a", "A", "b", "B"]
    mats = []
    base = [rep.alpha.matrix(), rep.beta.matrix()]
    for j, g in enumerate(rep.gammas, start=1):
        names += [f"g{j}", f"G{j}"]
    for m in base:
        mats += [m, _adj(m)]
    for g in rep.gammas:
        m = g.matrix()
        mats += [m, _adj(m)]
    return names, np.array(mats, dtype=np.complex128)


def _adj(m: np.ndarray) -> np.ndarray:
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]], dtype=np.complex128)


def _encode(words: list[GroupWord], names: list[str]) -> np.ndarray:
    index = {nm: i for i, nm in enumerate(names)}
    width = max((len(w) for w in words), default=0)
    out = np.full((len(words), max(width, 1)), -1, dtype=np.int64)
    for r, w in enumerate(words):
        for c, tok in enumerate(w.letters()):
            try:
                out[r, c] = index[tok]
            except KeyError:
                raise UnknownGenerator(tok) from None
    return out


def word_lifts(rep: CompressionBodyRep, words: list[GroupWord]) -> np.ndarray:
    names, gens = generator_lifts(rep)
    return kernels.word_products(gens, _encode(words, names))


def word_lift(rep: CompressionBodyRep, w: GroupWord | str) -> np.ndarray:
    """The ordered product of the generator lifts (a 2x2 array)."""
    if isinstance(w, str):
        w = GroupWord.parse(w)
    return word_lifts(rep, [w])[0]


def word_matrix(rep: CompressionBodyRep, w: GroupWord | str) -> MoebiusMap:
    return MoebiusMap.from_matrix(word_lift(rep, w))


# ---------------------------------------------------------------------------
# reports and enumeration


@dataclass(frozen=True)
class PinchReport:
    word: GroupWord
    trace: complex
    parabolic: bool
    tol: float

    def to_json(self) -> dict:
        return {
            "word": str(self.word),
            "trace": [_clean(self.trace.real), _clean(self.trace.imag)],
            "parabolic": self.parabolic,
            "tol": self.tol,
        }


def _clean(x: float) -> float:
    x = float(f"{x:.12g}")
    return 0.0 if x == 0 else x


def _reports(rep, words, tol) -> list[PinchReport]:
    if not words:
        return []
    lifts = word_lifts(rep, words)
    tr = lifts[:, 0, 0] + lifts[:, 1, 1]
    eye = np.eye(2)
    dev = np.minimum(
        np.abs(lifts - eye).reshape(len(words), -1).max(axis=1),
        np.abs(lifts + eye).reshape(len(words), -1).max(axis=1),
    )
    par = (np.abs(tr * tr - 4) <= tol) & (dev > tol)
    return [PinchReport(w, complex(t), bool(p), tol) for w, t, p in zip(words, tr, par)]


def pinch_report(rep: CompressionBodyRep, w: GroupWord | str, tol: float = PARABOLIC_TOL) -> PinchReport:
    if isinstance(w, str):
        w = GroupWord.parse(w)
    return _reports(rep, [w], tol)[0]


def _syllable_choices(n: int, budget: int):
    for length in range(1, budget + 1):
        for p in range(-length, length + 1):
            r = length - abs(p)
            for q in sorted({r, -r}, reverse=True):
                yield ("P", p, q), length
    for length in range(1, budget + 1):
        for j in range(1, n + 1):
            for k in (length, -length):
                yield ("G", j, k), length


def cyclic_words(n: int, max_len: int) -> list[GroupWord]:
    """Canonical non-peripheral cyclic words of length <= max_len.

    One representative per class under rotation and inversion, proper powers
    dropped; ordered by length, then by the letter order a < A < b < B < g1 <
    G1 < g2 < ...
    """
    choices = list(_syllable_choices(n, max_len))
    found: list[GroupWord] = []

    def extend(seq: list, used: int):
        if seq:
            w = GroupWord(tuple(seq))
            closed = len(seq) == 1 or not _mergeable(seq[0], seq[-1])
            if closed and not w.is_peripheral() and not w.is_proper_power():
                if w.canonical().syllables == w.syllables:
                    found.append(w)
        for syl, cost in choices:
            if used + cost > max_len:
                continue
            if seq and _mergeable(seq[-1], syl):
                continue
            seq.append(syl)
            extend(seq, used + cost)
            seq.pop()

    extend([], 0)
    found.sort(key=lambda w: (len(w), w.sort_key()))
    return found


def enumerate_pinched(
    rep: CompressionBodyRep, max_len: int, tol: float = PARABOLIC_TOL
) -> list[PinchReport]:
    if max_len > MAX_WORD_LEN:
        raise BudgetExceeded(f"max_len {max_len} exceeds the budget of {MAX_WORD_LEN}")
    if max_len < 1:
        return []
    words = cyclic_words(rep.n, max_len)
    return [r for r in _reports(rep, words, tol) if r.parabolic]


def max_pinched_example() -> CompressionBodyRep:
    """The maximally pinched structure on C(1;2) with cusp shape -1/4 + i sqrt(3)/4."""
    return CompressionBodyRep.from_generators(1, 4, complex(-1, 3**0.5))


# ---------------------------------------------------------------------------
# Newton search for pinched parameters

PARAM_NAMES = ("a", "b", "g1_a", "g1_b", "g1_c")


@dataclass
class PinchSearchResult:
    rep: CompressionBodyRep
    params: dict
    residuals: list = field(default_factory=list)
    iterations: int = 0

    @property
    def max_residual(self) -> float:
        return max((abs(r) for r in self.residuals), default=0.0)


def _assemble(n, values: dict, gamma1=None):
    if gamma1 is not None:
        return CompressionBodyRep.from_generators(n, values["a"], values["b"], gamma1)
    g = values["g1_a"], values["g1_b"], values["g1_c"]
    d = (1 + g[1] * g[2]) / g[0]
    gamma1 = MoebiusMap(g[0], g[1], g[2], d)
    return CompressionBodyRep.from_generators(n, values["a"], values["b"], gamma1)


def pinch_search(
    words,
    n: int,
    init: tuple[complex, complex],
    free_params=("b",),
    gamma1: MoebiusMap = GAMMA1,
    max_iter: int = 200,
    tol: float = 1e-10,
    fd_step: float = 1e-7,
) -> PinchSearchResult:
    """Damped Newton iteration on ``params -> tr(w)^2 - 4`` for every word.

    The Jacobian is taken by forward differences in the real and imaginary
    parts of each free parameter; under-determined systems take the
    minimum-norm step.
    """
    words = [GroupWord.parse(w) if isinstance(w, str) else w for w in words]
    free = list(free_params)
    bad = [p for p in free if p not in PARAM_NAMES]
    if bad:
        raise ValueError(f"unknown parameters {bad}; choose from {PARAM_NAMES}")
    if len(words) > len(free):
        raise OverConstrained(f"{len(words)} trace conditions but only {len(free)} free parameters")
    for w in words:
        if w.max_generator() > n:
            raise UnknownGenerator(str(w))

    base = {"a": complex(init[0]), "b": complex(init[1]),
            "g1_a": gamma1.a, "g1_b": gamma1.b, "g1_c": gamma1.c}
    if abs(base["g1_a"]) < 1e-12 and any(p.startswith("g1") for p in free):
        raise ValueError("gamma_1 with vanishing (1,1) entry cannot be parametrised")

    def unpack(x):
        vals = dict(base)
        for i, name in enumerate(free):
            vals[name] = complex(x[2 * i], x[2 * i + 1])
        return vals

    fixed_gamma = None if any(p.startswith("g1") for p in free) else gamma1

    def residual(x):
        try:
            rep = _assemble(n, unpack(x), fixed_gamma)
        except (DegenerateLattice, ValueError, ZeroDivisionError):
            return None
        lifts = word_lifts(rep, words)
        tr = lifts[:, 0, 0] + lifts[:, 1, 1]
        return tr * tr - 4

    x = np.array([c for name in free for c in (base[name].real, base[name].imag)])
    F = residual(x)
    if F is None:
        raise DegenerateLattice("initial parameters do not give a lattice")
    it = 0
    while np.max(np.abs(F)) > tol:
        if it >= max_iter:
            raise NoConvergence(f"residual {np.max(np.abs(F)):.3g} after {max_iter} iterations")
        it += 1
        Fr = np.concatenate([F.real, F.imag])
        J = np.empty((Fr.size, x.size))
        for i in range(x.size):
            xh = x.copy()
            xh[i] += fd_step
            Fh = residual(xh)
            if Fh is None:
                raise Singular("finite-difference step left the parameter domain")
            J[:, i] = (np.concatenate([Fh.real, Fh.imag]) - Fr) / fd_step
        if np.linalg.matrix_rank(J, tol=1e-9 * max(1.0, np.abs(J).max())) < Fr.size:
            raise Singular("trace Jacobian dropped rank")
        step = np.linalg.lstsq(J, -Fr, rcond=None)[0]
        norm = np.linalg.norm(Fr)
        t = 1.0
        while True:
            trial = residual(x + t * step)
            if trial is not None and np.linalg.norm(trial) < norm:
                break
            t *= 0.5
            if t < 1e-12:
                raise NoConvergence("damping could not reduce the residual")
        x = x + t * step
        F = trial

    vals = unpack(x)
    return PinchSearchResult(
        rep=_assemble(n, vals, fixed_gamma),
        params={k: vals[k] for k in free},
        residuals=[complex(f) for f in F],
        iterations=it,
    )
