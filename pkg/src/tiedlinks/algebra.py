"""The braids-and-ties algebra of type B and its Markov trace.

Elements are linear combinations of terms (coeff, ties, word) where `ties`
is a partition of {0..n} kept at the left of the term and `word` is a
sequence of letters:

    i > 0   the crossing generator T_i (1 <= i <= n-1)
    -k      the loop element B'_k = T_{k-1} ... T_1 B_1 T_1 ... T_{k-1}
            (so -1 is the loop generator B_1 itself)

Moving a partition across a word relabels it by the word's permutation
(T_i acts by the transposition (i, i+1), loop letters act trivially), which
is an exact relation of the algebra.  The quadratic relations

    T_i^2  = 1 + (u - 1/u) E_i T_i
    B_1^2  = 1 + (v - 1/v) F_1 B_1

drive all rewriting; inverses are expanded eagerly as T_i^-1 = T_i - (u-1/u)E_i
and B_1^-1 = B_1 - (v-1/v)F_1.

The trace is computed by strand peeling.  A word is first normalized so the
top strand n is touched at most once (by T_{n-1} or B'_n); the touch is
rotated to the end by cyclicity and removed with the multiplicative rules

    nothing:  factor 1 (untied) or x (tied)
    T_{n-1}:  factor z, strand n fused onto strand n-1
    B'_n:     factor y (untied) or w (tied)

and the computation recurses one strand lower.  Results are memoized on the
canonical (n, ties, word) key; the cache only ever stores finished values,
so concurrent readers are safe.
"""

from __future__ import annotations

import os
from typing import Iterable, Optional, Sequence

from . import braid
from .coeffring import Scalar, constant, lambda_power
from .partition import TiePartition

_ONE = constant("one")
_DU = constant("du")
_DV = constant("dv")


class ReductionCap(RuntimeError):
    """Rewrite budget exhausted; indicates a bug, not an input error."""


def _default_budget() -> int:
    return int(os.environ.get("TIEDLINKS_STEP_BUDGET", "1000000"))


def T(i: int) -> int:
    """Word letter for the crossing generator T_i."""
    if i < 1:
        raise ValueError("T index must be >= 1")
    return i


def BP(k: int) -> int:
    """Word letter for the loop element B'_k (BP(1) is B_1)."""
    if k < 1:
        raise ValueError("loop index must be >= 1")
    return -k


def _check_word(word: Sequence[int], n: int) -> None:
    for l in word:
        if l == 0 or l > n - 1 or l < -n:
            raise ValueError(f"letter {l} invalid on {n} strands")


def _occ(word: Iterable[int], n: int) -> tuple:
    """occ[p] = top strand occupying position p below the word."""
    occ = list(range(n + 1))
    for l in word:
        if l > 0:
            occ[l], occ[l + 1] = occ[l + 1], occ[l]
    return tuple(occ)


def _tau(word: Iterable[int], n: int) -> tuple:
    """tau[a] = bottom position of top strand a."""
    occ = _occ(word, n)
    tau = [0] * (n + 1)
    for p, a in enumerate(occ):
        tau[a] = p
    return tuple(tau)


class AlgElement:
    """A finite linear combination of (ties, word) terms."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[dict] = None):
        self.n = n
        self.terms = terms if terms is not None else {}

    @staticmethod
    def unit(n: int) -> "AlgElement":
        return AlgElement(n, {(TiePartition.discrete(n).reps, ()): _ONE})

    @staticmethod
    def from_term(n: int, coeff: Scalar, ties: TiePartition, word: Sequence[int]) -> "AlgElement":
        _check_word(word, n)
        if coeff.is_zero():
            return AlgElement(n)
        return AlgElement(n, {(ties.reps, tuple(word)): coeff})

    @staticmethod
    def gen_T(n: int, i: int) -> "AlgElement":
        return AlgElement.from_term(n, _ONE, TiePartition.discrete(n), (T(i),))

    @staticmethod
    def gen_BP(n: int, k: int) -> "AlgElement":
        return AlgElement.from_term(n, _ONE, TiePartition.discrete(n), (BP(k),))

    @staticmethod
    def from_partition(n: int, p: TiePartition) -> "AlgElement":
        return AlgElement(n, {(p.reps, ()): _ONE})

    def _add_term(self, reps: tuple, word: tuple, coeff: Scalar) -> None:
        key = (reps, word)
        cur = self.terms.get(key)
        s = coeff if cur is None else cur + coeff
        if s.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = s

    def __add__(self, other: "AlgElement") -> "AlgElement":
        if self.n != other.n:
            raise ValueError("mismatched strand counts")
        out = AlgElement(self.n, dict(self.terms))
        for (reps, word), c in other.terms.items():
            out._add_term(reps, word, c)
        return out

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        return self + other.scale(-_ONE)

    def scale(self, s: Scalar) -> "AlgElement":
        if s.is_zero():
            return AlgElement(self.n)
        return AlgElement(self.n, {k: c * s for k, c in self.terms.items()})

    def with_ties(self, p: TiePartition) -> "AlgElement":
        """Left-multiply by the tie idempotent of p."""
        out = AlgElement(self.n)
        for (reps, word), c in self.terms.items():
            out._add_term(p.join(TiePartition(self.n, reps)).reps, word, c)
        return out

    def __mul__(self, other: "AlgElement") -> "AlgElement":
        if self.n != other.n:
            raise ValueError("mismatched strand counts")
        n = self.n
        out = AlgElement(n)
        for (r1, w1), c1 in self.terms.items():
            occ = _occ(w1, n)
            p1 = TiePartition(n, r1)
            for (r2, w2), c2 in other.terms.items():
                p2 = TiePartition(n, r2).apply_perm(occ)
                out._add_term(p1.join(p2).reps, w1 + w2, c1 * c2)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        # structural equality of normal terms, not algebra equality
        if not isinstance(other, AlgElement):
            return NotImplemented
        if self.n != other.n or set(self.terms) != set(other.terms):
            return False
        return all(c == other.terms[k] for k, c in self.terms.items())

    __hash__ = None

    def __repr__(self) -> str:
        return f"AlgElement({self.n}, {dump(self)})"


def _letter_str(l: int) -> str:
    return f"T{l}" if l > 0 else ("B1" if l == -1 else f"B'{-l}")


def dump(a: AlgElement) -> str:
    """Debug rendering: coeff * {partition} * word, one term per line."""
    if not a.terms:
        return "0"
    lines = []
    for (reps, word), c in sorted(a.terms.items()):
        p = TiePartition(a.n, reps)
        ws = ".".join(_letter_str(l) for l in word) or "1"
        lines.append(f"({c!r}) * {p} * {ws}")
    return "\n".join(lines)


# -- the representation ---------------------------------------------------------

def theta(w: braid.TiedWord) -> AlgElement:
    """Image of a tied braid word: crossings to T, loops to B_1, ties to
    partition idempotents; inverse letters expanded by the quadratics."""
    w = braid.expand_tie_macros(w)
    n = w.n
    # branch state: (coeff, partition, word, occupancy below word)
    branches = [(_ONE, TiePartition.discrete(n), (), tuple(range(n + 1)))]
    for g in w.letters:
        nxt = []
        if isinstance(g, braid.Sigma):
            for c, p, wd, occ in branches:
                swapped = list(occ)
                swapped[g.i], swapped[g.i + 1] = swapped[g.i + 1], swapped[g.i]
                nxt.append((c, p, wd + (g.i,), tuple(swapped)))
                if g.sign < 0:
                    tie = (occ[g.i], occ[g.i + 1])
                    nxt.append((c * -_DU, p.join_pairs([tie]), wd, occ))
        elif isinstance(g, braid.Rho):
            for c, p, wd, occ in branches:
                nxt.append((c, p, wd + (-1,), occ))
                if g.sign < 0:
                    nxt.append((c * -_DV, p.join_pairs([(0, occ[1])]), wd, occ))
        elif isinstance(g, braid.Eta):
            for c, p, wd, occ in branches:
                nxt.append((c, p.join_pairs([(occ[g.i], occ[g.i + 1])]), wd, occ))
        elif isinstance(g, braid.Phi):
            for c, p, wd, occ in branches:
                nxt.append((c, p.join_pairs([(0, occ[1])]), wd, occ))
        else:
            raise TypeError(f"unexpandable letter {g!r}")
        branches = nxt
    out = AlgElement(n)
    for c, p, wd, _ in branches:
        out._add_term(p.reps, wd, c)
    return out


def theta_L(w: braid.TiedWord) -> AlgElement:
    """theta rescaled: each sigma^{+-1} image picks up a factor lambda^{+-1}."""
    return theta(w).scale(lambda_power(braid.exponent_sum(w)))


# -- trace -----------------------------------------------------------------------

_TRACE_MEMO: dict = {}


def clear_caches() -> None:
    _TRACE_MEMO.clear()


class _Budget:
    __slots__ = ("left",)

    def __init__(self, left: int):
        self.left = left

    def tick(self, k: int = 1) -> None:
        self.left -= k
        if self.left < 0:
            raise ReductionCap("rewrite step budget exceeded")


def _touches(word: tuple, m: int) -> list:
    """Positions of letters touching strand m: T_{m-1} or B'_m."""
    t = m - 1
    return [idx for idx, l in enumerate(word) if l == t or l == -m]


def _split_single_touch(word: tuple, m: int) -> tuple:
    pos = _touches(word, m)
    if not pos:
        return word, None, ()
    (i,) = pos
    return word[:i], word[i], word[i + 1 :]


def _resolve_pair(n: int, word: tuple, m: int, i1: int, i2: int, budget: _Budget) -> list:
    """Rewrite the first two level-m touches of `word`.

    Returns branches (coeff, tie_pairs_at_top, new_word); every branch has
    strictly smaller (touch count, unfolded weight).
    """
    budget.tick()
    L, R = word[i1], word[i2]
    X = word[i1 + 1 : i2]
    pre, post = word[:i1], word[i2 + 1 :]
    t, b = m - 1, -m  # the two letters touching strand m
    out = []

    if m == 1:
        # only B_1 B_1 is possible: quadratic for the loop generator
        occp = _occ(pre, n)
        out.append((_ONE, (), pre + X + post))
        out.append((_DV, ((0, occp[1]),), pre + (-1,) + X + post))
        return out

    if L == t and R == t:
        for c2, pairs2, x2 in _normalize_top(n, X, m - 1, budget):
            occp = _occ(pre + (t,), n)
            pairs = tuple((occp[a], occp[bb]) for a, bb in pairs2)
            u, kappa, v = _split_single_touch(x2, m - 1)
            if kappa is None:
                # u, v commute past T_{m-1}; quadratic T^2 = 1 + du*E*T
                out.append((c2, pairs, pre + x2 + post))
                occq = _occ(pre + u, n)
                out.append(
                    (
                        c2 * _DU,
                        pairs + ((occq[m - 1], occq[m]),),
                        pre + u + (t,) + v + post,
                    )
                )
            elif kappa > 0:  # T_{m-2}: braid relation
                out.append((c2, pairs, pre + u + (m - 2, t, m - 2) + v + post))
            else:  # B'_{m-1}: the two crossings close a larger loop
                out.append((c2, pairs, pre + u + (b,) + v + post))
        return out

    occp = _occ(pre, n)
    etie = (occp[m - 1], occp[m])
    if L == t and R == b:
        # slide B'_m left through X, then T B'_m = B'_{m-1} T + du E B'_m
        out.append((_ONE, (), pre + (-(m - 1), t) + X + post))
        out.append((_DU, (etie,), pre + (b,) + X + post))
        return out
    if L == b and R == t:
        # slide B'_m right through X, then B'_m T = T B'_{m-1} + du E B'_m
        occq = _occ(pre + X, n)
        qtie = (occq[m - 1], occq[m])
        out.append((_ONE, (), pre + X + (t, -(m - 1)) + post))
        out.append((_DU, (qtie,), pre + X + (b,) + post))
        return out
    # B'_m B'_m: squared loop
    out.append((_ONE, (), pre + (t, -(m - 1), -(m - 1), t) + X + post))
    out.append((_DU, (etie,), pre + (-(m - 1), t, -(m - 1)) + X + post))
    out.append((_DU * _DU, (etie,), pre + (-(m - 1), b) + X + post))
    return out


def _normalize_top(n: int, word: tuple, m: int, budget: _Budget) -> list:
    """Reduce `word` (letters of level <= m) to branches with at most one
    level-m touch.  Tie pairs are reported at the word's top edge."""
    pos = _touches(word, m)
    if len(pos) < 2:
        return [(_ONE, (), word)]
    out = []
    for c, pairs, w2 in _resolve_pair(n, word, m, pos[0], pos[1], budget):
        for c3, pairs3, w3 in _normalize_top(n, w2, m, budget):
            out.append((c * c3, pairs + pairs3, w3))
    return out


def _tr_term(n: int, reps: tuple, word: tuple, budget: _Budget) -> Scalar:
    if n == 0:
        return _ONE
    key = (n, reps, word)
    hit = _TRACE_MEMO.get(key)
    if hit is not None:
        return hit

    p = TiePartition(n, reps)
    pos = _touches(word, n)
    if len(pos) >= 2:
        total = None
        for c, pairs, w2 in _resolve_pair(n, word, n, pos[0], pos[1], budget):
            v = c * _tr_term(n, p.join_pairs(pairs).reps, w2, budget)
            total = v if total is None else total + v
        _TRACE_MEMO[key] = total
        return total

    budget.tick()
    if not pos:
        blk = p.block_of(n)
        factor = _ONE if blk == [n] else constant("x")
        val = factor * _tr_term(n - 1, p.drop_top().reps, word, budget)
        _TRACE_MEMO[key] = val
        return val

    (i,) = pos
    chi = word[i]
    suffix = word[i + 1 :]
    if suffix:
        # cyclicity: rotate the suffix to the front, relabelling the ties
        p = p.apply_perm(_occ(suffix, n))
    omega = suffix + word[:i]
    r = p.apply_perm(_tau(omega, n))
    if chi > 0:  # T_{n-1}: strand n fuses onto strand n-1, factor z
        factor = constant("z")
        peeled = r.merge_top_into(n - 1)
    else:  # B'_n: factor y, or w when strand n is tied
        factor = constant("y") if r.block_of(n) == [n] else constant("w")
        peeled = r.drop_top()
    new_p = peeled.apply_perm(_occ(omega, n))
    val = factor * _tr_term(n - 1, new_p.reps, omega, budget)
    _TRACE_MEMO[key] = val
    return val


def trace(a: AlgElement, n: Optional[int] = None, budget: Optional[int] = None) -> Scalar:
    """The Markov trace of an algebra element (tr of the identity is 1)."""
    if n is None:
        n = a.n
    elif n != a.n:
        raise ValueError("explicit n disagrees with the element")
    b = _Budget(budget if budget is not None else _default_budget())
    total = Scalar.from_int(0)
    for (reps, word), c in a.terms.items():
        total = total + c * _tr_term(n, reps, word, b)
    return total


def trace_probe_equal(
    a: AlgElement, b: AlgElement, probes: Optional[list] = None
) -> bool:
    """Sound-but-incomplete equality oracle: trace((a-b)*g) = 0 for all probes.

    A True answer means no probe separates the elements; False certifies
    inequality.
    """
    if a.n != b.n:
        raise ValueError("mismatched strand counts")
    d = a - b
    if d.is_zero():
        return True
    if probes is None:
        probes = default_probes(a.n)
    for g in probes:
        if not trace(d * g).is_zero():
            return False
    return True


def _all_partitions(n: int) -> list:
    parts: list = [[]]
    for e in range(n + 1):
        nxt = []
        for blocks in parts:
            for i in range(len(blocks)):
                nxt.append(blocks[:i] + [blocks[i] + [e]] + blocks[i + 1 :])
            nxt.append(blocks + [[e]])
        parts = nxt
    return [TiePartition.from_blocks(n, b) for b in parts]


_PROBES_MEMO: dict = {}


def default_probes(n: int, max_len: int = 4) -> list:
    """Images of all tie-free words of bounded length plus all tie idempotents."""
    key = (n, max_len)
    if key in _PROBES_MEMO:
        return _PROBES_MEMO[key]
    alphabet = [braid.Sigma(i, s) for i in range(1, n) for s in (1, -1)]
    alphabet += [braid.Rho(1), braid.Rho(-1)]
    probes = []
    frontier = [()]
    for _ in range(max_len + 1):
        probes.extend(theta(braid.TiedWord(n, ls)) for ls in frontier)
        frontier = [ls + (g,) for ls in frontier for g in alphabet]
    probes.extend(AlgElement.from_partition(n, p) for p in _all_partitions(n))
    _PROBES_MEMO[key] = probes
    return probes
