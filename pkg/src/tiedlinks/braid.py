"""Tied braid words of type B: parsing, rewriting helpers, closure structure.

Alphabet on n strands: sigma_i^{+-1} (crossings of moving strands i, i+1),
rho^{+-1} (the first moving strand looping the axis), eta_i (tie between
moving strands i, i+1), phi (tie between the first moving strand and the
axis), plus the generalized ties eta_{i,j} and phi_j, which are macros for
conjugates of eta/phi.

Permutations act left to right: tau(uv) = tau(u) then tau(v), stored as a
tuple P with P[a] = final position of the strand entering at top position a
(P[0] = 0 for the fixed strand).  Ties have no inverses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .partition import TiePartition


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class IndexOutOfRange(ValueError):
    pass


class PreconditionViolated(ValueError):
    pass


class TiePresent(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Sigma:
    i: int
    sign: int


@dataclass(frozen=True, slots=True)
class Rho:
    sign: int


@dataclass(frozen=True, slots=True)
class Eta:
    i: int


@dataclass(frozen=True, slots=True)
class Phi:
    pass


@dataclass(frozen=True, slots=True)
class EtaGen:
    i: int
    j: int


@dataclass(frozen=True, slots=True)
class PhiGen:
    j: int


Gen = object  # union of the six letter classes


@dataclass(frozen=True, slots=True)
class TiedWord:
    n: int
    letters: tuple

    def __post_init__(self):
        if self.n < 1:
            raise IndexOutOfRange(f"strand count {self.n} < 1")
        for g in self.letters:
            _check_letter(g, self.n)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return word_str(self)


def _check_letter(g, n: int) -> None:
    if isinstance(g, (Sigma, Eta)):
        if not 1 <= g.i <= n - 1:
            raise IndexOutOfRange(f"index {g.i} out of range for n={n}")
    elif isinstance(g, EtaGen):
        if not 1 <= g.i < g.j <= n:
            raise IndexOutOfRange(f"tie ({g.i},{g.j}) out of range for n={n}")
    elif isinstance(g, PhiGen):
        if not 1 <= g.j <= n:
            raise IndexOutOfRange(f"tie index {g.j} out of range for n={n}")
    elif not isinstance(g, (Rho, Phi)):
        raise TypeError(f"not a tied-braid letter: {g!r}")


def word(n: int, letters: Iterable) -> TiedWord:
    return TiedWord(n, tuple(letters))


_TOKEN = re.compile(
    r"""^(?:
        (?P<ssign>-?)s(?P<si>\d+) |
        (?P<rsign>-?)r |
        e(?P<ei>\d+)(?:,(?P<ej>\d+))? |
        f(?P<fj>\d+)?
    )$""",
    re.VERBOSE,
)


def parse_word(text: str, n: Optional[int] = None) -> TiedWord:
    """Parse the whitespace-separated ASCII grammar into a TiedWord.

    The strand count is `n` when given, otherwise inferred from the largest
    index used (minimum 1).
    """
    letters = []
    need = 1
    pos = 0
    for tok in text.split():
        pos = text.index(tok, pos)
        m = _TOKEN.match(tok)
        if m is None:
            if tok.startswith("-e") or tok.startswith("-f"):
                raise WordSyntaxError(f"ties have no inverses: {tok!r}", pos)
            raise WordSyntaxError(f"unrecognized token {tok!r}", pos)
        if m.group("si") is not None:
            i = int(m.group("si"))
            if i < 1:
                raise WordSyntaxError(f"bad index in {tok!r}", pos)
            letters.append(Sigma(i, -1 if m.group("ssign") else 1))
            need = max(need, i + 1)
        elif m.group("ei") is not None:
            i = int(m.group("ei"))
            if m.group("ej") is None:
                if i < 1:
                    raise WordSyntaxError(f"bad index in {tok!r}", pos)
                letters.append(Eta(i))
                need = max(need, i + 1)
            else:
                j = int(m.group("ej"))
                if not 1 <= i < j:
                    raise WordSyntaxError(f"bad tie indices in {tok!r}", pos)
                letters.append(Eta(i) if j == i + 1 else EtaGen(i, j))
                need = max(need, j)
        elif m.group("fj") is not None:
            j = int(m.group("fj"))
            if j < 1:
                raise WordSyntaxError(f"bad index in {tok!r}", pos)
            letters.append(Phi() if j == 1 else PhiGen(j))
            need = max(need, j)
        elif tok.endswith("f"):
            letters.append(Phi())
        else:
            letters.append(Rho(-1 if m.group("rsign") else 1))
        pos += len(tok)
    if n is None:
        n = need
    elif need > n:
        raise IndexOutOfRange(f"word needs {need} strands, given n={n}")
    return TiedWord(n, tuple(letters))


def word_str(w: TiedWord) -> str:
    out = []
    for g in w.letters:
        if isinstance(g, Sigma):
            out.append(f"{'-' if g.sign < 0 else ''}s{g.i}")
        elif isinstance(g, Rho):
            out.append(f"{'-' if g.sign < 0 else ''}r")
        elif isinstance(g, Eta):
            out.append(f"e{g.i}")
        elif isinstance(g, EtaGen):
            out.append(f"e{g.i},{g.j}")
        elif isinstance(g, Phi):
            out.append("f")
        else:
            out.append(f"f{g.j}")
    return " ".join(out)


def is_tie(g) -> bool:
    return isinstance(g, (Eta, Phi, EtaGen, PhiGen))


def exponent_sum(w: TiedWord) -> int:
    """Signed number of sigma letters (rho excluded)."""
    return sum(g.sign for g in w.letters if isinstance(g, Sigma))


def rho_exponent(w: TiedWord) -> int:
    return sum(g.sign for g in w.letters if isinstance(g, Rho))


def expand_tie_macros(w: TiedWord) -> TiedWord:
    """Rewrite eta_{i,j} and phi_j into core letters by conjugation."""
    out = []
    for g in w.letters:
        if isinstance(g, EtaGen):
            i, j = g.i, g.j
            if j == i + 1:
                out.append(Eta(i))
            else:
                out.extend(Sigma(k, 1) for k in range(i, j - 1))
                out.append(Eta(j - 1))
                out.extend(Sigma(k, -1) for k in range(j - 2, i - 1, -1))
        elif isinstance(g, PhiGen):
            j = g.j
            if j == 1:
                out.append(Phi())
            else:
                out.extend(Sigma(k, 1) for k in range(j - 1, 0, -1))
                out.append(Phi())
                out.extend(Sigma(k, -1) for k in range(1, j))
        else:
            out.append(g)
    return TiedWord(w.n, tuple(out))


def project_tau(w: TiedWord) -> tuple:
    """Underlying permutation: P[a] = bottom position of top strand a."""
    pos = list(range(w.n + 1))
    occ = list(range(w.n + 1))
    for g in w.letters:
        if isinstance(g, Sigma):
            a, b = occ[g.i], occ[g.i + 1]
            occ[g.i], occ[g.i + 1] = b, a
            pos[a], pos[b] = g.i + 1, g.i
    return tuple(pos)


def signed_perm(w: TiedWord) -> tuple:
    """Diagnostic signed permutation: (images, signs); rho flips a sign."""
    pos = list(range(w.n + 1))
    occ = list(range(w.n + 1))
    sign = [1] * (w.n + 1)
    for g in w.letters:
        if isinstance(g, Sigma):
            a, b = occ[g.i], occ[g.i + 1]
            occ[g.i], occ[g.i + 1] = b, a
            pos[a], pos[b] = g.i + 1, g.i
        elif isinstance(g, Rho):
            sign[occ[1]] = -sign[occ[1]]
    return tuple(pos), tuple(sign)


def free_cancel(w: TiedWord) -> TiedWord:
    """Greedily cancel adjacent sigma/rho inverse pairs."""
    stack: list = []
    for g in w.letters:
        if stack:
            t = stack[-1]
            if (
                isinstance(g, Sigma)
                and isinstance(t, Sigma)
                and t.i == g.i
                and t.sign == -g.sign
            ) or (isinstance(g, Rho) and isinstance(t, Rho) and t.sign == -g.sign):
                stack.pop()
                continue
        stack.append(g)
    return TiedWord(w.n, tuple(stack))


def gamma_beta(w: TiedWord) -> tuple:
    """Push all ties to the left: returns (gamma, beta).

    gamma is the join of the transported ties as a partition on
    {0, ..., n}; beta is the word with tie letters removed.  A tie met at
    height k between positions a, b connects the strands occupying those
    positions, i.e. top strands occ[a], occ[b].
    """
    occ = list(range(w.n + 1))
    pairs = []
    beta = []
    for g in w.letters:
        if isinstance(g, Sigma):
            occ[g.i], occ[g.i + 1] = occ[g.i + 1], occ[g.i]
            beta.append(g)
        elif isinstance(g, Rho):
            beta.append(g)
        elif isinstance(g, Eta):
            pairs.append((occ[g.i], occ[g.i + 1]))
        elif isinstance(g, EtaGen):
            pairs.append((occ[g.i], occ[g.j]))
        elif isinstance(g, Phi):
            pairs.append((0, occ[1]))
        else:  # PhiGen
            pairs.append((0, occ[g.j]))
    return TiePartition.from_pairs(w.n, pairs), TiedWord(w.n, tuple(beta))


def closure_components(beta: TiedWord) -> tuple:
    """Cycles of the closure and the axis winding number of each.

    Requires a tie-free word.  Components are ordered by least strand; each
    rho letter contributes its sign to the component of the strand occupying
    position 1 at that height.
    """
    if any(is_tie(g) for g in beta.letters):
        raise TiePresent("closure_components requires a tie-free word")
    occ = list(range(beta.n + 1))
    winding = [0] * (beta.n + 1)
    for g in beta.letters:
        if isinstance(g, Sigma):
            occ[g.i], occ[g.i + 1] = occ[g.i + 1], occ[g.i]
        else:
            winding[occ[1]] += g.sign
    perm = project_tau(beta)
    seen = [False] * (beta.n + 1)
    cycles = []
    loops = []
    for a in range(1, beta.n + 1):
        if seen[a]:
            continue
        cyc = []
        b = a
        while not seen[b]:
            seen[b] = True
            cyc.append(b)
            b = perm[b]
        cycles.append(tuple(cyc))
        loops.append(sum(winding[s] for s in cyc))
    return tuple(cycles), tuple(loops)


# -- Markov moves -------------------------------------------------------------

def apply_markov(w: TiedWord, move: tuple) -> TiedWord:
    """Apply one closure-preserving move.

    move is one of
      ("rotate", k)        exchange a prefix of length k with the suffix
      ("stabilize", sign)  append sigma_n^{sign} on n+1 strands
      ("eta", i, j)        prepend the tie eta_{i,j}; needs tau(i) = j
      ("phi", i, j)        prepend phi_j; needs tau(i) = j and strand i tied
                           to the fixed strand in the word's tie partition
    """
    kind = move[0]
    if kind == "rotate":
        k = move[1] % max(len(w.letters), 1)
        return TiedWord(w.n, w.letters[k:] + w.letters[:k])
    if kind == "stabilize":
        sign = move[1]
        if sign not in (1, -1):
            raise PreconditionViolated("stabilize sign must be +1 or -1")
        return TiedWord(w.n + 1, w.letters + (Sigma(w.n, sign),))
    if kind == "eta":
        _, i, j = move
        if project_tau(w)[i] != j:
            raise PreconditionViolated(f"eta move needs tau(i)=j, got tau({i})={project_tau(w)[i]}")
        if i == j:
            return w
        a, b = min(i, j), max(i, j)
        g = Eta(a) if b == a + 1 else EtaGen(a, b)
        return TiedWord(w.n, (g,) + w.letters)
    if kind == "phi":
        _, i, j = move
        if project_tau(w)[i] != j:
            raise PreconditionViolated(f"phi move needs tau(i)=j, got tau({i})={project_tau(w)[i]}")
        gamma, _ = gamma_beta(w)
        if not gamma.together(0, i):
            raise PreconditionViolated(f"phi move needs strand {i} tied to the fixed strand")
        g = Phi() if j == 1 else PhiGen(j)
        return TiedWord(w.n, (g,) + w.letters)
    raise PreconditionViolated(f"unknown move {kind!r}")


# -- closure summary ----------------------------------------------------------

@dataclass(frozen=True)
class LinkSummary:
    gamma: TiePartition
    beta: TiedWord
    cycles: tuple
    loop_numbers: tuple
    component_partition: TiePartition
    essential_ties: tuple  # (block, essential?) for each nontrivial tie block
    affine: bool


def link_summary(w: TiedWord) -> LinkSummary:
    gamma, beta = gamma_beta(w)
    cycles, loops = closure_components(beta)
    comp = gamma.induced_component_partition(cycles)
    comp_of = {0: 0}
    for k, cyc in enumerate(cycles, start=1):
        for s in cyc:
            comp_of[s] = k
    essential = []
    for blk in gamma.nontrivial_blocks():
        classes = {comp_of[s] for s in blk}
        essential.append((tuple(blk), len(classes) >= 2))
    affine = all(t == 0 for t in loops) and comp.block_of(0) == [0]
    return LinkSummary(gamma, beta, cycles, loops, comp, tuple(essential), affine)


# -- relation catalog ----------------------------------------------------------

def defining_relation_instances(n: int) -> list:
    """All instances of the defining relations on n strands.

    Returns (name, lhs, rhs) triples of TiedWords with equal closures; used
    by the soundness suites.
    """
    rels = []

    def add(name, lhs, rhs):
        rels.append((name, TiedWord(n, tuple(lhs)), TiedWord(n, tuple(rhs))))

    sp = lambda i: Sigma(i, 1)
    sm = lambda i: Sigma(i, -1)
    for i in range(1, n):
        for j in range(1, n):
            if abs(i - j) > 1:
                add("sigma-commute", [sp(i), sp(j)], [sp(j), sp(i)])
            if abs(i - j) == 1:
                add("braid", [sp(i), sp(j), sp(i)], [sp(j), sp(i), sp(j)])
    for i in range(2, n):
        add("rho-sigma-commute", [Rho(1), sp(i)], [sp(i), Rho(1)])
    if n >= 2:
        add(
            "rho-sigma-braid",
            [Rho(1), sp(1), Rho(1), sp(1)],
            [sp(1), Rho(1), sp(1), Rho(1)],
        )
    for i in range(1, n):
        for j in range(1, n):
            add("eta-commute", [Eta(i), Eta(j)], [Eta(j), Eta(i)])
            if abs(i - j) > 1:
                add("eta-sigma-commute", [Eta(i), sp(j)], [sp(j), Eta(i)])
            if abs(i - j) == 1:
                add("eta-slide", [Eta(i), sp(j), sp(i)], [sp(j), sp(i), Eta(j)])
                add("eta-slide-inv", [Eta(i), sp(j), sm(i)], [sp(j), sm(i), Eta(j)])
                add("eta-pair-slide", [Eta(i), Eta(j), sp(i)], [sp(i), Eta(i), Eta(j)])
                add("eta-pair-absorb", [sp(i), Eta(i), Eta(j)], [Eta(j), sp(i), Eta(j)])
        add("eta-sigma-same", [Eta(i), sp(i)], [sp(i), Eta(i)])
        add("eta-idempotent", [Eta(i), Eta(i)], [Eta(i)])
        add("rho-eta-commute", [Rho(1), Eta(i)], [Eta(i), Rho(1)])
        add("phi-eta-commute", [Phi(), Eta(i)], [Eta(i), Phi()])
    add("phi-idempotent", [Phi(), Phi()], [Phi()])
    add("rho-phi-commute", [Rho(1), Phi()], [Phi(), Rho(1)])
    for i in range(2, n):
        add("phi-sigma-commute", [Phi(), sp(i)], [sp(i), Phi()])
    for i in range(2, n + 1):
        pos = [sp(k) for k in range(i - 1, 0, -1)] + [Phi()] + [sm(k) for k in range(1, i)]
        neg = [sm(k) for k in range(i - 1, 0, -1)] + [Phi()] + [sp(k) for k in range(1, i)]
        add("phi-conjugate-signs", pos, neg)
    if n >= 2:
        add("phi-eta-fuse", [Phi(), Eta(1)], [Phi(), sp(1), Phi(), sm(1)])
        add("phi-eta-fuse2", [Phi(), sp(1), Phi(), sm(1)], [sp(1), Phi(), sm(1), Eta(1)])
    return rels


def derived_relation_instances(n: int) -> list:
    """Generalized-tie consequences: transport, transitivity, fixed-strand fusion."""
    rels = []

    def add(name, lhs, rhs):
        rels.append((name, TiedWord(n, tuple(lhs)), TiedWord(n, tuple(rhs))))

    def eta(i, j):
        i, j = min(i, j), max(i, j)
        return Eta(i) if j == i + 1 else EtaGen(i, j)

    def phi(j):
        return Phi() if j == 1 else PhiGen(j)

    sp = lambda i: Sigma(i, 1)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if i + 1 < j:
                add("tie-transport-il", [sp(i), eta(i, j)], [eta(i + 1, j), sp(i)])
                add("tie-transport-jr", [sp(j - 1), eta(i, j)], [eta(i, j - 1), sp(j - 1)])
            if j < n:
                add("tie-transport-jl", [sp(j), eta(i, j)], [eta(i, j + 1), sp(j)])
            if i > 1:
                add("tie-transport-ir", [sp(i - 1), eta(i, j)], [eta(i - 1, j), sp(i - 1)])
            for m in range(j + 1, n + 1):
                add("tie-transitive", [eta(i, j), eta(j, m)], [eta(i, j), eta(i, m)])
                add("tie-transitive2", [eta(i, j), eta(i, m)], [eta(j, m), eta(i, m)])
            add("fixed-tie-fuse", [eta(i, j), phi(i)], [phi(i), phi(j)])
            add("fixed-tie-fuse2", [phi(i), phi(j)], [phi(j), eta(i, j)])
    for j in range(1, n + 1):
        for i in range(1, n):
            im = i + 1 if j == i else (i if j == i + 1 else j)
            add("phi-transport", [phi(j), sp(i)], [sp(i), phi(im)])
        for i in range(1, n):
            add("phi-eta-commute-gen", [phi(j), Eta(i)], [Eta(i), phi(j)])
    return rels


# -- random word generation -----------------------------------------------------

def random_tied_word(
    rng,
    n: int,
    max_len: int,
    rho_cap: Optional[int] = None,
    with_ties: bool = True,
    with_rho: bool = True,
    with_phi: bool = True,
) -> TiedWord:
    """Uniform-ish random word within the given bounds (deterministic in rng)."""
    length = rng.randint(0, max_len)
    letters: list = []
    rho_sum = 0
    kinds = []
    if n >= 2:
        kinds.append("sigma")
        if with_ties:
            kinds.append("eta")
    if with_rho:
        kinds.append("rho")
    if with_phi and with_ties:
        kinds.append("phi")
    if not kinds:
        return TiedWord(n, ())
    while len(letters) < length:
        k = rng.choice(kinds)
        if k == "sigma":
            letters.append(Sigma(rng.randint(1, n - 1), rng.choice((1, -1))))
        elif k == "eta":
            letters.append(Eta(rng.randint(1, n - 1)))
        elif k == "phi":
            letters.append(Phi())
        else:
            s = rng.choice((1, -1))
            if rho_cap is not None and abs(rho_sum + s) > rho_cap:
                if len(kinds) == 1:
                    break
                continue
            rho_sum += s
            letters.append(Rho(s))
    return TiedWord(n, tuple(letters))
