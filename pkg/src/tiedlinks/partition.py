"""Set partitions of {0, 1, ..., n} recording ties between strands.

Element 0 is the fixed strand; 1..n are the moving strands.  A partition is
stored canonically as a representative table (each element mapped to the
minimum of its block), so equality and hashing are structural.  Instances
are immutable; every operation returns a new partition.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class SizeMismatch(ValueError):
    pass


def _canonical_reps(n: int, parent: list) -> tuple:
    # collapse the union-find forest to min-of-block representatives
    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    groups: dict = {}
    for i in range(n + 1):
        groups.setdefault(find(i), []).append(i)
    reps = [0] * (n + 1)
    for members in groups.values():
        m = min(members)
        for i in members:
            reps[i] = m
    return tuple(reps)


class TiePartition:
    __slots__ = ("n", "reps")

    def __init__(self, n: int, reps: tuple):
        self.n = n
        self.reps = reps

    # -- constructors -------------------------------------------------------

    @staticmethod
    def discrete(n: int) -> "TiePartition":
        return TiePartition(n, tuple(range(n + 1)))

    @staticmethod
    def from_pairs(n: int, pairs: Iterable[tuple]) -> "TiePartition":
        parent = list(range(n + 1))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a, b in pairs:
            if not (0 <= a <= n and 0 <= b <= n):
                raise IndexError(f"tie ({a},{b}) out of range for n={n}")
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        return TiePartition(n, _canonical_reps(n, parent))

    @staticmethod
    def from_blocks(n: int, blocks: Iterable[Sequence[int]]) -> "TiePartition":
        pairs = []
        for blk in blocks:
            blk = list(blk)
            pairs.extend(zip(blk, blk[1:]))
        return TiePartition.from_pairs(n, pairs)

    # -- queries -------------------------------------------------------------

    def blocks(self) -> list:
        groups: dict = {}
        for i, r in enumerate(self.reps):
            groups.setdefault(r, []).append(i)
        return [groups[r] for r in sorted(groups)]

    def block_of(self, a: int) -> list:
        r = self.reps[a]
        return [i for i, ri in enumerate(self.reps) if ri == r]

    def together(self, a: int, b: int) -> bool:
        return self.reps[a] == self.reps[b]

    def is_discrete(self) -> bool:
        return all(r == i for i, r in enumerate(self.reps))

    def nontrivial_blocks(self) -> list:
        return [b for b in self.blocks() if len(b) > 1]

    # -- operations ----------------------------------------------------------

    def join(self, other: "TiePartition") -> "TiePartition":
        """Finest partition refining neither: transitive closure of the union."""
        if self.n != other.n:
            raise SizeMismatch(f"join of partitions on n={self.n} and n={other.n}")
        parent = list(self.reps)
        return TiePartition(
            self.n,
            _canonical_reps(
                self.n,
                _union_in(parent, enumerate(other.reps)),
            ),
        )

    def join_pairs(self, pairs: Iterable[tuple]) -> "TiePartition":
        parent = list(self.reps)
        return TiePartition(self.n, _canonical_reps(self.n, _union_in(parent, pairs)))

    def apply_perm(self, perm: Sequence[int]) -> "TiePartition":
        """Relabel moving strands by perm (perm[a] = image of a, perm[0] = 0)."""
        pairs = [(perm[i], perm[self.reps[i]]) for i in range(1, self.n + 1)]
        return TiePartition.from_pairs(self.n, pairs)

    def peel(self) -> tuple:
        """Inspect strand n: (tied to 0?, tied to another moving strand?, rest).

        `rest` is the partition restricted to {0, ..., n-1}.
        """
        if self.n < 1:
            raise ValueError("nothing to peel")
        n = self.n
        blk = self.block_of(n)
        tied_zero = 0 in blk and len(blk) > 1
        tied_moving = any(0 < i < n for i in blk)
        pairs = [(i, self.reps[i]) for i in range(n) if self.reps[i] != n]
        return tied_zero, tied_moving, TiePartition.from_pairs(n - 1, pairs)

    def drop_top(self) -> "TiePartition":
        """Remove strand n, keeping the rest of its block tied."""
        return self.peel()[2]

    def merge_top_into(self, j: int) -> "TiePartition":
        """Remove strand n after fusing its block with the block of j < n."""
        pairs = [(i, self.reps[i]) for i in range(self.n) if self.reps[i] != self.n]
        pairs.extend((j, i) for i in self.block_of(self.n) if i != self.n)
        return TiePartition.from_pairs(self.n - 1, pairs)

    def extend(self, m: int) -> "TiePartition":
        """Embed into a partition on {0, ..., m} with new strands untied."""
        if m < self.n:
            raise SizeMismatch("extend target smaller than current")
        return TiePartition(m, self.reps + tuple(range(self.n + 1, m + 1)))

    def induced_component_partition(self, cycles: Sequence[Sequence[int]]) -> "TiePartition":
        """Partition on components 1..m plus the fixed class 0.

        `cycles` lists the strand cycles of the closure; component k is
        cycles[k-1].  Two components land in one block iff some strand of one
        is tied to some strand of the other; the fixed class is the block of
        strand 0.
        """
        comp_of = {0: 0}
        for k, cyc in enumerate(cycles, start=1):
            for s in cyc:
                comp_of[s] = k
        if len(comp_of) != self.n + 1:
            raise SizeMismatch("cycles do not partition the moving strands")
        m = len(cycles)
        pairs = [
            (comp_of[i], comp_of[self.reps[i]])
            for i in range(self.n + 1)
        ]
        return TiePartition.from_pairs(m, pairs)

    # -- dunder ---------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TiePartition):
            return NotImplemented
        return self.n == other.n and self.reps == other.reps

    def __hash__(self) -> int:
        return hash((self.n, self.reps))

    def __str__(self) -> str:
        return "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks())

    def __repr__(self) -> str:
        return f"TiePartition({self.n}, {self})"


def _union_in(parent: list, pairs) -> list:
    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return parent


def join(p: TiePartition, q: TiePartition) -> TiePartition:
    return p.join(q)


def apply_perm(p: TiePartition, perm: Sequence[int]) -> TiePartition:
    return p.apply_perm(perm)


def peel(p: TiePartition) -> tuple:
    return p.peel()


def induced_component_partition(p: TiePartition, cycles) -> TiePartition:
    return p.induced_component_partition(cycles)
