"""Labelings, distinguishing checks, and the distinguishing-number search.

A labeling is distinguishing when no non-identity automorphism preserves all
vertex colours. Three engines can decide that, with different feasibility
envelopes:

* :func:`is_distinguishing` scans an explicitly enumerated group;
* :func:`structural_survivors` scans all n! basis-permutation extensions for
  q = 2 without materialising the group (feasible through n = 10);
* :func:`find_color_preserving` searches for a colour-preserving
  automorphism directly by backtracking over a colour-refined partition,
  so it works even when the group is far too large to enumerate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb, factorial

import numpy as np

from .errors import CapExceededError, UnsupportedFieldError
from .graph import NzcGraph
from .reporting import ANOMALY, FAIL, PASS, CheckReport
from .symmetry import (AutGroup, _refine_by_neighbors,
                       extend_basis_permutation, is_automorphism)

DEFAULT_EXACT_CAP = 30
DEFAULT_PERM_BUDGET = 4_000_000


@dataclass(frozen=True)
class Labeling:
    """Per-vertex colours in 1..t. `t` is the declared palette size."""

    colors: tuple[int, ...]
    t: int

    def __post_init__(self) -> None:
        if self.t < 1:
            raise ValueError("palette size must be >= 1")
        for c in self.colors:
            if not 1 <= c <= self.t:
                raise ValueError(f"colour {c} outside 1..{self.t}")

    def color(self, v: int) -> int:
        return self.colors[v]

    def used_colors(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.colors)))


@dataclass
class DistResult:
    """Distinguishing-number outcome: an exact value or a bound pair.

    `witness` always passes the distinguishing check with `upper` colours.
    `refuted` is the largest colour count the exact search ruled out, when
    the search ran.
    """

    lower: int
    upper: int
    method: str  # "exact" | "bounded"
    witness: Labeling | None
    lower_source: str = ""
    upper_source: str = ""
    refuted: int | None = None

    @property
    def value(self) -> int | None:
        return self.upper if self.lower == self.upper else None


def all_distinct_labeling(g: NzcGraph) -> Labeling:
    """One colour per vertex; distinguishing for every graph by injectivity."""
    nv = g.num_vertices
    return Labeling(tuple(range(1, nv + 1)), nv)


def constant_labeling(g: NzcGraph, color: int = 1) -> Labeling:
    return Labeling((color,) * g.num_vertices, max(color, 1))


def is_distinguishing(g: NzcGraph, grp: AutGroup, f: Labeling) -> bool:
    """True iff no non-identity element of `grp` preserves all colours of f."""
    nv = g.num_vertices
    if len(f.colors) != nv:
        raise ValueError("labeling length does not match the vertex count")
    c = np.asarray(f.colors, dtype=np.int32)
    perms = grp.perms.astype(np.int64)
    preserved = (c[perms] == c[None, :]).all(axis=1)
    ident = np.arange(nv)
    for i in np.nonzero(preserved)[0]:
        if not (perms[i] == ident).all():
            return False
    return True


def _all_perms_array(n: int) -> np.ndarray:
    """All n! permutations of range(n) as an array, built by insertion."""
    out = np.zeros((1, 1), dtype=np.int8)
    for k in range(2, n + 1):
        blocks = []
        for j in range(k):
            b = np.empty((out.shape[0], k), dtype=np.int8)
            b[:, :j] = out[:, :j]
            b[:, j] = k - 1
            b[:, j + 1:] = out[:, j:]
            blocks.append(b)
        out = np.vstack(blocks)
    return out


def structural_survivors(g: NzcGraph, f: Labeling, *, chunk: int = 4096,
                         perm_budget: int = DEFAULT_PERM_BUDGET) -> list[tuple[int, ...]]:
    """Basis permutations whose extension preserves the labeling (q = 2).

    Scans all n! permutations without materialising vertex images for the
    whole group: a cheap colour filter on the basis vertices first, then a
    full skeleton-level check of the survivors in chunks. The identity is
    excluded from the returned list, so an empty result means the labeling
    is distinguishing against every basis-permutation extension.
    """
    if g.params.q != 2:
        raise UnsupportedFieldError("structural scan requires q = 2")
    n = g.params.n
    if factorial(n) > perm_budget:
        raise CapExceededError(f"{factorial(n)} permutations exceed budget {perm_budget}")
    nv = g.num_vertices
    if len(f.colors) != nv:
        raise ValueError("labeling length does not match the vertex count")
    colors_by_mask = np.zeros(1 << n, dtype=np.int32)
    colors_by_mask[1:] = f.colors
    perms = _all_perms_array(n)
    basis_colors = colors_by_mask[1 << np.arange(n)]
    keep = (basis_colors[perms] == basis_colors[None, :]).all(axis=1)
    candidates = perms[keep]
    masks = np.arange(1 << n, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(n)[None, :]) & 1
    survivors = []
    ident = np.arange(n)
    for start in range(0, len(candidates), chunk):
        block = candidates[start:start + chunk].astype(np.int64)
        weights = 1 << block
        images = bits @ weights.T  # (2^n, m): image mask of every mask
        ok = (colors_by_mask[images[1:]] == colors_by_mask[1:, None]).all(axis=0)
        for row in block[ok]:
            if not (row == ident).all():
                survivors.append(tuple(int(x) for x in row))
    return survivors


def is_distinguishing_structural(g: NzcGraph, f: Labeling) -> bool:
    return not structural_survivors(g, f)


def find_color_preserving(g: NzcGraph, f: Labeling, *,
                          node_budget: int = 2_000_000) -> tuple[int, ...] | None:
    """Search for a non-identity colour-preserving automorphism (any q).

    Backtracking over the partition refined from (degree, colour); complete,
    so a None return proves the labeling is distinguishing. Works for groups
    far too large to enumerate because a distinguishing labeling collapses
    the refinement to near-singleton cells.
    """
    nv = g.num_vertices
    if len(f.colors) != nv:
        raise ValueError("labeling length does not match the vertex count")
    adj = g.adj
    seed_keys = sorted({(g.degree(v), f.colors[v]) for v in range(nv)})
    remap = {key: i for i, key in enumerate(seed_keys)}
    colors = _refine_by_neighbors(adj, [remap[(g.degree(v), f.colors[v])] for v in range(nv)])
    cells: dict[int, list[int]] = {}
    for v in range(nv):
        cells.setdefault(colors[v], []).append(v)
    order = sorted(range(nv), key=lambda v: (len(cells[colors[v]]), colors[v], v))
    image = [-1] * nv
    used = [False] * nv
    nodes = 0

    def dfs(depth: int) -> tuple[int, ...] | None:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise CapExceededError(f"colour-preserving search exceeded {node_budget} nodes")
        if depth == nv:
            result = tuple(image)
            return result if any(i != x for i, x in enumerate(result)) else None
        v = order[depth]
        row_v = adj[v]
        for u in cells[colors[v]]:
            if used[u]:
                continue
            ok = True
            for e in range(depth):
                w = order[e]
                if (row_v >> w & 1) != (adj[u] >> image[w] & 1):
                    ok = False
                    break
            if ok:
                image[v] = u
                used[u] = True
                hit = dfs(depth + 1)
                used[u] = False
                image[v] = -1
                if hit is not None:
                    return hit
        return None

    return dfs(0)


def is_distinguishing_search(g: NzcGraph, f: Labeling, *,
                             node_budget: int = 2_000_000) -> bool:
    return find_color_preserving(g, f, node_budget=node_budget) is None


def constructive_labeling_q2(g: NzcGraph) -> Labeling:
    """The explicit 2-colour scheme for q = 2, n >= 3.

    Colour 1 goes to: basis vertices b_1 .. b_floor(n/2); vertices of class
    n - 1 whose skeleton equals {b_2, ..., b_floor(n/2)} or
    {b_floor(n/2)+2, ..., b_n} (the rule is applied literally even though
    those index ranges never produce a set of size n - 1, so in practice it
    selects nothing; see the verification reports); vertices of class 2 with
    skeleton {b_i, b_i+1}. Everything else, including the free classes,
    gets colour 2.
    """
    if g.params.q != 2:
        raise UnsupportedFieldError("the 2-colour scheme is defined for q = 2")
    n = g.params.n
    if n < 3:
        raise ValueError("the 2-colour scheme requires n >= 3")
    half = n // 2
    colors = [2] * g.num_vertices
    for i in range(1, half + 1):
        colors[(1 << (i - 1)) - 1] = 1
    named_1 = 0
    for i in range(2, half + 1):
        named_1 |= 1 << (i - 1)
    named_2 = 0
    for i in range(half + 2, n + 1):
        named_2 |= 1 << (i - 1)
    classes = g.t_classes()
    for v in classes.get(n - 1, ()):
        s = g.skeletons[v]
        if s in (named_1, named_2) and s:
            colors[v] = 1
    for v in classes.get(2, ()):
        s = g.skeletons[v]
        low = s & -s
        if s == low | (low << 1):  # consecutive pair {i, i+1}
            colors[v] = 1
    return Labeling(tuple(colors), 2)


def constructive_labeling_q3(g: NzcGraph) -> Labeling:
    """Twin-set-injective colouring with (q-1)^n colours, for q >= 3.

    Each twin set of size s gets s distinct colours drawn from the pool of
    (q-1)^n, and same-size twin sets receive pairwise distinct colour SETS
    (lexicographically first combinations). Distinct sets matter: giving
    every size-s twin set the same colours 1..s admits colour-preserving
    automorphisms that exchange whole twin sets, which the verification
    engines expose on small cases.
    """
    if g.params.q < 3:
        raise UnsupportedFieldError("the twin-injective scheme is defined for q >= 3")
    n, q = g.params.n, g.params.q
    pool = (q - 1) ** n
    colors = [0] * g.num_vertices
    by_size: dict[int, list[tuple[int, ...]]] = {}
    for ts in g.twin_sets():
        by_size.setdefault(len(ts), []).append(ts)
    for size, sets in by_size.items():
        if comb(pool, size) < len(sets):
            raise CapExceededError(
                f"cannot give {len(sets)} twin sets of size {size} distinct "
                f"colour sets from a pool of {pool}"
            )
        combos = itertools.combinations(range(1, pool + 1), size)
        for ts, combo in zip(sets, combos):
            for v, c in zip(ts, combo):
                colors[v] = c
    return Labeling(tuple(colors), pool)


def twin_lower_bound(g: NzcGraph) -> int:
    """Max twin-set size: two same-coloured twins swap under an automorphism,
    so any distinguishing labeling needs at least this many colours."""
    return max(len(ts) for ts in g.twin_sets())


@dataclass
class TranspositionBreakdown:
    """Which basis transpositions a labeling destroys, class by class.

    Every transposition (l m) of basis indices extends to an automorphism;
    the breakdown attributes each destroyed transposition to the first slot
    in the fixed order T1, T(n-1), T2 whose vertices witness a colour change.
    `expected` holds the claimed closed forms n^2/4 (or (n^2-1)/4), n-2 and
    (n^2-6n+8)/4 (or (n^2-6n+9)/4); `matches` compares them per slot.
    """

    n: int
    tallies: dict[str, int]
    expected: dict[str, int]
    unattributed: list[tuple[int, int]] = field(default_factory=list)
    per_transposition: dict[tuple[int, int], str | None] = field(default_factory=dict)

    @property
    def covers_all(self) -> bool:
        return not self.unattributed

    @property
    def matches(self) -> dict[str, bool]:
        return {slot: self.tallies[slot] == self.expected[slot] for slot in self.tallies}

    @property
    def total(self) -> int:
        return comb(self.n, 2)


def destroyed_transpositions(g: NzcGraph, f: Labeling) -> TranspositionBreakdown:
    """Tally destroyed basis transpositions per class slot (q = 2)."""
    if g.params.q != 2:
        raise UnsupportedFieldError("transposition accounting requires q = 2")
    n = g.params.n
    classes = g.t_classes()
    slots = [("T1", 1), ("T(n-1)", n - 1), ("T2", 2)]
    tallies = {name: 0 for name, _ in slots}
    unattributed = []
    per_transposition: dict[tuple[int, int], str | None] = {}
    for l in range(1, n + 1):
        for m in range(l + 1, n + 1):
            sigma = list(range(n))
            sigma[l - 1], sigma[m - 1] = sigma[m - 1], sigma[l - 1]
            a = extend_basis_permutation(g, sigma)
            hit = None
            for name, i in slots:
                if not 1 <= i <= n:
                    continue
                if any(f.colors[v] != f.colors[a.image[v]] for v in classes.get(i, ())):
                    hit = name
                    break
            per_transposition[(l, m)] = hit
            if hit is None:
                unattributed.append((l, m))
            else:
                tallies[hit] += 1
    if n % 2 == 0:
        expected = {"T1": n * n // 4, "T(n-1)": n - 2, "T2": (n * n - 6 * n + 8) // 4}
    else:
        expected = {"T1": (n * n - 1) // 4, "T(n-1)": n - 2, "T2": (n * n - 6 * n + 9) // 4}
    return TranspositionBreakdown(n=n, tallies=tallies, expected=expected,
                                  unattributed=unattributed,
                                  per_transposition=per_transposition)


def transposition_report(g: NzcGraph, f: Labeling) -> CheckReport:
    """Certificate for the per-class destroyed-transposition tallies.

    Pass when every slot matches its closed form and all C(n, 2)
    transpositions are covered. When the closed forms fail but coverage
    holds, the outcome is an anomaly: the deviations are enumerated and the
    run continues (the 2-colour scheme's stated class-(n-1) rule selects no
    vertex when read literally, so its tally is 0 instead of n - 2 for every
    n >= 4 and the class-2 slot absorbs the difference).
    """
    bd = destroyed_transpositions(g, f)
    failures = []
    for slot, ok in bd.matches.items():
        if not ok:
            failures.append(
                f"{slot}: destroyed {bd.tallies[slot]}, stated form gives {bd.expected[slot]}")
    if not bd.covers_all:
        failures.append(f"uncovered transpositions: {bd.unattributed}")
        status = FAIL
    elif failures:
        status = ANOMALY
    else:
        status = PASS
    return CheckReport(
        claim="transposition-tallies",
        statement="destroyed transpositions per class slot match n^2/4 | (n^2-1)/4, "
                  "n-2, (n^2-6n+8)/4 | (n^2-6n+9)/4 and jointly cover all C(n,2)",
        params={"n": bd.n, "q": 2},
        status=status,
        checked=bd.total,
        failures=failures,
        details={"tallies": bd.tallies, "expected": bd.expected,
                 "covers_all": bd.covers_all},
    )


def check_swap_broken_by_pair(g: NzcGraph, grp: AutGroup, f: Labeling,
                              u: int, v: int, l: int, m: int) -> bool:
    """Differently-coloured class mates separating b_l from b_m break every
    automorphism that exchanges b_l and b_m.

    Preconditions (q = 2): u, v in the same class, b_l in S_u - S_v,
    b_m in S_v - S_u, and f(u) != f(v). Violations raise ValueError.
    """
    if g.params.q != 2:
        raise UnsupportedFieldError("swap-breaking check requires q = 2")
    if g.class_of(u) != g.class_of(v):
        raise ValueError("u and v must lie in the same skeleton-size class")
    su, sv = g.skeletons[u], g.skeletons[v]
    lbit, mbit = 1 << (l - 1), 1 << (m - 1)
    if not (su & lbit and not sv & lbit):
        raise ValueError(f"b{l} must lie in S_u but not S_v")
    if not (sv & mbit and not su & mbit):
        raise ValueError(f"b{m} must lie in S_v but not S_u")
    if f.colors[u] == f.colors[v]:
        raise ValueError("u and v must have different colours")
    bl = (1 << (l - 1)) - 1
    bm = (1 << (m - 1)) - 1
    for idx in range(grp.order):
        p = grp.perms[idx]
        if int(p[bl]) == bm and int(p[bm]) == bl:
            if all(f.colors[w] == f.colors[int(p[w])] for w in range(g.num_vertices)):
                return False  # a swapping automorphism survived the labeling
    return True


def exists_distinguishing_labeling(g: NzcGraph, grp: AutGroup, t: int, *,
                                   node_budget: int = 2_000_000) -> Labeling | None:
    """Exact search: a distinguishing labeling with colours in 1..t, or None.

    Vertices are coloured in canonical id order, colours tried in increasing
    order. Sound prunings only: new colours are introduced canonically
    (colour names are interchangeable, so only the first unused colour is
    tried beyond those already used), and a branch is accepted early once
    every non-identity group element is already broken by the coloured
    prefix, at which point any completion works.
    """
    nv = g.num_vertices
    if t < 1:
        raise ValueError("colour count must be >= 1")
    perms = [list(int(x) for x in row) for row in grp.perms]
    ident = list(range(nv))
    live0 = [i for i, p in enumerate(perms) if p != ident]
    invs = {i: list(np.argsort(perms[i])) for i in live0}
    colors = [0] * nv
    nodes = 0

    def dfs(k: int, live: list[int], max_used: int) -> Labeling | None:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise CapExceededError(f"exact search exceeded {node_budget} nodes")
        if not live:
            witness = tuple(colors[:k]) + (1,) * (nv - k)
            return Labeling(witness, t)
        if k == nv:
            return None
        for c in range(1, min(max_used + 1, t) + 1):
            colors[k] = c
            survivors = []
            for gi in live:
                u1 = perms[gi][k]
                if u1 <= k and colors[u1] != c:
                    continue
                u2 = invs[gi][k]
                if u2 <= k and colors[u2] != c:
                    continue
                survivors.append(gi)
            hit = dfs(k + 1, survivors, max(max_used, c))
            if hit is not None:
                return hit
        colors[k] = 0
        return None

    found = dfs(0, live0, 0)
    if found is not None and not is_distinguishing(g, grp, found):
        raise AssertionError("search returned a non-distinguishing witness")
    return found


def _nontrivial_automorphism(g: NzcGraph) -> tuple[int, ...] | None:
    """A validated non-identity automorphism, or None if none was found.

    For q = 2 the swap of the first two basis indices extends; for q >= 3 the
    first twin pair swaps. Either witness certifies a non-trivial group.
    """
    n, q = g.params.n, g.params.q
    if q == 2 and n >= 2:
        sigma = list(range(n))
        sigma[0], sigma[1] = 1, 0
        return extend_basis_permutation(g, sigma).image
    for ts in g.twin_sets():
        if len(ts) >= 2:
            image = list(range(g.num_vertices))
            image[ts[0]], image[ts[1]] = ts[1], ts[0]
            if is_automorphism(g, image):
                return tuple(image)
    return None


def _validate_labeling(g: NzcGraph, f: Labeling, grp: AutGroup | None) -> bool:
    """Check a labeling with the strongest feasible engine."""
    if grp is not None:
        return is_distinguishing(g, grp, f)
    if g.params.q == 2 and factorial(g.params.n) <= DEFAULT_PERM_BUDGET:
        return is_distinguishing_structural(g, f)
    return is_distinguishing_search(g, f)


def dist_number(g: NzcGraph, grp: AutGroup | None = None, *,
                exact_cap: int = DEFAULT_EXACT_CAP,
                node_budget: int = 2_000_000,
                group_budget: int = 40320,
                run_search: bool = True) -> DistResult:
    """Distinguishing number: exact where the search is feasible, else bounds.

    Exact mode needs an explicitly enumerated group and at most `exact_cap`
    vertices; it tries t = 1, 2, ... and returns the least t with a witness,
    recording the largest refuted colour count. Bounded mode reports the
    twin-set lower bound (raised to 2 when a non-trivial automorphism is
    certified) and a validated constructive labeling as the upper bound;
    when the two meet, the value is exact even though no search ran.
    """
    from . import symmetry as sym

    n, q = g.params.n, g.params.q
    nv = g.num_vertices
    if grp is None:
        if q == 2 and factorial(n) <= group_budget:
            grp = sym.aut_group_structural(g)
        elif nv <= sym.DEFAULT_ORACLE_VERTEX_CAP:
            try:
                grp = sym.aut_group_oracle(g)
            except CapExceededError:
                grp = None

    twin = twin_lower_bound(g)
    if grp is not None and grp.order > 1:
        nontrivial = True
    elif grp is not None:
        nontrivial = False
    else:
        nontrivial = _nontrivial_automorphism(g) is not None
    lower = max(twin, 2 if nontrivial else 1)
    lower_source = "twin-sets" if twin >= 2 else (
        "non-trivial-automorphism" if nontrivial else "trivial")

    witness: Labeling | None = None
    upper = nv
    upper_source = "all-distinct"
    if q == 2 and n >= 3:
        candidate = constructive_labeling_q2(g)
        if _validate_labeling(g, candidate, grp):
            witness, upper, upper_source = candidate, 2, "two-colour-scheme"
    elif q >= 3:
        candidate = constructive_labeling_q3(g)
        if _validate_labeling(g, candidate, grp):
            witness, upper, upper_source = candidate, candidate.t, "twin-injective-scheme"
    if witness is None:
        witness = all_distinct_labeling(g)

    if run_search and grp is not None and nv <= exact_cap:
        try:
            refuted = 0
            for t in range(1, upper + 1):
                hit = exists_distinguishing_labeling(g, grp, t, node_budget=node_budget)
                if hit is not None:
                    return DistResult(lower=t, upper=t, method="exact", witness=hit,
                                      lower_source="search", upper_source="search",
                                      refuted=refuted if refuted else None)
                refuted = t
        except CapExceededError:
            pass
    return DistResult(lower=lower, upper=upper, method="bounded", witness=witness,
                      lower_source=lower_source, upper_source=upper_source)
