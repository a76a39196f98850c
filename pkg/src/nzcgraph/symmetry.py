"""Automorphism engines, explicit groups, orbits and structural checks.

Two independent engines compute Aut(G):

* the structural engine extends basis-index permutations to vertex
  permutations through their skeletons (q = 2 only, where a skeleton
  determines a unique vertex);
* the oracle enumerates every adjacency-preserving vertex permutation by
  backtracking over a partition refined from degrees alone, so its result
  never depends on skeleton bookkeeping.

Composition convention, fixed to avoid left/right action bugs:
``compose(p, r)`` applies r first, then p, i.e. (p o r)(v) = p[r[v]].
"""

from __future__ import annotations

import itertools
import random
from math import comb, factorial

import numpy as np

from .errors import CapExceededError, UnsupportedFieldError
from .graph import NzcGraph
from .reporting import FAIL, PASS, CheckReport

Perm = tuple[int, ...]

DEFAULT_ORACLE_VERTEX_CAP = 40
DEFAULT_ORACLE_ELEMENT_BUDGET = 200_000
DEFAULT_GROUP_BUDGET = 40320  # 8!


def identity_perm(size: int) -> Perm:
    return tuple(range(size))


def compose(p: Perm, r: Perm) -> Perm:
    """(p o r)(v) = p[r[v]]: apply r first, then p."""
    return tuple(p[x] for x in r)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def is_permutation(image, size: int) -> bool:
    return len(image) == size and sorted(image) == list(range(size))


def is_automorphism(graph: NzcGraph, image) -> bool:
    """True iff `image` is a vertex bijection preserving (non-)adjacency."""
    nv = graph.num_vertices
    if not is_permutation(image, nv):
        return False
    a = graph.adjacency_matrix()
    img = np.asarray(image)
    return bool((a[np.ix_(img, img)] == a).all())


class Automorphism:
    """A vertex permutation of the graph, stored in one-line notation.

    Use :meth:`checked` to construct from untrusted input: it verifies
    bijectivity, adjacency preservation and skeleton-class preservation.
    """

    __slots__ = ("image",)

    def __init__(self, image):
        self.image = tuple(int(x) for x in image)

    @classmethod
    def checked(cls, graph: NzcGraph, image) -> "Automorphism":
        image = tuple(int(x) for x in image)
        if not is_permutation(image, graph.num_vertices):
            raise ValueError("image is not a permutation of the vertex ids")
        if not is_automorphism(graph, image):
            raise ValueError("permutation does not preserve adjacency")
        for v, w in enumerate(image):
            if graph.class_of(v) != graph.class_of(w):
                raise ValueError(
                    f"vertex {v} mapped across skeleton-size classes to {w}"
                )
        return cls(image)

    def __call__(self, v: int) -> int:
        return self.image[v]

    def __eq__(self, other) -> bool:
        return isinstance(other, Automorphism) and self.image == other.image

    def __hash__(self) -> int:
        return hash(self.image)

    def __repr__(self) -> str:
        return f"Automorphism({list(self.image)})"

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.image))

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self o other: apply `other` first."""
        return Automorphism(compose(self.image, other.image))

    def inverse(self) -> "Automorphism":
        return Automorphism(inverse(self.image))


class AutGroup:
    """Explicitly enumerated automorphism group.

    Elements are the rows of ``perms`` (one-line notation). Row order is the
    engine's deterministic enumeration order; the identity is always a row.
    """

    def __init__(self, graph: NzcGraph, perms, source: str = "explicit"):
        arr = np.asarray(perms, dtype=np.uint16 if graph.num_vertices <= 65535 else np.uint32)
        if arr.ndim != 2 or arr.shape[1] != graph.num_vertices:
            raise ValueError("perms must be a (m, num_vertices) array")
        self.graph = graph
        self.perms = arr
        self.source = source
        self._byte_set: set[bytes] | None = None

    @property
    def order(self) -> int:
        return int(self.perms.shape[0])

    def is_trivial(self) -> bool:
        return self.order == 1

    def element(self, i: int) -> Automorphism:
        return Automorphism(self.perms[i])

    def __iter__(self):
        for row in self.perms:
            yield Automorphism(row)

    def __len__(self) -> int:
        return self.order

    def _bytes(self) -> set[bytes]:
        if self._byte_set is None:
            norm = self.perms.astype(np.int64)
            self._byte_set = {row.tobytes() for row in norm}
        return self._byte_set

    def contains(self, image) -> bool:
        return np.asarray(image, dtype=np.int64).tobytes() in self._bytes()

    def set_equal(self, other: "AutGroup") -> bool:
        return self.order == other.order and self._bytes() == other._bytes()

    def orbit_of(self, v: int) -> tuple[int, ...]:
        return tuple(int(x) for x in np.unique(self.perms[:, v]))

    def orbits(self) -> list[tuple[int, ...]]:
        """Orbit partition of the vertex ids (orbits of a group partition V)."""
        seen: set[int] = set()
        out = []
        for v in range(self.graph.num_vertices):
            if v in seen:
                continue
            orb = self.orbit_of(v)
            seen.update(orb)
            out.append(orb)
        return out

    def stabilizer(self, v: int) -> "AutGroup":
        keep = self.perms[:, v] == v
        return AutGroup(self.graph, self.perms[keep], source=f"{self.source}-stab")

    def moved_set(self) -> tuple[int, ...]:
        """Vertices with orbit size >= 2."""
        return tuple(v for v in range(self.graph.num_vertices)
                     if len(self.orbit_of(v)) >= 2)

    def same_orbit_pairs(self) -> list[tuple[int, int]]:
        """Ordered pairs (u, w), u != w, lying in a common orbit."""
        out = []
        for orb in self.orbits():
            if len(orb) < 2:
                continue
            for u in orb:
                for w in orb:
                    if u != w:
                        out.append((u, w))
        return out

    def check_group_axioms(self, pair_budget: int = 250_000, seed: int = 0) -> CheckReport:
        """Identity, inverses and closure (exhaustive when order^2 fits the budget)."""
        failures = []
        nv = self.graph.num_vertices
        ident = np.arange(nv, dtype=np.int64)
        rows = self._bytes()
        if ident.tobytes() not in rows:
            failures.append("identity not in group")
        invs = np.argsort(self.perms, axis=1).astype(np.int64)
        for i in range(self.order):
            if invs[i].tobytes() not in rows:
                failures.append(f"inverse of element {i} missing")
                break
        m = self.order
        if m * m <= pair_budget:
            mode = "exhaustive"
            pairs = ((i, j) for i in range(m) for j in range(m))
            checked = m * m
        else:
            mode = "sampled"
            rng = random.Random(seed)
            checked = min(pair_budget, 2000)
            pairs = ((rng.randrange(m), rng.randrange(m)) for _ in range(checked))
        perms64 = self.perms.astype(np.int64)
        for i, j in pairs:
            prod = perms64[i][perms64[j]]
            if prod.tobytes() not in rows:
                failures.append(f"product of elements {i}, {j} not in group")
                break
        return CheckReport(
            claim="group-axioms",
            statement="group contains identity, inverses, and is closed under composition",
            params={"n": self.graph.params.n, "q": self.graph.params.q,
                    "order": self.order},
            status=PASS if not failures else FAIL,
            checked=checked + self.order + 1,
            failures=failures,
            details={"closure_mode": mode, "source": self.source},
        )


def _basis_vertex_id(graph: NzcGraph, i: int) -> int:
    """Vertex id of b_i for q = 2 (1-based i); mask value 2^(i-1) minus one."""
    return (1 << (i - 1)) - 1


def _mask_bit_matrix(n: int) -> np.ndarray:
    """(2^n, n) matrix of mask bits: row m gives the bit pattern of mask m."""
    masks = np.arange(1 << n, dtype=np.int64)
    return (masks[:, None] >> np.arange(n)[None, :]) & 1


def _extend_images_batch(graph: NzcGraph, sigmas: np.ndarray) -> np.ndarray:
    """Vertex images of basis-permutation extensions, one row per sigma (q = 2).

    Vertex id v has skeleton mask v + 1; the image mask moves bit i to bit
    sigma(i), computed as a bit-matrix / power-weight product.
    """
    n = graph.params.n
    bits = _mask_bit_matrix(n)[1:]          # rows for masks 1 .. 2^n - 1
    weights = (1 << sigmas.astype(np.int64))  # (m, n)
    return (bits @ weights.T).T - 1


def extend_basis_permutation(graph: NzcGraph, sigma) -> Automorphism:
    """Extend a basis-index permutation to a vertex automorphism (q = 2 only).

    A vertex with skeleton S maps to the unique vertex with skeleton
    sigma(S). `sigma` is 0-based one-line notation on range(n). The result is
    validated through the full Automorphism construction check.
    """
    if graph.params.q != 2:
        raise UnsupportedFieldError(
            "basis-permutation extension needs a skeleton to determine a unique "
            f"vertex, which requires q = 2 (got q = {graph.params.q})"
        )
    n = graph.params.n
    sigma = tuple(int(x) for x in sigma)
    if not is_permutation(sigma, n):
        raise ValueError(f"sigma must be a permutation of range({n})")
    image = _extend_images_batch(graph, np.asarray([sigma], dtype=np.int64))[0]
    return Automorphism.checked(graph, image)


def restrict_to_basis(a: Automorphism, graph: NzcGraph) -> Perm:
    """Permutation induced on the basis vertices by an automorphism (q = 2).

    Raises if the automorphism maps a basis vertex outside the basis class,
    which would signal a corrupted automorphism.
    """
    if graph.params.q != 2:
        raise UnsupportedFieldError("basis restriction is defined for q = 2")
    n = graph.params.n
    sigma = []
    for i in range(1, n + 1):
        w = a.image[_basis_vertex_id(graph, i)]
        mask = w + 1
        if mask.bit_count() != 1:
            raise ValueError(
                f"automorphism maps basis vertex b{i} to a class-"
                f"{mask.bit_count()} vertex; not an automorphism of this graph"
            )
        sigma.append(mask.bit_length() - 1)
    return tuple(sigma)


def aut_group_structural(graph: NzcGraph, *, group_budget: int = DEFAULT_GROUP_BUDGET,
                         validate: str = "auto", seed: int = 0) -> AutGroup:
    """All n! basis-permutation extensions, in lexicographic sigma order (q = 2).

    `validate` controls the per-element adjacency check: "full" checks every
    element, "sample" checks 200 seeded elements (used automatically when a
    full pass would be quadratic-in-|V| times 8! expensive), "none" skips.
    """
    if graph.params.q != 2:
        raise UnsupportedFieldError(
            f"structural engine is defined for q = 2 only, got q = {graph.params.q}"
        )
    n = graph.params.n
    order = factorial(n)
    if order > group_budget:
        raise CapExceededError(
            f"structural group has {order} elements, budget is {group_budget}"
        )
    sigmas = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    perms = _extend_images_batch(graph, sigmas)
    grp = AutGroup(graph, perms, source="structural")
    nv = graph.num_vertices
    if validate == "auto":
        validate = "full" if order * nv * nv <= 2 * 10**8 else "sample"
    if validate != "none":
        if validate == "full":
            rows = range(order)
        else:
            rng = random.Random(seed)
            rows = sorted({0, order - 1, *(rng.randrange(order) for _ in range(200))})
        a = graph.adjacency_matrix()
        for i in rows:
            img = perms[i]
            if not (a[np.ix_(img, img)] == a).all():
                raise ValueError(f"structural engine produced a non-automorphism (row {i})")
    return grp


def _refine_by_neighbors(adj: list[int], colors: list[int]) -> list[int]:
    """Iterated refinement by multisets of neighbour colours, to a fixpoint.

    Colour ids are renumbered by sorted signature at each pass, so the result
    is deterministic and independent of the initial colour numbering scheme.
    """
    nv = len(adj)
    while True:
        sigs = []
        for v in range(nv):
            row = adj[v]
            neigh = []
            while row:
                low = row & -row
                neigh.append(colors[low.bit_length() - 1])
                row ^= low
            neigh.sort()
            sigs.append((colors[v], tuple(neigh)))
        remap = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [remap[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def aut_group_oracle(graph: NzcGraph, *,
                     vertex_cap: int = DEFAULT_ORACLE_VERTEX_CAP,
                     element_budget: int = DEFAULT_ORACLE_ELEMENT_BUDGET,
                     node_budget: int = 5_000_000) -> AutGroup:
    """Enumerate every adjacency-preserving vertex permutation by backtracking.

    Fully independent of the structural engine: the initial partition uses
    vertex degrees only (a pure adjacency invariant; skeleton classes would
    presuppose the structure under test), refined by neighbour-colour
    multisets. Candidate images stay within a vertex's refined cell, with
    partial-adjacency consistency enforced at every assignment. Enumeration
    is exhaustive; rows are returned sorted for determinism.
    """
    nv = graph.num_vertices
    if nv > vertex_cap:
        raise CapExceededError(f"oracle supports up to {vertex_cap} vertices, got {nv}")
    # fail fast: permutations within a closed-neighbourhood class are always
    # automorphisms, so the product of their factorials bounds |Aut| below
    floor = 1
    for u in range(nv):
        closed = [v for v in range(nv) if graph.adj[v] | (1 << v) == graph.adj[u] | (1 << u)]
        if closed and closed[0] == u:
            floor *= factorial(len(closed))
    if floor > element_budget:
        raise CapExceededError(
            f"group order is at least {floor}, enumeration budget is {element_budget}"
        )
    adj = graph.adj
    degrees = [graph.degree(v) for v in range(nv)]
    remap = {d: i for i, d in enumerate(sorted(set(degrees)))}
    colors = _refine_by_neighbors(adj, [remap[d] for d in degrees])
    cells: dict[int, list[int]] = {}
    for v in range(nv):
        cells.setdefault(colors[v], []).append(v)
    order = sorted(range(nv), key=lambda v: (len(cells[colors[v]]), colors[v], v))
    found: list[Perm] = []
    image = [-1] * nv
    used = [False] * nv
    nodes = 0

    def dfs(depth: int) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise CapExceededError(f"oracle search exceeded {node_budget} nodes")
        if depth == nv:
            if len(found) >= element_budget:
                raise CapExceededError(
                    f"oracle found more than {element_budget} automorphisms"
                )
            found.append(tuple(image))
            return
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
                dfs(depth + 1)
                used[u] = False
                image[v] = -1

    dfs(0)
    return AutGroup(graph, np.array(sorted(found), dtype=np.int64), source="oracle")


def check_extension_isomorphism(graph: NzcGraph, *, samples: int = 1000, seed: int = 0,
                                oracle_cap: int = DEFAULT_ORACLE_VERTEX_CAP,
                                oracle_budget: int = DEFAULT_ORACLE_ELEMENT_BUDGET) -> CheckReport:
    """The extension map is a group isomorphism from S_n onto Aut(G) (q = 2).

    Checks the homomorphism identity extend(h1 o h2) = extend(h1) o extend(h2)
    exhaustively for n <= 4 and on `samples` seeded random pairs for larger n;
    injectivity as n! distinct extensions (n <= 8); surjectivity by set
    equality against the oracle when the graph fits the oracle cap.
    """
    if graph.params.q != 2:
        raise UnsupportedFieldError("extension isomorphism is defined for q = 2")
    n = graph.params.n
    failures = []
    details: dict = {}
    all_sigmas = list(itertools.permutations(range(n)))
    if n <= 4:
        pairs = [(h1, h2) for h1 in all_sigmas for h2 in all_sigmas]
        details["mode"] = "exhaustive"
    else:
        rng = random.Random(seed)
        mk = lambda: tuple(rng.sample(range(n), n))
        pairs = [(mk(), mk()) for _ in range(samples)]
        details["mode"] = "sampled"
    batch = np.array([[compose(h1, h2), h1, h2] for h1, h2 in pairs],
                     dtype=np.int64).reshape(-1, n)
    images = _extend_images_batch(graph, batch).reshape(len(pairs), 3, -1)
    for k, (h1, h2) in enumerate(pairs):
        lhs = images[k, 0]
        rhs = images[k, 1][images[k, 2]]
        if not (lhs == rhs).all():
            failures.append(f"extend({h1} o {h2}) != extend({h1}) o extend({h2})")
            if len(failures) > 5:
                break
    details["pairs_checked"] = len(pairs)
    if factorial(n) <= DEFAULT_GROUP_BUDGET:
        grp = aut_group_structural(graph, validate="none")
        distinct = len({row.tobytes() for row in grp.perms})
        details["distinct_extensions"] = distinct
        if distinct != factorial(n):
            failures.append(f"only {distinct} distinct extensions, expected {factorial(n)}")
        if graph.num_vertices <= oracle_cap:
            oracle = aut_group_oracle(graph, vertex_cap=oracle_cap,
                                      element_budget=oracle_budget)
            details["oracle_order"] = oracle.order
            if not grp.set_equal(oracle):
                failures.append("extension image differs from the oracle's automorphism set")
        else:
            details["oracle_order"] = None
    return CheckReport(
        claim="basis-extension-isomorphism",
        statement="sigma -> extension(sigma) is an isomorphism from S_n onto Aut(G), q = 2",
        params={"n": n, "q": 2},
        status=PASS if not failures else FAIL,
        checked=len(pairs),
        failures=failures,
        details=details,
    )


def check_automorphism_structure(graph: NzcGraph, grp: AutGroup) -> CheckReport:
    """Machine-check how automorphisms act on skeletons, over all elements.

    Sub-checks (q = 2 scoping noted inline):
      classes      every automorphism preserves skeleton-size classes;
      transport    for g(u) = v in one class: basis vertices in S_u & S_v map
                   into S_u & S_v, and those in S_u - S_v map into S_v - S_u;
      swap         when g exchanges basis vertices b_l, b_m (q = 2): membership
                   of {l, m} in S_u transfers to S_g(u) exchanged/preserved;
      moves-two    every non-identity element moves >= 2 basis vertices (q = 2);
      basis-family the family of basis twin sets maps onto itself through an
                   induced index permutation (any q).
    """
    g_ = graph
    n, q = g_.params.n, g_.params.q
    failures = []
    sub: dict[str, int] = {}

    perms = grp.perms
    cls = np.array([g_.class_of(v) for v in range(g_.num_vertices)])
    bad = (cls[perms.astype(np.int64)] != cls[None, :]).any(axis=1)
    sub["classes"] = grp.order
    for i in np.nonzero(bad)[0]:
        failures.append(f"element {int(i)} maps across skeleton-size classes")

    basis_sets = [ts for ts in g_.twin_sets() if g_.class_of(ts[0]) == 1]
    basis_lookup = {frozenset(ts): k for k, ts in enumerate(basis_sets)}
    checked_family = 0
    for idx in range(grp.order):
        p = perms[idx]
        target = []
        for ts in basis_sets:
            img = frozenset(int(p[v]) for v in ts)
            k = basis_lookup.get(img)
            if k is None:
                failures.append(f"element {idx}: basis twin set image is not a basis twin set")
                break
            target.append(k)
        else:
            if sorted(target) != list(range(len(basis_sets))):
                failures.append(f"element {idx}: induced basis-set map is not a permutation")
        checked_family += 1
    sub["basis-family"] = checked_family

    if q == 2:
        basis_ids = [_basis_vertex_id(g_, i) for i in range(1, n + 1)]
        checked_transport = 0
        checked_swap = 0
        for idx in range(grp.order):
            p = [int(x) for x in perms[idx]]
            sigma = []
            for i, b in enumerate(basis_ids):
                w = p[b] + 1
                sigma.append(w.bit_length() - 1 if w.bit_count() == 1 else -1)
            if any(s < 0 for s in sigma):
                failures.append(f"element {idx}: basis vertex leaves the basis class")
                continue
            # transport of basis membership for vertices mapped on each other
            # (g(u) = v and g(v) = u; one-directional images may leak, e.g.
            # under a 3-cycle of basis indices)
            for u in range(g_.num_vertices):
                v = p[u]
                if p[v] != u:
                    continue
                su, sv = g_.skeletons[u], g_.skeletons[v]
                if su.bit_count() != sv.bit_count() or su.bit_count() == n:
                    continue
                for i in range(n):
                    gi = sigma[i]
                    in_u = su >> i & 1
                    in_v = sv >> i & 1
                    if in_u and in_v:
                        if not (su >> gi & 1 and sv >> gi & 1):
                            failures.append(
                                f"element {idx}: b{i + 1} in both skeletons but image leaves them")
                    elif in_u and not in_v:
                        if not (sv >> gi & 1 and not su >> gi & 1):
                            failures.append(
                                f"element {idx}: b{i + 1} in S_u - S_v but image not in S_v - S_u")
                checked_transport += 1
            # exchanged basis pairs transfer skeleton membership
            for l in range(n):
                m = sigma[l]
                if m == l or sigma[m] != l:
                    continue
                lbit, mbit = 1 << l, 1 << m
                for u in range(g_.num_vertices):
                    su = g_.skeletons[u]
                    sv = g_.skeletons[p[u]]
                    if su & lbit and not su & mbit:
                        if sv & lbit or not sv & mbit:
                            failures.append(
                                f"element {idx}: swap b{l + 1}<->b{m + 1} fails membership transfer")
                    both_u = (su & lbit) and (su & mbit)
                    both_v = (sv & lbit) and (sv & mbit)
                    if bool(both_u) != bool(both_v):
                        failures.append(
                            f"element {idx}: swap b{l + 1}<->b{m + 1} breaks joint membership")
                    checked_swap += 1
            if any(i != x for i, x in enumerate(p)):
                moved = sum(1 for i, b in enumerate(basis_ids) if p[b] != b)
                if moved < 2:
                    failures.append(f"element {idx}: non-identity but moves {moved} basis vertices")
        sub["transport"] = checked_transport
        sub["swap"] = checked_swap
        sub["moves-two"] = grp.order

    return CheckReport(
        claim="automorphism-structure",
        statement="automorphisms preserve classes, transport skeleton membership, "
                  "move >= 2 basis vertices when non-trivial, and permute the basis twin sets",
        params={"n": n, "q": q, "order": grp.order},
        status=PASS if not failures else FAIL,
        checked=sum(sub.values()),
        failures=failures[:20],
        details={"sub_checks": sub},
    )


def orbits(grp: AutGroup) -> list[tuple[int, ...]]:
    return grp.orbits()


def stabilizer(grp: AutGroup, v: int) -> AutGroup:
    return grp.stabilizer(v)


def moved_set(grp: AutGroup) -> tuple[int, ...]:
    return grp.moved_set()


def same_orbit_pairs(grp: AutGroup) -> list[tuple[int, int]]:
    return grp.same_orbit_pairs()


def check_orbit_stabilizer(grp: AutGroup) -> CheckReport:
    """|orbit(v)| * |stabilizer(v)| equals the group order, for every vertex."""
    g_ = grp.graph
    failures = []
    perms = grp.perms
    for v in range(g_.num_vertices):
        orbit_size = len(np.unique(perms[:, v]))
        stab_size = int((perms[:, v] == v).sum())
        if orbit_size * stab_size != grp.order:
            failures.append(
                f"vertex {v}: |orbit| {orbit_size} * |stab| {stab_size} != {grp.order}")
    return CheckReport(
        claim="orbit-stabilizer",
        statement="|orbit(v)| * |stabilizer(v)| = |group| for every vertex",
        params={"n": g_.params.n, "q": g_.params.q, "order": grp.order},
        status=PASS if not failures else FAIL,
        checked=g_.num_vertices,
        failures=failures,
    )
