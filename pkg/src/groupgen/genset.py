"""Searches for generating sets: d(G), m(G), spectrum and bounds.

d(G) is the least size of a generating set; m(G) the largest size of an
independent generating set (no member lies in the subgroup generated by the
others).  By Tarski's irredundant basis theorem the sizes of independent
generating sets fill the whole integer interval [d(G), m(G)]; spectrum()
reports that interval together with one witness per size.

Searches fix one element to a conjugacy class representative (independence
and generation are invariant under conjugating the whole set) and enumerate
the remaining slots in ascending element order, where elements are ordered
by (element order, image tuple).
"""

from __future__ import annotations

import random

from . import structure
from .perm import (
    DEFAULT_ELEMENT_CAP,
    Budget,
    CapExceeded,
    GroupError,
    Perm,
    PermGroup,
    factorint,
    omega,
    quotient,
)

DEFAULT_SEARCH_ORDER_CAP = 2000
DEFAULT_RANDOM_TRIES = 400


class GenOracle:
    """Membership and order queries for generated subgroups, memoized.

    Backed by the full subgroup lattice when the group is small enough for
    one; otherwise each distinct generator set gets its own stabilizer
    chain.
    """

    def __init__(self, G, lattice_cap=structure.DEFAULT_LATTICE_CAP,
                 element_cap=DEFAULT_ELEMENT_CAP, budget=None):
        self.G = G
        self.n = G.order()
        self.lattice = None
        if self.n <= DEFAULT_SEARCH_ORDER_CAP:
            try:
                self.lattice = structure.subgroup_lattice(
                    G, lattice_cap, element_cap, budget)
            except CapExceeded:
                self.lattice = None
        self._memo = {}

    def _lookup(self, key):
        hit = self._memo.get(key)
        if hit is None:
            if self.lattice is not None:
                # span(S) = join(span(S - x), x): peel one element and walk
                # the supersets, so no resolution ever scans the lattice
                if not key:
                    hit = 0
                else:
                    imgs = sorted(key)
                    parent = self._lookup(frozenset(imgs[:-1]))
                    hit = self.lattice.smallest_above(parent, imgs[-1])
            else:
                hit = PermGroup(self.G.degree, tuple(Perm(i) for i in key))
            self._memo[key] = hit
        return hit

    def span_order(self, images):
        hit = self._lookup(frozenset(images))
        if isinstance(hit, int):
            return len(self.lattice.elem_sets[hit])
        return hit.order()

    def span_ids(self, images):
        """The span as a frozenset of element ids, or None without a lattice."""
        if self.lattice is None:
            return None
        return self.lattice.id_set(self._lookup(frozenset(images)))

    def element_id(self, img):
        return self.lattice.element_ids()[img]

    def member(self, images, candidate):
        """Whether the candidate image tuple lies in <images>."""
        hit = self._lookup(frozenset(images))
        if isinstance(hit, int):
            return candidate in self.lattice.elem_sets[hit]
        return Perm(candidate) in hit

    def note_extension(self, images, img):
        """Record the span of <images + img> by walking up from <images>.

        The searches extend prefixes one element at a time, so the child
        is resolved against the parent it actually grew from rather than
        through the canonical peel order."""
        if self.lattice is None:
            return
        child = frozenset(images) | {img}
        if child not in self._memo:
            parent = self._lookup(frozenset(images))
            self._memo[child] = self.lattice.smallest_above(parent, img)

    def generates(self, images):
        if self.lattice is not None:
            return self.lattice.generates(list(images))
        return self.span_order(images) == self.n


def _element_id_list(oracle, elems):
    """Candidate element ids aligned with elems, or None without a lattice."""
    if oracle.lattice is None:
        return None
    return [oracle.element_id(e.images) for e in elems]


def is_independent(G, perms, oracle=None):
    """No member of the set lies in the subgroup the others generate."""
    perms = list(perms)
    if oracle is None:
        oracle = GenOracle(G)
    images = [p.images for p in perms]
    for i in range(len(images)):
        others = images[:i] + images[i + 1:]
        if oracle.member(others, images[i]):
            return False
    return True


def is_independent_generating_set(G, perms, oracle=None):
    perms = list(perms)
    if oracle is None:
        oracle = GenOracle(G)
    return (oracle.generates([p.images for p in perms])
            and is_independent(G, perms, oracle))


def lower_bound_d(G, element_cap=DEFAULT_ELEMENT_CAP):
    """max over p of the p-rank of the abelianization, floored at basic facts."""
    n = G.order()
    if n == 1:
        return 0
    derived = G.derived_subgroup()
    if derived.order() == n:
        return 2
    if derived.order() == 1:
        Q = G
    else:
        Q, _ = quotient(G, derived, element_cap)
    rank = 0
    elems = Q.elements(element_cap)
    for p in factorint(Q.order()):
        count = sum(1 for e in elems if (e ** p).is_identity())
        r = 0
        while count > 1:
            count //= p
            r += 1
        rank = max(rank, r)
    lower = max(rank, 1)
    if not G.is_abelian():
        lower = max(lower, 2)
    return lower


def _sorted_elements(G, element_cap):
    return [e for e in G.sorted_by_search_order(element_cap)
            if not e.is_identity()]


def _class_reps(G, element_cap):
    return [r for r in G.class_representatives(element_cap)
            if not r.is_identity()]


def d(G, element_cap=DEFAULT_ELEMENT_CAP, budget=None, seed=0,
      search_order_cap=DEFAULT_SEARCH_ORDER_CAP):
    return d_with_witness(G, element_cap, budget, seed, search_order_cap)[0]


def d_with_witness(G, element_cap=DEFAULT_ELEMENT_CAP, budget=None, seed=0,
                   search_order_cap=DEFAULT_SEARCH_ORDER_CAP):
    """(d(G), one generating set of that size)."""
    n = G.order()
    if n == 1:
        return 0, ()
    lower = lower_bound_d(G, element_cap)
    reps = _class_reps(G, element_cap)
    if lower == 1:
        for r in reps:
            if r.order() == n:
                return 1, (r,)
        lower = 2
    elems = G.elements(element_cap)
    rng = random.Random(seed)
    oracle = None
    for k in range(lower, omega(n) + 1):
        if budget is not None:
            budget.check()
        # randomized probe first; any hit is enough since k-1 was refuted
        for _ in range(DEFAULT_RANDOM_TRIES):
            picks = [rng.choice(elems) for _ in range(k)]
            if PermGroup(G.degree, picks).order() == n:
                return k, tuple(picks)
        if n > search_order_cap:
            raise CapExceeded(
                f"exhaustive d search needs order <= {search_order_cap}, "
                f"group has order {n}")
        if oracle is None:
            oracle = GenOracle(G, element_cap=element_cap, budget=budget)
        witness = _search_generating(G, oracle, k, element_cap, budget)
        if witness is not None:
            return len(witness), witness
    raise GroupError("no generating set up to the chief length bound")


def _search_generating(G, oracle, k, element_cap, budget):
    """Exhaustive search for a generating k-tuple, or None.

    Complete for deciding d: a generating set of minimum size is
    independent, so some ordering with one slot conjugated onto its class
    representative and the rest ascending survives the strict-extension
    pruning.
    """
    n = G.order()
    elems = _sorted_elements(G, element_cap)
    reps = _class_reps(G, element_cap)
    eids = _element_id_list(oracle, elems)

    def extend(prefix_images, start, depth):
        if budget is not None:
            budget.check()
        span = oracle.span_order(prefix_images)
        if span == n:
            return tuple(prefix_images)
        if depth == k:
            return None
        span_set = oracle.span_ids(prefix_images)
        for i in range(start, len(elems)):
            img = elems[i].images
            if span_set is not None:
                if eids[i] in span_set:
                    continue
            elif img in prefix_images or oracle.member(prefix_images, img):
                continue
            oracle.note_extension(prefix_images, img)
            got = extend(prefix_images + [img], i + 1, depth + 1)
            if got is not None:
                return got
        return None

    for rep in reps:
        got = extend([rep.images], 0, 1)
        if got is not None:
            return tuple(Perm(img) for img in got)
    return None


def chief_counts(G, lattice_cap=structure.DEFAULT_LATTICE_CAP,
                 element_cap=DEFAULT_ELEMENT_CAP, budget=None):
    """(a, b): non-Frattini and non-abelian factor counts of a chief series."""
    series = structure.chief_series(G, lattice_cap, element_cap, budget)
    a = sum(1 for f in series if not f.is_frattini)
    b = sum(1 for f in series if not f.is_abelian)
    return a, b


def bounds(G, lattice_cap=structure.DEFAULT_LATTICE_CAP,
           element_cap=DEFAULT_ELEMENT_CAP, budget=None):
    """Lower and upper bounds for m(G): a + b <= m(G) <= Omega(|G|)."""
    a, b = chief_counts(G, lattice_cap, element_cap, budget)
    return {"a": a, "b": b, "lower": a + b, "upper": omega(G.order())}


def m(G, force_search=False, lattice_cap=structure.DEFAULT_LATTICE_CAP,
      element_cap=DEFAULT_ELEMENT_CAP, budget=None,
      search_order_cap=DEFAULT_SEARCH_ORDER_CAP, prime_power_only=True):
    """Largest size of an independent generating set.

    For soluble groups this equals the number of non-Frattini factors in a
    chief series, which is used directly unless force_search is set.  The
    search restricts itself to elements of prime power order: splitting a
    composite-order element of a maximum independent generating set into
    coprime parts and discarding all but one never shrinks the maximum, so
    some maximum set consists of prime power elements.  Pass
    prime_power_only=False to search over every element.
    """
    n = G.order()
    if n == 1:
        return 0
    if G.is_soluble() and not force_search:
        a, _ = chief_counts(G, lattice_cap, element_cap, budget)
        return a
    if n > search_order_cap:
        raise CapExceeded(
            f"m search needs order <= {search_order_cap}, group has order {n}")
    a, b = chief_counts(G, lattice_cap, element_cap, budget)
    oracle = GenOracle(G, lattice_cap, element_cap, budget)
    best = _search_max_independent(G, oracle, a + b, element_cap, budget,
                                   prime_power_only)
    if best is None:
        raise GroupError(
            "no independent generating set reached the lower bound a + b")
    return len(best)


def _search_candidates(G, element_cap, prime_power_only):
    """Candidate elements and first-slot class representatives."""
    elems = _sorted_elements(G, element_cap)
    reps = _class_reps(G, element_cap)
    if prime_power_only:
        elems = [e for e in elems if len(factorint(e.order())) == 1]
        reps = [r for r in reps if len(factorint(r.order())) == 1]
    return elems, reps


def _search_max_independent(G, oracle, lower, element_cap, budget,
                            prime_power_only=False):
    """The largest independent generating set found by exhaustive search."""
    n = G.order()
    elems, reps = _search_candidates(G, element_cap, prime_power_only)
    if oracle.lattice is not None:
        return _lattice_max_independent(oracle.lattice, n, elems, reps,
                                        lower, budget)
    state = {"best": None, "best_size": lower - 1}

    def consider(prefix_images):
        # only reached when the prefix spans the whole group
        if len(prefix_images) <= state["best_size"]:
            return
        perms = tuple(Perm(img) for img in prefix_images)
        if is_independent(G, perms, oracle):
            state["best"] = perms
            state["best_size"] = len(perms)

    def extend(prefix_images, start):
        if budget is not None:
            budget.check()
        span = oracle.span_order(prefix_images)
        if span == n:
            consider(prefix_images)
            return
        if len(prefix_images) + omega(n // span) <= state["best_size"]:
            return
        for i in range(start, len(elems)):
            img = elems[i].images
            if img in prefix_images or oracle.member(prefix_images, img):
                continue
            extend(prefix_images + [img], i + 1)

    for rep in reps:
        extend([rep.images], 0)
    return state["best"]


def _lattice_max_independent(lat, n, elems, reps, lower, budget):
    """Max search over the subgroup lattice, one join-table read per step.

    Alongside each prefix it carries the spans of the prefix with one
    element removed, so a candidate is accepted only when the grown set is
    still independent and complete sets need no final check.  No proper
    subset of an independent set generates, which is why stopping at the
    full span loses nothing.
    """
    top = lat.top
    sets = [lat.id_set(i) for i in range(len(lat))]
    orders = [len(s) for s in sets]
    ids = lat.element_ids()
    eids = [ids[e.images] for e in elems]
    jrow = lat.join_row
    state = {"best": None, "best_size": lower - 1}

    def extend(imgs, pids, span_idx, others, start):
        if budget is not None:
            budget.check()
        if span_idx == top:
            if len(pids) > state["best_size"]:
                state["best"] = tuple(Perm(im) for im in imgs)
                state["best_size"] = len(pids)
            return
        if len(pids) + omega(n // orders[span_idx]) <= state["best_size"]:
            return
        span_set = sets[span_idx]
        row = jrow(span_idx)
        orows = [jrow(t) for t in others]
        for i in range(start, len(eids)):
            e = eids[i]
            if e in span_set:
                continue
            child_others = []
            for j, orow in enumerate(orows):
                t = orow[e]
                if pids[j] in sets[t]:
                    break
                child_others.append(t)
            else:
                child_others.append(span_idx)
                extend(imgs + [elems[i].images], pids + [e], row[e],
                       child_others, i + 1)

    row0 = jrow(0)
    for rep in reps:
        rid = ids[rep.images]
        extend([rep.images], [rid], row0[rid], [0], 0)
    return state["best"]


def _search_exact_independent(G, oracle, k, element_cap, budget,
                              prime_power_only=False):
    """One independent generating set of size exactly k, or None."""
    n = G.order()
    if k == 0:
        return () if n == 1 else None
    elems, reps = _search_candidates(G, element_cap, prime_power_only)
    if oracle.lattice is not None:
        return _lattice_exact_independent(oracle.lattice, n, k, elems, reps,
                                          budget)

    def extend(prefix_images, start):
        if budget is not None:
            budget.check()
        span = oracle.span_order(prefix_images)
        depth = len(prefix_images)
        if depth == k:
            if span != n:
                return None
            perms = tuple(Perm(img) for img in prefix_images)
            return perms if is_independent(G, perms, oracle) else None
        # at most Omega(index) further strict extensions are possible, so
        # paths that cannot fill all k slots are cut
        if span == n or depth + omega(n // span) < k:
            return None
        for i in range(start, len(elems)):
            img = elems[i].images
            if img in prefix_images or oracle.member(prefix_images, img):
                continue
            got = extend(prefix_images + [img], i + 1)
            if got is not None:
                return got
        return None

    for rep in reps:
        got = extend([rep.images], 0)
        if got is not None:
            return got
    return None


def _lattice_exact_independent(lat, n, k, elems, reps, budget):
    """One independent generating k-set via the join-table engine, or None."""
    top = lat.top
    sets = [lat.id_set(i) for i in range(len(lat))]
    orders = [len(s) for s in sets]
    ids = lat.element_ids()
    eids = [ids[e.images] for e in elems]
    jrow = lat.join_row

    def extend(imgs, pids, span_idx, others, start):
        if budget is not None:
            budget.check()
        if span_idx == top:
            if len(pids) == k:
                return tuple(Perm(im) for im in imgs)
            return None
        if len(pids) >= k:
            return None
        if len(pids) + omega(n // orders[span_idx]) < k:
            return None
        span_set = sets[span_idx]
        row = jrow(span_idx)
        orows = [jrow(t) for t in others]
        for i in range(start, len(eids)):
            e = eids[i]
            if e in span_set:
                continue
            child_others = []
            for j, orow in enumerate(orows):
                t = orow[e]
                if pids[j] in sets[t]:
                    break
                child_others.append(t)
            else:
                child_others.append(span_idx)
                got = extend(imgs + [elems[i].images], pids + [e], row[e],
                             child_others, i + 1)
                if got is not None:
                    return got
        return None

    row0 = jrow(0)
    for rep in reps:
        rid = ids[rep.images]
        got = extend([rep.images], [rid], row0[rid], [0], 0)
        if got is not None:
            return got
    return None


def spectrum(G, lattice_cap=structure.DEFAULT_LATTICE_CAP,
             element_cap=DEFAULT_ELEMENT_CAP, budget=None, seed=0,
             search_order_cap=DEFAULT_SEARCH_ORDER_CAP,
             prime_power_only=False):
    """Witnesses for every size of independent generating set, as a dict
    size -> tuple of permutations.  The sizes always form the full interval
    [d(G), m(G)]."""
    n = G.order()
    if n == 1:
        return {0: ()}
    d_val, d_wit = d_with_witness(G, element_cap, budget, seed, search_order_cap)
    m_val = m(G, False, lattice_cap, element_cap, budget, search_order_cap)
    if n > search_order_cap:
        raise CapExceeded(
            f"spectrum search needs order <= {search_order_cap}, "
            f"group has order {n}")
    oracle = GenOracle(G, lattice_cap, element_cap, budget)
    out = {}
    for k in range(d_val, m_val + 1):
        if k == d_val and is_independent(G, d_wit, oracle):
            out[k] = tuple(d_wit)
            continue
        witness = _search_exact_independent(G, oracle, k, element_cap, budget,
                                            prime_power_only)
        if witness is None:
            raise GroupError(
                f"no independent generating set of size {k} although "
                f"{d_val} <= {k} <= {m_val}")
        out[k] = witness
    return out
