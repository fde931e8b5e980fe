"""Permutations and permutation groups with deterministic stabilizer chains.

Composition is fixed left-to-right everywhere: (a * b)(x) = b(a(x)), i.e. a
is applied first.  Points are 0-based internally; cycle notation printed or
parsed at the boundary is 1-based.
"""

from __future__ import annotations

import hashlib
import time
from math import gcd

DEFAULT_ELEMENT_CAP = 200_000
MAX_DEGREE = 1 << 16
DEFAULT_TIME_BUDGET = 300.0


class GroupError(Exception):
    """Base class for errors raised by this package."""


class DegreeMismatch(GroupError):
    pass


class CapExceeded(GroupError):
    """A configured size cap (element sweep, lattice size, order, ...) was hit."""


class TimeBudgetExceeded(GroupError):
    pass


class NotInGroup(GroupError):
    pass


class NotNormal(GroupError):
    pass


class Budget:
    """A wall clock budget for long searches; check() raises once expired."""

    def __init__(self, seconds=DEFAULT_TIME_BUDGET):
        self.seconds = seconds
        self.deadline = None if seconds is None else time.monotonic() + seconds

    def check(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise TimeBudgetExceeded(
                f"time budget of {self.seconds:g} s exhausted")


def factorint(n):
    """Prime factorization as an ordered dict {p: exponent}."""
    if n < 1:
        raise ValueError("factorint needs n >= 1")
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def omega(n):
    """Number of prime divisors of n counted with multiplicity."""
    return sum(factorint(n).values())


def is_prime(n):
    return n > 1 and factorint(n) == {n: 1}


def is_prime_power(n):
    return n > 1 and len(factorint(n)) == 1


class Perm:
    """A permutation of {0, ..., degree-1} stored as a tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images):
        self.images = images if type(images) is tuple else tuple(images)

    @classmethod
    def identity(cls, degree):
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree, cycles):
        """Build from 0-based disjoint cycles, e.g. from_cycles(4, [(0, 1), (2, 3)])."""
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for pt in cyc:
                if not 0 <= pt < degree:
                    raise ValueError(f"point {pt} outside degree {degree}")
                if pt in seen:
                    raise ValueError(f"point {pt} repeated in cycles")
                seen.add(pt)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a] = b
        return cls(tuple(images))

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, point):
        return self.images[point]

    def __mul__(self, other):
        a = self.images
        b = other.images
        if len(a) != len(b):
            raise DegreeMismatch(f"degree {len(a)} vs {len(b)}")
        return Perm(tuple(map(b.__getitem__, a)))

    def inverse(self):
        images = self.images
        inv = [0] * len(images)
        for i, j in enumerate(images):
            inv[j] = i
        return Perm(tuple(inv))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = Perm.identity(len(self.images))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self, h):
        """Conjugate self^h = h^-1 * self * h."""
        return h.inverse() * self * h

    def is_identity(self):
        images = self.images
        return all(i == j for i, j in enumerate(images))

    def min_moved(self):
        """Smallest moved point, or None for the identity."""
        for i, j in enumerate(self.images):
            if i != j:
                return i
        return None

    def cycles(self, include_fixed=False):
        """Disjoint cycles, each starting at its smallest point, sorted."""
        images = self.images
        seen = [False] * len(images)
        out = []
        for start in range(len(images)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            pt = images[start]
            while pt != start:
                cyc.append(pt)
                seen[pt] = True
                pt = images[pt]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def order(self):
        n = 1
        for cyc in self.cycles():
            n = n * len(cyc) // gcd(n, len(cyc))
        return n

    def cycle_string(self):
        """1-based cycle notation, '()' for the identity."""
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + ",".join(str(p + 1) for p in cyc) + ")" for cyc in cycs)

    def extended(self, degree):
        """The same permutation acting on a larger point set."""
        if degree < len(self.images):
            raise DegreeMismatch("cannot shrink a permutation")
        return Perm(self.images + tuple(range(len(self.images), degree)))

    def shifted(self, offset, degree):
        """Embed into degree `degree` acting on points offset..offset+deg-1."""
        images = list(range(degree))
        for i, j in enumerate(self.images):
            images[offset + i] = offset + j
        return Perm(tuple(images))

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def __repr__(self):
        return f"Perm{self.cycle_string()}"


def _sort_key(perm):
    """Fixed total order used by searches: element order first, then images."""
    return (perm.order(), perm.images)


class _Stabilizer:
    """One level of a stabilizer chain (deterministic Schreier-Sims).

    Levels form a linked list via `down`.  The effective generating set of a
    level is its own generators plus all deeper ones (which fix this level's
    base point but still matter for the orbit and the Schreier closure).
    `tree` maps orbit points to (u, u_inverse) with u(base) = point; entries
    are only ever added, never rebuilt, so discovery order is reproducible
    and certified Schreier pairs stay certified.
    """

    __slots__ = ("degree", "base", "gens", "tree", "down", "_done", "_woven")

    def __init__(self, degree):
        self.degree = degree
        self.base = None
        self.gens = []
        self.tree = {}
        self.down = None
        self._done = set()
        self._woven = set()

    def strong_gens(self):
        """All strong generators at or below this level."""
        out = [] if self.down is None else self.down.strong_gens()
        out.extend(self.gens)
        return out

    def order(self):
        total = 1
        lvl = self
        while lvl is not None and lvl.base is not None:
            total *= len(lvl.tree)
            lvl = lvl.down
        return total

    def sift(self, g):
        lvl = self
        while lvl is not None and lvl.base is not None:
            p = g.images[lvl.base]
            if p == lvl.base:
                lvl = lvl.down
                continue
            pair = lvl.tree.get(p)
            if pair is None:
                return g, lvl
            g = g * pair[1]
            lvl = lvl.down
        return g, lvl

    def contains(self, g):
        residue, _ = self.sift(g)
        return residue.is_identity()

    def add(self, g):
        """Close the chain under g; returns True if the group grew."""
        residue, _ = self.sift(g)
        if residue.is_identity():
            return False
        self._add_nonmember(residue)
        return True

    def _add_nonmember(self, g):
        if self.base is None:
            self.base = g.min_moved()
            ident = Perm.identity(self.degree)
            self.tree = {self.base: (ident, ident)}
            self.down = _Stabilizer(self.degree)
        if g.images[self.base] == self.base:
            self.down._add_nonmember(g)
        else:
            self.gens.append(g)
        self._extend_tree()
        self._close_schreier()

    def _extend_tree(self):
        tree = self.tree
        gens = self.strong_gens()
        woven = self._woven
        news = [s for s in gens if s.images not in woven]
        queue = []
        for s in news:
            woven.add(s.images)
        for p in list(tree):
            u_p = tree[p][0]
            for s in news:
                q = s.images[p]
                if q not in tree:
                    u = u_p * s
                    tree[q] = (u, u.inverse())
                    queue.append(q)
        while queue:
            p = queue.pop(0)
            u_p = tree[p][0]
            for s in gens:
                q = s.images[p]
                if q not in tree:
                    u = u_p * s
                    tree[q] = (u, u.inverse())
                    queue.append(q)

    def _close_schreier(self):
        # Every Schreier generator over the full strong set must sift to the
        # identity below; (point, generator) pairs already certified are
        # skipped, which is sound because lower levels only ever grow.
        tree = self.tree
        done = self._done
        for p in list(tree):
            u_p = tree[p][0]
            for s in self.strong_gens():
                key = (p, s.images)
                if key in done:
                    continue
                done.add(key)
                sg = u_p * s * tree[s.images[p]][1]
                if not sg.is_identity():
                    self.down.add(sg)

    def iter_elements(self):
        if self.base is None:
            yield Perm.identity(self.degree)
            return
        transversal = [pair[0] for pair in self.tree.values()]
        for rest in self.down.iter_elements():
            for u in transversal:
                yield rest * u

    def random_element(self, rng):
        g = None
        levels = []
        lvl = self
        while lvl is not None and lvl.base is not None:
            levels.append(lvl)
            lvl = lvl.down
        for lvl in reversed(levels):
            u = rng.choice(list(lvl.tree.values()))[0]
            g = u if g is None else g * u
        return Perm.identity(self.degree) if g is None else g


def build_chain(degree, gens):
    chain = _Stabilizer(degree)
    for g in gens:
        chain.add(g)
    return chain


class PermGroup:
    """A permutation group given by generators on {0..degree-1}.

    The generator list is kept exactly as provided (homomorphisms rely on
    positional correspondence); the stabilizer chain is built on demand.
    """

    __slots__ = ("degree", "gens", "label", "_chain", "_order", "_elements",
                 "_elemset", "_classes", "_fingerprint", "_lattice_cache")

    def __init__(self, degree, gens=(), label=None, _chain=None):
        if not 1 <= degree <= MAX_DEGREE:
            raise ValueError(f"degree must be in 1..{MAX_DEGREE}, got {degree}")
        gens = tuple(g if isinstance(g, Perm) else Perm(g) for g in gens)
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(f"generator degree {g.degree} != {degree}")
        self.degree = degree
        self.gens = gens
        self.label = label
        self._chain = _chain
        self._order = None
        self._elements = None
        self._elemset = None
        self._classes = None
        self._fingerprint = None
        self._lattice_cache = None

    @classmethod
    def trivial(cls, degree):
        return cls(degree, ())

    @property
    def chain(self):
        if self._chain is None:
            self._chain = build_chain(self.degree, self.gens)
        return self._chain

    def order(self):
        if self._order is None:
            self._order = self.chain.order()
        return self._order

    def is_trivial(self):
        return all(g.is_identity() for g in self.gens)

    def __contains__(self, perm):
        if perm.degree != self.degree:
            return False
        return self.chain.contains(perm)

    def contains(self, perm):
        return perm in self

    def sift(self, perm):
        residue, _ = self.chain.sift(perm)
        return residue

    def identity(self):
        return Perm.identity(self.degree)

    def elements(self, cap=DEFAULT_ELEMENT_CAP):
        """All elements sorted by image tuple; refuses above the cap."""
        if self._elements is None:
            n = self.order()
            if cap is not None and n > cap:
                raise CapExceeded(f"element sweep needs {n} elements, cap is {cap}")
            self._elements = tuple(sorted(self.chain.iter_elements()))
        return self._elements

    def element_set(self, cap=DEFAULT_ELEMENT_CAP):
        if self._elemset is None:
            self._elemset = frozenset(p.images for p in self.elements(cap))
        return self._elemset

    def sorted_by_search_order(self, cap=DEFAULT_ELEMENT_CAP):
        """Elements under the search total order (element order, then images)."""
        return sorted(self.elements(cap), key=_sort_key)

    def conjugacy_classes(self, cap=DEFAULT_ELEMENT_CAP):
        """List of (representative, class size); reps minimal in search order."""
        if self._classes is None:
            elems = self.sorted_by_search_order(cap)
            seen = set()
            classes = []
            for e in elems:
                if e.images in seen:
                    continue
                cls_elems = {e.images}
                queue = [e]
                while queue:
                    x = queue.pop(0)
                    for g in self.gens:
                        c = x.conj(g)
                        if c.images not in cls_elems:
                            cls_elems.add(c.images)
                            queue.append(c)
                seen |= cls_elems
                classes.append((e, len(cls_elems)))
            self._classes = tuple(classes)
        return self._classes

    def class_representatives(self, cap=DEFAULT_ELEMENT_CAP):
        return tuple(rep for rep, _ in self.conjugacy_classes(cap))

    def random_element(self, rng):
        return self.chain.random_element(rng)

    def subgroup(self, gens, validate=False):
        gens = tuple(g if isinstance(g, Perm) else Perm(g) for g in gens)
        if validate:
            for g in gens:
                if g not in self:
                    raise NotInGroup(f"{g!r} is not an element of the group")
        return PermGroup(self.degree, gens)

    def is_subgroup_of(self, other):
        return all(g in other for g in self.gens)

    def same_group_as(self, other):
        return (self.degree == other.degree and self.order() == other.order()
                and self.is_subgroup_of(other))

    def normalizes(self, other):
        """True if every generator of self normalizes `other`."""
        return all(n.conj(g) in other for g in self.gens for n in other.gens)

    def normal_closure(self, seeds):
        """Smallest normal subgroup of self containing the seed permutations."""
        chain = _Stabilizer(self.degree)
        gens = []
        pending = []
        for s in seeds:
            if s not in self:
                raise NotInGroup("seed lies outside the group")
            if chain.add(s):
                gens.append(s)
                pending.append(s)
        while pending:
            x = pending.pop(0)
            for g in self.gens:
                c = x.conj(g)
                if chain.add(c):
                    gens.append(c)
                    pending.append(c)
        return PermGroup(self.degree, tuple(gens), _chain=chain)

    def derived_subgroup(self):
        gens = self.gens
        comms = []
        for i, a in enumerate(gens):
            for b in gens[i + 1:]:
                c = a.inverse() * b.inverse() * a * b
                if not c.is_identity():
                    comms.append(c)
        return self.normal_closure(comms)

    def derived_series(self):
        series = [self]
        while True:
            nxt = series[-1].derived_subgroup()
            if nxt.order() == series[-1].order():
                break
            series.append(nxt)
            if nxt.is_trivial():
                break
        return series

    def is_soluble(self):
        return self.derived_series()[-1].is_trivial()

    def is_abelian(self):
        gens = self.gens
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    def is_pgroup(self):
        return self.order() == 1 or is_prime_power(self.order())

    def is_cyclic(self, cap=DEFAULT_ELEMENT_CAP):
        n = self.order()
        if n == 1:
            return True
        if not self.is_abelian():
            return False
        return any(e.order() == n for e in self.elements(cap))

    def is_cyclic_of_prime_power_order(self, cap=DEFAULT_ELEMENT_CAP):
        return is_prime_power(self.order()) and self.is_cyclic(cap)

    def centralizer_of_subgroup(self, targets, cap=DEFAULT_ELEMENT_CAP):
        """C_G(A) for A given as a PermGroup (or iterable of permutations)."""
        tgens = targets.gens if isinstance(targets, PermGroup) else tuple(targets)
        kept = [g for g in self.elements(cap)
                if all(g * t == t * g for t in tgens)]
        return group_from_elements(self.degree, kept)

    def fingerprint(self):
        """Hash of degree plus sorted generator images (cache/report key)."""
        if self._fingerprint is None:
            h = hashlib.sha256()
            h.update(f"{self.degree}|".encode())
            for images in sorted(g.images for g in self.gens):
                h.update(",".join(map(str, images)).encode())
                h.update(b";")
            self._fingerprint = h.hexdigest()
        return self._fingerprint

    def __repr__(self):
        tag = f" {self.label}" if self.label else ""
        return f"PermGroup(degree={self.degree}, gens={len(self.gens)}{tag})"


def closure(degree, perms):
    """The group generated by the given permutations; closure of [] is trivial."""
    return PermGroup(degree, tuple(perms))


def group_from_elements(degree, elems):
    """Group from a closed (or generating) element collection, with a small
    generator list extracted greedily in the given order."""
    chain = _Stabilizer(degree)
    gens = []
    for e in elems:
        if not isinstance(e, Perm):
            e = Perm(e)
        if chain.add(e):
            gens.append(e)
    return PermGroup(degree, tuple(gens), _chain=chain)


def intersection(G, H, cap=DEFAULT_ELEMENT_CAP):
    """G ∩ H by sweeping the smaller group's elements."""
    small, big = (G, H) if G.order() <= H.order() else (H, G)
    kept = [e for e in small.elements(cap) if e in big]
    return group_from_elements(small.degree, kept)


class Homomorphism:
    """A homomorphism given by images of the source group's generators.

    Evaluation on arbitrary elements sifts the padded pair (g, id) through
    the chain of the graph subgroup of Sym(n_source + n_target); base points
    land in the source component first, which makes that well defined.  A
    `mapper` callback (used by quotient projections) bypasses the machinery.
    """

    def __init__(self, source, target, images, mapper=None, section=None,
                 kernel=None):
        images = tuple(images)
        if len(images) != len(source.gens):
            raise ValueError("need one image per source generator")
        for im in images:
            if im.degree != target.degree:
                raise DegreeMismatch("image degree differs from target degree")
        self.source = source
        self.target = target
        self.images = images
        self._mapper = mapper
        self._section = section
        self.kernel_group = kernel
        self._pair_chain = None

    def _pairs(self):
        if self._pair_chain is None:
            ns, nt = self.source.degree, self.target.degree
            gens = []
            for g, im in zip(self.source.gens, self.images):
                images = g.images + tuple(ns + x for x in im.images)
                gens.append(Perm(images))
            self._pair_chain = build_chain(ns + nt, gens)
        return self._pair_chain

    def is_valid(self):
        """Exact check that the generator map extends to a homomorphism."""
        return self._pairs().order() == self.source.order()

    def __call__(self, g):
        if self._mapper is not None:
            return self._mapper(g)
        ns, nt = self.source.degree, self.target.degree
        padded = Perm(g.images + tuple(range(ns, ns + nt)))
        residue, _ = self._pairs().sift(padded)
        if any(residue.images[i] != i for i in range(ns)):
            raise NotInGroup("element not in the source group")
        inv_image = Perm(tuple(residue.images[ns + i] - ns for i in range(nt)))
        return inv_image.inverse()

    def section(self, q):
        """A preimage of q (available on quotient projections)."""
        if self._section is None:
            raise GroupError("no section stored for this homomorphism")
        return self._section(q)

    def image_group(self):
        return PermGroup(self.target.degree, self.images)

    def image_of_subgroup(self, H):
        return PermGroup(self.target.degree, tuple(self(h) for h in H.gens))

    def preimage_of_subgroup(self, K):
        if self.kernel_group is None or self._section is None:
            raise GroupError("preimages need a stored kernel and section")
        lifted = tuple(self._section(k) for k in K.gens)
        return PermGroup(self.source.degree, self.kernel_group.gens + lifted)


def quotient(G, N, cap=DEFAULT_ELEMENT_CAP):
    """G/N as a permutation group on the right cosets, with the projection.

    Coset representatives are the first-found products of generators in
    breadth-first order; cosets are identified by their minimal element, so
    the output is deterministic.
    """
    for n in N.gens:
        if n not in G:
            raise NotInGroup("N is not contained in G")
        for g in G.gens:
            if n.conj(g) not in N:
                raise NotNormal("N is not normal in G")
    index = G.order() // N.order()
    if index > MAX_DEGREE:
        raise CapExceeded(f"quotient degree {index} exceeds {MAX_DEGREE}")
    n_elems = N.elements(cap)
    ident = G.identity()

    def coset_key(rep):
        return min((n * rep).images for n in n_elems)

    reps = [ident]
    index_of = {coset_key(ident): 0}
    images = [[] for _ in G.gens]
    i = 0
    while i < len(reps):
        rep = reps[i]
        for j, g in enumerate(G.gens):
            x = rep * g
            key = coset_key(x)
            k = index_of.get(key)
            if k is None:
                k = len(reps)
                reps.append(x)
                index_of[key] = k
            images[j].append(k)
        i += 1
    if len(reps) != index:
        raise GroupError("coset enumeration mismatch")  # pragma: no cover
    qgens = tuple(Perm(tuple(img)) for img in images)
    Q = PermGroup(index, qgens)

    def mapper(g):
        out = []
        for i in range(index):
            k = index_of.get(coset_key(reps[i] * g))
            if k is None:
                raise NotInGroup("element not in the source group")
            out.append(k)
        return Perm(tuple(out))

    def section(q):
        return reps[q.images[0]]

    proj = Homomorphism(G, Q, qgens, mapper=mapper, section=section, kernel=N)
    return Q, proj
