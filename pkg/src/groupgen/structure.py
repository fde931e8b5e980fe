"""Structural analysis: subgroup lattices, Frattini subgroups, minimal
normal subgroups, socle and chief series.

The subgroup lattice is built by closing the cyclic subgroups of prime
power order under pairwise joins.  Every subgroup is the join of the
prime-power cyclic subgroups it contains, so the closure is complete.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

from . import gfp
from .perm import (
    DEFAULT_ELEMENT_CAP,
    CapExceeded,
    GroupError,
    Homomorphism,
    NotInGroup,
    Perm,
    PermGroup,
    factorint,
    group_from_elements,
    is_prime_power,
    quotient,
)

DEFAULT_LATTICE_CAP = 2000
DEFAULT_COMBO_CAP = 20_000


def identity_homomorphism(G):
    return Homomorphism(G, G, G.gens, mapper=lambda g: g, section=lambda q: q,
                        kernel=PermGroup(G.degree, ()))


def _quotient(G, N, cap=DEFAULT_ELEMENT_CAP):
    """G/N, but G itself (with the identity map) when N is trivial."""
    if N.order() == 1:
        return G, identity_homomorphism(G)
    return quotient(G, N, cap)


def _mul(a, b):
    return tuple(map(b.__getitem__, a))


class SubgroupLattice:
    """All subgroups of a group, sorted by (order, sorted element tuples)."""

    def __init__(self, group, subgroups, elem_sets):
        self.group = group
        self.subgroups = tuple(subgroups)
        self.elem_sets = tuple(elem_sets)
        self.top = len(self.subgroups) - 1
        self._supersets = None
        self._maximal_sets = None
        self._element_ids = None
        self._id_sets = None
        self._join_rows = {}

    def __len__(self):
        return len(self.subgroups)

    def _with_ids(self):
        """elem_sets recoded over small integers.

        Containment scans hash the same image tuples millions of times
        during generation searches; ints hash for free, tuples do not.
        """
        if self._id_sets is None:
            ids = {img: k for k, img in enumerate(self.elem_sets[self.top])}
            self._id_sets = tuple(frozenset(ids[im] for im in fs)
                                  for fs in self.elem_sets)
            self._element_ids = ids
        return self._element_ids, self._id_sets

    def index_of_set(self, elemset):
        try:
            return self.elem_sets.index(elemset)
        except ValueError:
            raise GroupError("subgroup not present in the lattice")

    def element_ids(self):
        """Mapping from element image tuple to its small integer id."""
        ids, _ = self._with_ids()
        return ids

    def id_set(self, i):
        """Subgroup i as a frozenset of element ids."""
        _, sets = self._with_ids()
        return sets[i]

    def strict_supersets(self, i):
        """Indices of subgroups strictly containing subgroup i."""
        if self._supersets is None:
            _, sets = self._with_ids()
            sizes = [len(s) for s in sets]
            sups = []
            for a in range(len(sets)):
                row = tuple(
                    b for b in range(len(sets))
                    if sizes[a] < sizes[b] and sizes[b] % sizes[a] == 0
                    and sets[a] <= sets[b])
                sups.append(row)
            self._supersets = sups
        return self._supersets[i]

    def maximal_indices(self):
        return tuple(i for i in range(len(self.subgroups))
                     if self.strict_supersets(i) == (self.top,))

    def maximal_subgroups(self):
        return tuple(self.subgroups[i] for i in self.maximal_indices())

    def moebius(self):
        """Moebius function mu(H, G) of the lattice, indexed like subgroups."""
        mu = [0] * len(self.subgroups)
        mu[self.top] = 1
        order = sorted(range(len(self.subgroups)),
                       key=lambda i: -len(self.elem_sets[i]))
        for i in order:
            if i == self.top:
                continue
            mu[i] = -sum(mu[j] for j in self.strict_supersets(i))
        return mu

    def smallest_containing(self, images_list):
        """Index of <S> for a collection of element image tuples."""
        ids, sets = self._with_ids()
        try:
            wanted = [ids[img] for img in images_list]
        except KeyError:
            raise GroupError("elements are not all inside the group")
        for i, fs in enumerate(sets):
            if all(w in fs for w in wanted):
                return i
        raise GroupError("elements are not all inside the group")

    def smallest_above(self, i, img):
        """Index of <subgroup i, one more element>; only supersets of i
        can contain the join, so the scan is a short walk instead of a
        pass over the whole lattice."""
        ids, sets = self._with_ids()
        w = ids.get(img)
        if w is None:
            raise GroupError("elements are not all inside the group")
        if w in sets[i]:
            return i
        for b in self.strict_supersets(i):
            if w in sets[b]:
                return b
        raise GroupError(
            "elements are not all inside the group")  # pragma: no cover

    def join_row(self, i):
        """Joins of subgroup i with every single element, as a list indexed
        by element id.  Rows are built once and reused, which turns the
        innermost loops of the generation searches into array reads."""
        row = self._join_rows.get(i)
        if row is None:
            _, sets = self._with_ids()
            mine = sets[i]
            sups = self.strict_supersets(i)
            row = [i] * len(sets[self.top])
            for e in range(len(row)):
                if e in mine:
                    continue
                for b in sups:
                    if e in sets[b]:
                        row[e] = b
                        break
            self._join_rows[i] = row
        return row

    def generates(self, images_list):
        """True when the elements lie in no maximal subgroup."""
        ids, sets = self._with_ids()
        if self._maximal_sets is None:
            self._maximal_sets = tuple(sets[i]
                                       for i in self.maximal_indices())
        wanted = [ids.get(img, -1) for img in images_list]
        for fs in self._maximal_sets:
            if all(w in fs for w in wanted):
                return False
        return True


def subgroup_lattice(G, cap=DEFAULT_LATTICE_CAP, element_cap=DEFAULT_ELEMENT_CAP,
                     budget=None):
    cached = getattr(G, "_lattice_cache", None)
    if cached is not None:
        # replay the cap checks so a stricter caller still gets its error
        if len(cached) > cap:
            raise CapExceeded(f"subgroup lattice exceeds {cap} subgroups")
        if element_cap is not None and G.order() > element_cap:
            raise CapExceeded(
                f"element sweep needs {G.order()} elements, cap is {element_cap}")
        return cached
    n = G.order()
    elems = G.elements(element_cap)
    ident = G.identity().images

    zuppos = {}
    for e in elems:
        if not e.is_identity() and is_prime_power(e.order()):
            cyc = frozenset((e ** k).images for k in range(e.order()))
            if cyc not in zuppos:
                zuppos[cyc] = e.images
    zuppo_list = sorted(zuppos.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))

    sets_list = [frozenset([ident])]
    gens_list = [[]]
    found = {sets_list[0]: 0}
    for fs, zgen in zuppo_list:
        if fs not in found:
            found[fs] = len(sets_list)
            sets_list.append(fs)
            gens_list.append([zgen])
    whole = frozenset(e.images for e in elems)
    half = n // 2
    queue = list(range(len(sets_list)))
    qi = 0
    while qi < len(queue):
        i = queue[qi]
        qi += 1
        h_set, h_gens = sets_list[i], gens_list[i]
        for z_set, z_gen in zuppo_list:
            if budget is not None:
                budget.check()
            if z_gen in h_set:
                continue
            # both factors are already closed, so the orbit walk only has
            # to fill in the genuinely new products; any subgroup larger
            # than half the group is the group, which ends most walks early
            join_gens = h_gens + [z_gen]
            getters = [g.__getitem__ for g in join_gens]
            closed = set(h_set)
            closed.update(z_set)
            work = list(closed)
            wi = 0
            while wi < len(work) and len(closed) <= half:
                x = work[wi]
                wi += 1
                for gg in getters:
                    y = tuple(map(gg, x))
                    if y not in closed:
                        closed.add(y)
                        work.append(y)
            fs = whole if len(closed) > half else frozenset(closed)
            if fs not in found:
                if len(found) >= cap:
                    raise CapExceeded(
                        f"subgroup lattice exceeds {cap} subgroups")
                found[fs] = len(sets_list)
                sets_list.append(fs)
                gens_list.append(join_gens)
                queue.append(found[fs])
    if max(len(fs) for fs in sets_list) != n:
        raise GroupError("lattice closure never reached the whole group")

    order = sorted(range(len(sets_list)),
                   key=lambda i: (len(sets_list[i]), sorted(sets_list[i])))
    subgroups = []
    elem_sets = []
    for i in order:
        gens = tuple(Perm(g) for g in gens_list[i])
        subgroups.append(PermGroup(G.degree, gens))
        elem_sets.append(sets_list[i])
    lattice = SubgroupLattice(G, subgroups, elem_sets)
    G._lattice_cache = lattice
    return lattice


def frattini(G, lattice=None, cap=DEFAULT_LATTICE_CAP,
             element_cap=DEFAULT_ELEMENT_CAP, budget=None):
    """The Frattini subgroup: intersection of all maximal subgroups."""
    if G.order() == 1:
        return PermGroup(G.degree, ())
    if lattice is None:
        lattice = subgroup_lattice(G, cap, element_cap, budget)
    maximal_sets = [lattice.elem_sets[i] for i in lattice.maximal_indices()]
    inter = frozenset.intersection(*maximal_sets)
    return group_from_elements(G.degree, sorted(inter))


def minimal_normal_subgroups(G, element_cap=DEFAULT_ELEMENT_CAP):
    """All minimal normal subgroups, sorted by order (ties keep the order in
    which conjugacy class representatives produced them)."""
    if G.order() == 1:
        return ()
    closures = []
    for rep in G.class_representatives(element_cap):
        if rep.is_identity():
            continue
        N = G.normal_closure([rep])
        if not any(M.order() == N.order() and all(g in N for g in M.gens)
                   for M in closures):
            closures.append(N)
    minimal = []
    for N in closures:
        if not any(M.order() < N.order() and all(g in N for g in M.gens)
                   for M in closures):
            minimal.append(N)
    return tuple(sorted(minimal, key=lambda M: M.order()))


def socle(G, element_cap=DEFAULT_ELEMENT_CAP):
    gens = []
    for N in minimal_normal_subgroups(G, element_cap):
        gens.extend(N.gens)
    return PermGroup(G.degree, tuple(gens))


def unique_minimal_normal(G, element_cap=DEFAULT_ELEMENT_CAP):
    mins = minimal_normal_subgroups(G, element_cap)
    return mins[0] if len(mins) == 1 else None


def is_simple(G, element_cap=DEFAULT_ELEMENT_CAP):
    """Whether G is simple: nontrivial, and every nonidentity conjugacy
    class generates the whole group as a normal subgroup."""
    n = G.order()
    if n == 1:
        return False
    for rep in G.class_representatives(element_cap):
        if rep.is_identity():
            continue
        if G.normal_closure((rep,)).order() != n:
            return False
    return True


def is_elementary_abelian(G):
    if not G.is_abelian():
        return False
    n = G.order()
    if n == 1:
        return False
    if not is_prime_power(n):
        return False
    (p, _), = factorint(n).items()
    return all(g.is_identity() or g.order() == p for g in G.gens)


def monolithic_primitive(G, element_cap=DEFAULT_ELEMENT_CAP,
                         combo_cap=DEFAULT_COMBO_CAP):
    """True when G has a unique minimal normal subgroup not inside Frat(G).

    A non-abelian minimal normal subgroup is never in the Frattini subgroup
    (which is nilpotent), and an abelian one avoids it exactly when it has a
    complement, so no lattice is needed here.
    """
    A = unique_minimal_normal(G, element_cap)
    if A is None:
        return False
    if not A.is_abelian():
        return True
    return _complement_of_normal_exists(G, A, element_cap=element_cap,
                                        combo_cap=combo_cap)


def _complement_of_normal_exists(G, N, lattice_cap=DEFAULT_LATTICE_CAP,
                                 element_cap=DEFAULT_ELEMENT_CAP,
                                 combo_cap=DEFAULT_COMBO_CAP, budget=None):
    """Whether the normal subgroup N has a complement in G."""
    if N.order() == 1 or N.same_group_as(G):
        return True
    target = G.order() // N.order()
    try:
        lattice = subgroup_lattice(G, lattice_cap, element_cap, budget)
        n_set = N.element_set(element_cap)
        for i, fs in enumerate(lattice.elem_sets):
            if len(fs) == target and len(fs & n_set) == 1:
                return True
        return False
    except CapExceeded:
        pass
    Q, proj = quotient(G, N, element_cap)
    small = group_from_elements(Q.degree, Q.elements(element_cap))
    lifts = [proj.section(q) for q in small.gens]
    n_elems = N.elements(element_cap)
    total = len(n_elems) ** len(lifts)
    if total > combo_cap:
        raise CapExceeded(
            f"complement search needs {total} candidates, cap is {combo_cap}")
    for combo in itertools.product(n_elems, repeat=len(lifts)):
        if budget is not None:
            budget.check()
        K = PermGroup(G.degree, tuple(l * a for l, a in zip(lifts, combo)))
        if K.order() == target:
            return True
    return False


def has_complement(G, X, Y, lattice_cap=DEFAULT_LATTICE_CAP,
                   element_cap=DEFAULT_ELEMENT_CAP,
                   combo_cap=DEFAULT_COMBO_CAP, budget=None):
    """Whether the chief factor X/Y has a complement in G/Y."""
    Qb, proj = _quotient(G, Y, element_cap)
    Xb = PermGroup(Qb.degree, tuple(proj(x) for x in X.gens))
    return _complement_of_normal_exists(Qb, Xb, lattice_cap, element_cap,
                                        combo_cap, budget)


class FactorModule:
    """An abelian chief factor X/Y as a GF(p) module for G.

    Basis vectors are the first coset representatives that are independent
    of the earlier ones, walking the elements of X in sorted order.  Row
    vectors transform as v -> v @ rho(g), with rho(g)[j] the coordinates of
    the conjugate (b_j)^g.
    """

    def __init__(self, group, above, below, element_cap=DEFAULT_ELEMENT_CAP):
        self.group = group
        self.above = above
        self.below = below
        order = above.order() // below.order()
        fact = factorint(order)
        if len(fact) != 1:
            raise GroupError("factor is not of prime power order")
        (self.prime, self.dim), = fact.items()
        p, n = self.prime, self.dim
        self._y_elems = below.elements(element_cap) if below.order() > 1 else None
        basis = []
        self._span(basis)
        for e in above.elements(element_cap):
            if len(self._coords) == order:
                break
            if self._key(e) in self._coords:
                continue
            basis.append(e)
            self._span(basis)
        if len(self._coords) != order or len(basis) != n:
            raise GroupError("factor module construction failed")
        self.basis = tuple(basis)
        self.matrices = tuple(self._action_matrix(g) for g in group.gens)
        self._centralizer = None
        self._element_cap = element_cap

    def _key(self, e):
        if self._y_elems is None:
            return e.images
        return min((y * e).images for y in self._y_elems)

    def _span(self, basis):
        """Coordinates for every coset spanned by the current basis."""
        p, n = self.prime, self.dim
        ident = self.group.identity()
        coords = {self._key(ident): np.zeros(n, dtype=np.int64)}
        work = [(ident, coords[self._key(ident)])]
        while work:
            rep, v = work.pop(0)
            for j, b in enumerate(basis):
                r2 = rep * b
                k2 = self._key(r2)
                if k2 not in coords:
                    v2 = (v + _unit(n, j)) % p
                    coords[k2] = v2
                    work.append((r2, v2))
        self._coords = coords

    def coords_of(self, e):
        k = self._key(e)
        if k not in self._coords:
            raise NotInGroup("element is not in the upper subgroup")
        return self._coords[k]

    def _action_matrix(self, g):
        rows = [self.coords_of(b.conj(g)) for b in self.basis]
        return np.array(rows, dtype=np.int64)

    def centralizer(self):
        """C_G(X/Y): elements whose commutator with every basis vector is in Y."""
        if self._centralizer is None:
            below = self.below
            kept = []
            for g in self.group.elements(self._element_cap):
                ok = True
                for b in self.basis:
                    w = b.conj(g) * b.inverse()
                    if not (w.is_identity() or w in below):
                        ok = False
                        break
                if ok:
                    kept.append(g)
            self._centralizer = group_from_elements(self.group.degree, kept)
        return self._centralizer


def _unit(n, j):
    v = np.zeros(n, dtype=np.int64)
    v[j] = 1
    return v


class ChiefFactor:
    """One factor X/Y of a chief series of G; details computed on demand."""

    def __init__(self, group, below, above, lattice_cap=DEFAULT_LATTICE_CAP,
                 element_cap=DEFAULT_ELEMENT_CAP):
        self.group = group
        self.below = below
        self.above = above
        self.lattice_cap = lattice_cap
        self.element_cap = element_cap

    @functools.cached_property
    def order(self):
        return self.above.order() // self.below.order()

    @functools.cached_property
    def is_abelian(self):
        gens = self.above.gens
        below = self.below
        for i, a in enumerate(gens):
            for b in gens[i + 1:]:
                c = a.inverse() * b.inverse() * a * b
                if not (c.is_identity() or c in below):
                    return False
        return True

    @property
    def prime(self):
        if not self.is_abelian:
            return None
        (p, _), = factorint(self.order).items()
        return p

    @property
    def dim(self):
        if not self.is_abelian:
            return None
        (_, n), = factorint(self.order).items()
        return n

    @functools.cached_property
    def is_frattini(self):
        """Whether X/Y lies inside the Frattini subgroup of G/Y."""
        if not self.is_abelian:
            return False
        Qb, proj = _quotient(self.group, self.below, self.element_cap)
        xb_gens = [proj(x) for x in self.above.gens]
        frat = frattini(Qb, cap=self.lattice_cap, element_cap=self.element_cap)
        return all(x in frat for x in xb_gens)

    @functools.cached_property
    def module(self):
        if not self.is_abelian:
            raise GroupError("only abelian factors carry a module structure")
        return FactorModule(self.group, self.above, self.below, self.element_cap)

    def has_complement(self, combo_cap=DEFAULT_COMBO_CAP, budget=None):
        return has_complement(self.group, self.above, self.below,
                              self.lattice_cap, self.element_cap, combo_cap,
                              budget)

    def __repr__(self):
        kind = "abelian" if self.is_abelian else "non-abelian"
        return f"ChiefFactor(order={self.order}, {kind})"


def chief_series(G, lattice_cap=DEFAULT_LATTICE_CAP,
                 element_cap=DEFAULT_ELEMENT_CAP, budget=None):
    """An ascending chief series of G, as a tuple of ChiefFactor.

    At each step the next term is an inclusion-minimal normal closure of the
    current term plus one conjugacy class representative; ties are broken by
    order and then by sorted element tuples, so the result is deterministic.
    """
    if G.order() == 1:
        return ()
    reps = [r for r in G.class_representatives(element_cap)
            if not r.is_identity()]
    factors = []
    Y = PermGroup(G.degree, ())
    while Y.order() < G.order():
        if budget is not None:
            budget.check()
        minimal = []
        for rep in reps:
            if rep in Y:
                continue
            X = G.normal_closure(tuple(Y.gens) + (rep,))
            if any(M.order() <= X.order() and all(g in X for g in M.gens)
                   for M in minimal):
                continue
            minimal = [M for M in minimal
                       if not (X.order() < M.order()
                               and all(g in M for g in X.gens))]
            minimal.append(X)
        best_order = min(X.order() for X in minimal)
        pool = [X for X in minimal if X.order() == best_order]
        if len(pool) == 1:
            X = pool[0]
        else:
            X = min(pool,
                    key=lambda H: tuple(e.images for e in H.elements(element_cap)))
        factors.append(ChiefFactor(G, Y, X, lattice_cap, element_cap))
        Y = X
    return tuple(factors)


def gequivalent_abelian(f1, f2):
    """G-equivalence of two abelian chief factors of the same group.

    Both factors are irreducible modules for G, so by Schur's lemma any
    nonzero intertwiner between them is invertible; equivalence reduces to
    the intertwiner space being nonzero (after matching prime, dimension
    and the matrices of the same generator list).  Similar representations
    have equal kernels, so matching centralizers come for free.
    """
    if f1.group is not f2.group and not f1.group.same_group_as(f2.group):
        raise GroupError("factors belong to different groups")
    if not (f1.is_abelian and f2.is_abelian):
        raise GroupError("G-equivalence is defined here for abelian factors")
    if f1.prime != f2.prime or f1.dim != f2.dim:
        return False
    m1, m2 = f1.module, f2.module
    space = gfp.intertwiner_space(list(m1.matrices), list(m2.matrices), f1.prime)
    if not space:
        return False
    t = next(s for s in space if np.any(s))
    if not gfp.is_invertible(t, f1.prime):
        raise GroupError("irreducible factors gave a singular intertwiner")
    return True


def delta(G, factor, series=None, lattice_cap=DEFAULT_LATTICE_CAP,
          element_cap=DEFAULT_ELEMENT_CAP, budget=None):
    """Number of non-Frattini chief factors of G that are G-equivalent
    to the given abelian factor.

    The count is independent of the chosen series; a precomputed one can
    be passed to avoid recomputation.
    """
    if not factor.is_abelian:
        raise GroupError("delta is defined here for abelian factors")
    if series is None:
        series = chief_series(G, lattice_cap, element_cap, budget)
    count = 0
    for f in series:
        if f.is_abelian and not f.is_frattini and gequivalent_abelian(f, factor):
            count += 1
    return count
