"""Monolithic groups, crown powers, Eulerian counts and cohomology.

The abelian side of minimal generation is driven by a handful of numbers
attached to an irreducible GF(p) module M of a group G: the dimension r
over the endomorphism field, the first-cohomology dimensions s (of G) and
t (of G modulo the kernel of the action), the multiplicity delta of the
module among the non-Frattini chief factors, and the resulting bound
h = floor((s - 1) / r) + 2 (or h = delta when the action is trivial).
For a soluble group, d(G) is exactly the maximum of h over its chief
factor classes, which this module exposes as `soluble_d`.

The non-abelian side goes through crown-based powers: `monolithic_of`
builds the primitive group L attached to a chief factor, `crown_power`
the subgroup L_k of L^k of tuples congruent modulo the socle, and
`crown_generation_check` evaluates the counting criterion for d(L_k) in
the simple-socle case, with `eulerian` and `aut_order` supplying the two
sides of the threshold.
"""

import random
from collections import deque
from dataclasses import dataclass

import numpy as np

from . import gfp
from .perm import (DEFAULT_ELEMENT_CAP, MAX_DEGREE, CapExceeded, GroupError,
                   Homomorphism, Perm, PermGroup, build_chain,
                   group_from_elements, quotient)
from .structure import (DEFAULT_LATTICE_CAP, chief_series, is_simple,
                        minimal_normal_subgroups, subgroup_lattice)

DEFAULT_AUT_CAP = 500
DEFAULT_COHOMOLOGY_CAP = 500


class GfpModule:
    """A matrix representation of a group over GF(p), one matrix per generator.

    Row vectors transform on the right, and products compose left to right:
    rho(g * h) = rho(g) @ rho(h).  This matches the convention of the chief
    factor modules, so those convert directly via `module_of_factor`.
    """

    def __init__(self, group, prime, matrices, centralizer_kernel=None):
        mats = tuple(np.array(m, dtype=np.int64) % prime for m in matrices)
        if len(mats) != len(group.gens):
            raise GroupError("need one matrix per group generator")
        if not mats:
            raise GroupError("the group must come with at least one generator")
        n = mats[0].shape[0]
        for m in mats:
            if m.shape != (n, n):
                raise GroupError("matrices must be square and all of one size")
            if not gfp.is_invertible(m, prime):
                raise GroupError("a generator matrix is singular")
        self.group = group
        self.prime = prime
        self.dim = n
        self.matrices = mats
        self._centralizer = centralizer_kernel
        self._spot_check_relations()

    def _spot_check_relations(self, trials=24, seed=0):
        """Random products that collide in the group must agree as matrices."""
        rng = random.Random(seed)
        p = self.prime
        seen = {self.group.identity(): gfp.identity(self.dim)}
        for _ in range(trials):
            word = [rng.randrange(len(self.matrices))
                    for _ in range(rng.randrange(1, 9))]
            perm = self.group.identity()
            mat = gfp.identity(self.dim)
            for i in word:
                perm = perm * self.group.gens[i]
                mat = (mat @ self.matrices[i]) % p
            if perm in seen:
                if not np.array_equal(seen[perm], mat):
                    raise GroupError(
                        "matrices are inconsistent with the group's relations")
            else:
                seen[perm] = mat

    def is_trivial_action(self):
        eye = gfp.identity(self.dim)
        return all(np.array_equal(m, eye) for m in self.matrices)

    def is_irreducible(self):
        """No proper nonzero invariant subspace: every basis vector spins
        up to the whole space."""
        if self.dim == 1:
            return True
        mats = list(self.matrices)
        for j in range(self.dim):
            e = np.zeros(self.dim, dtype=np.int64)
            e[j] = 1
            if gfp.spin([e], mats, self.prime).shape[0] < self.dim:
                return False
        return True

    def realization(self):
        """The action on the p^dim row vectors as a verified homomorphism."""
        points = self.prime ** self.dim
        if points > MAX_DEGREE:
            raise CapExceeded(
                f"module realization degree {points} exceeds {MAX_DEGREE}")
        vecs = [tuple(int(c) for c in v)
                for v in gfp.all_vectors(self.dim, self.prime)]
        index = {v: i for i, v in enumerate(vecs)}
        arr = np.array(vecs, dtype=np.int64)
        perms = []
        for mat in self.matrices:
            moved = (arr @ mat) % self.prime
            perms.append(Perm(tuple(index[tuple(int(c) for c in row)]
                                    for row in moved)))
        target = PermGroup(points, tuple(perms))
        hom = Homomorphism(self.group, target, tuple(perms))
        if not hom.is_valid():
            raise GroupError("matrices do not define an action of the group")
        return hom

    def centralizer_kernel(self, element_cap=DEFAULT_ELEMENT_CAP):
        """C_G(M): the kernel of the representation."""
        if self._centralizer is None:
            hom = self.realization()
            ident = Perm.identity(hom.target.degree)
            kept = [g for g in self.group.elements(element_cap)
                    if hom(g) == ident]
            self._centralizer = group_from_elements(self.group.degree, kept)
        return self._centralizer


def module_of_factor(factor):
    """The GfpModule carried by an abelian chief factor."""
    fm = factor.module
    return GfpModule(factor.group, fm.prime, fm.matrices,
                     centralizer_kernel=fm.centralizer())


def trivial_module(G, p, dim=1):
    """The module GF(p)^dim with every generator acting as the identity."""
    return GfpModule(G, p, [gfp.identity(dim) for _ in G.gens],
                     centralizer_kernel=G)


def monolithic_of(G, F, element_cap=DEFAULT_ELEMENT_CAP, budget=None):
    """The monolithic primitive group attached to a non-Frattini chief factor.

    An abelian factor A gives the affine group A x| (G / C_G(A)) acting on
    the p^n points of the factor space (translations by the factor plus the
    induced matrix action); a non-abelian factor gives G / C_G(A).
    """
    if F.is_frattini:
        raise GroupError("Frattini factors have no monolithic group attached")
    if F.is_abelian:
        mod = F.module
        p, n = mod.prime, mod.dim
        points = p ** n
        if points > MAX_DEGREE:
            raise CapExceeded(f"affine degree {points} exceeds {MAX_DEGREE}")
        vecs = [tuple(int(c) for c in v) for v in gfp.all_vectors(n, p)]
        index = {v: i for i, v in enumerate(vecs)}
        gens = []
        for j in range(n):
            gens.append(Perm(tuple(
                index[v[:j] + ((v[j] + 1) % p,) + v[j + 1:]] for v in vecs)))
        arr = np.array(vecs, dtype=np.int64)
        for mat in mod.matrices:
            moved = (arr @ mat) % p
            gens.append(Perm(tuple(index[tuple(int(c) for c in row)]
                                   for row in moved)))
        return PermGroup(points, tuple(gens))
    kept = []
    below = F.below
    for g in G.elements(element_cap):
        if budget is not None:
            budget.check()
        for x in F.above.gens:
            w = x.conj(g) * x.inverse()
            if not (w.is_identity() or w in below):
                break
        else:
            kept.append(g)
    C = group_from_elements(G.degree, kept)
    Q, _ = quotient(G, C, element_cap)
    return Q


def crown_power(L, A, k, element_cap=DEFAULT_ELEMENT_CAP):
    """The subgroup L_k of L^k of tuples that agree modulo the socle A.

    Generated by the diagonal copies of L's generators together with A's
    generators planted in each of the first k - 1 coordinates, so the order
    is |A|^(k-1) * |L| (checked).
    """
    if k < 1:
        raise GroupError("crown powers need k >= 1")
    if A.degree != L.degree or not A.is_subgroup_of(L):
        raise GroupError("the socle must be a subgroup of L")
    mins = minimal_normal_subgroups(L, element_cap)
    if len(mins) != 1 or not mins[0].same_group_as(A):
        raise GroupError("A is not the socle of a monolithic group L")
    deg = L.degree
    total = k * deg
    if total > MAX_DEGREE:
        raise CapExceeded(f"crown power degree {total} exceeds {MAX_DEGREE}")
    gens = []
    for g in L.gens:
        gens.append(Perm(tuple(j * deg + g.images[x]
                               for j in range(k) for x in range(deg))))
    for j in range(k - 1):
        for a in A.gens:
            gens.append(a.shifted(j * deg, total))
    out = PermGroup(total, tuple(gens))
    if out.order() != A.order() ** (k - 1) * L.order():
        raise GroupError("crown power order check failed")  # pragma: no cover
    return out


def eulerian(X, m, lattice_cap=DEFAULT_LATTICE_CAP,
             element_cap=DEFAULT_ELEMENT_CAP, budget=None):
    """The number of ordered m-tuples of elements that generate X.

    Moebius inversion over the subgroup lattice: the tuples inside a fixed
    subgroup H number |H|^m, so the generating ones number
    sum_H mu(H, X) |H|^m.
    """
    if m < 0:
        raise GroupError("tuple length must be nonnegative")
    lat = subgroup_lattice(X, lattice_cap, element_cap, budget)
    mu = lat.moebius()
    return sum(mu[i] * len(lat.elem_sets[i]) ** m for i in range(len(lat)))


def aut_order(S, cap=DEFAULT_AUT_CAP, element_cap=DEFAULT_ELEMENT_CAP,
              budget=None):
    """|Aut(S)| by exhaustive search over images of a generating sequence.

    The generating sequence is chosen greedily in search order.  Candidate
    images must match the generator orders; a partial assignment survives
    while its graph is a group of the same order as the subgroup generated
    so far (that is, while the partial map extends to a homomorphism), and
    a complete assignment counts when its images generate all of S.  Meant
    for small socles; elementary abelian groups have automorphism groups
    far too large to count this way.
    """
    n = S.order()
    if n > cap:
        raise CapExceeded(
            f"automorphism search needs order <= {cap}, group has order {n}")
    if n == 1:
        return 1
    elems = S.sorted_by_search_order(element_cap)
    word = []
    prefix_orders = []
    current = PermGroup(S.degree, ())
    for e in elems:
        if e.is_identity() or e in current:
            continue
        word.append(e)
        current = PermGroup(S.degree, tuple(word))
        prefix_orders.append(current.order())
        if prefix_orders[-1] == n:
            break
    pools = [[x for x in elems if not x.is_identity()
              and x.order() == w.order()] for w in word]
    deg = S.degree
    count = 0

    def extends(imgs):
        pairs = [Perm(w.images + tuple(deg + c for c in im.images))
                 for w, im in zip(word, imgs)]
        return build_chain(2 * deg, pairs).order() == prefix_orders[len(imgs) - 1]

    def search(imgs):
        nonlocal count
        i = len(imgs)
        if i == len(word):
            if PermGroup(deg, imgs).order() == n:
                count += 1
            return
        for x in pools[i]:
            if budget is not None:
                budget.check()
            nxt = imgs + (x,)
            if extends(nxt):
                search(nxt)

    search(())
    return count


def crown_generation_check(L, A, m, k, lattice_cap=DEFAULT_LATTICE_CAP,
                           element_cap=DEFAULT_ELEMENT_CAP,
                           aut_cap=DEFAULT_AUT_CAP, budget=None):
    """Predicted truth of d(L_k) <= m in the simple-socle case L = A.

    For a non-abelian simple socle the crown power A_k is the direct power
    A^k, whose generating m-tuples are k-tuples of pairwise inequivalent
    generating m-tuples of A; since Aut(A) acts freely on those, the
    criterion is k <= phi_A(m) / |Aut(A)| (evaluated without division).
    """
    if k < 1 or m < 1:
        raise GroupError("the criterion needs k >= 1 and m >= 1")
    if not L.same_group_as(A):
        raise GroupError("only the simple-socle case L = A is supported")
    if A.is_abelian() or not is_simple(A, element_cap):
        raise GroupError("the socle must be non-abelian simple")
    phi = eulerian(A, m, lattice_cap, element_cap, budget)
    gamma = aut_order(A, aut_cap, element_cap, budget)
    return k * gamma <= phi


def h1_dimension(G, M, cap=DEFAULT_COHOMOLOGY_CAP, budget=None):
    """The GF(p) dimension of the first cohomology group H^1(G, M).

    Derivations are solved for on generator values only: a spanning tree
    of the Cayley graph expresses delta(x) linearly in the delta(s_i) for
    every element x, and each non-tree edge contributes the equation of
    its relator.  Inner derivations are then subtracted off as the rank
    of the stacked rho(s_i) - 1.  The walk also verifies, edge by edge,
    that the matrices are consistent with the group's multiplication.
    """
    order = G.order()
    if order > cap:
        raise CapExceeded(
            f"cohomology needs order <= {cap}, group has order {order}")
    p, n = M.prime, M.dim
    r = len(G.gens)
    if order == 1 or r == 0:
        return 0
    rho = list(M.matrices)
    eye = gfp.identity(n)
    ident = G.identity()
    coeff = {ident: np.zeros((r, n, n), dtype=np.int64)}
    matval = {ident: eye}
    equations = []
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        cx, mx = coeff[x], matval[x]
        for i, g in enumerate(G.gens):
            if budget is not None:
                budget.check()
            y = x * g
            cy = np.mod(cx @ rho[i], p)
            cy[i] = (cy[i] + eye) % p
            my = (mx @ rho[i]) % p
            if y not in coeff:
                coeff[y] = cy
                matval[y] = my
                queue.append(y)
                continue
            if not np.array_equal(matval[y], my):
                raise GroupError(
                    "matrices are inconsistent with the group's relations")
            diff = (cy - coeff[y]) % p
            if np.any(diff):
                # delta(x) rho(g) + delta(g) = delta(xg): one equation per
                # module coordinate, in the r*n generator-value unknowns
                for c in range(n):
                    equations.append(diff[:, :, c].reshape(r * n))
    if len(coeff) != order:
        raise GroupError("the generators do not generate the group")
    z_rank = gfp.rank(np.array(equations), p) if equations else 0
    z_dim = r * n - z_rank
    b_dim = gfp.rank(np.hstack([(mat - eye) % p for mat in rho]), p)
    return z_dim - b_dim


@dataclass(frozen=True)
class ModuleInvariants:
    """Generation invariants of an irreducible module, all measured over
    the endomorphism field."""
    r: int
    s: int
    t: int
    delta: int
    h: int
    end_dim: int


def _field_check(basis, p, seed=0):
    """Every nonzero element sampled from the span must be invertible."""
    rng = random.Random(seed)
    samples = list(basis)
    for _ in range(8):
        mix = sum((rng.randrange(p) * b for b in basis),
                  np.zeros_like(basis[0])) % p
        samples.append(mix)
    for s in samples:
        if np.any(s) and not gfp.is_invertible(s, p):
            raise GroupError(
                "endomorphism space contains a singular nonzero element")


def module_invariants(G, M, series=None, lattice_cap=DEFAULT_LATTICE_CAP,
                      element_cap=DEFAULT_ELEMENT_CAP,
                      cohomology_cap=DEFAULT_COHOMOLOGY_CAP, budget=None):
    """The invariants r, s, t, delta and h of an irreducible module M of G.

    end_dim is the GF(p) dimension of End_G(M) (a field, by Schur); r is
    the module dimension over that field; s and t are the dimensions of
    H^1(G, M) and H^1(G/C_G(M), M); delta counts the non-Frattini chief
    factors carrying an equivalent module.  h is delta for a trivial
    module and floor((s-1)/r) + 2 otherwise; identities s = t + delta and
    h <= delta + 1 hold throughout.
    """
    p, n = M.prime, M.dim
    if not M.is_irreducible():
        raise GroupError("module invariants need an irreducible module")
    basis = gfp.intertwiner_space(list(M.matrices), list(M.matrices), p)
    end_dim = len(basis)
    _field_check(basis, p)
    r, rem = divmod(n, end_dim)
    if rem:
        raise GroupError(
            "endomorphism dimension does not divide the module dimension")
    s, rem = divmod(h1_dimension(G, M, cohomology_cap, budget), end_dim)
    if rem:
        raise GroupError("H^1 dimension is not a multiple of end_dim")
    C = M.centralizer_kernel(element_cap)
    if C.order() == G.order():
        t = 0
    else:
        Q, _ = quotient(G, C, element_cap)
        MQ = GfpModule(Q, p, M.matrices,
                       centralizer_kernel=PermGroup(Q.degree, ()))
        t, rem = divmod(h1_dimension(Q, MQ, cohomology_cap, budget), end_dim)
        if rem:
            raise GroupError("H^1 dimension is not a multiple of end_dim")
    if series is None:
        series = chief_series(G, lattice_cap, element_cap, budget)
    delta = 0
    for f in series:
        if (not f.is_abelian or f.is_frattini or f.prime != p
                or f.dim != n):
            continue
        if gfp.intertwiner_space(list(f.module.matrices), list(M.matrices), p):
            delta += 1
    if M.is_trivial_action():
        h = delta
    else:
        h = (s - 1) // r + 2
    return ModuleInvariants(r=r, s=s, t=t, delta=delta, h=h, end_dim=end_dim)


def factor_invariants(G, series=None, lattice_cap=DEFAULT_LATTICE_CAP,
                      element_cap=DEFAULT_ELEMENT_CAP,
                      cohomology_cap=DEFAULT_COHOMOLOGY_CAP, budget=None):
    """(factor, ModuleInvariants) for every non-Frattini abelian chief factor."""
    if series is None:
        series = chief_series(G, lattice_cap, element_cap, budget)
    out = []
    for f in series:
        if not f.is_abelian or f.is_frattini:
            continue
        inv = module_invariants(G, module_of_factor(f), series, lattice_cap,
                                element_cap, cohomology_cap, budget)
        out.append((f, inv))
    return out


def soluble_d(G, lattice_cap=DEFAULT_LATTICE_CAP,
              element_cap=DEFAULT_ELEMENT_CAP,
              cohomology_cap=DEFAULT_COHOMOLOGY_CAP, budget=None):
    """d(G) for a soluble group: the maximum of h over its chief factors.

    The factor attaining the maximum is the generating one; its h equals
    the minimal number of generators.
    """
    if not G.is_soluble():
        raise GroupError("the h-based generator count needs a soluble group")
    if G.order() == 1:
        return 0
    pairs = factor_invariants(G, None, lattice_cap, element_cap,
                              cohomology_cap, budget)
    return max(inv.h for _, inv in pairs)
