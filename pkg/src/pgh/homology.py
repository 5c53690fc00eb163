"""Schur multipliers via the covering-group tails algorithm, stem covers,
abelian tensor machinery, the class-two exact-sequence map g, and the
trilinear/quadrilinear commutator maps on central quotients.

The tails method: adjoin one central generator of infinite order to every
power rule and every commutator rule, re-run all consistency overlaps in
the tailed presentation, and read off the multiplier as the torsion part
of the cokernel of the resulting integer relation matrix.
"""

import math
from dataclasses import dataclass

from .pcp import (AbelianType, PcPresentation, Subgroup, abelian_invariants,
                  center, derived_subgroup, lower_central_series,
                  subgroup_closure, trivial_subgroup, full_subgroup,
                  is_normal)
from .snf import smith_normal_form, unimodular_inverse


# -- tailed collection ------------------------------------------------


class _TailedOps:
    """Collection in the covering presentation of P.

    Elements are (vec, tails) where vec is the normal form over the
    original generators and tails is an integer vector with one slot per
    power rule and one per commutator pair (the pair slots exist even for
    pairs whose commutator rule is trivial).
    """

    def __init__(self, P):
        self.P = P
        n = P.ngens
        self.ntails = n + n * (n - 1) // 2

    def pair_slot(self, j, i):
        return self.P.ngens + j * (j - 1) // 2 + i

    def identity(self):
        return (0,) * self.P.ngens, (0,) * self.ntails

    def gen(self, i):
        vec, tails = self.identity()
        vec = tuple(1 if j == i else 0 for j in range(self.P.ngens))
        return vec, tails

    def power_rhs(self, i):
        """The element g_i^p as given by its tailed rule."""
        vec = [0] * self.P.ngens
        tails = [0] * self.ntails
        tails[i] = 1
        self._collect(vec, tails, self.P.power[i])
        return tuple(vec), tuple(tails)

    def mult(self, x, y):
        vec = list(x[0])
        tails = [a + b for a, b in zip(x[1], y[1])]
        self._collect(vec, tails, [(i, e) for i, e in enumerate(y[0]) if e])
        return tuple(vec), tuple(tails)

    def pow(self, x, e):
        out = self.identity()
        for _ in range(e):
            out = self.mult(out, x)
        return out

    def _collect(self, vec, tails, word):
        p = self.P.p
        n = self.P.ngens
        power = self.P.power
        comm = self.P.comm
        stack = [(g, e) for g, e in reversed(list(word))]
        while stack:
            g, e = stack.pop()
            if e == 0:
                continue
            if e < 0:
                # g^-1 = g^(p-1) * (g^p)^-1; the tailed power rule is
                # g^p = w * t_g with t_g central
                if e < -1:
                    stack.append((g, e + 1))
                tails[g] -= 1
                pw = power[g]
                if pw:
                    stack.extend((h, -f) for h, f in pw)
                stack.append((g, p - 1))
                continue
            if e > 1:
                stack.append((g, e - 1))
            tail = [(t, vec[t]) for t in range(g + 1, n) if vec[t]]
            if not tail:
                vec[g] += 1
                if vec[g] == p:
                    vec[g] = 0
                    tails[g] += 1
                    if power[g]:
                        stack.extend(reversed(power[g]))
                continue
            for t, _ in tail:
                vec[t] = 0
            vec[g] += 1
            pending = []
            if vec[g] == p:
                vec[g] = 0
                tails[g] += 1
                pending.extend(power[g])
            for t, ct in tail:
                # moving g left past g_t^ct applies the tailed rule
                # [g_t, g] = w * t_(t,g) once per unit
                tails[self.pair_slot(t, g)] += ct
                cw = comm.get((t, g))
                if cw:
                    for _ in range(ct):
                        pending.append((t, 1))
                        pending.extend(cw)
                else:
                    pending.append((t, ct))
            stack.extend(reversed(pending))


class TailsSystem:
    """Relation matrix of the tailed covering presentation, with its SNF.

    The cokernel of the relation matrix is Z^N x M(G); the free rank is
    asserted equal to the generator count N.
    """

    def __init__(self, base, tail_count, relation_matrix, snf):
        self.base = base
        self.tail_count = tail_count
        self.relation_matrix = relation_matrix
        self.snf = snf

    @property
    def multiplier(self):
        return AbelianType.from_divisors(self.snf.cokernel_torsion())


def tails_system(P):
    """Assemble and reduce the tails relation matrix for a consistent P."""
    ops = _TailedOps(P)
    n = P.ngens
    rows = []

    def emit(lhs, rhs):
        assert lhs[0] == rhs[0], "tailed overlap disagrees on the base group"
        row = [a - b for a, b in zip(lhs[1], rhs[1])]
        if any(row) and row not in rows:
            rows.append(row)

    gens = [ops.gen(i) for i in range(n)]
    powers = [ops.power_rhs(i) for i in range(n)]
    for k in range(2, n):
        for j in range(1, k):
            gkj = ops.mult(gens[k], gens[j])
            for i in range(j):
                emit(ops.mult(gkj, gens[i]),
                     ops.mult(gens[k], ops.mult(gens[j], gens[i])))
    for j in range(1, n):
        gjq = ops.pow(gens[j], P.p - 1)
        for i in range(j):
            emit(ops.mult(powers[j], gens[i]),
                 ops.mult(gjq, ops.mult(gens[j], gens[i])))
    for j in range(1, n):
        for i in range(j):
            emit(ops.mult(gens[j], powers[i]),
                 ops.mult(ops.mult(gens[j], gens[i]),
                          ops.pow(gens[i], P.p - 1)))
    for i in range(n):
        emit(ops.mult(gens[i], powers[i]), ops.mult(powers[i], gens[i]))

    snf = smith_normal_form(rows, ncols=ops.ntails)
    if snf.cokernel_free_rank() != n:
        raise AssertionError(
            f"tails cokernel free rank {snf.cokernel_free_rank()} != {n}")
    return TailsSystem(P, ops.ntails, rows, snf)


def schur_multiplier(P):
    """Elementary divisors of the Schur multiplier of G."""
    return tails_system(P).multiplier


def abelian_multiplier(A):
    """Multiplier of an abelian group: direct sum of gcd(d_i, d_j), i < j."""
    ds = A.divisors
    out = [math.gcd(ds[i], ds[j])
           for i in range(len(ds)) for j in range(i + 1, len(ds))]
    return AbelianType.from_divisors(out)


def tensor_abelian(A, B):
    """Tensor product of abelian groups: direct sum over gcd pairs."""
    out = [math.gcd(a, b) for a in A.divisors for b in B.divisors]
    return AbelianType.from_divisors(out)


# -- stem covers ------------------------------------------------------


class StemCover:
    """Central extension 1 -> M -> E -> G -> 1 with M <= Z(E) and M <= E'.

    The first N generators of E project onto the generators of G; the
    projection simply truncates exponent vectors.
    """

    def __init__(self, base, E, M):
        self.base = base
        self.E = E
        self.M = M

    def project(self, x):
        return tuple(x[:self.base.ngens])

    def lift(self, x):
        return tuple(x) + (0,) * (self.E.ngens - self.base.ngens)

    def multiplier_type(self):
        return abelian_invariants(self.E, self.M)


def _base_p_word(value, chain, p):
    """Word for c^value along a refined chain of order-p generators."""
    word = []
    for g in chain:
        digit = value % p
        value //= p
        if digit:
            word.append((g, digit))
    assert value == 0
    return word


def stem_cover(P, variant=0):
    """Build a stem cover from the tails data.

    The complement of the torsion part is read off the SNF transform V.
    `variant` = 1 mixes the first free coordinate into the torsion
    coordinates, giving a second valid complement (relation rows have no
    free components, so the relations are still satisfied); the two
    variants are used to cross-check cover-independent constructions.
    """
    if variant not in (0, 1):
        raise ValueError("variant must be 0 or 1")
    ts = tails_system(P)
    snf = ts.snf
    p = P.p
    n = P.ngens
    diag = snf.diagonal
    torsion = [(idx, d) for idx, d in enumerate(diag) if d > 1]
    free0 = snf.rank if snf.rank < ts.tail_count else None

    # new central generators: one refined chain per torsion coordinate
    chains = []
    start = n
    exps = []
    for _, d in torsion:
        e = 0
        dd = d
        while dd > 1:
            if dd % p:
                raise AssertionError("torsion divisor is not a p-power")
            dd //= p
            e += 1
        chains.append(list(range(start, start + e)))
        exps.append(e)
        start += e
    total = start
    V = snf.V

    def tail_image(slot):
        """Word (over the new generators) of the image of tail t_slot in M."""
        word = []
        for (idx, d), chain in zip(torsion, chains):
            v = V[slot][idx]
            if variant == 1 and free0 is not None:
                v += V[slot][free0]
            v %= d
            word.extend(_base_p_word(v, chain, p))
        return tuple(word)

    ops = _TailedOps(P)
    power = []
    for i in range(n):
        power.append(tuple(P.power[i]) + tail_image(i))
    comm = {}
    for j in range(1, n):
        for i in range(j):
            w = tuple(P.comm.get((j, i), ())) + tail_image(ops.pair_slot(j, i))
            if w:
                comm[(j, i)] = w
    power += [()] * (total - n)
    for chain in chains:
        for a, b in zip(chain, chain[1:]):
            power[a] = ((b, 1),)
    labels = dict(P.labels)
    for ci, chain in enumerate(chains):
        labels[chain[0]] = f"m{ci + 1}"
    E = PcPresentation(p, total, power, comm, labels)
    M = Subgroup(E, [E.gen(i) for i in range(n, total)])
    cover = StemCover(P, E, M)

    mt = cover.multiplier_type()
    if mt != ts.multiplier:
        raise AssertionError("stem cover M does not match the multiplier")
    dE = derived_subgroup(E)
    if not M.issubset(dE):
        raise AssertionError("M is not contained in E'")
    for b in M.basis:
        for g in E.gens():
            if E.commutator(b, g) != E.identity():
                raise AssertionError("M is not central in E")
    # projection must be a homomorphism: check on generator products
    for i in range(n):
        for j in range(n):
            lhs = cover.project(E.mult(E.gen(i), E.gen(j)))
            if lhs != P.mult(P.gen(i), P.gen(j)):
                raise AssertionError("projection fails on a generator product")
    return cover


def exterior_square_order(P, cover=None):
    """|G ^ G| = |M(G)| * |G'|; cross-checked against |E'| of a stem cover."""
    if cover is None:
        cover = stem_cover(P)
    m_order = cover.M.order
    k_order = derived_subgroup(P).order
    e_derived = derived_subgroup(cover.E).order
    if e_derived != m_order * k_order:
        raise AssertionError("|E'| != |M(G)| |G'|")
    return e_derived


# -- abelian sections and tensor images -------------------------------


class AbelianSection:
    """Coordinates in an abelian section N/M of G, via Smith normal form.

    Provides the invariant divisors, representatives generating the
    section, and exact coordinates of arbitrary elements of N.
    """

    def __init__(self, P, N, M=None):
        if M is None:
            M = trivial_subgroup(P)
        self.P = P
        self.N = N
        self.M = M
        m = len(N.basis)
        rows = []
        for i, b in enumerate(N.basis):
            row = [0] * m
            row[i] = P.p
            for j, c in enumerate(N.coords(P.pow(b, P.p))):
                row[j] -= c
            rows.append(row)
        for b in M.basis:
            rows.append(list(N.coords(b)))
        snf = smith_normal_form(rows, ncols=m)
        if snf.cokernel_free_rank():
            raise AssertionError("abelian section has free rank")
        self.V = snf.V
        self.Vinv = unimodular_inverse(snf.V) if m else []
        self.torsion = [(idx, d) for idx, d in enumerate(snf.diagonal) if d > 1]
        self.divisors = tuple(d for _, d in self.torsion)

    @property
    def type(self):
        return AbelianType.from_divisors(self.divisors)

    def rank(self):
        return len(self.divisors)

    def coords(self, x):
        """Coordinates of x*M in the invariant decomposition."""
        c = self.N.coords(x)
        z = [sum(c[i] * self.V[i][j] for i in range(len(c)))
             for j in range(len(c))]
        return tuple(z[idx] % d for idx, d in self.torsion)

    def representatives(self):
        """One element of N per invariant generator of the section."""
        reps = []
        for idx, _ in self.torsion:
            c = self.Vinv[idx]
            x = self.P.identity()
            for b, e in zip(self.N.basis, c):
                if e:
                    x = self.P.mult(x, self.P.pow(b, e))
            reps.append(x)
        return reps


class TensorGroup:
    """The tensor product of two abelian sections, as explicit vectors.

    Elements are tuples over the (i, j) grid with entry (i, j) taken
    modulo gcd(a_i, b_j).
    """

    def __init__(self, A, B):
        self.A = A
        self.B = B
        self.moduli = [math.gcd(a, b) for a in A.divisors for b in B.divisors]

    @property
    def order(self):
        result = 1
        for g in self.moduli:
            result *= g
        return result

    def zero(self):
        return (0,) * len(self.moduli)

    def simple(self, ca, cb):
        """The simple tensor of elements with the given section coordinates."""
        nb = len(self.B.divisors)
        out = []
        for i in range(len(self.A.divisors)):
            for j in range(nb):
                out.append((ca[i] * cb[j]) % self.moduli[i * nb + j])
        return tuple(out)

    def pair(self, x, y):
        """Simple tensor of x in A's section and y in B's section."""
        return self.simple(self.A.coords(x), self.B.coords(y))

    def add(self, u, v):
        return tuple((a + b) % m for a, b, m in zip(u, v, self.moduli))

    def neg(self, u):
        return tuple((-a) % m for a, m in zip(u, self.moduli))

    def subgroup_order(self, vectors):
        """Order of the subgroup generated by the given vectors."""
        t = len(self.moduli)
        if t == 0:
            return 1
        rows = [list(v) for v in vectors]
        for i, m in enumerate(self.moduli):
            row = [0] * t
            row[i] = m
            rows.append(row)
        snf = smith_normal_form(rows, ncols=t)
        covol = 1
        for d in snf.diagonal:
            covol *= d
        assert snf.rank == t
        return self.order // covol


# -- the class-two exact-sequence map ---------------------------------


@dataclass(frozen=True)
class ExactSequenceReport:
    tensor_order: int          # |G' x G/G'| tensored
    image_order: int           # |im g|
    kernel_order: int          # |ker g| = tensor_order / image_order
    multiplier_order: int      # |M(G)|
    quotient_multiplier_order: int   # |M(G/G')|
    derived_order: int         # |G'|
    order_identity_ok: bool
    jacobi_in_kernel: bool
    power_in_kernel: bool

    def ok(self):
        return (self.order_identity_ok and self.jacobi_in_kernel
                and self.power_in_kernel)


def be_sequence(P, cover=None):
    """Evaluate the map g: G' (x) G/G' -> M(G) and its exactness data.

    g(x (x) zG') = [x^, z^] computed in a stem cover; requires class
    exactly 2 (so that commutators of lifts of G' elements land in M).
    """
    series = lower_central_series(P)
    if len(series) - 1 != 2:
        raise ValueError("the exact-sequence map requires class exactly 2")
    if cover is None:
        cover = stem_cover(P)
    E = cover.E
    derived = series[1]
    sa = AbelianSection(P, derived)
    sb = AbelianSection(P, full_subgroup(P), derived)
    tensor_type = tensor_abelian(sa.type, sb.type)

    def g_value(x, z):
        return E.commutator(cover.lift(x), cover.lift(z))

    image_gens = [g_value(x, z)
                  for x in sa.representatives() for z in sb.representatives()]
    for v in image_gens:
        if not cover.M.contains(v):
            raise AssertionError("image of g escapes M")
    image = subgroup_closure(E, image_gens) if image_gens else trivial_subgroup(E)
    tensor_order = tensor_type.order
    kernel_order = tensor_order // image.order

    m_order = cover.M.order
    qm_order = abelian_multiplier(sb.type).order
    k_order = derived.order
    identity_ok = (kernel_order * m_order * k_order
                   == tensor_order * qm_order)

    # the stated kernel generators: Jacobi-type triples and w^(p^s) (x) w
    gens = P.gens()
    jacobi_ok = True
    for a in range(len(gens)):
        for b in range(len(gens)):
            for c in range(len(gens)):
                x, y, z = gens[a], gens[b], gens[c]
                val = E.mult(g_value(P.commutator(x, y), z),
                             E.mult(g_value(P.commutator(z, x), y),
                                    g_value(P.commutator(y, z), x)))
                if val != E.identity():
                    jacobi_ok = False
    ps = sb.type.exponent
    power_ok = True
    probes = list(gens)
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            probes.append(P.mult(gens[i], gens[j]))
    for w in probes:
        if g_value(P.pow(w, ps), w) != E.identity():
            power_ok = False
    return ExactSequenceReport(
        tensor_order=tensor_order,
        image_order=image.order,
        kernel_order=kernel_order,
        multiplier_order=m_order,
        quotient_multiplier_order=qm_order,
        derived_order=k_order,
        order_identity_ok=identity_ok,
        jacobi_in_kernel=jacobi_ok,
        power_in_kernel=power_ok,
    )


# -- trilinear and quadrilinear commutator maps -----------------------


def _central_quotient_section(P):
    """(G/Z(G))^ab = G / G'Z(G) as an abelian section."""
    z = center(P)
    derived = derived_subgroup(P)
    gz = subgroup_closure(P, list(derived.basis) + list(z.basis))
    return AbelianSection(P, full_subgroup(P), gz)


def psi2_image(P):
    """Order of the image of the trilinear map into (G'/gamma3) (x) G/G'."""
    series = lower_central_series(P)
    derived = series[1]
    gamma3 = series[2] if len(series) > 2 else trivial_subgroup(P)
    src = _central_quotient_section(P)
    ta = AbelianSection(P, derived, gamma3)
    tb = AbelianSection(P, full_subgroup(P), derived)
    T = TensorGroup(ta, tb)
    reps = src.representatives()
    vecs = []
    for x in reps:
        for y in reps:
            for z in reps:
                v = T.pair(P.commutator(x, y), z)
                v = T.add(v, T.pair(P.commutator(z, x), y))
                v = T.add(v, T.pair(P.commutator(y, z), x))
                vecs.append(v)
    return T.subgroup_order(vecs)


def psi3_image(P):
    """Order of the image of the quadrilinear map into
    (gamma3/gamma4) (x) (G/Z(G))^ab; trivial below class 3."""
    series = lower_central_series(P)
    if len(series) - 1 < 3:
        return 1
    gamma3 = series[2]
    gamma4 = series[3] if len(series) > 3 else trivial_subgroup(P)
    src = _central_quotient_section(P)
    ta = AbelianSection(P, gamma3, gamma4)
    T = TensorGroup(ta, src)
    reps = src.representatives()
    vecs = []
    for x in reps:
        for y in reps:
            xy = P.commutator(x, y)
            for z in reps:
                for w in reps:
                    zw = P.commutator(z, w)
                    v = T.pair(P.commutator(xy, z), w)
                    v = T.add(v, T.pair(P.commutator(w, xy), z))
                    v = T.add(v, T.pair(P.commutator(zw, x), y))
                    v = T.add(v, T.pair(P.commutator(y, zw), x))
                    vecs.append(v)
    return T.subgroup_order(vecs)


@dataclass(frozen=True)
class WedgeInequalityReport:
    lhs_exponent: int     # log_p(|G^G| |Im2| |Im3|)
    rhs_exponent: int     # log_p(|M(G/G')| p^(kd))
    holds: bool


def _log_p(value, p):
    e = 0
    while value > 1:
        if value % p:
            raise ValueError(f"{value} is not a power of {p}")
        value //= p
        e += 1
    return e


def thm25_check(P, cover=None):
    """The outer inequality |G^G| |Im2| |Im3| <= |M(G/G')| p^(kd)."""
    series = lower_central_series(P)
    c = len(series) - 1
    if c > 3:
        raise ValueError("inequality check implemented for class <= 3 only")
    p = P.p
    wedge = exterior_square_order(P, cover=cover)
    im2 = psi2_image(P)
    im3 = psi3_image(P)
    derived = series[1]
    k = derived.log_order
    from .pcp import frattini_subgroup
    d = P.ngens - frattini_subgroup(P).log_order
    qtype = abelian_invariants(P, full_subgroup(P), derived)
    rhs = abelian_multiplier(qtype).order * p ** (k * d)
    lhs = wedge * im2 * im3
    return WedgeInequalityReport(
        lhs_exponent=_log_p(lhs, p),
        rhs_exponent=_log_p(rhs, p),
        holds=lhs <= rhs,
    )
