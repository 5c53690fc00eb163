"""Finite p-groups given by consistent polycyclic presentations.

Every generator has relative order exactly p.  A presentation stores, for
each generator g_i, the normal-form word equal to g_i^p, and for each pair
i < j the normal-form word equal to [g_j, g_i] = g_j^-1 g_i^-1 g_j g_i.
Rule words may only mention generators of strictly larger index, which
makes collection from the left terminate.

Elements are exponent tuples (e_1, ..., e_N) with 0 <= e_i < p.
"""

from dataclasses import dataclass, field

Word = tuple  # tuple of (generator_index, exponent) pairs, 0-based indices


def _validate_word(word, low, ngens, p):
    """Rule words must be normal forms over generators of index > low."""
    prev = low
    for g, e in word:
        if not (low < g < ngens):
            raise ValueError(
                f"rule word uses generator {g + 1}, which is not of larger "
                f"index than {low + 1} (weighting invariant)")
        if g <= prev:
            raise ValueError("rule word indices must be strictly increasing")
        if not (0 < e < p):
            raise ValueError(f"rule word exponent {e} out of range [1, {p - 1}]")
        prev = g


class PcPresentation:
    """A consistent polycyclic presentation with prime relative orders."""

    def __init__(self, p, ngens, power=None, comm=None, labels=None,
                 check_consistent=True):
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.ngens = ngens
        power = list(power or [])
        while len(power) < ngens:
            power.append(())
        self.power = tuple(tuple(w) for w in power)
        self.comm = {}
        for (j, i), w in (comm or {}).items():
            if not (0 <= i < j < ngens):
                raise ValueError(f"bad commutator rule key ({j}, {i})")
            w = tuple(w)
            if w:
                self.comm[(j, i)] = w
        self.labels = dict(labels or {})
        for i, w in enumerate(self.power):
            _validate_word(w, i, ngens, p)
        for (j, i), w in self.comm.items():
            _validate_word(w, j, ngens, p)
        self._identity = (0,) * ngens
        if check_consistent and not self.is_consistent():
            raise ValueError("presentation fails the consistency check")

    # -- basic element arithmetic -------------------------------------

    @property
    def order(self):
        return self.p ** self.ngens

    def identity(self):
        return self._identity

    def gen(self, i):
        if not (0 <= i < self.ngens):
            raise IndexError(f"generator index {i} out of range")
        return tuple(1 if j == i else 0 for j in range(self.ngens))

    def gens(self):
        return [self.gen(i) for i in range(self.ngens)]

    def label(self, i):
        return self.labels.get(i, f"g{i + 1}")

    def _collect_into(self, vec, word):
        """Multiply the normal form `vec` (a list, modified in place) by `word`."""
        p = self.p
        n = self.ngens
        power = self.power
        comm = self.comm
        stack = [(g, e) for g, e in reversed(list(word))]
        while stack:
            g, e = stack.pop()
            if e == 0:
                continue
            if g < 0 or g >= n:
                raise IndexError(f"generator index {g} out of range")
            if e < 0:
                # g^-1 = g^(p-1) * (g^p)^-1
                if e < -1:
                    stack.append((g, e + 1))
                pw = power[g]
                if pw:
                    stack.extend((h, -f) for h, f in pw)
                stack.append((g, p - 1))
                continue
            if e > 1:
                stack.append((g, e - 1))
            # multiply by a single g
            tail = [(t, vec[t]) for t in range(g + 1, n) if vec[t]]
            if not tail:
                vec[g] += 1
                if vec[g] == p:
                    vec[g] = 0
                    if power[g]:
                        stack.extend(reversed(power[g]))
                continue
            for t, _ in tail:
                vec[t] = 0
            vec[g] += 1
            pending = []
            if vec[g] == p:
                vec[g] = 0
                pending.extend(power[g])
            for t, ct in tail:
                cw = comm.get((t, g))
                if cw:
                    for _ in range(ct):
                        pending.append((t, 1))
                        pending.extend(cw)
                else:
                    pending.append((t, ct))
            stack.extend(reversed(pending))

    def collect(self, word):
        """Normal form of a word, given as (generator, exponent) pairs."""
        vec = [0] * self.ngens
        self._collect_into(vec, word)
        return tuple(vec)

    def mult(self, x, y):
        vec = list(x)
        self._collect_into(vec, [(i, e) for i, e in enumerate(y) if e])
        return tuple(vec)

    def inv(self, x):
        word = []
        acc = list(x)
        for i in range(self.ngens):
            e = acc[i]
            if e:
                self._collect_into(acc, [(i, -e)])
                word.append((i, -e))
        assert not any(acc), "inverse computation failed"
        return self.collect(word)

    def pow(self, x, e):
        if e < 0:
            return self.pow(self.inv(x), -e)
        result = self._identity
        base = x
        while e:
            if e & 1:
                result = self.mult(result, base)
            base = self.mult(base, base)
            e >>= 1
        return result

    def commutator(self, x, y):
        """[x, y] = x^-1 y^-1 x y."""
        xy = self.mult(x, y)
        yx = self.mult(y, x)
        return self.mult(self.inv(yx), xy)

    def conjugate(self, x, y):
        """x^y = y^-1 x y."""
        return self.mult(self.inv(y), self.mult(x, y))

    def element_order(self, x):
        k = 1
        while x != self._identity:
            x = self.pow(x, self.p)
            k *= self.p
        return k

    # -- consistency ---------------------------------------------------

    def consistency_checks(self):
        """Yield (tag, lhs, rhs) for every overlap test, in a fixed order."""
        p = self.p
        for k in range(2, self.ngens):
            gk = self.gen(k)
            for j in range(1, k):
                gj = self.gen(j)
                gkj = self.mult(gk, gj)
                for i in range(j):
                    gi = self.gen(i)
                    lhs = self.mult(gkj, gi)
                    rhs = self.mult(gk, self.mult(gj, gi))
                    yield ("assoc", k, j, i), lhs, rhs
        for j in range(1, self.ngens):
            gj = self.gen(j)
            gjp = self.collect(self.power[j])
            gjq = self.pow(gj, p - 1)
            for i in range(j):
                gi = self.gen(i)
                yield (("power_left", j, i),
                       self.mult(gjp, gi),
                       self.mult(gjq, self.mult(gj, gi)))
        for j in range(1, self.ngens):
            gj = self.gen(j)
            for i in range(j):
                gi = self.gen(i)
                gip = self.collect(self.power[i])
                yield (("power_right", j, i),
                       self.mult(gj, gip),
                       self.mult(self.mult(gj, gi), self.pow(gi, p - 1)))
        for i in range(self.ngens):
            gi = self.gen(i)
            gip = self.collect(self.power[i])
            yield (("power_self", i),
                   self.mult(gi, gip),
                   self.mult(gip, gi))

    def is_consistent(self):
        return all(lhs == rhs for _, lhs, rhs in self.consistency_checks())

    # -- misc ----------------------------------------------------------

    def __repr__(self):
        return f"PcPresentation(p={self.p}, ngens={self.ngens})"

    def describe(self):
        lines = [f"p = {self.p}, generators: "
                 + ", ".join(self.label(i) for i in range(self.ngens))
                 + f", order = {self.p}^{self.ngens}"]
        for i, w in enumerate(self.power):
            rhs = self.word_str(w)
            lines.append(f"{self.label(i)}^{self.p} = {rhs}")
        for (j, i), w in sorted(self.comm.items()):
            lines.append(f"[{self.label(j)}, {self.label(i)}] = {self.word_str(w)}")
        return "\n".join(lines)

    def word_str(self, word):
        if not word:
            return "1"
        parts = []
        for g, e in word:
            parts.append(self.label(g) + (f"^{e}" if e != 1 else ""))
        return "*".join(parts)

    def element_str(self, x):
        return self.word_str(tuple((i, e) for i, e in enumerate(x) if e))


TRIVIAL_WORD = ()


def trivial_group(p=3):
    return PcPresentation(p, 0)


# -- abelian invariants ----------------------------------------------


@dataclass(frozen=True, order=True)
class AbelianType:
    """Finite abelian p-group as a non-increasing list of prime powers."""

    divisors: tuple = field(default=())

    def __post_init__(self):
        if list(self.divisors) != sorted(self.divisors, reverse=True):
            raise ValueError("divisors must be non-increasing")
        if any(d < 2 for d in self.divisors):
            raise ValueError("divisors must be >= 2")

    @staticmethod
    def from_divisors(divisors):
        return AbelianType(tuple(sorted((d for d in divisors if d > 1), reverse=True)))

    @property
    def order(self):
        result = 1
        for d in self.divisors:
            result *= d
        return result

    @property
    def rank(self):
        return len(self.divisors)

    @property
    def exponent(self):
        return self.divisors[0] if self.divisors else 1

    def is_homocyclic(self):
        return len(set(self.divisors)) <= 1

    def exponents_of(self, p):
        """The divisors as powers of p; raises if any is not a p-power."""
        out = []
        for d in self.divisors:
            e = 0
            while d > 1:
                if d % p:
                    raise ValueError(f"divisor {d} is not a power of {p}")
                d //= p
                e += 1
            out.append(e)
        return out

    def __str__(self):
        if not self.divisors:
            return "1"
        return " x ".join(f"Z{d}" for d in self.divisors)


# -- subgroups -------------------------------------------------------


class Subgroup:
    """A subgroup given by an induced (echelonized) polycyclic sequence."""

    def __init__(self, amb, basis):
        self.amb = amb
        self.basis = tuple(basis)
        leads = [_leading(b) for b in self.basis]
        if leads != sorted(leads) or len(set(leads)) != len(leads):
            raise ValueError("basis is not in echelon form")

    @property
    def order(self):
        return self.amb.p ** len(self.basis)

    @property
    def log_order(self):
        return len(self.basis)

    def sift(self, x):
        """Reduce x against the basis; the residue is trivial iff x is a member."""
        p = self.amb.p
        for b in self.basis:
            lead = _leading(b)
            c = x[lead]
            if c:
                x = self.amb.mult(self.amb.pow(b, -c), x)
        return x

    def contains(self, x):
        return self.sift(x) == self.amb.identity()

    def coords(self, x):
        """Exponents (c_1, ..., c_m) with x = b_1^c_1 * ... * b_m^c_m."""
        out = []
        for b in self.basis:
            c = x[_leading(b)]
            out.append(c)
            if c:
                x = self.amb.mult(self.amb.pow(b, -c), x)
        if x != self.amb.identity():
            raise ValueError("element is not in the subgroup")
        return tuple(out)

    def from_coords(self, coords):
        x = self.amb.identity()
        for b, c in zip(self.basis, coords):
            if c:
                x = self.amb.mult(x, self.amb.pow(b, c))
        return x

    def elements(self):
        """All elements (only sensible for small subgroups)."""
        out = [self.amb.identity()]
        for b in self.basis:
            powers = [self.amb.pow(b, e) for e in range(self.amb.p)]
            out = [self.amb.mult(x, q) for x in out for q in powers]
        return out

    def leading_indices(self):
        return [_leading(b) for b in self.basis]

    def issubset(self, other):
        return all(other.contains(b) for b in self.basis)

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and self.amb is other.amb
                and self.basis == other.basis)

    def __hash__(self):
        return hash((id(self.amb), self.basis))

    def __repr__(self):
        return f"Subgroup(order={self.amb.p}^{len(self.basis)})"


def _leading(x):
    for i, e in enumerate(x):
        if e:
            return i
    raise ValueError("identity has no leading index")


def subgroup_closure(P, gens, normal=False):
    """Subgroup (or normal closure) generated by `gens`, echelonized.

    The echelon basis has strictly increasing leading indices with leading
    coefficient 1; membership testing is by sifting.
    """
    p = P.p
    identity = P.identity()
    basis = {}  # leading index -> element

    def sift(x):
        while x != identity:
            lead = _leading(x)
            b = basis.get(lead)
            if b is None:
                return x
            x = P.mult(P.pow(b, -x[lead]), x)
        return x

    queue = [tuple(g) for g in gens]
    amb_gens = P.gens() if normal else []
    while queue:
        x = sift(queue.pop())
        if x == identity:
            continue
        lead = _leading(x)
        c = x[lead]
        if c != 1:
            x = P.pow(x, pow(c, -1, p))
            assert x[lead] == 1
        basis[lead] = x
        queue.append(P.pow(x, p))
        for other in list(basis.values()):
            if other is not x:
                queue.append(P.commutator(x, other))
                queue.append(P.commutator(other, x))
        for g in amb_gens:
            queue.append(P.commutator(x, g))
    ordered = [basis[lead] for lead in sorted(basis)]
    return Subgroup(P, ordered)


def trivial_subgroup(P):
    return Subgroup(P, ())


def full_subgroup(P):
    return Subgroup(P, P.gens())


def derived_subgroup(P):
    gens = []
    for j in range(1, P.ngens):
        for i in range(j):
            gens.append(P.commutator(P.gen(j), P.gen(i)))
    return subgroup_closure(P, gens, normal=True)


def lower_central_series(P):
    """[G = gamma_1, gamma_2, ...] down to the trivial subgroup."""
    series = [full_subgroup(P)]
    current = derived_subgroup(P)
    series.append(current)
    while current.basis:
        gens = [P.commutator(b, g) for b in current.basis for g in P.gens()]
        nxt = subgroup_closure(P, gens, normal=True)
        if nxt.basis == current.basis:
            raise AssertionError("lower central series does not terminate")
        series.append(nxt)
        current = nxt
    return series


def frattini_subgroup(P):
    gens = [P.pow(g, P.p) for g in P.gens()]
    gens += list(derived_subgroup(P).basis)
    return subgroup_closure(P, gens, normal=True)


def nilpotency_class(P):
    if P.ngens == 0:
        return 0
    return len(lower_central_series(P)) - 1


def center(P):
    """The center, by induction along the chain of prime central layers.

    Works layer by layer over GF(p); no element enumeration, so it scales
    to stem covers of order up to ~3^17.
    """
    p = P.p
    n = P.ngens
    gens = P.gens()
    current = full_subgroup(P)
    for k in range(n):
        if not current.basis:
            break
        # current = {x : [x, G] <= H_k}; refine to [x, G] <= H_{k+1}
        rows = []
        for b in current.basis:
            row = []
            for g in gens:
                c = P.commutator(b, g)
                assert not any(c[:k]), "central series invariant violated"
                row.append(c[k])
            rows.append(row)
        null = _left_nullspace_mod_p(rows, p)
        new_gens = [current.from_coords(v) for v in null]
        new_gens += [P.pow(b, p) for b in current.basis]
        for s in range(len(current.basis)):
            for t in range(s + 1, len(current.basis)):
                new_gens.append(P.commutator(current.basis[s], current.basis[t]))
        current = subgroup_closure(P, new_gens)
        assert len(current.basis) == len(null), "center layer computation failed"
    return current


def _left_nullspace_mod_p(rows, p):
    """Basis of {v : v * rows = 0 mod p}; rows is m x q."""
    m = len(rows)
    if m == 0:
        return []
    q = len(rows[0])
    # transpose and row-reduce: solve rows^T * v = 0
    mat = [[rows[i][j] % p for i in range(m)] for j in range(q)]
    pivots = []
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, q) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][col], -1, p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(q):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fcol in free:
        v = [0] * m
        v[fcol] = 1
        for rr, pcol in enumerate(pivots):
            v[pcol] = (-mat[rr][fcol]) % p
        basis.append(tuple(v))
    return basis


def is_normal(P, N):
    return all(N.contains(P.commutator(b, g))
               for b in N.basis for g in P.gens())


def centralizes(P, x, sub):
    return all(P.commutator(x, b) == P.identity() for b in sub.basis)


# -- quotients -------------------------------------------------------


class QuotientMap:
    """Projection G -> G/N onto a quotient presentation."""

    def __init__(self, source, target, nsub, keep):
        self.source = source
        self.target = target
        self.nsub = nsub
        self.keep = tuple(keep)

    def __call__(self, x):
        rep = self.nsub.sift(x)
        assert all(rep[i] == 0 for i in self.nsub.leading_indices())
        return tuple(rep[i] for i in self.keep)

    def lift(self, y):
        x = [0] * self.source.ngens
        for i, e in zip(self.keep, y):
            x[i] = e
        word = [(i, e) for i, e in zip(self.keep, y) if e]
        return self.source.collect(word)


def quotient(P, N):
    """Quotient presentation and projection map for a normal subgroup N."""
    if not is_normal(P, N):
        raise ValueError("subgroup is not normal")
    dead = set(N.leading_indices())
    keep = [i for i in range(P.ngens) if i not in dead]
    reindex = {old: new for new, old in enumerate(keep)}

    def rep_word(x):
        r = N.sift(x)
        return tuple((reindex[i], e) for i, e in enumerate(r) if e)

    power = []
    for i in keep:
        w = rep_word(P.pow(P.gen(i), P.p))
        power.append(w)
    comm = {}
    for bnew, bold in enumerate(keep):
        for anew, aold in enumerate(keep[:bnew]):
            w = rep_word(P.commutator(P.gen(bold), P.gen(aold)))
            if w:
                comm[(bnew, anew)] = w
    labels = {reindex[i]: P.labels[i] for i in keep if i in P.labels}
    Q = PcPresentation(P.p, len(keep), power, comm, labels)
    return Q, QuotientMap(P, Q, N, keep)


def abelian_invariants(P, N, M=None):
    """Elementary divisors of the abelian section N/M."""
    from .snf import smith_normal_form

    if M is None:
        M = trivial_subgroup(P)
    if not M.issubset(N):
        raise ValueError("M is not contained in N")
    for s, bs in enumerate(N.basis):
        for bt in N.basis[s + 1:]:
            if not M.contains(P.commutator(bs, bt)):
                raise ValueError("section N/M is not abelian")
    m = len(N.basis)
    if m == 0:
        return AbelianType()
    rows = []
    for i, b in enumerate(N.basis):
        row = [0] * m
        row[i] = P.p
        for j, c in enumerate(N.coords(P.pow(b, P.p))):
            row[j] -= c
        rows.append(row)
    for b in M.basis:
        rows.append([c for c in N.coords(b)])
    res = smith_normal_form(rows, ncols=m)
    divisors = [d for d in res.diagonal if d > 1]
    if res.cokernel_free_rank():
        raise AssertionError("abelian section has unexpected free rank")
    at = AbelianType.from_divisors(divisors)
    assert at.order * M.order == N.order, "section order mismatch"
    return at


def abelianization_type(P):
    return abelian_invariants(P, full_subgroup(P), derived_subgroup(P))


# -- structure stats -------------------------------------------------


@dataclass(frozen=True)
class StructureStats:
    n: int              # log_p |G|
    k: int              # log_p |G'|
    d: int              # minimal generator count
    nilpotency_class: int
    quotient_type: AbelianType   # type of G/G'
    quotient_exponent: int
    homocyclic: bool


def structure_stats(P):
    derived = derived_subgroup(P)
    frat = frattini_subgroup(P)
    qt = abelian_invariants(P, full_subgroup(P), derived)
    return StructureStats(
        n=P.ngens,
        k=len(derived.basis),
        d=P.ngens - len(frat.basis),
        nilpotency_class=nilpotency_class(P),
        quotient_type=qt,
        quotient_exponent=qt.exponent,
        homocyclic=qt.is_homocyclic(),
    )


def direct_product(P1, P2):
    """Direct product of two presentations over the same prime."""
    if P1.p != P2.p:
        raise ValueError("prime mismatch in direct product")
    n1 = P1.ngens
    power = [tuple(w) for w in P1.power]
    power += [tuple((g + n1, e) for g, e in w) for w in P2.power]
    comm = dict(P1.comm)
    for (j, i), w in P2.comm.items():
        comm[(j + n1, i + n1)] = tuple((g + n1, e) for g, e in w)
    labels = dict(P1.labels)
    for i, lab in P2.labels.items():
        labels[i + n1] = lab + "'" if lab in P1.labels.values() else lab
    return PcPresentation(P1.p, n1 + P2.ngens, power, comm, labels,
                          check_consistent=False)
