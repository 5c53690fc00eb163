"""Bound formulas, per-group attainment reports, family fingerprint
matching, the named structural condition checks, quotient attainment,
and the classification sweep.

The central bound is |M(G)| <= p^((d-1)(n+k-2)/2 + 1) for a group of
order p^n with |G'| = p^k and d generators.  Attainment comparisons are
done in doubled exponents so that odd products never force rounding.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import catalog
from .capability import epicenter, is_capable
from .homology import (abelian_multiplier, be_sequence, psi2_image,
                       schur_multiplier, stem_cover, thm25_check)
from .pcp import (abelian_invariants, center, derived_subgroup,
                  full_subgroup, lower_central_series, quotient,
                  structure_stats, subgroup_closure, trivial_subgroup)


def bounds(n, k, d):
    """The three multiplier bound exponents for given (n, k, d).

    green = n(n-1)/2; the class-independent refinement is
    (n-k-1)(n+k-2)/2 + 1; the generator-sensitive refinement is
    (d-1)(n+k-2)/2 + 1.  All three are asserted integral here; callers
    that must handle half-integral cases use the doubled forms below.
    """
    if n < 1 or not (0 <= k < n) or not (1 <= d <= n - k):
        raise ValueError(f"bad parameters (n={n}, k={k}, d={d})")
    green2 = n * (n - 1)
    nir2 = (n - k - 1) * (n + k - 2) + 2
    rai2 = (d - 1) * (n + k - 2) + 2
    for name, v in (("green", green2), ("niroomand", nir2), ("rai", rai2)):
        if v % 2:
            raise AssertionError(f"{name} exponent is not integral at "
                                 f"(n={n}, k={k}, d={d})")
    return {"green": green2 // 2, "niroomand": nir2 // 2, "rai": rai2 // 2}


def _doubled(n, k, d):
    """(green, niroomand, rai) bound exponents, doubled to stay integral."""
    return (n * (n - 1),
            (n - k - 1) * (n + k - 2) + 2,
            (d - 1) * (n + k - 2) + 2)


@dataclass(frozen=True)
class GroupReport:
    p: int
    n: int
    k: int
    d: int
    nilpotency_class: int
    quotient_type: object
    multiplier: object
    multiplier_exponent: int
    green_exponent: int
    niroomand_exponent: Fraction
    rai_exponent: Fraction
    t: int                      # Green corank n(n-1)/2 - log_p|M|
    attains_rai: bool
    attains_niroomand: bool
    capable: bool
    family_match: str

    def to_json_dict(self, group_desc, checks=None):
        def num(x):
            return int(x) if x == int(x) else float(x)
        doc = {
            "group": group_desc,
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "class": self.nilpotency_class,
            "multiplier": list(self.multiplier.divisors),
            "bounds": {"green": self.green_exponent,
                       "niroomand": num(self.niroomand_exponent),
                       "rai": num(self.rai_exponent)},
            "attains": {"niroomand": self.attains_niroomand,
                        "rai": self.attains_rai},
            "capable": self.capable,
            "family": self.family_match,
        }
        if checks is not None:
            doc["checks"] = [{"name": c.name, "pass": c.passed}
                             for c in checks]
        return doc


def _fingerprint(P, mult=None):
    st = structure_stats(P)
    ztype = abelian_invariants(P, center(P))
    if mult is None:
        mult = schur_multiplier(P)
    return (P.p, P.ngens, st.k, st.d, st.nilpotency_class,
            st.quotient_type.divisors, ztype.divisors, mult.divisors)


def _family_candidates(P, st):
    """Family instances whose coarse parameters fit P, for fingerprinting."""
    p, n = P.p, P.ngens
    out = []
    if p != 2 and st.nilpotency_class == 2 and st.k == 1 and n >= 3:
        out.append((f"G1(p={p},n={n})", lambda: catalog.g1(p, n)))
    if st.k == 1 and st.d == 2 and n % 2 == 1 and n >= 5:
        m = (n - 1) // 2
        if m >= 2:
            out.append((f"G2(p={p},m={m})", lambda: catalog.g2(p, m)))
    if p != 2 and n == 5 and st.k == 2 and st.d == 3:
        out.append((f"G3(p={p})", lambda: catalog.g3(p)))
    if p != 2 and st.d == 2 and st.k >= 2 and n % 3 == 0 and n // 3 >= 2:
        out.append((f"G4(p={p},m={n // 3})", lambda: catalog.g4(p, n // 3)))
    if p != 2 and n == 6 and st.k == 3 and st.d == 3:
        out.append((f"G5(p={p})", lambda: catalog.g5(p)))
    if p == 3 and n == 7 and st.nilpotency_class == 3:
        out.append(("G6(p=3)", catalog.g6))
    return out


def family_match(P, mult=None):
    """Fingerprint match of P against the classified attainer families."""
    st = structure_stats(P)
    fp = _fingerprint(P, mult)
    for tag, build in _family_candidates(P, st):
        try:
            candidate = build()
        except catalog.FamilyParameterError:
            continue
        if _fingerprint(candidate) == fp:
            return tag
    return None


def report(P, cover=None):
    """Full attainment report for a consistent presentation."""
    st = structure_stats(P)
    if cover is None:
        cover = stem_cover(P)
    mult = cover.multiplier_type()
    p = P.p
    mexp = 0
    order = mult.order
    while order > 1:
        order //= p
        mexp += 1
    n, k, d = st.n, st.k, st.d
    green2, nir2, rai2 = _doubled(n, k, max(d, 1))
    nonabelian = k >= 1
    return GroupReport(
        p=p, n=n, k=k, d=d,
        nilpotency_class=st.nilpotency_class,
        quotient_type=st.quotient_type,
        multiplier=mult,
        multiplier_exponent=mexp,
        green_exponent=green2 // 2,
        niroomand_exponent=Fraction(nir2, 2),
        rai_exponent=Fraction(rai2, 2),
        t=green2 // 2 - mexp,
        attains_rai=nonabelian and 2 * mexp == rai2,
        attains_niroomand=nonabelian and 2 * mexp == nir2,
        capable=is_capable(cover),
        family_match=family_match(P, mult),
    )


def report_record(P, group_desc):
    """The full JSON-shaped record: report fields plus the check list."""
    rep = report(P)
    checks = check_attainer_conditions(P, rep)
    return rep.to_json_dict(group_desc, checks)


# -- named structural checks ------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    applicable: bool
    passed: bool
    detail: str = ""

    def to_json_dict(self):
        return {"name": self.name, "pass": self.passed,
                "applicable": self.applicable}


def check_attainer_conditions(P, rep=None):
    """The battery of structural conditions tied to bound attainment.

    Conditions that require attainment (or class 2, etc.) are reported
    as applicable=False when the hypothesis fails; an inapplicable check
    always passes.
    """
    if rep is None:
        rep = report(P)
    out = []
    cls = rep.nilpotency_class
    attains = rep.attains_rai

    def add(name, applicable, passed, detail=""):
        out.append(CheckResult(name, applicable, passed if applicable else True,
                               detail))

    add("homocyclic_quotient", attains, rep.quotient_type.is_homocyclic(),
        f"G/G' = {rep.quotient_type}")
    add("generator_count_2_or_3", attains and rep.k >= 2, rep.d in (2, 3),
        f"d = {rep.d}")
    add("attainer_capable", attains, rep.capable)
    add("no_two_generator_class3_attainer", True,
        not (attains and rep.d == 2 and cls >= 3))
    add("class3_attainer_elementary_quotient", attains and cls >= 3,
        rep.d == 3 and rep.quotient_type.exponent == P.p,
        f"d = {rep.d}, G/G' = {rep.quotient_type}")

    if cls == 2:
        z = center(P)
        gq = abelian_invariants(*_central_quotient(P, z))
        dtype = abelian_invariants(P, derived_subgroup(P))
        add("center_quotient_exponent", True, gq.exponent == dtype.exponent,
            f"e(G/Z) = {gq.exponent}, e(G') = {dtype.exponent}")
        dq = _minimal_generators_of_quotient(P, z)
        add("derived_rank_bound", True,
            dtype.rank <= dq * (dq - 1) // 2,
            f"d(G') = {dtype.rank}, d(G/Z) = {dq}")
    tag = rep.family_match or ""
    if tag.startswith("G2(") or tag.startswith("G4("):
        ztype = abelian_invariants(P, center(P))
        m = (P.ngens - 1) // 2 if tag.startswith("G2(") else P.ngens // 3
        if tag.startswith("G2("):
            expected = tuple(sorted([P.p ** (m - 1), P.p ** (m - 1), P.p],
                                    reverse=True))
        else:
            expected = (P.p ** m,)
        add("center_structure", True, ztype.divisors == expected,
            f"Z(G) = {ztype}, expected divisors {expected}")
    add("nonnegative_corank", True, rep.t >= 0, f"t = {rep.t}")
    add("bound_monotonic", rep.d <= rep.n - rep.k,
        rep.rai_exponent <= rep.niroomand_exponent)
    return out


def _central_quotient(P, z):
    return P, full_subgroup(P), z


def _minimal_generators_of_quotient(P, N):
    """d(G/N) = log_p of (G/N) / Phi(G/N)."""
    Q, _ = quotient(P, N)
    from .pcp import frattini_subgroup
    return Q.ngens - frattini_subgroup(Q).log_order


# -- quotient attainment ----------------------------------------------


@dataclass(frozen=True)
class QuotientAttainmentReport:
    central_results: tuple    # (description, expected_exp2, actual_exp2, ok)
    gamma_results: tuple      # (i, ok)
    all_ok: bool


def _central_derived_elementary_layer(P):
    """The subgroup of central elements of order <= p inside G'."""
    derived = derived_subgroup(P)
    gens = P.gens()
    members = [x for x in derived.elements()
               if P.pow(x, P.p) == P.identity()
               and all(P.commutator(x, g) == P.identity() for g in gens)]
    members = [x for x in members if x != P.identity()]
    if not members:
        return trivial_subgroup(P)
    return subgroup_closure(P, members)


def check_quotient_attainment(P, rep=None):
    """Attainment of the reduced bound by G/K for every central K of
    order p inside G', and by every lower-central-series quotient."""
    if rep is None:
        rep = report(P)
    if not rep.attains_rai or rep.k < 2:
        raise ValueError("requires an attainer with |G'| >= p^2")
    p = P.p
    n, k, d = rep.n, rep.k, rep.d
    layer = _central_derived_elementary_layer(P)
    r = len(layer.basis)
    central = []
    # one subgroup of order p per projective point of the layer
    seen = set()
    import itertools
    for coords in itertools.product(range(p), repeat=r):
        if not any(coords):
            continue
        first = next(i for i, c in enumerate(coords) if c)
        if coords[first] != 1:
            continue
        x = layer.from_coords(coords)
        K = subgroup_closure(P, [x])
        key = tuple(sorted(K.basis))
        if key in seen:
            continue
        seen.add(key)
        Q, _ = quotient(P, K)
        actual2 = 2 * _log_p(schur_multiplier(Q).order, p)
        expected2 = (d - 1) * (n + k - 4) + 2
        central.append((P.element_str(x), expected2, actual2,
                        actual2 == expected2))
    gamma = []
    series = lower_central_series(P)
    cls = len(series) - 1
    for i in range(3, cls + 1):
        Q, _ = quotient(P, series[i - 1])
        gamma.append((i, report(Q).attains_rai))
    ok = all(c[3] for c in central) and all(g[1] for g in gamma)
    return QuotientAttainmentReport(tuple(central), tuple(gamma), ok)


def _log_p(value, p):
    e = 0
    while value > 1:
        if value % p:
            raise ValueError(f"{value} is not a power of {p}")
        value //= p
        e += 1
    return e


# -- classification sweep ---------------------------------------------


@dataclass(frozen=True)
class SweepEntry:
    name: str
    report: GroupReport


@dataclass(frozen=True)
class SweepReport:
    entries: tuple
    attainers: tuple           # names attaining the generator-sensitive bound
    family_matches: tuple      # names fingerprint-matching a classified family
    classification_ok: bool    # attainers == family_matches, as sets
    class2_refined_attainers: tuple   # class-2 names attaining the refined bound
    class2_classification_ok: bool

    def to_json_dict(self):
        return {
            "entries": [e.report.to_json_dict(e.name) for e in self.entries],
            "attainers": list(self.attainers),
            "family_matches": list(self.family_matches),
            "classification_ok": self.classification_ok,
            "class2_refined_attainers": list(self.class2_refined_attainers),
            "class2_classification_ok": self.class2_classification_ok,
        }


def sweep_universe(p, max_exponent=4, deep=False):
    """Named list of groups for the classification sweep."""
    groups = []
    for e in range(3, max_exponent + 1):
        for i, P in enumerate(catalog.small_group_table(p, e)):
            groups.append((f"order_p{e}_{i + 1}", P))
    if p != 2:
        for n in (3, 4, 5):
            groups.append((f"G1(n={n})", catalog.g1(p, n)))
        groups.append(("G2(m=2)", catalog.g2(p, 2)))
        groups.append(("G3", catalog.g3(p)))
        groups.append(("G4(m=2)", catalog.g4(p, 2)))
        groups.append(("G5", catalog.g5(p)))
        groups.append(("MIN_NONAB_A(3,2)", catalog.min_nonabelian_a(p, 3, 2)))
        groups.append(("MIN_NONAB_B(2,2)", catalog.min_nonabelian_b(p, 2, 2)))
    else:
        groups.append(("MIN_NONAB_A(3,2)", catalog.min_nonabelian_a(2, 3, 2)))
    if p == 3 and deep:
        groups.append(("G6", catalog.g6()))
    return groups


def sweep_classification(p, max_exponent=4, deep=False, jobs=1):
    """Verify that bound attainers are exactly the classified families.

    Also checks the class-2 classification for the refined (d = n-k)
    bound: class-2 attainers of that bound must fingerprint-match one of
    its three stated families (which coincide with G1, G3, G5 here).
    """
    groups = sweep_universe(p, max_exponent, deep)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            reports = list(ex.map(report, [P for _, P in groups]))
        entries = [SweepEntry(name, r)
                   for (name, _), r in zip(groups, reports)]
    else:
        entries = [SweepEntry(name, report(P)) for name, P in groups]
    attainers = tuple(e.name for e in entries if e.report.attains_rai)
    matches = tuple(e.name for e in entries if e.report.family_match)
    class2 = tuple(e.name for e in entries
                   if e.report.nilpotency_class == 2
                   and e.report.attains_niroomand)
    class2_families = ("G1(", "G3(", "G5(")
    class2_ok = all(
        e.report.family_match is not None
        and e.report.family_match.startswith(class2_families)
        for e in entries if e.name in class2)
    return SweepReport(
        entries=tuple(entries),
        attainers=attainers,
        family_matches=matches,
        classification_ok=set(attainers) == set(matches),
        class2_refined_attainers=class2,
        class2_classification_ok=class2_ok,
    )
