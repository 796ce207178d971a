"""Named verification suites with structured, reproducible reports."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import artinring as ar
from .errors import ChopFailure, ConfigError, IncompatibleInput, SylowNotNormal, UnknownSuite, UsageError
from .exactla.rings import is_field, parse_coeff_spec
from .exactla.snf import IntMatrix
from .groupalg import (
    group_algebra,
    maximal_ideal_extension,
    radical,
    radical_chain,
)
from .groups import (
    Subgroup,
    cyclic_subgroup_classes,
    elementary_abelian_subgroups,
    parse_group_spec,
    sylow_subgroup,
)
from .grothendieck import (
    artin_exponent_check,
    cartan_injectivity,
    cartan_kernel,
    cartan_table,
    class_kernel,
    frobenius_identity_check,
    k0_restriction_map,
)
from .modrep import (
    chop,
    decompose_projective,
    direct_sum,
    hom_space,
    induce,
    is_projective,
    pim_modules,
    quotient,
    regular_module,
    registry_for,
    restrict,
    spin,
    tensor_diagonal,
    trivial_module,
)
from .modrep.projective import radical_submodule_rows

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class Check:
    name: str
    status: str
    evidence: dict = field(default_factory=dict)

    def to_json(self):
        return {"name": self.name, "status": self.status, "evidence": _plain(self.evidence)}


@dataclass
class SuiteReport:
    suite: str
    group: str
    coeff: str
    seed: int
    checks: list = field(default_factory=list)
    anomalies: list = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def status(self) -> str:
        if any(c.status == FAIL for c in self.checks):
            return FAIL
        if self.checks and all(c.status == SKIPPED for c in self.checks):
            return SKIPPED
        return PASS

    def add(self, name, ok, **evidence):
        self.checks.append(Check(name, PASS if ok else FAIL, evidence))

    def skip(self, reason):
        self.checks.append(Check("applicability", SKIPPED, {"reason": reason}))

    def to_json(self, stable: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "inputs": {"group": self.group, "coeff": self.coeff, "seed": self.seed},
            "status": self.status,
            "checks": [c.to_json() for c in self.checks],
            "anomalies": _plain(self.anomalies),
        }
        if not stable:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


def _plain(x):
    """Convert numpy scalars/arrays and IntMatrix into JSON-ready values."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, IntMatrix):
        return x.tolist()
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    return x


# ---------------------------------------------------------------------------
# helpers


def _p_power_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def _is_power_of(x: int, p: int) -> bool:
    x = abs(x)
    while x > 1 and x % p == 0:
        x //= p
    return x == 1


def _residue_algebra(group, coeff):
    return group_algebra(group, coeff.residue_field)


def _is_diagonal_positive(rows):
    n = len(rows)
    return all((rows[i][j] > 0) if i == j else rows[i][j] == 0 for i in range(n) for j in range(n))


# ---------------------------------------------------------------------------
# suites


def suite_brauer_nesbitt(rep, group, coeff, seed):
    p = coeff.p
    if is_field(coeff):
        alg = group_algebra(group, coeff)
        table = cartan_table(alg, seed)
        det, inj = cartan_injectivity(alg, seed)
        dims = registry_for(alg).dims
        pims = pim_modules(alg)
        rows_ok = all(sum(c * d for c, d in zip(r, dims)) == P.module.dim for r, P in zip(table.tolist(), pims))
        rep.add("cartan_rows", rows_ok, cartan=table, simple_dims=dims, pim_dims=[P.module.dim for P in pims])
        rep.add("det_nonzero", inj, det=det)
        ker = cartan_kernel(alg, seed)
        maps = [k0_restriction_map(alg, c, seed) for c in cyclic_subgroup_classes(group)]
        inter = class_kernel(ker, maps)
        rep.add("cyclic_class_kernel_zero", ker.cols == 0 and inter.cols == 0, kernel_rank=ker.cols)
    else:
        alg = group_algebra(group, coeff)
        cc = ar.cartan_chain(alg, seed)
        kdims = registry_for(_residue_algebra(group, coeff)).dims
        ranks = [P.module.dim for P in ar.chain_pims(alg, seed)]
        rows_ok = all(
            sum(c * d for c, d in zip(r, kdims)) == coeff.length * rk for r, rk in zip(cc.table.tolist(), ranks)
        )
        rep.add("cartan_rows", rows_ok, cartan=cc.table, simple_dims=kdims, pim_ranks=ranks, length=coeff.length)
        det, inj = cc.det, cc.det != 0
        rep.add("det_nonzero", inj, det=det)
    if group.order % p == 0 and not _is_power_of(det, p):
        rep.anomalies.append({"observation": "det is not a power of p", "det": det})


def suite_cyclic_diagonal(rep, group, coeff, seed):
    if not group.is_cyclic():
        raise IncompatibleInput("cyclic_diagonal needs a cyclic group")
    p = coeff.p
    pa = _p_power_part(group.order, p)
    if is_field(coeff):
        alg = group_algebra(group, coeff)
        rows = cartan_table(alg, seed).tolist()
        rep.add("diagonal_positive", _is_diagonal_positive(rows), cartan=rows)
        rep.add("diagonal_equals_p_part", all(rows[i][i] == pa for i in range(len(rows))), p_part=pa)
        pims = pim_modules(alg)
        offdiag = [
            len(hom_space(pims[i].module, pims[j].module))
            for i in range(len(pims))
            for j in range(len(pims))
            if i != j
        ]
        rep.add("hom_between_pims_zero", all(x == 0 for x in offdiag), hom_dims=offdiag)
    else:
        cc = ar.cartan_chain(group_algebra(group, coeff), seed)
        rows = cc.table.tolist()
        t = coeff.length
        rep.add("diagonal_positive", _is_diagonal_positive(rows), cartan=rows)
        rep.add("diagonal_equals_t_p_part", all(rows[i][i] == t * pa for i in range(len(rows))), p_part=pa, length=t)


def suite_semisimple(rep, group, coeff, seed):
    p = coeff.p
    if group.order % p == 0:
        raise IncompatibleInput("semisimple needs p not dividing the group order")
    alg = group_algebra(group, coeff)
    if is_field(coeff):
        J = radical(alg)
        rep.add("radical_zero", J.dim == 0, radical_dim=J.dim)
        rows = cartan_table(alg, seed).tolist()
        n = len(rows)
        rep.add("cartan_identity", rows == [[int(i == j) for j in range(n)] for i in range(n)], cartan=rows)
        S = registry_for(alg).simples
        pims = pim_modules(alg)
        rep.add("pims_are_simple", [P.module.dim for P in pims] == [s.dim for s in S], dims=[s.dim for s in S])
    else:
        J = radical_chain(alg)
        M = maximal_ideal_extension(alg)
        rep.add("radical_is_rad_R_times_group_ring", J == M, radical_rows=J.dim)
        cc = ar.cartan_chain(alg, seed)
        rows = cc.table.tolist()
        n, t = len(rows), coeff.length
        rep.add("cartan_t_identity", rows == [[t * int(i == j) for j in range(n)] for i in range(n)], cartan=rows)


def suite_scaling(rep, group, coeff, seed):
    if is_field(coeff):
        raise IncompatibleInput("scaling needs a chain ring of length > 1")
    alg = group_algebra(group, coeff)
    kalg = _residue_algebra(group, coeff)
    t = coeff.length
    cc = ar.cartan_chain(alg, seed)
    rep.add("cartan_scaling", cc.scaling_ok, chain=cc.table, field=cc.field_table, length=t)
    rep.add("det_relation", cc.det_relation_ok and cc.det != 0, det=cc.det, field_det=cc.field_det)
    pims = ar.chain_pims(alg, seed)
    kpims = pim_modules(kalg)
    layers_ok = True
    red_ok = True
    for P, kP in zip(pims, kpims):
        gp = ar.graded_pieces(P.module)
        layers_ok &= len(gp) == t and all(d == P.module.dim for d in gp.dims)
        red = ar.reduce_mod_max(P.module)
        red_ok &= chop(red, seed) == chop(kP.module, seed)
        red_ok &= list(decompose_projective(red, seed)) == [int(j == P.simple) for j in range(len(pims))]
    rep.add("layer_dims", layers_ok)
    rep.add("reduced_pims_match_field_pims", red_ok)
    regular = ar.chain_regular_module(alg)
    cls = ar.chain_class(regular, seed)
    base = chop(ar.reduce_mod_max(regular), seed)
    rep.add("regular_layers_sum", cls == base.scaled(t), layers=list(cls), reduction=list(base))


def suite_globaldim_witness(rep, group, coeff, seed):
    if not is_field(coeff):
        raise IncompatibleInput("globaldim_witness is a statement over a field")
    p = coeff.p
    if group.order % p:
        raise IncompatibleInput("globaldim_witness needs p dividing the group order")
    alg = group_algebra(group, coeff)
    u = alg.group_sum()
    rep.add("u_central", u.is_central())
    rep.add("u_squared_zero", (u * u).is_zero())
    reg = regular_module(alg)
    sub = spin(reg, [u.coeffs])
    trivial_action = all(np.array_equal(a, np.eye(1, dtype=np.int64)) for a in sub.module.actions)
    rep.add("u_spans_trivial_line", sub.dim == 1 and trivial_action, dim=sub.dim)
    q = quotient(reg, sub.basis)
    rep.add("quotient_not_projective", not is_projective(q, seed), dim=q.dim)


def suite_lemma46(rep, group, coeff, seed):
    try:
        res = ar.lemma46_suite(coeff, group)
    except SylowNotNormal as exc:
        raise IncompatibleInput(str(exc)) from exc
    ev = {k: v for k, v in res.items() if k != "checks"}
    for name, ok in res["checks"].items():
        rep.add(name, ok, **ev)


def suite_artin(rep, group, coeff, seed):
    k = coeff.residue_field
    res = artin_exponent_check(group, k, seed)
    ev = dict(
        exponent=res.exponent,
        divisors=list(res.divisors),
        free_rank=res.free_rank,
        class_representatives=res.representatives,
        cyclic_subgroups=res.all_cyclic,
        field=k.spec(),
    )
    rep.add("cokernel_finite", res.free_rank == 0, **ev)
    rep.add("exponent_divides_order_squared", res.bound_ok, order=group.order)
    rep.add("conjugates_do_not_change_image", res.invariant_under_conjugates)


def _frobenius_subgroup(group, p):
    syl = sylow_subgroup(group, p)
    if 1 < syl.order < group.order:
        return syl
    proper = [c for c in cyclic_subgroup_classes(group) if c.order < group.order]
    return max(proper, key=lambda c: c.order)


def suite_frobenius(rep, group, coeff, seed):
    if not is_field(coeff):
        raise IncompatibleInput("the ring structure of G0 is only implemented over a field")
    sub = _frobenius_subgroup(group, coeff.p)
    samples = frobenius_identity_check(group, sub, coeff, samples=8, seed=seed)
    for i, s in enumerate(samples):
        rep.add(f"sample_{i}", s["pass"], subgroup_order=sub.order, **{k: v for k, v in s.items() if k != "pass"})


# -- Chouinard ---------------------------------------------------------------


def projectivity_subgroups(group, p):
    """The Sylow subgroup and the maximal elementary abelian subgroups inside it."""
    syl = sylow_subgroup(group, p)
    h = syl.as_group
    elems = []
    for e in elementary_abelian_subgroups(h, p):
        if e.maximal:
            elems.append(Subgroup(group, tuple(sorted(syl.elements[i] for i in e.elements))))
    return syl, elems


def chouinard_corpus(group, field, seed: int = 1):
    """At least ten field modules: PIM sums, induced modules, quotients and extensions."""
    alg = group_algebra(group, field)
    p = field.p
    rng = np.random.default_rng(seed)
    pims = [P.module for P in pim_modules(alg)]
    simples = registry_for(alg).simples
    reg = regular_module(alg)
    u = alg.group_sum()
    out = [("regular", reg)]
    out += [(f"pim_{i}", P) for i, P in enumerate(pims)]
    out.append(("pim_sum", direct_sum(pims[0], pims[-1])))
    out.append(("regular_mod_u", quotient(reg, spin(reg, [u.coeffs]).basis)))
    out.append(("trivial", trivial_module(group, field)))
    out += [(f"simple_{i}", s) for i, s in enumerate(simples[:3])]
    out.append(("radical_of_regular", _radical_module(reg)))
    syl = sylow_subgroup(group, p)
    out.append(("induced_from_sylow", induce(trivial_module(syl.as_group, field), syl)))
    cyc = [c for c in cyclic_subgroup_classes(group) if c.order == p]
    if cyc:
        out.append(("induced_from_order_p", induce(trivial_module(cyc[0].as_group, field), cyc[0])))
    out.append(("tensor_pim_simple", tensor_diagonal(pims[0], simples[-1])))
    out.append(("trivial_plus_pim", direct_sum(trivial_module(group, field), pims[0])))
    for k in range(2):
        v = rng.integers(0, p, size=group.order)
        if not np.any(v):
            v[0] = 1
        out.append((f"random_quotient_{k}", quotient(reg, spin(reg, [v]).basis)))
    out = [(name, m) for name, m in out if m.dim > 0]
    return out


def _radical_module(m):
    from .modrep import submodule

    return submodule(m, radical_submodule_rows(m)).module


def chouinard_verdicts(m, syl, elems, seed: int = 1):
    full = is_projective(m, seed)
    sylow = is_projective(restrict(m, syl), seed)
    elem = all(is_projective(restrict(m, e), seed) for e in elems)
    return full, sylow, elem


def chain_chouinard_corpus(group, ring, seed: int = 1):
    alg = group_algebra(group, ring)
    pims = [P.module for P in ar.chain_pims(alg, seed)]
    out = [("regular", ar.chain_regular_module(alg))]
    out += [(f"pim_{i}", P) for i, P in enumerate(pims)]
    out.append(("pim_sum", ar.chain_direct_sum(pims[0], pims[-1])))
    out.append(("regular_mod_u", ar.chain_regular_mod_sum(alg)))
    triv = ar.chain_trivial_module(group, ring)
    out.append(("trivial", triv))
    out.append(("trivial_plus_pim", ar.chain_direct_sum(triv, pims[0])))
    syl = sylow_subgroup(group, ring.p)
    out.append(("induced_from_sylow", ar.chain_induce(ar.chain_trivial_module(syl.as_group, ring), syl)))
    for c in cyclic_subgroup_classes(group):
        if c.order < group.order:
            out.append((f"induced_from_cyclic_{c.order}", ar.chain_induce(ar.chain_trivial_module(c.as_group, ring), c)))
    mod_u = out[len(pims) + 2][1]
    out.append(("trivial_twice", ar.chain_direct_sum(triv, triv)))
    out.append(("regular_mod_u_plus_pim", ar.chain_direct_sum(mod_u, pims[-1])))
    out.append(("regular_plus_trivial", ar.chain_direct_sum(out[0][1], triv)))
    return [(name, m) for name, m in out if m.dim > 0]


def chain_chouinard_verdicts(m, syl, elems, seed: int = 1):
    """Projectivity of an R-free module is decided on its reduction mod the maximal ideal."""

    def proj(x):
        return is_projective(ar.reduce_mod_max(x), seed)

    return proj(m), proj(ar.chain_restrict(m, syl)), all(proj(ar.chain_restrict(m, e)) for e in elems)


def suite_chouinard(rep, group, coeff, seed):
    p = coeff.p
    if group.order % p:
        raise IncompatibleInput("chouinard needs p dividing the group order")
    syl, elems = projectivity_subgroups(group, p)
    if is_field(coeff):
        corpus = chouinard_corpus(group, coeff, seed)
        verdict = chouinard_verdicts
    else:
        corpus = chain_chouinard_corpus(group, coeff, seed)
        verdict = chain_chouinard_verdicts
    seen = set()
    for name, m in corpus:
        v = verdict(m, syl, elems, seed)
        seen.add(v[0])
        rep.add(f"agree_{name}", len(set(v)) == 1, dim=m.dim, full=v[0], sylow=v[1], elementary_abelian=v[2])
    rep.add(
        "both_kinds_present",
        seen == {True, False},
        modules=len(corpus),
        sylow_order=syl.order,
        elementary_abelian=[e.order for e in elems],
    )
    rep.add("corpus_size", len(corpus) >= 10, modules=len(corpus))


# -- Krull-Schmidt -----------------------------------------------------------


def _random_mults(rng, n):
    while True:
        v = [int(x) for x in rng.integers(0, 3, size=n)]
        if 0 < sum(v) <= 3:
            return v


def suite_krull_schmidt(rep, group, coeff, seed, pairs: int = 20):
    rng = np.random.default_rng(seed)
    field = is_field(coeff)
    if field:
        alg = group_algebra(group, coeff)
        pims = [P.module for P in pim_modules(alg)]
    else:
        alg = group_algebra(group, coeff)
        pims = [P.module for P in ar.chain_pims(alg, seed)]
    n = len(pims)

    def build(mults, order):
        parts = [pims[i] for i in order for _ in range(mults[i])]
        if field:
            return parts[0] if len(parts) == 1 else direct_sum(*parts)
        m = ar.chain_direct_sum(*parts)
        m.pim_multiplicities = tuple(mults)
        return m

    def cls(m):
        return chop(m, seed) if field else ar.chain_class(m, seed)

    def decomp(m):
        return list(decompose_projective(m if field else ar.reduce_mod_max(m), seed))

    recovered = equiv = True
    eq_pairs = neq_pairs = 0
    records = []
    for k in range(pairs):
        a = _random_mults(rng, n)
        b = list(a) if k % 2 == 0 else _random_mults(rng, n)
        P = build(a, range(n))
        Q = build(b, list(reversed(range(n))))
        same_class = cls(P) == cls(Q)
        same_vec = a == b
        recovered &= decomp(P) == a and decomp(Q) == b
        equiv &= same_class == same_vec
        eq_pairs += same_vec
        neq_pairs += not same_vec
        records.append({"p": a, "q": b, "same_class": same_class})
        if not field and same_vec:
            equiv &= ar.lemma35_check(alg, P, Q, seed).holds
    rep.add("decomposition_recovers_construction", recovered)
    rep.add("class_equality_iff_multiplicity_equality", equiv, samples=records)
    rep.add("both_directions_exercised", eq_pairs > 0 and neq_pairs > 0, equal=eq_pairs, unequal=neq_pairs)


SUITES = {
    "brauer_nesbitt": suite_brauer_nesbitt,
    "cyclic_diagonal": suite_cyclic_diagonal,
    "semisimple": suite_semisimple,
    "scaling": suite_scaling,
    "chouinard": suite_chouinard,
    "krull_schmidt": suite_krull_schmidt,
    "globaldim_witness": suite_globaldim_witness,
    "lemma46": suite_lemma46,
    "artin": suite_artin,
    "frobenius": suite_frobenius,
}


def run_suite(name: str, group_spec: str, coeff_spec: str, seed: int = 1) -> SuiteReport:
    """Run one suite; raises IncompatibleInput when the suite does not apply."""
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    group = parse_group_spec(group_spec)
    coeff = parse_coeff_spec(coeff_spec)
    rep = SuiteReport(name, group_spec, coeff.spec(), seed)
    start = time.perf_counter()
    try:
        SUITES[name](rep, group, coeff, seed)
    except ChopFailure as exc:
        rep.checks.append(Check("computation", FAIL, {"error": str(exc)}))
    rep.elapsed_ms = (time.perf_counter() - start) * 1000
    return rep


def run_suite_or_skip(name, group_spec, coeff_spec, seed=1) -> SuiteReport:
    try:
        return run_suite(name, group_spec, coeff_spec, seed)
    except IncompatibleInput as exc:
        rep = SuiteReport(name, group_spec, parse_coeff_spec(coeff_spec).spec(), seed)
        rep.skip(str(exc))
        return rep


# ---------------------------------------------------------------------------
# corpus

DEFAULT_GROUPS = ["C2", "C3", "C4", "C6", "C8", "C12", "C2xC2", "C2xC4", "C2xC2xC2", "D8", "Q8", "S3", "S4", "A4", "D12"]
DEFAULT_PRIMES = [2, 3, 5]
DEFAULT_RINGS = ["F{p}", "Z/{p}^2", "Z/{p}^3", "F{p}[t]/t^2"]


def default_corpus() -> dict:
    return {"groups": DEFAULT_GROUPS, "primes": DEFAULT_PRIMES, "rings": DEFAULT_RINGS}


def corpus_points(config: dict):
    """``[(group spec, coeff spec)]`` in deterministic order."""
    if not isinstance(config, dict):
        raise ConfigError("corpus config must be a JSON object")
    if "points" in config:
        pts = config["points"]
        if not isinstance(pts, list):
            raise ConfigError("'points' must be a list")
        out = []
        for pt in pts:
            if not isinstance(pt, dict) or "group" not in pt or "coeff" not in pt:
                raise ConfigError("each point needs 'group' and 'coeff'")
            out.append((str(pt["group"]), str(pt["coeff"])))
        return out
    try:
        groups = list(config["groups"])
        primes = [int(p) for p in config["primes"]]
        rings = list(config.get("rings", ["F{p}"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"corpus config needs 'groups' and 'primes' lists ({exc})") from exc
    return [(g, r.format(p=p)) for g in groups for p in primes for r in rings]


def load_corpus(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read corpus config: {exc}") from exc


def run_corpus(config=None, seed: int = 1, suites=None, progress=None) -> list[SuiteReport]:
    """Every suite on every corpus point; inapplicable pairs are recorded as skipped."""
    config = default_corpus() if config is None else config
    points = corpus_points(config)
    names = list(suites) if suites is not None else list(config.get("suites", SUITES))
    for n in names:
        if n not in SUITES:
            raise ConfigError(f"unknown suite {n!r} in corpus config")
    reports = []
    for group_spec, coeff_spec in points:
        try:
            parse_group_spec(group_spec)
            parse_coeff_spec(coeff_spec)
        except UsageError as exc:
            raise ConfigError(f"bad corpus point ({group_spec}, {coeff_spec}): {exc}") from exc
        for n in names:
            rep = run_suite_or_skip(n, group_spec, coeff_spec, seed)
            reports.append(rep)
            if progress is not None:
                progress(rep)
    return reports
