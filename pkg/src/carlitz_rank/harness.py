"""carlitz_rank.harness — the verification campaigns.

    verify_main        f + g permutation  =>  degree bound, fiber bound, pole count
    verify_monomial    f + c x^k permutation (last pole 0)  =>  monomial bound,
                       and mu equals the affine curve count
    verify_corollary   L1 of rank n < (q-1)/2  =>  not a complete mapping
    example_f9         the rank-3 example over F_9, scanned over every generator
    mu_sweep           k = 1 collision counts against their closed form and
                       the fast collision tallies against the pair-scan oracle
    curve_sweep        character-sum curve counts against the double loop,
                       the Hasse-Weil floor and the parabola bound
    run_campaign       dispatch + report file

Forms are grouped by the Carlitz rank of their expansion, not by their
length: a theorem's n is the rank. For the two degree bounds each cell scans
the distinct maps of rank exactly n for permutation hits (f + g only depends
on the map), then checks every form of the required class behind each hit:
forms of one map can differ in their last approximant.

Every asserted verdict lands in a Witness's `checks`; a False entry makes a
counterexample. Proof-internal bounds that are not theorem statements (the
lower bounds on mu) are observed only, counted, and logged as discrepancies.
"""

from __future__ import annotations

import functools
import logging
import math
import time
from collections import Counter
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

import numpy as np

from .bounds import (
    BoundKind,
    collision_count,
    collision_count_bruteforce,
    k1_mu_formula,
    legacy_predicates,
    main_bound,
    main_mu_floor,
    monomial_bound,
    monomial_mu_floor,
    nontriviality,
    pole_consistency,
)
from .campaign import (
    CampaignConfig,
    CampaignKind,
    CampaignReport,
    CellResult,
    FieldRef,
    Witness,
    cell_rng,
    execute_cells,
    write_report,
)
from .carlitz import (
    CarlitzForm,
    FormClass,
    carlitz_rank,
    classify,
    count_forms,
    enumerate_coeffs,
    expand_form,
    expand_images,
    normalize_last,
    rank_index,
)
from .curves import curve_affine_count, curve_brute_counts
from .errors import BudgetExceededError, ConfigInvalidError
from .field import FieldSpec, construct_field, generators
from .poly import PermMap, Poly, is_complete_mapping, is_permutation, linearity

logger = logging.getLogger(__name__)

MAX_DISCREPANCIES_PER_CELL = 3


# ---------------------------------------------------------------------------
# rank-exact pools
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RankPool:
    """Distinct maps of rank exactly n, each with every form of the wanted
    class that expands to it (in enumeration order)."""

    spec: FieldSpec
    n: int
    forms_scanned: int
    class_counts: Mapping[str, int]
    entries: tuple[tuple[tuple[int, ...], tuple[CarlitzForm, ...]], ...]

    @property
    def images(self) -> np.ndarray:
        return np.array([images for images, _ in self.entries], dtype=np.int64).reshape(
            len(self.entries), self.spec.q)

    @property
    def form_count(self) -> int:
        return sum(len(forms) for _, forms in self.entries)


def rank_exact_pool(spec: FieldSpec, n: int, *, l2_only: bool = False,
                    max_forms: int | None = None) -> RankPool:
    if max_forms is not None and count_forms(spec, n) > max_forms:
        raise BudgetExceededError(f"forms of length {n} over {spec.label}",
                                  estimate=count_forms(spec, n), budget=max_forms)
    return _rank_exact_pool(spec, n, l2_only)


@functools.lru_cache(maxsize=64)
def _rank_exact_pool(spec: FieldSpec, n: int, l2_only: bool) -> RankPool:
    index = rank_index(spec)
    index.extend_to(n)
    scanned = 0
    classes: Counter[str] = Counter()
    chosen: dict[tuple[int, ...], list[CarlitzForm]] = {}
    for coeffs in enumerate_coeffs(spec, n):
        images = expand_images(spec, coeffs)
        if index.ranks[images][0] != n:
            continue
        scanned += 1
        form = CarlitzForm(spec, coeffs)
        cls = classify(form)
        classes[cls.value] += 1
        wanted = cls is FormClass.L1_AND_L2 if l2_only else cls.in_l1
        if wanted:
            chosen.setdefault(images, []).append(form)
    logger.debug("%s n=%d: %d rank-exact forms, %d pooled maps",
                 spec.label, n, scanned, len(chosen))
    return RankPool(spec, n, scanned, dict(sorted(classes.items())),
                    tuple((images, tuple(forms)) for images, forms in chosen.items()))


# ---------------------------------------------------------------------------
# vectorized tables
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=32)
def field_arrays(spec: FieldSpec) -> tuple[np.ndarray, np.ndarray]:
    """(add, mul) as q x q integer arrays."""
    q = spec.q
    add = np.array([spec.add_row(a) for a in range(q)], dtype=np.int64)
    mul = np.array([[spec.mul(x, y) for y in range(q)] for x in range(q)], dtype=np.int64)
    return add, mul


def poly_tables(spec: FieldSpec, coeffs: np.ndarray) -> np.ndarray:
    """Value tables of many polynomials at once (rows: lowest degree first)."""
    add, mul = field_arrays(spec)
    xs = np.arange(spec.q)
    acc = np.zeros((coeffs.shape[0], spec.q), dtype=np.int64)
    for i in range(coeffs.shape[1] - 1, -1, -1):
        acc = add[mul[acc, xs], coeffs[:, i:i + 1]]
    return acc


def degree_k_coeffs(q: int, k: int) -> np.ndarray:
    """Every polynomial of degree exactly k, lexicographic in (g_0, ..., g_k)."""
    axes = [np.arange(q)] * k + [np.arange(1, q)]
    grids = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)


def sum_is_permutation(spec: FieldSpec, f_images: np.ndarray,
                       tables: np.ndarray) -> np.ndarray:
    """Row mask: f + table is a bijection (f one row or one row per table)."""
    add, _ = field_arrays(spec)
    f = f_images if f_images.ndim == 2 else f_images[None, :]
    sums = add[f, tables]
    sums.sort(axis=1)
    return (sums == np.arange(spec.q)).all(axis=1)


def _poly(spec: FieldSpec, row: np.ndarray) -> Poly:
    return Poly(spec, tuple(int(c) for c in row))


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------


def main_witness(spec: FieldSpec, form: CarlitzForm, g: Poly,
                 rank: int | None = None) -> Witness:
    n, k = form.n, g.degree
    f = expand_form(form)
    coll = collision_count(form, g)
    bound = main_bound(spec.q, n, k)
    floor = main_mu_floor(spec.q, k, coll.mu)
    return Witness(
        campaign=CampaignKind.MAIN, p=spec.p, r=spec.r, form=str(form),
        g=g.codes(), n=n, k=k, nu=bound.nu, mu=coll.mu, fibers=coll.fibers,
        rank=n if rank is None else rank, form_class=classify(form).value,
        bounds=[bound], mu_floor=floor,
        checks={"sum_is_permutation": is_permutation(f + g),
                "main_bound": bound.holds,
                "fiber_bound": coll.fiber_bound_holds,
                "pole_consistency": pole_consistency(form, g, coll)},
        observed={"mu_floor": floor.holds,
                  "nontrivial": nontriviality(spec.q, k)})


def monomial_witness(spec: FieldSpec, form: CarlitzForm, k: int, c: int,
                     rank: int | None = None) -> Witness:
    n = form.n
    g = Poly.monomial(spec, k, c)
    f = expand_form(form)
    coll = collision_count(form, g)
    bound = monomial_bound(spec.q, n, k)
    curve = curve_affine_count(spec, k, normalize_last(form).b, c)
    floor = monomial_mu_floor(spec.q, k, coll.mu)
    checks = {"sum_is_permutation": is_permutation(f + g),
              "monomial_bound": bound.holds,
              "fiber_bound": coll.fiber_bound_holds,
              "pole_consistency": pole_consistency(form, g, coll),
              "curve_identity": coll.mu == curve.affine_count}
    if bound.m1_specialization is not None:
        checks["m1_specialization"] = bound.m1_specialization
    return Witness(
        campaign=CampaignKind.MONOMIAL, p=spec.p, r=spec.r, form=str(form),
        g=g.codes(), n=n, k=k, m=bound.m, mu=coll.mu, fibers=coll.fibers,
        rank=n if rank is None else rank, form_class=classify(form).value,
        bounds=[bound], mu_floor=floor, curve=curve, checks=checks,
        observed={"mu_floor": floor.holds}, values={"c": c})


def corollary_witness(spec: FieldSpec, form: CarlitzForm,
                      rank: int | None = None) -> Witness:
    """Complete-mapping verdicts of one form; asserted only for L1 forms."""
    n = form.n
    rank = n if rank is None else rank
    f = expand_form(form)
    complete = is_complete_mapping(f)
    lin = linearity(f)
    cls = classify(form)
    rank_floor = legacy_predicates(BoundKind.COMPLETE_RANK, q=spec.q, linearity=lin, rank=rank)
    checks: dict[str, bool] = {}
    if cls.in_l1:
        checks["linearity_bound"] = lin <= n + 2
        if 2 * n < spec.q - 1:
            checks["not_complete"] = not complete
    return Witness(
        campaign=CampaignKind.COROLLARY, p=spec.p, r=spec.r, form=str(form),
        n=n, rank=rank, linearity=lin, form_class=cls.value,
        bounds=[rank_floor], checks=checks,
        observed={"complete_mapping": complete, "rank_floor_consistent": rank_floor.holds})


def example_form(spec: FieldSpec, zeta: int) -> CarlitzForm:
    """(((x + zeta^5)^(q-2) + zeta^6)^(q-2) + zeta^3)^(q-2)."""
    return CarlitzForm(spec, (1, spec.pow(zeta, 5), spec.pow(zeta, 6),
                              spec.pow(zeta, 3), 0))


def example_witness(spec: FieldSpec, zeta: int) -> Witness:
    form = example_form(spec, zeta)
    f = expand_form(form)
    g = Poly.monomial(spec, 2)
    rank = carlitz_rank(f).rank
    cls = classify(form)
    observed = {"is_permutation": is_permutation(f),
                "rank_is_3": rank == 3,
                "sum_is_permutation": is_permutation(f + g)}
    mu = fibers = None
    if cls.in_l1:
        coll = collision_count(form, g)
        mu, fibers = coll.mu, coll.fibers
        if observed["sum_is_permutation"]:
            observed["pole_consistency"] = pole_consistency(form, g, coll)
    observed["all"] = all(observed[name] for name in
                          ("is_permutation", "rank_is_3", "sum_is_permutation"))
    return Witness(
        campaign=CampaignKind.EXAMPLE_F9, p=spec.p, r=spec.r, form=str(form),
        g=g.codes(), n=form.n, k=2, rank=rank, form_class=cls.value, mu=mu,
        fibers=fibers or [], observed=observed, values={"zeta": zeta})


def curve_witness(spec: FieldSpec, k: int, b: int, c: int) -> Witness:
    report = curve_affine_count(spec, k, b, c)
    brute_affine, brute_kummer = curve_brute_counts(spec, k, b, c)
    genus = (k - 1) * (math.gcd(k + 1, spec.q - 1) - 1) // 2
    checks = {"affine_matches_brute": report.affine_count == brute_affine,
              "kummer_matches_brute": report.kummer_count == brute_kummer,
              "parabola_bound": report.parabola_count <= 3 * k + 1,
              "genus": report.genus == genus}
    if report.floor_applies:
        checks["hasse_weil_floor"] = report.floor_holds
    return Witness(
        campaign=CampaignKind.CURVE_SWEEP, p=spec.p, r=spec.r, k=k, m=report.m,
        curve=report, checks=checks,
        observed={"affine_floor": report.affine_floor_holds},
        values={"b": b, "c": c, "brute_affine": brute_affine,
                "brute_kummer": brute_kummer})


def oracle_witness(spec: FieldSpec, form: CarlitzForm, g: Poly) -> Witness:
    """collision_count against the pair-scan oracle (and k = 1 closed form)."""
    coll = collision_count(form, g)
    brute = collision_count_bruteforce(form, g)
    checks = {"oracle": coll.mu == brute, "fiber_bound": coll.fiber_bound_holds}
    values = {"brute": brute}
    if g.degree == 1:
        product = spec.neg(spec.div(coll.b_tilde, g.coeffs[1]))
        values["k1_formula"] = k1_mu_formula(spec, product)
        checks["k1_formula"] = coll.mu == values["k1_formula"]
    return Witness(
        campaign=CampaignKind.MU_SWEEP, p=spec.p, r=spec.r, form=str(form),
        g=g.codes(), n=form.n, k=g.degree, mu=coll.mu, fibers=coll.fibers,
        form_class=classify(form).value, checks=checks, values=values)


def product_tally(spec: FieldSpec) -> Counter[int]:
    """Ordered pairs x != y in F_q* tallied by their product."""
    tally: Counter[int] = Counter()
    for x in range(1, spec.q):
        for y in range(1, spec.q):
            if x != y:
                tally[spec.mul(x, y)] += 1
    return tally


def tally_witness(spec: FieldSpec, b_tilde: int, brute: int | None = None) -> Witness:
    brute = product_tally(spec)[b_tilde] if brute is None else brute
    formula = k1_mu_formula(spec, b_tilde)
    return Witness(
        campaign=CampaignKind.MU_SWEEP, p=spec.p, r=spec.r, k=1, mu=brute,
        checks={"k1_formula": brute == formula},
        values={"b_tilde": b_tilde, "k1_formula": formula})


def replay_witness(witness: Witness) -> Witness:
    """Recompute a witness record from its inputs alone."""
    spec = construct_field(witness.p, witness.r)
    kind = witness.campaign
    if kind is CampaignKind.MAIN:
        return main_witness(spec, CarlitzForm.parse(spec, witness.form),
                            Poly(spec, tuple(witness.g)), rank=witness.rank)
    if kind is CampaignKind.MONOMIAL:
        return monomial_witness(spec, CarlitzForm.parse(spec, witness.form),
                                witness.k or 0, witness.values["c"], rank=witness.rank)
    if kind is CampaignKind.COROLLARY:
        return corollary_witness(spec, CarlitzForm.parse(spec, witness.form),
                                 rank=witness.rank)
    if kind is CampaignKind.EXAMPLE_F9:
        return example_witness(spec, witness.values["zeta"])
    if kind is CampaignKind.CURVE_SWEEP:
        return curve_witness(spec, witness.k or 0, witness.values["b"], witness.values["c"])
    if witness.form:
        return oracle_witness(spec, CarlitzForm.parse(spec, witness.form),
                              Poly(spec, tuple(witness.g)))
    return tally_witness(spec, witness.values["b_tilde"])


# ---------------------------------------------------------------------------
# cell plumbing
# ---------------------------------------------------------------------------


def _ref(config: CampaignConfig, p: int, r: int) -> FieldRef:
    for ref in config.fields:
        if (ref.p, ref.r) == (p, r):
            return ref
    raise ConfigInvalidError(f"no field GF({p}^{r}) in the campaign grid")


def _degrees(config: CampaignConfig, q: int) -> range:
    return range(1, min(config.k_max, q - 2) + 1)


def _record(cell: CellResult, witness: Witness, label: str) -> None:
    """File a pair witness: counterexample on any failed check."""
    if witness.failed:
        logger.error("%s counterexample: form %s g %s fails %s",
                     label, witness.form, witness.g, ", ".join(witness.failed))
        cell.counterexamples.append(witness)
    elif not cell.witnesses:
        cell.witnesses.append(witness)
    if witness.mu_floor is not None and not witness.mu_floor.holds:
        cell.bump("mu_floor_discrepancies")
        if len(cell.discrepancies) < MAX_DISCREPANCIES_PER_CELL:
            message = (f"{label} n={witness.n} k={witness.k} form={witness.form} "
                       f"g={witness.g}: measured mu={witness.mu} is below the "
                       f"proof floor {witness.mu_floor.describe()}")
            logger.warning(message)
            cell.discrepancies.append(message)


def _minimal_k(witnesses: list[Witness]) -> list[Witness]:
    """Per (field, n), the first witness of the smallest k reached."""
    best: dict[tuple[int, int, int], Witness] = {}
    for w in witnesses:
        key = (w.p, w.r, w.n)
        if key not in best or (w.k or 0) < (best[key].k or 0):
            best[key] = w
    return [best[key] for key in sorted(best)]


def _cells(config: CampaignConfig, *, with_k: bool, n_min: int = 1) -> list[tuple[int, ...]]:
    keys = []
    for ref in config.fields:
        for n in range(n_min, config.n_limit(ref) + 1):
            if with_k:
                keys.extend((ref.p, ref.r, n, k) for k in _degrees(config, ref.q))
            else:
                keys.append((ref.p, ref.r, n))
    return keys


def _finish(config: CampaignConfig, cells: list[CellResult], started: float,
            *, minimal_k: bool = False) -> CampaignReport:
    report = CampaignReport.merge(config, cells)
    if minimal_k:
        report.witnesses = _minimal_k(report.witnesses)
    report.wall_time = time.perf_counter() - started
    logger.info("%s: %s in %.2fs (%s)", config.campaign.value, report.verdict,
                report.wall_time, ", ".join(f"{k}={v}" for k, v in report.counts.items()))
    return report


def _expect(config: CampaignConfig, kind: CampaignKind) -> None:
    if config.campaign is not kind:
        raise ConfigInvalidError(
            f"{kind.value} campaign given a {config.campaign.value} config")


# ---------------------------------------------------------------------------
# main bound
# ---------------------------------------------------------------------------


def _main_cell(config: CampaignConfig, key: tuple[int, ...]) -> CellResult:
    p, r, n, k = key
    spec = construct_field(p, r)
    q = spec.q
    ref = _ref(config, p, r)
    budget = config.budget_for(ref)
    cell = CellResult(key=key)
    pool = rank_exact_pool(spec, n, max_forms=config.max_pairs)
    cell.bump("forms_scanned", pool.forms_scanned)
    cell.bump("pool_maps", len(pool.entries))
    cell.bump("pool_forms", pool.form_count)
    label = f"Main {spec.label}"
    hits = 0

    def check(forms: tuple[CarlitzForm, ...], g: Poly) -> None:
        for form in forms:
            _record(cell, main_witness(spec, form, g, n), label)
        cell.bump("form_checks", len(forms))

    if pool.entries and budget == 0:
        coeffs = degree_k_coeffs(q, k)
        estimate = len(pool.entries) * len(coeffs)
        if estimate > config.max_pairs:
            raise BudgetExceededError(f"{label} n={n} k={k} exhaustive pairs",
                                      estimate=estimate, budget=config.max_pairs)
        tables = poly_tables(spec, coeffs)
        for images, forms in pool.entries:
            mask = sum_is_permutation(spec, np.asarray(images), tables)
            for j in np.flatnonzero(mask):
                hits += 1
                check(forms, _poly(spec, coeffs[j]))
        cell.bump("pairs_tested", estimate)
    elif pool.entries:
        rng = cell_rng(config, key)
        picks = rng.integers(0, len(pool.entries), size=budget)
        coeffs = np.hstack([rng.integers(0, q, size=(budget, k)),
                            rng.integers(1, q, size=(budget, 1))]).astype(np.int64)
        mask = sum_is_permutation(spec, pool.images[picks], poly_tables(spec, coeffs))
        for j in np.flatnonzero(mask):
            hits += 1
            check(pool.entries[int(picks[j])][1], _poly(spec, coeffs[j]))
        cell.bump("pairs_tested", budget)
        # the monic monomial x^k against every pooled map
        pinned = poly_tables(spec, np.array([[0] * k + [1]], dtype=np.int64))
        for images, forms in pool.entries:
            if sum_is_permutation(spec, np.asarray(images), pinned)[0]:
                hits += 1
                check(forms, Poly.monomial(spec, k))
        cell.bump("pinned_pairs", len(pool.entries))
    cell.bump("permutation_hits", hits)
    cell.rows.append({
        "campaign": config.campaign.value, "p": p, "r": r, "q": q, "n": n, "k": k,
        "mode": "exhaustive" if budget == 0 else "sampled",
        "pool_maps": len(pool.entries), "pool_forms": pool.form_count, "hits": hits,
        "counterexamples": len(cell.counterexamples),
        "main_bound": main_bound(q, n, k).holds, "nontrivial": nontriviality(q, k)})
    logger.debug("%s n=%d k=%d: %d hits", label, n, k, hits)
    return cell


def verify_main(config: CampaignConfig) -> CampaignReport:
    _expect(config, CampaignKind.MAIN)
    started = time.perf_counter()
    cells = execute_cells(config, _cells(config, with_k=True), _main_cell)
    return _finish(config, cells, started, minimal_k=True)


# ---------------------------------------------------------------------------
# monomial bound
# ---------------------------------------------------------------------------


def _monomial_cell(config: CampaignConfig, key: tuple[int, ...]) -> CellResult:
    p, r, n, k = key
    spec = construct_field(p, r)
    q = spec.q
    cell = CellResult(key=key)
    pool = rank_exact_pool(spec, n, l2_only=True, max_forms=config.max_pairs)
    cell.bump("forms_scanned", pool.forms_scanned)
    cell.bump("pool_maps", len(pool.entries))
    cell.bump("pool_forms", pool.form_count)
    label = f"Monomial {spec.label}"
    hits = 0
    if pool.entries:
        scalars = np.arange(1, q, dtype=np.int64)
        coeffs = np.hstack([np.zeros((q - 1, k), dtype=np.int64), scalars[:, None]])
        tables = poly_tables(spec, coeffs)
        for images, forms in pool.entries:
            mask = sum_is_permutation(spec, np.asarray(images), tables)
            for j in np.flatnonzero(mask):
                hits += 1
                for form in forms:
                    _record(cell, monomial_witness(spec, form, k, int(scalars[j]), n), label)
                cell.bump("form_checks", len(forms))
        cell.bump("pairs_tested", len(pool.entries) * (q - 1))
    cell.bump("permutation_hits", hits)
    bound = monomial_bound(q, n, k)
    cell.rows.append({
        "campaign": config.campaign.value, "p": p, "r": r, "q": q, "n": n, "k": k,
        "m": bound.m, "pool_maps": len(pool.entries), "pool_forms": pool.form_count,
        "hits": hits,
        "counterexamples": len(cell.counterexamples), "monomial_bound": bound.holds})
    return cell


def verify_monomial(config: CampaignConfig) -> CampaignReport:
    _expect(config, CampaignKind.MONOMIAL)
    started = time.perf_counter()
    cells = execute_cells(config, _cells(config, with_k=True), _monomial_cell)
    return _finish(config, cells, started, minimal_k=True)


# ---------------------------------------------------------------------------
# complete mappings
# ---------------------------------------------------------------------------


def _corollary_cell(config: CampaignConfig, key: tuple[int, ...]) -> CellResult:
    p, r, n = key
    spec = construct_field(p, r)
    q = spec.q
    if count_forms(spec, n) > config.max_pairs:
        raise BudgetExceededError(f"forms of length {n} over {spec.label}",
                                  estimate=count_forms(spec, n), budget=config.max_pairs)
    index = rank_index(spec)
    index.extend_to(n)
    cell = CellResult(key=key)
    in_hypothesis = 2 * n < q - 1
    # per map: (complete mapping?, linearity)
    verdicts: dict[tuple[int, ...], tuple[bool, int]] = {}
    flagged: set[tuple[int, ...]] = set()
    for coeffs in enumerate_coeffs(spec, n):
        images = expand_images(spec, coeffs)
        if index.ranks[images][0] != n:
            continue
        cell.bump("forms_scanned")
        form = CarlitzForm(spec, coeffs)
        cls = classify(form)
        if images not in verdicts:
            f = PermMap(spec, images)
            verdicts[images] = (is_complete_mapping(f), linearity(f))
        complete, lin = verdicts[images]
        if cls.in_l1:
            cell.bump("l1_forms")
            if not in_hypothesis:
                cell.bump("out_of_hypothesis")
                if complete:
                    cell.bump("complete_out_of_hypothesis")
            if (complete and in_hypothesis) or lin > n + 2:
                witness = corollary_witness(spec, form, rank=n)
                logger.error("CorollaryComplete %s: form %s fails %s",
                             spec.label, form, ", ".join(witness.failed))
                cell.counterexamples.append(witness)
        else:
            cell.bump("non_l1_forms")
            if complete and images not in flagged:
                flagged.add(images)
                cell.informational.append(corollary_witness(spec, form, rank=n))
    cell.bump("distinct_maps", len(verdicts))
    cell.rows.append({
        "campaign": config.campaign.value, "p": p, "r": r, "q": q, "n": n,
        "in_hypothesis": in_hypothesis, "forms": cell.counts.get("forms_scanned", 0),
        "distinct_maps": len(verdicts),
        "complete_maps": sum(1 for c, _ in verdicts.values() if c),
        "counterexamples": len(cell.counterexamples)})
    return cell


def verify_corollary(config: CampaignConfig) -> CampaignReport:
    _expect(config, CampaignKind.COROLLARY)
    started = time.perf_counter()
    cells = execute_cells(config, _cells(config, with_k=False), _corollary_cell)
    return _finish(config, cells, started)


# ---------------------------------------------------------------------------
# the F_9 example
# ---------------------------------------------------------------------------


def example_f9(config: CampaignConfig | None = None) -> CampaignReport:
    config = config or CampaignConfig.acceptance(CampaignKind.EXAMPLE_F9)
    _expect(config, CampaignKind.EXAMPLE_F9)
    started = time.perf_counter()
    spec = construct_field(3, 2)
    cell = CellResult(key=(3, 2))
    for zeta in generators(spec):
        witness = example_witness(spec, zeta)
        cell.witnesses.append(witness)
        cell.bump("generators")
        cell.rows.append({
            "zeta": zeta, "form": witness.form, "form_class": witness.form_class,
            "is_permutation": witness.observed["is_permutation"],
            "rank": witness.rank,
            "sum_is_permutation": witness.observed["sum_is_permutation"],
            "mu": witness.mu, "verdict": "PASS" if witness.observed["all"] else "FAIL"})
    passing = sum(1 for w in cell.witnesses if w.observed["all"])
    cell.bump("passing_generators", passing)
    if not passing:
        canonical = cell.witnesses[0]
        cell.counterexamples.append(canonical.model_copy(
            update={"checks": {"some_generator_passes": False}}))
    return _finish(config, [cell], started)


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------


def _random_l1_form(spec: FieldSpec, rng: np.random.Generator, n_max: int) -> CarlitzForm:
    q = spec.q
    while True:
        n = int(rng.integers(1, n_max + 1))
        coeffs = ([int(rng.integers(1, q)), int(rng.integers(0, q))]
                  + [int(c) for c in rng.integers(1, q, size=n - 1)]
                  + [int(rng.integers(0, q))])
        form = CarlitzForm(spec, tuple(coeffs))
        if classify(form).in_l1:
            return form


def _mu_cell(config: CampaignConfig, key: tuple[int, ...]) -> CellResult:
    p, r = key
    spec = construct_field(p, r)
    q = spec.q
    cell = CellResult(key=key)
    tally = product_tally(spec)
    for bt in range(1, q):
        cell.bump("products_checked")
        if tally[bt] != k1_mu_formula(spec, bt):
            cell.counterexamples.append(tally_witness(spec, bt, tally[bt]))
    # k = 1, g = x over every L1 form of length <= 2 (small fields only)
    k1_forms = 0
    if q <= 16:
        x = Poly.monomial(spec, 1)
        for n in range(1, min(config.n_max, 2) + 1):
            for coeffs in enumerate_coeffs(spec, n):
                form = CarlitzForm(spec, coeffs)
                if not classify(form).in_l1:
                    continue
                k1_forms += 1
                coll = collision_count(form, x)
                if coll.mu != k1_mu_formula(spec, spec.neg(coll.b_tilde)):
                    cell.counterexamples.append(oracle_witness(spec, form, x))
    cell.bump("k1_forms", k1_forms)
    rng = cell_rng(config, key)
    degrees = _degrees(config, q)
    for _ in range(config.oracle_samples if degrees else 0):
        form = _random_l1_form(spec, rng, max(config.n_max, 1))
        k = int(rng.integers(degrees.start, degrees.stop))
        g = Poly(spec, tuple(int(c) for c in rng.integers(0, q, size=k))
                 + (int(rng.integers(1, q)),))
        witness = oracle_witness(spec, form, g)
        cell.bump("oracle_samples")
        if witness.failed:
            cell.counterexamples.append(witness)
    cell.rows.append({
        "campaign": config.campaign.value, "p": p, "r": r, "q": q,
        "products_checked": q - 1, "k1_forms": k1_forms,
        "oracle_samples": cell.counts.get("oracle_samples", 0),
        "even": q % 2 == 0, "counterexamples": len(cell.counterexamples)})
    return cell


def mu_sweep(config: CampaignConfig) -> CampaignReport:
    _expect(config, CampaignKind.MU_SWEEP)
    started = time.perf_counter()
    keys = [(ref.p, ref.r) for ref in config.fields]
    return _finish(config, execute_cells(config, keys, _mu_cell), started)


def _curve_cell(config: CampaignConfig, key: tuple[int, ...]) -> CellResult:
    p, r, k = key
    spec = construct_field(p, r)
    q = spec.q
    cell = CellResult(key=key)
    rng = cell_rng(config, key)
    samples = rng.integers(1, q, size=(config.curve_samples, 2))
    worst_parabola = 0
    report = None
    for b, c in samples:
        witness = curve_witness(spec, k, int(b), int(c))
        report = witness.curve
        cell.bump("curves_checked")
        worst_parabola = max(worst_parabola, report.parabola_count)
        if witness.failed:
            logger.error("CurveSweep %s k=%d b=%d c=%d fails %s", spec.label, k,
                         int(b), int(c), ", ".join(witness.failed))
            cell.counterexamples.append(witness)
        if report.floor_applies:
            cell.bump("floor_checks")
    assert report is not None
    cell.rows.append({
        "campaign": config.campaign.value, "p": p, "r": r, "q": q, "k": k,
        "m": report.m, "genus": report.genus,
        "floor_positive": report.floor_positive, "floor_applies": report.floor_applies,
        "max_parabola": worst_parabola, "parabola_bound": 3 * k + 1,
        "samples": config.curve_samples, "counterexamples": len(cell.counterexamples)})
    return cell


def curve_sweep(config: CampaignConfig) -> CampaignReport:
    _expect(config, CampaignKind.CURVE_SWEEP)
    started = time.perf_counter()
    keys = [(ref.p, ref.r, k) for ref in config.fields for k in _degrees(config, ref.q)]
    return _finish(config, execute_cells(config, keys, _curve_cell), started)


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

CAMPAIGNS = {
    CampaignKind.MAIN: verify_main,
    CampaignKind.MONOMIAL: verify_monomial,
    CampaignKind.COROLLARY: verify_corollary,
    CampaignKind.EXAMPLE_F9: example_f9,
    CampaignKind.MU_SWEEP: mu_sweep,
    CampaignKind.CURVE_SWEEP: curve_sweep,
}


def run_campaign(config: CampaignConfig | Mapping[str, Any]) -> CampaignReport:
    """Run the configured campaign and write its report when `out` is set."""
    if not isinstance(config, CampaignConfig):
        config = CampaignConfig.build(**dict(config))
    report = CAMPAIGNS[config.campaign](config)
    if config.out is not None:
        write_report(report, config.out, config.format)
    return report


__all__ = [
    "CAMPAIGNS", "RankPool", "corollary_witness", "curve_sweep", "example_f9",
    "example_form", "example_witness", "main_witness", "monomial_witness",
    "mu_sweep", "rank_exact_pool", "replay_witness", "run_campaign",
    "verify_corollary", "verify_main", "verify_monomial",
]
