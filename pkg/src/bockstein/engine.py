"""Windowed multiplicative Bockstein spectral-sequence engine.

Bidegrees are (t, s): t is the abutment topological degree (a class a*v^s
contributes s*|v| to t) and s is the v-filtration, so d_r maps
(t, s) -> (t-1, s+r).  E_1 of a run is A[v] (or A[v^{+-1}] in localized
mode); schedules inject page-indexed rules which the engine extends as a
derivation, and per-bidegree homology is computed by exact Gaussian
elimination over F_p with echelon-pivot representatives under the
canonical monomial order.

Honesty model: the computation runs on a grid strictly larger than the
reported window 0..D.  A bidegree whose incoming differential would cross
the grid edge is flagged indeterminate, flags infect their targets, and
the grid is padded so flags provably cannot creep into the reported
region.  A tower is certified infinite only when, for every fired page,
both the page's source slant and the tower's own differential support are
observed to die inside the grid (their dimensions and ranks are
non-increasing along a slant, so a first zero is final), and no rule
beyond the emitted schedule can hit the tower's base degree.  Anything
less yields an explicit "unknown" with an advisory lower bound.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .algebra import (
    EXTERIOR,
    LAURENT,
    POLYNOMIAL,
    Algebra,
    Element,
    GeneratorSpec,
    Monomial,
    basis_in_degree,
    element_degree,
    mul_monomials,
    multiply,
)
from .formulas import LambdaFamily, deg_mu, nu_p, r_conj, r_len
from .towers import INF, TowerProfile, Unknown


class EngineError(RuntimeError):
    pass


class EngineAssertionError(EngineError):
    """Internal consistency violation (d o d != 0 and friends); exit code 3."""


class ScheduleError(ValueError):
    pass


class MalformedRuleError(ScheduleError):
    pass


class DeadSourceError(ScheduleError):
    pass


class AmbiguousPatternError(ScheduleError):
    pass


@dataclass(frozen=True)
class Window:
    """Results are reported (and trusted) on 0..max_degree only."""

    max_degree: int
    buffer: int = 1

    def __post_init__(self) -> None:
        if self.max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        if self.buffer < 1:
            raise ValueError("buffer must be >= 1")


def as_window(w) -> Window:
    return w if isinstance(w, Window) else Window(int(w))


EXACT = "exact"
POWER = "power"


@dataclass(frozen=True)
class Rule:
    source: Monomial   # monomial of A, no v factor
    target: Element    # element over A[v], v-exponent equal to the page
    mode: str = POWER


@dataclass
class RulePage:
    r: int
    rules: List[Rule]
    # power mode: exterior generator index -> mu-exponent attached to it in
    # the surviving page-generator factorization (lambda-family expansions)
    attach: Dict[int, int] = field(default_factory=dict)


@dataclass
class DifferentialSchedule:
    v: GeneratorSpec
    pages: Dict[int, RulePage]
    label: str = ""
    meta: Dict[str, object] = field(default_factory=dict)
    # smallest tower-base degree a not-emitted rule could create boundaries
    # on (None = schedule complete), and the smallest not-emitted page
    future_target_floor: Optional[int] = None
    future_min_page: Optional[int] = None

    @property
    def max_page(self) -> int:
        return max(self.pages) if self.pages else 0

    @property
    def rules(self) -> Dict[int, List[Tuple[Monomial, Element]]]:
        return {r: [(rule.source, dict(rule.target)) for rule in pg.rules]
                for r, pg in sorted(self.pages.items())}

    def future_targets_hit(self, base_degree: int) -> bool:
        return self.future_target_floor is not None and base_degree >= self.future_target_floor


@dataclass
class Cell:
    """State of one bidegree on one page.

    reps is None for an untouched cell (all monomials alive, no boundaries);
    otherwise rows of coefficients over the cell's monomial list.
    """

    monomials: Tuple[Monomial, ...]
    reps: Optional[List[List[int]]] = None
    boundaries: List[List[int]] = field(default_factory=list)
    flag: bool = False

    @property
    def dim(self) -> int:
        return len(self.monomials) if self.reps is None else len(self.reps)

    def reps_rows(self) -> List[List[int]]:
        if self.reps is None:
            n = len(self.monomials)
            return [[1 if j == i else 0 for j in range(n)] for i in range(n)]
        return [list(r) for r in self.reps]

    def solver(self, p: int) -> linalg.CosetSolver:
        return linalg.CosetSolver(self.reps_rows(), self.boundaries, len(self.monomials), p)


@dataclass(frozen=True)
class GridSpec:
    t_lo: int
    t_hi: int
    s_lo: int
    s_hi: int


class EngineContext:
    """Shared immutable state of one run: algebra, v, grid, basis cache."""

    def __init__(self, A: Algebra, v: GeneratorSpec, grid: GridSpec, localized: bool) -> None:
        if any(g.name == v.name for g in A.generators):
            raise ScheduleError(f"v generator {v.name!r} already present in the algebra")
        if localized and v.degree == 0:
            raise ScheduleError("localized mode requires |v| > 0")
        self.A = A
        self.v = v
        self.deg_v = v.degree
        self.localized = localized
        vkind = LAURENT if localized else POLYNOMIAL
        self.Av = A.adjoin(GeneratorSpec(v.name, v.degree, vkind))
        self.v_index = self.Av.ngens - 1
        self.grid = grid
        self._basis: Dict[int, Tuple[Monomial, ...]] = {}

    def basis(self, adeg: int) -> Tuple[Monomial, ...]:
        if adeg < 0:
            return ()
        got = self._basis.get(adeg)
        if got is None:
            got = tuple(basis_in_degree(self.A, adeg))
            self._basis[adeg] = got
        return got

    def in_grid(self, key: Tuple[int, int]) -> bool:
        t, s = key
        g = self.grid
        return g.t_lo <= t <= g.t_hi and g.s_lo <= s <= g.s_hi

    def adeg(self, key: Tuple[int, int]) -> int:
        t, s = key
        return t - s * self.deg_v

    def potential_class(self, key: Tuple[int, int]) -> bool:
        """Could E_1 be nonzero at this (possibly out-of-grid) bidegree?"""
        t, s = key
        if s < 0 and not self.localized:
            return False
        return bool(self.basis(t - s * self.deg_v))

    def make_cells(self) -> Dict[Tuple[int, int], Cell]:
        cells: Dict[Tuple[int, int], Cell] = {}
        g = self.grid
        for s in range(g.s_lo, g.s_hi + 1):
            lo = max(0, g.t_lo - s * self.deg_v)
            hi = g.t_hi - s * self.deg_v
            for adeg in range(lo, hi + 1):
                mons = self.basis(adeg)
                if mons:
                    cells[(adeg + s * self.deg_v, s)] = Cell(mons)
        return cells


@dataclass
class DiffRecord:
    target: Tuple[int, int]
    matrix: List[List[int]]  # rows: source reps, cols: target reps
    rank: int


@dataclass
class PageData:
    r: int
    cells: Dict[Tuple[int, int], Cell]
    ctx: EngineContext
    # differentials of THIS page, filled in when the page is applied
    diffs: Dict[Tuple[int, int], DiffRecord] = field(default_factory=dict)
    applied_rules: Optional[RulePage] = None

    def dim(self, t: int, s: int) -> int:
        cell = self.cells.get((t, s))
        return cell.dim if cell else 0

    def dims_snapshot(self) -> Dict[Tuple[int, int], int]:
        return {k: c.dim for k, c in self.cells.items() if c.dim}


def build_e1(A: Algebra, v: GeneratorSpec, w, localized: bool = False,
             grid: Optional[GridSpec] = None) -> PageData:
    """E_1 = A[v] (A[v^{+-1}] when localized) on the window's grid."""
    w = as_window(w)
    if grid is None:
        t_hi = w.max_degree + w.buffer
        if v.degree > 0:
            s_hi = t_hi // v.degree
            s_lo = -s_hi if localized else 0
        else:
            if localized:
                raise ScheduleError("localized mode requires |v| > 0")
            s_hi, s_lo = w.buffer, 0
        grid = GridSpec(-t_hi if localized else 0, t_hi, s_lo, s_hi)
    ctx = EngineContext(A, v, grid, localized)
    return PageData(1, ctx.make_cells(), ctx)


def advance_to(pd: PageData, r: int) -> PageData:
    """Jump over rule-free pages (pass-throughs)."""
    if r < pd.r:
        raise EngineError("cannot advance backwards")
    if r == pd.r:
        return pd
    return PageData(r, pd.cells, pd.ctx)


def _normalize_rules(rules, page: int) -> RulePage:
    if isinstance(rules, RulePage):
        return rules
    out = []
    for source, target in rules:
        support = [i for i, e in enumerate(source) if e]
        mode = POWER if len(support) == 1 else EXACT
        out.append(Rule(tuple(source), dict(target), mode))
    return RulePage(page, out)


def _validate_rules(pd: PageData, page: RulePage) -> None:
    ctx = pd.ctx
    A, Av, p = ctx.A, ctx.Av, ctx.A.p
    r = page.r
    seen_sources = set()
    for rule in page.rules:
        A.validate_monomial(rule.source)
        if rule.source in seen_sources:
            raise MalformedRuleError("malformed rule (duplicate source)")
        seen_sources.add(rule.source)
        if not rule.target:
            raise MalformedRuleError("malformed rule (zero target)")
        vexps = {m[ctx.v_index] for m in rule.target}
        if vexps != {r}:
            raise MalformedRuleError(
                f"malformed rule (target v-exponent {sorted(vexps)} != page {r})")
        sdeg = A.degree(rule.source)
        tdeg = element_degree(rule.target, Av)
        if tdeg != sdeg - 1:
            raise MalformedRuleError(
                f"malformed rule (target degree {tdeg} != source degree {sdeg} - 1)")
        if rule.mode == POWER:
            support = [i for i, e in enumerate(rule.source) if e]
            if len(support) != 1 or A.generators[support[0]].kind != POLYNOMIAL:
                raise MalformedRuleError(
                    "malformed rule (power mode needs a pure power of a polynomial generator)")
        # survival: the source must be a live class (a cycle that is not a
        # boundary) and the target must still be nonzero on this page
        src_cell = pd.cells.get((sdeg, 0))
        if src_cell is None or rule.source not in src_cell.monomials:
            raise DeadSourceError("dead source")
        vec = [0] * len(src_cell.monomials)
        vec[src_cell.monomials.index(rule.source)] = 1
        solver = src_cell.solver(p)
        if solver.in_boundaries(vec) or solver.express(vec) is None:
            raise DeadSourceError("dead source")
        tkey = (sdeg - 1, r)
        tcell = pd.cells.get(tkey)
        if tcell is None:
            raise MalformedRuleError("malformed rule (target bidegree empty)")
        tvec = [0] * len(tcell.monomials)
        for m, c in rule.target.items():
            amon = m[:-1]
            if amon not in tcell.monomials:
                raise MalformedRuleError("malformed rule (target outside bidegree)")
            tvec[tcell.monomials.index(amon)] = c % p
        tsolver = tcell.solver(p)
        if tsolver.in_boundaries(tvec) or tsolver.express(tvec) is None:
            raise MalformedRuleError("malformed rule (target does not survive to this page)")


def _d_of_monomial(ctx: EngineContext, page: RulePage, m: Monomial) -> Element:
    """Page derivation on one A-monomial; the v-shift by the page is implied.

    Exact rules fire on an exact exponent match over the source's support.
    Power rules fire with Leibniz multiplicity on the mu-exponent left over
    after the page's lambda-family attachments are consumed; monomials
    carrying an exterior generator without an attachment are torsion
    remnants of earlier pages and support nothing.
    """
    A = ctx.A
    p = A.p
    out: Element = {}
    exact_hits = [rule for rule in page.rules if rule.mode == EXACT
                  and all(m[i] == e for i, e in enumerate(rule.source) if e)]
    if exact_hits:
        if len(exact_hits) > 1:
            raise EngineAssertionError("ambiguous exact rules on one monomial")
        rule = exact_hits[0]
        cof = tuple(a - b for a, b in zip(m, rule.source))
        sign, rebuilt = mul_monomials(A, cof, rule.source)
        if sign == 0 or rebuilt != m:
            raise EngineAssertionError("exact rule factorization failed")
        lead = -1 if A.parity(cof) else 1
        part = multiply({cof + (0,): (sign * lead) % p}, rule.target, ctx.Av)
        for mon, c in part.items():
            _accumulate(out, mon[:-1], c, p)
        return out
    for rule in page.rules:
        if rule.mode != POWER:
            continue
        gi = next(i for i, e in enumerate(rule.source) if e)
        q = rule.source[gi]
        avail = m[gi]
        if avail <= 0:
            continue
        attached = 0
        dead = False
        for i, e in enumerate(m):
            if e and i != gi and A.generators[i].kind == EXTERIOR:
                c = page.attach.get(i)
                if c is None:
                    dead = True
                    break
                attached += c * e
        if dead:
            continue
        residual = avail - attached
        if residual < q or residual % q != 0:
            continue
        mult = (residual // q) % p
        if mult == 0:
            continue
        cof = list(m)
        cof[gi] -= q
        lead = -1 if A.parity(tuple(cof)) else 1
        part = multiply({tuple(cof) + (0,): (mult * lead) % p}, rule.target, ctx.Av)
        for mon, c in part.items():
            _accumulate(out, mon[:-1], c, p)
    return out


def _accumulate(acc: Element, m: Monomial, c: int, p: int) -> None:
    v = (acc.get(m, 0) + c) % p
    if v:
        acc[m] = v
    else:
        acc.pop(m, None)


def _degree_images(ctx: EngineContext, page: RulePage, adeg: int,
                   cache: Dict[int, Tuple[Element, ...]]) -> Tuple[Element, ...]:
    """d of every basis monomial of one A-degree (independent of filtration)."""
    got = cache.get(adeg)
    if got is None:
        got = tuple(_d_of_monomial(ctx, page, m) for m in ctx.basis(adeg))
        cache[adeg] = got
    return got


def apply_page(pd: PageData, rules, A: Optional[Algebra] = None) -> PageData:
    """Fire page pd.r with the given rules and return the next page.

    rules may be a RulePage or a plain list of (source, target) pairs (a
    pure generator-power source gets Leibniz extension, anything else exact
    matching); an empty list yields the input with r incremented.  The
    fired differential matrices are recorded on the input PageData.
    """
    ctx = pd.ctx
    p = ctx.A.p
    r = pd.r
    page = _normalize_rules(rules, r)
    if page.r != r:
        raise MalformedRuleError(f"malformed rule (page {page.r} applied at page {r})")
    if not page.attach and any(rule.mode == POWER for rule in page.rules):
        # default: every plain exterior generator is alive with no mu attached
        page.attach = {i: 0 for i, g in enumerate(ctx.A.generators) if g.kind == EXTERIOR}
    pd.applied_rules = page
    if not page.rules:
        return PageData(r + 1, pd.cells, ctx)
    _validate_rules(pd, page)

    img_cache: Dict[int, Tuple[Element, ...]] = {}
    out: Dict[Tuple[int, int], DiffRecord] = {}
    incoming: Dict[Tuple[int, int], List[List[int]]] = {}
    solvers: Dict[Tuple[int, int], linalg.CosetSolver] = {}
    edge_flags = set()

    for key, cell in pd.cells.items():
        if cell.dim == 0:
            continue
        adeg = ctx.adeg(key)
        images = _degree_images(ctx, page, adeg, img_cache)
        if not any(images):
            continue
        t, s = key
        tkey = (t - 1, s + r)
        tcell = pd.cells.get(tkey)
        if tcell is None:
            # a nonzero value may land outside the grid: the kernel at this
            # cell is then not computable, flag it and record no matrix
            fires = False
            if cell.reps is None:
                fires = True
            else:
                fires = any(any(images[j] for j, c in enumerate(row) if c)
                            for row in cell.reps)
            if fires:
                if ctx.in_grid(tkey):
                    raise EngineAssertionError(
                        f"differential from {key} lands in a missing in-grid cell {tkey}")
                edge_flags.add(key)
            continue
        rows = cell.reps_rows()
        mat: List[List[int]] = []
        any_nonzero = False
        tindex = {mon: i for i, mon in enumerate(tcell.monomials)}
        for row in rows:
            dvec: Element = {}
            for j, c in enumerate(row):
                if c and images[j]:
                    for mon, cc in images[j].items():
                        _accumulate(dvec, mon, c * cc, p)
            if not dvec:
                mat.append([0] * tcell.dim)
                continue
            tsolver = solvers.get(tkey)
            if tsolver is None:
                tsolver = tcell.solver(p)
                solvers[tkey] = tsolver
            vec = [0] * len(tcell.monomials)
            for mon, cc in dvec.items():
                pos = tindex.get(mon)
                if pos is None:
                    raise EngineAssertionError("differential leaves its bidegree")
                vec[pos] = cc
            coeffs = tsolver.express(vec)
            if coeffs is None:
                raise EngineAssertionError(
                    f"d_{r} value at {key} is not a class of the current page")
            mat.append(coeffs)
            any_nonzero = any_nonzero or any(coeffs)
        if any_nonzero:
            out[key] = DiffRecord(tkey, mat, linalg.rank(mat, p))
            incoming.setdefault(tkey, []).extend(mat)

    # d_r composed with d_r must vanish wherever both legs are computed
    for key, rec in out.items():
        rec2 = out.get(rec.target)
        if rec2 is None:
            continue
        width2 = len(rec2.matrix[0]) if rec2.matrix else 0
        for row in rec.matrix:
            comp = [0] * width2
            for j, c in enumerate(row):
                if c:
                    row2 = rec2.matrix[j]
                    for k2 in range(width2):
                        if row2[k2]:
                            comp[k2] = (comp[k2] + c * row2[k2]) % p
            if any(comp):
                raise EngineAssertionError(f"d_{r} o d_{r} != 0 out of {key}")

    new_cells: Dict[Tuple[int, int], Cell] = {}
    for key, cell in pd.cells.items():
        t, s = key
        flag = cell.flag or key in edge_flags
        src_key = (t + 1, s - r)
        if ctx.in_grid(src_key):
            src_cell = pd.cells.get(src_key)
            if src_cell is not None and src_cell.flag and src_cell.dim:
                src_images = _degree_images(ctx, page, ctx.adeg(src_key), img_cache)
                if any(src_images):
                    flag = True
        elif ctx.potential_class(src_key):
            flag = True

        rec = out.get(key)
        image_rows = incoming.get(key)
        if rec is None and image_rows is None and flag == cell.flag:
            new_cells[key] = cell
            continue

        reps = cell.reps_rows()
        n = len(reps)
        if rec is not None:
            ker = linalg.left_kernel(rec.matrix, len(rec.matrix[0]) if rec.matrix else 0, p)
        else:
            ker = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
        im_ech: Dict[int, List[int]] = {}
        im_count = 0
        if image_rows:
            for row in image_rows:
                if linalg.echelon_insert(im_ech, row, p) is not None:
                    im_count += 1
        new_rep_combos: List[List[int]] = []
        combo_ech: Dict[int, List[int]] = {}
        for kv in ker:
            red = linalg.reduce_row(kv, im_ech, p)
            red = linalg.reduce_row(red, combo_ech, p)
            if any(red):
                linalg.echelon_insert(combo_ech, red, p)
                new_rep_combos.append(red)
        if len(new_rep_combos) != len(ker) - im_count:
            raise EngineAssertionError(
                f"homology dimension bookkeeping failed at {key} on page {r}")
        width = len(cell.monomials)

        def _combine(combo: List[int]) -> List[int]:
            vec = [0] * width
            for i, c in enumerate(combo):
                if c:
                    ri = reps[i]
                    for j in range(width):
                        if ri[j]:
                            vec[j] = (vec[j] + c * ri[j]) % p
            return vec

        new_reps = [_combine(combo) for combo in new_rep_combos]
        new_bnd = [list(b) for b in cell.boundaries]
        if image_rows:
            for row in image_rows:
                vec = _combine(row)
                if any(vec):
                    new_bnd.append(vec)
        new_cells[key] = Cell(cell.monomials, new_reps, new_bnd, flag)

    pd.diffs = out
    return PageData(r + 1, new_cells, ctx)


# ----------------------------------------------------------------------
# schedules


def _thh_algebra(p: int, n: int) -> Algebra:
    from .closedform import thh_mod_p_algebra

    return thh_mod_p_algebra(p, n)


def _target_element(Av: Algebra, exps: Mapping[int, int], coeff: int = 1) -> Element:
    m = [0] * Av.ngens
    for i, e in exps.items():
        m[i] += e
    return {tuple(m): coeff % Av.p}


def schedule_v0(p: int, n: int, w) -> DifferentialSchedule:
    """d_{nu_p(k)+1}(mu^k) = v_0^{nu_p(k)+1} mu^{k-1} lambda_{n+1}: one exact
    rule per mu-power in the window, unit coefficients."""
    w = as_window(w)
    A = _thh_algebra(p, n)
    v = GeneratorSpec("v0", 0, POLYNOMIAL)
    Av = A.adjoin(v)
    dm = deg_mu(p, n)
    lam = n          # index of lambda_{n+1}
    mu = n + 1       # index of mu_{n+1}
    vi = n + 2
    t_hi = w.max_degree + w.buffer
    pages: Dict[int, RulePage] = {}
    for _ in range(8):  # the page count feeds back into the grid margin
        pages = {}
        k = 1
        while k * dm <= t_hi:
            page = nu_p(p, k) + 1
            src = tuple(k if i == mu else 0 for i in range(A.ngens))
            target = _target_element(Av, {vi: page, mu: k - 1, lam: 1})
            pages.setdefault(page, RulePage(page, [])).rules.append(Rule(src, target, EXACT))
            k += 1
        new_hi = w.max_degree + w.buffer + len(pages)
        if new_hi == t_hi:
            break
        t_hi = new_hi
    k_next = t_hi // dm + 1
    min_page = nu_p(p, k_next) + 1
    return DifferentialSchedule(
        v, pages, label=f"v0 p={p} n={n}",
        meta={"case": "v0", "p": p, "n": n, "D": w.max_degree},
        future_target_floor=k_next * dm - 1,
        future_min_page=min_page,
    )


def _ladder_schedule(p: int, w, family: LambdaFamily, v_name: str, v_deg: int,
                     page_of, target_index_of, attach_indices, label: str,
                     meta: Dict[str, object]) -> DifferentialSchedule:
    """Shared builder for the v1/v2/conjecture mu-power ladders.

    Emits one power rule per step s with source mu^{p^{s-1}} while the
    target tower base degree stays inside the reported window; every death
    of an in-window tower is then computable, and anything a not-emitted
    rule could hit lies above the window.
    """
    w = as_window(w)
    A = _thh_algebra(p, family.n)
    v = GeneratorSpec(v_name, v_deg, POLYNOMIAL)
    Av = A.adjoin(v)
    mu = A.ngens - 1
    vi = Av.ngens - 1
    pages: Dict[int, RulePage] = {}
    s = 1
    while True:
        tgt_idx = target_index_of(s)
        if family.degree(tgt_idx) > w.max_degree:
            break
        r = page_of(s)
        base, e = family.entry(tgt_idx)
        target = _target_element(Av, {vi: r, base - 1: 1, mu: e})
        source = tuple(p ** (s - 1) if i == mu else 0 for i in range(A.ngens))
        attach: Dict[int, int] = {}
        for idx in attach_indices(s):
            b, ee = family.entry(idx)
            attach[b - 1] = ee
        pages[r] = RulePage(r, [Rule(source, target, POWER)], attach)
        s += 1
    return DifferentialSchedule(
        v, pages, label=label, meta=meta,
        future_target_floor=family.degree(target_index_of(s)),
        future_min_page=page_of(s),
    )


def schedule_v1(p: int, w, variant: Optional[str] = None) -> DifferentialSchedule:
    """d_{r(s,1)}(mu_3^{p^{s-1}}) = v_1^{r(s,1)} lambda_{s+1} for p >= 3.

    At p = 2 the pattern is open (paper Remark); pass variant "A" for the
    odd-p ladder as-is, or "B" for the branch where the first candidate
    lambda differential d_2(lambda_3) = v^2 lambda_1 lambda_2 fires.  The
    Remark's candidates are branch alternatives, not a simultaneous
    schedule: once one fires, the later ladder targets are dead, so
    variant "B" keeps only the still-valid ladder prefix and reports
    everything past the known part as unknown.  Neither p=2 variant is
    certified against an oracle.
    """
    w = as_window(w)
    if p == 2 and variant not in ("A", "B"):
        raise AmbiguousPatternError("ambiguous pattern (paper Remark)")
    family = LambdaFamily("v1", p)
    if p == 2 and variant == "B":
        return _schedule_v1_p2_variant_b(w, family)
    return _ladder_schedule(
        p, w, family, "v1", 2 * p - 2,
        page_of=lambda s: r_len(p, s, 1),
        target_index_of=lambda s: s + 1,
        attach_indices=lambda s: (1, s + 1, s + 2),
        label=f"v1 p={p}" + (f" variant {variant}" if variant else ""),
        meta={"case": "v1", "p": p, "D": w.max_degree, "variant": variant},
    )


def _schedule_v1_p2_variant_b(w: Window, family: LambdaFamily) -> DifferentialSchedule:
    p = 2
    A = _thh_algebra(p, 2)
    v = GeneratorSpec("v1", 2 * p - 2, POLYNOMIAL)
    Av = A.adjoin(v)
    mu = A.ngens - 1
    vi = Av.ngens - 1
    pages: Dict[int, RulePage] = {}
    # the candidate differential the paper could not rule out
    lam3 = tuple(1 if i == 2 else 0 for i in range(A.ngens))
    pages[2] = RulePage(2, [Rule(lam3, _target_element(Av, {vi: 2, 0: 1, 1: 1}), EXACT)])
    # the first ladder differential is unaffected by it
    if family.degree(2) <= w.max_degree:
        r = r_len(p, 1, 1)
        src = tuple(1 if i == mu else 0 for i in range(A.ngens))
        pages[r] = RulePage(r, [Rule(src, _target_element(Av, {vi: r, 1: 1}), POWER)],
                            attach={0: 0, 1: 0})
    # past this point the branch is uncharted; everything above lambda_3's
    # degree stays unknown
    return DifferentialSchedule(
        v, pages, label="v1 p=2 variant B",
        meta={"case": "v1", "p": p, "D": w.max_degree, "variant": "B"},
        future_target_floor=family.degree(3),
        future_min_page=r_len(p, 2, 1),
    )


def schedule_v2(p: int, w) -> DifferentialSchedule:
    """d_{r(s,2)}(mu_3^{p^{s-1}}) = v_2^{r(s,2)} lambda_s, all primes."""
    w = as_window(w)
    family = LambdaFamily("v2", p)
    return _ladder_schedule(
        p, w, family, "v2", 2 * p * p - 2,
        page_of=lambda s: r_len(p, s, 2),
        target_index_of=lambda s: s,
        attach_indices=lambda s: (s, s + 1, s + 2),
        label=f"v2 p={p}",
        meta={"case": "v2", "p": p, "D": w.max_degree},
    )


def schedule_conj(p: int, n: int, m: int, w) -> DifferentialSchedule:
    """Conjectural ladder d_{r_n(s,m)}(mu_{n+1}^{p^{s-1}}) = v_m^r lambda_{n-m+s}."""
    w = as_window(w)
    if not 1 <= m <= n:
        raise ScheduleError("need 1 <= m <= n")
    if m == 1 and p == 2:
        raise AmbiguousPatternError("ambiguous pattern (paper Remark)")
    family = LambdaFamily("conj", p, n=n, m=m)
    permanents = tuple(range(1, n - m + 1))
    return _ladder_schedule(
        p, w, family, f"v{m}", 2 * p**m - 2,
        page_of=lambda s: r_conj(p, n, m, s),
        target_index_of=lambda s: n - m + s,
        attach_indices=lambda s: permanents + tuple(range(n - m + s, n + s + 1)),
        label=f"conj p={p} n={n} m={m}",
        meta={"case": "conj", "p": p, "n": n, "m": m, "D": w.max_degree,
              "conjectural": True},
    )


# ----------------------------------------------------------------------
# running and tower extraction


def _plan_grid(A: Algebra, sched: DifferentialSchedule, w: Window, localized: bool) -> GridSpec:
    deg_v = sched.v.degree
    pages = sorted(sched.pages)
    R = pages[-1] if pages else 0
    np_ = len(pages)
    max_src = 0
    for pg in sched.pages.values():
        for rule in pg.rules:
            max_src = max(max_src, A.degree(rule.source))
    D = w.max_degree
    if deg_v == 0:
        c_inf = sum(pages)
        return GridSpec(0, max(D + w.buffer + np_, max_src + 1), 0, c_inf + 2 + R)
    t_hi = max(D + w.buffer + R * deg_v + np_, max_src + 1)
    if not localized:
        return GridSpec(0, t_hi, 0, t_hi // deg_v)
    s_cap = t_hi // deg_v
    return GridSpec(-(np_ + 1), t_hi, -(s_cap + (np_ + 1) * R), s_cap + R)


@dataclass
class RunHistory:
    dims: Dict[int, Dict[Tuple[int, int], int]] = field(default_factory=dict)
    ranks: Dict[int, Dict[Tuple[int, int], int]] = field(default_factory=dict)
    flags: Dict[int, frozenset] = field(default_factory=dict)
    # pages the schedule holds but the run did not fire (page_cap)
    unfired_pages: Tuple[int, ...] = ()


def run(A: Algebra, sched: DifferentialSchedule, w, localized: bool = False,
        page_cap: Optional[int] = None) -> Tuple[List[PageData], TowerProfile]:
    """Run the schedule and extract the E_infinity tower profile.

    Returns the recorded pages (E_1, each fired page carrying its
    differential matrices, and the final page) and the tower profile over
    degrees 0..max_degree.
    """
    w = as_window(w)
    grid = _plan_grid(A, sched, w, localized)
    pd = build_e1(A, sched.v, w, localized, grid=grid)
    if not sched.pages:
        warnings.warn("window too small to contain any rule source; E_1 = E_infinity",
                      stacklevel=2)
    pages_out: List[PageData] = [pd]
    hist = RunHistory()
    final = pd
    unfired: List[int] = []
    for r in sorted(sched.pages):
        if page_cap is not None and r > page_cap:
            unfired.append(r)
            continue
        cur = advance_to(final, r)
        hist.dims[r] = cur.dims_snapshot()
        hist.flags[r] = frozenset(k for k, c in cur.cells.items() if c.flag)
        nxt = apply_page(cur, sched.pages[r])
        hist.ranks[r] = {k: rec.rank for k, rec in cur.diffs.items()}
        if cur is not pages_out[-1]:
            pages_out.append(cur)
        final = nxt
    hist.unfired_pages = tuple(unfired)
    if final is not pages_out[-1]:
        pages_out.append(final)
    profile = extract_towers(final, sched, w, localized, hist)
    return pages_out, profile


def _first_zero_along_slant(ctx: EngineContext, table: Dict[Tuple[int, int], int],
                            flagged: frozenset, start_t: int) -> Optional[int]:
    """First slant position where the table value is zero; values along a
    slant are non-increasing, so a first zero is final.  Flagged cells are
    not trustworthy, so hitting one (or the grid edge) yields None."""
    dv = ctx.deg_v
    j = 0
    while True:
        t = start_t + j * dv
        if t > ctx.grid.t_hi or j > ctx.grid.s_hi:
            return None
        key = (t, j)
        if key in flagged:
            return None
        if table.get(key, 0) == 0:
            return j
        j += 1


def _column_safe_from(ctx: EngineContext, base: int,
                      hist: RunHistory) -> Optional[int]:
    """A filtration beyond which no fired page can change the column at
    `base`, or None if that is not observable inside the grid.

    Page r kills the column from sources on the slant of A-degree
    base+1+r|v| (bounded by the first zero of the page's dimensions there)
    and removes classes that support d_r themselves (bounded by the first
    zero of the recorded out-ranks along the column); both tables are
    non-increasing along slants.
    """
    dv = ctx.deg_v
    safe = 0
    for r in sorted(hist.dims):
        flags = hist.flags.get(r, frozenset())
        src_base = base + 1 + r * dv
        if ctx.basis(src_base):
            j0 = _first_zero_along_slant(ctx, hist.dims[r], flags, src_base)
            if j0 is None:
                return None
            safe = max(safe, j0 + r)
        j0 = _first_zero_along_slant(ctx, hist.ranks.get(r, {}), flags, base)
        if j0 is None:
            return None
        safe = max(safe, j0)
    return safe


def extract_towers(final: PageData, sched: DifferentialSchedule, w, localized: bool,
                   hist: RunHistory) -> TowerProfile:
    w = as_window(w)
    ctx = final.ctx
    D = w.max_degree
    dv = ctx.deg_v
    prof = TowerProfile(D)

    future_floor = sched.future_target_floor
    future_min_page = sched.future_min_page
    for r in hist.unfired_pages:
        for rule in sched.pages[r].rules:
            for mon in rule.target:
                base = ctx.Av.degree(mon) - r * dv
                future_floor = base if future_floor is None else min(future_floor, base)
        future_min_page = r if future_min_page is None else min(future_min_page, r)

    def future_hits(b: int) -> bool:
        return future_floor is not None and b >= future_floor

    if localized:
        for b in range(0, D + 1):
            cell = final.cells.get((b, 0))
            if cell is None or cell.dim == 0:
                continue
            for _ in range(cell.dim):
                prof.add(b, Unknown() if (cell.flag or future_hits(b)) else INF)
        return prof

    if dv == 0:
        # v-multiplication is an isomorphism above the sum of the fired
        # pages; surviving there certifies an infinite tower
        horizon = sum(hist.dims.keys())
        for b in range(0, D + 1):
            dims, flagged_at = _column_dims(final, b, dv, horizon + 1)
            hit = future_hits(b)
            certified = len(dims) - 1 >= horizon and not hit
            _read_column(prof, b, dims, flagged_at, certified, horizon,
                         future_min_page if hit else None)
        return prof

    for b in range(0, D + 1):
        if not ctx.basis(b):
            continue
        j_grid = (ctx.grid.t_hi - b) // dv
        dims, flagged_at = _column_dims(final, b, dv, j_grid)
        certified = False
        stable = None
        hit = future_hits(b)
        if not hit:
            # flags past the stable horizon are irrelevant: nothing can
            # change the column there any more
            safe = _column_safe_from(ctx, b, hist)
            if safe is not None and safe <= len(dims) - 1:
                certified = True
                stable = safe
        _read_column(prof, b, dims, flagged_at, certified, stable,
                     future_min_page if hit else None)
    return prof


def _column_dims(final: PageData, base: int, dv: int,
                 j_max: int) -> Tuple[List[int], Optional[int]]:
    dims: List[int] = []
    for j in range(0, j_max + 1):
        cell = final.cells.get((base + j * dv, j))
        if cell is not None and cell.flag:
            return dims, j
        dims.append(cell.dim if cell else 0)
    return dims, None


def _read_column(prof: TowerProfile, b: int, dims: List[int], flagged_at: Optional[int],
                 certified: bool, stable: Optional[int],
                 future_min_page: Optional[int]) -> None:
    if not dims:
        if flagged_at == 0:
            prof.add(b, Unknown(None))
        return
    for j in range(1, len(dims)):
        if dims[j] > dims[j - 1]:
            raise EngineAssertionError(
                f"dimensions increase along the v-tower at base degree {b}")
    if certified and stable is not None:
        for j in range(stable + 1, len(dims)):
            if dims[j] != dims[stable]:
                raise EngineAssertionError(
                    f"tower at base {b} drops after its certified horizon")
        for k in range(1, stable + 1):
            for _ in range(dims[k - 1] - dims[k]):
                prof.add(b, k)
        for _ in range(dims[stable]):
            prof.add(b, INF)
        return
    limit = len(dims) - 1
    # observations past the smallest unfired page are not trustworthy
    trusted = limit if future_min_page is None else min(limit, future_min_page - 1)
    for k in range(1, trusted + 1):
        for _ in range(dims[k - 1] - dims[k]):
            prof.add(b, k)
    top = dims[trusted] if trusted >= 0 else dims[0]
    for _ in range(top):
        prof.add(b, Unknown(trusted + 1))


def compare_with_oracle(engine_profile: TowerProfile, oracle_profile: TowerProfile, w):
    from .towers import compare

    w = as_window(w)
    return compare(engine_profile, oracle_profile, w.max_degree)


# ----------------------------------------------------------------------
# consistency helpers used by the property suites


def localization_injectivity_failures(
        pages_plain: Sequence[PageData],
        pages_local: Sequence[PageData]) -> List[Tuple[int, Tuple[int, int]]]:
    """Bidegrees (page, (t, s)) with s >= r-1 where the map from the plain
    page to the localized page fails to be injective."""
    by_r = {pg.r: pg for pg in pages_local}
    failures: List[Tuple[int, Tuple[int, int]]] = []
    for pg in pages_plain:
        loc = by_r.get(pg.r)
        if loc is None:
            continue
        p = pg.ctx.A.p
        for key, cell in pg.cells.items():
            t, s = key
            if s < pg.r - 1 or cell.dim == 0 or cell.flag:
                continue
            lcell = loc.cells.get(key)
            if lcell is None or lcell.flag:
                continue
            solver = lcell.solver(p)
            rows = []
            for rep in cell.reps_rows():
                coeffs = solver.express(rep)
                if coeffs is None:
                    raise EngineAssertionError("localization map undefined on a class")
                rows.append(coeffs)
            if linalg.rank(rows, p) != cell.dim:
                failures.append((pg.r, key))
    return failures


def rederive_page_check(pd: PageData, seed: int = 0, samples: int = 40) -> bool:
    """Recompute recorded differential matrices from rescrambled
    representative bases; they must transform linearly under the change."""
    if pd.applied_rules is None or not pd.diffs:
        return True
    rng = random.Random(seed)
    ctx = pd.ctx
    p = ctx.A.p
    keys = sorted(pd.diffs)
    rng.shuffle(keys)
    for key in keys[:samples]:
        rec = pd.diffs[key]
        cell = pd.cells[key]
        reps = cell.reps_rows()
        n = len(reps)
        ncols = len(rec.matrix[0]) if rec.matrix else 0
        while True:
            U = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
            if linalg.rank(U, p) == n:
                break
        tcell = pd.cells[rec.target]
        tsolver = tcell.solver(p)
        tindex = {mon: i for i, mon in enumerate(tcell.monomials)}
        for i in range(n):
            dvec: Element = {}
            for a in range(n):
                c = U[i][a]
                if not c:
                    continue
                for j, cj in enumerate(reps[a]):
                    if cj:
                        dm = _d_of_monomial(ctx, pd.applied_rules, cell.monomials[j])
                        for mon, cc in dm.items():
                            _accumulate(dvec, mon, c * cj * cc, p)
            vec = [0] * len(tcell.monomials)
            for mon, cc in dvec.items():
                vec[tindex[mon]] = cc
            got = tsolver.express(vec)
            if got is None:
                return False
            want = [0] * ncols
            for a in range(n):
                c = U[i][a]
                if c:
                    for k2 in range(ncols):
                        if rec.matrix[a][k2]:
                            want[k2] = (want[k2] + c * rec.matrix[a][k2]) % p
            if got != want:
                return False
    return True
