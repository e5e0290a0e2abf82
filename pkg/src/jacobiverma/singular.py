"""Singular-vector search: ansatz by weight, condition assembly, parametric solve.

The pipeline for a target weight w:

1. enumerate every raising-only PBW monomial of weight w (the ansatz);
2. apply each lowering generator to the general combination and read off one
   homogeneous linear condition per surviving basis monomial, giving a matrix
   over Q[L1..Ln];
3. run fraction-free (Bareiss) elimination with case splitting: a
   non-constant pivot spawns one child per vanishing-locus factor, while the
   parent continues with the pivot asserted nonzero;
4. each explored constraint set with a nontrivial kernel becomes a branch; the
   kernel is back-substituted over rational functions and normalized so the
   last nonzero coordinate (in the ansatz monomial order) is 1;
5. every branch with an affine solved form is re-checked against all lowering
   generators before it is reported.

Branches are deduplicated by constraint set and pruned when they are mere
specializations of another branch with the same kernel.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Set, Tuple

from .algebra import Generator, JacobiAlgebra, Weight
from .pbw import PbwMonomial
from .ring import (
    PolyQ,
    RatFuncQ,
    content_in,
    poly_sort_key,
    rational_roots,
    squarefree_part,
)
from .verma import (
    ConstraintSet,
    InconsistentConstraintsError,
    VermaVector,
    act,
    is_singular,
)


REPORT_JSON_SCHEMA = {
    "type": "object",
    "properties": {
        "weight": {"type": "array", "items": {"type": "string"}},
        "monomials": {"type": "array", "items": {"type": "string"}},
        "branches": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "constraints": {"type": "array", "items": {"type": "string"}},
                    "solved_form": {"type": "array", "items": {"type": "string"}},
                    "vectors": {
                        "type": "array",
                        "items": {"type": "array", "items": {"type": "string"}},
                    },
                    "verified": {"type": "boolean"},
                },
                "required": ["constraints", "solved_form", "vectors", "verified"],
                "additionalProperties": False,
            },
        },
        "trivial": {"type": "boolean"},
    },
    "required": ["weight", "monomials", "branches", "trivial"],
    "additionalProperties": False,
}


class BranchBudgetExceededError(RuntimeError):
    """Raised when the case tree outgrows the branch budget."""

    def __init__(self, partial: list, unexplored: List[str]):
        self.partial = partial
        self.unexplored = unexplored
        super().__init__(
            f"branch budget exhausted with {len(unexplored)} unexplored case(s): "
            + "; ".join(unexplored)
        )


# -- ansatz enumeration ------------------------------------------------------


def _positive_layout(alg: JacobiAlgebra) -> Tuple[range, range, range]:
    """Index ranges of the a+, K+ and raising-K0 blocks among the positives."""
    n = alg.n
    a_end = n
    k_end = n + n * (n + 1) // 2
    return range(0, a_end), range(a_end, k_end), range(k_end, alg.num_positive)


def ansatz_sort_key(alg: JacobiAlgebra, m: PbwMonomial) -> tuple:
    """Sort key for same-weight monomials: descending lex with the K+ block most
    significant, then a+, then raising K0 (callers sort with reverse=True).

    This reproduces the presentation order of the worked g_2 cases and puts
    the conventional free-scale monomial last.
    """
    aplus, kplus, kzero = _positive_layout(alg)
    sig = list(kplus) + list(aplus) + list(kzero)
    return tuple(m.exps[i] for i in sig)


def display_factor_order(alg: JacobiAlgebra) -> List[int]:
    """Factor order used when rendering monomials: K+, a+, raising K0, Cartan,
    then the mirrored lowering blocks.  Swapping the K+ and a+ blocks relative
    to the ordered basis is purely cosmetic since those families commute."""
    aplus, kplus, kzero = _positive_layout(alg)
    npos, n = alg.num_positive, alg.n
    order = list(kplus) + list(aplus) + list(kzero)
    order += list(range(npos, npos + n))
    base = npos + n
    order += [base + i for i in list(kplus)] + [base + i for i in list(aplus)]
    order += [base + i for i in list(kzero)]
    return order


def enumerate_ansatz(alg: JacobiAlgebra, w: Weight) -> List[PbwMonomial]:
    """All raising-only monomials of weight w, in the canonical ansatz order.

    The search is a bounded DFS over exponent vectors: the linear functional
    sum_k (n-k) * coord_k is strictly positive on every raising generator, so
    its value on w caps the multiplicity of each generator.
    """
    n = alg.n
    gens = list(range(alg.num_positive))
    weights = [alg.weight(alg.generators[i]).coords for i in gens]
    mults = [Fraction(n - k) for k in range(n)]

    def phi(coords) -> Fraction:
        return sum(m * c for m, c in zip(mults, coords))

    phis = [phi(wc) for wc in weights]
    target = list(w.coords)
    if len(target) != n:
        raise ValueError(f"weight has {len(target)} coordinates, expected {n}")
    found: List[PbwMonomial] = []
    exps = [0] * alg.num_positive

    def dfs(k: int, remaining: List[Fraction], rem_phi: Fraction):
        if rem_phi < 0:
            return
        if k == len(gens):
            if all(c == 0 for c in remaining):
                full = tuple(exps) + (0,) * (len(alg.generators) - alg.num_positive)
                found.append(PbwMonomial(full))
            return
        bound = int(rem_phi / phis[k])
        for e in range(bound + 1):
            exps[k] = e
            dfs(
                k + 1,
                [r - e * wc for r, wc in zip(remaining, weights[k])],
                rem_phi - e * phis[k],
            )
        exps[k] = 0

    dfs(0, target, phi(target))
    found.sort(key=lambda m: ansatz_sort_key(alg, m), reverse=True)
    return found


# -- condition assembly ------------------------------------------------------


@dataclass(frozen=True)
class SystemRow:
    """One linear condition: the coefficient of ``result`` in act(x, sum nu_k m_k v0)."""

    x: Generator
    result: PbwMonomial
    entries: Tuple[PolyQ, ...]


@dataclass
class AnsatzSystem:
    weight: Weight
    nvars: int
    monomials: List[PbwMonomial]
    rows: List[SystemRow]

    @property
    def matrix(self) -> List[Tuple[PolyQ, ...]]:
        return [r.entries for r in self.rows]

    def evaluate_at(self, point: Sequence[Fraction]) -> List[List[Fraction]]:
        return [[e.eval_all(point) for e in row.entries] for row in self.rows]


def assemble_system(alg: JacobiAlgebra, w: Weight) -> AnsatzSystem:
    """Matrix of lowest-weight conditions for the weight-w ansatz; zero rows pruned."""
    monomials = enumerate_ansatz(alg, w)
    rows: List[SystemRow] = []
    for x in alg.negative:
        images = [act(alg, x, VermaVector.monomial(alg, m)) for m in monomials]
        support: Set[PbwMonomial] = set()
        for img in images:
            support.update(img.terms)
        for b in sorted(support, key=lambda m: ansatz_sort_key(alg, m), reverse=True):
            entries = tuple(img.terms.get(b, PolyQ.zero(alg.n)) for img in images)
            if any(not e.is_zero for e in entries):
                rows.append(SystemRow(x, b, entries))
    return AnsatzSystem(w, alg.n, monomials, rows)


# -- parametric solve --------------------------------------------------------


@dataclass
class SolutionBranch:
    """One consistent case: constraints on L, kernel basis, and the pivot
    polynomials asserted nonzero along the way."""

    constraints: ConstraintSet
    kernel: List[List[RatFuncQ]]
    genericity: List[PolyQ]


def _reduce_poly(p: PolyQ, constraints: ConstraintSet) -> PolyQ:
    """Reduce modulo the constraints: substitution when solved, division
    remainder against the canonical equations otherwise (sound either way)."""
    if constraints.solved_form is not None:
        return constraints.substitute(p)
    if not constraints.equations:
        return p
    changed = True
    while changed and not p.is_zero:
        changed = False
        for eq in constraints.equations:
            d_exps, d_lc = eq.leading()
            for exps in sorted(p.terms, key=lambda e: (sum(e), tuple(reversed(e))), reverse=True):
                q_exps = tuple(a - b for a, b in zip(exps, d_exps))
                if all(e >= 0 for e in q_exps):
                    c = p.terms[exps]
                    p = p - PolyQ(p.nvars, {q_exps: c / d_lc}) * eq
                    changed = True
                    break
            if changed:
                break
    return p


def _univariate_linear_factors(p: PolyQ, x: int) -> List[PolyQ]:
    factors: List[PolyQ] = []
    rest = p
    for r in rational_roots(p):
        lin = PolyQ.var(p.nvars, x) - PolyQ.const(p.nvars, r)
        q = rest.try_divide(lin)
        if q is not None:
            factors.append(lin)
            rest = q
    if not rest.is_constant:
        factors.append(rest.monic())
    return factors or [p]


_PROBE_BASES = [2, 3, 5, 7, 11, 13, 17, 19]


def _try_affine_factor(p: PolyQ, x: int) -> Optional[PolyQ]:
    """One affine divisor x - e(other vars) of p, or None.

    Any such divisor specializes to a rational root of p at every rational
    point of the other variables, so candidates are interpolated from roots
    at a base point and unit bumps, then validated by exact division.
    """
    others = [v for v in p.variables() if v != x]
    dx = p.degree_in(x)
    for shift in range(len(_PROBE_BASES)):
        base = {v: Fraction(_PROBE_BASES[(k + shift) % len(_PROBE_BASES)]) for k, v in enumerate(others)}
        p0 = p.subs(base)
        if p0.degree_in(x) != dx:
            continue
        bumped = {}
        degenerate = False
        for v in others:
            point = dict(base)
            point[v] = point[v] + 1
            pv = p.subs(point)
            if pv.degree_in(x) != dx:
                degenerate = True
                break
            bumped[v] = pv
        if degenerate:
            continue
        roots0 = rational_roots(p0) if not p0.is_constant else []
        root_choices = {v: (rational_roots(q) if not q.is_constant else []) for v, q in bumped.items()}
        for r0 in roots0:
            stack = [(list(others), {})]
            while stack:
                pending, slopes = stack.pop()
                if not pending:
                    e = PolyQ.const(p.nvars, r0)
                    for v, s in slopes.items():
                        e = e + (PolyQ.var(p.nvars, v) - PolyQ.const(p.nvars, base[v])) * s
                    cand = PolyQ.var(p.nvars, x) - e
                    if p.try_divide(cand) is not None:
                        return cand
                    continue
                v = pending[0]
                for rv in root_choices[v]:
                    stack.append((pending[1:], {**slopes, v: rv - r0}))
        return None
    return None


def _split_factors(p: PolyQ) -> List[PolyQ]:
    """Vanishing-locus factors to branch on.

    Splits off rational content (variable-disjoint products), univariate
    rational linear factors, and multivariate affine factors; whatever
    remains is kept whole as a single (non-affine) constraint."""
    factors: List[PolyQ] = []
    stack = [squarefree_part(p).monic()]
    while stack:
        q = stack.pop()
        if q.is_constant:
            continue
        if q.total_degree() <= 1:
            factors.append(q.monic())
            continue
        vs = q.variables()
        if len(vs) == 1:
            factors.extend(_univariate_linear_factors(q, vs[0]))
            continue
        x = max(vs)
        content = content_in(q, x)
        if not content.is_constant:
            stack.append(content)
            stack.append(q // content)
            continue
        affine = _try_affine_factor(q, x)
        if affine is not None:
            stack.append(affine)
            stack.append(q // affine)
            continue
        factors.append(q.monic())
    unique = {poly_sort_key(f): f for f in factors}
    return [unique[k] for k in sorted(unique)]


def _eliminate(
    matrix: List[List[PolyQ]],
    ncols: int,
    nvars: int,
) -> Tuple[List[Tuple[List[PolyQ], int]], Set[int], List[PolyQ]]:
    """Bareiss fraction-free elimination with degree-preferring pivot choice.

    Returns (retired pivot rows with their columns, used columns, the
    non-constant pivot polynomials in order of use).
    """
    active = [list(row) for row in matrix if any(not e.is_zero for e in row)]
    pivots: List[Tuple[List[PolyQ], int]] = []
    used: Set[int] = set()
    nonconstant: List[PolyQ] = []
    prev = PolyQ.one(nvars)
    while True:
        best = None
        for ri, row in enumerate(active):
            for c in range(ncols):
                if c in used or row[c].is_zero:
                    continue
                key = (row[c].total_degree(), c, ri)
                if best is None or key < best:
                    best = key
        if best is None:
            break
        _, c, ri = best
        prow = active.pop(ri)
        p = prow[c]
        if not p.is_constant:
            nonconstant.append(p)
        new_active = []
        for row in active:
            new_row = []
            divisible = True
            for j in range(ncols):
                e = p * row[j] - row[c] * prow[j]
                new_row.append(e)
            reduced = []
            for e in new_row:
                q = e.try_divide(prev)
                if q is None:
                    divisible = False
                    break
                reduced.append(q)
            if divisible:
                new_row = reduced
            if any(not e.is_zero for e in new_row):
                new_active.append(new_row)
        active = new_active
        pivots.append((prow, c))
        used.add(c)
        prev = p
    return pivots, used, nonconstant


def _kernel_from_pivots(
    pivots: List[Tuple[List[PolyQ], int]],
    used: Set[int],
    ncols: int,
    nvars: int,
) -> List[List[RatFuncQ]]:
    free = [c for c in range(ncols) if c not in used]
    vectors: List[List[RatFuncQ]] = []
    for f in free:
        v: List[Optional[RatFuncQ]] = [None] * ncols
        for c in free:
            v[c] = RatFuncQ.one(nvars) if c == f else RatFuncQ.zero(nvars)
        for prow, c in reversed(pivots):
            s = RatFuncQ.zero(nvars)
            for j in range(ncols):
                if j == c or prow[j].is_zero:
                    continue
                if v[j] is None:
                    raise AssertionError("back-substitution order violated")
                s = s + RatFuncQ(prow[j]) * v[j]
            v[c] = -s / RatFuncQ(prow[c])
        vectors.append(_normalize_kernel_vector([x for x in v]))
    return vectors


def _normalize_kernel_vector(v: List[RatFuncQ]) -> List[RatFuncQ]:
    last = None
    for x in v:
        if not x.is_zero:
            last = x
    if last is None:
        return v
    return [x / last for x in v]


def solve_parametric(system: AnsatzSystem, branch_budget: int = 64) -> List[SolutionBranch]:
    """Case analysis of M(L) nu = 0 over the weight parameters.

    Explores constraint sets breadth-first, asserting each chosen pivot
    nonzero on the current case and spawning one child case per vanishing
    factor.  Emits a branch for every case with a nontrivial kernel, then
    prunes cases that are plain specializations of an emitted branch.
    """
    nvars = system.nvars
    ncols = len(system.monomials)
    if ncols == 0:
        return []
    base_matrix = [list(r.entries) for r in system.rows]
    root = ConstraintSet.empty(nvars)
    queue = deque([root])
    visited: Set[tuple] = {_constraints_key(root)}
    branches: List[SolutionBranch] = []
    explored = 0
    while queue:
        if explored >= branch_budget:
            unexplored = [_constraints_text(c) for c in queue]
            raise BranchBudgetExceededError(branches, unexplored)
        cs = queue.popleft()
        explored += 1
        matrix = [[_reduce_poly(e, cs) for e in row] for row in base_matrix]
        pivots, used, nonconstant = _eliminate(matrix, ncols, nvars)
        if len(used) < ncols:
            kernel = _kernel_from_pivots(pivots, used, ncols, nvars)
            genericity = sorted(
                {poly_sort_key(q): q for q in (squarefree_part(p).monic() for p in nonconstant)}.values(),
                key=poly_sort_key,
            )
            branches.append(SolutionBranch(cs, kernel, list(genericity)))
        for p in nonconstant:
            for f in _split_factors(p):
                try:
                    child = ConstraintSet.from_equations(nvars, cs.equations + (f,))
                except InconsistentConstraintsError:
                    continue
                key = _constraints_key(child)
                if key in visited or len(child.equations) == len(cs.equations):
                    continue
                visited.add(key)
                queue.append(child)
    branches = _prune_branches(branches)
    branches.sort(key=lambda b: (len(b.constraints.equations), _constraints_key(b.constraints)))
    return branches


def _constraints_key(cs: ConstraintSet) -> tuple:
    return tuple(poly_sort_key(p) for p in cs.equations)


def _constraints_text(cs: ConstraintSet) -> str:
    if not cs.equations:
        return "<generic>"
    return " & ".join(p.to_text() + " = 0" for p in cs.equations)


def _prune_branches(branches: List[SolutionBranch]) -> List[SolutionBranch]:
    """Drop branch B when some branch A constrains less, B satisfies A's
    equations, and A's kernel specializes exactly to B's."""
    keep: List[SolutionBranch] = []
    for b in branches:
        subsumed = False
        for a in branches:
            if a is b or len(a.constraints.equations) >= len(b.constraints.equations):
                continue
            if b.constraints.solved_form is None:
                continue
            if not all(
                b.constraints.substitute(eq).is_zero for eq in a.constraints.equations
            ):
                continue
            if len(a.kernel) != len(b.kernel):
                continue
            try:
                specialized = [
                    _normalize_kernel_vector([x.subs(dict(b.constraints.solved_form)) for x in vec])
                    for vec in a.kernel
                ]
            except Exception:
                continue
            if _kernel_signature(specialized) == _kernel_signature(b.kernel):
                subsumed = True
                break
        if not subsumed:
            keep.append(b)
    return keep


def _kernel_signature(kernel: List[List[RatFuncQ]]) -> tuple:
    return tuple(
        sorted(
            tuple(
                (tuple(sorted(x.num.terms.items())), tuple(sorted(x.den.terms.items())))
                for x in vec
            )
            for vec in kernel
        )
    )


# -- full pipeline -----------------------------------------------------------


@dataclass
class BranchReport:
    constraints: ConstraintSet
    kernel: List[List[RatFuncQ]]
    genericity: List[PolyQ]
    vectors: List[VermaVector]
    verified: bool
    unverifiable: bool = False


@dataclass
class WeightReport:
    weight: Weight
    monomials: List[PbwMonomial]
    branches: List[BranchReport]
    trivial: bool = False

    @property
    def has_singular_vector(self) -> bool:
        return any(b.kernel for b in self.branches)


def _clear_denominators(nvars: int, vec: List[RatFuncQ]) -> List[PolyQ]:
    from .ring import poly_gcd

    lcm = PolyQ.one(nvars)
    for x in vec:
        d = x.den
        if d.is_constant:
            continue
        g = poly_gcd(lcm, d)
        lcm = lcm * (d // g)
    return [(x.num * (lcm // x.den)) for x in vec]


def kernel_vector_to_verma(
    alg: JacobiAlgebra, monomials: Sequence[PbwMonomial], vec: List[RatFuncQ]
) -> VermaVector:
    """Candidate singular vector from a kernel vector, denominators cleared."""
    polys = _clear_denominators(alg.n, list(vec))
    return VermaVector(alg.n, {m: p for m, p in zip(monomials, polys) if not p.is_zero})


def find_singular_vectors(
    alg: JacobiAlgebra, w: Weight, branch_budget: int = 64
) -> WeightReport:
    """enumerate -> assemble -> solve -> verify for one target weight."""
    if w.is_zero:
        alg_mon = PbwMonomial.unit(alg)
        return WeightReport(w, [alg_mon], [], trivial=True)
    system = assemble_system(alg, w)
    if not system.monomials:
        return WeightReport(w, [], [], trivial=False)
    solution = solve_parametric(system, branch_budget)
    reports: List[BranchReport] = []
    for br in solution:
        vectors = [kernel_vector_to_verma(alg, system.monomials, vec) for vec in br.kernel]
        if br.constraints.solved_form is None and br.constraints.equations:
            reports.append(
                BranchReport(br.constraints, br.kernel, br.genericity, vectors, False, True)
            )
            continue
        ok = all(is_singular(alg, v, br.constraints).singular for v in vectors)
        reports.append(BranchReport(br.constraints, br.kernel, br.genericity, vectors, ok))
    return WeightReport(w, system.monomials, reports)
