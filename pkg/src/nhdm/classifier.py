"""Classification of realizable abelian subgroups of the maximal torus.

The scan walks the closure of charge lattices under monomial additions,
deduplicating lattices by their canonical Hermite basis.  Every subset of
monomials spans one of the visited lattices, so the walk provably covers the
fixed-size subset scan while also finding groups that would need more than
N-1 terms (none are known to occur; the equality is tested, not assumed).

Realizability rests on the fact that the generic torus-symmetric potential
has no unitary symmetry beyond the torus itself, so the group computed from
any added term set is the full unitary symmetry group of backbone + terms.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .exactmath import IntMatrix, hnf_add, hnf_contains, snf
from .groups import GroupSignature, all_abelian_groups_up_to, group_from_snf
from .monomials import Monomial, build_x_matrix, charge_vector, enumerate_monomials
from .torus import PhaseVector, TorusBasis, direction_weights, element_from_angles, torus_basis

Rows = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class SymmetryGroup:
    """Symmetry group of a term set: signature plus explicit generators.

    ``finite_generators`` are diagonal transformations generating the cyclic
    factors (one per invariant factor, in order).  ``torus_directions`` are
    integer angle-space vectors spanning the continuous part.
    """

    signature: GroupSignature
    finite_generator_angles: tuple[tuple[Fraction, ...], ...]
    finite_generators: tuple[PhaseVector, ...]
    torus_directions: tuple[tuple[int, ...], ...]


def _canonical_generator(column: tuple[int, ...], d: int) -> tuple[Fraction, ...]:
    """Lex-smallest coprime multiple of column/d, reduced mod 1.

    Any multiple k with gcd(k, d) = 1 generates the same cyclic factor; the
    smallest representative makes reports deterministic and matches hand
    calculations.
    """
    best = None
    for k in range(1, d + 1):
        if gcd(k, d) != 1:
            continue
        cand = tuple((Fraction(k * c, d)) % 1 for c in column)
        if best is None or cand < best:
            best = cand
    assert best is not None
    return best


def symmetry_group_of_terms(terms, basis: TorusBasis) -> SymmetryGroup:
    """Torus subgroup leaving every term invariant, with solved generators."""
    x = build_x_matrix(terms, basis)
    return _group_of_charge_matrix(x, basis)


def _group_of_charge_matrix(x: IntMatrix, basis: TorusBasis) -> SymmetryGroup:
    n = basis.n
    res = snf(x)
    signature = group_from_snf(res.d, n)
    angles = []
    gens = []
    dirs = []
    for i in range(n):
        d = res.d[i] if i < len(res.d) else 0
        col = res.v.column(i)
        if d == 0:
            dirs.append(col)
        elif d > 1:
            a = _canonical_generator(col, d)
            angles.append(a)
            gens.append(element_from_angles(basis, a))
    return SymmetryGroup(signature, tuple(angles), tuple(gens), tuple(dirs))


def _group_of_lattice(rows: Rows, basis: TorusBasis) -> SymmetryGroup:
    if not rows:
        return SymmetryGroup(
            GroupSignature(torus_rank=basis.n), (), (),
            tuple(tuple(1 if j == i else 0 for j in range(basis.n)) for i in range(basis.n)))
    return _group_of_charge_matrix(IntMatrix.from_rows(rows), basis)


@dataclass(frozen=True)
class ClassificationEntry:
    """One realizable group with a minimal witness term set."""

    signature: GroupSignature
    witness: tuple[Monomial, ...]
    generators: tuple[PhaseVector, ...]
    generator_angles: tuple[tuple[Fraction, ...], ...]
    torus_directions: tuple[tuple[int, ...], ...]
    lattice: Rows
    n_lattices: int
    variants: tuple["ClassificationEntry", ...] = ()


@dataclass(frozen=True)
class ClassificationResult:
    n_doublets: int
    entries: tuple[ClassificationEntry, ...]
    max_finite_order: int

    def signatures(self) -> tuple[GroupSignature, ...]:
        return tuple(e.signature for e in self.entries)

    def finite_signatures(self) -> tuple[GroupSignature, ...]:
        return tuple(e.signature for e in self.entries if e.signature.is_finite)

    def find(self, signature: GroupSignature) -> ClassificationEntry | None:
        return next((e for e in self.entries if e.signature == signature), None)


@lru_cache(maxsize=None)
def _lattice_scan(n_doublets: int) -> dict[Rows, tuple[Monomial, ...]]:
    """All charge lattices spanned by monomial subsets, keyed by HNF basis.

    Breadth-first over single-monomial additions, so the recorded witness for
    each lattice has the minimum number of terms.
    """
    basis = torus_basis(n_doublets)
    generators: list[tuple[tuple[int, ...], Monomial]] = []
    seen_charges = set()
    for m in enumerate_monomials(n_doublets):
        chg = charge_vector(m, basis)
        key = min(chg, tuple(-c for c in chg))
        if key not in seen_charges:
            seen_charges.add(key)
            generators.append((chg, m))

    empty: Rows = ()
    states: dict[Rows, tuple[Monomial, ...]] = {empty: ()}
    frontier: deque[Rows] = deque([empty])
    while frontier:
        lattice = frontier.popleft()
        witness = states[lattice]
        for chg, mono in generators:
            if hnf_contains(lattice, chg):
                continue
            grown = hnf_add(lattice, chg)
            if grown not in states:
                states[grown] = witness + (mono,)
                frontier.append(grown)
    return states


def classify(n_doublets: int, include_continuous: bool = True) -> ClassificationResult:
    """Complete list of realizable subgroups of the maximal torus.

    One entry per abstract group, carrying the first minimal witness found.
    Continuous groups additionally list one variant per distinct eigenvalue
    pattern of the torus directions (inequivalent embeddings with the same
    abstract group).  The trivial group is excluded.
    """
    if not 2 <= n_doublets <= 6:
        raise ValueError("doublet count out of supported range (2..6)")
    result = _classify_cached(n_doublets)
    if include_continuous:
        return result
    entries = tuple(e for e in result.entries if e.signature.is_finite)
    return ClassificationResult(n_doublets, entries, result.max_finite_order)


def _weight_pattern(basis: TorusBasis, dirs: Rows) -> tuple:
    return tuple(sorted(tuple(sorted(abs(w) for w in direction_weights(basis, d))) for d in dirs))


@lru_cache(maxsize=None)
def _classify_cached(n_doublets: int) -> ClassificationResult:
    basis = torus_basis(n_doublets)
    states = _lattice_scan(n_doublets)

    primary: dict[GroupSignature, ClassificationEntry] = {}
    variants: dict[GroupSignature, dict[tuple, ClassificationEntry]] = {}
    counts: dict[GroupSignature, int] = {}
    # Insertion order of the scan is breadth-first, so the first entry per
    # signature has a minimal witness.
    for lattice, witness in states.items():
        group = _group_of_lattice(lattice, basis)
        sig = group.signature
        if sig.is_trivial:
            continue
        entry = ClassificationEntry(
            signature=sig, witness=witness,
            generators=group.finite_generators,
            generator_angles=group.finite_generator_angles,
            torus_directions=group.torus_directions,
            lattice=lattice, n_lattices=0)
        counts[sig] = counts.get(sig, 0) + 1
        if sig not in primary:
            primary[sig] = entry
            if not sig.is_finite:
                variants[sig] = {_weight_pattern(basis, group.torus_directions): entry}
        elif not sig.is_finite:
            pattern = _weight_pattern(basis, group.torus_directions)
            variants[sig].setdefault(pattern, entry)

    entries = []
    for sig in sorted(primary, key=GroupSignature.sort_key):
        e = primary[sig]
        extra = ()
        if sig in variants and len(variants[sig]) > 1:
            first_pattern = _weight_pattern(basis, e.torus_directions)
            extra = tuple(v for p, v in sorted(variants[sig].items()) if p != first_pattern)
        entries.append(ClassificationEntry(
            signature=sig, witness=e.witness, generators=e.generators,
            generator_angles=e.generator_angles, torus_directions=e.torus_directions,
            lattice=e.lattice, n_lattices=counts[sig], variants=extra))
    max_order = max((int(e.signature.order()) for e in entries if e.signature.is_finite),
                    default=1)
    assert max_order <= 2 ** (n_doublets - 1), "order bound violated"
    return ClassificationResult(n_doublets, tuple(entries), max_order)


def finite_groups_by_subset_scan(n_doublets: int) -> set[GroupSignature]:
    """Finite groups found by checking every subset of exactly N-1 monomials.

    This is the direct strategy the lattice walk supersedes; it is kept as an
    independent cross-check of completeness.
    """
    basis = torus_basis(n_doublets)
    monos = enumerate_monomials(n_doublets)
    charges = {m: charge_vector(m, basis) for m in monos}
    found: set[GroupSignature] = set()
    for subset in itertools.combinations(monos, n_doublets - 1):
        x = IntMatrix.from_rows([charges[m] for m in subset])
        res = snf(x)
        if all(res.d):
            sig = group_from_snf(res.d, n_doublets - 1)
            if not sig.is_trivial:
                found.add(sig)
    return found


@dataclass(frozen=True)
class OrderBoundReport:
    n_doublets: int
    max_order: int
    bound: int
    bound_met: bool


def verify_order_bound(n_doublets: int) -> OrderBoundReport:
    """Check the exact bound 2^(N-1) on finite group orders: never exceeded,
    always attained."""
    if not 2 <= n_doublets <= 5:
        raise ValueError("doublet count out of supported range (2..5)")
    result = classify(n_doublets)
    bound = 2 ** (n_doublets - 1)
    return OrderBoundReport(n_doublets, result.max_finite_order, bound,
                            result.max_finite_order == bound)


@dataclass(frozen=True)
class ConjectureProbe:
    """Realization status of every abelian group within the order bound.

    Purely informational: whether every such group is realizable for all N is
    an open question, and this report only states what the scan found.
    """

    n_doublets: int
    bound: int
    realized: tuple[GroupSignature, ...]
    missing: tuple[GroupSignature, ...]

    @property
    def all_realized(self) -> bool:
        return not self.missing


def probe_conjecture(n_doublets: int) -> ConjectureProbe:
    if not 2 <= n_doublets <= 5:
        raise ValueError("doublet count out of supported range (2..5)")
    result = classify(n_doublets)
    bound = 2 ** (n_doublets - 1)
    found = set(result.finite_signatures())
    realized = []
    missing = []
    for g in all_abelian_groups_up_to(bound):
        (realized if g in found else missing).append(g)
    return ConjectureProbe(n_doublets, bound, tuple(realized), tuple(missing))


def backbone_terms(n_doublets: int, pretty: bool = False) -> list[str]:
    """Rendered terms of the fully torus-symmetric potential.

    Every potential in the classification is understood as this backbone plus
    the witness terms; the backbone itself is neutral under all phase
    rotations.
    """
    phi = "φ" if pretty else "f"
    dag = "†" if pretty else "+"
    terms = [f"-m{a}^2 ({phi}{a}{dag} {phi}{a})" for a in range(1, n_doublets + 1)]
    terms += [f"L{a}{a} ({phi}{a}{dag} {phi}{a})^2" for a in range(1, n_doublets + 1)]
    for a in range(1, n_doublets + 1):
        for b in range(a + 1, n_doublets + 1):
            terms.append(f"L{a}{b} ({phi}{a}{dag} {phi}{a})({phi}{b}{dag} {phi}{b})")
            terms.append(f"L'{a}{b} |{phi}{a}{dag} {phi}{b}|^2")
    return terms


@dataclass(frozen=True)
class WitnessReport:
    n_doublets: int
    signature: GroupSignature
    realizable: bool
    witness: tuple[Monomial, ...]
    generators: tuple[PhaseVector, ...]

    def render(self, pretty: bool = False) -> str:
        if not self.realizable:
            return f"{self.signature} is not realizable as a torus subgroup for N={self.n_doublets}"
        lines = [f"group: {self.signature}"]
        lines.append("witness terms (added to the torus-symmetric backbone):")
        for m in self.witness:
            lines.append(f"  {m.render(pretty)} + h.c.")
        if self.generators:
            lines.append("generators:")
            for g in self.generators:
                lines.append(f"  {g}")
        lines.append("backbone:")
        lines.append("  " + " + ".join(backbone_terms(self.n_doublets, pretty)))
        return "\n".join(lines)


def witness_potential(signature: GroupSignature, n_doublets: int) -> WitnessReport:
    """Witness term set for a signature, or a not-realizable report."""
    result = classify(n_doublets)
    entry = result.find(signature)
    if entry is None:
        return WitnessReport(n_doublets, signature, False, (), ())
    return WitnessReport(n_doublets, signature, True, entry.witness, entry.generators)
