"""Antiunitary (generalized-CP) extensions of torus subgroups.

Implements the five-step embedding strategy over generalized-permutation
matrices with exact rational phases:

1. find a permutation pattern commuting with the chosen abelian group,
2. describe its centralizer among generalized permutations,
3. close the antiunitary coset so products of two antiunitaries land in the
   group (this quantizes the structural phases and picks the square),
4. restrict the invariant terms by antiunitary invariance, dropping terms
   whose coefficient is forced to vanish,
5. check that the restricted potential acquires no further unitary symmetry.

Verdicts are exact for three doublets, where all cases are worked out; for
more doublets the generalized-permutation ansatz is a documented soundness
boundary (a "realizable" verdict is then best-effort).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .classifier import _group_of_lattice, _lattice_scan
from .exactmath import IntMatrix, hnf_rows, snf
from .groups import GroupSignature, extend_by_antiunitary
from .monomials import Monomial, charge_vector, enumerate_monomials, phase_shift
from .torus import PhaseVector, direction_weights, torus_basis

Perm = tuple[int, ...]  # 0-based images: a -> perm[a]


# -- generalized permutation matrices -----------------------------------------


@dataclass(frozen=True)
class GenPermMatrix:
    """Unitary matrix with one phase entry per row and column.

    Acts on doublets as phi_a -> e(phases[a]) phi_{perm[a]} (indices 0-based
    internally; monomial factors are 1-based).  Phases are rational, in units
    of 2*pi, reduced mod 1.
    """

    perm: Perm
    phases: tuple[Fraction, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("not a permutation")
        if len(self.phases) != len(self.perm):
            raise ValueError("need one phase per row")
        object.__setattr__(self, "phases", tuple(Fraction(p) % 1 for p in self.phases))

    @classmethod
    def identity(cls, n: int) -> "GenPermMatrix":
        return cls(tuple(range(n)), (Fraction(0),) * n)

    @classmethod
    def diagonal(cls, pv: PhaseVector) -> "GenPermMatrix":
        return cls(tuple(range(len(pv))), pv.phases)

    @classmethod
    def permutation(cls, perm: Perm) -> "GenPermMatrix":
        return cls(tuple(perm), (Fraction(0),) * len(perm))

    @property
    def n(self) -> int:
        return len(self.perm)

    @property
    def is_diagonal(self) -> bool:
        return self.perm == tuple(range(self.n))

    def to_phase_vector(self) -> PhaseVector:
        if not self.is_diagonal:
            raise ValueError("not diagonal")
        return PhaseVector(self.phases)

    def compose(self, other: "GenPermMatrix") -> "GenPermMatrix":
        """Matrix product self @ other (apply ``other`` first)."""
        perm = tuple(other.perm[self.perm[a]] for a in range(self.n))
        phases = tuple(self.phases[a] + other.phases[self.perm[a]] for a in range(self.n))
        return GenPermMatrix(perm, phases)

    def inverse(self) -> "GenPermMatrix":
        inv = [0] * self.n
        for a, b in enumerate(self.perm):
            inv[b] = a
        return GenPermMatrix(tuple(inv), tuple(-self.phases[inv[a]] for a in range(self.n)))

    def conjugate(self) -> "GenPermMatrix":
        return GenPermMatrix(self.perm, tuple(-p for p in self.phases))

    def equal_mod_scalar(self, other: "GenPermMatrix") -> bool:
        if self.perm != other.perm:
            return False
        diff = (self.phases[0] - other.phases[0]) % 1
        return all((a - b) % 1 == diff for a, b in zip(self.phases[1:], other.phases[1:]))

    def to_json(self) -> dict:
        return {"perm": [p + 1 for p in self.perm], "phases": [str(p) for p in self.phases]}

    def __str__(self) -> str:
        cols = ", ".join(f"{a + 1}->{b + 1}:e({p})" for a, (b, p) in
                         enumerate(zip(self.perm, self.phases)))
        return f"[{cols}]"


def antiunitary_square(b: GenPermMatrix) -> GenPermMatrix:
    """(b J)^2 = b b* as a unitary matrix."""
    return b.compose(b.conjugate())


def conjugate_diagonal(u: GenPermMatrix, pv: PhaseVector) -> PhaseVector:
    """u diag(pv) u^{-1}, which is again diagonal."""
    return PhaseVector(tuple(pv.phases[u.perm[a]] for a in range(u.n)))


def commutes_with_diagonal(u: GenPermMatrix, pv: PhaseVector) -> bool:
    """Commutation modulo an overall scalar (the PSU identification)."""
    conj = conjugate_diagonal(u, pv)
    diff = (conj.phases[0] - pv.phases[0]) % 1
    return all((a - b) % 1 == diff for a, b in zip(conj.phases[1:], pv.phases[1:]))


# -- the action of transformations on monomials -------------------------------


def _sorted_factors(factors) -> tuple:
    return tuple(sorted(factors))


def _conj(factors) -> tuple:
    return tuple(sorted((b, a) for a, b in factors))


def _flat(factors) -> tuple:
    return tuple(x for pair in factors for x in pair)


def _canonical_with_flag(raw_factors) -> tuple[Monomial, bool]:
    raw = _sorted_factors(raw_factors)
    conj = _conj(raw)
    if _flat(raw) <= _flat(conj):
        return Monomial(raw), False
    return Monomial(conj), True


def act_unitary(u: GenPermMatrix, m: Monomial) -> tuple[Monomial, Fraction, bool]:
    """Image of a monomial under a unitary generalized permutation.

    Returns (canonical image, phase shift, conjugated) such that the monomial
    evaluated on transformed fields equals e(shift) times the image; when
    ``conjugated`` is set the image listed is the conjugate of the raw one.
    """
    raw = [(u.perm[a - 1] + 1, u.perm[b - 1] + 1) for a, b in m.factors]
    shift = sum((u.phases[b - 1] - u.phases[a - 1] for a, b in m.factors), Fraction(0))
    mono, flag = _canonical_with_flag(raw)
    return mono, shift % 1, flag


def act_antiunitary(b: GenPermMatrix, m: Monomial) -> tuple[Monomial, Fraction, bool]:
    """Image of a monomial under b J (J acting by complex conjugation)."""
    raw = [(b.perm[b2 - 1] + 1, b.perm[a - 1] + 1) for a, b2 in m.factors]
    shift = sum((b.phases[b2 - 1] - b.phases[a - 1] for a, b2 in m.factors), Fraction(0))
    mono, flag = _canonical_with_flag(raw)
    return mono, shift % 1, flag


# -- exact linear congruence systems ------------------------------------------


@dataclass(frozen=True)
class Equation:
    """Integer-coefficient relation  sum coeffs[x] * x == rhs  (mod 1)."""

    coeffs: tuple[tuple[str, int], ...]
    rhs: Fraction

    def render(self) -> str:
        parts = []
        for name, c in self.coeffs:
            if c == 1:
                parts.append(f"+ {name}")
            elif c == -1:
                parts.append(f"- {name}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {abs(c)}*{name}")
        lhs = " ".join(parts).lstrip("+ ") or "0"
        return f"{lhs} = {self.rhs} (mod 1)"


class PhaseConstraintSystem:
    """Linear congruences mod 1 over named rational unknowns.

    Solvability and the solution set are decided exactly by a Smith
    decomposition of the integer coefficient matrix.
    """

    def __init__(self, unknowns, equations=()):
        self.unknowns: tuple[str, ...] = tuple(unknowns)
        self._index = {u: i for i, u in enumerate(self.unknowns)}
        self.equations: list[Equation] = list(equations)

    def copy(self) -> "PhaseConstraintSystem":
        return PhaseConstraintSystem(self.unknowns, self.equations)

    def add(self, coeffs: dict[str, int], rhs) -> None:
        clean = tuple(sorted((n, int(c)) for n, c in coeffs.items() if c))
        for name, _ in clean:
            if name not in self._index:
                raise KeyError(f"unknown unknown {name!r}")
        self.equations.append(Equation(clean, Fraction(rhs) % 1))

    def _decompose(self):
        rows = []
        rhs = []
        for eq in self.equations:
            row = [0] * len(self.unknowns)
            for name, c in eq.coeffs:
                row[self._index[name]] = c
            rows.append(row)
            rhs.append(eq.rhs)
        return rows, rhs

    def solve(self):
        """(particular, torsion generators, free directions) or None.

        The particular solution and each generator are dicts over unknowns;
        free directions span the divisible part of the solution set, torsion
        generators its finite part (all mod 1).
        """
        rows, rhs = self._decompose()
        nu = len(self.unknowns)
        if not rows:
            particular = {u: Fraction(0) for u in self.unknowns}
            free = [{u: Fraction(1 if v == u else 0) for u in self.unknowns}
                    for v in self.unknowns]
            return particular, [], free
        if nu == 0:
            return ({}, [], []) if all(r.denominator == 1 for r in rhs) else None
        res = snf(IntMatrix.from_rows(rows))
        transformed = [sum(res.u[(i, k)] * rhs[k] for k in range(len(rhs))) % 1
                       for i in range(len(rows))]
        rank = res.rank
        for i in range(rank, len(rows)):
            if transformed[i].denominator != 1:
                return None
        y = [Fraction(0)] * nu
        for i in range(min(len(rows), nu)):
            if i < len(res.d) and res.d[i]:
                y[i] = transformed[i] / res.d[i]
        particular = {}
        for j, name in enumerate(self.unknowns):
            particular[name] = sum(res.v[(j, i)] * y[i] for i in range(nu)) % 1
        torsion = []
        for i in range(min(len(res.d), nu)):
            if res.d[i] > 1:
                torsion.append({name: Fraction(res.v[(j, i)], res.d[i]) % 1
                                for j, name in enumerate(self.unknowns)})
        free = []
        for i in range(rank, nu):
            free.append({name: Fraction(res.v[(j, i)]) for j, name in enumerate(self.unknowns)})
        return particular, torsion, free

    def solvable(self) -> bool:
        return self.solve() is not None

    def render(self) -> list[str]:
        return [eq.render() for eq in self.equations]


def _rational_in_span(columns: list[list[Fraction]], target: list[Fraction]) -> bool:
    """True when target lies in the rational column span."""
    if not columns:
        return all(x == 0 for x in target)
    rows = len(target)
    mat = [[columns[j][i] for j in range(len(columns))] + [target[i]] for i in range(rows)]

    def rank(m, ncols):
        m = [row[:ncols] for row in m]
        r = 0
        for c in range(ncols):
            piv = next((i for i in range(r, len(m)) if m[i][c]), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = m[r][c]
            for i in range(len(m)):
                if i != r and m[i][c]:
                    f = m[i][c] / inv
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            r += 1
        return r

    return rank(mat, len(columns)) == rank(mat, len(columns) + 1)


# -- abelian bases -------------------------------------------------------------


@dataclass(frozen=True)
class AbelianBase:
    """A concrete torus subgroup: finite generators plus continuous directions."""

    n_doublets: int
    signature: GroupSignature
    finite_generators: tuple[PhaseVector, ...]
    angle_directions: tuple[tuple[int, ...], ...]
    doublet_weights: tuple[tuple[int, ...], ...]
    lattice: tuple[tuple[int, ...], ...]

    @classmethod
    def trivial(cls, n_doublets: int) -> "AbelianBase":
        basis = torus_basis(n_doublets)
        full = tuple(charge_vector(m, basis) for m in enumerate_monomials(n_doublets))
        return cls(n_doublets, GroupSignature(), (), (), (), hnf_rows(full))

    @classmethod
    def from_lattice(cls, n_doublets: int, rows) -> "AbelianBase":
        basis = torus_basis(n_doublets)
        rows = hnf_rows(rows)
        group = _group_of_lattice(rows, basis)
        weights = tuple(direction_weights(basis, d) for d in group.torus_directions)
        return cls(n_doublets, group.signature, group.finite_generators,
                   group.torus_directions, weights, rows)

    def invariant_monomials(self) -> tuple[Monomial, ...]:
        """All monomials left invariant by every element of the group."""
        basis = torus_basis(self.n_doublets)
        out = []
        for m in enumerate_monomials(self.n_doublets):
            if any(phase_shift(m, g) != 0 for g in self.finite_generators):
                continue
            chg = charge_vector(m, basis)
            if any(sum(c * d for c, d in zip(chg, direction)) != 0
                   for direction in self.angle_directions):
                continue
            out.append(m)
        return tuple(out)

    def finite_elements(self) -> list[tuple[tuple[int, ...], PhaseVector]]:
        """All elements of the finite part as (exponents, phase vector)."""
        orders = self.signature.finite
        out = []
        for expts in itertools.product(*(range(d) for d in orders)):
            pv = PhaseVector.identity(self.n_doublets)
            for e, g in zip(expts, self.finite_generators):
                pv = pv + e * g
            out.append((expts, pv))
        return out

    def contains_diagonal(self, pv: PhaseVector) -> bool:
        """Exact membership test against the group's full invariant lattice."""
        return all(_lattice_pairing(row, pv, self.n_doublets) == 0
                   for row in _full_invariant_lattice(self))


def _full_invariant_lattice(base: AbelianBase) -> tuple[tuple[int, ...], ...]:
    basis = torus_basis(base.n_doublets)
    return hnf_rows([charge_vector(m, basis) for m in base.invariant_monomials()])


@lru_cache(maxsize=None)
def _charge_basis_inverse(n_doublets: int):
    from .exactmath import inverse_unimodular
    from .monomials import charge_basis_matrix

    return inverse_unimodular(charge_basis_matrix(n_doublets))


def _lattice_pairing(charge_row, pv: PhaseVector, n_doublets: int) -> Fraction:
    """Phase (mod 1) a charge row assigns to a diagonal element.

    The row is rewritten over the charges of (phi_1^dagger phi_{i+1}), whose
    pairing with a diagonal element is just that bilinear's phase shift.
    """
    a_inv = _charge_basis_inverse(n_doublets)
    coeffs = [sum(charge_row[k] * a_inv[(k, j)] for k in range(len(charge_row)))
              for j in range(len(charge_row))]
    total = Fraction(0)
    for j, c in enumerate(coeffs):
        total += c * (pv.phases[j + 1] - pv.phases[0])
    return total % 1


def _su_phases(pv: PhaseVector) -> tuple[Fraction, ...]:
    return pv.su_normalized()


def commutant_perms(base: AbelianBase) -> list[Perm]:
    """Permutation patterns sigma with psi_a + psi_{sigma(a)} constant per generator.

    A matrix b supported on such a pattern makes b J commute with the whole
    group; no other generalized permutation can.
    """
    n = base.n_doublets
    out = []
    finite = [_su_phases(g) for g in base.finite_generators]
    for perm in itertools.permutations(range(n)):
        ok = True
        for psi in finite:
            vals = {(psi[a] + psi[perm[a]]) % 1 for a in range(n)}
            if len(vals) != 1:
                ok = False
                break
        if ok:
            for w in base.doublet_weights:
                if any(w[a] + w[perm[a]] != 0 for a in range(n)):
                    ok = False
                    break
        if ok:
            out.append(perm)
    return out


def centralizer_perms(base: AbelianBase) -> list[Perm]:
    """Permutation patterns of unitary generalized permutations commuting with the group."""
    n = base.n_doublets
    out = []
    finite = [_su_phases(g) for g in base.finite_generators]
    for perm in itertools.permutations(range(n)):
        ok = all(len({(psi[a] - psi[perm[a]]) % 1 for a in range(n)}) == 1 for psi in finite)
        if ok:
            ok = all(all(w[a] == w[perm[a]] for a in range(n)) for w in base.doublet_weights)
        if ok:
            out.append(perm)
    return out


def commutant_support(base: AbelianBase) -> tuple[tuple[bool, ...], ...]:
    """Entry pattern (i, j) where an antiunitary b J may have support.

    An entry is allowed when psi_i + psi_j vanishes up to a center shift for
    every finite generator and exactly for every continuous direction.
    """
    n = base.n_doublets
    finite = [_su_phases(g) for g in base.finite_generators]
    shifts = {Fraction(k, n) % 1 for k in range(n)}

    def allowed(i: int, j: int) -> bool:
        for psi in finite:
            if (psi[i] + psi[j]) % 1 not in shifts:
                return False
        return all(w[i] + w[j] == 0 for w in base.doublet_weights)

    return tuple(tuple(allowed(i, j) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class CentralizerDescription:
    """Centralizer of the group among generalized permutations.

    Each listed permutation pattern extends to a commuting unitary with fully
    free phases (modulo the overall scalar), so the centralizer is the union
    of those phase tori.
    """

    base: AbelianBase
    perms: tuple[Perm, ...]

    def contains(self, u: GenPermMatrix) -> bool:
        if u.perm not in self.perms:
            return False
        return all(commutes_with_diagonal(u, g) for g in self.base.finite_generators)


def centralizer_genperm(base: AbelianBase) -> CentralizerDescription:
    return CentralizerDescription(base, tuple(centralizer_perms(base)))


# -- candidate construction -----------------------------------------------------


def _sigma_cycles(sigma: Perm) -> list[tuple[int, ...]]:
    n = len(sigma)
    seen = [False] * n
    cycles = []
    for a in range(n):
        if not seen[a]:
            cyc = []
            x = a
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = sigma[x]
            cycles.append(tuple(sorted(cyc)))
    return cycles


@dataclass(frozen=True)
class BackboneClasses:
    """Coefficient identifications forced on the torus-symmetric backbone.

    Antiunitary invariance only ever permutes backbone terms, so the forced
    restrictions are equalities along the orbits of the permutation pattern:
    one class per cycle for the mass/self-coupling indices, one per pair
    orbit for the cross couplings.
    """

    single_classes: tuple[tuple[int, ...], ...]   # 1-based doublet indices
    pair_classes: tuple[tuple[tuple[int, int], ...], ...]

    def equalities(self) -> list[str]:
        out = []
        for cls in self.single_classes:
            if len(cls) > 1:
                out.append(" = ".join(f"m{a}^2" for a in cls))
                out.append(" = ".join(f"L{a}{a}" for a in cls))
        for cls in self.pair_classes:
            if len(cls) > 1:
                out.append(" = ".join(f"L{a}{b}" for a, b in cls))
                out.append(" = ".join(f"L'{a}{b}" for a, b in cls))
        return out

    def preserved_by(self, perm: Perm) -> bool:
        for cls in self.single_classes:
            if {perm[a - 1] + 1 for a in cls} != set(cls):
                return False
        for cls in self.pair_classes:
            mapped = {tuple(sorted((perm[a - 1] + 1, perm[b - 1] + 1))) for a, b in cls}
            if mapped != set(cls):
                return False
        return True


def backbone_classes(sigma: Perm) -> BackboneClasses:
    n = len(sigma)
    cycles = _sigma_cycles(sigma)
    singles = tuple(tuple(a + 1 for a in cyc) for cyc in cycles)
    pair_seen: set[tuple[int, int]] = set()
    pair_classes = []
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if (a, b) in pair_seen:
                continue
            orbit = set()
            x, y = a, b
            while True:
                pair = tuple(sorted((x, y)))
                if pair in orbit:
                    break
                orbit.add(pair)
                x, y = sigma[x - 1] + 1, sigma[y - 1] + 1
            pair_seen |= orbit
            pair_classes.append(tuple(sorted(orbit)))
    return BackboneClasses(singles, tuple(pair_classes))


def _psi(m: Monomial) -> str:
    return f"psi[{m.render()}]"


def _xi(a: int) -> str:
    return f"xi{a}"


@dataclass(frozen=True)
class CpCandidate:
    """One possible abelian extension of a torus subgroup by an antiunitary.

    ``square`` is the unitary part of the squared antiunitary generator; the
    constraint system collects the structural-phase pinning and the
    coefficient conditions required for invariance of the surviving terms.
    """

    base: AbelianBase
    sigma: Perm
    square: PhaseVector
    square_exponents: tuple[int, ...]
    signature: GroupSignature
    system: PhaseConstraintSystem
    surviving: tuple[Monomial, ...]
    killed: tuple[Monomial, ...]
    magnitude_classes: tuple[tuple[Monomial, ...], ...]
    backbone: BackboneClasses


def _orbits_of_action(sigma: Perm, terms) -> list[tuple[Monomial, ...]]:
    """Connected components of the antiunitary image map on the term set."""
    terms = list(terms)
    parent = {m: m for m in terms}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    b = GenPermMatrix.permutation(sigma)
    for m in terms:
        img, _, _ = act_antiunitary(b, m)
        if img in parent:
            ra, rb = find(m), find(img)
            if ra != rb:
                parent[ra] = rb
    groups: dict[Monomial, list[Monomial]] = {}
    for m in terms:
        groups.setdefault(find(m), []).append(m)
    return sorted((tuple(sorted(v)) for v in groups.values()), key=lambda t: t[0])


def _term_equations(sigma: Perm, m: Monomial) -> tuple[dict[str, int], Monomial]:
    """Coefficient equation of antiunitary invariance for one term.

    Returns the xi/psi coefficient map of the relation and the image
    monomial.  The relation reads: sum == 0 (mod 1).
    """
    b = GenPermMatrix.permutation(sigma)
    img, _, flag = act_antiunitary(b, m)
    coeffs: dict[str, int] = {}
    for a, b2 in m.factors:
        coeffs[_xi(b2)] = coeffs.get(_xi(b2), 0) + 1
        coeffs[_xi(a)] = coeffs.get(_xi(a), 0) - 1
    # Coefficient matching: conjugated image gives shift + psi_img + psi_m = 0,
    # direct image gives shift - psi_img + psi_m = 0.
    sign = 1 if flag else -1
    coeffs[_psi(img)] = coeffs.get(_psi(img), 0) + sign
    coeffs[_psi(m)] = coeffs.get(_psi(m), 0) + 1
    return coeffs, img


def cp_extensions(base: AbelianBase) -> list[CpCandidate]:
    """All candidate abelian extensions of ``base`` by an antiunitary generator.

    Candidates are indexed by a commuting permutation pattern and the square
    class of the antiunitary generator inside the group.  An empty list means
    the group admits no commuting antiunitary at all.
    """
    n = base.n_doublets
    invariant = base.invariant_monomials()
    elements = base.finite_elements()
    squares = [2 * pv for _, pv in elements]
    candidates: list[CpCandidate] = []
    seen: set[tuple] = set()

    for sigma in commutant_perms(base):
        if any(sigma[sigma[a]] != a for a in range(n)):
            continue  # the squared generator must stay diagonal
        for expts, f in elements:
            pin = _pin_system(base, sigma, f, invariant)
            if not pin.solvable():
                continue
            class_key = min(_scalar_key(f + s) for s in squares)
            key = (sigma, class_key)
            if key in seen:
                continue
            seen.add(key)
            candidates.append(_build_candidate(base, sigma, expts, f, invariant))
    return candidates


def _scalar_key(pv: PhaseVector) -> tuple:
    return tuple((p - pv.phases[0]) % 1 for p in pv.phases)


def _pin_unknowns(base: AbelianBase, invariant) -> list[str]:
    names = [_xi(a) for a in range(1, base.n_doublets + 1)]
    names.append("c0")
    names += [f"t{i + 1}" for i in range(len(base.angle_directions))]
    names += [_psi(m) for m in invariant]
    return names


def _pin_system(base: AbelianBase, sigma: Perm, f: PhaseVector,
                invariant) -> PhaseConstraintSystem:
    """Structural-phase equations pinning (b J)^2 to the element f."""
    system = PhaseConstraintSystem(_pin_unknowns(base, invariant))
    for a in range(base.n_doublets):
        coeffs = {_xi(a + 1): 1}
        coeffs[_xi(sigma[a] + 1)] = coeffs.get(_xi(sigma[a] + 1), 0) - 1
        coeffs["c0"] = -1
        for i, w in enumerate(base.doublet_weights):
            if w[a]:
                coeffs[f"t{i + 1}"] = -w[a]
        system.add(coeffs, f.phases[a])
    return system


def _build_candidate(base: AbelianBase, sigma: Perm, expts, f: PhaseVector,
                     invariant) -> CpCandidate:
    system = _pin_system(base, sigma, f, invariant)
    surviving: list[Monomial] = []
    killed: list[Monomial] = []
    mag_pairs: list[tuple[Monomial, Monomial]] = []
    for orbit in _orbits_of_action(sigma, invariant):
        trial = system.copy()
        for m in orbit:
            coeffs, img = _term_equations(sigma, m)
            trial.add(coeffs, 0)
            if img != m:
                mag_pairs.append((m, img))
        if trial.solvable():
            system = trial
            surviving.extend(orbit)
        else:
            killed.extend(orbit)
    # magnitude classes: union of surviving terms linked by the action
    parent = {m: m for m in surviving}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in mag_pairs:
        if a in parent and b in parent:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    classes: dict[Monomial, list[Monomial]] = {}
    for m in surviving:
        classes.setdefault(find(m), []).append(m)
    mag_classes = tuple(sorted((tuple(sorted(v)) for v in classes.values()),
                               key=lambda t: t[0]))
    finite_part = GroupSignature(base.signature.finite, base.signature.torus_rank)
    signature = extend_by_antiunitary(finite_part, expts)
    return CpCandidate(base, sigma, f, tuple(expts), signature, system,
                       tuple(sorted(surviving)), tuple(sorted(killed)),
                       mag_classes, backbone_classes(sigma))


# -- realizability verdicts -----------------------------------------------------


@dataclass(frozen=True)
class CpVerdict:
    kind: str  # "realizable" | "enlarged_unitary" | "continuous_degeneration"
    detail: str
    witness: GenPermMatrix | None = None

    @property
    def realizable(self) -> bool:
        return self.kind == "realizable"

    def to_json(self) -> dict:
        return {"kind": self.kind, "detail": self.detail,
                "witness": self.witness.to_json() if self.witness else None}


def _magnitude_class_of(candidate: CpCandidate, m: Monomial) -> int:
    for i, cls in enumerate(candidate.magnitude_classes):
        if m in cls:
            return i
    raise KeyError(str(m))


def cp_realizable(candidate: CpCandidate) -> CpVerdict:
    """Decide whether a candidate extension is the full symmetry group.

    Degeneration: dropping terms left too small a charge lattice, so the
    unitary symmetry grows beyond the base (continuously, in every case that
    occurs here).  Enlarged unitary: the forced coefficient restrictions make
    some non-diagonal generalized permutation a symmetry of every admissible
    potential; the witness is returned.  Otherwise the candidate is
    realizable.
    """
    base = candidate.base
    basis = torus_basis(base.n_doublets)
    full_lattice = _full_invariant_lattice(base)
    if candidate.surviving:
        surv_lattice = hnf_rows([charge_vector(m, basis) for m in candidate.surviving])
    else:
        surv_lattice = ()
    if surv_lattice != full_lattice:
        surv_group = _group_of_lattice(surv_lattice, basis)
        if surv_group.signature.torus_rank > base.signature.torus_rank:
            return CpVerdict(
                "continuous_degeneration",
                f"dropping {', '.join(str(m) for m in candidate.killed)} leaves the "
                f"diagonal symmetry {surv_group.signature}, strictly larger than {base.signature}")
        witness_gen = next(g for g in surv_group.finite_generators
                           if not base.contains_diagonal(g))
        return CpVerdict(
            "enlarged_unitary",
            f"surviving terms are invariant under the extra diagonal {witness_gen}",
            GenPermMatrix.diagonal(witness_gen))

    solution = candidate.system.solve()
    assert solution is not None
    particular, torsion, free = solution

    n = base.n_doublets
    for perm in sorted(itertools.permutations(range(n))):
        if perm == tuple(range(n)):
            continue
        if not candidate.backbone.preserved_by(perm):
            continue
        forced = _forced_symmetry(candidate, perm, particular, torsion, free)
        if forced is not None:
            noncomm = _noncommuting_generator(base, forced)
            extra = f"; does not commute with {noncomm}" if noncomm else ""
            return CpVerdict(
                "enlarged_unitary",
                f"coefficient restrictions force the unitary symmetry {forced}{extra}",
                forced)
    return CpVerdict("realizable", "no further unitary symmetry is forced")


def _noncommuting_generator(base: AbelianBase, u: GenPermMatrix) -> PhaseVector | None:
    for g in base.finite_generators:
        if not commutes_with_diagonal(u, g):
            return g
    for w in base.doublet_weights:
        if any(w[a] != w[u.perm[a]] for a in range(u.n)):
            # a torus element along this direction fails to commute
            denom = 2 * max(abs(x) for x in w) + 1
            return PhaseVector(tuple(Fraction(x, denom) for x in w))
    return None


def _forced_symmetry(candidate: CpCandidate, perm: Perm, particular, torsion, free
                     ) -> GenPermMatrix | None:
    """Unitary witness with permutation ``perm`` if one is forced, else None.

    Forced means: for every admissible coefficient assignment there are
    entry phases making the generalized permutation a symmetry of backbone
    plus surviving terms.
    """
    surviving = set(candidate.surviving)
    u0 = GenPermMatrix.permutation(perm)
    theta_names = [f"th{a}" for a in range(1, candidate.base.n_doublets + 1)]
    rows: list[tuple[dict[str, int], dict[str, int]]] = []  # (theta coeffs, psi coeffs)
    for m in candidate.surviving:
        img, _, flag = act_unitary(u0, m)
        if img not in surviving:
            return None
        if _magnitude_class_of(candidate, img) != _magnitude_class_of(candidate, m):
            return None
        theta: dict[str, int] = {}
        for a, b in m.factors:
            theta[f"th{b}"] = theta.get(f"th{b}", 0) + 1
            theta[f"th{a}"] = theta.get(f"th{a}", 0) - 1
        # Same matching convention as the antiunitary case: the shift enters
        # with +1, the image phase with +1 (conjugated image) or -1 (direct).
        psi: dict[str, int] = {}
        sign = 1 if flag else -1
        psi[_psi(img)] = psi.get(_psi(img), 0) + sign
        psi[_psi(m)] = psi.get(_psi(m), 0) + 1
        rows.append((theta, psi))

    def theta_system(rhs_values: list[Fraction]) -> PhaseConstraintSystem:
        system = PhaseConstraintSystem(theta_names)
        for (theta, _), r in zip(rows, rhs_values):
            system.add(theta, r)
        return system

    def psi_eval(psi_coeffs: dict[str, int], assign: dict[str, Fraction]) -> Fraction:
        return sum((c * assign.get(name, Fraction(0)) for name, c in psi_coeffs.items()),
                   Fraction(0))

    # The invariance relations read  theta-part == -(psi-part)  (mod 1).
    base_rhs = [(-psi_eval(p, particular)) % 1 for _, p in rows]
    solved = theta_system(base_rhs).solve()
    if solved is None:
        return None
    for gen in torsion:
        rhs = [(-psi_eval(p, gen)) % 1 for _, p in rows]
        if not theta_system(rhs).solvable():
            return None
    columns: list[list[Fraction]] = []
    for name in theta_names:
        columns.append([Fraction(t.get(name, 0)) for t, _ in rows])
    for direction in free:
        target = [-psi_eval(p, direction) for _, p in rows]
        if not _rational_in_span(columns, target):
            return None
    theta_particular, _, _ = solved
    phases = tuple(theta_particular[name] for name in theta_names)
    return GenPermMatrix(perm, phases)


# -- full antiunitary classification (three doublets) ---------------------------


@dataclass(frozen=True)
class CpCaseResult:
    base_signature: GroupSignature
    candidate: CpCandidate
    verdict: CpVerdict


@dataclass(frozen=True)
class CpClassification:
    n_doublets: int
    realizable: tuple[GroupSignature, ...]
    rejected: tuple[tuple[GroupSignature, CpVerdict], ...]
    cases: tuple[CpCaseResult, ...]

    def verdict_for(self, signature: GroupSignature) -> CpVerdict | None:
        if signature in self.realizable:
            return CpVerdict("realizable", "realizable")
        return next((v for s, v in self.rejected if s == signature), None)


def cp_bases(n_doublets: int) -> list[AbelianBase]:
    """The trivial group plus one base per distinct realizable charge lattice.

    Conjugate embeddings of the same abstract group appear separately so that
    every inequivalent extension pattern is examined.
    """
    bases = [AbelianBase.trivial(n_doublets)]
    for rows in sorted(_lattice_scan(n_doublets)):
        base = AbelianBase.from_lattice(n_doublets, rows)
        if not base.signature.is_trivial:
            bases.append(base)
    return bases


def classify_cp(n_doublets: int = 3) -> CpClassification:
    """Realizable abelian groups containing an antiunitary generator.

    Exhaustive for three doublets.  Per starred signature the verdicts of all
    embeddings are aggregated: realizable wins over enlarged-unitary, which
    wins over continuous degeneration.
    """
    if n_doublets != 3:
        raise ValueError("the antiunitary classification is only supported for 3 doublets")
    cases: list[CpCaseResult] = []
    for base in cp_bases(n_doublets):
        for candidate in cp_extensions(base):
            verdict = cp_realizable(candidate)
            cases.append(CpCaseResult(base.signature, candidate, verdict))
    by_sig: dict[GroupSignature, list[CpVerdict]] = {}
    for case in cases:
        by_sig.setdefault(case.candidate.signature, []).append(case.verdict)
    realizable = []
    rejected = []
    for sig in sorted(by_sig, key=GroupSignature.sort_key):
        verdicts = by_sig[sig]
        if any(v.realizable for v in verdicts):
            realizable.append(sig)
        else:
            pick = next((v for v in verdicts if v.kind == "enlarged_unitary"), verdicts[0])
            rejected.append((sig, pick))
    return CpClassification(n_doublets, tuple(realizable), tuple(rejected), tuple(cases))


# -- the Z3 x Z3 exception -------------------------------------------------------


@dataclass(frozen=True)
class Z3Z3Report:
    """Outcome of the explicit non-realizability check for Z3 x Z3.

    The invariant potential admits the doublet exchange as an extra unitary
    symmetry, and the exchange fails to commute with the phase generator, so
    the full symmetry group is nonabelian.
    """

    phase_generator: PhaseVector
    cyclic_generator: GenPermMatrix
    swap: GenPermMatrix
    invariant_under_generators: bool
    invariant_under_swap: bool
    swap_commutes: bool
    verdict: str

    def to_json(self) -> dict:
        return {
            "phase_generator": [str(p) for p in self.phase_generator.phases],
            "cyclic_generator": self.cyclic_generator.to_json(),
            "swap": self.swap.to_json(),
            "invariant_under_generators": self.invariant_under_generators,
            "invariant_under_swap": self.invariant_under_swap,
            "swap_commutes": self.swap_commutes,
            "verdict": self.verdict,
        }


def _z3z3_terms() -> dict[Monomial, tuple[str, bool]]:
    """Charged sector of the Z3 x Z3 invariant potential.

    All three terms share one complex coefficient; the boolean marks whether
    the canonical representative is the conjugate of the term as written.
    """
    return {
        Monomial.canonical(((1, 2), (1, 3))): ("l3", False),
        Monomial.canonical(((2, 3), (2, 1))): ("l3", True),
        Monomial.canonical(((3, 1), (3, 2))): ("l3", True),
    }


def _class_potential_invariant(terms: dict[Monomial, tuple[str, bool]],
                               u: GenPermMatrix) -> bool:
    """Invariance of a symbolic-coefficient charged sector under a unitary.

    Coefficients within a class are equal but otherwise arbitrary complex
    numbers, so invariance requires each term to land on a term of the same
    class with zero phase shift and consistently composed conjugations.
    """
    for m, (klass, flag) in terms.items():
        img, shift, flip = act_unitary(u, m)
        if img not in terms:
            return False
        k2, flag2 = terms[img]
        if k2 != klass or flag2 != (flag ^ flip) or shift % 1 != 0:
            return False
    return True


def check_z3z3(n_doublets: int = 3) -> Z3Z3Report:
    """Non-realizability of Z3 x Z3 as a symmetry of a three-doublet potential.

    Builds the invariant potential of the group generated by the phase
    rotation diag(1, w, w^2) and the cyclic doublet permutation, verifies both
    invariances, then exhibits the doublet swap 1 <-> 2 as a further unitary
    symmetry that does not commute with the phase rotation.
    """
    if n_doublets != 3:
        raise ValueError("the Z3 x Z3 check is specific to 3 doublets")
    a = PhaseVector((Fraction(0), Fraction(1, 3), Fraction(2, 3)))
    b = GenPermMatrix.permutation((1, 2, 0))
    swap = GenPermMatrix.permutation((1, 0, 2))
    terms = _z3z3_terms()

    inv_a = _class_potential_invariant(terms, GenPermMatrix.diagonal(a))
    inv_b = _class_potential_invariant(terms, b)
    inv_swap = _class_potential_invariant(terms, swap)
    commutes = commutes_with_diagonal(swap, a)
    verdict = "not_realizable" if (inv_a and inv_b and inv_swap and not commutes) \
        else "inconclusive"
    return Z3Z3Report(a, b, swap, inv_a and inv_b, inv_swap, commutes, verdict)
