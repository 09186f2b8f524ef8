"""Input model: declared curve factors plus a sign-condition formula.

A Scene is a list of named bivariate factors (declared irreducible over the
reals by the user) and a formula in disjunctive normal form whose atoms
constrain factor signs.  Validation checks squarefreeness, pairwise
coprimality and probes low-degree reducibility; the chart-at-infinity
transform realises the second stereographic chart of the sphere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .bipoly import BiPoly, are_coprime, is_squarefree, parse_poly
from .errors import NotSquarefree, SceneError, SharedComponent
from .unipoly import UniPoly

RELS = (">", "<", ">=", "<=", "==", "!=")

_REL_FLIP = {">": "<", "<": ">", ">=": "<=", "<=": ">=", "==": "==", "!=": "!="}
_REL_NEG = {">": "<=", "<": ">=", ">=": "<", "<=": ">", "==": "!=", "!=": "=="}


def rel_holds(rel: str, sign: int) -> bool:
    if rel == ">":
        return sign > 0
    if rel == "<":
        return sign < 0
    if rel == ">=":
        return sign >= 0
    if rel == "<=":
        return sign <= 0
    if rel == "==":
        return sign == 0
    if rel == "!=":
        return sign != 0
    raise ValueError(f"unknown relation {rel!r}")


@dataclass(frozen=True)
class Atom:
    factor: str
    rel: str


@dataclass(frozen=True)
class Clause:
    atoms: tuple[Atom, ...]


@dataclass(frozen=True)
class Formula:
    clauses: tuple[Clause, ...]

    def holds(self, signs: dict[str, int]) -> bool:
        return any(
            all(rel_holds(a.rel, signs[a.factor]) for a in c.atoms) for c in self.clauses
        )

    def factors_used(self) -> set[str]:
        return {a.factor for c in self.clauses for a in c.atoms}

    def negation(self) -> "Formula":
        """DNF of the complement (De Morgan + distribution)."""
        neg_clauses: list[tuple[Atom, ...]] = [()]
        for c in self.clauses:
            options = [Atom(a.factor, _REL_NEG[a.rel]) for a in c.atoms]
            neg_clauses = [base + (opt,) for base in neg_clauses for opt in options]
        # prune clauses with contradictory atoms on one factor
        out = []
        for atoms in neg_clauses:
            by_factor: dict[str, set[str]] = {}
            for a in atoms:
                by_factor.setdefault(a.factor, set()).add(a.rel)
            ok = True
            for rels in by_factor.values():
                feasible = [s for s in (-1, 0, 1) if all(rel_holds(r, s) for r in rels)]
                if not feasible:
                    ok = False
                    break
            if ok:
                out.append(Clause(tuple(dict.fromkeys(atoms))))
        return Formula(tuple(out))

    def with_extra_atoms(self, extra: Iterable[Atom]) -> "Formula":
        extra = tuple(extra)
        return Formula(tuple(Clause(c.atoms + extra) for c in self.clauses))


def _canonical_sign(p: BiPoly) -> int:
    """+1 if the canonical-order leading coefficient is positive else -1."""
    keys = sorted(p.t, key=lambda k: (-(k[1]), -(k[0])))
    return 1 if p.t[keys[0]] > 0 else -1


@dataclass
class Scene:
    """Declared factors (name -> BiPoly) and the defining formula."""

    factors: dict[str, BiPoly]
    order: list[str]
    formula: Formula
    chart: str = "affine"  # or "infinity"

    # -- construction -----------------------------------------------------------

    @staticmethod
    def build(
        declared: dict[str, BiPoly],
        order: list[str],
        clauses: list[list[tuple[str | BiPoly, str]]],
        chart: str = "affine",
    ) -> "Scene":
        """Assemble a scene from parsed data; inline polynomials are
        sign-normalised, deduplicated and auto-registered."""
        factors = dict(declared)
        names = list(order)
        by_poly: dict[frozenset, str] = {}
        for nm in names:
            p = factors[nm]
            if p.is_zero() or p.is_const():
                raise SceneError(f"factor {nm!r} is constant")
            by_poly[frozenset(p.t.items())] = nm
        out_clauses: list[Clause] = []
        counter = 0
        for clause in clauses:
            atoms: list[Atom] = []
            for subject, rel in clause:
                if isinstance(subject, str):
                    atoms.append(Atom(subject, rel))
                    continue
                p = subject
                if p.is_zero() or p.is_const():
                    raise SceneError("atom polynomial is constant")
                if _canonical_sign(p) < 0:
                    p = -p
                    rel = _REL_FLIP[rel]
                key = frozenset(p.t.items())
                if key in by_poly:
                    nm = by_poly[key]
                else:
                    counter += 1
                    nm = f"_f{counter}"
                    while nm in factors:
                        counter += 1
                        nm = f"_f{counter}"
                    factors[nm] = p
                    names.append(nm)
                    by_poly[key] = nm
                atoms.append(Atom(nm, rel))
            out_clauses.append(Clause(tuple(atoms)))
        return Scene(factors, names, Formula(tuple(out_clauses)), chart)

    @staticmethod
    def from_text(src: str) -> "Scene":
        from .parser import parse_scene_text

        return parse_scene_text(src)

    # -- queries -----------------------------------------------------------------

    def factor_polys(self) -> list[BiPoly]:
        return [self.factors[n] for n in self.order]

    def signs_at(self, x: Fraction | int, y: Fraction | int) -> dict[str, int]:
        return {n: self.factors[n].sign_at(x, y) for n in self.order}

    def member(self, x: Fraction | int, y: Fraction | int) -> bool:
        return self.formula.holds(self.signs_at(x, y))

    def max_total_degree(self) -> int:
        return max(p.total_degree for p in self.factors.values())

    # -- complement ----------------------------------------------------------------

    def complement(self) -> "Scene":
        return Scene(dict(self.factors), list(self.order), self.formula.negation(), self.chart)

    def minus_factor_zeros(self, names: Iterable[str]) -> "Scene":
        """Scene of S minus the zero sets of the given factors."""
        extra = tuple(Atom(n, "!=") for n in names)
        return Scene(dict(self.factors), list(self.order), self.formula.with_extra_atoms(extra), self.chart)


# -- validation ---------------------------------------------------------------------


@dataclass
class ValidationReport:
    ok: bool = True
    warnings: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def validate_scene(scene: Scene) -> ValidationReport:
    """Hard checks: squarefree factors, pairwise coprime, atoms well-formed.
    Soft check: a best-effort reducibility probe (degree <= 2 rational factor
    search) that emits warnings only."""
    rep = ValidationReport()
    used = scene.formula.factors_used()
    for n in used:
        if n not in scene.factors:
            raise SceneError(f"formula references undeclared factor {n!r}")
    for n in scene.order:
        if not is_squarefree(scene.factors[n]):
            raise NotSquarefree(n)
    names = scene.order
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            if not are_coprime(scene.factors[names[i]], scene.factors[names[j]]):
                raise SharedComponent(names[i], names[j])
    for n in names:
        w = _reducibility_probe(scene.factors[n])
        if w:
            rep.warnings.append(f"factor {n!r} looks reducible: {w}")
    return rep


def _reducibility_probe(p: BiPoly) -> str | None:
    """Search for a rational factor of total degree 1 or 2 by root placement.

    Only a screen: finds linear factors a*x + b*y + c exactly (via resultant
    structure would be heavy, so we probe lines through point pairs of the
    curve at small rational abscissae), and pure-x / pure-y factors.
    """
    if p.total_degree <= 1:
        return None
    # pure-x or pure-y content is an obvious factor
    if p.deg_y >= 1:
        cont = p.content_x()
        if cont.degree >= 1:
            return f"content in x of degree {cont.degree}"
    if p.deg_x >= 1:
        cont2 = p.swap_xy().content_x()
        if cont2.degree >= 1:
            return "content in y"
    # probe linear factors y - (m x + c) and x - a
    for mnum in range(-3, 4):
        for mden in (1, 2):
            for cnum in range(-3, 4):
                m = Fraction(mnum, mden)
                c = Fraction(cnum)
                line = BiPoly({(0, 1): Fraction(1), (1, 0): -m, (0, 0): -c})
                if line.divides(p) and p.deg_y >= 1:
                    return f"divisible by {line.to_text()}"
    for anum in range(-3, 4):
        vert = BiPoly({(1, 0): Fraction(1), (0, 0): -Fraction(anum)})
        if p.deg_x >= 1 and vert.divides(p):
            return f"divisible by {vert.to_text()}"
    return None


# -- chart at infinity -----------------------------------------------------------------


def invert_poly(h: BiPoly) -> BiPoly:
    """Numerator of h(x/q, y/q) * q^deg with q = x^2 + y^2, q-powers stripped."""
    if h.is_zero() or h.is_const():
        raise SceneError("cannot invert a constant factor")
    d = h.total_degree
    q = BiPoly({(2, 0): Fraction(1), (0, 2): Fraction(1)})
    acc = BiPoly.zero()
    for (i, j), v in h.t.items():
        acc = acc + (BiPoly({(i, j): v}) * q ** (d - i - j))
    # strip q powers
    while True:
        divided = acc.divmod_y(q)
        if divided is not None and divided[1].is_zero():
            acc = divided[0]
        else:
            break
    # normalise content by a POSITIVE constant only: atom relations must be
    # preserved, so the sign is never flipped here
    return _positive_normalize(acc)


def _positive_normalize(p: BiPoly) -> BiPoly:
    from math import gcd as igcd

    if p.is_zero():
        return p
    l = 1
    for v in p.t.values():
        l = l * v.denominator // igcd(l, v.denominator)
    g = 0
    for v in p.t.values():
        g = igcd(g, abs(int(v * l)))
    return p.scale(Fraction(l, g if g else 1))


def invert_scene(scene: Scene) -> Scene:
    """Image of the scene in the opposite stereographic chart.

    Factors transform by the inversion substitution; atoms keep their
    relations (the substitution multiplier q^deg is positive off the pole).
    A factor whose zero set is the origin alone (a positive-definite form)
    inverts to a positive constant: its atoms are decided and folded away.
    The origin of the new chart represents the pole.
    """
    if scene.chart != "affine":
        raise SceneError("invert_scene expects the affine chart")
    factors: dict[str, BiPoly] = {}
    const_sign: dict[str, int] = {}
    order: list[str] = []
    for n in scene.order:
        q = invert_poly(scene.factors[n])
        if q.is_const():
            const_sign[n] = 1 if q.t.get((0, 0), Fraction(0)) > 0 else -1
        else:
            factors[n] = q
            order.append(n)
    clauses: list[Clause] = []
    for c in scene.formula.clauses:
        atoms: list[Atom] = []
        dead = False
        for a in c.atoms:
            if a.factor in const_sign:
                if not rel_holds(a.rel, const_sign[a.factor]):
                    dead = True
                    break
            else:
                atoms.append(a)
        if not dead:
            clauses.append(Clause(tuple(atoms)))
    return Scene(factors, order, Formula(tuple(clauses)), chart="infinity")
