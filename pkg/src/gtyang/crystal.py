"""Crystals of weighted atoms and explicit fixed-point matrices.

Each pattern entry m[i,k] contributes a ladder of atoms at node k. Atom
coordinates live in the three-dimensional space (loop weight, chain
asymmetry, R-charge); arrow matrices are filled by pure coordinate matching,
which reproduces the block identity/shift forms without case analysis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from gtyang.linalg import RationalMatrix
from gtyang.patterns import GTPattern
from gtyang.quiver import (
    FRAMING,
    EquivariantParams,
    LinearForm,
    QuiverSpec,
    build_quiver,
)

Rat = Fraction


@dataclass(frozen=True)
class Atom:
    node: int
    type_index: int
    level: int
    weight: LinearForm
    r_charge: int

    @property
    def coordinate(self) -> tuple[Rat, Rat, int]:
        return (self.weight.c_eps, self.weight.c_h, self.r_charge)


def atoms_at_node(pat: GTPattern, k: int) -> tuple[Atom, ...]:
    """Atoms ordered by type index, then level."""
    a, b = pat.window(k)
    out = []
    for i in range(a, b + 1):
        for level in range(pat.entry(i, k)):
            c_eps = Fraction(level - (i - a)) - Fraction(abs(k - pat.p), 2)
            weight = LinearForm(c_eps, k - pat.p)
            out.append(Atom(k, i, level, weight, abs(k - pat.p) + 2 * (i - a)))
    return tuple(out)


def pattern_atoms(pat: GTPattern) -> list[Atom]:
    out: list[Atom] = []
    for k in range(1, pat.n):
        out.extend(atoms_at_node(pat, k))
    return out


def ico_identity(n: int, m: int) -> RationalMatrix:
    return RationalMatrix([[1 if i == j else 0 for j in range(m)] for i in range(n)], cols=m)


def ico_shift(n: int) -> RationalMatrix:
    return RationalMatrix([[1 if i == j + 1 else 0 for j in range(n)] for i in range(n)], cols=n)


def ico_zero(n: int, m: int) -> RationalMatrix:
    return RationalMatrix.zeros(n, m)


@dataclass(frozen=True)
class FixedPoint:
    pattern: GTPattern
    params: EquivariantParams
    spec: QuiverSpec
    atoms: tuple[tuple[Atom, ...], ...]  # index k-1 -> node-k atoms
    matrices: dict  # arrow name -> RationalMatrix
    phi: tuple[RationalMatrix, ...]  # diagonal weight matrices per gauge node

    def node_atoms(self, node) -> tuple[Atom, ...]:
        if node == FRAMING:
            return (_FRAMING_ATOM,)
        return self.atoms[node - 1]


_FRAMING_ATOM = Atom(0, 0, 0, LinearForm(0, 0), 0)


def fixed_point_matrices(
    pat: GTPattern, params: EquivariantParams, all_framings: bool = False
) -> FixedPoint:
    """Arrow matrices by coordinate matching: entry 1 exactly when the
    target atom sits at source coordinate plus arrow displacement."""
    spec = build_quiver(pat.n, pat.p, pat.lam, all_framings=all_framings)
    atoms = tuple(atoms_at_node(pat, k) for k in range(1, pat.n))

    def node_list(node):
        return (_FRAMING_ATOM,) if node == FRAMING else atoms[node - 1]

    matrices = {}
    for arr in spec.arrows:
        src = node_list(arr.source)
        tgt = node_list(arr.target)
        disp = (arr.weight.c_eps, arr.weight.c_h, arr.r_charge)
        rows = []
        for t in tgt:
            row = []
            for s in src:
                hit = (
                    s.coordinate[0] + disp[0] == t.coordinate[0]
                    and s.coordinate[1] + disp[1] == t.coordinate[1]
                    and s.coordinate[2] + disp[2] == t.coordinate[2]
                )
                row.append(1 if hit else 0)
            rows.append(row)
        matrices[arr.name] = RationalMatrix(rows, cols=len(src))

    phi = tuple(
        RationalMatrix.diagonal([atom.weight.value(params) for atom in atoms[k - 1]])
        for k in range(1, pat.n)
    )
    return FixedPoint(pat, params, spec, atoms, matrices, phi)


def superpotential_derivative(fp: FixedPoint, name: str) -> RationalMatrix:
    """Cyclic derivative of the superpotential by the named arrow,
    evaluated at the fixed point."""
    spec = fp.spec
    arrow = spec.arrow(name)
    n_src = len(fp.node_atoms(arrow.source))
    n_tgt = len(fp.node_atoms(arrow.target))
    total = RationalMatrix.zeros(n_src, n_tgt)
    for sign, factors in spec.superpotential:
        for pos, factor in enumerate(factors):
            if factor != name:
                continue
            remainder = factors[pos + 1 :] + factors[:pos]
            term = RationalMatrix.identity(n_src)
            for other in remainder:
                term = term * fp.matrices[other]
            total = total + term.scaled(sign)
    return total


@dataclass(frozen=True)
class FTermReport:
    residuals: tuple[tuple[str, Rat], ...]  # (relation id, max abs entry)

    @property
    def ok(self) -> bool:
        return all(value == 0 for _, value in self.residuals)

    def failures(self) -> list[str]:
        return [name for name, value in self.residuals if value != 0]


def verify_f_terms(fp: FixedPoint) -> FTermReport:
    """Check every superpotential derivative and every equivariance
    equation exactly at the fixed point, for the stored params."""
    out = []
    for arr in fp.spec.arrows:
        out.append((f"dW/d{arr.name}", superpotential_derivative(fp, arr.name).max_abs()))

    params = fp.params
    framing_phi = RationalMatrix.zeros(1, 1)

    def phi_of(node):
        return framing_phi if node == FRAMING else fp.phi[node - 1]

    for arr in fp.spec.arrows:
        q = fp.matrices[arr.name]
        residual = phi_of(arr.target) * q - q * phi_of(arr.source) - q.scaled(arr.weight.value(params))
        out.append((f"equivariance[{arr.name}]", residual.max_abs()))
    return FTermReport(tuple(out))
