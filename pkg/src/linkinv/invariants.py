"""Named numeric invariants read off the polynomial and series layer,
with the cross-identities between them enforced as built-in validators."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .algebra import LaurentPolynomial
from .alexander import potential_function
from .diagram import LinkDiagram
from .skein import conway
from .transforms import (
    DEFAULT_CAP,
    component_conways,
    conway_quotient,
    decompose,
    potential_series,
    potential_series_quotient,
    reduced_polynomial,
    reduced_quotient,
    table_from_series,
)


class UndefinedInvariantError(ValueError):
    """The requested invariant is not defined for this link."""


class InvariantValidationError(AssertionError):
    """A built-in identity between invariants failed; indicates a bug."""


def total_lk(d: LinkDiagram) -> int:
    """Linking number of a 2-component link."""
    if d.m != 2:
        raise UndefinedInvariantError("linking number field needs 2 components")
    return d.linking_matrix()[0][1]


def conway_coeffs(d: LinkDiagram):
    """Coefficients c_k with conway = z^(m-1) * (c0 + c1 z^2 + ...)."""
    nabla = conway(d)
    m = d.m
    cs = {}
    top = 0
    for (k,), coeff in nabla.terms.items():
        if k < m - 1 or (k - (m - 1)) % 2:
            raise InvariantValidationError(
                f"conway polynomial violates the z^(m-1) form at z^{k}")
        idx = (k - (m - 1)) // 2
        cs[idx] = coeff
        top = max(top, idx)
    if not cs:
        return ()
    return tuple(cs.get(i, Fraction(0)) for i in range(top + 1))


def alpha_coeffs(d: LinkDiagram, cap: int = DEFAULT_CAP):
    """Coefficients of the quotient by the component Conway polynomials.

    Read off the quotient series and recomputed through the recursion
    alpha_i = c_i - (alpha_(i-1) b_1 + ... + alpha_0 b_i); the two routes
    must agree exactly.
    """
    m = d.m
    series = conway_quotient(d, cap)
    out = {}
    for (k,), coeff in series.terms.items():
        if k < m - 1 or (k - (m - 1)) % 2:
            raise InvariantValidationError("quotient series violates the z^(m-1) form")
        out[(k - (m - 1)) // 2] = coeff
    count = (cap - (m - 1)) // 2 + 1
    alphas = tuple(out.get(i, Fraction(0)) for i in range(max(count, 0)))

    # independent recursion through the product of the component polynomials
    cs = conway_coeffs(d)
    prod = LaurentPolynomial.one(("z",))
    for nabla_k, _ in component_conways(d):
        prod = prod * nabla_k
    bs = {}
    for (k,), coeff in prod.terms.items():
        if k % 2:
            raise InvariantValidationError("component product has odd powers")
        bs[k // 2] = coeff
    if bs.get(0, Fraction(0)) != 1:
        raise InvariantValidationError("component product does not start at 1")
    for i in range(len(alphas)):
        ci = cs[i] if i < len(cs) else Fraction(0)
        acc = ci
        for j in range(1, i + 1):
            acc -= alphas[i - j] * bs.get(j, Fraction(0))
        if acc != alphas[i]:
            raise InvariantValidationError(
                f"alpha recursion mismatch at index {i}: {acc} != {alphas[i]}")
    return alphas


def two_color_tables(d: LinkDiagram, cap: int = DEFAULT_CAP):
    """Coefficient tables (c_ij, alpha_ij, delta_ij) of a 2-colored link.

    Validators: the constant terms match the linking number for 2-component
    links, entries vanish unless i+j is congruent to the component count
    mod 2, and the parity/evenness pattern of the delta table holds.
    """
    if d.n_colors != 2:
        raise UndefinedInvariantError("two-color tables need exactly 2 colors")
    om = potential_function(d)
    c_table = table_from_series(potential_series(om, cap).series, "potential-series")
    a_table = table_from_series(potential_series_quotient(d, cap), "potential-series-quotient")
    d_table = table_from_series(reduced_quotient(d, cap), "reduced-quotient")

    m = d.m
    for label, table in (("c", c_table), ("alpha", a_table), ("delta", d_table)):
        for (i, j), v in table.entries.items():
            if (i + j - m) % 2 != 0 and v != 0:
                raise InvariantValidationError(
                    f"{label}[{i},{j}] nonzero violates degree parity")
    if m == 2:
        lk = total_lk(d)
        if c_table.get(0, 0) != lk:
            raise InvariantValidationError("c[0,0] does not equal the linking number")
        if d_table.get(0, 0) != lk:
            raise InvariantValidationError("delta[0,0] does not equal the linking number")
        for (i, j), v in d_table.entries.items():
            if v.denominator != 1:
                raise InvariantValidationError("delta table entry is not an integer")
            # entries routed through the integral full-index part are even;
            # that part holds the exponents agreeing with lk mod 2
            if i % 2 == j % 2 == lk % 2 and int(v) % 2:
                raise InvariantValidationError(
                    f"delta[{i},{j}] should be even for this linking number")
    return c_table, a_table, d_table


def cochran_beta(d: LinkDiagram, k: int, cap: int = DEFAULT_CAP) -> Fraction:
    """Derived invariant beta^k of a 2-component link with linking number 0,
    read off the reduced quotient as (-1)^(k+1) * delta[1, 2k-1]."""
    if d.m != 2:
        raise UndefinedInvariantError("beta^k needs a 2-component link")
    if total_lk(d) != 0:
        raise UndefinedInvariantError("beta^k is undefined when lk != 0")
    if k < 1 or 2 * k > cap:
        raise UndefinedInvariantError(f"beta^{k} is out of range for cap {cap}")
    _, _, d_table = two_color_tables(d, cap)
    return (-1) ** (k + 1) * d_table.get(1, 2 * k - 1)


def beta_hat(d: LinkDiagram, k: int, cap: int = DEFAULT_CAP) -> Fraction:
    """Extension of beta^k to arbitrary linking numbers, read off the
    quotient of the potential series as (-1)^(k+1) * alpha[1, 2k-1]."""
    if d.m != 2:
        raise UndefinedInvariantError("beta-hat needs a 2-component link")
    if k < 1 or 2 * k > cap:
        raise UndefinedInvariantError(f"beta-hat {k} is out of range for cap {cap}")
    _, a_table, _ = two_color_tables(d, cap)
    return (-1) ** (k + 1) * a_table.get(1, 2 * k - 1)


def unoriented_sl(d: LinkDiagram, cap: int = DEFAULT_CAP) -> Fraction:
    """The half-integer c[1,1], an orientation-insensitive companion of the
    generalized Sato-Levine invariant."""
    c_table, _, _ = two_color_tables(d, cap)
    return c_table.get(1, 1)


def casson_walker_surrogate(d: LinkDiagram, cap: int = DEFAULT_CAP) -> Fraction:
    """2*c[1,1]/lk^2 for a 2-component link with lk != 0."""
    lk = total_lk(d)
    if lk == 0:
        raise UndefinedInvariantError("surrogate needs lk != 0")
    return 2 * unoriented_sl(d, cap) / Fraction(lk * lk)


def gamma3(d: LinkDiagram, cap: int = 9) -> Fraction:
    """alpha_1 of a 3-component link minus the sum over ordered pairs of
    distinct 2-component sublinks of alpha_0 * alpha_1."""
    if d.m != 3:
        raise UndefinedInvariantError("gamma needs a 3-component link")
    alphas = alpha_coeffs(d.monochrome(), cap)
    a1 = alphas[1] if len(alphas) > 1 else Fraction(0)
    subs = [d.monochrome().delete_component(i) for i in range(3)]
    sub_alpha = []
    for s in subs:
        al = alpha_coeffs(s, cap)
        a0 = al[0] if al else Fraction(0)
        a1_s = al[1] if len(al) > 1 else Fraction(0)
        sub_alpha.append((a0, a1_s))
    total = Fraction(0)
    for i in range(3):
        for j in range(3):
            if i != j:
                total += sub_alpha[i][0] * sub_alpha[j][1]
    return a1 - total


def congruence_report(d: LinkDiagram, cap: int = DEFAULT_CAP):
    """Residues of delta[i,j] modulo the gcd of all earlier entries.

    For each pair within the cap reports (i, j, delta, modulus, flagged);
    flagged means delta[i,j] is nonzero modulo the gcd of the delta[k,l]
    with k <= i, l <= j, k+l < i+j (modulus 0 compares against zero).
    When the components are unknotted, pairs with a nonzero entry are
    additionally marked, since the congruence sharpens to equality there.
    """
    _, _, d_table = two_color_tables(d, cap)
    unknotted = all(nabla == LaurentPolynomial.one(("z",))
                    for nabla, _ in component_conways(d))
    rows = []
    for i in range(cap + 1):
        for j in range(cap + 1 - i):
            entry = d_table.get(i, j)
            earlier = [int(d_table.get(k, l))
                       for k in range(i + 1) for l in range(j + 1)
                       if k + l < i + j]
            modulus = 0
            for v in earlier:
                modulus = gcd(modulus, v)
            if modulus:
                flagged = int(entry) % modulus != 0
            else:
                flagged = entry != 0
            row = {
                "i": i,
                "j": j,
                "delta": str(entry),
                "modulus": modulus,
                "flagged": bool(flagged),
            }
            if unknotted:
                row["equality_flagged"] = bool(entry != 0)
            rows.append(row)
    return rows


MU_BAR_NOTE = (
    "delta[i,j] entries (i+j even) are integer liftings of Milnor mu-bar "
    "invariants of the shape (1..1 2..2); this tool does not compute mu-bar "
    "directly, so the correspondence is reported as metadata, not asserted."
)


@dataclass
class InvariantReport:
    """Everything the pipeline can say about one link, exact throughout."""

    name: str
    components: int
    colors: tuple
    linking_matrix: list
    conway: str
    c_coeffs: list
    alpha_coeffs: list
    omega: str
    omega_sign_provenance: str
    reduced: str | None = None
    series_cap: int = DEFAULT_CAP
    c_table: dict | None = None
    alpha_table: dict | None = None
    delta_table: dict | None = None
    betas: dict | None = None
    beta_hats: dict | None = None
    sato_levine_unoriented: str | None = None
    casson_walker: str | None = None
    gamma: str | None = None
    congruences: list | None = None
    notes: list = field(default_factory=list)

    def to_json_dict(self) -> dict:
        def table(t):
            if t is None:
                return None
            return {f"{i},{j}": str(v) for (i, j), v in sorted(t.items())}

        return {
            "schema": "linkinv-report-1",
            "name": self.name,
            "components": self.components,
            "colors": list(self.colors),
            "linking_matrix": self.linking_matrix,
            "conway": self.conway,
            "c": [str(c) for c in self.c_coeffs],
            "alpha": [str(a) for a in self.alpha_coeffs],
            "omega": self.omega,
            "omega_sign_provenance": self.omega_sign_provenance,
            "reduced": self.reduced,
            "cap": self.series_cap,
            "c_table": table(self.c_table),
            "alpha_table": table(self.alpha_table),
            "delta_table": table(self.delta_table),
            "beta": {str(k): str(v) for k, v in (self.betas or {}).items()} or None,
            "beta_hat": {str(k): str(v) for k, v in (self.beta_hats or {}).items()} or None,
            "sato_levine_unoriented": self.sato_levine_unoriented,
            "casson_walker_surrogate": self.casson_walker,
            "gamma": self.gamma,
            "congruences": self.congruences,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def build_report(d: LinkDiagram, cap: int = DEFAULT_CAP) -> InvariantReport:
    om = potential_function(d)
    report = InvariantReport(
        name=d.name or "link",
        components=d.m,
        colors=d.colors,
        linking_matrix=d.linking_matrix(),
        conway=conway(d).render(),
        c_coeffs=list(conway_coeffs(d)),
        alpha_coeffs=list(alpha_coeffs(d.monochrome(), cap)),
        omega=om.render(),
        omega_sign_provenance=om.sign_provenance,
        series_cap=cap,
    )
    if d.m >= 2:
        report.reduced = reduced_polynomial(decompose(om)).render()
    if d.n_colors == 2:
        c_t, a_t, d_t = two_color_tables(d, cap)
        report.c_table = c_t.entries
        report.alpha_table = a_t.entries
        report.delta_table = d_t.entries
        report.notes.append(MU_BAR_NOTE)
        if d.m == 2:
            lk = total_lk(d)
            report.sato_levine_unoriented = str(unoriented_sl(d, cap))
            if lk != 0:
                report.casson_walker = str(casson_walker_surrogate(d, cap))
            ks = range(1, cap // 2 + 1)
            report.beta_hats = {k: beta_hat(d, k, cap) for k in ks}
            if lk == 0:
                report.betas = {k: cochran_beta(d, k, cap) for k in ks}
            report.congruences = [row for row in congruence_report(d, min(cap, 8))
                                  if row["flagged"]]
    if d.m == 3:
        report.gamma = str(gamma3(d))
    return report
