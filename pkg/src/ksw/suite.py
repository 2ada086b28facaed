"""Whole-workbench invariant suite with seeded, byte-stable reports.

Every check name maps one-to-one to a documented invariant of some module.
All checks are exact (floating-point oracles live in the test suite, not
here); randomized instances derive from the single seeded generator, and
reports carry no timestamps, so identical config + seed means identical
bytes.

Statuses: pass | fail | vacuous | skipped.  CapExceeded surfaces as a
skipped check, never an error; exit code 0 means nothing failed.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from . import betti, formal_corr, kuga_satake, sympow
from .clifford import CliffordAlgebra, _mul_block
from .errors import CapExceeded, NotApplicable, WorkbenchError
from .hodge import HKStructure, h2_spectrum, rotation_generator
from .linalg import Matrix, same_span
from .qspace import QuadraticSpace, same_square_class
from .randgen import (
    random_congruence_scramble,
    random_hk,
    random_rational_matrix,
    random_unimodular,
    random_vector,
)
from .serialize import canonical_json, content_hash
from .weil import analyze, check_quadratic_endo, is_weil, weil_class_space

_ONE = Fraction(1)

OK_STATUSES = ("pass", "vacuous", "skipped")


@dataclass
class RunReport:
    """Machine-readable outcome of a command or suite run."""

    command: str
    inputs: dict[str, str]
    checks: list[dict]
    exit_code: int
    seed: int | None = None
    data: dict = field(default_factory=dict)

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for c in self.checks:
            out[c["status"]] = out.get(c["status"], 0) + 1
        return out

    def to_dict(self) -> dict:
        payload = {
            "command": self.command,
            "inputs": self.inputs,
            "checks": self.checks,
            "counts": self.counts(),
            "exit_code": self.exit_code,
        }
        if self.seed is not None:
            payload["seed"] = self.seed
        if self.data:
            payload["data"] = self.data
        return payload


def exit_code_from_checks(checks: list[dict]) -> int:
    return 0 if all(c["status"] in OK_STATUSES for c in checks) else 1


def _check(name: str, ok: bool, detail: str = "") -> dict:
    return {"name": name, "status": "pass" if ok else "fail", "detail": detail}


def _skipped(name: str, detail: str) -> dict:
    return {"name": name, "status": "skipped", "detail": detail}


def _vacuous(name: str, detail: str) -> dict:
    return {"name": name, "status": "vacuous", "detail": detail}


def default_config() -> dict:
    with resources.files("ksw.data").joinpath("default_suite.json").open("rb") as fh:
        return json.load(fh)


def load_config(overrides: dict | None = None) -> dict:
    cfg = default_config()
    if overrides:
        for key, value in overrides.items():
            if isinstance(value, dict) and isinstance(cfg.get(key), dict):
                cfg[key].update(value)
            else:
                cfg[key] = value
    return cfg


# -- individual check families -----------------------------------------------------


def _linalg_checks(cfg, rng) -> list[dict]:
    sub = cfg["linalg"]
    bad = []
    for t in range(sub["trials"]):
        n = rng.randint(1, sub["max_size"])
        m = random_rational_matrix(rng, n, n)
        try:
            inv = m.inverse()
        except WorkbenchError:
            continue
        if m * inv != Matrix.identity(n):
            bad.append(t)
    return [
        _check(
            "linalg.inverse_roundtrip",
            not bad,
            "m * inverse(m) == identity on %d random square matrices" % sub["trials"],
        )
    ]


def _qspace_checks(cfg, rng) -> list[dict]:
    sub = cfg["qspace"]
    lo, hi = sub["h_range"]
    sig_ok = True
    disc_ok = True
    for h in range(lo, hi + 1):
        entries = [rng.choice((-3, -2, -1, 1, 2, 3)) for _ in range(h)]
        base = QuadraticSpace(Matrix.diagonal(entries))
        disc = _ONE
        for x in base.diag_values:
            disc *= x
        for _ in range(sub["scrambles"]):
            scrambled = QuadraticSpace(random_congruence_scramble(rng, base.gram))
            if scrambled.signature != base.signature:
                sig_ok = False
            sdisc = _ONE
            for x in scrambled.diag_values:
                sdisc *= x
            if not same_square_class(disc, sdisc):
                disc_ok = False
    return [
        _check("qspace.signature_congruence", sig_ok, "Sylvester invariance under P^t G P"),
        _check(
            "qspace.discriminant_square_class",
            disc_ok,
            "det mod squares invariant under congruence",
        ),
    ]


def _clifford_checks(cfg, rng) -> list[dict]:
    sub = cfg["clifford"]
    cap = cfg.get("cap_h")
    checks = []
    lo, hi = sub["h_range"]
    for h in range(lo, hi + 1):
        name = "clifford.dimension_counts[h=%d]" % h
        try:
            alg = CliffordAlgebra(QuadraticSpace(Matrix.identity(h)), cap=cap)
        except CapExceeded as exc:
            checks.append(_skipped(name, str(exc)))
            continue
        ok = (
            alg.dim == 2 ** h
            and len(alg.even_masks) == 2 ** (h - 1)
            and len(alg.odd_masks) == 2 ** (h - 1)
        )
        checks.append(_check(name, ok, "dim Cliff = 2^h, dim C+ = 2^(h-1)"))

    h = sub["element_h"]
    diag = tuple(Fraction(rng.choice((-3, -2, -1, 1, 2, 3))) for _ in range(h))
    space = QuadraticSpace(Matrix.diagonal(diag))
    alg = CliffordAlgebra(space, cap=cap)
    pair_ok = True
    for _ in range(sub["pair_trials"]):
        vc = random_vector(rng, h)
        wc = random_vector(rng, h)
        v = alg.vector_diag(vc)
        w = alg.vector_diag(wc)
        pairing = sum((a * b * d for a, b, d in zip(vc, wc, diag)), Fraction(0))
        if v * w + w * v != alg.scalar(2 * pairing):
            pair_ok = False
    checks.append(
        _check(
            "clifford.anticommutation",
            pair_ok,
            "v.w + w.v == 2(v,w).unit on %d random grade-1 pairs" % sub["pair_trials"],
        )
    )

    assoc_ok = True
    parity_ok = True
    for _ in range(sub["triple_trials"]):
        x = kuga_satake._random_element(alg, rng)
        y = kuga_satake._random_element(alg, rng)
        z = kuga_satake._random_element(alg, rng)
        if (x * y) * z != x * (y * z):
            assoc_ok = False
        xe = x.grade_part(0) + x.grade_part(2) + x.grade_part(4)
        ye = y.grade_part(0) + y.grade_part(2) + y.grade_part(4)
        if (xe * ye).parity not in ("even",):
            parity_ok = False
    checks.append(
        _check("clifford.associativity", assoc_ok, "(xy)z == x(yz) on random triples")
    )
    checks.append(
        _check("clifford.parity_additivity", parity_ok, "even.even stays even")
    )
    return checks


def _ks_instances(cfg, rng):
    sub = cfg["ks"]
    cap = cfg.get("cap_h")
    lo, hi = sub["h_range"]
    for h in range(lo, hi + 1):
        for i in range(sub["instances_per_h"]):
            hk = random_hk(rng, h)
            yield h, i, hk, cap


def _ks_checks(cfg, rng) -> list[dict]:
    checks = []
    sub = cfg["ks"]
    e_ok, j_ok, comm_ok, torus_ok = True, True, True, True
    basis_ok, orient_ok, endo_rank_ok, sign_ok, iso_ok = True, True, True, True, True
    count = 0
    skipped = None
    for h, i, hk, cap in _ks_instances(cfg, rng):
        try:
            ks = kuga_satake.build(hk, cap=cap)
        except CapExceeded as exc:
            skipped = str(exc)
            continue
        count += 1
        e_ok &= kuga_satake.verify_e_square(ks)
        j_ok &= kuga_satake.verify_j_square(ks)
        report = kuga_satake.structure_commutators(
            ks, samples=sub["commutator_samples"], rng=rng, raise_on_failure=False
        )
        comm_ok &= report.ok
        torus_ok &= ks.torus_complex_dim == 2 ** (h - 2)

        # basis independence under a rational rotation of the plane
        a, b = Fraction(3, 5), Fraction(4, 5)
        alpha, beta = hk.period.alpha, hk.period.beta
        alpha2 = tuple(a * x + b * y for x, y in zip(alpha, beta))
        beta2 = tuple(-b * x + a * y for x, y in zip(alpha, beta))
        hk2 = HKStructure.build(hk.space, alpha2, beta2)
        basis_ok &= kuga_satake.complex_structure_element(hk2, ks.algebra) == ks.e
        hk3 = HKStructure.build(hk.space, beta, alpha)
        orient_ok &= kuga_satake.complex_structure_element(hk3, ks.algebra) == -ks.e

        v0 = kuga_satake.default_v0(ks)
        endo_rank_ok &= kuga_satake.embedding_has_full_rank(ks, v0)
        sign_ok &= kuga_satake.embedding_sign_laws(ks, v0, matrix_level=h <= 5)
        riso = kuga_satake.odd_even_isomorphism(ks, v0)
        rinv = kuga_satake.odd_even_inverse(ks, v0)
        iso_ok &= rinv * riso == Matrix.identity(1 << (h - 1))
        if h <= 6:
            j_odd = _mul_block(ks.e, "left", "odd")
            iso_ok &= j_odd * riso == riso * ks.j_even
    if count == 0:
        detail = skipped or "no instances configured"
        return [_skipped("ks.%s" % name, detail) for name in (
            "e_square", "j_square", "commutators", "torus_dimension",
            "basis_independence", "orientation_reversal", "endo_rank",
            "endo_sign_laws", "odd_even_iso",
        )]
    checks.append(_check("ks.e_square", e_ok, "e.e == -unit on %d instances" % count))
    checks.append(_check("ks.j_square", j_ok, "J^2 == -I on C+ (column-wise)"))
    checks.append(_check("ks.commutators", comm_ok, "all four identity families"))
    checks.append(_check("ks.torus_dimension", torus_ok, "complex dim = 2^(h-2)"))
    checks.append(_check("ks.basis_independence", basis_ok, "Pythagorean rotation fixes e"))
    checks.append(_check("ks.orientation_reversal", orient_ok, "swapping the pair negates e"))
    checks.append(_check("ks.endo_rank", endo_rank_ok, "rank of v -> E_v equals h"))
    checks.append(_check("ks.endo_sign_laws", sign_ok, "J (anti)commutes with E_v by plane membership"))
    checks.append(_check("ks.odd_even_iso", iso_ok, "R_v0 invertible and J-intertwining"))
    if skipped:
        checks.append(_skipped("ks.build", skipped))
    return checks


def _hodge_checks(cfg, rng) -> list[dict]:
    checks = []
    iso_ok, skew_ok, spec_ok = True, True, True
    for h, i, hk, cap in _ks_instances(cfg, rng):
        d_aa, cross, half = hk.sigma_isotropy()
        iso_ok &= d_aa == 0 and cross == 0 and half == hk.period.norm > 0
        a = rotation_generator(hk)
        g = hk.space.gram
        skew_ok &= (a.transpose() * g + g * a).is_zero()
        spec = h2_spectrum(hk)
        spec_ok &= (
            spec.dim(2, 0) == 1 and spec.dim(0, 2) == 1 and spec.dim(1, 1) == h - 2
        )
    checks.append(
        _check("hodge.period_isotropy", iso_ok, "q(sigma,sigma)=0, q(sigma,sigma-bar)=2N>0")
    )
    checks.append(_check("hodge.rotation_skew", skew_ok, "A^t G + G A == 0"))
    checks.append(_check("hodge.h2_spectrum", spec_ok, "type (1, h-2, 1) on H^2"))
    return checks


def _sympow_checks(cfg, rng) -> list[dict]:
    sub = cfg["sympow"]
    checks = []
    for h, k in sub["decompose"]:
        name = "sympow.decompose[h=%d,k=%d]" % (h, k)
        entries = [rng.choice((-3, -2, -1, 1, 2, 3)) for _ in range(h)]
        space = QuadraticSpace(random_congruence_scramble(rng, Matrix.diagonal(entries)))
        try:
            sym = sympow.build_sym(space, k)
            surj = sym.contraction.rank() == sympow.sym_dim(h, k - 2)
            dec = sympow.decompose(space, k)
        except CapExceeded as exc:
            checks.append(_skipped(name, str(exc)))
            continue
        dims_ok = all(
            len(vecs) == sympow.harmonic_dim(h, k - 2 * l) for l, vecs in dec.blocks
        )
        checks.append(
            _check(
                name,
                surj and dims_ok and dec.total == sympow.sym_dim(h, k),
                "contraction surjective; block dims as computed; certificate %s"
                % dec.certificate,
            )
        )
    # harmonic symmetry under a norm-preserving basis permutation
    space = QuadraticSpace(Matrix.diagonal([1, 1, -2]))
    harm = sympow.harmonic(space, 2)
    sym2 = sympow.build_sym(space, 2)
    perm = {0: 1, 1: 0, 2: 2}
    permuted = []
    for v in harm:
        out = [Fraction(0)] * sym2.dim
        for pos, mu in enumerate(sym2.basis):
            nu = [0, 0, 0]
            for idx, mult in enumerate(mu):
                nu[perm[idx]] += mult
            out[sym2.index[tuple(nu)]] = Fraction(v[pos])
        permuted.append(tuple(out))
    checks.append(
        _check(
            "sympow.harmonic_symmetry",
            same_span(harm, permuted),
            "swap of equal-norm diagonal vectors preserves Harm^2",
        )
    )
    for h, k in sub["level"]:
        name = "sympow.level_filtration[h=%d,k=%d]" % (h, k)
        hk = random_hk(rng, h)
        try:
            part = sympow.level_two_part(hk, k)
            checks.append(_check(name, len(part) == h, "level <= 2 part is Q^((k-1)/2).H^2"))
        except CapExceeded as exc:
            checks.append(_skipped(name, str(exc)))
        except WorkbenchError as exc:
            checks.append(_check(name, False, str(exc)))
    for h, k in sub["block_level"]:
        name = "sympow.block_level[h=%d,k=%d]" % (h, k)
        hk = random_hk(rng, h)
        try:
            levels = sympow.block_max_level(hk, k)
            checks.append(
                _check(name, all(lvl == 2 * (k - 2 * l) for l, lvl in levels), str(levels))
            )
        except CapExceeded as exc:
            checks.append(_skipped(name, str(exc)))
        except WorkbenchError as exc:
            checks.append(_check(name, False, str(exc)))
    for h, k in sub["isotropic"]:
        name = "sympow.isotropic_span[h=%d,k=%d]" % (h, k)
        if h == 3:
            gram = Matrix([[0, 1, 0], [1, 0, 0], [0, 0, -1]])
        else:
            gram = Matrix.diagonal([1] * (h // 2) + [-1] * (h - h // 2))
        space = QuadraticSpace(gram)
        try:
            checks.append(
                _check(name, sympow.isotropic_span_check(space, k), "isotropic powers span harmonics")
            )
        except NotApplicable as exc:
            checks.append(_vacuous(name, str(exc)))
        except CapExceeded as exc:
            checks.append(_skipped(name, str(exc)))
    # definite control: must report NotApplicable
    try:
        sympow.isotropic_span_check(QuadraticSpace(Matrix.identity(3)), 2)
        checks.append(_check("sympow.isotropic_definite_control", False, "expected NotApplicable"))
    except NotApplicable:
        checks.append(
            _check("sympow.isotropic_definite_control", True, "definite form raises NotApplicable")
        )
    return checks


def _weil_block_instance():
    j0 = [[0, -1], [1, 0]]
    j = Matrix(
        [
            [Fraction(j0[i % 2][k % 2]) if i // 2 == k // 2 else Fraction(0) for k in range(8)]
            for i in range(8)
        ]
    )
    phi_rows = []
    for i in range(8):
        row = []
        for k in range(8):
            if i // 2 == k // 2:
                sign = 1 if i < 4 else -1
                row.append(Fraction(sign * j0[i % 2][k % 2]))
            else:
                row.append(Fraction(0))
        phi_rows.append(row)
    return j, Matrix(phi_rows)


def _weil_checks(cfg, rng) -> list[dict]:
    checks = []
    j, phi = _weil_block_instance()
    report = analyze(j, phi)
    checks.append(
        _check(
            "weil.balanced_block",
            report.mult_plus == 2
            and report.mult_minus == 2
            and report.is_weil
            and report.weil_space_dim == 2
            and report.all_weil_classes_22 is True,
            "block instance: (2,2) multiplicities, 2-dim class space, all (2,2)",
        )
    )
    unbalanced = analyze(j, j)
    checks.append(
        _check(
            "weil.unbalanced_control",
            unbalanced.mult_plus == 4
            and unbalanced.mult_minus == 0
            and not unbalanced.is_weil
            and unbalanced.weil_space_dim == 2
            and unbalanced.all_weil_classes_22 is False,
            "phi = J: K-line survives but classes meet (4,0)+(0,4)",
        )
    )
    trace_ok = True
    conj_ok = True
    for _ in range(cfg["weil"]["conjugations"]):
        g = random_unimodular(rng, 8)
        ginv = g.inverse()
        jc = ginv * j * g
        for cand, balanced in ((phi, True), (j, False)):
            pc = ginv * cand * g
            endo = check_quadratic_endo(jc, pc)
            tr = (endo.phi * endo.j).trace()
            trace_ok &= is_weil(endo) == (tr == 0) == balanced
            conj_ok &= len(weil_class_space(endo)) == 2
    checks.append(
        _check("weil.trace_criterion", trace_ok, "is_weil iff trace(phi.J) == 0")
    )
    checks.append(
        _check("weil.conjugation_invariance", conj_ok, "class space dim 2 under base change")
    )
    return checks


def _betti_checks(cfg, rng) -> list[dict]:
    checks = []
    lo, hi = cfg["betti"]["b2_range"]
    mono_ok = True
    prev = {}
    for b2 in range(lo, hi + 1):
        k = betti.bound_exponent(b2)
        parity = b2 % 2
        if parity in prev and k < prev[parity]:
            mono_ok = False
        prev[parity] = k
    checks.append(
        _check("betti.bound_monotone", mono_ok, "k nondecreasing within each parity class")
    )
    catalog = betti.default_catalog()
    tight_ok = all(betti.audit_b3(e).status == betti.STATUS_TIGHT for e in catalog)
    checks.append(_check("betti.catalog_tight", tight_ok, "shipped entries audit tight"))
    factor_ok = (
        betti.ks_factor_dims(7) == {4, 8}
        and betti.ks_factor_dims(6) == {2, 4, 8}
        and betti.ks_factor_dims(3) == {1, 2}
    )
    checks.append(_check("betti.factor_dims", factor_ok, "odd/even factor dimension sets"))
    return checks


def _corr_checks(cfg, rng) -> list[dict]:
    sub = cfg["corr"]
    checks = []
    b3 = sub["b3"]
    for n in sub["n"]:
        gamma = formal_corr.kunneth_square(b3, n, sub["sign_rule"])
        pairs, coef, uniform = formal_corr.kunneth_coefficient(gamma, b3, n)
        name = "corr.uniform_coefficient[n=%d]" % n
        ok = uniform and coef is not None and coef != 0
        checks.append(
            _check(
                name,
                ok,
                "c = %s over %d pairs" % (coef, pairs) if ok else "no uniform nonzero c",
            )
        )
        checks.append(
            _check(
                "corr.kunneth_block[n=%d]" % n,
                formal_corr.is_kunneth_concentrated(gamma),
                "no cross terms outside the (f^2, e^2) block",
            )
        )
        push_ok = not gamma.is_zero()
        for i in range(1, b3 + 1):
            for jj in range(i + 1, b3 + 1):
                fwd = formal_corr.gamma_pushforward(gamma, i, jj)
                alg = gamma.algebra
                expected = alg.element(
                    {(0, (1 << (i - 1)) | (1 << (jj - 1)), n - 2): coef or 0}
                )
                push_ok &= fwd == expected
                push_ok &= formal_corr.gamma_pushforward(gamma, jj, i) == -fwd
        checks.append(
            _check(
                "corr.pushforward_pairing[n=%d]" % n,
                push_ok,
                "contraction matches c times the formal pairing map, antisymmetrically",
            )
        )
    if sub.get("negative_control"):
        gamma_bad = formal_corr.kunneth_square(b3, 2, formal_corr.SIGN_BROKEN)
        _, coef_bad, uniform_bad = formal_corr.kunneth_coefficient(gamma_bad, b3, 2)
        checks.append(
            _check(
                "corr.negative_control",
                not (uniform_bad and coef_bad),
                "misgraded sign rule must not produce a nonzero uniform coefficient",
            )
        )
    return checks


def run_full_suite(overrides: dict | None = None) -> RunReport:
    """Execute every module's invariant suite; deterministic for fixed config."""
    cfg = load_config(overrides)
    seed = cfg["seed"]
    checks: list[dict] = []
    for fn in (
        _linalg_checks,
        _qspace_checks,
        _clifford_checks,
        _ks_checks,
        _hodge_checks,
        _sympow_checks,
        _weil_checks,
        _betti_checks,
        _corr_checks,
    ):
        rng = random.Random(seed + sum(fn.__name__.encode()))
        checks.extend(fn(cfg, rng))
    return RunReport(
        command="suite",
        inputs={"config": content_hash(canonical_json(cfg))},
        checks=checks,
        exit_code=exit_code_from_checks(checks),
        seed=seed,
    )
