"""Verification suites and machine-readable reports.

Every suite returns a :class:`Report` whose cases carry an id, a status and
a printable witness.  Statuses are ``pass``, ``fail`` and ``conflict``; the
last marks a literal value from the source tables that the computation
contradicts and is kept visible without counting as a failure.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import time
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from .algebra import Element, adjoint, check_cuntz_family, equals
from .carpoly import CarPolynomial, car_equal, max_abs_coeff
from .dynamics import (
    example_morphism,
    generator_check,
    npoint,
    overlap,
    particle_number_expectation,
    particle_number_table,
    transported_tau,
)
from .induced import closed_form_morphism, closed_form_names, closed_form_table, crosscheck
from .morphisms import (
    SECOND_ORDER_COMPOSITIONS,
    SECOND_ORDER_CYCLES,
    SECOND_ORDER_IMAGES,
    SECOND_ORDER_RELATIONS,
    Morphism,
    apply,
    canonical_endomorphism,
    catalogue,
    compose,
    compose_names,
    cuntz_embedding,
    endomorphism_of_unitary,
    general_endomorphism,
    generalized_cuntz_embedding,
    homogeneous_embedding,
    identity,
    inductive_extension,
    monomial_embedding,
    phi_sigma,
    phi_sigma_closure,
    phi_sigma_multi,
    unitary_of_endomorphism,
)
from .parse import format_car, format_element
from .reps import (
    PermRep,
    branching_number,
    certify_branch_label,
    enumerate_branch_labels,
    necklace_count,
    necklace_count_closed,
    restriction_reduction_check,
)
from .rfs import (
    from_cuntz,
    reduction_check,
    rfs_fixture,
    standard_rfs,
    to_cuntz,
    u1_monomial_to_car,
    variant_rfs,
    verify_axioms,
    verify_car,
)
from .states import (
    OccupationVector,
    QuasiFockState,
    branch_fock_check,
    car_monomials,
    chain_bogoliubov,
    kms_check,
    label_bogoliubov,
    phi_fock_vacuum_check,
    product_factorization_check,
)

SCHEMA_VERSION = "1"
SUITES = ("relations", "embeddings", "endomorphisms", "rfs", "car", "restrictions", "branching", "kms", "dynamics")
PASS, FAIL, CONFLICT = "pass", "fail", "conflict"


class SuiteConfigError(ValueError):
    """Unknown suite, unknown option or a bound beyond the supported range."""


@dataclass
class SuiteConfig:
    """Bounds for the verification suites.

    ``p`` and ``n_max`` restrict the rfs and branching suites to one
    standard system and one mode bound; ``beta`` and ``eps`` replace the
    default KMS grid, ``eps`` giving the block energies of a single state.
    """

    seed: int = 0
    relations_cases: int = 1000
    relations_depth: int = 3
    p: Optional[int] = None
    n_max: Optional[int] = None
    crosscheck_modes: int = 5
    closed_form_param: int = 3
    beta: Optional[Tuple[float, ...]] = None
    eps: Optional[Tuple[float, ...]] = None
    kms_modes: int = 3
    factorization_samples: int = 50
    time_samples: int = 8
    tol: float = 1e-10

    LIMITS = {
        "relations_cases": 100_000,
        "relations_depth": 6,
        "p": 4,
        "n_max": 10,
        "crosscheck_modes": 7,
        "closed_form_param": 4,
        "kms_modes": 4,
        "factorization_samples": 10_000,
        "time_samples": 64,
    }

    def __post_init__(self):
        if self.beta is not None:
            self.beta = tuple(float(b) for b in np.atleast_1d(self.beta))
        if self.eps is not None:
            self.eps = tuple(float(e) for e in np.atleast_1d(self.eps))
        for key, top in self.LIMITS.items():
            value = getattr(self, key)
            if value is None:
                continue
            if not isinstance(value, (int, np.integer)) or value < 1:
                raise SuiteConfigError(f"{key} must be a positive integer, got {value!r}")
            if value > top:
                raise SuiteConfigError(f"bound overflow: {key}={value} exceeds {top}")
        if self.beta is not None and any(b <= 0 for b in self.beta):
            raise SuiteConfigError("beta must be positive")
        if self.eps is not None and (not self.eps or len(self.eps) > 4 or any(e <= 0 for e in self.eps)):
            raise SuiteConfigError("eps needs between 1 and 4 positive energies")

    def echo(self) -> Dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            out[f.name] = list(v) if isinstance(v, tuple) else v
        return out


@dataclass
class Case:
    id: str
    status: str
    witness: str = ""


@dataclass
class Report:
    suite: str
    config: Dict
    cases: List[Case] = field(default_factory=list)
    seconds: float = 0.0

    def add(self, id: str, ok: bool, witness: str = "", keep: bool = False) -> None:
        """Record a case; the witness is dropped on success unless ``keep``."""
        self.cases.append(Case(id, PASS if ok else FAIL, witness if keep or not ok else ""))

    def conflict(self, id: str, witness: str) -> None:
        self.cases.append(Case(id, CONFLICT, witness))

    def extend(self, other: "Report") -> None:
        self.cases.extend(other.cases)

    @property
    def counts(self) -> Dict[str, int]:
        out = {PASS: 0, FAIL: 0, CONFLICT: 0}
        for c in self.cases:
            out[c.status] += 1
        out["total"] = len(self.cases)
        return out

    @property
    def passed(self) -> bool:
        return self.counts[FAIL] == 0

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    @property
    def failures(self) -> List[Case]:
        return [c for c in self.cases if c.status == FAIL]

    def to_dict(self) -> Dict:
        return {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "config": self.config,
            "counts": self.counts,
            "seconds": round(self.seconds, 3),
            "cases": [asdict(c) for c in self.cases],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "id", "status", "witness"])
        for c in self.cases:
            w.writerow([self.suite, c.id, c.status, c.witness])
        return buf.getvalue()

    def summary(self) -> str:
        c = self.counts
        text = f"{self.suite}: {c[PASS]} pass, {c[FAIL]} fail"
        if c[CONFLICT]:
            text += f", {c[CONFLICT]} conflict"
        return text + f" ({self.seconds:.1f} s)"


REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema", "suite", "config", "counts", "cases"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "suite": {"type": "string"},
        "config": {"type": "object"},
        "seconds": {"type": "number"},
        "counts": {
            "type": "object",
            "required": [PASS, FAIL, CONFLICT, "total"],
            "additionalProperties": {"type": "integer", "minimum": 0},
        },
        "cases": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "status", "witness"],
                "properties": {
                    "id": {"type": "string"},
                    "status": {"enum": [PASS, FAIL, CONFLICT]},
                    "witness": {"type": "string"},
                },
            },
        },
    },
}


def _check_report(report: Report, prefix: str, check) -> None:
    """Fold a module-level ``CheckReport`` into one case."""
    witness = "; ".join(check.failures[:5])
    report.add(prefix, check.passed, f"{len(check.failures)} of {check.checked} failed: {witness}")


def _images_equal(m1: Morphism, m2: Morphism) -> bool:
    return m1.source_d == m2.source_d and all(equals(x, y) for x, y in zip(m1.images, m2.images))


def _image_witness(m1: Morphism, m2: Morphism) -> str:
    for i, (x, y) in enumerate(zip(m1.images, m2.images), 1):
        if not equals(x, y):
            return f"s{i} -> {format_element(x)} vs {format_element(y)}"
    return ""


# relations --------------------------------------------------------------------


def _random_word(rng: np.random.Generator, d: int, depth: int) -> Tuple[int, ...]:
    return tuple(int(x) for x in rng.integers(1, d + 1, size=int(rng.integers(0, depth + 1))))


def suite_relations(cfg: SuiteConfig, report: Report) -> None:
    rng = np.random.default_rng(cfg.seed)
    for d in (2, 3, 4):
        one = Element.identity(d)
        total = Element.zero(d)
        for i in range(1, d + 1):
            total = total + Element.gen(d, i) * Element.gen(d, i).star
            for j in range(1, d + 1):
                lhs = Element.gen(d, i).star * Element.gen(d, j)
                report.add(f"cr1/O{d}/{i}{j}", equals(lhs, one if i == j else Element.zero(d)), f"s{i}* s{j}")
        report.add(f"cr2/O{d}", equals(total, one), format_element(total))
    for d, k in itertools.product((2, 3, 4), range(cfg.relations_cases)):
        x, y, z = (
            Element.mono(d, _random_word(rng, d, cfg.relations_depth), _random_word(rng, d, cfg.relations_depth))
            for _ in range(3)
        )
        ok = (
            equals((x * y) * z, x * (y * z))
            and equals(adjoint(x * y), adjoint(y) * adjoint(x))
            and equals(adjoint(adjoint(x)), x)
            and equals(x * Element.identity(d), x)
            and equals(x * (y + z), x * y + x * z)
        )
        report.add(f"random/O{d}/{k}", ok, f"x={format_element(x)}, y={format_element(y)}, z={format_element(z)}")


# embeddings -------------------------------------------------------------------


def suite_embeddings(cfg: SuiteConfig, report: Report) -> None:
    families: List[Morphism] = []
    families += [cuntz_embedding(k) for k in range(2, 7)]
    families += [generalized_cuntz_embedding(d, n) for d in (2, 3) for n in (1, 2, 3)]
    families += [inductive_extension(m) for m in (cuntz_embedding(3), generalized_cuntz_embedding(3, 2))]
    families += [homogeneous_embedding(2, p) for p in range(1, 5)] + [homogeneous_embedding(3, 2)]
    families += [monomial_embedding(w) for n in (1, 2, 3) for w in itertools.product((1, 2), repeat=n)]
    for m in families:
        report.add(f"family/{m.name}", check_cuntz_family(m.images, m.source_d), m.name)

    endos = {name: catalogue(name) for name in SECOND_ORDER_CYCLES}
    endos["rho"] = canonical_endomorphism(2)
    endos["rho[O3]"] = canonical_endomorphism(3)
    for name, m in endos.items():
        u = unitary_of_endomorphism(m)
        one = Element.identity(m.source_d)
        unitary = equals(u * u.star, one) and equals(u.star * u, one)
        back = endomorphism_of_unitary(u, check=False)
        report.add(f"unitary-roundtrip/{name}", unitary and _images_equal(back, m), _image_witness(back, m))

    # unitary from two embeddings of O_3 into O_2, and the new embedding it yields
    first = Morphism([Element.word(2, (1,)), Element.word(2, (2, 1)), Element.word(2, (2, 2))], "S1")
    rho = canonical_endomorphism(2)
    second = Morphism([rho.images[0], Element.word(2, (1, 2)), Element.word(2, (2, 2))], "S2")
    report.add("hom-hom/new-embedding", check_cuntz_family(second.images, 3), "rho(s1), s12, s22")
    for a, b in ((first, second), (second, first), (first, homogeneous_embedding(2, 1)), (cuntz_embedding(4), monomial_embedding((1, 2, 2)))):
        if a.source_d != b.source_d:
            continue
        u = Element.zero(2)
        for x, y in zip(a.images, b.images):
            u = u + y * adjoint(x)
        one = Element.identity(2)
        ok = equals(u * u.star, one) and equals(u.star * u, one)
        ok = ok and all(equals(u * x, y) for x, y in zip(a.images, b.images))
        report.add(f"hom-hom/{a.name}->{b.name}", ok, format_element(u))
    u_rho = unitary_of_endomorphism(rho)
    report.add(
        "hom-hom/rho-rotates",
        all(equals(u_rho * x, y) for x, y in zip(first.images, second.images)),
        "u_rho S1 != S2",
    )

    # reconstruction of an endomorphism from inner families and phi(s_i) S^[i]_j
    inner_choices = [
        [None, None],
        [identity(2), None],
        [cuntz_embedding(3), identity(2)],
        [monomial_embedding((2, 1)), cuntz_embedding(3)],
    ]
    for name in ("id", "phi[2,3]", "phi[1,3][2,4]", "phi[1,2,3,4]"):
        phi = catalogue(name)
        for k, inner in enumerate(inner_choices):
            outer = []
            for i, fam in enumerate(inner, start=1):
                imgs = [Element.identity(2)] if fam is None else fam.images
                outer += [phi.images[i - 1] * x for x in imgs]
            outer_m = Morphism(outer, "outer")
            ok = check_cuntz_family(outer, len(outer))
            rebuilt = general_endomorphism(inner + [outer_m], 2)
            ok = ok and _images_equal(rebuilt, phi)
            report.add(f"embend/{name}/{k}", ok, _image_witness(rebuilt, phi))


# endomorphisms ------------------------------------------------------------------


PHI_SIGMA_CATALOGUE = ((1,), (2,), (3,), (1, 2, 3), (1, 2, 4), (2, 3, 4))


def suite_endomorphisms(cfg: SuiteConfig, report: Report) -> None:
    for name in SECOND_ORDER_CYCLES:
        m = catalogue(name)
        ok = check_cuntz_family(m.images, 2)
        expected = SECOND_ORDER_IMAGES[name]
        ok = ok and all(equals(x, y) for x, y in zip(m.images, expected))
        report.add(f"second-order/{name}", ok, _image_witness(m, Morphism(list(expected), name)))
    for name, factors in SECOND_ORDER_RELATIONS + SECOND_ORDER_COMPOSITIONS:
        lhs, rhs = catalogue(name), compose_names(factors)
        report.add(f"relation/{name}=" + "o".join(factors), _images_equal(lhs, rhs), _image_witness(lhs, rhs))
    for p, q in itertools.combinations(range(1, 4), 2):
        a, b = compose(phi_sigma(p), phi_sigma(q)), compose(phi_sigma(q), phi_sigma(p))
        report.add(f"phi_sigma/commute/{p},{q}", _images_equal(a, b), _image_witness(a, b))
    for p in range(1, 4):
        a, b = compose(phi_sigma(p), phi_sigma(p)), phi_sigma(2 * p)
        report.add(f"phi_sigma/square/{p}", _images_equal(a, b), _image_witness(a, b))
    for P, Q in itertools.combinations_with_replacement(PHI_SIGMA_CATALOGUE, 2):
        R = phi_sigma_closure(P, Q)
        a, b = compose(phi_sigma_multi(P), phi_sigma_multi(Q)), phi_sigma_multi(R)
        ok = _images_equal(a, b) and _images_equal(a, compose(phi_sigma_multi(Q), phi_sigma_multi(P)))
        report.add(f"phi_sigma/closure/{P}x{Q}={R}", ok, _image_witness(a, b))


# recursive fermion systems -------------------------------------------------------


def _u1_pairs(depth: int):
    for k in range(depth + 1):
        for I in itertools.product((1, 2), repeat=k):
            for R in itertools.product((1, 2), repeat=k):
                yield I, R


def suite_rfs(cfg: SuiteConfig, report: Report) -> None:
    if cfg.p is not None:
        bounds = [(f"SR{cfg.p}", cfg.n_max or 6)]
    else:
        bounds = [("SR1", 8), ("SR2", 6), ("SR3", 6), ("SR4", 6), ("VR1", 5), ("VR2", 5)]
        if cfg.n_max is not None:
            bounds = [(name, cfg.n_max) for name, _ in bounds]
    for name, n_max in bounds:
        r = rfs_fixture(name)
        _check_report(report, f"car/{name}/n<={n_max}", verify_car(r, n_max))
        _check_report(report, f"axioms/{name}", verify_axioms(r))
    if cfg.p is not None:
        return
    for p, r in ((2, 1), (3, 1), (4, 1), (4, 2)):
        _check_report(report, f"reduction/{p},{r}", reduction_check(p, r, cfg.n_max or 5))
    for I, R in _u1_pairs(4):
        x = u1_monomial_to_car(I, R)
        back = to_cuntz(x)
        ok = equals(back, Element.mono(2, I, R)) and car_equal(from_cuntz(back), x)
        report.add(f"u1/{''.join(map(str, I))};{''.join(map(str, R))}", ok, format_car(x))


# restriction to the CAR algebra ----------------------------------------------------


def suite_car(cfg: SuiteConfig, report: Report) -> None:
    n_max = cfg.n_max or cfg.crosscheck_modes
    for name in closed_form_names(cfg.closed_form_param) + [f"hat_phi({k})" for k in range(cfg.closed_form_param + 1, 5)]:
        _check_report(report, f"crosscheck/{name}", crosscheck(name, n_max))
        car = closed_form_morphism(name).check_car(n_max, 0.0)
        _check_report(report, f"homomorphism/{name}", car)
    a, ad = CarPolynomial.a, CarPolynomial.adag
    K1 = CarPolynomial.identity() - ad(1) * a(1) * 2
    for n in range(1, n_max + 1):
        got = closed_form_table("rho", n)
        report.add(f"value/rho(a{n})", car_equal(got, K1 * a(n + 1)), format_car(got))
    got = closed_form_table("phi[2,4]", 1)
    report.add("value/phi[2,4](a1)", car_equal(got, a(1) * (a(2) + ad(2)) * -1), format_car(got))
    got = closed_form_table("phi[2,3]", 3)
    report.add("value/phi[2,3](a3)", car_equal(got, closed_form_table("rho", 3)), format_car(got))
    sr1 = standard_rfs(1)
    for k in range(1, 5):
        for n in range(1, n_max + 1):
            expect = a(n) if n < k else (ad(k) if n == k else a(n) * -1)
            got = from_cuntz(apply(catalogue(f"hat_phi({k})"), sr1.car_image(n)))
            report.add(f"value/hat_phi({k})(a{n})", car_equal(got, expect), format_car(got))
    for n in range(1, n_max + 1):
        got = closed_form_table("phi[1,4][2,3]", n)
        report.add(f"value/phi[1,4][2,3](a{n})=hat_phi(1)", car_equal(got, closed_form_table("hat_phi(1)", n)), format_car(got))
    report.add("value/K1", car_equal(K1 * K1, CarPolynomial.identity()), format_car(K1))


# branching -------------------------------------------------------------------------


EXPECTED_BRANCHING = {1: 2, 2: 3, 3: 4, 4: 6}


def suite_branching(cfg: SuiteConfig, report: Report) -> None:
    ps = [cfg.p] if cfg.p is not None else [1, 2, 3, 4]
    for p in ps:
        labels = enumerate_branch_labels(p)
        B = branching_number(p)
        report.add(f"B_{p}", B == EXPECTED_BRANCHING[p] == len(labels), f"B_{p}={B}, {len(labels)} labels", keep=True)
        seen = []
        for L in labels:
            for lam in range(len(L)):
                N, ok = certify_branch_label(L, lam, p)
                seen.append(N)
                report.add(f"label/p={p}/{''.join(map(str, L))}/lambda={lam}", ok, f"e_{N} not fixed")
        report.add(f"indices/p={p}", sorted(seen) == list(range(1, 2**p + 1)), f"indices {sorted(seen)}")
        _check_report(report, f"fock-branch/p={p}", branch_fock_check(p, cfg.n_max or 6))
        control = branch_fock_check(p, cfg.n_max or 6, wrong=True)
        report.add(f"fock-branch-control/p={p}", not control.passed, "wrong Bogoliubov maps were accepted")
    for n in range(1, 17):
        report.add(f"necklace/{n}", necklace_count(n) == necklace_count_closed(n), f"C_{n}")
    report.add("necklace/C_7=18", necklace_count(7) == 18, f"C_7={necklace_count(7)}")


# restrictions of permutation representations -----------------------------------------


def suite_restrictions(cfg: SuiteConfig, report: Report) -> None:
    n_max = cfg.n_max or 5
    for label, sectors in (((1, 2), 2), ((1, 1, 2), 3), ((1, 2, 2), 3), ((2,), 1)):
        rep = PermRep.cycle(label)
        vacua = [((lam, 1), label_bogoliubov(rep, lam)) for lam in range(len(label))]
        check = phi_fock_vacuum_check(rep, vacua, n_max)
        name = ",".join(map(str, label))
        _check_report(report, f"sectors/Rep({name})", check)
        report.add(f"sector-count/Rep({name})", len(vacua) == sectors, f"{len(vacua)} sectors")
    for prefix, block in (((2,), (1,)), ((1, 2), (1,)), ((2, 1, 2), (2,))):
        rep = PermRep.chain(prefix, block)
        good = [
            lam
            for lam in range(-3, 5)
            if phi_fock_vacuum_check(rep, [((lam, 1), chain_bogoliubov(rep, lam))], n_max).passed
        ]
        tag = f"Rep({','.join(map(str, prefix))}|{','.join(map(str, block))})"
        report.add(f"chain/{tag}", len(good) >= 4, f"certified vacua at {good}", keep=True)
    vr2 = variant_rfs(2)
    std = PermRep.standard(2)
    for m in range(1, 5):
        check = phi_fock_vacuum_check(std, [((0, 2 * m - 1), lambda n: False)], n_max, rfs=vr2)
        _check_report(report, f"VR2/vacuum/e{2 * m - 1}", check)
    extra = [
        k for k in (2, 4, 6, 8)
        if phi_fock_vacuum_check(std, [((0, k), lambda n: False)], n_max, rfs=vr2, sample_depth=0).passed
    ]
    report.add("VR2/even-vacua", extra == [2], f"even vacua found at {extra}", keep=True)
    for i0, q in ((1, 2), (2, 2), (1, 3), (2, 3)):
        r = restriction_reduction_check(i0, q, n_max=6)
        report.add(f"reduction/Rep({i0})/q={q}", r.passed, "; ".join(r.failures[:5]))


# KMS states ----------------------------------------------------------------------------


def _kms_grid(cfg: SuiteConfig):
    betas = cfg.beta or (0.5, 1.0, 2.0)
    if cfg.eps is not None:
        eps_list = [cfg.eps]
    else:
        eps_list = [e for p in (1, 2) for e in itertools.product((0.3, 1.0), repeat=p)]
    return [(b, e) for b in betas for e in eps_list]


def suite_kms(cfg: SuiteConfig, report: Report) -> None:
    X = car_monomials(cfg.kms_modes)
    for beta, eps in _kms_grid(cfg):
        state = QuasiFockState.from_beta(beta, eps)
        worst, arg = 0.0, ""
        for x in X:
            for y in X:
                r = kms_check(beta, eps, x, y, state)
                if r > worst:
                    worst, arg = r, f"X={format_car(x)}, Y={format_car(y)}"
        report.add(f"kms/beta={beta}/eps={list(eps)}", worst < 1e-12, f"residual {worst:.3e}" + (f" at {arg}" if arg else ""), keep=True)
        two = max(
            abs(state(CarPolynomial.adag(n) * CarPolynomial.a(n)) - state.lam(n)) for n in range(1, cfg.kms_modes + 1)
        )
        report.add(f"two-point/beta={beta}/eps={list(eps)}", two < 1e-12, f"residual {two:.3e}", keep=True)
    for lambdas in ((0.5,), (0.5, 0.5)):
        state = QuasiFockState(lambdas)
        worst = max(abs(state(x * y) - state(y * x)) for x in X for y in X)
        report.add(f"trace/lambda={list(lambdas)}", worst < 1e-12, f"residual {worst:.3e}", keep=True)
    for lambdas in ((0.0, 0.5), (0.0, 0.5, 0.3), (1.0, 0.3), (0.5, 0.2, 1.0, 0.7)):
        state = QuasiFockState(lambdas)
        worst = product_factorization_check(state, samples=cfg.factorization_samples, seed=cfg.seed)
        report.add(f"factorization/lambda={list(lambdas)}", worst < 1e-12, f"residual {worst:.3e}", keep=True)
    for lambdas in ((0.0,), (1.0,), (0.0, 1.0)):
        state = QuasiFockState(lambdas)
        vals = [state(CarPolynomial.a(n) * CarPolynomial.adag(n)) for n in range(1, 5)]
        report.add(f"pure/lambda={list(lambdas)}", all(v in (0, 1) for v in vals), f"values {vals}")
    state = QuasiFockState((0.3, 0.8))
    block = car_monomials(2)
    worst = max(abs(state(x * y) - state.mixture(x * y)) for x in block for y in block)
    report.add("branch-mixture/one-block", worst < 1e-12, f"residual {worst:.3e}", keep=True)


# dynamics ---------------------------------------------------------------------------------


DYNAMICS_MODES = {1: 4, 2: 6, 3: 8}

TABLE_RANGES = {1: ((6, 3),), 2: ((9, 3),), 3: ((12, 3), (8, 4))}


def table_cases(id: int) -> List[Tuple[int, ...]]:
    """Occupation sets ``v`` compared with the closed-form particle-number table."""
    out = []
    for top, kmax in TABLE_RANGES[id]:
        for k in range(1, kmax + 1):
            out += [occ for occ in itertools.combinations(range(1, top + 1), k) if occ not in out]
    return out


def sample_times(count: int) -> List[float]:
    return [float(t) for t in np.linspace(0.15, 2.95, count)]


def npoint_cases(t1: float, t2: float, t3: float, t4: float):
    """``(id, ops, truncated, computed value, literal reference value)`` for Example 1."""
    s, c = math.sin, math.cos
    return [
        ("2pt", [(2, False, t1), (2, True, t2)], False, c(t1 - t2), c(t1 - t2)),
        ("3pt/a", [(2, False, t1), (2, True, t2), (1, True, t3)], False, s(t1 - t2), s(t1 - t2)),
        ("3pt/b", [(2, False, t1), (1, True, t2), (2, True, t3)], False, -s(t1 - t2) * c(t2 - t3), s(t1 - t2) * c(t2 - t3)),
        ("4pt-T/1", [(1, False, t1), (2, False, t2), (1, True, t3), (2, True, t4)], True, -s(t2 - t3) * s(t3 - t4), s(t2 - t3) * s(t3 - t4)),
        (
            "4pt-T/2",
            [(2, False, t1), (1, False, t2), (1, True, t3), (2, True, t4)],
            True,
            s(t1 - t2) * s(t2 - t3) * c(t3 - t4) + s(t1 - t3) * s(t3 - t4),
            s(t1 - t2) * s(t2 - t3) * c(t3 - t4) + s(t1 - t3) * s(t3 - t4),
        ),
        ("4pt-T/3", [(2, False, t1), (1, True, t2), (1, False, t3), (2, True, t4)], True, -s(t1 - t2) * c(t2 - t3) * s(t3 - t4), s(t1 - t2) * c(t2 - t3) * s(t3 - t4)),
    ]


def suite_dynamics(cfg: SuiteConfig, report: Report) -> None:
    tol = cfg.tol
    times = sample_times(cfg.time_samples)
    for id, n_max in DYNAMICS_MODES.items():
        for t in times:
            closed = example_morphism(id, t)
            moved = transported_tau(id, t)
            worst = max(max_abs_coeff(moved.image(n) - closed.image(n)) for n in range(1, n_max + 1))
            report.add(f"transport/ex{id}/t={t:.3f}", worst < tol, f"max coefficient gap {worst:.3e}", keep=True)
            car = closed.check_car(n_max, tol)
            _check_report(report, f"anticommutators/ex{id}/t={t:.3f}", car)
            for m in (1, 2):
                got = overlap(id, t, m=m)
                report.add(f"overlap/ex{id}/m={m}/t={t:.3f}", abs(got + math.sin(t)) < 1e-12, f"{got} vs {-math.sin(t)}")
    theta = 0.7
    for id in TABLE_RANGES:
        for occ in table_cases(id):
            got = particle_number_expectation(id, theta, OccupationVector(frozenset(occ)))
            want = particle_number_table(id, theta, occ)
            report.add(f"N_t/ex{id}/{occ}", abs(got - want) < tol, f"{got} vs {want}")
            try:
                literal = particle_number_table(id, theta, occ, literal=True)
            except ValueError:
                continue
            if abs(got - literal) >= tol:
                report.conflict(f"N_t-literal/ex{id}/{occ}", f"computed {got:.12f}, literal {literal:.12f}")
    t1, t2, t3, t4 = 0.3, 0.9, 1.7, 2.2
    for name, ops, trunc, want, literal in npoint_cases(t1, t2, t3, t4):
        got = npoint(1, ops, truncate=trunc)
        report.add(f"npoint/{name}", abs(got - want) < tol, f"{got} vs {want}")
        if abs(got - literal) >= tol:
            report.conflict(f"npoint-literal/{name}", f"computed {complex(got).real:.12f}, literal {literal:.12f}")
    for id in (2, 3):
        for n in range(1, 5):
            r = generator_check(id, n, times[:3])
            report.add(f"generator/ex{id}/a{n}", r < 1e-6, f"residual {r:.3e}", keep=True)


# driver -----------------------------------------------------------------------------------------


_SUITES: Dict[str, Callable[[SuiteConfig, Report], None]] = {
    "relations": suite_relations,
    "embeddings": suite_embeddings,
    "endomorphisms": suite_endomorphisms,
    "rfs": suite_rfs,
    "car": suite_car,
    "restrictions": suite_restrictions,
    "branching": suite_branching,
    "kms": suite_kms,
    "dynamics": suite_dynamics,
}


def make_config(config: Optional[SuiteConfig] = None, **overrides) -> SuiteConfig:
    base = config or SuiteConfig()
    known = {f.name for f in fields(SuiteConfig)}
    unknown = set(overrides) - known
    if unknown:
        raise SuiteConfigError(f"unknown option(s): {', '.join(sorted(unknown))}")
    try:
        return replace(base, **overrides)
    except TypeError as exc:
        raise SuiteConfigError(str(exc)) from exc


def run_suite(name: str, config: Optional[SuiteConfig] = None, **overrides) -> Report:
    """Run one suite, or every suite with ``name="all"``.

    Examples
    --------
    >>> run_suite("branching", p=4).passed
    True
    """
    cfg = make_config(config, **overrides)
    names = list(SUITES) if name == "all" else [name]
    for n in names:
        if n not in _SUITES:
            raise SuiteConfigError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    report = Report(name, cfg.echo())
    start = time.perf_counter()
    for n in names:
        sub = Report(n, report.config)
        _SUITES[n](cfg, sub)
        for c in sub.cases:
            c.id = f"{n}/{c.id}" if name == "all" else c.id
        report.extend(sub)
    report.seconds = time.perf_counter() - start
    return report
