"""Catalog registry, verification suites, and report emission.

The command line surface of the package: ``hopfkit catalog list`` prints
the registry of built-in algebras, ``hopfkit verify <entry> --suite <s>``
runs one of the named check suites against an entry, and the remaining
subcommands (``coinv``, ``beta``, ``grading``, ``h2``, ``taft``,
``generic ...``) are shortcuts for the most common suites and for objects
parameterized beyond the fixed registry.

Representation invariants:

* ``Check.status`` is one of ``"pass"``, ``"fail"``, ``"skipped"``.
* Reports serialize with a fixed key order, and all wall-clock data lives
  under the single ``"timing"`` key, so two runs with the same entry,
  suite, and seed agree byte for byte everywhere outside that key.
* Witness strings use the relation grammar of :mod:`hopfkit.ncalg`, so a
  witness over a presented carrier can be parsed back with ``parse_nc``.
* Catalog entries are immutable.  User entries loaded from presentation
  files (directory named by the ``HOPFKIT_CATALOG_DIR`` environment
  variable) are validated at load time and may not shadow built-in names.
* The process exit code is 0 exactly when every non-skipped check of the
  emitted report passed; 2 signals a usage error (unknown entry, unknown
  suite, malformed flags or presentation file).
"""

from __future__ import annotations

import argparse
import json
import os
import platform
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Mapping, Optional, Sequence

from . import __version__
from .scalar import Ring, Scalar, ring_make
from .ncalg import FreeAlgebra, NcPoly, PresentedAlgebra
from .hopf import CheckFailure, HopfAlgebra, TensorElem
from .findim import FiniteGroup, StructHopf, dual_hopf, group_algebra
from .comod import (Coaction, GradedAlgebra, ModuleExtension, StructCoaction,
                    check_comodule, coaction_to_grading, coinvariants,
                    galois_beta, galois_beta_module, grading_to_coaction,
                    materialize, projector_check, strong_grading_check,
                    trivial_extension_check)
from .galoisobj import (h2_finite_abelian, is_coboundary, is_cocycle,
                        taft_galois_object)
from .generic import (CrossedProduct, crossed_check, crossed_report,
                      is_degree_zero, small_uq_crossed,
                      small_uq_relation_report, small_uq_specialization_report,
                      t_inverse_check, taft_crossed, uq_relation_report)
from . import catalog as cat

REPORT_SCHEMA = "hopfkit-report/1"
CATALOG_SCHEMA = "hopfkit-catalog/1"
CATALOG_DIR_VAR = "HOPFKIT_CATALOG_DIR"


class CliError(Exception):
    """A usage error: unknown entry or suite, malformed flags or files."""


def toolchain_stamp() -> str:
    return f"hopfkit {__version__} / python {platform.python_version()}"


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Check:
    """One verified identity: a name, a status, and an optional witness."""

    name: str
    status: str
    witness: Optional[str] = None
    degree_bound: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "witness": self.witness,
            "degree_bound": self.degree_bound,
        }


@dataclass(frozen=True)
class Report:
    """The outcome of one suite run against one target."""

    suite: str
    target: str
    checks: tuple[Check, ...]
    timing: float
    toolchain: str

    @property
    def passed(self) -> int:
        return sum(1 for c in self.checks if c.status == "pass")

    @property
    def failed(self) -> int:
        return sum(1 for c in self.checks if c.status == "fail")

    @property
    def skipped(self) -> int:
        return sum(1 for c in self.checks if c.status == "skipped")

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_dict(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "suite": self.suite,
            "target": self.target,
            "checks": [c.to_dict() for c in self.checks],
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "toolchain": self.toolchain,
            "timing": self.timing,
        }


_STATUS_TAG = {"pass": "PASS", "fail": "FAIL", "skipped": "SKIP"}


def emit_report(report: Report, fmt: str) -> str:
    """Render a report as text or as JSON with a stable key order."""
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2)
    if fmt == "text":
        lines = [f"suite: {report.suite}", f"target: {report.target}"]
        for c in report.checks:
            bound = "" if c.degree_bound is None else f" [degree <= {c.degree_bound}]"
            lines.append(f"{_STATUS_TAG[c.status]} {c.name}{bound}")
            if c.witness is not None:
                lines.append(f"     witness: {c.witness}")
        lines.append(f"result: {report.passed} passed, {report.failed} failed, "
                     f"{report.skipped} skipped in {report.timing:.2f}s")
        lines.append(f"toolchain: {report.toolchain}")
        return "\n".join(lines)
    raise CliError(f"unknown format {fmt!r}; use text or json")


def _from_failures(label: str, failures: Sequence[CheckFailure],
                   degree_bound: Optional[int] = None,
                   limit: int = 8) -> list[Check]:
    """A summary check followed by the distinct failing identities,
    capped at ``limit`` witnesses."""
    status = "pass" if not failures else "fail"
    out = [Check(label, status, degree_bound=degree_bound)]
    seen: set[tuple[str, str]] = set()
    distinct = []
    for f in failures:
        key = (f.check, f.witness)
        if key not in seen:
            seen.add(key)
            distinct.append(f)
    for f in distinct[:limit]:
        out.append(Check(f.check, "fail", witness=f.witness))
    if len(distinct) > limit:
        out.append(Check("further failures suppressed", "fail",
                         witness=f"{len(distinct) - limit} more distinct "
                                 "failing identities"))
    return out


# ---------------------------------------------------------------------------
# Run options
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RunOptions:
    """Flags shared by every suite run."""

    degree: int = 6
    seed: int = 11
    q: str = "formal"

    def ring(self) -> Optional[Ring]:
        """The coefficient ring requested by --q, or None for the entry's
        default (a formal parameter q where the entry has one)."""
        if self.q == "formal":
            return None
        if self.q.startswith("cyclotomic:"):
            tail = self.q.split(":", 1)[1]
            try:
                d = int(tail)
            except ValueError:
                d = 0
            if d < 1:
                raise CliError(f"bad cyclotomic order {tail!r} in --q")
            return ring_make(f"base=cyclotomic:{d}; params=")
        raise CliError(f"unknown --q mode {self.q!r}; use formal or cyclotomic:<d>")


def _opts(args: argparse.Namespace) -> RunOptions:
    return RunOptions(degree=args.degree, seed=args.seed, q=args.q)


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    """One named algebra: how to build it and which suites apply.

    ``build`` receives the ring requested by --q (None for the default)
    and may ignore it when the entry's coefficients are fixed.
    ``struct_form`` optionally converts the built object to the
    structure-constant form some suites need.
    """

    name: str
    kind: str
    parameters: tuple[tuple[str, object], ...]
    suites: tuple[str, ...]
    description: str
    build: Callable[[Optional[Ring]], object]
    struct_form: Optional[Callable[[object], object]] = None


def _taft_object_entry(N: int, s: int) -> CatalogEntry:
    return CatalogEntry(
        name=f"taft-obj-{N}-{s}",
        kind="coaction",
        parameters=(("N", N), ("s", s), ("q", f"cyclotomic:{N}")),
        suites=("comodule", "beta"),
        description=f"twisted dimension-{N * N} comodule algebra over the "
                    f"nilpotent-and-grouplike Hopf algebra, twist {s}",
        build=lambda ring, N=N, s=s: taft_galois_object(N, s),
        struct_form=lambda C, N=N: materialize(
            C, N * N, cat.taft_struct(N), cat.taft_algebra(N).basis()),
    )


def builtin_catalog() -> dict[str, CatalogEntry]:
    """The registry of built-in entries, in presentation order."""
    entries = [
        CatalogEntry(
            name="qplane", kind="coaction",
            parameters=(("q", "formal"),),
            suites=("comodule", "coinvariants"),
            description="quantum plane with its quantum 2x2 matrix coaction",
            build=lambda ring: cat.quantum_plane_coaction()),
        CatalogEntry(
            name="SLq2", kind="presented",
            parameters=(("q", "formal"),),
            suites=("hopf-axioms", "presentation"),
            description="quantized coordinate algebra of 2x2 matrices with "
                        "quantum determinant 1",
            build=cat.sl2q_hopf),
        CatalogEntry(
            name="SL2", kind="presented",
            parameters=(("q", 1),),
            suites=("hopf-axioms", "presentation"),
            description="coordinate algebra of the classical 2x2 special "
                        "linear group",
            build=lambda ring: cat.sl2_classical_hopf()),
        CatalogEntry(
            name="qlaurent", kind="presented",
            parameters=(("q", "formal"),),
            suites=("hopf-axioms", "presentation"),
            description="quantum Laurent plane: X invertible, Y, YX = qXY, "
                        "with its Hopf structure",
            build=cat.quantum_laurent_plane_hopf),
        CatalogEntry(
            name="Uq-sl2", kind="presented",
            parameters=(("q", "formal"),),
            suites=("hopf-axioms", "presentation"),
            description="quantized enveloping algebra of sl(2) with "
                        "generators E, F, K, K^-1",
            build=cat.uq_sl2_hopf),
        CatalogEntry(
            name="taft2", kind="presented",
            parameters=(("N", 2), ("q", "cyclotomic:2")),
            suites=("hopf-axioms", "presentation", "beta"),
            description="dimension-4 Hopf algebra on a grouplike g and a "
                        "g-skew primitive x",
            build=lambda ring: cat.taft_hopf(2),
            struct_form=lambda h: cat.taft_struct(2)),
        CatalogEntry(
            name="taft3", kind="presented",
            parameters=(("N", 3), ("q", "cyclotomic:3")),
            suites=("hopf-axioms", "presentation", "beta"),
            description="dimension-9 Hopf algebra on a grouplike g and a "
                        "g-skew primitive x",
            build=lambda ring: cat.taft_hopf(3),
            struct_form=lambda h: cat.taft_struct(3)),
        CatalogEntry(
            name="u3", kind="presented",
            parameters=(("d", 3), ("q", "cyclotomic:3")),
            suites=("hopf-axioms", "presentation", "beta"),
            description="dimension-27 quotient of the quantized enveloping "
                        "algebra of sl(2) at a third root of unity",
            build=lambda ring: cat.small_uq_hopf(3, ring),
            struct_form=lambda h: cat.small_uq_struct(3)),
        CatalogEntry(
            name="u4", kind="presented",
            parameters=(("d", 4), ("q", "cyclotomic:4")),
            suites=("hopf-axioms", "presentation", "beta"),
            description="dimension-8 quotient of the quantized enveloping "
                        "algebra of sl(2) at a fourth root of unity",
            build=lambda ring: cat.small_uq_hopf(4, ring),
            struct_form=lambda h: cat.small_uq_struct(4)),
        CatalogEntry(
            name="u6", kind="presented",
            parameters=(("d", 6), ("q", "cyclotomic:6")),
            suites=("hopf-axioms", "presentation", "beta"),
            description="dimension-27 quotient of the quantized enveloping "
                        "algebra of sl(2) at a sixth root of unity",
            build=lambda ring: cat.small_uq_hopf(6, ring),
            struct_form=lambda h: cat.small_uq_struct(6)),
    ]
    for spec in ("Z2", "Z6", "S3"):
        entries.append(CatalogEntry(
            name=f"group-{spec}", kind="struct",
            parameters=(("group", spec),),
            suites=("hopf-axioms", "beta"),
            description=f"group algebra of {spec} by structure constants",
            build=lambda ring, spec=spec: _group_hopf(spec)))
        entries.append(CatalogEntry(
            name=f"dual-{spec}", kind="struct",
            parameters=(("group", spec),),
            suites=("hopf-axioms", "beta"),
            description=f"algebra of functions on {spec}: the dual of its "
                        "group algebra",
            build=lambda ring, spec=spec: dual_hopf(_group_hopf(spec))))
    entries += [
        CatalogEntry(
            name="quaternions", kind="graded",
            parameters=(("group", "Z2xZ2"),),
            suites=("grading", "beta"),
            description="quaternion algebra graded by the Klein four-group",
            build=lambda ring: cat.quaternion_graded()),
        CatalogEntry(
            name="matrix2", kind="graded",
            parameters=(("N", 2), ("group", "Z2")),
            suites=("grading",),
            description="2x2 matrices graded by Z2 along diagonals",
            build=lambda ring: cat.matrix_graded(2)),
        CatalogEntry(
            name="matrix3", kind="graded",
            parameters=(("N", 3), ("group", "Z3")),
            suites=("grading",),
            description="3x3 matrices graded by Z3 along wrapped diagonals",
            build=lambda ring: cat.matrix_graded(3)),
        CatalogEntry(
            name="matrix3-diag", kind="extension",
            parameters=(("N", 3), ("group", "Z3")),
            suites=("beta",),
            description="3x3 matrices as a rank-3 module over their "
                        "diagonal subalgebra",
            build=lambda ring: cat.matrix_module_extension(3)),
        CatalogEntry(
            name="laurent-Z3", kind="extension",
            parameters=(("n", 3), ("group", "Z3")),
            suites=("beta",),
            description="Laurent polynomials as a rank-3 module over the "
                        "subalgebra generated by x^3 and x^-3",
            build=lambda ring: cat.laurent_module_extension(3)),
        _taft_object_entry(2, 1),
        _taft_object_entry(3, 1),
        CatalogEntry(
            name="generic-sweedler", kind="extension",
            parameters=(("N", 2),),
            suites=("crossed", "fibers"),
            description="universal cocycle deformation of the dimension-4 "
                        "Hopf algebra",
            build=lambda ring: taft_crossed(2)),
        CatalogEntry(
            name="generic-taft3", kind="extension",
            parameters=(("N", 3),),
            suites=("crossed", "fibers"),
            description="universal cocycle deformation of the dimension-9 "
                        "Hopf algebra",
            build=lambda ring: taft_crossed(3)),
        CatalogEntry(
            name="generic-u4", kind="extension",
            parameters=(("d", 4),),
            suites=("crossed", "fibers"),
            description="universal cocycle deformation of the dimension-8 "
                        "root-of-unity quotient",
            build=lambda ring: small_uq_crossed(4)),
        CatalogEntry(
            name="generic-u3", kind="extension",
            parameters=(("d", 3),),
            suites=("crossed", "fibers"),
            description="universal cocycle deformation of the dimension-27 "
                        "root-of-unity quotient",
            build=lambda ring: small_uq_crossed(3)),
    ]
    return {e.name: e for e in entries}


def _group_hopf(spec: str) -> StructHopf:
    return group_algebra(parse_group(spec), ring_make("base=rationals; params="))


def parse_group(spec: str) -> FiniteGroup:
    """Parse a group spec: Z<n> and S<n> factors joined by x,
    for example Z2, Z2xZ4, or S3."""
    cyclic_orders: list[int] = []
    symmetric: list[FiniteGroup] = []
    for part in spec.split("x"):
        part = part.strip()
        head, tail = part[:1].upper(), part[1:]
        if head == "Z" and tail.isdigit() and int(tail) >= 1:
            cyclic_orders.append(int(tail))
        elif head == "S" and tail.isdigit() and 1 <= int(tail) <= 4:
            symmetric.append(FiniteGroup.symmetric(int(tail)))
        else:
            raise CliError(f"bad group factor {part!r} in {spec!r}; "
                           "use Z<n> or S<n> joined by x")
    if symmetric and cyclic_orders:
        raise CliError(f"mixed cyclic and symmetric factors in {spec!r} "
                       "are not supported")
    if symmetric:
        if len(symmetric) > 1:
            raise CliError(f"at most one symmetric factor in {spec!r}")
        return symmetric[0]
    if not cyclic_orders:
        raise CliError(f"empty group spec {spec!r}")
    if len(cyclic_orders) == 1:
        return FiniteGroup.cyclic(cyclic_orders[0])
    return FiniteGroup.product(cyclic_orders)


def parse_cyclic_orders(spec: str) -> tuple[int, ...]:
    """Parse a product-of-cyclic-groups spec like Z2xZ4 into (2, 4)."""
    orders = []
    for part in spec.split("x"):
        part = part.strip()
        head, tail = part[:1].upper(), part[1:]
        if head == "Z" and tail.isdigit() and int(tail) >= 1:
            orders.append(int(tail))
        else:
            raise CliError(f"bad cyclic factor {part!r} in {spec!r}; "
                           "second cohomology needs a product of Z<n> factors")
    return tuple(orders)


# ---------------------------------------------------------------------------
# Presentation files
# ---------------------------------------------------------------------------

def _monic_word(free: FreeAlgebra, poly: NcPoly, where: str) -> tuple[int, ...]:
    terms = list(poly.terms.items())
    if len(terms) != 1 or not terms[0][1].is_one():
        raise CliError(f"{where}: relation left side must be a single "
                       "coefficient-1 word")
    return terms[0][0]


def _build_presented(data: Mapping, where: str):
    ring = ring_make(data.get("ring", "base=q; params="))
    names: list[str] = []
    weights: list[int] = []
    for g in data.get("generators", []):
        if isinstance(g, str):
            names.append(g)
            weights.append(1)
        else:
            names.append(g["name"])
            weights.append(int(g.get("weight", 1)))
    if not names:
        raise CliError(f"{where}: no generators")
    free = FreeAlgebra(ring, names, weights=weights)
    rules = []
    for rel in data.get("relations", []):
        lhs = _monic_word(free, free.parse(rel["lhs"]), where)
        rules.append((lhs, free.parse(rel["rhs"])))
    alg = PresentedAlgebra(free, rules, name=data["name"])
    if "coproduct" not in data:
        return alg
    coproduct = {g: [(pair[0], pair[1]) for pair in pairs]
                 for g, pairs in data["coproduct"].items()}
    counit = data.get("counit", {})
    antipode = data.get("antipode", {})
    missing = [g for g in names
               if g not in coproduct or g not in counit or g not in antipode]
    if missing:
        raise CliError(f"{where}: coalgebra data missing for generators "
                       f"{', '.join(missing)}")
    return HopfAlgebra(alg, coproduct, counit, antipode, name=data["name"])


def _build_coaction(data: Mapping, where: str,
                    builtin: Mapping[str, CatalogEntry]) -> Coaction:
    target_name = data.get("target")
    target_entry = builtin.get(target_name or "")
    if target_entry is None:
        raise CliError(f"{where}: unknown coaction target {target_name!r}")
    target = target_entry.build(None)
    if not isinstance(target, HopfAlgebra):
        raise CliError(f"{where}: coaction target {target_name!r} is not a "
                       "presented Hopf algebra")
    carrier_data = dict(data.get("carrier", {}))
    carrier_data.setdefault("name", data["name"])
    carrier_data.setdefault("ring", target.ring.spec.serialize())
    carrier = _build_presented(carrier_data, where)
    if isinstance(carrier, HopfAlgebra):
        carrier = carrier.algebra
    legs = (carrier, target.algebra)
    delta_gens = {}
    for g, pairs in data.get("coaction", {}).items():
        acc = TensorElem.zero(legs)
        for a_text, h_text in pairs:
            acc = acc + TensorElem.of(legs, carrier.free.parse(a_text),
                                      target.algebra.free.parse(h_text))
        delta_gens[g] = acc
    try:
        return Coaction(carrier, target, delta_gens, name=data["name"])
    except ValueError as exc:
        raise CliError(f"{where}: {exc}") from exc


def load_presentation(path: Path,
                      builtin: Mapping[str, CatalogEntry]) -> CatalogEntry:
    """Load one user catalog entry from a JSON presentation file."""
    where = path.name
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"{where}: {exc}") from exc
    if not isinstance(data, dict) or not isinstance(data.get("name"), str) \
            or not data["name"]:
        raise CliError(f"{where}: entry needs a nonempty string name")
    kind = data.get("kind", "presented")
    try:
        if kind == "presented":
            obj = _build_presented(data, where)
            if isinstance(obj, HopfAlgebra):
                suites: tuple[str, ...] = ("hopf-axioms", "presentation")
            else:
                suites = ("presentation",)
        elif kind == "coaction":
            obj = _build_coaction(data, where, builtin)
            suites = ("comodule", "coinvariants")
        else:
            raise CliError(f"{where}: unsupported kind {kind!r}; "
                           "presentation files support presented or coaction")
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError(f"{where}: malformed presentation: {exc}") from exc
    return CatalogEntry(
        name=data["name"], kind=kind,
        parameters=(("file", path.name),),
        suites=suites,
        description=data.get("description", f"loaded from {path.name}"),
        build=lambda ring, obj=obj: obj)


def user_catalog(builtin: Mapping[str, CatalogEntry]) -> dict[str, CatalogEntry]:
    root = os.environ.get(CATALOG_DIR_VAR)
    if not root:
        return {}
    base = Path(root)
    if not base.is_dir():
        raise CliError(f"{CATALOG_DIR_VAR}={root} is not a directory")
    out: dict[str, CatalogEntry] = {}
    for path in sorted(base.glob("*.json")):
        entry = load_presentation(path, builtin)
        if entry.name in builtin:
            raise CliError(f"{path.name}: entry name {entry.name!r} shadows "
                           "a built-in entry")
        if entry.name in out:
            raise CliError(f"{path.name}: duplicate entry name {entry.name!r}")
        out[entry.name] = entry
    return out


def full_catalog() -> dict[str, CatalogEntry]:
    entries = builtin_catalog()
    entries.update(user_catalog(entries))
    return entries


def _lookup(name: str) -> CatalogEntry:
    entries = full_catalog()
    entry = entries.get(name)
    if entry is None:
        raise CliError(f"unknown catalog entry {name!r}; "
                       "run `hopfkit catalog list`")
    return entry


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def _vec_str(labels: Sequence[str], vec: Sequence[Scalar]) -> str:
    parts = []
    for i, c in enumerate(vec):
        if c.is_zero():
            continue
        if c.is_one():
            parts.append(labels[i])
        else:
            parts.append(f"({c})*{labels[i]}")
    return " + ".join(parts) if parts else "0"


def suite_hopf_axioms(entry: CatalogEntry, obj: object,
                      opts: RunOptions) -> list[Check]:
    if isinstance(obj, HopfAlgebra):
        failures = obj.check_axioms(seed=opts.seed)
    elif isinstance(obj, StructHopf):
        failures = obj.check_axioms()
    else:
        raise CliError(f"entry {entry.name!r} is not a Hopf algebra")
    return _from_failures("hopf axioms", failures)


def suite_presentation(entry: CatalogEntry, obj: object,
                       opts: RunOptions) -> list[Check]:
    alg = obj.algebra if isinstance(obj, HopfAlgebra) else obj
    if not isinstance(alg, PresentedAlgebra):
        raise CliError(f"entry {entry.name!r} has no presentation")
    ok = alg.is_confluent()
    return [Check("rewriting system is confluent",
                  "pass" if ok else "fail")]


def suite_comodule(entry: CatalogEntry, obj: object,
                   opts: RunOptions) -> list[Check]:
    if not isinstance(obj, (Coaction, StructCoaction)):
        raise CliError(f"entry {entry.name!r} is not a coaction")
    failures = check_comodule(obj, seed=opts.seed)
    return _from_failures("comodule laws", failures)


def suite_coinvariants(entry: CatalogEntry, obj: object,
                       opts: RunOptions) -> list[Check]:
    if isinstance(obj, Coaction):
        basis = coinvariants(obj, degree=opts.degree)
        body = ", ".join(str(p) for p in basis)
        return [Check("coinvariant basis", "pass",
                      witness="{" + body + "}", degree_bound=opts.degree)]
    if isinstance(obj, StructCoaction):
        vecs = coinvariants(obj)
        labels = obj.carrier.labels
        body = ", ".join(_vec_str(labels, v) for v in vecs)
        return [Check("coinvariant basis", "pass", witness="{" + body + "}")]
    raise CliError(f"entry {entry.name!r} is not a coaction")


def suite_beta(entry: CatalogEntry, obj: object,
               opts: RunOptions) -> list[Check]:
    if entry.struct_form is not None:
        obj = entry.struct_form(obj)
    if isinstance(obj, GradedAlgebra):
        obj = grading_to_coaction(obj)
    if isinstance(obj, StructHopf):
        failures = trivial_extension_check(obj)
        return _from_failures(
            "trivial extension beta has a two-sided inverse", failures)
    if isinstance(obj, StructCoaction):
        rep = galois_beta(obj)
        witness = None
        if not rep.bijective:
            witness = rep.structural_failure or (
                f"rank {rep.rank} of {rep.rows}")
        return [Check("beta is bijective",
                      "pass" if rep.bijective else "fail", witness=witness)]
    if isinstance(obj, ModuleExtension):
        rep = galois_beta_module(obj)
        witness = rep.structural_failure or f"det = {rep.det}"
        return [Check("beta is bijective over the coinvariant base",
                      "pass" if rep.bijective else "fail", witness=witness)]
    raise CliError(f"entry {entry.name!r} has no Galois map")


def suite_grading(entry: CatalogEntry, obj: object,
                  opts: RunOptions) -> list[Check]:
    if not isinstance(obj, GradedAlgebra):
        raise CliError(f"entry {entry.name!r} is not graded")
    checks = []
    ok, witness = strong_grading_check(obj)
    checks.append(Check("grading is strong", "pass" if ok else "fail",
                        witness=None if ok else witness))
    C = grading_to_coaction(obj)
    back = coaction_to_grading(C)
    same = (back.degree == obj.degree
            and back.group.labels == obj.group.labels)
    checks.append(Check("degree data survives the coaction round trip",
                        "pass" if same else "fail",
                        witness=None if same else
                        f"degrees {obj.degree} came back as {back.degree}"))
    checks.extend(_from_failures("component projector identities",
                                 projector_check(C)))
    return checks


def _cocycle_degree_checks(cp: CrossedProduct) -> list[Check]:
    for i, row in enumerate(cp.cocycle):
        for j, value in enumerate(row):
            if not is_degree_zero(cp, value):
                return [Check("cocycle values are coinvariant", "fail",
                              witness=f"sigma({i},{j}) = {value}")]
    return [Check("cocycle values are coinvariant", "pass")]


def suite_crossed(entry: CatalogEntry, obj: object,
                  opts: RunOptions) -> list[Check]:
    if not isinstance(obj, CrossedProduct):
        raise CliError(f"entry {entry.name!r} is not a crossed product")
    checks = _from_failures(
        "symbol inverses satisfy both convolution identities",
        t_inverse_check(obj.hopf, obj.ring, obj.symbols, obj.inverse_symbols))
    checks.extend(_cocycle_degree_checks(obj))
    checks.extend(_from_failures("crossed product laws", crossed_check(obj)))
    return checks


def suite_fibers(entry: CatalogEntry, obj: object,
                 opts: RunOptions) -> list[Check]:
    if not isinstance(obj, CrossedProduct):
        raise CliError(f"entry {entry.name!r} is not a crossed product")
    seeds = (opts.seed, opts.seed + 1, opts.seed + 2)
    rep = crossed_report(obj, seeds=seeds)
    checks = _from_failures("product table laws", rep.table_failures)
    checks.append(Check("counit fiber reproduces the structure constants",
                        "pass" if rep.counit_fiber_matches else "fail"))
    for fiber in rep.fibers:
        ok = not fiber.coaction_failures
        witness = None if ok else str(fiber.coaction_failures[0])
        checks.append(Check(f"fiber {fiber.label}: comodule algebra laws",
                            "pass" if ok else "fail", witness=witness))
        beta_ok = fiber.beta.bijective
        witness = None
        if not beta_ok:
            witness = fiber.beta.structural_failure or (
                f"rank {fiber.beta.rank} of {fiber.beta.rows}")
        checks.append(Check(f"fiber {fiber.label}: beta bijective",
                            "pass" if beta_ok else "fail", witness=witness))
    return checks


SUITES: dict[str, Callable[[CatalogEntry, object, RunOptions], list[Check]]] = {
    "hopf-axioms": suite_hopf_axioms,
    "presentation": suite_presentation,
    "comodule": suite_comodule,
    "coinvariants": suite_coinvariants,
    "beta": suite_beta,
    "grading": suite_grading,
    "crossed": suite_crossed,
    "fibers": suite_fibers,
}


def run_suite(entry: CatalogEntry, suite: str, opts: RunOptions) -> Report:
    """Build the entry and run one named suite against it."""
    runner = SUITES.get(suite)
    if runner is None:
        raise CliError(f"unknown suite {suite!r}; "
                       f"known: {', '.join(sorted(SUITES))}")
    if suite not in entry.suites:
        raise CliError(f"entry {entry.name!r} does not support suite "
                       f"{suite!r}; it supports: {', '.join(entry.suites)}")
    start = time.perf_counter()
    obj = entry.build(opts.ring())
    checks = runner(entry, obj, opts)
    elapsed = time.perf_counter() - start
    return Report(suite=suite, target=entry.name, checks=tuple(checks),
                  timing=elapsed, toolchain=toolchain_stamp())


def _report(suite: str, target: str, checks: Sequence[Check],
            elapsed: float) -> Report:
    return Report(suite=suite, target=target, checks=tuple(checks),
                  timing=elapsed, toolchain=toolchain_stamp())


def _finish(report: Report, fmt: str) -> int:
    print(emit_report(report, fmt))
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_catalog_list(args: argparse.Namespace) -> int:
    entries = full_catalog()
    if args.format == "json":
        payload = {
            "schema": CATALOG_SCHEMA,
            "entries": [{
                "name": e.name,
                "kind": e.kind,
                "parameters": dict(e.parameters),
                "suites": list(e.suites),
                "description": e.description,
            } for e in entries.values()],
        }
        print(json.dumps(payload, indent=2))
        return 0
    name_w = max(len(e.name) for e in entries.values())
    kind_w = max(len(e.kind) for e in entries.values())
    for e in entries.values():
        suites = ", ".join(e.suites)
        print(f"{e.name:<{name_w}}  {e.kind:<{kind_w}}  [{suites}]")
        print(f"{'':<{name_w}}  {'':<{kind_w}}  {e.description}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    entry = _lookup(args.entry)
    suite = args.suite or entry.suites[0]
    report = run_suite(entry, suite, _opts(args))
    return _finish(report, args.format)


def cmd_fixed_suite(args: argparse.Namespace) -> int:
    entry = _lookup(args.entry)
    report = run_suite(entry, args.suite, _opts(args))
    return _finish(report, args.format)


def cmd_h2(args: argparse.Namespace) -> int:
    orders = parse_cyclic_orders(args.groupspec)
    start = time.perf_counter()
    try:
        rep = h2_finite_abelian(orders)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    G = parse_group(args.groupspec)
    checks = []
    if rep.invariants:
        body = " x ".join(f"Z{m}" for m in rep.factor_orders)
    else:
        body = "trivial"
    checks.append(Check("second cohomology invariant factors", "pass",
                        witness=body))
    for (i, j), m in rep.invariants:
        table = rep.representatives[(i, j)]
        if G.order <= 16:
            witness = "; ".join(
                " ".join(str(c) for c in row) for row in table)
        else:
            witness = f"zeta_{m}^(a_{i} * b_{j}) on coordinate pairs"
        checks.append(Check(f"representative ({i},{j}) is a cocycle",
                            "pass" if is_cocycle(G, table) else "fail",
                            witness=witness))
        checks.append(Check(
            f"representative ({i},{j}) is not a coboundary",
            "pass" if is_coboundary(G, table) is None else "fail"))
    elapsed = time.perf_counter() - start
    report = _report("second-cohomology", args.groupspec, checks, elapsed)
    return _finish(report, args.format)


def cmd_taft(args: argparse.Namespace) -> int:
    opts = _opts(args)
    N, s = args.N, args.s
    if N < 2:
        raise CliError("--N must be at least 2")
    start = time.perf_counter()
    C = taft_galois_object(N, s)
    checks = _from_failures("comodule laws",
                            check_comodule(C, seed=opts.seed))
    M = materialize(C, N * N, cat.taft_struct(N), cat.taft_algebra(N).basis())
    rep = galois_beta(M)
    witness = None
    if not rep.bijective:
        witness = rep.structural_failure or f"rank {rep.rank} of {rep.rows}"
    checks.append(Check("beta is bijective",
                        "pass" if rep.bijective else "fail", witness=witness))
    elapsed = time.perf_counter() - start
    report = _report("taft-object", f"taft-obj-{N}-{s}", checks, elapsed)
    return _finish(report, args.format)


_CROSSED_BUILDERS: dict[str, Callable[[], CrossedProduct]] = {
    "sweedler": lambda: taft_crossed(2),
    "taft2": lambda: taft_crossed(2),
    "taft3": lambda: taft_crossed(3),
    "u3": lambda: small_uq_crossed(3),
    "u4": lambda: small_uq_crossed(4),
    "u6": lambda: small_uq_crossed(6),
}


def _crossed(name: str) -> CrossedProduct:
    builder = _CROSSED_BUILDERS.get(name)
    if builder is None:
        raise CliError(f"unknown algebra {name!r}; "
                       f"known: {', '.join(sorted(_CROSSED_BUILDERS))}")
    return builder()


def cmd_generic_sigma(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    cp = _crossed(args.algebra)
    checks = _from_failures(
        "symbol inverses satisfy both convolution identities",
        t_inverse_check(cp.hopf, cp.ring, cp.symbols, cp.inverse_symbols))
    checks.extend(_cocycle_degree_checks(cp))
    elapsed = time.perf_counter() - start
    report = _report("generic-sigma", args.algebra, checks, elapsed)
    return _finish(report, args.format)


def cmd_generic_assoc(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    cp = _crossed(args.algebra)
    checks = _from_failures("crossed product laws", crossed_check(cp))
    elapsed = time.perf_counter() - start
    report = _report("generic-assoc", args.algebra, checks, elapsed)
    return _finish(report, args.format)


def _relation_checks(rep) -> list[Check]:
    return [Check(c.label, "pass" if c.holds else "fail",
                  witness=None if c.holds else c.residual)
            for c in rep.checks]


def cmd_generic_thm812(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    rep = uq_relation_report()
    checks = _relation_checks(rep)
    elapsed = time.perf_counter() - start
    report = _report("generic-relations", rep.name, checks, elapsed)
    return _finish(report, args.format)


def cmd_generic_thm813(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    try:
        rep = small_uq_relation_report(args.d)
        spec_rep = small_uq_specialization_report(args.d)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    checks = _relation_checks(rep)
    for label, match in spec_rep.matches:
        checks.append(Check(f"specialization recovers: {label}",
                            "pass" if match is not None else "fail"))
    uncovered_ok = not spec_rep.uncovered
    checks.append(Check("every defining relation is recovered",
                        "pass" if uncovered_ok else "fail",
                        witness=None if uncovered_ok else
                        f"unmatched rule indices {list(spec_rep.uncovered)}"))
    elapsed = time.perf_counter() - start
    report = _report("generic-relations", rep.name, checks, elapsed)
    return _finish(report, args.format)


def cmd_generic_fiber(args: argparse.Namespace) -> int:
    opts = _opts(args)
    start = time.perf_counter()
    cp = _crossed(args.algebra)
    entry = CatalogEntry(name=args.algebra, kind="extension", parameters=(),
                         suites=("fibers",), description="",
                         build=lambda ring: cp)
    checks = suite_fibers(entry, cp, opts)
    elapsed = time.perf_counter() - start
    report = _report("generic-fibers", args.algebra, checks, elapsed)
    return _finish(report, args.format)


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--degree", type=int, default=6,
                   help="truncation degree for graded computations "
                        "(default 6)")
    p.add_argument("--seed", type=int, default=11,
                   help="seed for spot checks and fiber sampling "
                        "(default 11)")
    p.add_argument("--q", default="formal",
                   help="coefficient mode: formal or cyclotomic:<d> "
                        "(default formal)")
    p.add_argument("--format", choices=("text", "json"), default="text",
                   help="report format (default text)")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hopfkit",
        description="Exact verification of Hopf algebra axioms, comodule "
                    "algebra laws, and Galois maps for a catalog of "
                    "quantized and finite-dimensional algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    cat_p = sub.add_parser("catalog", help="inspect the entry registry")
    cat_sub = cat_p.add_subparsers(dest="action", required=True)
    list_p = cat_sub.add_parser("list", help="print every catalog entry")
    list_p.add_argument("--format", choices=("text", "json"), default="text")
    list_p.set_defaults(func=cmd_catalog_list)

    verify_p = sub.add_parser(
        "verify", help="run a named check suite against a catalog entry")
    verify_p.add_argument("entry", help="catalog entry name")
    verify_p.add_argument("--suite", default=None,
                          help="suite name (default: the entry's first suite)")
    _common_flags(verify_p)
    verify_p.set_defaults(func=cmd_verify)

    for cmd, suite, help_text in (
            ("coinv", "coinvariants",
             "compute the coinvariant basis of a coaction entry"),
            ("beta", "beta",
             "decide bijectivity of the Galois map of an entry"),
            ("grading", "grading",
             "check grading, round trip, and projectors of a graded entry")):
        sp = sub.add_parser(cmd, help=help_text)
        sp.add_argument("entry", help="catalog entry name")
        _common_flags(sp)
        sp.set_defaults(func=cmd_fixed_suite, suite=suite)

    h2_p = sub.add_parser(
        "h2", help="second cohomology of a finite abelian group with "
                   "unit coefficients")
    h2_p.add_argument("groupspec", help="product of cyclic factors, "
                                        "for example Z2xZ4")
    _common_flags(h2_p)
    h2_p.set_defaults(func=cmd_h2)

    taft_p = sub.add_parser(
        "taft", help="verify one twisted comodule algebra over the "
                     "nilpotent-and-grouplike Hopf algebra")
    taft_p.add_argument("--N", type=int, required=True,
                        help="root-of-unity order (dimension N^2)")
    taft_p.add_argument("--s", type=int, required=True,
                        help="twist exponent")
    _common_flags(taft_p)
    taft_p.set_defaults(func=cmd_taft)

    gen_p = sub.add_parser(
        "generic", help="checks for the universal cocycle deformations")
    gen_sub = gen_p.add_subparsers(dest="action", required=True)

    sigma_p = gen_sub.add_parser(
        "sigma", help="verify the universal cocycle: convolution inverse "
                      "identities and coinvariance")
    sigma_p.add_argument("algebra", help="sweedler, taft2, taft3, u3, u4, u6")
    _common_flags(sigma_p)
    sigma_p.set_defaults(func=cmd_generic_sigma)

    assoc_p = gen_sub.add_parser(
        "assoc", help="verify unit, associativity, comodule law, and "
                      "base centrality of a deformation")
    assoc_p.add_argument("algebra", help="sweedler, taft2, taft3, u3, u4, u6")
    _common_flags(assoc_p)
    assoc_p.set_defaults(func=cmd_generic_assoc)

    t812_p = gen_sub.add_parser(
        "thm812", help="verify the deformed commutation relations among "
                       "the X variables for the quantized enveloping "
                       "algebra of sl(2)")
    _common_flags(t812_p)
    t812_p.set_defaults(func=cmd_generic_thm812)

    t813_p = gen_sub.add_parser(
        "thm813", help="verify the power relations among the X variables "
                       "for a root-of-unity quotient, and that "
                       "specialization recovers its defining relations")
    t813_p.add_argument("--d", type=int, required=True,
                        help="root-of-unity order (3, 4, or 6)")
    _common_flags(t813_p)
    t813_p.set_defaults(func=cmd_generic_thm813)

    fiber_p = gen_sub.add_parser(
        "fiber", help="evaluate a deformation at the counit character and "
                      "at seeded random characters, checking each fiber")
    fiber_p.add_argument("algebra", help="sweedler, taft2, taft3, u3, u4, u6")
    _common_flags(fiber_p)
    fiber_p.set_defaults(func=cmd_generic_fiber)

    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
