"""End-to-end pipelines: worked-example replication, instance verification, sweeps.

Every report here is plain JSON-ready data. Nothing depends on wall-clock
time or iteration order of unordered containers, so identical inputs and
seeds give byte-identical output.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Any, Sequence

from . import linalg
from .action import GAction, check_equivariant, lift_functional
from .errors import GorinvError, GroupError, SpecError
from .field import FieldSpec
from .gradedalg import (
    InvariantQuotient,
    gorenstein_verdict,
    gorenstein_verdict_invariant,
    quotient,
)
from .groups import (
    Character,
    GMatrix,
    MatrixGroup,
    close,
    default_cap,
    enumerate_characters,
    has_nontrivial_onedim_rep,
)
from .invsys import build_inverse_system, check_g_invariance
from .poly import Functional, HPoly, parse_monomial_key

# Integer generator matrices, realized over whichever field a cell asks for.
ZOO: dict[str, list[list[list[int]]]] = {
    "neg-identity": [[[-1, 0], [0, -1]]],
    "cyclic3": [[[0, -1], [1, -1]]],
    "a3-perm": [[[0, 0, 1], [1, 0, 0], [0, 1, 0]]],
    "s3-perm": [[[0, 1, 0], [1, 0, 0], [0, 0, 1]], [[0, 0, 1], [1, 0, 0], [0, 1, 0]]],
    # companion matrix of x^4 + x^3 + x^2 + x + 1
    "cyclic5": [[[0, 0, 0, -1], [1, 0, 0, -1], [0, 1, 0, -1], [0, 0, 1, -1]]],
}

ZOO_CELLS = [
    ("neg-identity", "Q"),
    ("cyclic3", "Q"),
    ("cyclic3", {"Fp": 5}),
    ("cyclic3", {"Fp": 7}),
    ("s3-perm", "Q"),
    ("a3-perm", "Q"),
    ("cyclic5", "Q"),
]

SKIP_INVARIANTS = "invariants_vanish_in_degree_m"
SKIP_SEMI_INVARIANTS = "semi_invariants_vanish_in_degree_m"
SKIP_NO_CHARACTER = "no_nontrivial_character"


class CounterexampleError(GorinvError):
    kind = "counterexample"


def cell_label(group: str, field: FieldSpec) -> str:
    return f"{group}/{field.name}"


@lru_cache(maxsize=None)
def _closed_group(field: FieldSpec, generators: tuple, cap: int | None) -> tuple[MatrixGroup, GAction]:
    G = close([GMatrix.make(field, [list(r) for r in g]) for g in generators], cap)
    return G, GAction(G)


def group_and_action(field: FieldSpec, generators: Sequence, cap: int | None = None
                     ) -> tuple[MatrixGroup, GAction]:
    """Close the generators once; the action (and its caches) is shared per group."""
    key = tuple(tuple(tuple(field(x) for x in row) for row in g) for g in generators)
    return _closed_group(field, key, default_cap() if cap is None else cap)


def zoo_group(name: str, field: FieldSpec | Any = "Q", cap: int | None = None) -> MatrixGroup:
    if name not in ZOO:
        raise GroupError(f"unknown zoo group {name!r}; known: {sorted(ZOO)}")
    if not isinstance(field, FieldSpec):
        field = FieldSpec.from_json(field)
    return group_and_action(field, ZOO[name], cap)[0]


@dataclass(frozen=True)
class InstanceSpec:
    """One verification instance.

    ``values`` fixes the functional explicitly; otherwise η is drawn on the
    echelon basis of A^G_m (or of the χ-semi-invariants) from the random
    stream determined by ``(seed, label, index)``. ``character`` is ``None``
    (trivial), a list of generator values, or ``"random"`` for a random
    non-trivial character.
    """

    field: FieldSpec
    generators: tuple
    degree: int
    values: dict | None = None
    character: Any = None
    seed: int = 0
    index: int = 0
    label: str = "custom"
    cap: int | None = None

    @classmethod
    def from_json(cls, obj: dict, cap: int | None = None) -> InstanceSpec:
        if not isinstance(obj, dict):
            raise SpecError("instance spec must be a JSON object")
        group = obj.get("group")
        label = obj.get("label", "custom")
        if isinstance(group, str):
            if group not in ZOO:
                raise SpecError(f"unknown zoo group {group!r}")
            field = FieldSpec.from_json(obj.get("field", "Q"))
            gens = ZOO[group]
            label = obj.get("label", cell_label(group, field))
        elif isinstance(group, dict) and "generators" in group:
            field = FieldSpec.from_json(group.get("field", obj.get("field", "Q")))
            gens = group["generators"]
        else:
            raise SpecError("instance spec needs a 'group' (zoo name or generator object)")
        functional = obj.get("functional") or {}
        degree = obj.get("degree", functional.get("degree"))
        if not isinstance(degree, int) or isinstance(degree, bool):
            raise SpecError("instance spec needs an integer 'degree'")
        values = functional.get("values")
        character = obj.get("character", functional.get("character"))
        if isinstance(character, dict):
            character = character.get("generator_values")
        seed = obj.get("seed", 0)
        if not isinstance(seed, int) or seed < 0:
            raise SpecError("seed must be a non-negative integer")
        return cls(field, _freeze(gens), degree, values, character, seed,
                   obj.get("index", 0), label, cap)

    def rng(self) -> random.Random:
        return random.Random(f"{self.seed}:{self.label}:{self.index}")


def _freeze(gens) -> tuple:
    if not isinstance(gens, list) or not gens:
        raise SpecError("'generators' must be a non-empty list of matrices")
    try:
        return tuple(tuple(tuple(row) for row in g) for g in gens)
    except TypeError:
        raise SpecError("every generator must be an array of rows") from None


@dataclass
class VerdictReport:
    label: str
    field: str
    group_order: int
    degree: int
    hypothesis_holds: bool
    witness_prime: int | None
    r: int
    index: int = 0
    character: list[str] | None = None
    functional: dict | None = None
    equivariant: bool | None = None
    ideal_dims: list[int] | None = None
    ideal_g_invariant: bool | None = None
    quotient: dict | None = None
    invariant_quotient: dict | None = None
    a_invariants_equal: bool | None = None
    theorem_satisfied: bool = True
    counterexample: bool = False
    skipped: str | None = None

    def to_json(self) -> dict:
        return dict(self.__dict__)


def random_eta(rng: random.Random, field: FieldSpec, size: int) -> list:
    """Uniform coefficients from {-2..2} (Q) or all of F_p, never all zero."""
    while True:
        if field.is_rational:
            vals = [field(rng.randint(-2, 2)) for _ in range(size)]
        else:
            vals = [field(rng.randrange(field.p)) for _ in range(size)]
        if any(vals):
            return vals


def functional_from_json(obj: dict, field: FieldSpec, n: int,
                         group: MatrixGroup | None = None) -> Functional:
    """Parse ``{"degree": 3, "values": {"[3,0]": "1", ...}, "character": {...}}``."""
    if not isinstance(obj, dict) or "values" not in obj:
        raise SpecError("functional spec needs 'values'")
    values = {parse_monomial_key(k, n): v for k, v in obj["values"].items()}
    if "degree" in obj and any(sum(m) != obj["degree"] for m in values):
        raise SpecError("functional values must be given on monomials of the stated degree")
    character = None
    if obj.get("character") is not None:
        if group is None:
            raise SpecError("a character needs a group")
        character = Character.from_generator_values(group, obj["character"]["generator_values"])
    return Functional.from_values(field, n, values, character)


def _resolve_character(spec: InstanceSpec, G: MatrixGroup, rng: random.Random
                       ) -> Character | None | str:
    if spec.character is None:
        return None
    if spec.character == "random":
        nontrivial = [c for c in enumerate_characters(G) if not c.is_trivial()]
        if not nontrivial:
            return SKIP_NO_CHARACTER
        return rng.choice(nontrivial)
    if isinstance(spec.character, (list, tuple)):
        return Character.from_generator_values(G, spec.character)
    raise SpecError(f"unrecognized character spec {spec.character!r}")


def verify_theorem(spec: InstanceSpec, strict: bool = True) -> VerdictReport:
    """Run the full pipeline on one instance and evaluate the theorem's implication.

    With ``strict`` a counterexample raises :class:`CounterexampleError`.
    """
    G, act = group_and_action(spec.field, spec.generators, spec.cap)
    verdict = has_nontrivial_onedim_rep(G)
    report = VerdictReport(
        label=spec.label, field=spec.field.name, group_order=G.order, degree=spec.degree,
        hypothesis_holds=not verdict.exists, witness_prime=verdict.witness_prime, r=verdict.r,
        index=spec.index,
    )
    rng = spec.rng()
    character = _resolve_character(spec, G, rng)
    if isinstance(character, str):
        report.skipped = character
        return report
    if character is not None:
        report.character = character.to_json()["generator_values"]

    if spec.values is not None:
        n = G.n
        values = {parse_monomial_key(k, n): v for k, v in spec.values.items()}
        phi = Functional.from_values(spec.field, n, values, character)
        if phi.degree != spec.degree:
            raise SpecError("functional degree does not match the instance degree")
    else:
        space = act.eigen_subspace(spec.degree, character)
        if space.dim == 0:
            report.skipped = SKIP_INVARIANTS if character is None or character.is_trivial() \
                else SKIP_SEMI_INVARIANTS
            return report
        phi = lift_functional(act, spec.degree, random_eta(rng, spec.field, space.dim), character)

    report.functional = phi.to_json()["values"]
    report.equivariant = check_equivariant(act, phi)
    ideal = build_inverse_system(phi)
    report.ideal_dims = ideal.dims()
    R = quotient(ideal)
    qv = gorenstein_verdict(R)
    report.quotient = qv.to_json()
    report.ideal_g_invariant = check_g_invariance(ideal, act)
    if report.ideal_g_invariant:
        B = InvariantQuotient(R, act, check=False)
        bv = gorenstein_verdict_invariant(B)
        report.invariant_quotient = bv.to_json()
        report.a_invariants_equal = bv.a_invariant == qv.a_invariant
        conclusion = bv.is_gorenstein and report.a_invariants_equal
    else:
        conclusion = False
    premises = qv.is_gorenstein and report.ideal_g_invariant
    report.counterexample = report.hypothesis_holds and premises and not conclusion
    report.theorem_satisfied = not report.counterexample
    if strict and report.counterexample:
        raise CounterexampleError(f"theorem violated on instance {spec.label}#{spec.index}")
    return report


# Worked examples: k[X, Y] over Q, G = {1, σ} with σ = -I, η(σ) = -1.
EXAMPLES: dict[str, dict] = {
    "ex34": {
        "values": {"[3,0]": "1", "[2,1]": "1", "[1,2]": "0", "[0,3]": "0"},
        "ideal": {1: [], 2: [{"[0,2]": 1}],
                  3: [{"[3,0]": 1, "[2,1]": -1}, {"[1,2]": 1}, {"[0,3]": 1}]},
        "hilbert": [1, 2, 2, 1],
        "gorenstein": True,
        "socle_degree": 3,
        "a_invariant": 3,
        "invariant_dims": [1, 0, 2, 0],
        "invariant_pieces": {2: [{"[2,0]": 1}, {"[1,1]": 1}]},
        "invariant_gorenstein": False,
        "hypothesis_holds": False,
        "notes": ["the degree-3 generator printed as X_3-X^2Y is read as X^3-X^2Y, "
                  "forced by alpha(X^3) = alpha(X^2Y) = 1"],
    },
    "ex35": {
        "values": {"[3,0]": "1", "[2,1]": "0", "[1,2]": "0", "[0,3]": "0"},
        "ideal": {1: [{"[0,1]": 1}], 2: [{"[1,1]": 1}, {"[0,2]": 1}],
                  3: [{"[2,1]": 1}, {"[1,2]": 1}, {"[0,3]": 1}]},
        "hilbert": [1, 1, 1, 1],
        "gorenstein": True,
        "socle_degree": 3,
        "a_invariant": 3,
        "invariant_dims": [1, 0, 1, 0],
        "invariant_pieces": {2: [{"[2,0]": 1}]},
        "invariant_gorenstein": True,
        "invariant_a_invariant": 2,
        "hypothesis_holds": False,
        "notes": [],
    },
}


def _example_setup(example: str, force_trivial_character: bool):
    if example not in EXAMPLES:
        raise SpecError(f"unknown example {example!r}; expected one of {sorted(EXAMPLES)}")
    field = FieldSpec()
    G, act = group_and_action(field, ZOO["neg-identity"])
    eta = Character.from_generator_values(G, [-1])
    data = EXAMPLES[example]
    values = {parse_monomial_key(k, 2): v for k, v in data["values"].items()}
    phi = Functional.from_values(field, 2, values, None if force_trivial_character else eta)
    return field, G, act, phi, data


def _span(field: FieldSpec, d: int, polys: list[dict]) -> linalg.Subspace:
    rows = [list(HPoly.from_terms(field, 2, {parse_monomial_key(k, 2): v for k, v in p.items()}).coeffs)
            for p in polys]
    return linalg.rref(rows, field, d + 1)


def replicate_example(example: str, force_trivial_character: bool = False) -> dict:
    """Run a worked example and diff every computed quantity against its stated value."""
    field, G, act, phi, data = _example_setup(example, force_trivial_character)
    spec = InstanceSpec(field, tuple(tuple(tuple(r) for r in g) for g in ZOO["neg-identity"]), 3,
                        values=data["values"], label=example,
                        character=None if force_trivial_character else [-1])
    report = verify_theorem(spec, strict=False)

    ideal = build_inverse_system(phi)
    R = quotient(ideal)
    B = InvariantQuotient(R, act)
    diffs = []

    def check(name: str, expected, computed):
        diffs.append({"quantity": name, "expected": expected, "computed": computed,
                      "match": expected == computed})

    for d, polys in data["ideal"].items():
        expected = _span(field, d, polys)
        computed = ideal.piece(d)
        check(f"ideal_degree_{d}",
              [HPoly(field, 2, d, row).to_json() for row in expected.basis],
              [HPoly(field, 2, d, row).to_json() for row in computed.basis])
    qv = report.quotient
    check("hilbert", data["hilbert"], qv["hilbert"])
    check("gorenstein", data["gorenstein"], qv["gorenstein"])
    check("socle_degree", data["socle_degree"], qv["socle_degree"])
    check("a_invariant", data["a_invariant"], qv["a_invariant"])
    bv = report.invariant_quotient
    check("invariant_dims", data["invariant_dims"], bv["hilbert"] if bv else None)
    for d, polys in data["invariant_pieces"].items():
        expected = linalg.rref([R.reduce_coords(d, row) for row in _span(field, d, polys).basis],
                               field, R.hilbert[d])
        check(f"invariant_piece_{d}", [list(map(field.format, r)) for r in expected.basis],
              [list(map(field.format, r)) for r in B.pieces[d].basis])
    check("invariant_gorenstein", data["invariant_gorenstein"], bv["gorenstein"] if bv else None)
    if "invariant_a_invariant" in data:
        check("invariant_a_invariant", data["invariant_a_invariant"], bv["a_invariant"] if bv else None)
    check("hypothesis_holds", data["hypothesis_holds"], report.hypothesis_holds)

    out = {
        "example": example,
        "report": report.to_json(),
        "diffs": diffs,
        "match": all(x["match"] for x in diffs),
        "notes": list(data["notes"]),
    }
    if bv and bv["a_invariant"] < qv["a_invariant"]:
        out["a_invariant_gap"] = {"invariant_quotient": bv["a_invariant"], "quotient": qv["a_invariant"]}
    if not report.equivariant:
        out["notes"].append("functional is not equivariant for the chosen character")
    return out


DEFAULT_SWEEP = {
    "cells": [
        {"group": "cyclic3", "field": "Q", "degrees": [2, 3, 4, 5, 6]},
        {"group": "cyclic3", "field": {"Fp": 5}, "degrees": [2, 3, 4, 5, 6]},
        {"group": "a3-perm", "field": "Q", "degrees": [1, 2, 3, 4, 5]},
        {"group": "cyclic5", "field": "Q", "degrees": [2, 3, 4, 5]},
    ],
    "count": 80,
    "seed": 0,
    "twisted": False,
}


@dataclass
class _Cell:
    group: str
    field: FieldSpec
    degrees: list[int]
    generators: tuple = dc_field(default=())
    label: str = ""


def _normalize_config(config: dict) -> tuple[dict, list[_Cell]]:
    if not isinstance(config, dict):
        raise SpecError("sweep config must be a JSON object")
    count = config.get("count", 0)
    seed = config.get("seed", 0)
    if not isinstance(count, int) or count < 0:
        raise SpecError("count must be a non-negative integer")
    if not isinstance(seed, int) or seed < 0:
        raise SpecError("seed must be a non-negative integer")
    twisted = bool(config.get("twisted", False))
    raw_cells = config.get("cells")
    if raw_cells is None:
        degrees = config.get("degrees", [2, 3, 4])
        raw_cells = [{"group": g, "field": f, "degrees": degrees}
                     for g in config.get("groups", []) for f in config.get("fields", ["Q"])]
    cells = []
    for c in raw_cells:
        group = c.get("group")
        field = FieldSpec.from_json(c.get("field", "Q"))
        degrees = c.get("degrees", config.get("degrees", [2, 3, 4]))
        if not degrees or not all(isinstance(m, int) and m >= 1 for m in degrees):
            raise SpecError("degrees must be a non-empty list of integers >= 1")
        if isinstance(group, str):
            if group not in ZOO:
                raise SpecError(f"unknown zoo group {group!r}")
            gens, name = ZOO[group], group
        elif isinstance(group, dict) and "generators" in group:
            gens, name = group["generators"], group.get("name", "custom")
        else:
            raise SpecError("each cell needs a zoo group name or a generator object")
        cells.append(_Cell(name, field, list(degrees), _freeze(gens), cell_label(name, field)))
    normalized = {
        "cells": [{"group": c.group, "field": c.field.to_json(), "degrees": c.degrees} for c in cells],
        "count": count,
        "seed": seed,
        "twisted": twisted,
    }
    return normalized, cells


def sweep(config: dict) -> dict:
    """Run ``count`` random instances in every cell and fold the results in index order."""
    normalized, cells = _normalize_config(config)
    count, seed, twisted = normalized["count"], normalized["seed"], normalized["twisted"]
    instances, skipped, cell_reports = [], [], []
    a_dist: dict[str, dict[str, int]] = {}
    counterexamples = 0
    not_gorenstein = 0
    for cell in cells:
        try:
            G, _ = group_and_action(cell.field, cell.generators)
        except GroupError as exc:
            cell_reports.append({"cell": cell.label, "status": "excluded", "reason": str(exc)})
            continue
        verdict = has_nontrivial_onedim_rep(G)
        cell_reports.append({"cell": cell.label, "status": "ok", "order": G.order,
                             "hypothesis_holds": not verdict.exists})
        dist: dict[str, int] = {}
        for i in range(count):
            spec = InstanceSpec(cell.field, cell.generators, cell.degrees[i % len(cell.degrees)],
                                character="random" if twisted else None, seed=seed, index=i,
                                label=cell.label)
            report = verify_theorem(spec, strict=False)
            if report.skipped:
                skipped.append({"cell": cell.label, "index": i, "degree": spec.degree,
                                "reason": report.skipped})
                continue
            instances.append(report.to_json())
            counterexamples += report.counterexample
            if report.invariant_quotient is None or not report.invariant_quotient["gorenstein"]:
                not_gorenstein += 1
            a = str(report.quotient["a_invariant"])
            dist[a] = dist.get(a, 0) + 1
        a_dist[cell.label] = dict(sorted(dist.items(), key=lambda kv: int(kv[0])))
    return {
        "config": normalized,
        "cells": cell_reports,
        "instances": instances,
        "instances_run": len(instances),
        "instances_skipped": len(skipped),
        "skipped": skipped,
        "counterexamples": counterexamples,
        "invariant_quotient_not_gorenstein": not_gorenstein,
        "a_invariant_distribution": a_dist,
    }
