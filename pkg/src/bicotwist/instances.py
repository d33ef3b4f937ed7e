"""Instance files and the built-in fixtures.

An instance is a JSON document::

    {
      "name": "FIX-Z4",
      "N": 4,
      "algebra": {"kind": "group_algebra", "group": "Z4"},
      "yd": {"dim": 2, "degrees": ["u", "u3"], "action": "trivial"},
      "cocycle": {"type": "bicharacter", "exponents": [[1]]},
      "metric": [["0", "1"], ["1", "0"]],
      "tasks": ["verify", "braiding", "metrics", "twist"]
    }

``yd_module`` is accepted as an alias of ``yd``.  A bicharacter cocycle
``{"type": "bicharacter", "exponents": E}`` on an abelian group algebra means
gamma(g (x) h) = zeta_N^(a E b) on exponent vectors a, b, with N the instance
order unless the cocycle gives its own.

Scalars are integers, ``"p/q"`` strings or ``{"N": n, "coeffs": [...]}``.
Parsing normalizes every scalar to its canonical JSON form, so serialize/parse is
an exact round trip.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

from .bicovariant import BicovBimodule, YDModule, build_bimodule, character_yd, graded_yd, make_yd, verify_yd
from .hopf import (
    BUILTIN_GROUPS,
    Group,
    GroupError,
    HopfAlgebra,
    builtin_group,
    check_group_table,
    function_algebra,
    group_algebra,
    make_group,
)
from .linalg import Matrix, Tensor3
from .report import Report
from .scalars import ONE, ZERO, Cyclotomic, ScalarError, parse_scalar, root_of_unity
from .twist import Cocycle, cocycle_report, functional, verify_cocycle

TASKS = ("verify", "braiding", "metrics", "twist")
ALGEBRA_KINDS = ("group_algebra", "function_algebra")
COCYCLE_TYPES = ("trivial", "bicharacter", "coboundary", "dual_bicharacter", "matrix")


class InstanceError(ValueError):
    """Malformed or inconsistent instance document; the message names the field."""


@dataclass
class InstanceSpec:
    name: str
    N: int
    algebra: dict
    yd: dict
    cocycle: dict | None = None
    metric: list | None = None
    tasks: list[str] = field(default_factory=lambda: list(TASKS))

    def to_json(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "N": self.N, "algebra": self.algebra, "yd": self.yd}
        if self.cocycle is not None:
            out["cocycle"] = self.cocycle
        if self.metric is not None:
            out["metric"] = self.metric
        out["tasks"] = self.tasks
        return copy.deepcopy(out)


# -- parsing ---------------------------------------------------------------------


def _fail(path: str, msg: str):
    raise InstanceError(f"{path}: {msg}")


def _int(obj, path: str, minimum: int | None = None) -> int:
    if isinstance(obj, bool) or not isinstance(obj, int):
        _fail(path, f"expected an integer, got {obj!r}")
    if minimum is not None and obj < minimum:
        _fail(path, f"expected an integer >= {minimum}, got {obj}")
    return obj


def _list(obj, path: str) -> list:
    if not isinstance(obj, list):
        _fail(path, f"expected a list, got {type(obj).__name__}")
    return obj


def _dict(obj, path: str, allowed: set[str]) -> dict:
    if not isinstance(obj, dict):
        _fail(path, f"expected an object, got {type(obj).__name__}")
    extra = sorted(set(obj) - allowed)
    if extra:
        _fail(path, f"unknown field {extra[0]!r}")
    return obj


def _scalar(obj, path: str):
    try:
        return parse_scalar(obj).to_json()
    except (ScalarError, TypeError, ValueError) as exc:
        _fail(path, str(exc))


def _scalar_list(obj, path: str) -> list:
    return [_scalar(x, f"{path}[{i}]") for i, x in enumerate(_list(obj, path))]


def _scalar_matrix(obj, path: str) -> list:
    return [_scalar_list(r, f"{path}[{i}]") for i, r in enumerate(_list(obj, path))]


def _element_ref(obj, path: str):
    """Group elements are referenced by label or by index."""
    if isinstance(obj, str):
        return obj
    return _int(obj, path, 0)


def _parse_algebra(obj) -> dict:
    obj = _dict(obj, "algebra", {"kind", "group", "table", "labels"})
    kind = obj.get("kind")
    if kind not in ALGEBRA_KINDS:
        _fail("algebra.kind", f"expected one of {list(ALGEBRA_KINDS)}, got {kind!r}")
    out: dict[str, Any] = {"kind": kind}
    if ("group" in obj) == ("table" in obj):
        _fail("algebra", "give exactly one of 'group' or 'table'")
    if "group" in obj:
        if obj["group"] not in BUILTIN_GROUPS:
            _fail("algebra.group", f"unknown built-in group {obj['group']!r}")
        out["group"] = obj["group"]
        if "labels" in obj:
            _fail("algebra.labels", "labels only go with an explicit table")
    else:
        table = _list(obj["table"], "algebra.table")
        out["table"] = [[_int(x, f"algebra.table[{i}][{j}]") for j, x in enumerate(_list(r, f"algebra.table[{i}]"))]
                        for i, r in enumerate(table)]
        if "labels" in obj:
            labels = _list(obj["labels"], "algebra.labels")
            for i, lab in enumerate(labels):
                if not isinstance(lab, str):
                    _fail(f"algebra.labels[{i}]", "expected a string")
            out["labels"] = list(labels)
    return out


def _parse_yd(obj) -> dict:
    obj = _dict(obj, "yd", {"dim", "degrees", "action", "degree", "character", "coaction"})
    out: dict[str, Any] = {"dim": _int(obj.get("dim"), "yd.dim", 1)}
    if "degrees" in obj:
        out["degrees"] = [_element_ref(x, f"yd.degrees[{i}]") for i, x in enumerate(_list(obj["degrees"], "yd.degrees"))]
        action = obj.get("action", "trivial")
        if isinstance(action, str):
            if action not in ("trivial", "conjugation"):
                _fail("yd.action", f"expected 'trivial', 'conjugation' or a table, got {action!r}")
            out["action"] = action
        else:
            out["action"] = [[_int(x, f"yd.action[{g}][{i}]", 0) for i, x in enumerate(_list(r, f"yd.action[{g}]"))]
                             for g, r in enumerate(_list(action, "yd.action"))]
    elif "degree" in obj:
        out["degree"] = _scalar_list(obj["degree"], "yd.degree")
        if "character" in obj:
            out["character"] = _scalar_list(obj["character"], "yd.character")
    elif "coaction" in obj:
        # explicit structure tensors action[a][i][j], coaction[i][j][a]
        out["action"] = [_scalar_matrix(m, f"yd.action[{a}]") for a, m in enumerate(_list(obj.get("action"), "yd.action"))]
        out["coaction"] = [_scalar_matrix(m, f"yd.coaction[{i}]") for i, m in enumerate(_list(obj["coaction"], "yd.coaction"))]
    else:
        _fail("yd", "give 'degrees', 'degree' or explicit 'action'/'coaction' tensors")
    return out


def _parse_cocycle(obj) -> dict | None:
    if obj is None:
        return None
    obj = _dict(obj, "cocycle", {"type", "N", "exponents", "f", "generator", "q", "values"})
    kind = obj.get("type")
    if kind not in COCYCLE_TYPES:
        _fail("cocycle.type", f"expected one of {list(COCYCLE_TYPES)}, got {kind!r}")
    out: dict[str, Any] = {"type": kind}
    if kind == "bicharacter":
        if "N" in obj:
            out["N"] = _int(obj["N"], "cocycle.N", 1)
        out["exponents"] = [[_int(x, f"cocycle.exponents[{i}][{j}]") for j, x in enumerate(_list(r, f"cocycle.exponents[{i}]"))]
                            for i, r in enumerate(_list(obj.get("exponents"), "cocycle.exponents"))]
    elif kind == "coboundary":
        out["f"] = _scalar_list(obj.get("f"), "cocycle.f")
    elif kind == "dual_bicharacter":
        out["generator"] = _element_ref(obj.get("generator"), "cocycle.generator")
        out["N"] = _int(obj.get("N"), "cocycle.N", 1)
        out["q"] = _int(obj.get("q", 1), "cocycle.q")
    elif kind == "matrix":
        out["values"] = _scalar_matrix(obj.get("values"), "cocycle.values")
    return out


def spec_from_json(doc: Any) -> InstanceSpec:
    doc = _dict(doc, "<root>", {"name", "N", "algebra", "yd", "yd_module", "cocycle", "metric", "tasks"})
    if "yd_module" in doc:
        if "yd" in doc:
            _fail("yd_module", "give either 'yd' or its alias 'yd_module', not both")
        doc = {("yd" if k == "yd_module" else k): v for k, v in doc.items()}
    for key in ("name", "N", "algebra", "yd"):
        if key not in doc:
            _fail(key, "missing required field")
    if not isinstance(doc["name"], str):
        _fail("name", "expected a string")
    tasks = _list(doc.get("tasks", list(TASKS)), "tasks")
    for i, t in enumerate(tasks):
        if t not in TASKS:
            _fail(f"tasks[{i}]", f"unknown task {t!r}")
    metric = doc.get("metric")
    return InstanceSpec(
        name=doc["name"],
        N=_int(doc["N"], "N", 1),
        algebra=_parse_algebra(doc["algebra"]),
        yd=_parse_yd(doc["yd"]),
        cocycle=_parse_cocycle(doc.get("cocycle")),
        metric=None if metric is None else _scalar_matrix(metric, "metric"),
        tasks=list(tasks),
    )


def parse_instance(text: str) -> InstanceSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return spec_from_json(doc)


def serialize(spec: InstanceSpec) -> str:
    return json.dumps(spec.to_json(), indent=2) + "\n"


def load_instance(path: str) -> InstanceSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


# -- building ----------------------------------------------------------------------


def _group_of(spec: InstanceSpec) -> Group:
    alg = spec.algebra
    if "group" in alg:
        return builtin_group(alg["group"])
    return make_group(alg["table"], alg.get("labels"))


def _raw_table_algebra(spec: InstanceSpec) -> HopfAlgebra:
    """Structure tensors read off a table that may fail the group axioms (for corruption reports)."""
    table = spec.algebra["table"]
    n = len(table)
    mult = Tensor3.zeros(n, n, n)
    comult = Tensor3.zeros(n, n, n)
    ident = next((e for e in range(n) if all(table[e][g] == g and table[g][e] == g for g in range(n))), 0)
    S = Matrix.zeros(n, n)
    for g in range(n):
        inv = next((h for h in range(n) if table[g][h] == ident and table[h][g] == ident), g)
        S.data[inv][g] = ONE
    if spec.algebra["kind"] == "group_algebra":
        for g in range(n):
            comult.data[g][g][g] = ONE
            for h in range(n):
                mult.data[g][h][table[g][h]] = ONE
        unit = tuple(ONE if g == ident else ZERO for g in range(n))
        counit = tuple(ONE for _ in range(n))
    else:
        for g in range(n):
            mult.data[g][g][g] = ONE
            for h in range(n):
                comult.data[table[g][h]][g][h] = comult.data[table[g][h]][g][h] + ONE
        unit = tuple(ONE for _ in range(n))
        counit = tuple(ONE if g == ident else ZERO for g in range(n))
    labels = tuple(spec.algebra.get("labels") or [f"g{i}" for i in range(n)])
    return HopfAlgebra(labels, mult, unit, comult, counit, S, spec.N, None, "raw_" + spec.algebra["kind"])


def group_table_error(spec: InstanceSpec) -> str | None:
    if "table" not in spec.algebra:
        return None
    try:
        check_group_table(spec.algebra["table"])
    except GroupError as exc:
        return str(exc)
    return None


def build_algebra(spec: InstanceSpec) -> HopfAlgebra:
    if group_table_error(spec) is not None:
        return _raw_table_algebra(spec)
    G = _group_of(spec)
    if spec.algebra["kind"] == "group_algebra":
        return group_algebra(G, order=spec.N)
    return function_algebra(G, order=spec.N)


def _resolve(G: Group | None, ref, path: str) -> int:
    if isinstance(ref, str):
        if G is None:
            _fail(path, "labels need a group")
        try:
            return G.index(ref)
        except GroupError:
            _fail(path, f"unknown group element {ref!r}")
    return ref


def _scalars(xs) -> list[Cyclotomic]:
    return [parse_scalar(x) for x in xs]


def build_yd(spec: InstanceSpec, A: HopfAlgebra) -> YDModule:
    y = spec.yd
    G = A.group
    if "degrees" in y:
        degrees = [_resolve(G, g, f"yd.degrees[{i}]") for i, g in enumerate(y["degrees"])]
        return graded_yd(A, degrees, y["action"])
    if "degree" in y:
        return character_yd(A, _scalars(y["degree"]), _scalars(y["character"]) if "character" in y else None)
    action = [[_scalars(r) for r in m] for m in y["action"]]
    coaction = [[_scalars(r) for r in m] for m in y["coaction"]]
    return make_yd(A, action, coaction)


def cocycle_values(spec: InstanceSpec, A: HopfAlgebra) -> list[list[Cyclotomic]]:
    """gamma(e_a (x) e_b) on the basis."""
    c = spec.cocycle or {"type": "trivial"}
    n = A.dim
    G = A.group
    kind = c["type"]
    if kind == "trivial":
        return [[A.counit[a] * A.counit[b] for b in range(n)] for a in range(n)]
    if kind == "matrix":
        return [_scalars(r) for r in c["values"]]
    if kind == "bicharacter":
        # gamma(g (x) h) = zeta_N^{sum_ij a_i E_ij b_j} on the exponents of g and h
        exps = G.exponents
        form = c["exponents"]
        order = c.get("N", spec.N)
        z = root_of_unity(order, 1)
        vals = []
        for g in range(n):
            row = []
            for h in range(n):
                k = sum(exps[g][i] * form[i][j] * exps[h][j] for i in range(len(form)) for j in range(len(form[i])))
                row.append(z ** (k % order))
            vals.append(row)
        return vals
    if kind == "coboundary":
        # gamma(g (x) h) = f(g) f(h) / f(gh)
        f = _scalars(c["f"])
        return [[f[g] * f[h] / f[G.mul(g, h)] for h in range(n)] for g in range(n)]
    # dual_bicharacter: gamma(d_{x^a} (x) d_{x^b}) = zeta_N^{q a b} / N on the cyclic subgroup <x>
    m = c["N"]
    x = _resolve(G, c["generator"], "cocycle.generator")
    powers = [G.identity]
    for _ in range(m - 1):
        powers.append(G.mul(powers[-1], x))
    z = root_of_unity(m, 1)
    vals = [[ZERO] * n for _ in range(n)]
    for a, g in enumerate(powers):
        for b, h in enumerate(powers):
            vals[g][h] = z ** ((c["q"] * a * b) % m) / m
    return vals


def _structure_errors(spec: InstanceSpec) -> list[str]:
    """Dimension and reference consistency, independent of the algebraic axioms."""
    errs: list[str] = []
    alg = spec.algebra
    if "table" in alg:
        n = len(alg["table"])
        if n == 0 or any(len(r) != n for r in alg["table"]):
            return ["algebra.table: not square"]
        if any(not 0 <= x < n for r in alg["table"] for x in r):
            return ["algebra.table: entry out of range"]
        if "labels" in alg and len(alg["labels"]) != n:
            errs.append(f"algebra.labels length {len(alg['labels'])} != order {n}")
        labels = alg.get("labels")
    else:
        G = builtin_group(alg["group"])
        n, labels = G.order, list(G.labels)
    fun_labels = [f"d_{x}" for x in labels] if labels else None

    def ref_ok(ref) -> bool:
        if isinstance(ref, str):
            return labels is not None and (ref in labels or (fun_labels is not None and ref in fun_labels))
        return 0 <= ref < n

    y = spec.yd
    d = y["dim"]
    if "degrees" in y:
        if alg["kind"] != "group_algebra":
            errs.append("yd.degrees: graded modules need a group algebra")
        if len(y["degrees"]) != d:
            errs.append(f"yd.degrees length {len(y['degrees'])} != yd.dim {d}")
        for i, g in enumerate(y["degrees"]):
            if not ref_ok(g):
                errs.append(f"yd.degrees[{i}]: unknown group element {g!r}")
        if isinstance(y["action"], list):
            if len(y["action"]) != n or any(len(r) != d or any(x >= d for x in r) for r in y["action"]):
                errs.append(f"yd.action: expected a {n}x{d} permutation table with entries < {d}")
    elif "degree" in y:
        if d != 1:
            errs.append(f"yd.dim must be 1 for a character module, got {d}")
        if len(y["degree"]) != n:
            errs.append(f"yd.degree length {len(y['degree'])} != dim A {n}")
        if "character" in y and len(y["character"]) != n:
            errs.append(f"yd.character length {len(y['character'])} != dim A {n}")
    else:
        if len(y["action"]) != n or any(len(m) != d or any(len(r) != d for r in m) for m in y["action"]):
            errs.append(f"yd.action shape: expected {n}x{d}x{d}")
        if len(y["coaction"]) != d or any(len(m) != d or any(len(r) != n for r in m) for m in y["coaction"]):
            errs.append(f"yd.coaction shape: expected {d}x{d}x{n}")

    c = spec.cocycle
    if c is not None:
        if c["type"] == "bicharacter":
            if alg["kind"] != "group_algebra":
                errs.append("cocycle: bicharacters need a group algebra")
            elif "group" not in alg:
                errs.append("cocycle: bicharacters need a built-in abelian group with exponents")
            else:
                G = builtin_group(alg["group"])
                if G.exponents is None:
                    errs.append(f"cocycle: group {alg['group']} has no abelian presentation")
                elif len(c["exponents"]) != len(G.cyclic_orders) or any(
                        len(r) != len(G.cyclic_orders) for r in c["exponents"]):
                    k = len(G.cyclic_orders)
                    errs.append(f"cocycle.exponents: expected a {k}x{k} integer matrix")
        elif c["type"] == "coboundary":
            if alg["kind"] != "group_algebra":
                errs.append("cocycle: coboundaries need a group algebra")
            if len(c["f"]) != n:
                errs.append(f"cocycle.f length {len(c['f'])} != dim A {n}")
            elif any(parse_scalar(x).is_zero() for x in c["f"]):
                errs.append("cocycle.f: values must be nonzero")
        elif c["type"] == "dual_bicharacter":
            if alg["kind"] != "function_algebra":
                errs.append("cocycle: dual bicharacters need a function algebra")
            if not ref_ok(c["generator"]):
                errs.append(f"cocycle.generator: unknown group element {c['generator']!r}")
        elif c["type"] == "matrix":
            if len(c["values"]) != n or any(len(r) != n for r in c["values"]):
                errs.append(f"cocycle.values: expected a {n}x{n} matrix")

    if spec.metric is not None:
        if len(spec.metric) != d or any(len(r) != d for r in spec.metric):
            errs.append(f"metric: expected a {d}x{d} matrix")
    return errs


def check_structure(spec: InstanceSpec) -> None:
    errs = _structure_errors(spec)
    if errs:
        raise InstanceError("; ".join(errs))


@dataclass(eq=False, repr=False)
class Instance:
    """A validated spec with its algebra, YD module and cocycle built."""

    spec: InstanceSpec
    algebra: HopfAlgebra
    yd: YDModule | None
    gamma: list[list[Cyclotomic]] | None

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def table_error(self) -> str | None:
        return group_table_error(self.spec)

    @cached_property
    def bimodule(self) -> BicovBimodule:
        return build_bimodule(self.algebra, self.yd, self.name)

    @cached_property
    def cocycle(self) -> Cocycle:
        return verify_cocycle(functional(self.algebra, self.gamma))

    @property
    def gmat(self) -> list[list[Cyclotomic]] | None:
        if self.spec.metric is None:
            return None
        return [_scalars(r) for r in self.spec.metric]


def build(spec: InstanceSpec) -> Instance:
    """Raises :class:`InstanceError` on structural problems; axioms are left to the verifiers."""
    check_structure(spec)
    A = build_algebra(spec)
    if A.group is None:
        return Instance(spec, A, None, None)
    yd = build_yd(spec, A)
    gamma = cocycle_values(spec, A) if spec.cocycle is not None else None
    return Instance(spec, A, yd, gamma)


def validate(spec: InstanceSpec) -> Report:
    """Structure first (raising :class:`InstanceError`), then group, YD and cocycle axioms.

    ``Report.messages`` of the result read like ``algebra: associativity fails at (0,1,1)``.
    """
    inst = build(spec)
    rep = Report(spec.name + ".validate")
    err = inst.table_error
    if err is not None:
        wit = error_witness(err)
        rep.add("algebra", False, wit, err)
        return rep
    rep.add("algebra", True)
    yrep = verify_yd(inst.yd)
    rep.add("yd", yrep.passed, [c.id for c in yrep.failures] or None,
            "" if yrep.passed else "fails " + ", ".join(c.id for c in yrep.failures))
    if inst.gamma is not None:
        crep = cocycle_report(functional(inst.algebra, inst.gamma))
        bad = crep.failures
        rep.add("cocycle", not bad, bad[0].witness if bad else None,
                f"{bad[0].id} fails" + (" at ({})".format(",".join(map(str, bad[0].witness))) if bad[0].witness else "")
                if bad else "")
    return rep


def error_witness(msg: str) -> list[int] | None:
    if "(" in msg and msg.endswith(")"):
        inside = msg[msg.rindex("(") + 1:-1]
        try:
            return [int(x) for x in inside.split(",")]
        except ValueError:
            return None
    return None


# -- built-in fixtures -------------------------------------------------------------


def _fixture_docs() -> dict[str, dict]:
    eye2 = [["1", "0"], ["0", "1"]]
    return {
        "FIX-TRIV": {
            "name": "FIX-TRIV", "N": 1,
            "algebra": {"kind": "group_algebra", "group": "Z2"},
            "yd": {"dim": 1, "degrees": ["e"], "action": "trivial"},
            "cocycle": {"type": "trivial"},
            "metric": [["1"]],
        },
        "FIX-Z4": {
            "name": "FIX-Z4", "N": 4,
            "algebra": {"kind": "group_algebra", "group": "Z4"},
            "yd": {"dim": 2, "degrees": ["u", "u3"], "action": "trivial"},
            "cocycle": {"type": "bicharacter", "exponents": [[1]]},
            "metric": [["0", "1"], ["1", "0"]],
        },
        "FIX-Z4-1dim": {
            "name": "FIX-Z4-1dim", "N": 4,
            "algebra": {"kind": "group_algebra", "group": "Z4"},
            "yd": {"dim": 1, "degrees": ["u"], "action": "trivial"},
            "cocycle": {"type": "bicharacter", "exponents": [[1]]},
        },
        "FIX-Z2xZ2": {
            "name": "FIX-Z2xZ2", "N": 2,
            "algebra": {"kind": "group_algebra", "group": "Z2xZ2"},
            "yd": {"dim": 2, "degrees": ["a", "b"], "action": "trivial"},
            "cocycle": {"type": "bicharacter", "exponents": [[0, 1], [0, 0]]},
            "metric": eye2,
        },
        "FIX-S3": {
            "name": "FIX-S3", "N": 1,
            "algebra": {"kind": "group_algebra", "group": "S3"},
            "yd": {"dim": 3, "degrees": ["t", "tc", "tc2"], "action": "conjugation"},
            # coboundary of f(e) = 1, f(3-cycle) = 3, f(transposition) = 2
            "cocycle": {"type": "coboundary", "f": ["1", "3", "3", "2", "2", "2"]},
            "metric": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
        },
        "FIX-FS3": {
            "name": "FIX-FS3", "N": 3,
            "algebra": {"kind": "function_algebra", "group": "S3"},
            # degree: the sign character, a group-like element of Fun(S3)
            "yd": {"dim": 1, "degree": ["1", "1", "1", "-1", "-1", "-1"]},
            "cocycle": {"type": "dual_bicharacter", "generator": "c", "N": 3, "q": 1},
            "metric": [["1"]],
        },
    }


BUILTIN_NAMES = tuple(_fixture_docs())


def builtin(name: str) -> InstanceSpec:
    docs = _fixture_docs()
    if name not in docs:
        raise InstanceError(f"unknown built-in instance {name!r}; expected one of {list(docs)}")
    return spec_from_json(docs[name])


def builtin_instance(name: str) -> Instance:
    return build(builtin(name))


def resolve_instance(ref: str) -> InstanceSpec:
    """A built-in name or a path to an instance file."""
    if ref in BUILTIN_NAMES:
        return builtin(ref)
    try:
        return load_instance(ref)
    except OSError as exc:
        raise InstanceError(f"cannot read {ref!r}: {exc.strerror}") from None
