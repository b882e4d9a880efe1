"""
FanModel: the JSON interchange format shared by every module.

A model lists indecomposables with index vectors relative to one global
reference, the maximal rigid objects as tuples of summand labels, and
optionally Hom dimensions, a suspension permutation and per-mutation
exchange data.  Labels are opaque strings.
"""

import json
from importlib import resources
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction

import jsonschema

from . import polygon
from .exact import primitive_rational, solve_linear, transpose
from .fan import (ChamberDecomposition, SimplicialCone, angular_order,
                  verify_chamber_decomposition)

SCHEMA_ID = "fanmodel/1"

SCHEMA = {
    "type": "object",
    "required": ["schema", "dim", "reference", "indecomposables", "maximal_rigid"],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": SCHEMA_ID},
        "name": {"type": "string"},
        "dim": {"type": "integer", "minimum": 1},
        "reference": {"type": "string"},
        "indecomposables": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "index"],
                "additionalProperties": False,
                "properties": {
                    "label": {"type": "string"},
                    "index": {"type": "array", "items": {"type": "integer"}},
                },
            },
        },
        "maximal_rigid": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["label", "summands"],
                "additionalProperties": False,
                "properties": {
                    "label": {"type": "string"},
                    "summands": {"type": "array", "items": {"type": "string"}},
                },
            },
        },
        "hom_dims": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "additionalProperties": {"type": "integer", "minimum": 0},
            },
        },
        "sigma": {"type": "object", "additionalProperties": {"type": "string"}},
        "exchange": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["from", "to", "replaced", "b_plus", "b_minus"],
                "additionalProperties": False,
                "properties": {
                    "from": {"type": "string"},
                    "to": {"type": "string"},
                    "replaced": {"type": "string"},
                    "b_plus": {"type": "array", "items": {"type": "string"}},
                    "b_minus": {"type": "array", "items": {"type": "string"}},
                },
            },
        },
    },
}


class ModelError(ValueError):
    """Schema or invariant violation; ``pointer`` is a JSON pointer into the document."""

    def __init__(self, message, pointer=""):
        super().__init__("%s: %s" % (pointer or "/", message))
        self.pointer = pointer or "/"


@dataclass(frozen=True)
class Exchange:
    source: str
    target: str
    replaced: str
    b_plus: tuple
    b_minus: tuple


@dataclass(eq=False)
class FanModel:
    dim: int
    reference: str
    indecomposables: dict
    maximal_rigid: dict
    hom_dims: dict = None
    sigma: dict = None
    exchange: list = None
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.indecomposables = {k: tuple(int(x) for x in v) for k, v in self.indecomposables.items()}
        self.maximal_rigid = {k: tuple(v) for k, v in self.maximal_rigid.items()}
        if self.exchange is not None:
            self.exchange = [e if isinstance(e, Exchange) else Exchange(*e) for e in self.exchange]
        self.validate()

    def __eq__(self, other):
        return isinstance(other, FanModel) and self.to_dict() == other.to_dict()

    # -- invariants -------------------------------------------------------

    def validate(self):
        d = self.dim
        for i, (label, v) in enumerate(self.indecomposables.items()):
            if len(v) != d:
                raise ModelError("index has length %d, expected %d" % (len(v), d),
                                 "/indecomposables/%d/index" % i)
        for i, (label, summands) in enumerate(self.maximal_rigid.items()):
            if len(summands) != d:
                raise ModelError("%s has %d summands, expected %d" % (label, len(summands), d),
                                 "/maximal_rigid/%d/summands" % i)
            for j, s in enumerate(summands):
                if s not in self.indecomposables:
                    raise ModelError("unknown summand %r" % s, "/maximal_rigid/%d/summands/%d" % (i, j))
        if self.reference not in self.maximal_rigid:
            raise ModelError("reference %r is not a maximal rigid label" % self.reference, "/reference")
        for k, s in enumerate(self.maximal_rigid[self.reference]):
            e = tuple(int(j == k) for j in range(d))
            if self.indecomposables[s] != e:
                raise ModelError("reference summand %r has index %r, expected %r"
                                 % (s, self.indecomposables[s], e), "/reference")
        if self.hom_dims is not None:
            for a in self.indecomposables:
                row = self.hom_dims.get(a)
                if row is None:
                    raise ModelError("missing row %r" % a, "/hom_dims")
                for b in self.indecomposables:
                    if b not in row:
                        raise ModelError("missing entry %r" % b, "/hom_dims/%s" % a)
        if self.sigma is not None:
            for a, b in self.sigma.items():
                if a not in self.indecomposables or b not in self.indecomposables:
                    raise ModelError("sigma maps unknown label %r -> %r" % (a, b), "/sigma/%s" % a)
        if self.exchange is not None:
            for i, e in enumerate(self.exchange):
                for key in (e.source, e.target):
                    if key not in self.maximal_rigid:
                        raise ModelError("unknown maximal rigid %r" % key, "/exchange/%d" % i)
                if e.replaced not in self.maximal_rigid[e.source]:
                    raise ModelError("%r is not a summand of %r" % (e.replaced, e.source),
                                     "/exchange/%d/replaced" % i)
                common = set(self.maximal_rigid[e.source]) & set(self.maximal_rigid[e.target])
                for key in ("b_plus", "b_minus"):
                    for s in getattr(e, key):
                        if s not in common:
                            raise ModelError("%r is not a common summand" % s,
                                             "/exchange/%d/%s" % (i, key))

    # -- serialisation ----------------------------------------------------

    def to_dict(self):
        out = {
            "schema": SCHEMA_ID,
            "dim": self.dim,
            "reference": self.reference,
            "indecomposables": [{"label": k, "index": list(v)} for k, v in self.indecomposables.items()],
            "maximal_rigid": [{"label": k, "summands": list(v)} for k, v in self.maximal_rigid.items()],
        }
        if self.name:
            out["name"] = self.name
        if self.hom_dims is not None:
            out["hom_dims"] = {a: dict(row) for a, row in self.hom_dims.items()}
        if self.sigma is not None:
            out["sigma"] = dict(self.sigma)
        if self.exchange is not None:
            out["exchange"] = [{"from": e.source, "to": e.target, "replaced": e.replaced,
                                "b_plus": list(e.b_plus), "b_minus": list(e.b_minus)}
                               for e in self.exchange]
        return out

    @classmethod
    def from_dict(cls, doc):
        validator = jsonschema.Draft7Validator(SCHEMA)
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
        if errors:
            err = errors[0]
            pointer = "".join("/%s" % p for p in err.absolute_path)
            if err.validator == "required":
                missing = next(k for k in err.validator_value if k not in err.instance)
                pointer += "/" + missing
            raise ModelError(err.message, pointer)
        for key in ("indecomposables", "maximal_rigid"):
            labels = [item["label"] for item in doc[key]]
            if len(set(labels)) != len(labels):
                raise ModelError("duplicate labels", "/" + key)
        exchange = doc.get("exchange")
        return cls(
            dim=doc["dim"],
            reference=doc["reference"],
            indecomposables={item["label"]: item["index"] for item in doc["indecomposables"]},
            maximal_rigid={item["label"]: item["summands"] for item in doc["maximal_rigid"]},
            hom_dims=doc.get("hom_dims"),
            sigma=doc.get("sigma"),
            exchange=None if exchange is None else [
                Exchange(e["from"], e["to"], e["replaced"], tuple(e["b_plus"]), tuple(e["b_minus"]))
                for e in exchange],
            name=doc.get("name", ""),
        )

    def dumps(self):
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    # -- geometry ---------------------------------------------------------

    def hom(self, a, b):
        if self.hom_dims is None:
            raise ModelError("model has no Hom table", "/hom_dims")
        return self.hom_dims[a][b]

    def mutation_pairs(self):
        """Unordered pairs of maximal rigid labels differing in exactly one summand."""
        labels = list(self.maximal_rigid)
        sets = {k: set(v) for k, v in self.maximal_rigid.items()}
        out = []
        for i, a in enumerate(labels):
            for b in labels[i + 1:]:
                if len(sets[a] - sets[b]) == 1:
                    out.append((a, b))
        return out

    def indices_wrt(self, ref):
        """
        Index vectors of all indecomposables relative to the maximal rigid ``ref``,
        in the order of its summands.

        With exchange data, indices are carried along a mutation path by the
        piecewise-linear transport; otherwise by the linear change of basis
        sending ``ref``'s summands to the standard basis.
        """
        key = ("indices", ref)
        if key not in self._cache:
            if ref == self.reference:
                result = dict(self.indecomposables)
            elif self.exchange is not None:
                result = self._transported_indices(ref)
            else:
                M = transpose([self.indecomposables[s] for s in self.maximal_rigid[ref]])
                result = {}
                for k, v in self.indecomposables.items():
                    x = solve_linear(M, v)
                    if any(Fraction(c).denominator != 1 for c in x):
                        raise ModelError("summands of %r do not form a lattice basis" % ref)
                    result[k] = tuple(int(c) for c in x)
            self._cache[key] = result
        return self._cache[key]

    def exchange_path(self, start, end):
        """Exchange records along a shortest mutation path (BFS, lexicographic ties)."""
        steps = {}
        for e in self.exchange:
            steps.setdefault(e.source, []).append(e)
        prev = {start: None}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            if v == end:
                break
            for e in sorted(steps.get(v, []), key=lambda e: e.target):
                if e.target not in prev:
                    prev[e.target] = e
                    queue.append(e.target)
        if end not in prev:
            raise ModelError("%r is not reachable from %r by mutation" % (end, start), "/exchange")
        path = []
        while prev[end] is not None:
            path.append(prev[end])
            end = prev[end].source
        return path[::-1]

    def _transported_indices(self, ref):
        coeffs = {}
        basis = self.maximal_rigid[self.reference]
        for k, v in self.indecomposables.items():
            coeffs[k] = {b: c for b, c in zip(basis, v) if c}
        for e in self.exchange_path(self.reference, ref):
            (star,) = set(self.maximal_rigid[e.target]) - set(self.maximal_rigid[e.source])
            for k, c in coeffs.items():
                coeffs[k] = phi_step(c, e.replaced, star, e.b_plus, e.b_minus)
        order = self.maximal_rigid[ref]
        return {k: tuple(c.get(s, 0) for s in order) for k, c in coeffs.items()}

    def chamber(self, label, ref=None):
        idx = self.indices_wrt(ref or self.reference)
        return SimplicialCone(tuple(idx[s] for s in self.maximal_rigid[label]), self.dim)

    def decomposition(self, ref=None):
        key = ("fan", ref or self.reference)
        if key not in self._cache:
            labels = tuple(self.maximal_rigid)
            self._cache[key] = ChamberDecomposition(
                self.dim, tuple(self.chamber(m, ref) for m in labels), labels)
        return self._cache[key]


def phi_step(coeffs, replaced, replacement, b_plus, b_minus):
    """One Dehy-Keller step on a class given as {summand label: coefficient}."""
    a = coeffs.get(replaced, 0)
    out = Counter({k: v for k, v in coeffs.items() if k != replaced})
    for m in (b_plus if a >= 0 else b_minus):
        out[m] += a
    out[replacement] -= a
    return {k: v for k, v in out.items() if v}


def load_fixture(name):
    """One of the models shipped with the package: ``a2`` or ``dihedral3``."""
    try:
        text = resources.files("ggk").joinpath("data", name + ".json").read_text()
    except FileNotFoundError:
        raise ModelError("no shipped fixture %r" % name) from None
    return FanModel.from_dict(json.loads(text))


def load_model(path):
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ModelError("invalid JSON: %s" % exc) from None
    return FanModel.from_dict(doc)


def save_model(model, path):
    with open(path, "w") as fh:
        fh.write(model.dumps())


# -- generators -----------------------------------------------------------

def mrig_label(summands):
    return "+".join(summands)


def build_fan_model(n, reference=None):
    """FanModel of C(A_n) from the polygon model."""
    P = polygon.PolygonModel(n, reference)
    N = P.N
    lab = lambda d: polygon.label(d, N)
    diags = polygon.all_diagonals(n)
    mrig = {mrig_label([lab(d) for d in T]): [lab(d) for d in T] for T in P.triangulations}
    exchange = []
    for T in P.triangulations:
        for f in sorted(P.flips(T), key=lambda f: f.replaced):
            exchange.append(Exchange(
                mrig_label([lab(d) for d in f.source]), mrig_label([lab(d) for d in f.target]),
                lab(f.replaced), tuple(lab(d) for d in f.b_plus), tuple(lab(d) for d in f.b_minus)))
    return FanModel(
        dim=n,
        reference=mrig_label([lab(d) for d in P.reference]),
        indecomposables={lab(d): P.index_vector(d) for d in diags},
        maximal_rigid=mrig,
        hom_dims={lab(a): {lab(b): P.hom_dim(a, b) for b in diags} for a in diags},
        sigma={lab(d): lab(polygon.sigma(N, d)) for d in diags},
        exchange=exchange,
        name="a_n(n=%d)" % n,
    )


def dihedral_rays(m):
    """Integral representatives of m lines through 0; the first two are the coordinate axes."""
    dirs = [(1, 0), (0, 1)] + [(-1, k) for k in range(1, m - 1)]
    return dirs[:m]


def model_from_decomposition(S, reference=None, name=""):
    """
    Treat the chambers of a decomposition as maximal rigid surrogates.

    Rays become indecomposables ``r0, r1, ...`` (in angular order when
    d = 2) and coordinates are changed so that the reference chamber's rays
    are the standard basis.
    """
    ref = reference if reference is not None else S.labels[0]
    base = S.chamber(ref).generators
    M = transpose(base)
    rays = angular_order(S.rays()) if S.ambient_dim == 2 else S.rays()
    names = {r: "r%d" % k for k, r in enumerate(rays)}
    coords = {r: primitive_rational(solve_linear(M, r)) for r in rays}
    return FanModel(
        dim=S.ambient_dim,
        reference=str(ref),
        indecomposables={names[r]: coords[r] for r in rays},
        maximal_rigid={str(label): [names[g] for g in C.generators]
                       for label, C in zip(S.labels, S.chambers)},
        name=name,
    )


def dihedral_decomposition(m):
    """The fan of m lines through the origin (m = 1 gives the point arrangement of R^1)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        return ChamberDecomposition.from_rays([("C0", [(1,)]), ("C1", [(-1,)])], 1)
    rays = []
    for v in dihedral_rays(m):
        rays += [v, (-v[0], -v[1])]
    rays = angular_order(rays)
    chambers = [("C%d" % k, [rays[k], rays[(k + 1) % len(rays)]]) for k in range(len(rays))]
    return ChamberDecomposition.from_rays(chambers, 2)


def sigma_swap_model(c):
    if c < 1:
        raise ValueError("c must be >= 1")
    return FanModel(
        dim=1,
        reference="{n}",
        indecomposables={"n": (1,), "Sn": (-1,)},
        maximal_rigid={"{n}": ("n",), "{Sn}": ("Sn",)},
        hom_dims={"n": {"n": c, "Sn": 0}, "Sn": {"n": 0, "Sn": c}},
        sigma={"n": "Sn", "Sn": "n"},
        exchange=[Exchange("{n}", "{Sn}", "n", (), ()), Exchange("{Sn}", "{n}", "Sn", (), ())],
        name="sigma_swap(c=%d)" % c,
    )


def generate(kind, **params):
    if kind == "a_n":
        model = build_fan_model(int(params["n"]))
    elif kind == "dihedral":
        m = int(params["m"])
        model = model_from_decomposition(dihedral_decomposition(m), "C0", name="dihedral(m=%d)" % m)
    elif kind == "sigma_swap":
        model = sigma_swap_model(int(params["c"]))
    else:
        raise ValueError("unknown kind %r (expected a_n, dihedral or sigma_swap)" % kind)
    report = verify_chamber_decomposition(model.decomposition())
    if not report.ok:
        raise ModelError("generated model fails verification: %r" % report.witnesses)
    return model
