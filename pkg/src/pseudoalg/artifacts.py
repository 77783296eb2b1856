"""JSON artifacts: Lie algebras, pseudoalgebras and pseudomodules.

Every artifact file is {"schema_version": 1, "artifact": kind, ...}.  Output is
canonical: keys sorted, rationals as strings, tuples as lists.
"""

import json
import os
from fractions import Fraction

from .constructions import CendTensor, CurAlgebra, cend, cend_phi, current_extension, cur, dif
from .errors import InputError
from .hopf import helt_from_json
from .lie import Cocycle, LieAlgebra, zoo
from .pseudo import DifAlgebra, PseudoAlgebra, TabularAlgebra, elt_from_json
from .reps import (RegularModule, TableModule, TabularModule, TensorEndModule, TildeModule, WordModule,
                   m_alpha)
from .scalars import Q
from .xcop import TensorEnd, _dec_label, from_spec, matrix_algebra

SCHEMA_VERSION = 1


def canonical(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, tuple):
        return [canonical(x) for x in obj]
    if isinstance(obj, list):
        return [canonical(x) for x in obj]
    if isinstance(obj, dict):
        if all(isinstance(k, str) for k in obj):
            return {k: canonical(v) for k, v in obj.items()}
        return [[canonical(k), canonical(v)] for k, v in sorted(obj.items(), key=lambda kv: repr(kv[0]))]
    return obj


def dumps(obj) -> str:
    return json.dumps(canonical(obj), sort_keys=True, indent=2) + "\n"


def read_json(path_or_text):
    """A path, '@path', a zoo name, or literal JSON text."""
    s = str(path_or_text)
    if s.startswith("@"):
        s = s[1:]
    if os.path.exists(s):
        with open(s) as fh:
            try:
                return json.load(fh)
            except json.JSONDecodeError as exc:
                raise InputError(f"{s}: invalid JSON at line {exc.lineno}", pointer="") from exc
    try:
        return json.loads(s)
    except json.JSONDecodeError:
        raise InputError(f"cannot read {s!r} as a file or JSON text")


# ---------------------------------------------------------------- Lie algebras

def load_lie(ref) -> LieAlgebra:
    if isinstance(ref, LieAlgebra):
        return ref
    if isinstance(ref, str) and ref in zoo():
        return zoo()[ref]
    data = read_json(ref) if not isinstance(ref, dict) else ref
    if data.get("artifact") == "lie":
        data = data["lie"]
    return LieAlgebra.from_json(data)


def load_cocycle(ref) -> Cocycle:
    data = read_json(ref) if not isinstance(ref, dict) else ref
    return Cocycle.from_json(data)


# ---------------------------------------------------------------- pseudoalgebras

def algebra_from_spec(spec: dict) -> PseudoAlgebra:
    kind = spec.get("kind")
    if kind == "dif":
        return DifAlgebra(from_spec(spec["base"]), name=spec.get("name"))
    if kind == "cur":
        return CurAlgebra(from_spec(spec["base"]), name=spec.get("name"))
    if kind == "cend":
        return CendTensor(int(spec["n"]), LieAlgebra.from_json(spec["lie"]))
    if kind == "tabular":
        g = LieAlgebra.from_json(spec["lie"])
        gens = [_dec_label(x) for x in spec.get("generators", [])]
        table = {}
        for n, row in enumerate(spec.get("xtable", [])):
            try:
                a, b, I, elt = row
            except (TypeError, ValueError):
                raise InputError("malformed xtable row", pointer=f"/xtable/{n}")
            key = (_dec_label(a), _dec_label(b))
            table.setdefault(key, {})[tuple(int(x) for x in I)] = elt_from_json(elt, g.dim)
        return TabularAlgebra(g, gens, table)
    raise InputError(f"unknown pseudoalgebra kind {kind!r}", pointer="/kind")


def algebra_artifact(R: PseudoAlgebra) -> dict:
    return {"schema_version": SCHEMA_VERSION, "artifact": "pseudoalgebra", "spec": R.spec()}


def build_algebra(kind: str, n=None, lie=None, cocycle=None, base=None, spec=None, extend=None,
                  embed=None, check_deg: int = 2) -> PseudoAlgebra:
    """Builders behind `pseudoalg build`."""
    if kind == "algebra":
        data = read_json(spec)
        R = algebra_from_spec(data.get("spec", data))
    elif kind == "cur":
        if base is not None:
            R = cur(from_spec(read_json(base)))
        else:
            R = cur(matrix_algebra(int(n or 1), load_lie(lie or "ab1")))
    elif kind == "dif":
        R = dif(from_spec(read_json(base)), check_deg)
    elif kind == "cend":
        R = cend(int(n or 1), load_lie(lie or "ab1"))
    elif kind == "cendphi":
        if cocycle is None:
            raise InputError("cendphi needs --cocycle")
        R = cend_phi(int(n or 1), load_lie(lie or "ab2"), load_cocycle(cocycle))
    else:
        raise InputError(f"unknown algebra kind {kind!r}")
    if extend is not None:
        R = current_extension(R, load_lie(extend), [int(k) - 1 for k in embed])
    return R


# ---------------------------------------------------------------- modules

def _matrix(M):
    return [[Q(x) for x in row] for row in M]


def amodule_from_spec(A, spec: dict):
    kind = spec.get("kind")
    if kind == "word":
        gens = {_dec_label(l): _matrix(M) for l, M in spec["generators"]}
        return WordModule(A, gens, spec.get("dim"))
    if kind == "table":
        mats = {_dec_label(l): _matrix(M) for l, M in spec["matrices"]}
        return TableModule(A, int(spec["dim"]), mats)
    if kind == "tensorend":
        if not isinstance(A, TensorEnd):
            raise InputError("tensorend module needs an End_n (x) B base")
        return TensorEndModule(A, amodule_from_spec(A.base, spec["U"]))
    if kind == "conformal":
        M = m_alpha(int(spec["n"]), spec["alpha"], A.g)
        if M.A.spec() != A.spec():
            raise InputError("conformal module does not match the algebra")
        return M
    raise InputError(f"unknown A-module kind {kind!r}", pointer="/kind")


def module_from_artifact(data: dict):
    R = algebra_from_spec(data["algebra"])
    spec = data["module"]
    kind = spec.get("kind")
    if kind == "tilde":
        if not isinstance(R, DifAlgebra):
            raise InputError("tilde modules need a Dif-backed algebra")
        return TildeModule(R, amodule_from_spec(R.A, spec["amodule"]))
    if kind == "regular":
        return RegularModule(R)
    if kind == "tabular":
        gens = [_dec_label(x) for x in spec.get("generators", [])]
        table = {}
        for a, m, I, elt in spec.get("xaction", []):
            key = (_dec_label(a), _dec_label(m))
            table.setdefault(key, {})[tuple(int(x) for x in I)] = elt_from_json(elt, R.g.dim)
        return TabularModule(R, gens, table)
    raise InputError(f"unknown module kind {kind!r}", pointer="/module/kind")


def module_artifact(R: PseudoAlgebra, module_spec: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "artifact": "module", "algebra": R.spec(), "module": module_spec}


def load_artifact(ref):
    """(kind, object) for an artifact file."""
    data = read_json(ref)
    if not isinstance(data, dict):
        raise InputError("artifact must be a JSON object")
    kind = data.get("artifact")
    if kind == "lie":
        return "lie", LieAlgebra.from_json(data["lie"])
    if kind == "pseudoalgebra":
        return "pseudoalgebra", algebra_from_spec(data["spec"])
    if kind == "module":
        return "module", module_from_artifact(data)
    if "kind" in data:
        return "pseudoalgebra", algebra_from_spec(data)
    raise InputError(f"unknown artifact kind {kind!r}", pointer="/artifact")


def load_elt(ref, n: int):
    data = read_json(ref)
    return elt_from_json(data.get("terms", data) if isinstance(data, dict) else data, n)


def load_x(ref, n: int):
    data = read_json(ref)
    if isinstance(data, list):
        data = {"terms": data}
    return helt_from_json(data, n)
