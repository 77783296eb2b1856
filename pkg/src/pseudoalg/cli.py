"""Command-line front end.

Every command writes a JSON report carrying "schema_version".  Exit codes:
0 pass, 1 verification failure, 2 input error, 3 out of scope.
"""

import random
import sys

import click

from . import artifacts as art
from .annih import coef_mul, fourier_coefficient, left_identity_check, sample_coefs
from .classify import classify_small_simple, tag_summary
from .errors import InputError, OutOfScope, PseudoalgError
from .pseudo import DifAlgebra, elt_to_json, pseudoproduct, random_element, sample_triples, \
    verify_axioms, xprod
from .reps import (curc_decompose, extract_a_module, normalize_module_generators, probe_pseudomodule,
                   verify_module)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_SCOPE = 0, 1, 2, 3


def _emit(report: dict, out):
    report = dict(report, schema_version=art.SCHEMA_VERSION)
    text = art.dumps(report)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _run(fn, out):
    try:
        report, code = fn()
    except OutOfScope as exc:
        report, code = {"status": "out_of_scope", "error": exc.as_dict()}, EXIT_SCOPE
    except InputError as exc:
        report, code = {"status": "input_error", "error": exc.as_dict()}, EXIT_INPUT
    except PseudoalgError as exc:
        report, code = {"status": "fail", "error": exc.as_dict()}, EXIT_FAIL
    except (KeyError, TypeError, ValueError) as exc:
        report, code = {"status": "input_error", "error": {"code": "InputError", "message": repr(exc)}}, EXIT_INPUT
    _emit(report, out)
    sys.exit(code)


def _parts_json(parts):
    return [[list(I), elt_to_json(v)] for I, v in sorted(parts.items())]


def _unit(R):
    e = R.unit_element() if isinstance(R, DifAlgebra) else getattr(R, "identity", lambda: None)()
    if e is None:
        raise OutOfScope("no pseudoidentity available for this algebra")
    return e


@click.group()
def main():
    """Exact computations with associative pseudoalgebras over U(g)."""


_common = [
    click.option("--out", "-o", default=None, help="write the report here instead of stdout"),
]


def common(f):
    for opt in reversed(_common):
        f = opt(f)
    return f


@main.command()
@click.argument("kind", type=click.Choice(["lie", "algebra", "cur", "dif", "cend", "cendphi", "module", "tilde"]))
@click.option("--n", type=int, default=None, help="matrix size")
@click.option("--lie", default=None, help="Lie algebra JSON file or zoo name (ab1, ab2, nonab2, heis)")
@click.option("--cocycle", default=None, help="2-cocycle JSON")
@click.option("--base", default=None, help="X^cop-algebra spec JSON (cur, dif)")
@click.option("--spec", default=None, help="pseudoalgebra spec JSON (algebra) or module spec JSON")
@click.option("--algebra", default=None, help="algebra artifact (module, tilde)")
@click.option("--module", "module_", default=None, help="A-module spec JSON (tilde)")
@click.option("--extend", default=None, help="lift to a larger Lie algebra (current extension)")
@click.option("--embed", default=None, help="1-based indices of the subalgebra, comma separated")
@common
def build(kind, n, lie, cocycle, base, spec, algebra, module_, extend, embed, out):
    """Build an artifact from JSON specs."""
    def go():
        if kind == "lie":
            g = art.load_lie(spec or lie)
            return {"artifact": "lie", "lie": g.to_json()}, EXIT_PASS
        if kind in ("module", "tilde"):
            if algebra is None:
                raise InputError("--algebra is required")
            _, R = art.load_artifact(algebra)
            if kind == "tilde":
                mspec = {"kind": "tilde", "amodule": art.read_json(module_ or spec)}
            else:
                mspec = art.read_json(spec or module_)
            data = art.module_artifact(R, mspec)
            art.module_from_artifact(data)
            return data, EXIT_PASS
        emb = [int(x) for x in embed.split(",")] if embed else None
        if extend is not None and not emb:
            raise InputError("--extend needs --embed")
        R = art.build_algebra(kind, n=n, lie=lie, cocycle=cocycle, base=base, spec=spec,
                              extend=extend, embed=emb)
        return art.algebra_artifact(R), EXIT_PASS
    _run(go, out)


@main.command()
@click.argument("artifact")
@click.option("--max-deg", default=4, show_default=True, help="truncation degree of the identity checks")
@click.option("--samples", default=32, show_default=True, help="number of sampled triples")
@click.option("--seed", default=0, show_default=True)
@click.option("--gen-deg", default=2, show_default=True, help="generator degree of sampled elements")
@common
def verify(artifact, max_deg, samples, seed, gen_deg, out):
    """Run the axiom suite on an algebra or module artifact."""
    def go():
        kind, obj = art.load_artifact(artifact)
        if kind == "lie":
            bad = obj.jacobi_defect()
            ok = not bad
            return {"status": "pass" if ok else "fail", "jacobi_defect": repr(bad) if bad else None}, \
                EXIT_PASS if ok else EXIT_FAIL
        if kind == "pseudoalgebra":
            R = obj
            trip = sample_triples(R, samples, seed, gen_deg=gen_deg, coef_deg=1)
            rep = verify_axioms(R, trip, max_deg).as_dict()
            reports = [rep]
            if isinstance(R, DifAlgebra) and R.unit_element() is not None:
                coefs = sample_coefs(R, R.gen_labels(min(gen_deg, 1)), 1)
                reports.append(left_identity_check(R, R.unit_element(), coefs, max_deg).as_dict())
        else:
            V = obj
            rng = random.Random(seed)
            trip = []
            for _ in range(samples):
                a = random_element(V.R, rng, gen_deg, 1)
                b = random_element(V.R, rng, gen_deg, 1)
                v = random_element(V, rng, 0, 1)
                trip.append((a, b, v))
            reports = [verify_module(V, trip, max_deg).as_dict()]
        ok = all(r["status"] == "pass" for r in reports)
        first = next((r["failures"][0] for r in reports if r["failures"]), None)
        vacuous = kind == "pseudoalgebra" and not obj.gen_labels(0)
        return {"status": "pass" if ok else "fail", "reports": reports, "first_failure": first, "vacuous": vacuous,
                "params": {"max_deg": max_deg, "samples": samples, "seed": seed}}, \
            EXIT_PASS if ok else EXIT_FAIL
    _run(go, out)


@main.command()
@click.argument("artifact")
@click.argument("a")
@click.argument("b")
@click.option("--x", default=None, help="element of X as [[multi-index, coeff], ...]; omit for all parts")
@common
def product(artifact, a, b, x, out):
    """Pseudoproduct a * b (all parts a_{t^I} b) or a single x-product."""
    def go():
        kind, R = art.load_artifact(artifact)
        if kind != "pseudoalgebra":
            raise InputError("product needs a pseudoalgebra artifact")
        n = R.g.dim
        av, bv = art.load_elt(a, n), art.load_elt(b, n)
        if x is not None:
            return {"x_product": elt_to_json(xprod(R, av, bv, art.load_x(x, n)))}, EXIT_PASS
        parts = pseudoproduct(R, av, bv)
        return {"parts": _parts_json(parts)}, EXIT_PASS
    _run(go, out)


@main.command()
@click.argument("artifact")
@click.argument("a")
@click.argument("x")
@click.option("--b", default=None, help="second element for a product of coefficients")
@click.option("--y", default=None, help="X-element paired with --b")
@click.option("--max-deg", default=4, show_default=True)
@common
def coef(artifact, a, x, b, y, max_deg, out):
    """Fourier coefficient a_x in coef(R), optionally multiplied by b_y."""
    def go():
        kind, R = art.load_artifact(artifact)
        if kind != "pseudoalgebra":
            raise InputError("coef needs a pseudoalgebra artifact")
        n = R.g.dim
        u = fourier_coefficient(R, art.load_elt(a, n), art.load_x(x, n), max_deg)
        rep = {"a_x": u.to_json()}
        if b is not None:
            if y is None:
                raise InputError("--b needs --y")
            v = fourier_coefficient(R, art.load_elt(b, n), art.load_x(y, n), max_deg)
            rep["b_y"] = v.to_json()
            rep["product"] = coef_mul(R, u, v, max_deg).to_json()
        return rep, EXIT_PASS
    _run(go, out)


def _module(artifact):
    kind, V = art.load_artifact(artifact)
    if kind != "module":
        raise InputError("expected a module artifact")
    return V


@main.command()
@click.argument("artifact")
@common
def decompose(artifact, out):
    """V = V0 (+) V1 with respect to the pseudoidentity of the algebra."""
    def go():
        V = _module(artifact)
        d = curc_decompose(V, _unit(V.R))
        return {"V0": [elt_to_json(v) for v in d["V0"]], "V1": [elt_to_json(v) for v in d["V1"]],
                "checks": d["checks"], "status": "pass"}, EXIT_PASS
    _run(go, out)


@main.command()
@click.argument("artifact")
@common
def normalize(artifact, out):
    """Normalized generators and the extracted base-algebra module."""
    def go():
        V = _module(artifact)
        e = _unit(V.R)
        gens = [V.gen(m) for m in V.gen_labels()]
        normal = normalize_module_generators(V, e, gens)
        rep = {"generators": [elt_to_json(v) for v in normal]}
        if isinstance(V.R, DifAlgebra):
            M = extract_a_module(V, e, normal)
            rep["amodule"] = {"dim": M.dim, "matrices": [[l, M.matrices[l]] for l in M.matrices]}
        return rep, EXIT_PASS
    _run(go, out)


@main.command()
@click.argument("artifact")
@click.option("--dim-bound", default=6, show_default=True)
@common
def lattice(artifact, dim_bound, out):
    """Submodule lattice probe of a unitary module."""
    def go():
        V = _module(artifact)
        return probe_pseudomodule(V, _unit(V.R), dim_bound), EXIT_PASS
    _run(go, out)


@main.command()
@click.argument("artifact")
@click.option("--max-deg", default=4, show_default=True)
@common
def classify(artifact, max_deg, out):
    """Recognize the base of a Dif-backed simple small pseudoalgebra."""
    def go():
        kind, R = art.load_artifact(artifact)
        if not isinstance(R, DifAlgebra):
            raise InputError("classify needs a Dif-backed pseudoalgebra")
        tag = classify_small_simple(R.A, max_deg)
        summary = tag_summary(tag)
        click.echo(summary, err=True)
        return {"status": "pass", "tag": tag, "summary": summary}, EXIT_PASS
    _run(go, out)


if __name__ == "__main__":
    main()
