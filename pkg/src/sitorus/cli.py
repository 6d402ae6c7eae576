"""``sitorus`` command line: one JSON document per invocation.

Every JSON-valued option accepts inline JSON, a file path, or ``-`` for stdin.
Exit status is 0 on success, 2 on a domain error (the document is then
``{"error": {"code": ..., "message": ...}}``) and 1 on malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import codec
from .criteria import ergodic_criterion, strong_mixing_criterion, upper_density, weak_mixing_criterion
from .errors import SitorusError
from .exact import FpMatrix, RatMatrix
from .irreducible import factor_mod_p, is_irreducible_q
from .polynomial import FpPoly, IntPoly
from .rigidity import (
    ENUM_CAP,
    AuditParams,
    RigidityCase,
    filter_support,
    finite_support_enumerate,
    rigidity_audit,
    semigroup_generate,
)
from .strong import (
    MatrixTuple,
    certify_tuple_q,
    companion,
    find_dependency_witness_c,
    generate_si,
    is_si_matrix,
    tuple_bruteforce_fp,
)
from .torus import apply_map, fourier, fourier_exact, is_invariant, orbit, pushforward

__all__ = ["main", "run"]


class MalformedInput(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise MalformedInput(message)


def _load(value: str):
    if value == "-":
        text = sys.stdin.read()
    elif value.lstrip()[:1] in ("{", "[", '"') or value.strip().lstrip("-").isdigit():
        text = value
    else:
        try:
            with open(value, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise MalformedInput(f"cannot read {value!r}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON in {value!r}: {exc.msg}") from None


def _matrix(value: str) -> RatMatrix | FpMatrix:
    return codec.decode_matrix(_load(value))


def _int_matrix(value: str) -> RatMatrix:
    A = _matrix(value)
    if not isinstance(A, RatMatrix) or not A.is_integer():
        raise MalformedInput("expected an integer matrix over Q")
    return A


def _pairs(value: str | None):
    if value is None:
        return None
    raw = _load(value)
    if not isinstance(raw, list):
        raise MalformedInput("pairs must be a list of {\"k\": [...], \"l\": [...]}")
    out = []
    for item in raw:
        if isinstance(item, dict):
            out.append((codec.decode_freq(item.get("k")), codec.decode_freq(item.get("l"))))
        elif isinstance(item, list) and len(item) == 2:
            out.append((codec.decode_freq(item[0]), codec.decode_freq(item[1])))
        else:
            raise MalformedInput("each pair is {\"k\": [...], \"l\": [...]} or [k, l]")
    return out


# -- handlers ---------------------------------------------------------------

def _poly_irreducible(a):
    f = codec.decode_poly(_load(a.input))
    if isinstance(f, FpPoly):
        raise MalformedInput("poly irreducible works over Q; use poly factor-mod-p for F_p")
    v = is_irreducible_q(f, a.eisenstein_bound, a.modp_bound, a.kronecker_cap)
    return codec.encode_verdict(v)


def _poly_factor(a):
    f = codec.decode_poly(_load(a.input))
    if isinstance(f, IntPoly):
        if a.p is None:
            raise MalformedInput("give --p or a polynomial with a \"p\" field")
        f = f.mod_p(a.p)
    elif a.p is not None and a.p != f.p:
        raise MalformedInput("--p disagrees with the polynomial's modulus")
    return codec.encode_factorization(factor_mod_p(f))


def _matrix_si(a):
    return codec.encode_cert(is_si_matrix(_matrix(a.input)), a.timing)


def _tuple_certify(a):
    T = codec.decode_tuple(_load(a.input))
    if T.field == "Fp":
        rep = tuple_bruteforce_fp(T)
    else:
        primes = None if a.primes is None else [int(p) for p in a.primes.split(",") if p]
        rep = certify_tuple_q(T, primes, a.radius)
    return codec.encode_cert(rep, a.timing)


def _tuple_bruteforce(a):
    T = codec.decode_tuple(_load(a.input))
    if T.field == "Q":
        if a.p is None:
            raise MalformedInput("a tuple over Q needs --p")
        if not all(m.is_integer() for m in T.mats):
            raise MalformedInput("only integer tuples reduce mod p")
        T = T.mod_p(a.p)
    return codec.encode_cert(tuple_bruteforce_fp(T), a.timing)


def _generate_companion(a):
    f = codec.decode_poly(_load(a.input))
    if isinstance(f, FpPoly):
        raise MalformedInput("companion expects a polynomial over Z")
    return codec.encode_matrix(companion(f))


def _generate_si(a):
    return codec.encode_matrix(generate_si(a.n, a.p))


def _witness_c(a):
    T = codec.decode_tuple(_load(a.input))
    w = find_dependency_witness_c(T, tol=a.tol if a.tol is not None else 1e-8,
                                  max_restarts=a.restarts, seed=a.seed)
    return codec.encode_witness(w)


def _orbit(a):
    A = _int_matrix(a.matrix)
    x = codec.decode_point(_load(a.x))
    return codec.encode_orbit(orbit(A, x, a.orbit_cap))


def _apply(a):
    A = _int_matrix(a.matrix)
    return {"x": codec.encode_point(apply_map(A, codec.decode_point(_load(a.x))))}


def _fourier(a):
    mu = codec.decode_measure(_load(a.measure))
    k = codec.decode_freq(_load(a.k))
    c = fourier(mu, k)
    out = {"re": c.real + 0.0, "im": c.imag + 0.0}
    exact = fourier_exact(mu, k)
    if exact is not None:
        out["exact"] = str(exact)
    return out


def _pushforward(a):
    A = _int_matrix(a.matrix)
    return codec.encode_measure(pushforward(A, codec.decode_measure(_load(a.measure))))


def _invariant(a):
    A = _int_matrix(a.matrix)
    return {"invariant": is_invariant(A, codec.decode_measure(_load(a.measure)))}


def _criterion(a):
    mu = codec.decode_measure(_load(a.measure))
    A = _int_matrix(a.matrix)
    pairs = _pairs(a.pairs)
    tol = 1e-3 if a.tol is None else a.tol
    exclude = not a.no_exclude_collisions
    if a.which == "strong":
        rep = strong_mixing_criterion(mu, A, pairs, tuple(a.window), tol, a.bit_cap, exclude)
    else:
        family = codec.decode_family(_load(a.family) if a.family else None)
        fn = ergodic_criterion if a.which == "ergodic" else weak_mixing_criterion
        rep = fn(mu, A, pairs, family, a.m, tol, a.bit_cap, exclude)
    return codec.encode_criterion(rep, samples=not a.summary)


def _density(a):
    E = codec.decode_density_set(_load(a.set))
    F = codec.decode_family(_load(a.family) if a.family else None)
    return codec.encode_density(upper_density(E, F, a.m))


def _rigidity_support(a):
    T = codec.decode_tuple(_load(a.tuple))
    k = codec.decode_freq(_load(a.k))
    pts = finite_support_enumerate(T, k, a.enum_cap)
    if a.filter:
        pts = filter_support(T, k, pts)
    return {"count": len(pts), "points": [codec.encode_point(x) for x in pts]}


def _rigidity_audit(a):
    raw = _load(a.input)
    if not isinstance(raw, dict):
        raise MalformedInput("an audit case is an object with A, tuple, E, mu")
    E = raw.get("E")
    if not isinstance(E, list):
        raise MalformedInput("E must be a list of exponents")
    case = RigidityCase(
        A=codec.decode_matrix(raw.get("A")),
        tuple=codec.decode_tuple(raw.get("tuple")),
        E=tuple(codec.decode_int(j) for j in E),
        mu=codec.decode_measure(raw.get("mu")),
        family=codec.decode_family(raw.get("family")),
    )
    params = AuditParams(
        pairs=_pairs(a.pairs),
        radius=a.radius,
        m=a.m,
        window=tuple(a.window),
        tol=1e-3 if a.tol is None else a.tol,
        bit_cap=a.bit_cap,
    )
    return codec.encode_audit(rigidity_audit(case, params), a.timing)


def _semigroup(a):
    B = _int_matrix(a.input)
    gens = semigroup_generate(B, a.j_max, not a.no_identity_power)
    return {"generators": [codec.encode_matrix(G) for G in gens]}


# -- parser -----------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", default="-", help="output path, '-' for stdout")
    common.add_argument("--tol", type=float, default=None,
                        help="tolerance (1e-8 witness residual, 1e-3 criteria)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--timing", action="store_true", help="include elapsed seconds")

    parser = _Parser(prog="sitorus", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def leaf(group, name, handler, **kw):
        p = group.add_parser(name, parents=[common], **kw)
        p.set_defaults(handler=handler)
        return p

    def group(name, help):
        g = sub.add_parser(name, help=help)
        return g.add_subparsers(dest="action", required=True, parser_class=_Parser)

    poly = group("poly", "polynomial tools")
    p = leaf(poly, "irreducible", _poly_irreducible)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--eisenstein-bound", type=int, default=100)
    p.add_argument("--modp-bound", type=int, default=50)
    p.add_argument("--kronecker-cap", type=int, default=8)
    p = leaf(poly, "factor-mod-p", _poly_factor)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--p", type=int)

    mat = group("matrix", "single-matrix tests")
    p = leaf(mat, "si", _matrix_si)
    p.add_argument("--in", dest="input", required=True)

    tup = group("tuple", "matrix tuple tests")
    p = leaf(tup, "certify", _tuple_certify)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--primes", help="comma-separated prime budget (default: primes <= 50)")
    p.add_argument("--radius", type=int, default=3)
    p = leaf(tup, "bruteforce-fp", _tuple_bruteforce)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--p", type=int)

    gen = group("generate", "constructions")
    p = leaf(gen, "companion", _generate_companion)
    p.add_argument("--in", dest="input", required=True)
    p = leaf(gen, "si", _generate_si)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)

    wit = group("witness", "dependency witnesses")
    p = leaf(wit, "c", _witness_c)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--restarts", type=int, default=20)

    p = leaf(sub, "orbit", _orbit)
    p.add_argument("--matrix", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--orbit-cap", type=int, default=10**6)
    p = leaf(sub, "apply", _apply)
    p.add_argument("--matrix", required=True)
    p.add_argument("--x", required=True)
    p = leaf(sub, "fourier", _fourier)
    p.add_argument("--measure", required=True)
    p.add_argument("--k", required=True)
    for name, fn in (("pushforward", _pushforward), ("invariant", _invariant)):
        p = leaf(sub, name, fn)
        p.add_argument("--matrix", required=True)
        p.add_argument("--measure", required=True)

    crit = group("criterion", "finite-truncation criterion testers")
    for which in ("ergodic", "weak", "strong"):
        p = leaf(crit, which, _criterion)
        p.set_defaults(which=which)
        p.add_argument("--measure", required=True)
        p.add_argument("--matrix", required=True)
        p.add_argument("--pairs", help="list of {\"k\": [...], \"l\": [...]} (default: grid of radius 3)")
        p.add_argument("--family", help="interval family {start, start_slope, length, length_slope}")
        p.add_argument("--m", type=int, default=1000)
        p.add_argument("--window", type=int, nargs=2, default=(1, 40), metavar=("J0", "J1"))
        p.add_argument("--bit-cap", type=int, default=4096)
        p.add_argument("--no-exclude-collisions", action="store_true")
        p.add_argument("--summary", action="store_true", help="omit per-sample arrays")

    p = leaf(sub, "density", _density)
    p.add_argument("--set", required=True, help="{\"kind\": progression|finite|cofinite, ...}")
    p.add_argument("--family")
    p.add_argument("--m", type=int, default=1000)

    rig = group("rigidity", "support enumeration and audits")
    p = leaf(rig, "support", _rigidity_support)
    p.add_argument("--tuple", required=True)
    p.add_argument("--k", required=True)
    p.add_argument("--enum-cap", type=int, default=ENUM_CAP)
    p.add_argument("--filter", action="store_true", help="keep only points meeting every constraint")
    p = leaf(rig, "audit", _rigidity_audit)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--pairs")
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--m", type=int, default=200)
    p.add_argument("--window", type=int, nargs=2, default=(1, 30), metavar=("J0", "J1"))
    p.add_argument("--bit-cap", type=int, default=4096)

    p = leaf(sub, "semigroup", _semigroup)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--j-max", type=int, default=1)
    p.add_argument("--no-identity-power", action="store_true")
    return parser


def _positive_budgets(a) -> None:
    for name in ("bit_cap", "enum_cap", "orbit_cap", "m", "restarts", "j_max"):
        val = getattr(a, name, None)
        if val is not None and val < 1:
            raise MalformedInput(f"--{name.replace('_', '-')} must be positive")


def _emit(doc, out: str) -> None:
    text = codec.dumps(doc) + "\n"
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def run(argv: Sequence[str] | None = None) -> int:
    out = "-"
    try:
        args = _build_parser().parse_args(argv)
        out = args.out
        _positive_budgets(args)
        doc = args.handler(args)
    except SitorusError as exc:
        _emit({"error": {"code": exc.code, "message": str(exc)}}, "-")
        return 2
    except (MalformedInput, ValueError, TypeError, KeyError) as exc:
        _emit({"error": {"code": "MalformedInput", "message": str(exc)}}, "-")
        return 1
    except OverflowError as exc:
        _emit({"error": {"code": "BudgetExceeded", "message": str(exc)}}, "-")
        return 2
    _emit(doc, out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
