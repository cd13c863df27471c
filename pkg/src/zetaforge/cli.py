"""Command-line interface: ``zetaforge <group> <verb> [flags]``.

Functions are printed in canonical RatFn text, reports as JSON.  Exit codes:
0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import flagcomb, fpgeom, grouppres, oracle, zetacore
from .budget import BudgetExceeded
from .exactalg import parse_mpoly, series_coefficients

BUILTINS = {
    "heisenberg": grouppres.heisenberg,
    "heisenberg_Zi": grouppres.gaussian_heisenberg,
    "grenham3": lambda: grouppres.grenham(3),
    "grenham4": lambda: grouppres.grenham(4),
    "grenham5": lambda: grouppres.grenham(5),
    "F2_4": lambda: grouppres.free_class2(4),
}


class DomainError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, default=str)


def _load(path: str) -> grouppres.Presentation:
    """A presentation file, or ``@name`` for a built-in presentation."""
    if path is None:
        raise DomainError("--file is required")
    if path.startswith("@"):
        name = path[1:]
        if name not in BUILTINS:
            raise DomainError(f"unknown built-in {name!r}; choose from {sorted(BUILTINS)}")
        return BUILTINS[name]()
    if not os.path.exists(path):
        raise DomainError(f"no such file: {path}")
    return grouppres.load_presentation(path)


def _parse_type(text: str | None):
    if not text:
        return ()
    if text.startswith("I="):
        text = text[2:]
    return tuple(int(x) for x in text.split(",") if x.strip())


def _parse_ints(text: str | None):
    if not text:
        return ()
    return tuple(int(x) for x in text.split(",") if x.strip())


def _need(args, *names):
    for n in names:
        if getattr(args, n.replace("-", "_")) is None:
            raise DomainError(f"--{n} is required for this command")


def _series_lines(value, p, terms):
    coeffs = series_coefficients(value, p, terms)
    return "series at p=%d: [%s]" % (p, ", ".join(str(c) for c in coeffs))


# ---------------------------------------------------------------------------
# flags


def cmd_flags(args):
    _need(args, "n")
    n = args.n
    if args.verb == "fn":
        F = flagcomb.flag_fn(n)
        print(F)
        if args.check_funeq:
            if n < 2:
                raise DomainError("functional equation needs n >= 2")
            print("funeq: holds" if flagcomb.check_flag_funeq(n) else "funeq: FAILS")
    elif args.verb == "schubert":
        ft = flagcomb.FlagType(n, _parse_type(args.type))
        print(flagcomb.schubert_c(ft))
    elif args.verb == "count":
        ft = flagcomb.FlagType(n, _parse_type(args.type))
        b = flagcomb.flag_count(ft)
        print(b)
        if args.prime is not None:
            print(f"at p={args.prime}: {b(args.prime)}")


# ---------------------------------------------------------------------------
# group


def cmd_group(args):
    pres = _load(args.file)
    if args.verb == "pfaffian":
        print(grouppres.pfaffian(pres))
    elif args.verb == "check":
        _need(args, "prime")
        rep = grouppres.hypothesis_report(pres, args.prime, assert_irreducible=args.assert_irreducible,
                                          budget=args.budget)
        print(_dump(rep))


# ---------------------------------------------------------------------------
# zeta


def _zeta_for(args):
    """LocalZeta from --file (smooth Pfaffian family) or --n (Grenham)."""
    if args.file is None:
        _need(args, "n")
        return zetacore.grenham_zeta(args.n)
    pres = _load(args.file)
    if args.n_poly is not None:
        n_P = parse_mpoly(args.n_poly)
    elif args.prime is not None:
        n_P = fpgeom.count_points(grouppres.pfaffian(pres), args.prime, pres.d_prime, budget=args.budget)
    else:
        n_P = "n" if pres.d_prime > 1 else 0
    return zetacore.normal_zeta_smooth(pres, n_P)


def cmd_zeta(args):
    if args.verb == "grenham":
        _need(args, "n")
        z = zetacore.grenham_zeta(args.n)
    elif args.verb == "shift":
        _need(args, "r")
        z = zetacore.direct_product_shift(_zeta_for(args), int(args.r))
    else:
        z = _zeta_for(args)
    if args.verb == "funeq":
        print(_dump(zetacore.verify_funeq(z)))
        return
    print(z.value)
    print(_dump(z.metadata()))
    if args.prime is not None and args.terms is not None:
        if z.n_mode == "symbolic":
            raise DomainError("series needs a concrete point count")
        print(_series_lines(z.value, args.prime, args.terms))


# ---------------------------------------------------------------------------
# geom


def _pencil(pres, q):
    if pres.d_prime != 2:
        raise DomainError("isotropic needs dprime = 2 (a pencil)")
    phi = fpgeom.SkewForm(tuple(tuple(r) for r in grouppres.evaluate_matrix(pres, [1, 0])), q)
    psi = fpgeom.SkewForm(tuple(tuple(r) for r in grouppres.evaluate_matrix(pres, [0, 1])), q)
    return phi, psi


def cmd_geom(args):
    pres = _load(args.file)
    _need(args, "prime")
    p, m, b = args.prime, pres.d_prime, args.budget
    pf = grouppres.pfaffian(pres)
    if args.verb != "isotropic" and pf.is_zero():
        raise DomainError("Pfaffian vanishes identically; no hypersurface")
    if args.verb == "points":
        print(fpgeom.count_points(pf, p, m, budget=b))
    elif args.verb == "smooth":
        print("smooth" if fpgeom.is_smooth_mod_p(pf, p, m, budget=b) else "singular")
    elif args.verb == "lines":
        line = fpgeom.find_line(pf, p, m, budget=b)
        print("no lines" if line is None else "line: " + " ".join(str(list(r)) for r in line))
    elif args.verb == "fano":
        _need(args, "k")
        print(fpgeom.fano_count(pf, p, args.k, m, budget=b))
    elif args.verb == "isotropic":
        phi, psi = _pencil(pres, p)
        k = args.k if args.k is not None else pres.d // 2 + 1
        B = fpgeom.common_isotropic_subspace(phi, psi, k, budget=b)
        print(_dump({"all_degenerate": fpgeom.pencil_all_degenerate(phi, psi), "dim": k,
                     "subspace": B}))


# ---------------------------------------------------------------------------
# oracle


def cmd_oracle(args):
    if args.verb == "types":
        _need(args, "n", "prime")
        I, r = _parse_type(args.type), _parse_ints(args.r)
        out = {
            "dprime": args.n,
            "I": list(I),
            "r": list(r),
            "prime": args.prime,
            "formula": oracle.count_lattices_of_type_formula(args.n, I, r, args.prime),
            "enumerated": oracle.count_lattices_of_type_enumerated(args.n, I, r, args.prime, budget=args.budget),
        }
        out["agree"] = out["formula"] == out["enumerated"]
        print(_dump(out))
        return
    pres = _load(args.file)
    _need(args, "prime", "terms")
    if args.verb == "count":
        counts = oracle.ideal_counts(pres, args.prime, args.terms, budget=args.budget)
        print(_dump({"prime": args.prime, "N": args.terms, "coefficients": counts}))
    elif args.verb == "compare":
        print(_dump(oracle.compare_report(pres, args.prime, args.terms, budget=args.budget)))


# ---------------------------------------------------------------------------


VERBS = {
    "flags": (("fn", "schubert", "count"), cmd_flags),
    "group": (("check", "pfaffian"), cmd_group),
    "zeta": (("compute", "grenham", "funeq", "shift"), cmd_zeta),
    "geom": (("points", "smooth", "lines", "fano", "isotropic"), cmd_geom),
    "oracle": (("count", "compare", "types"), cmd_oracle),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zetaforge", description="Normal zeta functions of class-2 nilpotent groups.")
    sub = parser.add_subparsers(dest="group", required=True)
    for name, (verbs, _) in VERBS.items():
        sp = sub.add_parser(name)
        sp.add_argument("verb", choices=verbs)
        sp.add_argument("--n", type=int)
        sp.add_argument("--file", help="presentation JSON file, or @name for a built-in")
        sp.add_argument("--prime", type=int)
        sp.add_argument("--terms", type=int, help="highest power of t to expand")
        sp.add_argument("--type", help="flag type, e.g. I=1,3")
        sp.add_argument("--r", help="comma-separated r vector (or shift rank for zeta shift)")
        sp.add_argument("--k", type=int)
        sp.add_argument("--n-poly", dest="n_poly", help="point count as a polynomial in p")
        sp.add_argument("--assert-irreducible", action="store_true")
        sp.add_argument("--check-funeq", action="store_true")
        sp.add_argument("--budget", type=int)
        sp.add_argument("--threads", type=int, help="accepted as a hint; computation is single-threaded")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        VERBS[args.group][1](args)
    except (DomainError, ValueError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
