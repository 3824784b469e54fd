"""Command-line front end.

Exit codes: 0 success, 1 mathematical failure (axioms, exactness, missing
action), 2 input error, 3 resource cap or enumeration budget.  Tables go to
stdout; JSON is written only to the ``-o`` file.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import io
from .actions import apply_exp_to_chain, canonical_action, enumerate_end_ring, exp_comparison, is_ordinary
from .constructors import (
    FiniteAbelianGroup,
    appendix_d1,
    appendix_d2,
    d_pair,
    function_hopf,
    group_hopf,
    lift_to_group_hom,
    unit_hopf,
)
from .errors import (
    AssertionFailure,
    BudgetExceeded,
    CapExceeded,
    DoesNotVanish,
    HopfError,
    InputError,
    NoAction,
    NotAHopfAlgebra,
    NotAHopfMorphism,
    NotContained,
)
from .homology import (
    Subcomplex,
    builtin_space,
    cellular_fp_chain,
    empty_subcomplex,
    homology_all,
    subcomplex,
    verify_les,
)
from .hopf import (
    DEFAULT_BUDGET,
    HopfAlgebra,
    classify_triviality,
    cointegral,
    dual,
    group_likes,
    integral,
    tensor,
    verify_hopf,
)
from .linalg import Field

EXIT_OK, EXIT_MATH, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

_MATH_ERRORS = (AssertionFailure, NotAHopfAlgebra, NotAHopfMorphism, NoAction, NotContained, DoesNotVanish)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def format_vector(h: HopfAlgebra, v) -> str:
    names = h.basis_names or tuple(f"e{i}" for i in range(h.dim))
    k = h.field
    terms = []
    for name, c in zip(names, v):
        if k.is_zero(k.array([c])):
            continue
        s = k.to_json(c)
        terms.append(name if str(s) in ("1", "1/1") else f"{s}*{name}")
    return " + ".join(terms) if terms else "0"


def _count(h: HopfAlgebra, budget: int) -> Optional[int]:
    try:
        return len(group_likes(h, budget))
    except (BudgetExceeded, HopfError):
        return None


def _show(n: Optional[int]) -> str:
    return "?" if n is None else str(n)


def _write(args, obj) -> None:
    if getattr(args, "output", None):
        io.write_json(obj, args.output)


# -- subcommands -----------------------------------------------------------------


def cmd_verify(args) -> int:
    h = io.load_hopf(args.path)
    report = verify_hopf(h)
    print(report)
    _write(args, report.to_json())
    if not report.ok:
        print(f"failed: {', '.join(report.failures)}")
        return EXIT_MATH
    return EXIT_OK


def info_report(h: HopfAlgebra, budget: int) -> dict:
    h.require_verified()
    ge, ge_dual = _count(h, budget), _count(dual(h), budget)
    integ, coint = integral(h), cointegral(h)
    k = h.field
    return {
        "dim": h.dim,
        "field": str(k),
        "ge": ge,
        "ge_dual": ge_dual,
        "semisimple": integ.semisimple,
        "cosemisimple": coint.semisimple,
        "class": classify_triviality(h, budget),
        "integral": None if integ.normalized_integral is None else k.array_to_json(integ.normalized_integral),
        "cointegral": None if coint.normalized_integral is None else k.array_to_json(coint.normalized_integral),
        "integral_space_dim": integ.integral_space.dim,
        "cointegral_space_dim": coint.integral_space.dim,
    }


def cmd_info(args) -> int:
    h = io.load_hopf(args.path)
    rep = info_report(h, args.budget)
    print(
        f"dim {rep['dim']}, GE {_show(rep['ge'])}, GE^∨ {_show(rep['ge_dual'])}, "
        f"semisimple {_yes(rep['semisimple'])}, cosemisimple {_yes(rep['cosemisimple'])}, class {rep['class']}"
    )
    if rep["ge"] is None or rep["ge_dual"] is None:
        print("warning: group-like enumeration exceeded the budget or field support", file=sys.stderr)
    if rep["integral"] is not None:
        print(f"normalized integral:   {format_vector(h, h.field.array(rep['integral']))}")
    if rep["cointegral"] is not None:
        d = dual(h)
        print(f"normalized cointegral: {format_vector(d, d.field.array(rep['cointegral']))}")
    _write(args, rep)
    return EXIT_OK


def construct(kind: str, field: Optional[str], group: Optional[str]) -> HopfAlgebra:
    kind = kind.lower()
    if kind == "d1":
        return appendix_d1()
    if kind == "d2":
        return appendix_d2()
    if field is None:
        raise InputError(f"construct {kind} needs --field")
    k = Field.parse(field)
    if kind == "unit":
        return unit_hopf(k)
    if group is None:
        raise InputError(f"construct {kind} needs --group")
    g = FiniteAbelianGroup.parse(group)
    if kind == "group":
        return group_hopf(k, g)
    if kind == "function":
        return function_hopf(k, g)
    if kind == "dpair":
        return d_pair(group_hopf(k, g))
    raise InputError(f"unknown kind {kind!r}")


def _emit(args, h: HopfAlgebra) -> int:
    print(f"{h.metadata.get('origin', 'hopf algebra')}: dim {h.dim} over {h.field}")
    _write(args, io.hopf_to_json(h))
    return EXIT_OK


def cmd_construct(args) -> int:
    return _emit(args, construct(args.kind, args.field, args.group))


def cmd_dual(args) -> int:
    h = io.load_hopf(args.path)
    h.require_verified()
    return _emit(args, dual(h))


def cmd_tensor(args) -> int:
    a, b = io.load_hopf(args.left), io.load_hopf(args.right)
    a.require_verified()
    b.require_verified()
    return _emit(args, tensor(a, b))


def cmd_dpair(args) -> int:
    h = io.load_hopf(args.path)
    h.require_verified()
    return _emit(args, d_pair(h))


def cmd_endring(args) -> int:
    h = io.load_hopf(args.path)
    h.require_verified()
    rep = enumerate_end_ring(h, args.budget)
    names = [lab or f"f{i}" for i, lab in enumerate(rep.labels)]
    print(f"End ring: {rep.size} elements, characteristic {rep.characteristic}, ring {rep.ring_id or 'unidentified'}")
    width = max(len(s) for s in names)
    for title, table in (("convolution (+)", rep.add_table), ("composition (*)", rep.mul_table)):
        print(title)
        print(" " * (width + 1) + " ".join(s.rjust(width) for s in names))
        for i, row in enumerate(table):
            print(names[i].rjust(width) + " " + " ".join(names[j].rjust(width) for j in row))
    _write(
        args,
        {
            "size": rep.size,
            "ring_id": rep.ring_id,
            "characteristic": rep.characteristic,
            "labels": rep.labels,
            "add_table": rep.add_table,
            "mul_table": rep.mul_table,
            "elements": [h.field.array_to_json(f.matrix) for f in rep.elements],
        },
    )
    return EXIT_OK


def _space(args):
    if args.cw:
        return io.load_cw(args.cw)
    return builtin_space(args.space or "pt")


def named_subcomplex(kw, name: str) -> Subcomplex:
    """``pt``: the first 0-cell; ``rp1``/``s1``/``skel1``: the 1-skeleton; ``skelN``; ``empty``."""
    key = name.strip().lower()
    if key in ("empty", "none"):
        return empty_subcomplex(kw)
    if key == "pt":
        return subcomplex(kw, [[0]])
    if key in ("rp1", "s1"):
        key = "skel1"
    if key.startswith("skel") and key[4:].isdigit():
        q = int(key[4:])
        return subcomplex(kw, [list(range(kw.count(i))) for i in range(min(q, kw.top) + 1)])
    raise InputError(f"unknown subcomplex {name!r}")


def _relative(args, kw) -> Optional[Subcomplex]:
    if not args.relative:
        return None
    if Path(args.relative).is_file():
        return io.subcomplex_from_json(io.read_json(args.relative), kw)
    return named_subcomplex(kw, args.relative)


def cmd_homology(args) -> int:
    kw = _space(args)
    h = io.load_hopf(args.coeff)
    h.require_verified()
    sub = _relative(args, kw)
    res = homology_all(kw, h, sub, budget=args.budget)
    label = kw.name + (" rel subcomplex" if sub is not None else "")
    print(f"H_*({label}; coefficients of dim {h.dim} over {h.field})")
    print(f"{'q':>2} {'dim':>5} {'GE':>5} {'GE^∨':>5} {'ss':>4} {'coss':>5}  class")
    for s in res.summaries:
        print(
            f"{s.q:>2} {s.dim:>5} {_show(s.ge):>5} {_show(s.ge_dual):>5} "
            f"{_yes(s.semisimple):>4} {_yes(s.cosemisimple):>5}  {s.klass}"
        )
    out = {"space": kw.name, "relative": sub is not None, "field": str(h.field), "degrees": [s.to_json() for s in res.summaries]}
    status = EXIT_OK
    if args.les:
        les = verify_les(kw, sub if sub is not None else empty_subcomplex(kw), h)
        print("long exact sequence:")
        print(les)
        out["les"] = {"ok": les.ok, "spots": [{"spot": n, "exact": v.exact, "reason": v.reason} for n, v in les.spots]}
        if not les.ok:
            status = EXIT_MATH
    if args.emit_presentations:
        out["presentations"] = [io.hopf_to_json(g) for g in res.groups]
    _write(args, out)
    return status


def cmd_expfun(args) -> int:
    h = io.load_hopf(args.coeff)
    h.require_verified()
    spec = canonical_action(h, args.prime)
    c = io.load_fp_chain(args.chain) if args.chain else cellular_fp_chain(_space(args), args.prime)
    if c.p != args.prime:
        raise InputError(f"chain is over F_{c.p}, not F_{args.prime}")
    hc = apply_exp_to_chain(spec, c)
    rows = [exp_comparison(spec, c, q, hc) for q in range(c.top + 1)]
    print(f"exponential functor of a dim {h.dim} algebra with its F_{args.prime}-action")
    print(f"{'q':>2} {'dim H_q(C)':>10} {'dim H_q':>8} {'expected':>9}  comparison")
    for r in rows:
        verdict = "isomorphism" if r.ok else "NOT an isomorphism"
        print(f"{r.q:>2} {r.homology_dim_fp:>10} {r.hopf_dim:>8} {r.expected_dim:>9}  {verdict}")
    dims = [r.hopf_dim for r in rows]
    print("ordinary" if is_ordinary(dims) else "extraordinary")
    _write(
        args,
        {
            "prime": args.prime,
            "degrees": [
                {"q": r.q, "fp_dim": r.homology_dim_fp, "dim": r.hopf_dim, "expected": r.expected_dim, "isomorphism": r.ok}
                for r in rows
            ],
            "ordinary": is_ordinary(dims),
        },
    )
    return EXIT_OK if all(r.ok for r in rows) else EXIT_MATH


def cmd_lift(args) -> int:
    f = io.load_morphism(args.path)
    phi = lift_to_group_hom(f)
    print(f"group homomorphism {phi.source} -> {phi.target}")
    for i, img in enumerate(phi.images):
        print(f"  generator {i} -> {tuple(img)}")
    _write(args, {"source": list(phi.source.orders), "target": list(phi.target.orders), "images": [list(x) for x in phi.images]})
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hopfhom", description="Exact computations with bicommutative Hopf algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help_: str, output: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        if output:
            sp.add_argument("-o", "--output", help="write JSON here")
        return sp

    sp = add("verify", cmd_verify, "check the Hopf algebra axioms")
    sp.add_argument("path")

    sp = add("info", cmd_info, "group-likes, integrals and triviality class")
    sp.add_argument("path")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    sp = add("construct", cmd_construct, "build a named Hopf algebra")
    sp.add_argument("kind", choices=["group", "function", "dpair", "d1", "d2", "unit"])
    sp.add_argument("--field", help="prime p, Fp or Q")
    sp.add_argument("--group", help="cyclic orders, e.g. 2,4")

    sp = add("dual", cmd_dual, "dual Hopf algebra")
    sp.add_argument("path")

    sp = add("tensor", cmd_tensor, "tensor product")
    sp.add_argument("left")
    sp.add_argument("right")

    sp = add("dpair", cmd_dpair, "A (x) A^v")
    sp.add_argument("path")

    sp = add("endring", cmd_endring, "enumerate Hopf endomorphisms")
    sp.add_argument("path")
    sp.add_argument("--budget", type=int, default=10**6)

    sp = add("homology", cmd_homology, "cellular homology with Hopf coefficients")
    src = sp.add_mutually_exclusive_group()
    src.add_argument("--space", help="builtin space: " + ", ".join(("pt", "S1", "S1-big", "S2", "S2-big", "RP1", "RP2", "T2", "D2")))
    src.add_argument("--cw", help="CW complex JSON file")
    sp.add_argument("--coeff", required=True, help="coefficient Hopf algebra JSON")
    sp.add_argument("--relative", help="subcomplex JSON or a name (pt, rp1, s1, skelN, empty)")
    sp.add_argument("--les", action="store_true", help="verify the long exact sequence of the pair")
    sp.add_argument("--emit-presentations", action="store_true")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    sp = add("expfun", cmd_expfun, "homology of the exponential functor applied to an F_p chain")
    sp.add_argument("--coeff", required=True)
    sp.add_argument("--prime", type=int, required=True)
    src = sp.add_mutually_exclusive_group()
    src.add_argument("--chain", help="F_p chain complex JSON")
    src.add_argument("--space", help="builtin space (cellular chain over F_p)")
    sp.add_argument("--cw", help=argparse.SUPPRESS)

    sp = add("lift", cmd_lift, "recover the group homomorphism behind a Hopf morphism")
    sp.add_argument("path")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8", errors="replace")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (CapExceeded, BudgetExceeded) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_CAP
    except _MATH_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (InputError, ValueError, HopfError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
