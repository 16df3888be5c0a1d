"""``clab`` command-line front end.

Exit codes: 0 success, 1 usage, 2 oracle disagreement, 3 resource guard,
4 domain error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from clab import analytic_series as an
from clab import coalescence as co
from clab import distribution as di
from clab import qh_satake as qh
from clab.config import FORMATS, load_config
from clab.cyclotomic import build_reducer
from clab.errors import (ClabError, DomainError, InvalidArgumentError, OracleDisagreementError,
                         ResourceLimitError)
from clab.primes import build_prime_table


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _table(cfg, need: int):
    need = max(int(need), 2)
    if need > cfg.sieve_limit:
        raise ResourceLimitError(f"needs a sieve up to {need}, above sieve_limit={cfg.sieve_limit}")
    return build_prime_table(need)


def _emit_rows(cfg, header, rows) -> str:
    if cfg.output_format == "json":
        return json.dumps([dict(zip(header, r)) for r in rows]) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _num(v):
    v = float(v)
    return int(v) if v.is_integer() and abs(v) < 2**53 else v


def cmd_triangle(args, cfg) -> str:
    if args.n_max < 2:
        raise InvalidArgumentError("--n-max must be >= 2")
    t = _table(cfg, args.n_max)
    rows = co.triangle_map(t, args.n_max)
    flat = [(n, k, int(f)) for n, row in enumerate(rows, start=2)
            for k, f in enumerate(row, start=1)]
    return _emit_rows(cfg, ["n", "k", "coalescing"], flat)


def cmd_coalesce(args, cfg) -> str:
    n = args.n
    if n < 2:
        raise InvalidArgumentError("n must be >= 2")
    t = _table(cfg, n)
    ks = [args.k] if args.k is not None else list(range(1, n))
    r = build_reducer(n) if args.oracle else None
    lines = []
    disagree = []
    for k in ks:
        closed = co.is_coalescing(t, k, n)
        parts = [] if args.k is not None else [f"k={k}"]
        parts.append(f"coalescing={str(closed).lower()}")
        if r is not None:
            oracle = co.is_coalescing_oracle(r, k, guard=cfg.oracle_guard)
            parts += [f"oracle={str(oracle).lower()}", f"agree={str(oracle == closed).lower()}"]
            if oracle != closed:
                disagree.append(k)
        lines.append(" ".join(parts))
    text = "\n".join(lines) + "\n"
    if disagree:
        sys.stdout.write(text)
        raise OracleDisagreementError(f"closed form and exact search disagree at n={n}, k={disagree}")
    return text


def cmd_lseries(args, cfg) -> str:
    s = complex(args.s_re, args.s_im)
    if s.real <= 2:
        raise DomainError(f"the series diverges for Re(s) <= 2, got s={s}")
    t = _table(cfg, max(args.ncut, args.pcut))
    d = an.l_tilde_direct(s, args.ncut, t)
    p = an.l_tilde_prime_series(s, args.pcut, t)

    def pack(v):
        return {"value": [v.value.real, v.value.imag], "tail_bound": v.tail_bound,
                "terms_used": v.terms_used}

    out = {"s": [s.real, s.imag], "direct": pack(d), "prime_series": pack(p),
           "difference": abs(d.value - p.value), "combined_tail": d.tail_bound + p.tail_bound}
    return json.dumps(out) + "\n"


def cmd_distribution(args, cfg) -> str:
    x = args.x
    t = _table(cfg, x)
    ys = [args.y] if args.y is not None else list(range(2, int(2 * math.sqrt(x)) + 1))
    direct = di.h_count_direct_many(t, x, ys)
    rows = [(_num(x), _num(y), hd, di.h_count_identity(t, x, y)) for y, hd in zip(ys, direct)]
    return _emit_rows(cfg, ["x", "y", "H_direct", "H_identity"], rows)


def cmd_buchstab(args, cfg) -> str:
    tbl = di.build_buchstab_table(u_max=max(20.0, math.ceil(args.u)))
    val = di.buchstab_omega(tbl, args.u)
    if cfg.output_format == "json":
        return json.dumps({"u": args.u, "omega": val}) + "\n"
    return f"{val!r}\n"


def cmd_envelope(args, cfg) -> str:
    t = _table(cfg, args.x)
    e = di.rh_envelope(t, args.x, args.theta)
    return _emit_rows(cfg, ["x", "H_hat", "li", "diff", "normalized"],
                      [(_num(args.x), e.h_hat, e.li, e.diff, e.normalized)])


def cmd_spectrum(args, cfg) -> str:
    try:
        q = complex(args.q.replace("i", "j"))
    except ValueError:
        raise InvalidArgumentError(f"cannot parse q={args.q!r}") from None
    b = qh.wedge_basis(args.n, args.k)
    res = qh.c1_spectrum(b, q, tol=cfg.tol("spectrum"), guard=cfg.eigen_guard)
    return qh.spectrum_json(args.n, args.k, q, res) + "\n"


def _real(text):
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="clab", description=__doc__.splitlines()[0])
    p.add_argument("--sieve-limit", type=int)
    p.add_argument("--oracle-guard", type=int)
    p.add_argument("--eigen-guard", type=int)
    p.add_argument("--format", dest="output_format", choices=FORMATS)
    p.add_argument("--output", "-o", dest="output_path")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("triangle", help="coalescence flags of G(k, n) as CSV")
    sp.add_argument("--n-max", type=int, required=True)
    sp.set_defaults(func=cmd_triangle)

    sp = sub.add_parser("coalesce", help="closed-form verdict, optionally checked by exact search")
    sp.add_argument("n", type=int)
    sp.add_argument("k", type=int, nargs="?")
    sp.add_argument("--oracle", action="store_true")
    sp.set_defaults(func=cmd_coalesce)

    sp = sub.add_parser("lseries", help="direct and prime-indexed evaluations of the series")
    sp.add_argument("s_re", type=_real)
    sp.add_argument("s_im", type=_real)
    sp.add_argument("--ncut", type=int, default=10**6)
    sp.add_argument("--pcut", type=int, default=10**6)
    sp.set_defaults(func=cmd_lseries)

    sp = sub.add_parser("distribution", help="H(x, y) by scan and by the rough-number identity")
    sp.add_argument("x", type=int)
    sp.add_argument("y", type=_real, nargs="?")
    sp.set_defaults(func=cmd_distribution)

    sp = sub.add_parser("buchstab", help="Buchstab function value")
    sp.add_argument("u", type=_real)
    sp.set_defaults(func=cmd_buchstab)

    sp = sub.add_parser("envelope", help="H_hat(x) against li(x)")
    sp.add_argument("x", type=int)
    sp.add_argument("--theta", type=_real, default=0.5)
    sp.set_defaults(func=cmd_envelope)

    sp = sub.add_parser("spectrum", help="eigenvalues of c1 quantum multiplication")
    sp.add_argument("n", type=int)
    sp.add_argument("k", type=int)
    sp.add_argument("q", nargs="?", default="1")
    sp.set_defaults(func=cmd_spectrum)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config({
            "sieve_limit": args.sieve_limit, "oracle_guard": args.oracle_guard,
            "eigen_guard": args.eigen_guard, "output_format": args.output_format,
            "output_path": args.output_path,
        })
        text = args.func(args, cfg)
    except ClabError as exc:
        print(f"clab: {exc}", file=sys.stderr)
        return exc.exit_code
    except ArithmeticError as exc:
        print(f"clab: numerical failure: {exc}", file=sys.stderr)
        return 4
    try:
        if cfg.output_path:
            with open(cfg.output_path, "w", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"clab: cannot write output: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
