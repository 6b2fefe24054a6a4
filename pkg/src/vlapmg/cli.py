"""Command-line front end: benchmark runner, verification suites, dumps.

Subcommands
-----------
bench        solve (domain, problem, preconditioner) cells over a level range
             and print iteration counts / timings as CSV or a Markdown table
verify       run named property suites; exit code 1 if any gate fails
dump-mesh    write mesh levels in the plain-text interchange format
dump-matrix  write one assembled operator in coordinate text format

Exit codes: 0 success, 1 verification gate failure, 2 usage error.
"""

import argparse
import os
import sys
from dataclasses import dataclass

from . import derham, krylov, mesh, multigrid, precond, problems, verify

__all__ = ['RunRecord', 'run_cells', 'emit', 'parse_records', 'main', 'entry']


@dataclass
class RunRecord:
    """One benchmark cell: what was solved and how it went."""
    domain: str
    problem: str
    precond: str
    level: int
    h: float
    dof: int
    iterations: int
    seconds: float
    final_relres: float
    converged: bool


def _round2(x):
    """Two significant digits, as a float (timings are reported coarsely)."""
    return float('%.2g' % x)


def run_cells(domain, levels, problem='curl', precond_kind='diag', mj=2,
              tol=1e-8, restart=20, maxit=500):
    """Solve one (domain, problem, preconditioner) column over a level range.

    levels is an inclusive (lo, hi) pair; the hierarchy is built once at the
    top level and every benchmark reuses its coarse part.  Timing covers the
    Krylov solve only (assembly and setup excluded).
    """
    lo, hi = levels
    if lo < 1 or hi < lo:
        raise ValueError('invalid level range %d..%d' % (lo, hi))
    hier = mesh.build_hierarchy(domain, hi)
    dlevels = [derham.assemble(m) for m in hier.meshes]
    ehier = multigrid.edge_hierarchy(dlevels)
    vhier = (multigrid.vertex_hierarchy(dlevels) if problem == 'maxwell'
             else None)

    records = []
    for J in range(lo, hi + 1):
        lv = dlevels[J - 1]
        vc = multigrid.VCycle(ehier, nlevels=J, mJ=mj)
        if problem == 'curl':
            system = problems.build_curl_saddle(lv)
        elif problem == 'div':
            system = problems.build_div_saddle(lv)
        elif problem == 'maxwell':
            system = problems.build_maxwell(lv, Atilde=ehier.matrices[J - 1])
        else:
            raise ValueError('unknown problem %r' % (problem,))

        if problem == 'maxwell':
            if precond_kind == 'diag':
                P = precond.diag_maxwell(system, vc)
                report = krylov.minres(system, system.rhs, M=P, tol=tol,
                                       maxit=maxit)
            elif precond_kind == 'tri':
                vcv = multigrid.VCycle(vhier, nlevels=J, mJ=mj)
                P = precond.tri_maxwell(system, vc, vcv)
                report = krylov.gmres(system, system.rhs, M=P, tol=tol,
                                      restart=restart, maxit=maxit)
            else:
                raise ValueError('unknown preconditioner %r' % (precond_kind,))
        else:
            if precond_kind == 'diag':
                P = precond.diag_vlap(system, vc)
                report = krylov.minres(system, system.rhs, M=P, tol=tol,
                                       maxit=maxit)
            elif precond_kind == 'tri':
                P = precond.tri_vlap(system, vc)
                report = krylov.gmres(system, system.rhs, M=P, tol=tol,
                                      restart=restart, maxit=maxit)
            else:
                raise ValueError('unknown preconditioner %r' % (precond_kind,))

        records.append(RunRecord(domain=domain, problem=problem,
                                 precond=precond_kind, level=J, h=lv.mesh.h,
                                 dof=system.dof_total,
                                 iterations=report.iterations,
                                 seconds=_round2(report.seconds),
                                 final_relres=report.relres,
                                 converged=report.converged))
    return records


CSV_HEADER = 'domain,problem,precond,level,h,dof,iterations,seconds,final_relres,converged'


def _fmt_h(h):
    inv = 1.0 / h
    if inv == round(inv):
        return '1/%d' % round(inv)
    return repr(float(h))


def emit(records, format='csv'):
    """Serialize benchmark records.

    csv: one row per record, floats in shortest round-trip form so
    parse_records(emit(r)) == r field-for-field.  md: a table pairing the
    diagonal (D) and triangular (T) columns per level.
    """
    if format == 'csv':
        lines = [CSV_HEADER]
        for r in records:
            lines.append('%s,%s,%s,%d,%s,%d,%d,%s,%s,%s'
                         % (r.domain, r.problem, r.precond, r.level,
                            repr(float(r.h)), r.dof, r.iterations,
                            repr(float(r.seconds)),
                            repr(float(r.final_relres)), r.converged))
        return '\n'.join(lines) + '\n'

    if format == 'md':
        cells = {}
        order = []
        for r in records:
            key = (r.domain, r.problem, r.level)
            if key not in cells:
                cells[key] = {}
                order.append(key)
            cells[key][r.precond] = r
        lines = ['| h | Dof | Iteration (D) | Time | Iteration (T) | Time |',
                 '|---|-----|---------------|------|---------------|------|']
        for key in order:
            pair = cells[key]
            any_r = next(iter(pair.values()))
            d, t = pair.get('diag'), pair.get('tri')
            lines.append('| %s | %d | %s | %s | %s | %s |'
                         % (_fmt_h(any_r.h), any_r.dof,
                            d.iterations if d else '-',
                            '%.2g' % d.seconds if d else '-',
                            t.iterations if t else '-',
                            '%.2g' % t.seconds if t else '-'))
        return '\n'.join(lines) + '\n'

    raise ValueError("format must be 'csv' or 'md', got %r" % (format,))


def parse_records(text):
    """Inverse of emit(..., 'csv')."""
    lines = [ln for ln in text.strip().splitlines() if ln]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError('not a benchmark CSV: bad header')
    out = []
    for ln in lines[1:]:
        f = ln.split(',')
        if len(f) != 10:
            raise ValueError('bad benchmark CSV row: %r' % ln)
        out.append(RunRecord(domain=f[0], problem=f[1], precond=f[2],
                             level=int(f[3]), h=float(f[4]), dof=int(f[5]),
                             iterations=int(f[6]), seconds=float(f[7]),
                             final_relres=float(f[8]),
                             converged=(f[9] == 'True')))
    return out


def _parse_levels(text):
    """'a..b' or a single 'k' -> inclusive (lo, hi)."""
    if '..' in text:
        a, _, b = text.partition('..')
        lo, hi = int(a), int(b)
    else:
        lo = hi = int(text)
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError('bad level range %r' % text)
    return lo, hi


def _write_out(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, 'w') as fh:
            fh.write(text)


def _cmd_bench(args):
    records = run_cells(args.domain, args.levels, problem=args.problem,
                        precond_kind=args.precond, mj=args.mj, tol=args.tol,
                        restart=args.restart)
    _write_out(emit(records, args.format), args.out)
    return 0


def _cmd_verify(args):
    rows = verify.run_suite(args.suite, domain=args.domain,
                            max_level=args.levels[1], seed=args.seed)
    _write_out(verify.rows_to_csv(rows), args.out)
    return 0 if all(r.passed for r in rows) else 1


def _cmd_dump_mesh(args):
    lo, hi = args.levels
    hier = mesh.build_hierarchy(args.domain, hi)
    if lo == hi and not (os.path.isdir(args.out)
                         or args.out.endswith(os.sep)):
        mesh.write_mesh(hier.meshes[hi - 1], args.out)
        return 0
    os.makedirs(args.out, exist_ok=True)
    for k in range(lo, hi + 1):
        mesh.write_mesh(hier.meshes[k - 1],
                        os.path.join(args.out, 'mesh_%s_L%d.txt'
                                     % (args.domain, k)))
    return 0


_MATRIX_NAMES = ('G', 'C', 'Mv', 'Me', 'Mf', 'B', 'Ap', 'Atilde')


def _cmd_dump_matrix(args):
    hier = mesh.build_hierarchy(args.domain, args.level)
    lv = derham.assemble(hier.meshes[args.level - 1])
    picks = {'G': lambda: lv.G, 'C': lambda: lv.C, 'Mv': lambda: lv.Mv,
             'Me': lambda: lv.Me, 'Mf': lambda: lv.Mf, 'B': lambda: lv.B,
             'Ap': lambda: lv.Ap,
             'Atilde': lambda: derham.schur_lumped(lv)}
    derham.write_matrix(picks[args.matrix](), args.out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog='vlapmg',
        description='Mixed-element vector Laplacian solvers with variable '
                    'V-cycle block preconditioning.')
    sub = parser.add_subparsers(dest='command', required=True)

    b = sub.add_parser('bench', help='run benchmark cells')
    b.add_argument('--domain', choices=('square', 'lshape', 'crack'),
                   default='square')
    b.add_argument('--levels', type=_parse_levels, required=True,
                   metavar='a..b')
    b.add_argument('--problem', choices=('curl', 'div', 'maxwell'),
                   default='curl')
    b.add_argument('--precond', choices=('diag', 'tri'), default='diag')
    b.add_argument('--mj', type=int, default=2)
    b.add_argument('--tol', type=float, default=1e-8)
    b.add_argument('--restart', type=int, default=20)
    b.add_argument('--seed', type=int, default=42)
    b.add_argument('--format', choices=('csv', 'md'), default='csv')
    b.add_argument('--out', default=None)
    b.set_defaults(func=_cmd_bench)

    v = sub.add_parser('verify', help='run verification suites')
    v.add_argument('--suite', nargs='+', required=True,
                   choices=verify.SUITES)
    v.add_argument('--domain', choices=('square', 'lshape', 'crack'),
                   default='square')
    v.add_argument('--levels', type=_parse_levels, default=(1, 4),
                   metavar='a..b')
    v.add_argument('--seed', type=int, default=42)
    v.add_argument('--out', default=None)
    v.set_defaults(func=_cmd_verify)

    dm = sub.add_parser('dump-mesh', help='write mesh levels as text')
    dm.add_argument('--domain', choices=('square', 'lshape', 'crack'),
                    default='square')
    dm.add_argument('--levels', type=_parse_levels, required=True,
                    metavar='a..b')
    dm.add_argument('--out', required=True)
    dm.set_defaults(func=_cmd_dump_mesh)

    dx = sub.add_parser('dump-matrix', help='write one operator as text')
    dx.add_argument('--domain', choices=('square', 'lshape', 'crack'),
                    default='square')
    dx.add_argument('--level', type=int, required=True)
    dx.add_argument('--matrix', choices=_MATRIX_NAMES, required=True)
    dx.add_argument('--out', required=True)
    dx.set_defaults(func=_cmd_dump_matrix)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print('error: %s' % exc, file=sys.stderr)
        return 2


def entry():
    sys.exit(main())


if __name__ == '__main__':
    entry()
