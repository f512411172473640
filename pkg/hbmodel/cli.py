"""\
The `hbmodel` command.

Every command writes a line-oriented report to stdout and exits with `0` when
all requested checks pass, `1` when an identity fails or fixed-point data are
inconsistent, and `2` on bad input.
"""
import sys
from argparse import SUPPRESS, ArgumentParser, Namespace
from pathlib import Path
from typing import List, Optional, Sequence

from . import logging as logg
from ._errors import (
    IdentityFailed,
    InconsistentFixedPointData,
    InvalidComplex,
    NoWitnessInWindow,
    TheoremMismatch,
)
from ._report import IdentityCheck, Report
from ._settings import check_weight_cap, settings
from .equivariant import EquivariantDatum, random_variants, validate
from .fixed_points import FixedPointData, cp2_weighted, relation_report
from .hirsch_brown import (
    HirschBrown,
    cohomology_cartan,
    cohomology_minimal,
    homotopy_identities,
    random_transfer_check,
)
from .hodge import betti_numbers, hodge_data
from .linalg import parse_rational
from .readwrite import read_datum

_FAILURES = (IdentityFailed, InconsistentFixedPointData, InvalidComplex, RuntimeError)
_INPUT_ERRORS = (ValueError, TypeError, KeyError, OSError)


def _load(source: str) -> EquivariantDatum:
    """A datum from a file path or the name of a shipped datum."""
    from . import datasets

    path = Path(source)
    if path.is_file():
        datum = read_datum(path, validate=False)
    else:
        datum = datasets.load(source, validate=False)
    datum.complex.check()
    return datum


def _weight_cap(args: Namespace, datum: Optional[EquivariantDatum] = None) -> int:
    cap = getattr(args, 'cap', None)
    if cap is None:
        cap = (datum.weight_cap if datum is not None else None) or settings.weight_cap
    check_weight_cap(cap, '--cap')
    floor = 2 * datum.max_t_degree if datum is not None else 0
    if cap < floor:
        raise ValueError(
            f'--cap {cap} is below twice the largest generator degree ({floor}); '
            'no nontrivial check fits in that window.'
        )
    return cap


def _model(args: Namespace) -> HirschBrown:
    datum = _load(args.datum)
    hb = HirschBrown(datum, _weight_cap(args, datum))
    validate(datum, hb.weight_cap, hodge=hb.hodge)
    return hb


def _header(report: Report, hb: HirschBrown) -> Report:
    datum = hb.datum
    report.section('datum')
    report.add('name', datum.name or '-')
    report.add('dims', tuple(datum.complex.dims))
    report.add('t-degrees', tuple(datum.t_degrees))
    report.add('weight cap', hb.weight_cap)
    report.add('window', hb.ops.window_text())
    report.add('exact total degrees', f'≤ {hb.weight_cap}')
    return report


def _cmd_check(args: Namespace) -> Report:
    datum = _load(args.datum)
    hb = HirschBrown(datum, _weight_cap(args, datum))
    report = _header(Report(), hb)
    validation = validate(datum, hb.weight_cap, raise_on_fatal=False, hodge=hb.hodge)
    report.section('validation').extend_checks(validation.checks)
    if not validation.fatal_passed:
        return report
    hb._validation = validation
    return report.merge(homotopy_identities(datum, hb.weight_cap, raise_on_failure=False, hb=hb))


def _cmd_hodge(args: Namespace) -> Report:
    datum = _load(args.datum)
    c = datum.complex
    h = hodge_data(c)
    report = Report('hodge')
    report.add('name', datum.name or '-')
    report.add('dims', tuple(c.dims))
    report.add('harmonic dims', tuple(h.harmonic_dims()))
    report.add('betti numbers', tuple(betti_numbers(c)))
    for m in c.degrees:
        report.add(f'harmonic C^{m}', ', '.join(c.render(m, v) for v in h.harmonic_basis[m]) or '0')
    report.section('checks')
    for name, passed in h.check():
        report.add_check(IdentityCheck(name, passed))
    return report


def _cmd_dhb(args: Namespace) -> Report:
    hb = _model(args)
    report = _header(Report(), hb).section('d_HB')
    witnesses = []
    for m, k in hb.generators():
        label = hb.generator_label(m, k)
        try:
            report.add(f'd_HB({label})', hb.d_hb(hb.generator(m, k)))
        except TheoremMismatch:
            witnesses.append(label)
    report.add('d_HB vanishes', not witnesses and hb.minimal.dhb_is_zero)
    report.add_check(IdentityCheck(
        '(I⊗H)D̄ = φ d_G φ⁻¹ on generators', not witnesses, witnesses, hb.ops.window_text()
    ))
    return report


def _cmd_cohomology(args: Namespace) -> Report:
    hb = _model(args)
    minimal = cohomology_minimal(hb.minimal)
    cartan = cohomology_cartan(hb.datum, hb.weight_cap)
    report = _header(Report(), hb)
    report.section('minimal model').add('dims', minimal.line())
    report.section('Cartan model').add('dims', cartan.line())
    report.section('agreement')
    report.add('free over R_G', minimal.is_free_over_RG(hb.hodge.harmonic_dims(), hb.datum.t_degrees))
    differ = [str(n) for n, (a, b) in enumerate(zip(minimal.dims, cartan.dims)) if a != b]
    report.add_check(IdentityCheck(
        'dim H^n(minimal model) = dim H^n(Cartan model)',
        not differ and len(minimal.dims) == len(cartan.dims),
        [f'degree {n}' for n in differ],
        f'total degree ≤ {hb.weight_cap}',
    ))
    return report


def _cmd_extend(args: Namespace) -> Report:
    hb = _model(args)
    ext = hb.canonical_extension(args.cls)
    window = hb.ops.window_text()
    h = hb.harmonic(args.cls)
    report = _header(Report(), hb).section('canonical extension')
    report.add('class', args.cls).add('φ⁻¹(h)', ext)
    closed = hb.ops.apply_dG(ext).is_zero()
    report.add_check(IdentityCheck('d_G φ⁻¹(h) = 0', closed, [] if closed else [args.cls], window))
    leading = ext.weight_part(0) == h.weight_part(0)
    report.add_check(IdentityCheck(
        'weight-zero part of φ⁻¹(h) is h', leading, [] if leading else [args.cls], window
    ))
    return report


def _cmd_product(args: Namespace) -> Report:
    hb = _model(args)
    ops = hb.ops
    product = hb.twisted_product(args.left, args.right)
    window = ops.window_text()
    pair = [f'({args.left}, {args.right})']
    x, y = hb.harmonic(args.left), hb.harmonic(args.right)
    report = _header(Report(), hb).section('twisted product')
    report.add('left', args.left).add('right', args.right).add('a ∧̃ b', product)
    report.add('t-weight 0', product.weight_part(0))
    leading = ops.harmonic_part(ops.multiply(x.weight_part(0), y.weight_part(0))).weight_part(0)
    ok = product.weight_part(0) == leading
    report.add_check(IdentityCheck('weight-zero part of a ∧̃ b is H(a∧b)', ok, [] if ok else pair, window))
    try:
        gamma = hb.gamma_witness(args.left, args.right)
    except NoWitnessInWindow as e:
        report.add_check(IdentityCheck('d_G γ = φ⁻¹(a ∧̃ b) − âb̂', False, [str(e)], window))
    else:
        report.add('γ', gamma)
        rhs = ops.phi_inv(product) - ops.multiply(ops.phi_inv(x), ops.phi_inv(y))
        ok = ops.apply_dG(gamma) == rhs
        report.add_check(IdentityCheck('d_G γ = φ⁻¹(a ∧̃ b) − âb̂', ok, [] if ok else pair, window))
    return report


def _cmd_identities(args: Namespace) -> Report:
    hb = _model(args)
    report = _header(Report(), hb)
    report.merge(homotopy_identities(hb.datum, hb.weight_cap, raise_on_failure=False, hb=hb))
    if args.random:
        report.section('random elements').add('seed', args.seed)
        report.add_check(random_transfer_check(hb, args.random, args.seed))
    return report


def _cmd_variants(args: Namespace) -> Report:
    report = Report('variants').add('count', args.count).add('seed', args.seed)
    for datum in random_variants(args.count, args.seed):
        hb = HirschBrown(datum, _weight_cap(args, datum))
        validate(datum, hb.weight_cap, hodge=hb.hodge)
        identities = homotopy_identities(datum, hb.weight_cap, raise_on_failure=False, hb=hb)
        minimal = cohomology_minimal(hb.minimal)
        cartan = cohomology_cartan(datum, hb.weight_cap)
        report.add(datum.name, minimal.line())
        report.add_check(IdentityCheck(
            f'{datum.name}: identities',
            identities.passed,
            [c.name for c in identities.failures],
            hb.ops.window_text(),
        ))
        report.add_check(IdentityCheck(
            f'{datum.name}: cohomology agreement',
            minimal.dims == cartan.dims,
            [] if minimal.dims == cartan.dims else [cartan.line()],
            f'total degree ≤ {hb.weight_cap}',
        ))
    return report


def _rationals(text: Optional[str]) -> Optional[List]:
    if text is None:
        return None
    return [parse_rational(s.strip()) for s in text.split(',')]


def _cmd_cpn_coeffs(args: Namespace) -> Report:
    mu = _rationals(args.mu)
    euler = _rationals(args.euler)
    if euler is not None and len(euler) != len(mu):
        raise ValueError(f'{len(mu)} moment values but {len(euler)} Euler classes.')
    if args.mult is None:
        data = FixedPointData.isolated(mu, euler)
    else:
        mult = [int(s) for s in args.mult.split(',')]
        if len(mult) != len(mu):
            raise ValueError(f'{len(mu)} moment values but {len(mult)} multiplicities.')
        euler = euler if euler is not None else [None] * len(mu)
        data = FixedPointData(sum(mult) - 1, list(zip(mu, mult, euler)))
    return relation_report(data, args.j_max)


def _cmd_cpn_cp2(args: Namespace) -> Report:
    return cp2_weighted(args.a, args.b, parse_rational(args.s))


def _cmd_examples(args: Namespace) -> Report:
    from . import datasets

    report = Report('examples')
    for name in datasets.available():
        datum = datasets.load(name, validate=False)
        report.add(name, f'dims {tuple(datum.complex.dims)}, t-degrees {tuple(datum.t_degrees)}')
    return report


def _cmd_settings(args: Namespace) -> None:
    print(settings)
    logg.print_header()
    if args.versions:
        logg.print_versions()


def _common_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument(
        '--cap', type=int, default=SUPPRESS,
        help='Truncation cap W on the t-weight (default: the datum’s cap, then settings).',
    )
    common.add_argument(
        '--verbosity', default=SUPPRESS,
        help='One of error, warning, info, hint, debug or 0–4.',
    )
    common.add_argument('--logfile', default=SUPPRESS, help='Write logs to this file.')
    return common


def _parser() -> ArgumentParser:
    common = _common_parser()
    parser = ArgumentParser(
        prog='hbmodel',
        description='Minimal Hirsch–Brown models of equivariant cohomology, computed exactly.',
        parents=[common],
    )
    parser.set_defaults(func=None)
    subparsers = parser.add_subparsers(dest='command')

    def add(name: str, func, help: str, datum: bool = False) -> ArgumentParser:
        sub = subparsers.add_parser(name, parents=[common], help=help)
        if datum:
            sub.add_argument('datum', help='Path to a datum document or name of a shipped datum.')
        sub.set_defaults(func=func)
        return sub

    add('check', _cmd_check, 'Validate a datum and run every identity.', datum=True)
    add('hodge', _cmd_hodge, 'Hodge decomposition of the underlying complex.', datum=True)
    add('dhb', _cmd_dhb, 'd_HB on the harmonic generators, computed twice.', datum=True)
    add('cohomology', _cmd_cohomology, 'Cohomology of the minimal and Cartan models.', datum=True)
    sub = add('extend', _cmd_extend, 'Canonical equivariant extension of a class.', datum=True)
    sub.add_argument('--class', dest='cls', required=True, help='Label of a harmonic basis element.')
    sub = add('product', _cmd_product, 'Twisted product of two classes.', datum=True)
    sub.add_argument('--left', required=True)
    sub.add_argument('--right', required=True)
    sub = add('identities', _cmd_identities, 'Homotopy and perturbation identities.', datum=True)
    sub.add_argument('--random', type=int, default=50, help='Random elements for the transfer identity.')
    sub.add_argument('--seed', type=int, default=0)
    sub = add('variants', _cmd_variants, 'Identity suite on generated variants.')
    sub.add_argument('--count', type=int, default=20)
    sub.add_argument('--seed', type=int, default=0)
    sub = add('cpn-coeffs', _cmd_cpn_coeffs, 'Relation coefficients from fixed-point data.')
    sub.add_argument('--mu', required=True, help='Moment values, comma separated, e.g. --mu=-4,-1,5.')
    sub.add_argument('--euler', default=None, help='Euler classes, comma separated.')
    sub.add_argument('--mult', default=None, help='Multiplicities, comma separated.')
    sub.add_argument('--j-max', type=int, default=None)
    sub = add('cpn-cp2', _cmd_cpn_cp2, 'The weighted circle action on CP².')
    sub.add_argument('--a', type=int, required=True)
    sub.add_argument('--b', type=int, required=True)
    sub.add_argument('--s', default='1')
    add('examples', _cmd_examples, 'List the shipped data.')
    sub = add('settings', _cmd_settings, 'Print the configuration and package versions.')
    sub.add_argument('--versions', action='store_true', help='Also list every imported package.')
    return parser


def _apply_flags(args: Namespace):
    v = getattr(args, 'verbosity', None)
    if v is not None:
        settings.verbosity = int(v) if v.isdigit() else v
    if getattr(args, 'logfile', None) is not None:
        settings.logfile = args.logfile


def run(args: Namespace) -> int:
    """\
    Execute a parsed command and write its report to stdout.

    Returns
    -------
    The exit code.
    """
    verbosity, logfile = settings.verbosity, settings.logfile
    try:
        _apply_flags(args)
        report = args.func(args)
    except _FAILURES as e:
        logg.error(f'{type(e).__name__}: {e}')
        return 1
    except _INPUT_ERRORS as e:
        logg.error(f'{type(e).__name__}: {e}')
        return 2
    finally:
        settings.verbosity, settings.logfile = verbosity, logfile
    if report is None:
        return 0
    sys.stdout.write(report.render())
    return 0 if report.passed else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    """\
    Run an hbmodel command.

    Parameters
    ----------
    argv
        Arguments without the program name. Defaults to `sys.argv[1:]`.
    """
    parser = _parser()
    args = parser.parse_args(argv)
    if args.func is None:
        parser.print_help()
        return 0
    return run(args)


def console_main():
    """\
    This serves as CLI entry point and will not show a Python traceback
    if a called command fails
    """
    sys.exit(main())
