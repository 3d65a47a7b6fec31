#!/usr/bin/env python3
#
# (c) 2026 Yoichi Tanibayashi
#
"""
Classical vs quantum scattering by a finite solenoid

usage: solscat.py [--config FILE] SUBCOMMAND [options]

  classical   classical dsigma/dtheta on a theta grid
  quantum     AB / small angle / Born dsigma/dtheta on a theta grid
  mc          Monte Carlo histogram against the analytic DCS
  asymmetry   asymmetry A(rho_L), single value or sweep
  limit-scan  hbar -> 0 scan of the Born DCS
  compare     classical and Born DCS on one grid
  amplitude   spinor amplitude DCS against the closed form

Exit status: 0 all checks passed, 1 a check failed, 2 usage error,
3 numerical failure, 4 output could not be written.
"""
__author__ = 'Yoichi Tanibayashi'
__date__   = '2026'
__version__ = '0.1.0'

import csv
import datetime
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Optional
import click
from click.core import ParameterSource
import numpy as np
import params
import classical
import trajsim
import quantum
import dirac
from MyLogger import get_logger

TWO_PI = 2 * math.pi

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

ENV_OUTDIR = 'SOLSCAT_OUTDIR'

MODULES = ('params', 'classical', 'trajsim', 'quantum', 'dirac')

TOTAL_RTOL = 1e-3
ASYMMETRY_TOL = 1e-3
SLOPE_TOL = 0.02
AMPLITUDE_RTOL = 1e-8
MC_MIN_FRACTION = 0.99
MC_N_SIGMA = 4.0


class Radians(click.ParamType):
    """ angle in radians; degree input is refused """
    name = 'radians'

    DEGREE_MARKERS = ('deg', 'degree', 'degrees', '°', 'd')

    def convert(self, value, param, ctx):
        if isinstance(value, (int, float)):
            return float(value)

        text = str(value).strip()
        low = text.lower()
        for mark in sorted(self.DEGREE_MARKERS, key=len, reverse=True):
            if low.endswith(mark):
                num = low[:-len(mark)].strip()
                try:
                    hint = ' (%s deg = %.10g rad)' % (
                        num, math.radians(float(num)))
                except ValueError:
                    hint = ''
                self.fail('%r: angles are radians only%s' % (text, hint),
                          param, ctx)
        try:
            return float(text)
        except ValueError:
            self.fail('%r: not a number' % (text), param, ctx)


RADIANS = Radians()


@dataclass
class ScanResult:
    columns: list
    rows: list
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.columns = [str(c) for c in self.columns]
        self.rows = [tuple(float(v) for v in r) for r in self.rows]
        self.metadata = {str(k): str(v) for k, v in self.metadata.items()}
        for i, r in enumerate(self.rows):
            if len(r) != len(self.columns):
                raise ValueError('row %d: %d values for %d columns'
                                 % (i, len(r), len(self.columns)))

    def column(self, name):
        idx = self.columns.index(name)
        return np.array([r[idx] for r in self.rows])


def write_csv(result, path):
    with open(path, 'w', newline='') as f:
        for key, val in result.metadata.items():
            f.write('#%s=%s\n' % (key, val))
        writer = csv.writer(f)
        writer.writerow(result.columns)
        for row in result.rows:
            writer.writerow(['%.17g' % v for v in row])


def read_csv(path):
    """
    Returns
    -------
    ScanResult
    """
    metadata = {}
    lines = []
    with open(path, newline='') as f:
        for line in f:
            if line.startswith('#'):
                key, _, val = line[1:].rstrip('\r\n').partition('=')
                metadata[key] = val
            elif line.strip():
                lines.append(line)

    reader = csv.reader(lines)
    columns = next(reader)
    rows = [tuple(float(v) for v in r) for r in reader]
    return ScanResult(columns=columns, rows=rows, metadata=metadata)


def write_json(result, path):
    with open(path, 'w') as f:
        json.dump({'metadata': result.metadata,
                   'columns': result.columns,
                   'rows': [list(r) for r in result.rows]}, f, indent=2)
        f.write('\n')


PLOT_HEADER = '''#!/usr/bin/env python3
#
# generated by solscat %(version)s: %(subcommand)s
#
import os
import numpy as np
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))
data = np.genfromtxt(os.path.join(HERE, %(csv)r), delimiter=',',
                     names=True, comments='#')

fig, ax = plt.subplots()
'''

PLOT_LINES = '''for name in %(ycols)r:
    ax.plot(data[%(xcol)r], data[name], label=name)
ax.set_xlabel(%(xcol)r)
ax.set_ylabel('dsigma/dtheta [R]')
'''

PLOT_LOGLOG = '''for name in %(ycols)r:
    ax.loglog(data[%(xcol)r], data[name], label=name)
ax.set_xlabel('lambda (hbar scale)')
ax.set_ylabel('dsigma/dtheta [R]')
ax.annotate('fitted slope = %%s' %% %(slope)r, xy=(0.05, 0.9),
            xycoords='axes fraction')
'''

PLOT_FOOTER = '''ax.legend()
ax.set_title(%(title)r)
fig.savefig(os.path.join(HERE, %(png)r))
plt.show()
'''


def emit_plot_script(result, path, csv_path):
    """
    Write a matplotlib script that reads csv_path relative to itself.
    """
    if not result.rows:
        raise ValueError('empty result: nothing to plot')

    sub = result.metadata.get('subcommand', '')
    xcol = result.columns[0]
    ycols = [c for c in result.columns[1:]
             if c not in ('std_error', 'counts', 'bin_hi', 'rel_dev')]
    if sub == 'limit-scan':
        ycols = [c for c in ycols if c != 'dcs_classical']

    rel = os.path.relpath(os.path.abspath(csv_path),
                          os.path.dirname(os.path.abspath(path)))
    png = os.path.splitext(os.path.basename(path))[0] + '.png'
    val = {'version': __version__, 'subcommand': sub, 'csv': rel,
           'xcol': xcol, 'ycols': ycols, 'png': png,
           'slope': result.metadata.get('fitted_slope', '?'),
           'title': '%s %s' % (sub, result.metadata.get('params', ''))}

    body = PLOT_HEADER % val
    if sub == 'limit-scan':
        body += PLOT_LOGLOG % val
    else:
        body += PLOT_LINES % val
    body += PLOT_FOOTER % val

    with open(path, 'w') as f:
        f.write(body)
    return path


@dataclass
class Resolved:
    rho_L: Optional[float] = None
    s_p: Optional[float] = None
    s_Phi: Optional[float] = None
    s_m: Optional[float] = None
    phys: Optional[params.PhysicalParams] = None

    def describe(self):
        items = [('rho_L', self.rho_L), ('s_p', self.s_p),
                 ('s_Phi', self.s_Phi), ('s_m', self.s_m)]
        return ' '.join('%s=%.17g' % (k, v) for k, v in items
                        if v is not None)


@dataclass
class RunConfig:
    subcommand: str
    resolved: Resolved
    theta_min: float = 0.0
    theta_max: float = TWO_PI
    theta_steps: int = 360
    samples: int = 1000000
    bins: int = 256
    seed: int = 0
    workers: int = 1
    out: Optional[str] = None
    fmt: str = 'csv'
    plot_script: bool = False
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.theta_steps < 1:
            raise click.UsageError('theta_steps=%r: must be >= 1'
                                   % (self.theta_steps))
        if not 0 <= self.theta_min < self.theta_max <= TWO_PI:
            raise click.UsageError(
                'theta grid [%r, %r]: needs 0 <= min < max <= 2pi'
                % (self.theta_min, self.theta_max))
        if self.plot_script and self.fmt != 'csv':
            raise click.UsageError('--plot-script needs --format csv')

    def theta_grid(self):
        """ cell centres, so neither 0 nor 2pi is hit """
        width = (self.theta_max - self.theta_min) / self.theta_steps
        return self.theta_min + (np.arange(self.theta_steps) + 0.5) * width

    def out_path(self):
        if self.out:
            return self.out
        outdir = os.environ.get(ENV_OUTDIR, '.')
        return os.path.join(outdir, '%s.%s' % (self.subcommand, self.fmt))


def resolve_params(rho_l=None, s_p=None, s_phi=None, s_m=None,
                   charge=None, flux=None, momentum=None, radius=None,
                   mass=None, hbar=None, light_speed=None):
    """
    Exactly one of: rho_L, (s_p, s_Phi), physical parameters.

    Returns
    -------
    Resolved
    """
    phys_given = [v for v in (charge, flux, momentum, radius)
                  if v is not None]
    given = [rho_l is not None,
             s_p is not None or s_phi is not None,
             bool(phys_given)]
    if sum(given) != 1:
        raise click.UsageError('give exactly one of --rho-l, --s-p/--s-phi '
                               'or the physical parameters')

    if rho_l is not None:
        return Resolved(rho_L=rho_l)

    if given[1]:
        if s_p is None or s_phi is None:
            raise click.UsageError('--s-p and --s-phi go together')
        rho = None
        if s_phi != 0:
            rho = params.DimensionlessParams.from_actions(s_p, s_phi).rho_L
        return Resolved(rho_L=rho, s_p=s_p, s_Phi=s_phi, s_m=s_m)

    if len(phys_given) != 4:
        raise click.UsageError('physical parameters need --charge, --flux, '
                               '--momentum and --radius')
    phys = params.PhysicalParams(
        e=charge, Phi=flux, p=momentum, R=radius,
        m=0.0 if mass is None else mass,
        hbar=1.0 if hbar is None else hbar,
        c=1.0 if light_speed is None else light_speed)
    d = params.to_dimensionless(phys)
    return Resolved(rho_L=d.rho_L, s_p=d.s_p, s_Phi=d.s_Phi,
                    s_m=d.s_m if d.s_m > 0 else s_m, phys=phys)


class App:
    _log = None

    def __init__(self, config, debug=False):
        self._dbg = debug
        __class__._log = get_logger(__class__.__name__, self._dbg)
        self._log.debug('config=%s', config)

        for name in MODULES:
            get_logger(name, self._dbg)

        self._cfg = config
        self._checks = []
        self._files = []

    def main(self):
        self._log.debug('')

        sub = self._cfg.subcommand.replace('-', '_')
        result = getattr(self, '_run_' + sub)()
        self._write(result)

        failed = [c for c in self._checks if not c[1]]
        for name, ok, detail in self._checks:
            if ok:
                self._log.info('check %s: ok (%s)', name, detail)
            else:
                self._log.error('check %s: FAILED (%s)', name, detail)

        if failed:
            return EXIT_CHECK_FAILED
        return EXIT_OK

    def end(self):
        self._log.debug('')
        for path in self._files:
            print(path)

    def _check(self, name, ok, detail):
        self._checks.append((name, bool(ok), detail))

    def _metadata(self, **extra):
        meta = {'subcommand': self._cfg.subcommand,
                'version': __version__,
                'params': self._cfg.resolved.describe(),
                'seed': self._cfg.seed}
        meta.update(extra)
        meta['timestamp'] = datetime.datetime.now().isoformat(
            timespec='seconds')
        return meta

    def _need(self, *names):
        res = self._cfg.resolved
        missing = [n for n in names if getattr(res, n) is None]
        if missing:
            raise click.UsageError('%s needs %s' % (
                self._cfg.subcommand, ', '.join(missing)))
        return res

    def _write(self, result):
        path = self._cfg.out_path()
        outdir = os.path.dirname(path)
        if outdir:
            os.makedirs(outdir, exist_ok=True)

        if self._cfg.fmt == 'json':
            write_json(result, path)
        else:
            write_csv(result, path)
        self._files.append(path)
        self._log.info('%d rows -> %s', len(result.rows), path)

        if self._cfg.plot_script:
            script = os.path.splitext(path)[0] + '_plot.py'
            emit_plot_script(result, script, path)
            self._files.append(script)

    def _run_classical(self):
        res = self._need('rho_L')
        grid = self._cfg.theta_grid()
        vals = [classical.dcs_classical(float(t), res.rho_L) for t in grid]

        width = (self._cfg.theta_max - self._cfg.theta_min) \
            / self._cfg.theta_steps
        riemann = float(np.sum(np.where(np.isfinite(vals), vals, 0.0))
                        * width)
        total = classical.total_cross_section(res.rho_L)
        self._check('total_cross_section',
                    abs(total - 2) <= TOTAL_RTOL * 2,
                    'sigma=%.12g' % (total))

        return ScanResult(columns=['theta', 'dcs_classical'],
                          rows=list(zip(grid, vals)),
                          metadata=self._metadata(sigma_total=total,
                                                  riemann_sum=riemann))

    def _run_quantum(self):
        res = self._need('s_p', 's_Phi')
        kinds = self._cfg.options.get('kinds') or ('ab', 'll', 'born')
        grid = self._cfg.theta_grid()

        cols = [[quantum.dcs(k, float(t), res.s_p, res.s_Phi) for t in grid]
                for k in kinds]
        meta = {}
        cut = self._cfg.options.get('theta_cut')
        if cut:
            for k in kinds:
                meta['sigma_reg_%s' % (k)] = \
                    quantum.partial_total_cross_section(k, res.s_p,
                                                        res.s_Phi, cut)
            if 'ab' in kinds:
                want = quantum.ab_partial_total_closed_form(res.s_p,
                                                            res.s_Phi, cut)
                got = meta['sigma_reg_ab']
                self._check('ab_closed_form',
                            abs(got - want) <= 1e-8 * max(abs(want), 1e-300),
                            'quad=%.12g closed=%.12g' % (got, want))

        return ScanResult(columns=['theta'] + ['dcs_%s' % k for k in kinds],
                          rows=list(zip(grid, *cols)),
                          metadata=self._metadata(theta_cut=cut, **meta))

    def _run_mc(self):
        res = self._need('rho_L')
        cfg = self._cfg
        dist = trajsim.mc_estimate_dcs(res.rho_L, cfg.samples, cfg.bins,
                                       cfg.seed, workers=cfg.workers)
        frac, expected = trajsim.compare_with_analytic(dist, MC_N_SIGMA)
        self._check('mc_vs_analytic', frac >= MC_MIN_FRACTION,
                    'fraction within %g sigma=%.4f' % (MC_N_SIGMA, frac))

        _, sigma_minus = dist.sigma_split()
        if res.rho_L >= 1:
            self._check('sigma_minus_zero', sigma_minus == 0,
                        'sigma_minus=%g' % (sigma_minus))

        a, a_err = dist.asymmetry()
        rows = zip(dist.bin_edges[:-1], dist.bin_edges[1:],
                   dist.dcs_estimate, dist.std_error, expected, dist.counts)
        meta = self._metadata(samples=cfg.samples, bins=cfg.bins,
                              asymmetry=a, asymmetry_error=a_err,
                              fraction_ok=frac)
        return ScanResult(columns=['bin_lo', 'bin_hi', 'dcs_mc', 'std_error',
                                   'dcs_expected', 'counts'],
                          rows=list(rows), metadata=meta)

    def _run_asymmetry(self):
        opt = self._cfg.options
        if opt.get('rho_min') is not None or opt.get('rho_max') is not None:
            if opt.get('rho_min') is None or opt.get('rho_max') is None:
                raise click.UsageError('--rho-min and --rho-max go together')
            rhos = np.linspace(opt['rho_min'], opt['rho_max'],
                               opt.get('rho_steps') or 10)
        else:
            rhos = [self._need('rho_L').rho_L]

        rows = []
        for rho in rhos:
            rep = classical.asymmetry(float(rho))
            want = classical.asymmetry_analytic(float(rho))
            self._check('asymmetry(rho_L=%.6g)' % (rho),
                        abs(rep.A - want) <= ASYMMETRY_TOL,
                        'A=%.12g analytic=%.12g' % (rep.A, want))
            rows.append((rho, rep.sigma_plus, rep.sigma_minus, rep.A, want))

        return ScanResult(columns=['rho_L', 'sigma_plus', 'sigma_minus', 'A',
                                   'A_analytic'],
                          rows=rows, metadata=self._metadata())

    def _run_limit_scan(self):
        res = self._cfg.resolved
        phys = res.phys
        if phys is None:
            self._need('s_p', 's_Phi')
            # R = hbar = c = e = 1 reproduces the given action variables
            phys = params.PhysicalParams(e=1.0, Phi=res.s_Phi, p=res.s_p,
                                         R=1.0)
        opt = self._cfg.options
        lams = np.geomspace(opt['lambda_max'], opt['lambda_min'],
                            opt['lambda_steps'])
        scan = quantum.hbar_scan(phys, opt['theta'], lams,
                                 use_asymptotic=opt.get('asymptotic', False))

        self._check('envelope_slope',
                    abs(scan.fitted_slope - 2) <= SLOPE_TOL,
                    'slope=%.6f' % (scan.fitted_slope))
        cl = scan.classical_values
        self._check('classical_hbar_independent', np.all(cl == cl[0]),
                    'dcs_classical=%.17g' % (cl[0]))

        rows = zip(scan.lambda_grid, scan.dcs_values, scan.envelope_values,
                   scan.classical_values)
        meta = self._metadata(theta=opt['theta'],
                              fitted_slope='%.6f' % (scan.fitted_slope))
        return ScanResult(columns=['lambda', 'dcs_born', 'envelope',
                                   'dcs_classical'],
                          rows=list(rows), metadata=meta)

    def _run_compare(self):
        res = self._need('rho_L', 's_p', 's_Phi')
        grid = self._cfg.theta_grid()
        rows = [(t, classical.dcs_classical(float(t), res.rho_L),
                 quantum.dcs('born', float(t), res.s_p, res.s_Phi))
                for t in grid]

        a_cl = math.copysign(classical.asymmetry(abs(res.rho_L)).A,
                             res.rho_L)
        meta = self._metadata(asymmetry_classical=a_cl,
                              asymmetry_quantum=0.0)
        return ScanResult(columns=['theta', 'dcs_classical', 'dcs_born'],
                          rows=rows, metadata=meta)

    def _run_amplitude(self):
        res = self._need('s_p', 's_Phi')
        opt = self._cfg.options
        s_m = res.s_m if res.s_m else 1.0
        grid = self._cfg.theta_grid()

        rows = []
        for t in grid:
            amp = dirac.m1_dcs(float(t), res.s_p, res.s_Phi,
                               polarized=opt.get('polarized', False),
                               s_m=s_m,
                               initial_spin=opt.get('initial_spin', +1))
            born = quantum.dcs('born', float(t), res.s_p, res.s_Phi)
            dev = abs(amp.dcs - born) / born if born else abs(amp.dcs)
            rows.append((t, amp.dcs, born, dev))

        max_dev = max(r[3] for r in rows)
        self._check('m1_vs_born', max_dev <= AMPLITUDE_RTOL,
                    'max relative deviation=%.3e' % (max_dev))
        meta = self._metadata(max_rel_dev=max_dev,
                              polarized=opt.get('polarized', False))
        return ScanResult(columns=['theta', 'dcs_m1', 'dcs_born', 'rel_dev'],
                          rows=rows, metadata=meta)


CONTEXT_SETTINGS = dict(help_option_names=['-h', '--help'])


def _load_config(ctx, param, value):
    if value is None:
        return
    with open(value) as f:
        conf = json.load(f)
    if not isinstance(conf, dict):
        raise click.BadParameter('top level must be an object', ctx, param)
    default_map = dict(ctx.default_map or {})
    default_map.update(conf)
    ctx.default_map = default_map


def _param_options(func):
    opts = [
        click.option('--rho-l', 'rho_l', type=float, default=None,
                     help='Larmor radius in units of R'),
        click.option('--s-p', 's_p', type=float, default=None,
                     help='pR/hbar'),
        click.option('--s-phi', 's_phi', type=float, default=None,
                     help='e Phi/(hbar c)'),
        click.option('--s-m', 's_m', type=float, default=None,
                     help='mcR/hbar (spinor mass)'),
        click.option('--charge', type=float, default=None,
                     help='e [esu]'),
        click.option('--flux', type=float, default=None,
                     help='Phi [Gauss cm^2]'),
        click.option('--momentum', type=float, default=None,
                     help='p [g cm/s]'),
        click.option('--radius', type=float, default=None,
                     help='R [cm]'),
        click.option('--mass', type=float, default=None, help='m [g]'),
        click.option('--hbar', type=float, default=None,
                     help='hbar [erg s], default 1'),
        click.option('--light-speed', 'light_speed', type=float,
                     default=None, help='c [cm/s], default 1'),
    ]
    for opt in reversed(opts):
        func = opt(func)
    return func


def _grid_options(func):
    opts = [
        click.option('--theta-min', 'theta_min', type=RADIANS, default=0.0,
                     help='grid start [rad]'),
        click.option('--theta-max', 'theta_max', type=RADIANS,
                     default=TWO_PI, help='grid end [rad]'),
        click.option('--theta-steps', 'theta_steps', type=int, default=360,
                     help='number of grid cells'),
    ]
    for opt in reversed(opts):
        func = opt(func)
    return func


def _output_options(func):
    opts = [
        click.option('--out', '-o', 'out', type=click.Path(dir_okay=False),
                     default=None,
                     help='output file, default $%s/<subcommand>.<format>'
                     % (ENV_OUTDIR)),
        click.option('--format', '-f', 'fmt',
                     type=click.Choice(['csv', 'json']), default='csv',
                     help='output format'),
        click.option('--plot-script', '-p', 'plot_script', is_flag=True,
                     default=False, help='also write a matplotlib script'),
        click.option('--debug', '-d', 'debug', is_flag=True, default=False,
                     help='debug flag'),
    ]
    for opt in reversed(opts):
        func = opt(func)
    return func


_PARAM_KEYS = ('rho_l', 's_p', 's_phi', 's_m', 'charge', 'flux', 'momentum',
               'radius', 'mass', 'hbar', 'light_speed')


def _override_config_params(ctx, p):
    """
    Parameters given on the command line replace the whole
    parameterization from the config file.
    """
    source = {k: ctx.get_parameter_source(k) for k in p}
    if not any(s == ParameterSource.COMMANDLINE for s in source.values()):
        return p
    return {k: None if source[k] == ParameterSource.DEFAULT_MAP else v
            for k, v in p.items()}


def _make_config(ctx, subcommand, kw, optional_params=False, **options):
    p = {k: kw.pop(k) for k in _PARAM_KEYS if k in kw}
    p = _override_config_params(ctx, p)
    debug = kw.pop('debug', False) or ctx.obj.get('debug', False)
    if optional_params and all(v is None for v in p.values()):
        resolved = Resolved()
    else:
        resolved = resolve_params(**p)
    cfg = RunConfig(subcommand=subcommand, resolved=resolved,
                    options=options, **kw)
    return cfg, debug


def _run_app(cfg, debug):
    logger = get_logger(__name__, debug)
    logger.debug('cfg=%s', cfg)

    app = App(cfg, debug=debug)
    try:
        return app.main()
    finally:
        logger.debug('finally')
        app.end()
        logger.info('done')


@click.group(context_settings=CONTEXT_SETTINGS, help='''
Classical vs quantum scattering by a finite solenoid.

Physical inputs are Gaussian units (esu, Gauss cm^2, g cm/s, cm, g,
erg s, cm/s).  Angles are radians.
''')
@click.option('--config', '-c', type=click.Path(exists=True, dir_okay=False),
              callback=_load_config, is_eager=True, expose_value=False,
              help='JSON file of option defaults, keyed by subcommand')
@click.option('--debug', '-d', 'debug', is_flag=True, default=False,
              help='debug flag')
@click.version_option(__version__)
@click.pass_context
def cli(ctx, debug):
    ctx.ensure_object(dict)
    ctx.obj['debug'] = debug


@cli.command('classical', help='classical dsigma/dtheta on a theta grid')
@_param_options
@_grid_options
@_output_options
@click.pass_context
def classical_cmd(ctx, **kw):
    cfg, debug = _make_config(ctx, 'classical', kw)
    return _run_app(cfg, debug)


@cli.command('quantum', help='quantum dsigma/dtheta on a theta grid')
@_param_options
@_grid_options
@click.option('--kind', '-k', 'kinds', multiple=True,
              type=click.Choice(sorted(quantum.QUANTUM_DCS)),
              help='DCS to tabulate, repeatable (default all)')
@click.option('--theta-cut', 'theta_cut', type=RADIANS, default=None,
              help='regulator for the total cross section [rad]')
@_output_options
@click.pass_context
def quantum_cmd(ctx, kinds, theta_cut, **kw):
    cfg, debug = _make_config(ctx, 'quantum', kw, kinds=tuple(kinds),
                              theta_cut=theta_cut)
    return _run_app(cfg, debug)


@cli.command('mc', help='Monte Carlo histogram against the analytic DCS')
@_param_options
@click.option('--samples', '-n', type=int, default=1000000,
              help='number of particles')
@click.option('--bins', '-b', type=int, default=256,
              help='number of theta bins')
@click.option('--seed', '-s', type=int, default=0, help='RNG seed')
@click.option('--workers', '-w', type=int, default=1,
              help='threads; results do not depend on it')
@_output_options
@click.pass_context
def mc(ctx, **kw):
    cfg, debug = _make_config(ctx, 'mc', kw)
    return _run_app(cfg, debug)


@cli.command('asymmetry', help='classical asymmetry A(rho_L)')
@_param_options
@click.option('--rho-min', 'rho_min', type=float, default=None,
              help='sweep start')
@click.option('--rho-max', 'rho_max', type=float, default=None,
              help='sweep end')
@click.option('--rho-steps', 'rho_steps', type=int, default=10,
              help='sweep points')
@_output_options
@click.pass_context
def asymmetry(ctx, rho_min, rho_max, rho_steps, **kw):
    sweep = rho_min is not None or rho_max is not None
    cfg, debug = _make_config(ctx, 'asymmetry', kw, optional_params=sweep,
                              rho_min=rho_min,
                              rho_max=rho_max, rho_steps=rho_steps)
    return _run_app(cfg, debug)


@cli.command('limit-scan', help='hbar -> 0 scan of the Born DCS')
@_param_options
@click.option('--theta', '-t', type=RADIANS, default=math.pi / 2,
              help='scattering angle [rad]')
@click.option('--lambda-min', 'lambda_min', type=float, default=1e-3,
              help='smallest hbar scale factor')
@click.option('--lambda-max', 'lambda_max', type=float, default=1e-1,
              help='largest hbar scale factor')
@click.option('--lambda-steps', 'lambda_steps', type=int, default=21,
              help='number of scale factors')
@click.option('--asymptotic', is_flag=True, default=False,
              help='use the large argument form')
@_output_options
@click.pass_context
def limit_scan(ctx, theta, lambda_min, lambda_max, lambda_steps, asymptotic,
               **kw):
    cfg, debug = _make_config(ctx, 'limit-scan', kw, theta=theta,
                              lambda_min=lambda_min, lambda_max=lambda_max,
                              lambda_steps=lambda_steps,
                              asymptotic=asymptotic)
    return _run_app(cfg, debug)


@cli.command('compare', help='classical and Born DCS on one grid')
@_param_options
@_grid_options
@_output_options
@click.pass_context
def compare(ctx, **kw):
    cfg, debug = _make_config(ctx, 'compare', kw)
    return _run_app(cfg, debug)


@cli.command('amplitude',
             help='first order spinor amplitude against the closed form')
@_param_options
@_grid_options
@click.option('--polarized', is_flag=True, default=False,
              help='fix the initial spin instead of averaging')
@click.option('--initial-spin', 'initial_spin', type=click.Choice(['+1',
                                                                   '-1']),
              default='+1', help='initial z-spin for --polarized')
@_output_options
@click.pass_context
def amplitude(ctx, polarized, initial_spin, **kw):
    cfg, debug = _make_config(ctx, 'amplitude', kw, polarized=polarized,
                              initial_spin=int(initial_spin))
    return _run_app(cfg, debug)


def run(argv=None):
    """
    Returns
    -------
    int     exit status
    """
    logger = get_logger(__name__, False)
    try:
        rv = cli.main(args=argv, prog_name='solscat', standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        return EXIT_USAGE
    except (classical.QuadratureError, trajsim.PropagationError,
            ArithmeticError, dirac.PoleProximityError) as e:
        logger.error('%s:%s', type(e).__name__, e)
        return EXIT_NUMERICAL
    except ValueError as e:
        logger.error('%s:%s', type(e).__name__, e)
        return EXIT_USAGE
    except OSError as e:
        logger.error('%s:%s', type(e).__name__, e)
        return EXIT_IO

    if isinstance(rv, int):
        return rv
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
