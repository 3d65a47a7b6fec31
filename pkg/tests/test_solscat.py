#!/usr/bin/env python3
#
# (c) 2026 Yoichi Tanibayashi
#
"""
solscat: subcommands, exit status, output files and configuration
"""
import json
import math
import pytest
import solscat


def lines_without_timestamp(path):
    with open(path) as f:
        return [ln for ln in f if not ln.startswith('#timestamp=')]


def test_classical_rows(tmp_path):
    out = tmp_path / 'classical.csv'
    rc = solscat.run(['classical', '--rho-l', '0.5', '--theta-steps', '360',
                      '-o', str(out)])
    assert rc == solscat.EXIT_OK

    res = solscat.read_csv(str(out))
    assert res.columns == ['theta', 'dcs_classical']
    assert len(res.rows) == 360
    assert res.metadata['subcommand'] == 'classical'
    assert float(res.metadata['sigma_total']) == pytest.approx(2.0, rel=1e-3)
    assert float(res.metadata['riemann_sum']) == pytest.approx(2.0, rel=1e-3)
    theta = res.column('theta')
    assert 0 < theta[0] < theta[-1] < 2 * math.pi


def test_csv_round_trip(tmp_path):
    result = solscat.ScanResult(columns=['x', 'y'],
                                rows=[(0.1, 1 / 3), (0.2, math.pi)],
                                metadata={'subcommand': 'test', 'n': 2})
    path = tmp_path / 'r.csv'
    solscat.write_csv(result, str(path))
    back = solscat.read_csv(str(path))
    assert back.columns == result.columns
    assert back.rows == result.rows
    assert back.metadata == {'subcommand': 'test', 'n': '2'}


def test_scan_result_rejects_ragged():
    with pytest.raises(ValueError):
        solscat.ScanResult(columns=['a', 'b'], rows=[(1.0,)])


def test_json_output(tmp_path):
    out = tmp_path / 'q.json'
    rc = solscat.run(['quantum', '--s-p', '1', '--s-phi', '0.5',
                      '--theta-steps', '8', '-k', 'ab', '-k', 'born',
                      '-f', 'json', '-o', str(out)])
    assert rc == solscat.EXIT_OK
    with open(out) as f:
        doc = json.load(f)
    assert doc['columns'] == ['theta', 'dcs_ab', 'dcs_born']
    assert len(doc['rows']) == 8
    assert doc['metadata']['subcommand'] == 'quantum'


def test_quantum_theta_cut_check(tmp_path):
    out = tmp_path / 'q.csv'
    rc = solscat.run(['quantum', '--s-p', '2', '--s-phi', '1.1',
                      '--theta-steps', '4', '--theta-cut', '0.1',
                      '-o', str(out)])
    assert rc == solscat.EXIT_OK
    res = solscat.read_csv(str(out))
    assert 'sigma_reg_ab' in res.metadata


def test_asymmetry_single(tmp_path):
    out = tmp_path / 'a.csv'
    rc = solscat.run(['asymmetry', '--rho-l', '0.5', '-o', str(out)])
    assert rc == solscat.EXIT_OK
    res = solscat.read_csv(str(out))
    assert res.column('A')[0] == pytest.approx(0.5, abs=1e-3)


def test_asymmetry_sweep(tmp_path):
    out = tmp_path / 'a.csv'
    rc = solscat.run(['asymmetry', '--rho-min', '0.2', '--rho-max', '2.0',
                      '--rho-steps', '4', '-o', str(out)])
    assert rc == solscat.EXIT_OK
    res = solscat.read_csv(str(out))
    assert len(res.rows) == 4
    assert res.column('A')[-1] == 1.0


def test_mc_reproducible(tmp_path):
    paths = [tmp_path / 'mc1.csv', tmp_path / 'mc2.csv']
    for path in paths:
        rc = solscat.run(['mc', '--rho-l', '2', '-n', '20000', '-b', '32',
                          '-s', '9', '-o', str(path)])
        assert rc in (solscat.EXIT_OK, solscat.EXIT_CHECK_FAILED)
    assert lines_without_timestamp(paths[0]) == \
        lines_without_timestamp(paths[1])
    res = solscat.read_csv(str(paths[0]))
    assert res.column('counts').sum() == 20000


def test_degrees_rejected(tmp_path):
    rc = solscat.run(['quantum', '--s-p', '1', '--s-phi', '1',
                      '--theta-cut', '30deg', '-o', str(tmp_path / 'x.csv')])
    assert rc == solscat.EXIT_USAGE
    rc = solscat.run(['limit-scan', '--s-p', '1', '--s-phi', '0.01',
                      '-t', '90°', '-o', str(tmp_path / 'x.csv')])
    assert rc == solscat.EXIT_USAGE


@pytest.mark.parametrize('argv', [
    ['classical'],
    ['classical', '--rho-l', '0.5', '--s-p', '1', '--s-phi', '1'],
    ['quantum', '--s-p', '1'],
    ['classical', '--rho-l', '0.5', '--theta-steps', '0'],
    ['classical', '--rho-l', '0.5', '-f', 'json', '-p'],
    ['compare', '--rho-l', '0.5'],
])
def test_usage_errors(tmp_path, argv):
    rc = solscat.run(argv + ['-o', str(tmp_path / 'x.out')])
    assert rc == solscat.EXIT_USAGE


def test_config_defaults_and_override(tmp_path):
    conf = tmp_path / 'conf.json'
    conf.write_text(json.dumps({
        'classical': {'rho_l': 0.5, 'theta_steps': 12},
    }))
    out = tmp_path / 'c.csv'

    rc = solscat.run(['-c', str(conf), 'classical', '-o', str(out)])
    assert rc == solscat.EXIT_OK
    assert len(solscat.read_csv(str(out)).rows) == 12

    rc = solscat.run(['-c', str(conf), 'classical', '--theta-steps', '24',
                      '-o', str(out)])
    assert rc == solscat.EXIT_OK
    res = solscat.read_csv(str(out))
    assert len(res.rows) == 24
    assert 'rho_L=0.5' in res.metadata['params']


def test_outdir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv(solscat.ENV_OUTDIR, str(tmp_path / 'results'))
    rc = solscat.run(['classical', '--rho-l', '2', '--theta-steps', '10'])
    assert rc == solscat.EXIT_OK
    assert (tmp_path / 'results' / 'classical.csv').exists()


@pytest.mark.parametrize('argv, marker', [
    (['classical', '--rho-l', '0.5', '--theta-steps', '20'], 'ax.plot'),
    (['compare', '--s-p', '1', '--s-phi', '0.5', '--theta-steps', '20'],
     'dcs_born'),
    (['limit-scan', '--s-p', '1', '--s-phi', '0.01', '--lambda-steps', '5'],
     'ax.loglog'),
])
def test_plot_script(tmp_path, argv, marker):
    out = tmp_path / 'run.csv'
    rc = solscat.run(argv + ['-p', '-o', str(out)])
    assert rc == solscat.EXIT_OK
    script = tmp_path / 'run_plot.py'
    body = script.read_text()
    assert "'run.csv'" in body
    assert marker in body
    assert 'savefig' in body
    compile(body, str(script), 'exec')


def test_limit_scan(tmp_path):
    out = tmp_path / 'ls.csv'
    rc = solscat.run(['limit-scan', '--s-p', '1', '--s-phi', '0.01',
                      '-o', str(out)])
    assert rc == solscat.EXIT_OK
    res = solscat.read_csv(str(out))
    assert len(res.rows) == 21
    assert float(res.metadata['fitted_slope']) == pytest.approx(2.0,
                                                                abs=0.02)
    cl = res.column('dcs_classical')
    assert (cl == cl[0]).all()


def test_amplitude(tmp_path):
    out = tmp_path / 'amp.csv'
    rc = solscat.run(['amplitude', '--s-p', '0.5', '--s-phi', '0.01',
                      '--theta-steps', '16', '--polarized',
                      '--initial-spin', '-1', '-o', str(out)])
    assert rc == solscat.EXIT_OK
    res = solscat.read_csv(str(out))
    assert max(res.column('rel_dev')) <= 1e-8


def test_unwritable_output(tmp_path):
    blocker = tmp_path / 'blocker'
    blocker.write_text('')
    rc = solscat.run(['classical', '--rho-l', '0.5', '--theta-steps', '4',
                      '-o', str(blocker / 'sub' / 'x.csv')])
    assert rc == solscat.EXIT_IO


@pytest.mark.parametrize('text, want', [('0.5', 0.5), ('1e-2', 0.01)])
def test_radians_accepts_numbers(text, want):
    assert solscat.RADIANS.convert(text, None, None) == want


def test_classical_rho_L_one_is_finite(tmp_path):
    out = tmp_path / 'c.csv'
    rc = solscat.run(['classical', '--rho-l', '1', '--theta-steps', '3',
                      '-o', str(out)])
    assert rc == solscat.EXIT_OK
    vals = solscat.read_csv(str(out)).column('dcs_classical')
    assert all(math.isfinite(v) for v in vals)


def test_mc_odd_bins_asymmetry(tmp_path):
    out = tmp_path / 'mc.csv'
    rc = solscat.run(['mc', '--rho-l', '0.5', '-n', '200000', '-b', '9',
                      '-s', '3', '-o', str(out)])
    assert rc in (solscat.EXIT_OK, solscat.EXIT_CHECK_FAILED)
    meta = solscat.read_csv(str(out)).metadata
    a, err = float(meta['asymmetry']), float(meta['asymmetry_error'])
    assert abs(a - 0.5) <= 4 * err


def test_command_line_params_replace_config(tmp_path):
    conf = tmp_path / 'conf.json'
    conf.write_text(json.dumps({'classical': {'rho_l': 0.5}}))
    out = tmp_path / 'c.csv'
    rc = solscat.run(['-c', str(conf), 'classical', '--s-p', '1',
                      '--s-phi', '6.283185307179586', '--theta-steps', '8',
                      '-o', str(out)])
    assert rc == solscat.EXIT_OK
    params = dict(item.split('=') for item in
                  solscat.read_csv(str(out)).metadata['params'].split())
    assert float(params['s_p']) == 1.0
    assert float(params['rho_L']) == pytest.approx(0.5, rel=1e-15)


def test_compare_reversed_charge_asymmetry(tmp_path):
    out = tmp_path / 'cmp.csv'
    rc = solscat.run(['compare', '--s-p', '1', '--s-phi', '-6',
                      '--theta-steps', '16', '-o', str(out)])
    assert rc == solscat.EXIT_OK
    meta = solscat.read_csv(str(out)).metadata
    rho_L = -math.pi / 6
    assert float(meta['asymmetry_classical']) == pytest.approx(rho_L,
                                                              abs=1e-6)


def test_pole_proximity_is_numerical(tmp_path, monkeypatch):
    def on_pole(*args, **kwargs):
        raise solscat.dirac.PoleProximityError('k on the mass shell', 0.0)

    monkeypatch.setattr(solscat.dirac, 'm1_dcs', on_pole)
    rc = solscat.run(['amplitude', '--s-p', '0.5', '--s-phi', '0.01',
                      '--theta-steps', '4', '-o', str(tmp_path / 'a.csv')])
    assert rc == solscat.EXIT_NUMERICAL
