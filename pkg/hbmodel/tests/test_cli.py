import pytest

import hbmodel
from hbmodel.cli import main


def test_no_command(capsys):
    assert main([]) == 0
    assert 'usage: hbmodel' in capsys.readouterr().out


def test_cpn_cp2(capsys):
    assert main(['cpn-cp2', '--a', '1', '--b', '3', '--s', '3']) == 0
    out = capsys.readouterr().out
    assert 'relation: w^3 = 21*w*t^2 + 20*t^3' in out
    assert 'A: 9' in out
    assert 'FAIL' not in out


def test_cpn_cp2_rational_scale(capsys):
    assert main(['cpn-cp2', '--a', '1', '--b', '2', '--s', '1/2']) == 0
    assert 'A: 1/4' in capsys.readouterr().out


def test_cpn_coeffs(capsys):
    assert main(['cpn-coeffs', '--mu=-4,-1,5', '--euler=3,-2,6']) == 0
    out = capsys.readouterr().out
    assert 'presentation: Q[w, t]/(w^3 - 21*w*t^2 - 20*t^3)' in out
    assert 'H(μ^2): 7/2' in out
    assert 'A: 9' in out


def test_cpn_coeffs_multiplicities(capsys):
    assert main(['cpn-coeffs', '--mu', '0,3', '--mult', '2,1']) == 0
    assert 'c: (3, 0, 0)' in capsys.readouterr().out


def test_cpn_coeffs_inconsistent(capsys):
    assert main(['cpn-coeffs', '--mu=-4,-1,5', '--euler=4,-2,6']) == 1
    assert 'volume agrees at every fixed point: FAIL' in capsys.readouterr().out


@pytest.mark.parametrize(
    'argv',
    [
        ['cpn-coeffs', '--mu=-4,-1,5', '--euler=3,-2'],
        ['cpn-coeffs', '--mu=1,x'],
        ['cpn-coeffs', '--mu=1/0,2'],
        ['cpn-cp2', '--a', '3', '--b', '1'],
        ['cpn-cp2', '--a', '1', '--b', '2', '--s', '0'],
        ['cohomology', 'klein-bottle'],
        ['cohomology', 'su2-free', '--cap', '6'],
        ['cohomology', 'poly-rot-2', '--cap', '7'],
        ['extend', 'free-rotation', '--class', 'dth'],
        ['extend', 'poly-rot-2', '--class', 'mu'],
        ['product', 'su2-free', '--left', '1', '--right', '1'],
    ],
)
def test_input_errors(argv):
    assert main(argv) == 2


def test_check_broken(capsys):
    assert main(['check', 'poly-rot-2-broken']) == 1
    out = capsys.readouterr().out
    fails = [line for line in out.splitlines() if 'FAIL' in line]
    assert fails
    assert 'dmu' in fails[0]
    assert 'd∘i + i∘d = 0' in fails[0]


def test_check(capsys):
    assert main(['check', 'free-rotation']) == 0
    out = capsys.readouterr().out
    assert '== validation ==' in out
    assert '== perturbed differential ==' in out


def test_cohomology(capsys):
    assert main(['cohomology', 'poly-rot-2', '--cap', '8']) == 0
    out = capsys.readouterr().out
    assert out.count('dims: 0:1, 1:0, 2:3, 3:0, 4:3, 5:0, 6:3, 7:0, 8:3') == 2
    assert 'free over R_G: true' in out
    assert 'weight cap: 8' in out


def test_cap_before_command(capsys):
    assert main(['--cap', '6', 'cohomology', 'free-rotation']) == 0
    out = capsys.readouterr().out
    assert 'weight cap: 6' in out
    assert 'free over R_G: false' in out


def test_datum_from_file(capsys, tmp_path, two_torus):
    path = hbmodel.write_datum(two_torus, tmp_path / 'torus.json')
    assert main(['cohomology', str(path)]) == 0
    assert 'dims: 0:1, 1:1, 2:0' in capsys.readouterr().out


def test_dhb(capsys):
    assert main(['dhb', 'two-torus-rotation']) == 0
    out = capsys.readouterr().out
    assert 'd_HB(dth1): -t⊗1' in out
    assert 'd_HB(dth2): 0' in out
    assert 'd_HB(dth12): -t⊗dth2' in out
    assert 'd_HB vanishes: false' in out


def test_extend(capsys):
    assert main(['extend', 'poly-rot-2', '--class', 'omega', '--cap', '6']) == 0
    assert 'φ⁻¹(h): omega + t⊗mu' in capsys.readouterr().out


def test_product(capsys):
    assert main(['product', 'poly-rot-2', '--left', 'omega', '--right', 'omega']) == 0
    out = capsys.readouterr().out
    assert 'a ∧̃ b: 2*t⊗muomega' in out
    assert 't-weight 0: 0' in out
    assert 'γ: 0' in out


def test_extend_reports_unclosed_class(capsys, monkeypatch):
    monkeypatch.setattr(hbmodel.HirschBrown, 'canonical_extension', lambda self, h: self.harmonic(h))
    assert main(['extend', 'poly-rot-2', '--class', 'omega', '--cap', '6']) == 1
    out = capsys.readouterr().out
    assert 'd_G φ⁻¹(h) = 0: FAIL at omega' in out
    assert 'weight-zero part of φ⁻¹(h) is h: pass' in out


def test_product_reports_wrong_gamma(capsys, monkeypatch):
    monkeypatch.setattr(
        hbmodel.HirschBrown, 'gamma_witness', lambda self, a, b: self.module.from_label('mu', (1,))
    )
    assert main(['product', 'poly-rot-2', '--left', 'omega', '--right', 'omega']) == 1
    out = capsys.readouterr().out
    assert 'weight-zero part of a ∧̃ b is H(a∧b): pass' in out
    assert 'd_G γ = φ⁻¹(a ∧̃ b) − âb̂: FAIL at (omega, omega)' in out


def test_hodge(capsys):
    assert main(['hodge', 'poly-rot-2']) == 0
    out = capsys.readouterr().out
    assert 'harmonic dims: (1, 0, 2)' in out
    assert 'betti numbers: (1, 0, 2)' in out
    assert 'harmonic C^1: 0' in out


def test_identities(capsys):
    assert main(['identities', 'free-rotation', '--random', '10', '--seed', '3']) == 0
    out = capsys.readouterr().out
    assert '== random elements ==' in out
    assert 'on 10 random elements: pass' in out


def test_variants(capsys):
    assert main(['variants', '--count', '3', '--cap', '10']) == 0
    out = capsys.readouterr().out
    assert 'count: 3' in out
    assert 'FAIL' not in out
    assert out.count('cohomology agreement: pass') == 3


def test_examples(capsys):
    assert main(['examples']) == 0
    out = capsys.readouterr().out
    assert 'su2-free: dims (1, 0, 0, 1), t-degrees (4,)' in out


def test_settings(capsys):
    assert main(['settings']) == 0
    out = capsys.readouterr().out
    assert 'weight_cap = 10' in out
    assert 'hbmodel==' in out
    assert 'Python' not in out


def test_settings_versions(capsys):
    assert main(['settings', '--versions']) == 0
    out = capsys.readouterr().out
    assert 'numpy==' in out
    assert 'Python' in out


def test_flags_are_restored(tmp_path):
    verbosity = hbmodel.settings.verbosity
    logfile = tmp_path / 'hbmodel.log'
    assert main(['examples', '--verbosity', 'debug', '--logfile', str(logfile)]) == 0
    assert hbmodel.settings.verbosity == verbosity
    assert hbmodel.settings.logpath is None
    assert 'loading su2-free' in logfile.read_text()
