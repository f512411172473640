import json
from fractions import Fraction

import pytest

import hbmodel
from hbmodel import datasets
from hbmodel._errors import InvalidComplex, ParseError
from hbmodel.datasets._datasets import HERE


WEIGHTED = """\
{
  "name": "weighted-interval",
  "cap": 4,
  "degrees": [
    {"degree": 0, "labels": ["a", "b"]},
    {"degree": 1, "labels": ["c"]}
  ],
  "differential": [
    {"from_label": "a", "to_label": "c", "coeff": "1"},
    {"from_label": "b", "to_label": "c", "coeff": "-1"}
  ],
  "inner": [
    {"degree": 0, "row_label": "a", "col_label": "a", "coeff": "2"},
    {"degree": 0, "row_label": "b", "col_label": "b", "coeff": "1"},
    {"degree": 0, "row_label": "a", "col_label": "b", "coeff": "1/2"}
  ],
  "contractions": []
}
"""


def _doc(**changes):
    doc = dict(
        degrees=[dict(degree=0, labels=['1']), dict(degree=1, labels=['dth'])],
        differential=[],
        contractions=[dict(t_degree=2, entries=[dict(from_label='dth', to_label='1', coeff='1')])],
    )
    doc.update(changes)
    return json.dumps(doc, indent=2)


def test_parse_weighted():
    datum = hbmodel.parse_datum(WEIGHTED)
    c = datum.complex
    assert datum.name == 'weighted-interval'
    assert datum.weight_cap == 4
    assert datum.rank == 0
    assert datum.product is None
    assert c.inner(0)[0, 1] == c.inner(0)[1, 0] == Fraction(1, 2)
    assert c.d(0).todense().tolist() == [[1, -1]]
    assert not c.has_identity_inner()


@pytest.mark.parametrize('name', ['poly-rot-2', 'free-rotation', 'two-torus-rotation', 'su2-free'])
def test_round_trip(shipped, tmp_path, name):
    datum = shipped[name]
    path = hbmodel.write_datum(datum, tmp_path / 'sub' / f'{name}.json')
    back = hbmodel.read_datum(path)
    assert back == datum
    assert back.name == datum.name
    assert back.weight_cap == datum.weight_cap


def test_round_trip_inner(tmp_path):
    datum = hbmodel.parse_datum(WEIGHTED)
    back = hbmodel.read_datum(hbmodel.write_datum(datum, tmp_path / 'w.json'))
    assert back.complex == datum.complex


def test_name_from_file(tmp_path):
    path = tmp_path / 'circle.json'
    path.write_text(_doc())
    assert hbmodel.read_datum(path).name == 'circle'
    assert hbmodel.parse_datum(_doc(name='given'), name='other').name == 'given'


def test_defaults():
    datum = hbmodel.parse_datum(_doc())
    assert datum.weight_cap == 10
    assert datum.t_degrees == (2,)


def test_empty_degrees():
    text = _doc(
        degrees=[dict(degree=0, labels=['1']), dict(degree=3, labels=['x3'])],
        contractions=[dict(t_degree=4, entries=[dict(from_label='x3', to_label='1', coeff='1')])],
        cap=12,
    )
    datum = hbmodel.parse_datum(text)
    assert datum.complex.dims == [1, 0, 0, 1]


@pytest.mark.parametrize(
    'changes, key, message',
    [
        (dict(differential=[dict(from_label='1', to_label='dth', coeff='1/0')]), 'differential', 'zero'),
        (dict(differential=[dict(from_label='1', to_label='dth', coeff='0.5')]), 'differential', None),
        (dict(differential=[dict(from_label='1', to_label='dx', coeff='1')]), 'differential', 'dx'),
        (dict(differential=[dict(from_label='dth', to_label='1', coeff='1')]), 'differential', 'degree'),
        (dict(colour='red'), 'colour', 'colour'),
        (dict(cap=5), 'cap', None),
        (dict(contractions=[dict(t_degree=3, entries=[])]), 'contractions', None),
        (dict(product=[dict(left_label='dth', right_label='dth', out_label='1', coeff='1')]), 'product', None),
        (dict(unit=[dict(label='1', coeff='1')]), 'unit', 'product'),
        (dict(differential=[dict(from_label='1', to_label='dth', coeff='1', weight='2')]), 'differential', 'weight'),
        (
            dict(contractions=[dict(t_degree=2, entries=[dict(from_label='dth', to_label='1', coeff='1', sign='-')])]),
            'contractions',
            'sign',
        ),
        (dict(contractions=[dict(t_degree=2, entries=[], degree=-1)]), 'contractions', 'degree'),
        (dict(degrees=[dict(degree=0, labels=['1'], dim=1), dict(degree=1, labels=['dth'])]), 'degrees', 'dim'),
    ],
)
def test_parse_errors(changes, key, message):
    with pytest.raises(ParseError) as excinfo:
        hbmodel.parse_datum(_doc(**changes))
    assert excinfo.value.key == key
    assert excinfo.value.line is not None
    if message is not None:
        assert message in str(excinfo.value)


def test_parse_error_lines():
    with pytest.raises(ParseError) as excinfo:
        hbmodel.parse_datum('{\n  "degrees": [\n  ]\n  "cap": 4\n}')
    assert excinfo.value.line == 4
    text = WEIGHTED.replace('"coeff": "-1"', '"coeff": "1/0"')
    with pytest.raises(ParseError, match='line 10') as excinfo:
        hbmodel.parse_datum(text)
    assert excinfo.value.line == 10
    with pytest.raises(ParseError, match="Missing key 'degrees'"):
        hbmodel.parse_datum('{}')
    with pytest.raises(ParseError):
        hbmodel.parse_datum('[]')


def test_parse_validates():
    text = (HERE / 'poly_rot_2_broken.json').read_text()
    with pytest.raises(InvalidComplex) as excinfo:
        hbmodel.parse_datum(text)
    assert 'dmu' in excinfo.value.witnesses
    datum = hbmodel.parse_datum(text, validate=False)
    assert datum.name == 'poly-rot-2-broken'


def test_available():
    names = datasets.available()
    assert names == [
        'free-rotation',
        'poly-rot-2',
        'poly-rot-2-broken',
        'poly-rot-2-trivial',
        'su2-free',
        'two-torus-rotation',
    ]
    with pytest.raises(ValueError, match='No datum'):
        datasets.load('klein-bottle')


def test_datasetdir(tmp_path, monkeypatch, free_rotation):
    monkeypatch.setattr(hbmodel.settings, 'datasetdir', tmp_path)
    hbmodel.write_datum(free_rotation.trivial(), tmp_path / 'my_circle.json')
    assert 'my-circle' in datasets.available()
    assert datasets.load('my_circle') == free_rotation.trivial()
    assert datasets.load('free-rotation') == free_rotation
