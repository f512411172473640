"""Reading and writing datum documents.

A datum document is a JSON object with the keys `degrees`, `differential`,
`inner` (optional), `contractions`, `product` (optional), `unit` (optional),
`cap` (optional, default 10) and `name` (optional). Coefficients are strings
of the form `"p"` or `"p/q"`.
"""
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from . import logging as logg
from ._errors import ParseError
from ._settings import check_weight_cap
from .equivariant import EquivariantDatum, ProductTable, validate as validate_datum
from .hodge import GradedComplex
from .linalg import RatMatrix, fstr, parse_rational, zeros

_KEYS = {'name', 'cap', 'degrees', 'differential', 'inner', 'contractions', 'product', 'unit'}
_REQUIRED = {'degrees'}
_MAP_FIELDS = ('from_label', 'to_label', 'coeff')


def _line_of(text: str, needle: str) -> Optional[int]:
    pos = text.find(needle)
    return text.count('\n', 0, pos) + 1 if pos >= 0 else None


class _Parser:
    def __init__(self, text: str):
        self.text = text

    def error(self, msg: str, key: Optional[str] = None, near: Optional[str] = None) -> ParseError:
        line = _line_of(self.text, near) if near is not None else None
        if line is None and key is not None:
            line = _line_of(self.text, f'"{key}"')
        return ParseError(msg, line=line, key=key)

    def coeff(self, value: Any, key: str) -> Fraction:
        if isinstance(value, bool) or not isinstance(value, (str, int)):
            raise self.error(f'Coefficient {value!r} must be a string "p" or "p/q".', key)
        try:
            return parse_rational(value) if isinstance(value, str) else Fraction(value)
        except ValueError as e:
            raise self.error(str(e), key, near=f'"{value}"') from None

    def fields(self, entry: Any, key: str, allowed: Tuple[str, ...]) -> Dict[str, Any]:
        if not isinstance(entry, dict):
            raise self.error(f'Entries of {key!r} must be objects, got {entry!r}.', key)
        unknown = sorted(set(entry) - set(allowed))
        if unknown:
            raise self.error(f'Unknown key {unknown[0]!r} in an entry of {key!r}.', key, near=f'"{unknown[0]}"')
        return entry

    def field(self, entry: Any, name: str, key: str):
        if not isinstance(entry, dict):
            raise self.error(f'Entries of {key!r} must be objects, got {entry!r}.', key)
        if name not in entry:
            raise self.error(f'Entry {entry!r} of {key!r} lacks {name!r}.', key)
        return entry[name]

    def entries(self, doc: Dict[str, Any], key: str) -> List[Any]:
        value = doc.get(key, [])
        if not isinstance(value, list):
            raise self.error(f'{key!r} must be a list.', key)
        return value


def _locate(p: _Parser, index: Dict[str, Tuple[int, int]], label: Any, key: str) -> Tuple[int, int]:
    try:
        return index[label]
    except (KeyError, TypeError):
        raise p.error(f'Unknown label {label!r}.', key, near=f'"{label}"') from None


def parse_datum(
    text: str,
    *,
    validate: bool = True,
    weight_cap: Optional[int] = None,
    name: Optional[str] = None,
) -> EquivariantDatum:
    """\
    Parse a datum document.

    Parameters
    ----------
    text
        The JSON document.
    validate
        Run the fatal checks of :func:`~hbmodel.equivariant.validate`; a
        failure raises :class:`~hbmodel._errors.InvalidComplex`.
    weight_cap
        Cap used for validation, overriding the document's `cap`.
    name
        Name used when the document has none.

    Returns
    -------
    The :class:`~hbmodel.equivariant.EquivariantDatum`.
    """
    p = _Parser(text)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f'Invalid JSON: {e.msg}', line=e.lineno) from None
    if not isinstance(doc, dict):
        raise ParseError('A datum document is a JSON object.', line=1)
    unknown = sorted(set(doc) - _KEYS)
    if unknown:
        raise p.error(f'Unknown key {unknown[0]!r}.', unknown[0])
    missing = sorted(_REQUIRED - set(doc))
    if missing:
        raise ParseError(f'Missing key {missing[0]!r}.', key=missing[0])

    cap = doc.get('cap', 10)
    try:
        cap = check_weight_cap(cap, 'cap')
    except (TypeError, ValueError) as e:
        raise p.error(str(e), 'cap') from None

    # degrees and labels
    by_degree: Dict[int, List[str]] = {}
    for entry in p.entries(doc, 'degrees'):
        p.fields(entry, 'degrees', ('degree', 'labels'))
        m = p.field(entry, 'degree', 'degrees')
        labels = p.field(entry, 'labels', 'degrees')
        if isinstance(m, bool) or not isinstance(m, int) or m < 0:
            raise p.error(f'Degree {m!r} must be a nonnegative integer.', 'degrees')
        if m in by_degree:
            raise p.error(f'Degree {m} listed twice.', 'degrees')
        if not isinstance(labels, list) or not all(isinstance(l, str) and l for l in labels):
            raise p.error(f'Labels of degree {m} must be nonempty strings.', 'degrees')
        by_degree[m] = labels
    top = max(by_degree, default=-1)
    labels = [by_degree.get(m, []) for m in range(top + 1)]
    index: Dict[str, Tuple[int, int]] = {}
    for m, ls in enumerate(labels):
        for i, label in enumerate(ls):
            if label in index:
                raise p.error(f'Label {label!r} appears twice.', 'degrees', near=f'"{label}"')
            index[label] = (m, i)
    dim = [len(ls) for ls in labels] + [0]

    def dim_of(m: int) -> int:
        return dim[m] if 0 <= m <= top else 0

    def operator(entries: List[Any], key: str, shift: int) -> Dict[int, RatMatrix]:
        values: Dict[int, Dict[Tuple[int, int], Fraction]] = {}
        for entry in entries:
            p.fields(entry, key, _MAP_FIELDS)
            src = _locate(p, index, p.field(entry, 'from_label', key), key)
            dst = _locate(p, index, p.field(entry, 'to_label', key), key)
            if dst[0] != src[0] + shift:
                raise p.error(
                    f'{entry["from_label"]} → {entry["to_label"]} does not have degree {shift}.',
                    key, near=f'"{entry["from_label"]}"',
                )
            block = values.setdefault(src[0], {})
            if (dst[1], src[1]) in block:
                raise p.error(f'Entry {entry!r} given twice.', key)
            block[dst[1], src[1]] = p.coeff(p.field(entry, 'coeff', key), key)
        return {
            m: RatMatrix(dim_of(m + shift), dim[m], ((r, c, v) for (r, c), v in block.items()))
            for m, block in values.items()
        }

    differential = operator(p.entries(doc, 'differential'), 'differential', 1)

    inner_values: Dict[int, Dict[Tuple[int, int], Fraction]] = {}
    for entry in p.entries(doc, 'inner'):
        p.fields(entry, 'inner', ('degree', 'row_label', 'col_label', 'coeff'))
        m = p.field(entry, 'degree', 'inner')
        r = _locate(p, index, p.field(entry, 'row_label', 'inner'), 'inner')
        c = _locate(p, index, p.field(entry, 'col_label', 'inner'), 'inner')
        if r[0] != m or c[0] != m:
            raise p.error(f'Inner product entry {entry!r} mixes degrees.', 'inner')
        block = inner_values.setdefault(m, {})
        if (r[1], c[1]) in block:
            raise p.error(f'Inner product entry {entry!r} given twice.', 'inner')
        block[r[1], c[1]] = p.coeff(p.field(entry, 'coeff', 'inner'), 'inner')
    inner = {}
    for m, block in inner_values.items():
        full = dict(block)
        for (r, c), v in block.items():
            full.setdefault((c, r), v)
        inner[m] = RatMatrix(dim[m], dim[m], ((r, c, v) for (r, c), v in full.items()))

    contractions = []
    for entry in p.entries(doc, 'contractions'):
        p.fields(entry, 'contractions', ('t_degree', 'entries'))
        t = p.field(entry, 't_degree', 'contractions')
        if isinstance(t, bool) or not isinstance(t, int) or t < 2 or t % 2:
            raise p.error(f'Generator degree {t!r} must be an even integer ≥ 2.', 'contractions')
        entries = p.field(entry, 'entries', 'contractions')
        if not isinstance(entries, list):
            raise p.error('Contraction entries must be a list.', 'contractions')
        contractions.append((t, operator(entries, 'contractions', 1 - t)))

    try:
        complex = GradedComplex(labels, differential, inner, check=False)
    except ValueError as e:
        raise ParseError(str(e)) from None

    product = None
    if 'product' in doc:
        rows = []
        for entry in p.entries(doc, 'product'):
            p.fields(entry, 'product', ('left_label', 'right_label', 'out_label', 'coeff'))
            names = [p.field(entry, f, 'product') for f in ('left_label', 'right_label', 'out_label')]
            for label in names:
                _locate(p, index, label, 'product')
            rows.append((*names, p.coeff(p.field(entry, 'coeff', 'product'), 'product')))
        unit = None
        if 'unit' in doc:
            unit = zeros(dim[0])
            for entry in p.entries(doc, 'unit'):
                p.fields(entry, 'unit', ('label', 'coeff'))
                m, i = _locate(p, index, p.field(entry, 'label', 'unit'), 'unit')
                if m != 0:
                    raise p.error('The unit lives in degree 0.', 'unit')
                unit[i] += p.coeff(p.field(entry, 'coeff', 'unit'), 'unit')
        try:
            product = ProductTable.from_entries(complex, rows, unit)
        except (KeyError, ValueError) as e:
            raise p.error(str(e), 'product') from None
    elif 'unit' in doc:
        raise p.error('A unit needs a product.', 'unit')

    datum = EquivariantDatum(
        complex, contractions, product, name=doc.get('name', name), weight_cap=cap
    )
    if validate:
        complex.check()
        validate_datum(datum, weight_cap or cap)
    return datum


def read_datum(
    filename: Union[Path, str], *, validate: bool = True, weight_cap: Optional[int] = None
) -> EquivariantDatum:
    """\
    Read a datum document from a file.

    See :func:`parse_datum`. The file stem names the datum when the document
    has no `name`.
    """
    filename = Path(filename)
    logg.debug(f'reading {filename}')
    return parse_datum(
        filename.read_text(), validate=validate, weight_cap=weight_cap, name=filename.stem
    )


def datum_to_dict(datum: EquivariantDatum) -> Dict[str, Any]:
    c = datum.complex
    doc: Dict[str, Any] = {}
    if datum.name is not None:
        doc['name'] = datum.name
    doc['cap'] = datum.weight_cap or 10
    doc['degrees'] = [dict(degree=m, labels=list(ls)) for m, ls in enumerate(c.labels)]

    def entries(matrix: RatMatrix, m: int, shift: int) -> List[Dict[str, str]]:
        return [
            dict(from_label=c.label(m, col), to_label=c.label(m + shift, row), coeff=fstr(v))
            for row, col, v in matrix.entries()
        ]

    doc['differential'] = [e for m in c.degrees for e in entries(c.d(m), m, 1)]
    if not c.has_identity_inner():
        doc['inner'] = [
            dict(degree=m, row_label=c.label(m, r), col_label=c.label(m, col), coeff=fstr(v))
            for m in c.degrees
            for r, col, v in c.inner(m).entries()
        ]
    doc['contractions'] = [
        dict(
            t_degree=ct.t_degree,
            entries=[e for m in c.degrees for e in entries(ct.operator[m], m, ct.degree)],
        )
        for ct in datum.contractions
    ]
    if datum.product is not None:
        doc['product'] = [
            dict(left_label=l, right_label=r, out_label=o, coeff=fstr(v))
            for l, r, o, v in datum.product.entries()
        ]
        doc['unit'] = [
            dict(label=c.label(0, i), coeff=fstr(v)) for i, v in enumerate(datum.product.unit) if v
        ]
    return doc


def write_datum(datum: EquivariantDatum, filename: Union[Path, str]) -> Path:
    """Write `datum` as a document that :func:`read_datum` reads back."""
    filename = Path(filename)
    if not filename.parent.is_dir():
        filename.parent.mkdir(parents=True)
    filename.write_text(json.dumps(datum_to_dict(datum), indent=2, ensure_ascii=False) + '\n')
    logg.debug(f'wrote {filename}')
    return filename
