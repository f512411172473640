"""Check results and line-oriented reports.

A report is a list of sections; each section holds `key: value` lines and
pass/fail lines for identity checks. Rendering is deterministic, so the same
input always gives byte-identical output.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, List, Optional, Tuple

import pandas as pd

from .linalg import fstr


@dataclass
class IdentityCheck:
    """Outcome of one exact identity check.

    Truthy exactly when the identity held.
    """

    name: str
    passed: bool
    witnesses: List[str] = field(default_factory=list)
    window: Optional[str] = None
    fatal: bool = False

    def __bool__(self) -> bool:
        return self.passed

    @property
    def witness(self) -> Optional[str]:
        return self.witnesses[0] if self.witnesses else None

    def line(self) -> str:
        status = 'pass' if self.passed else 'FAIL'
        out = f'{self.name}: {status}'
        if not self.passed and self.witnesses:
            shown = self.witnesses[:5]
            more = len(self.witnesses) - len(shown)
            out += ' at ' + ', '.join(shown) + (f' (+{more} more)' if more > 0 else '')
        return out


def checks_to_df(checks: Iterable[IdentityCheck]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            dict(
                check=c.name,
                passed=c.passed,
                fatal=c.fatal,
                n_witnesses=len(c.witnesses),
                witness=c.witness,
            )
            for c in checks
        ],
        columns=['check', 'passed', 'fatal', 'n_witnesses', 'witness'],
    )


def render_value(value: Any) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, (Fraction, int)):
        return fstr(value)
    if isinstance(value, (list, tuple)):
        return '(' + ', '.join(render_value(v) for v in value) + ')'
    return str(value)


class Report:
    """\
    Structured report with sections of `key: value` lines.

    Parameters
    ----------
    title
        Name of the first section.
    """

    def __init__(self, title: Optional[str] = None):
        self._sections: List[Tuple[str, List[Tuple[str, Any]]]] = []
        self.checks: List[IdentityCheck] = []
        if title is not None:
            self.section(title)

    def section(self, name: str) -> 'Report':
        self._sections.append((name, []))
        return self

    def add(self, key: str, value: Any) -> 'Report':
        if not self._sections:
            self.section('report')
        self._sections[-1][1].append((key, value))
        return self

    def add_check(self, check: IdentityCheck) -> 'Report':
        if not self._sections:
            self.section('checks')
        self.checks.append(check)
        self._sections[-1][1].append((None, check))
        return self

    def extend_checks(self, checks: Iterable[IdentityCheck]) -> 'Report':
        for c in checks:
            self.add_check(c)
        return self

    def merge(self, other: 'Report') -> 'Report':
        """Append the sections and checks of `other`."""
        self._sections.extend((name, list(lines)) for name, lines in other._sections)
        self.checks.extend(other.checks)
        return self

    @property
    def passed(self) -> bool:
        return all(self.checks)

    @property
    def failures(self) -> List[IdentityCheck]:
        return [c for c in self.checks if not c]

    def get(self, key: str, section: Optional[str] = None) -> Any:
        for name, lines in self._sections:
            if section is not None and name != section:
                continue
            for k, v in lines:
                if k == key:
                    return v
        raise KeyError(key)

    def render(self) -> str:
        out = []
        for name, lines in self._sections:
            out.append(f'== {name} ==')
            for key, value in lines:
                if key is None:
                    out.append(value.line())
                else:
                    out.append(f'{key}: {render_value(value)}')
        return '\n'.join(out) + '\n'

    def __str__(self) -> str:
        return self.render()
