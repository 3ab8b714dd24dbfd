"""Text formats for groups and elements.

Group grammar::

    spec    := base [":" twist] ["--lattice=" lattice]
             | order base ["--lattice=" lattice]          e.g. 2A2, 3D4
    base    := type ("x" type)*                          e.g. A2, A1xA1
    twist   := order base | "perm=[" int ("," int)* "]"
    lattice := "adjoint" | "sc" | ["basis:"] "[[" ... "]]"  integer basis rows

Element grammar: factors joined by ``*``.  A factor is a wall name (``s0``,
``s1``, ... or ``s_fix``/``s_orb`` for twisted groups), ``e`` for the
identity, ``t[c1,...]`` for the translation by ``sum c_i alpha_i^vee``
(rational coefficients allowed) or ``omega[k1,...]`` for the length-zero
element of a Kottwitz class.
"""

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .affine_weyl import translation
from .descent import build_descent, shortcut_permutation, standard_action, wall_aliases, wall_names
from .errors import GrammarError
from .extended_weyl import LATTICES, build_extended, ext_multiply
from .root_data import build_affine_system, build_finite_system, parse_cartan_type

SPEC_GRAMMAR = "<type>[:<twist>][--lattice=adjoint|sc|basis:[[...]]], e.g. A2, 2A2, A2:perm=[0,2,1], C2--lattice=sc"
ELEMENT_GRAMMAR = "factors joined by '*': wall names (s0, s1, ..., s_fix, s_orb), e, t[c1,...], omega[k1,...]"

_BASE_RE = re.compile(r"[A-G]\d+(?:x[A-G]\d+)*")
LATTICE_ALIASES = {"simply-connected": "sc", "simply_connected": "sc"}
_SHORTCUT_RE = re.compile(r"([23])([A-G]\d+)")
_PERM_RE = re.compile(r"perm=\[(\s*\d+\s*(?:,\s*\d+\s*)*)\]")


@dataclass(frozen=True)
class GroupSpec:
    base_type: str
    twist: object = None
    lattice: object = "adjoint"

    def __str__(self):
        if isinstance(self.twist, str):
            out = self.twist
        elif self.twist is not None:
            out = f"{self.base_type}:perm=[{','.join(map(str, self.twist))}]"
        else:
            out = self.base_type
        if self.lattice != "adjoint":
            lat = self.lattice if isinstance(self.lattice, str) else "basis:" + json.dumps(
                [list(r) for r in self.lattice], separators=(",", ":"))
            out += f"--lattice={lat}"
        return out


def _fail(message, text, position):
    raise GrammarError(f"{message}; expected {SPEC_GRAMMAR}", text, position)


def parse_lattice(value):
    return _parse_lattice(value, value, 0)


def _parse_lattice(value, text, position):
    value = LATTICE_ALIASES.get(value, value)
    if value in LATTICES:
        return value
    if value.startswith("basis:"):
        value = value[len("basis:"):]
    try:
        rows = json.loads(value)
    except json.JSONDecodeError:
        _fail(f"unknown lattice {value!r}", text, position)
    if (not isinstance(rows, list) or not rows
            or not all(isinstance(r, list) and all(isinstance(x, int) for x in r) for r in rows)):
        _fail("lattice must be adjoint, sc or a list of integer rows", text, position)
    return tuple(tuple(r) for r in rows)


def parse_group_spec(text):
    """Parse a group spec; see the module docstring for the grammar."""
    lattice = "adjoint"
    main = text
    marker = text.find("--lattice=")
    if marker >= 0:
        main = text[:marker]
        lattice = _parse_lattice(text[marker + len("--lattice="):], text, marker + len("--lattice="))
    elif "--" in text:
        _fail("unknown option", text, text.index("--"))

    m = _SHORTCUT_RE.fullmatch(main)
    if m:
        base, twist = m.group(2), main
    else:
        base, _, twist_text = main.partition(":")
        if not _BASE_RE.fullmatch(base):
            _fail(f"bad Cartan type {base!r}", text, 0)
        twist = None
        if twist_text:
            offset = len(base) + 1
            pm = _PERM_RE.fullmatch(twist_text)
            sm = _SHORTCUT_RE.fullmatch(twist_text)
            if pm:
                twist = tuple(int(x) for x in pm.group(1).split(","))
            elif sm:
                if sm.group(2) != base:
                    _fail(f"twist {twist_text} does not match type {base}", text, offset)
                twist = twist_text
            else:
                _fail(f"bad twist {twist_text!r}", text, offset)
        elif main.endswith(":"):
            _fail("empty twist", text, len(main))
    parse_cartan_type(base)
    if isinstance(twist, str):
        shortcut_permutation(twist)
    return GroupSpec(base, twist, lattice)


@dataclass(frozen=True, eq=False)
class Group:
    """A parsed group with its descent data, Omega and wall names."""

    spec: GroupSpec
    descent: object
    omega: object
    names: tuple
    aliases: dict

    @property
    def system(self):
        return self.omega.system

    @property
    def nr_system(self):
        return self.descent.nr_system

    def generator(self, i):
        from .affine_weyl import simple_reflections
        return self.omega.element(simple_reflections(self.system)[i].element)


def build_group(spec):
    """Build (and cache) the group for a spec string or ``GroupSpec``."""
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    return _build_group(spec)


@lru_cache(maxsize=None)
def _build_group(spec):
    nr = build_affine_system(build_finite_system(spec.base_type))
    d = build_descent(nr, standard_action(nr, spec.twist))
    omega = build_extended(d, spec.lattice)
    names = tuple(wall_names(d))
    aliases = {f"s{i}": i for i in range(len(names))}
    aliases.update(wall_aliases(d))
    return Group(spec, d, omega, names, aliases)


_FACTOR_RE = re.compile(r"(?P<name>s_fix\d*|s_orb\d*|s\d+|e|1)"
                        r"|(?P<kind>t|omega)\[(?P<body>[^\]]*)\]")


def _numbers(body, text, position):
    try:
        return [Fraction(x.strip()) for x in body.split(",")] if body.strip() else []
    except (ValueError, ZeroDivisionError):
        raise GrammarError(f"bad number list {body!r}; expected {ELEMENT_GRAMMAR}",
                           text, position) from None


def parse_element(text, group):
    """Parse an element of ``group.omega`` (see ``ELEMENT_GRAMMAR``)."""
    g = group.omega
    out = g.identity()
    pos = 0
    stripped = text.replace(" ", "")
    if not stripped:
        raise GrammarError(f"empty element; expected {ELEMENT_GRAMMAR}", text, 0)
    for k, factor in enumerate(stripped.split("*")):
        m = _FACTOR_RE.fullmatch(factor)
        if not m:
            raise GrammarError(f"bad factor {factor!r}; expected {ELEMENT_GRAMMAR}", stripped, pos)
        if m.group("name"):
            name = m.group("name")
            if name in ("e", "1"):
                x = g.identity()
            elif name in group.aliases:
                x = group.generator(group.aliases[name])
            else:
                raise GrammarError(
                    f"unknown wall {name!r}; walls are {', '.join(group.names)}", stripped, pos)
        else:
            values = _numbers(m.group("body"), stripped, pos)
            if m.group("kind") == "omega":
                if any(v.denominator != 1 for v in values) or len(values) != len(g.divisors):
                    raise GrammarError(
                        f"omega needs {len(g.divisors)} integer entries", stripped, pos)
                x = g.omega(tuple(int(v) % n for v, n in zip(values, g.divisors)))
            else:
                x = g.from_map(translation(g.system, _coroot_vector(g.system, values, stripped, pos)))
        out = ext_multiply(out, x)
        pos += len(factor) + 1
    return out


def _coroot_vector(system, coeffs, text, pos):
    finite = system.finite
    if len(coeffs) != finite.rank:
        raise GrammarError(f"translation needs {finite.rank} coroot coefficients", text, pos)
    v = linalg.zero_vector(finite.rank)
    for c, a in zip(coeffs, finite.simple_roots):
        v = linalg.add(v, linalg.scale(c, finite.coroot(a)))
    return linalg.normalized(v)


def format_element(w, group):
    from .affine_weyl import reduced_word

    parts = []
    if any(w.omega):
        parts.append(f"omega[{','.join(map(str, w.omega))}]")
    parts.extend(group.names[i] for i in reduced_word(w.affine_part))
    return "*".join(parts) if parts else "e"


def parse_walls(text, group):
    """``-`` or ``{}`` for the empty set, else comma-separated wall names or indices."""
    text = text.strip()
    if text in ("-", "{}", ""):
        return frozenset()
    out = set()
    for item in text.strip("{}").split(","):
        item = item.strip()
        if item in group.aliases:
            out.add(group.aliases[item])
        elif item.isdigit() and int(item) < len(group.names):
            out.add(int(item))
        else:
            raise GrammarError(f"unknown wall {item!r}; walls are {', '.join(group.names)}",
                               text, text.find(item))
    return frozenset(out)
