"""Plain-text file formats shared by the command line and the tests."""

from __future__ import annotations

from fractions import Fraction

from ..exactalg.field import AlgebraicNumber, ExtensionDescriptor, format_element
from ..exactalg.groebner import IdealPresentation
from ..exactalg.poly import (SparsePolynomial, format_polynomial, format_univariate_t,
                             parse_polynomial, parse_univariate_t)
from ..geometry import VarietyPresentation
from ..spaces import parse_sentence
from ..unions import TaggedPoint


class FormatError(ValueError):
    pass


def _content_lines(text: str):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def read_header_nvars(lines):
    """Optional ``vars <n>`` first line."""
    if lines and lines[0].startswith("vars "):
        return int(lines[0].split()[1]), lines[1:]
    return None, lines


def parse_ideal_file(text: str) -> IdealPresentation:
    """One generator per line, optionally preceded by ``vars <n>``."""
    lines = list(_content_lines(text))
    nvars, lines = read_header_nvars(lines)
    polys = [parse_polynomial(ln, nvars) for ln in lines]
    if nvars is None:
        nvars = max((p.nvars for p in polys), default=1)
    polys = [p if p.nvars == nvars else p.extend(nvars - p.nvars) for p in polys]
    return IdealPresentation(polys, nvars)


def format_ideal_file(ideal: IdealPresentation) -> str:
    return f"vars {ideal.nvars}\n" + "".join(f"{format_polynomial(g)}\n" for g in ideal.generators)


def parse_variety_file(text: str) -> VarietyPresentation:
    lines = list(_content_lines(text))
    cert = "none"
    certs = [ln for ln in lines if ln.startswith("certificate ")]
    if len(certs) > 1:
        raise FormatError("at most one certificate line")
    if certs:
        cert = certs[0].split(None, 1)[1]
        lines = [ln for ln in lines if ln is not certs[0]]
    return VarietyPresentation(parse_ideal_file("\n".join(lines)), cert)


def parse_poly_file(text: str, nvars: int) -> SparsePolynomial:
    lines = list(_content_lines(text))
    if len(lines) != 1:
        raise FormatError("polynomial file must hold exactly one polynomial")
    return parse_polynomial(lines[0], nvars)


# points ------------------------------------------------------------------------

def format_point(p) -> str:
    """``[C<i>] <field> : c1 ; c2 [; c3]`` with field ``Q`` or a minimal polynomial in ``t``."""
    tag = ""
    coords = p
    if isinstance(p, TaggedPoint):
        tag, coords = f"C{p.component} ", p.coords
    ext = next((c.field for c in coords if isinstance(c, AlgebraicNumber)), None)
    fld = "Q" if ext is None else format_univariate_t(ext.minimal_polynomial)
    return f"{tag}{fld} : " + " ; ".join(format_element(c) for c in coords)


def parse_point(text: str):
    tag = None
    text = text.strip()
    if text.startswith("C"):
        head, text = text.split(None, 1)
        tag = int(head[1:])
    fld, _, body = text.partition(" : ")
    if not body:
        raise FormatError(f"bad point {text!r}")
    ext = None if fld.strip() == "Q" else ExtensionDescriptor(parse_univariate_t(fld.strip()))
    coords = []
    for c in body.split(" ; "):
        dense = parse_univariate_t(c.strip())
        if ext is None:
            if len(dense) > 1:
                raise FormatError("extension coordinate in a rational point")
            coords.append(Fraction(dense[0]) if dense else Fraction(0))
        else:
            v = ext.element(dense or [0])
            coords.append(v.coords[0] if v.is_rational() else v)
    return TaggedPoint(tag, tuple(coords)) if tag is not None else tuple(coords)


# copy dumps -------------------------------------------------------------------------

def format_copy_dump(seed, mode, family, points, sentences=()) -> str:
    out = [f"PERM {seed}", f"MODE {mode}", f"FAMILY {family}"]
    out += [f"PTDATA {label} {format_point(p)}" for label, p in points]
    out += [str(s) for s in sentences]
    return "\n".join(out) + "\n"


def parse_copy_dump(text: str) -> dict:
    res = {"seed": None, "mode": None, "family": None, "points": [], "sentences": []}
    for line in _content_lines(text):
        head, _, rest = line.partition(" ")
        if head == "PERM":
            res["seed"] = int(rest)
        elif head == "MODE":
            res["mode"] = rest.strip()
        elif head == "FAMILY":
            res["family"] = rest.strip()
        elif head in ("SENTENCES", "QUERIES"):
            continue
        elif head == "PTDATA":
            label, _, pt = rest.partition(" ")
            res["points"].append((int(label), parse_point(pt)))
        else:
            res["sentences"].append(parse_sentence(line))
    if res["seed"] is None:
        raise FormatError("copy dump must start with a PERM header")
    return res
