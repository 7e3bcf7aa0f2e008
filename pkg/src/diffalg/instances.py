"""Line-oriented system and instance files.

    [ring] m=1 n=1 field=rational_t
    [lambda]
    d1 x1
    [open]
    x1 - 1
    [W]
    d1 x1
    d1 y1
    y1 - 1
    [bounds] order=2 degree=1 height=1

Sections [lambda], [open], [W] and [naive] hold one polynomial per line in
the shared grammar; [ring] and [bounds] carry key=value pairs on the header
line. Blank lines and lines starting with '#' are ignored. An optional
ranking key on the [ring] line selects "orderly" (default) or
"elimination:i,j,..." with a permutation of the variable indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from .axioms import AxiomInstance
from .parser import parse_poly
from .ranking import ELIMINATION, ORDERLY, Ranking
from .reduction import autoreduced_check
from .ring import CONSTANTS, RATIONAL_T, RingContext


class InstanceFormatError(ValueError):
    pass


@dataclass
class InstanceData:
    ring: RingContext
    ranking: Ranking
    lam: list = field(default_factory=list)
    open_extra: list = field(default_factory=list)
    w_gens: list = field(default_factory=list)
    naive: list = field(default_factory=list)
    bounds: dict = field(default_factory=dict)


_POLY_SECTIONS = {"lambda": "lam", "open": "open_extra", "w": "w_gens", "naive": "naive"}


def _parse_kv(rest, where):
    out = {}
    for chunk in rest.split():
        if "=" not in chunk:
            raise InstanceFormatError(f"expected key=value in {where}, got {chunk!r}")
        k, v = chunk.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _parse_ranking(text):
    if text == ORDERLY:
        return Ranking()
    if text.startswith(ELIMINATION):
        _, _, perm = text.partition(":")
        if not perm:
            raise InstanceFormatError("elimination ranking needs a permutation, e.g. elimination:2,1")
        return Ranking(ELIMINATION, tuple(int(k) for k in perm.split(",")))
    raise InstanceFormatError(f"unknown ranking {text!r}")


def parse_instance_text(text):
    ring = None
    ranking = Ranking()
    sections = {name: [] for name in _POLY_SECTIONS}
    bounds = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            end = line.find("]")
            if end < 0:
                raise InstanceFormatError(f"line {lineno}: unterminated section header")
            name = line[1:end].strip().lower()
            rest = line[end + 1 :].strip()
            if name == "ring":
                kv = _parse_kv(rest, "[ring]")
                try:
                    ring = RingContext(
                        m=int(kv["m"]),
                        n=int(kv["n"]),
                        field_mode=kv.get("field", CONSTANTS),
                    )
                except KeyError as exc:
                    raise InstanceFormatError(f"[ring] is missing {exc}") from None
                if "ranking" in kv:
                    ranking = _parse_ranking(kv["ranking"])
                current = None
            elif name == "bounds":
                kv = _parse_kv(rest, "[bounds]")
                bounds = {k: int(v) for k, v in kv.items()}
                current = None
            elif name in _POLY_SECTIONS:
                current = name
            else:
                raise InstanceFormatError(f"line {lineno}: unknown section [{name}]")
            continue
        if current is None:
            raise InstanceFormatError(f"line {lineno}: polynomial outside any section")
        sections[current].append((lineno, line))
    if ring is None:
        raise InstanceFormatError("missing [ring] section")
    data = InstanceData(ring, ranking, bounds=bounds)
    for name, attr in _POLY_SECTIONS.items():
        for lineno, line in sections[name]:
            try:
                setattr(data, attr, getattr(data, attr) + [parse_poly(line, ring)])
            except ValueError as exc:
                raise InstanceFormatError(f"line {lineno}: {exc}") from None
    return data


def load_instance_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance_text(fh.read())


def build_axiom_instance(data):
    """Assemble the validated-input object; raises NotAutoreduced on bad systems."""
    if not data.lam:
        raise InstanceFormatError("instance has an empty [lambda] section")
    system = autoreduced_check(data.lam, data.ranking)
    order_bound = data.bounds.get("order", 2)
    return AxiomInstance(system, tuple(data.open_extra), tuple(data.w_gens), order_bound)


def fixture_path(name):
    """Path of a fixture shipped with the package."""
    return resources.files("diffalg") / "fixtures" / name
