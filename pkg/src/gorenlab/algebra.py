"""Quiver algebra presentations: parsing, basis construction, opposites.

A presentation is a quiver plus admissible relations over GF(p).  Paths
compose left to right: in the monomial "a*b" the arrow a is traversed
first, so the monomial runs source(a) -> target(b).  The finite basis of
the quotient algebra is built degree by degree; at each degree the span
of all relation consequences u*r*v is eliminated by row reduction and the
surviving monomials represent the basis classes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from . import linalg


class ParseError(Exception):
    """Source-level problem in an algebra or module file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)


class NotFiniteDimensional(Exception):
    """Raised when surviving path classes persist past the length cap."""


@dataclass(frozen=True)
class Arrow:
    label: str
    source: str
    target: str


@dataclass(frozen=True)
class RelationTerm:
    coeff: int
    path: tuple[str, ...]


@dataclass(frozen=True)
class Relation:
    terms: tuple[RelationTerm, ...]


class Quiver:
    def __init__(self, vertices: list[str], arrows: list[Arrow]):
        if len(set(vertices)) != len(vertices):
            raise ParseError("duplicate vertex labels")
        labels = [a.label for a in arrows]
        if len(set(labels)) != len(labels):
            raise ParseError("duplicate arrow labels")
        self.vertices = list(vertices)
        self.arrows = list(arrows)
        self.vertex_index = {v: i for i, v in enumerate(vertices)}
        self.arrow_map = {a.label: a for a in arrows}
        for a in arrows:
            if a.source not in self.vertex_index or a.target not in self.vertex_index:
                raise ParseError("arrow %s uses an unknown vertex" % a.label)

    def arrows_from(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def arrows_into(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]


@dataclass(frozen=True)
class Presentation:
    name: str
    p: int
    quiver: Quiver
    relations: tuple[Relation, ...]


def path_endpoints(quiver: Quiver, path: tuple[str, ...], line: int | None = None) -> tuple[str, str]:
    """Source and target of a composable arrow sequence; raises if broken."""
    for lab in path:
        if lab not in quiver.arrow_map:
            raise ParseError("unknown arrow label %r" % lab, line)
    for x, y in zip(path, path[1:]):
        if quiver.arrow_map[x].target != quiver.arrow_map[y].source:
            raise ParseError("path %s is not composable at %s*%s" % ("*".join(path), x, y), line)
    return quiver.arrow_map[path[0]].source, quiver.arrow_map[path[-1]].target


_HEADER = re.compile(r"^algebra\s+(\S+)\s+over\s+GF\((\d+)\)$")
_ARROW = re.compile(r"^(\w+)\s*:\s*(\S+)\s*->\s*(\S+)$")
_TERM = re.compile(r"^(?:(\d+)\s*\*\s*)?(\w+(?:\s*\*\s*\w+)*)$")


def _logical_lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield i, line


def parse_algebra_source(text: str) -> Presentation:
    """Parse the algebra file grammar into a Presentation."""
    name = None
    p = None
    vertices: list[str] | None = None
    arrows: list[Arrow] = []
    raw_relations: list[tuple[int, str]] = []
    for ln, line in _logical_lines(text):
        if name is None:
            m = _HEADER.match(line)
            if not m:
                raise ParseError("expected 'algebra <name> over GF(<p>)'", ln)
            name = m.group(1)
            p = int(m.group(2))
            if not linalg.is_prime(p):
                raise ParseError("field size %d is not prime" % p, ln)
            continue
        if line.startswith("vertices:"):
            if vertices is not None:
                raise ParseError("duplicate vertices section", ln)
            vertices = line[len("vertices:"):].split()
            if not vertices:
                raise ParseError("empty vertex list", ln)
            continue
        if line.startswith("arrows:"):
            body = line[len("arrows:"):].strip()
            for chunk in filter(None, (c.strip() for c in body.split(","))):
                m = _ARROW.match(chunk)
                if not m:
                    raise ParseError("bad arrow %r, expected 'label: src -> tgt'" % chunk, ln)
                arrows.append(Arrow(m.group(1), m.group(2), m.group(3)))
            continue
        if line.startswith("relations:"):
            body = line[len("relations:"):].strip()
            for chunk in filter(None, (c.strip() for c in body.split(","))):
                raw_relations.append((ln, chunk))
            continue
        raise ParseError("unrecognized line %r" % line, ln)
    if name is None:
        raise ParseError("missing algebra header")
    if vertices is None:
        raise ParseError("missing vertices section")
    quiver = Quiver(vertices, arrows)

    relations = []
    for ln, chunk in raw_relations:
        terms = []
        for piece in (t.strip() for t in chunk.split("+")):
            m = _TERM.match(piece)
            if not m:
                raise ParseError("bad relation term %r" % piece, ln)
            coeff = int(m.group(1)) % p if m.group(1) else 1
            path = tuple(x.strip() for x in m.group(2).split("*"))
            terms.append(RelationTerm(coeff, path))
        ends = [path_endpoints(quiver, t.path, ln) for t in terms]
        if len(set(ends)) != 1:
            raise ParseError("relation terms are not parallel: %s" % chunk, ln)
        lengths = {len(t.path) for t in terms}
        if min(lengths) < 2:
            raise ParseError("relation term shorter than two arrows: %s" % chunk, ln)
        if len(lengths) != 1:
            raise ParseError("relation mixes term lengths (unsupported): %s" % chunk, ln)
        terms = [t for t in terms if t.coeff % p != 0]
        if terms:
            relations.append(Relation(tuple(terms)))
    return Presentation(name, p, quiver, tuple(relations))


def format_algebra_source(pres: Presentation) -> str:
    lines = ["algebra %s over GF(%d)" % (pres.name, pres.p)]
    lines.append("vertices: " + " ".join(pres.quiver.vertices))
    if pres.quiver.arrows:
        lines.append("arrows: " + ", ".join(
            "%s: %s -> %s" % (a.label, a.source, a.target) for a in pres.quiver.arrows))
    if pres.relations:
        rels = []
        for rel in pres.relations:
            parts = []
            for t in rel.terms:
                body = "*".join(t.path)
                parts.append(body if t.coeff == 1 else "%d*%s" % (t.coeff, body))
            rels.append(" + ".join(parts))
        lines.append("relations: " + ", ".join(rels))
    return "\n".join(lines) + "\n"


def opposite_presentation(pres: Presentation) -> Presentation:
    """Reverse all arrows and relation paths; involutive on the data."""
    quiver = Quiver(list(pres.quiver.vertices),
                    [Arrow(a.label, a.target, a.source) for a in pres.quiver.arrows])
    rels = tuple(Relation(tuple(RelationTerm(t.coeff, tuple(reversed(t.path)))
                                for t in rel.terms))
                 for rel in pres.relations)
    name = pres.name[:-3] if pres.name.endswith("^op") else pres.name + "^op"
    return Presentation(name, pres.p, quiver, rels)


# A monomial is a tuple of arrow labels; degree-0 classes are vertex
# idempotents represented as ("e", vertex).


class PathAlgebra:
    """Finite-dimensional quotient of a path algebra, with a fixed basis."""

    def __init__(self, pres: Presentation, length_cap: int = 12, path_budget: int = 200000):
        self.presentation = pres
        self.p = pres.p
        self.quiver = pres.quiver
        self.name = pres.name
        # survivors[d]: list of monomials representing the degree-d classes
        # reduce[d]: monomial -> coefficient vector over survivors[d]
        self._build(length_cap, path_budget)
        self.key = self._structural_key()
        self._opposite: PathAlgebra | None = None

    def _structural_key(self):
        q = self.quiver
        rels = tuple(tuple((t.coeff, t.path) for t in rel.terms)
                     for rel in self.presentation.relations)
        return (self.p, tuple(q.vertices),
                tuple((a.label, a.source, a.target) for a in q.arrows), rels)

    def _build(self, length_cap: int, path_budget: int):
        q = self.quiver
        p = self.p
        mono_by_deg: list[list[tuple[str, ...]]] = [[]]
        self.survivors: list[list] = [[("e", v) for v in q.vertices]]
        self.reduce_table: list[dict] = [{("e", v): None for v in q.vertices}]
        deg1 = [(a.label,) for a in q.arrows]
        total = len(q.vertices)
        if deg1:
            mono_by_deg.append(deg1)
            self.survivors.append(list(deg1))
            tbl = {}
            for i, m in enumerate(deg1):
                vec = np.zeros(len(deg1), dtype=np.int64)
                vec[i] = 1
                tbl[m] = vec
            self.reduce_table.append(tbl)
            total += len(deg1)
        by_len = {r: len(r.terms[0].path) for r in self.presentation.relations}
        d = 2
        while d - 1 < len(mono_by_deg) and mono_by_deg[d - 1]:
            if d > length_cap:
                raise NotFiniteDimensional(
                    "surviving paths past degree %d for algebra %s"
                    % (length_cap, self.name))
            monos: list[tuple[str, ...]] = []
            for m in mono_by_deg[d - 1]:
                end = q.arrow_map[m[-1]].target
                for a in q.arrows:
                    if a.source == end:
                        monos.append(m + (a.label,))
            total += len(monos)
            if total > path_budget:
                raise NotFiniteDimensional(
                    "path budget exceeded at degree %d for algebra %s" % (d, self.name))
            if not monos:
                break
            index = {m: i for i, m in enumerate(monos)}
            rows = []
            for rel, ell in by_len.items():
                if ell > d:
                    continue
                src, tgt = path_endpoints(q, rel.terms[0].path)
                for d1 in range(0, d - ell + 1):
                    d2 = d - ell - d1
                    pre_list = [()] if d1 == 0 else mono_by_deg[d1]
                    post_list = [()] if d2 == 0 else mono_by_deg[d2]
                    for u in pre_list:
                        if u and q.arrow_map[u[-1]].target != src:
                            continue
                        for v in post_list:
                            if v and q.arrow_map[v[0]].source != tgt:
                                continue
                            row = np.zeros(len(monos), dtype=np.int64)
                            for t in rel.terms:
                                full = u + t.path + v
                                row[index[full]] = (row[index[full]] + t.coeff) % p
                            if row.any():
                                rows.append(row)
            if rows:
                mat = np.array(rows, dtype=np.int64)
                r, piv = linalg.rref(mat, p)
            else:
                r, piv = np.zeros((0, len(monos)), dtype=np.int64), []
            pivset = set(piv)
            surv = [m for i, m in enumerate(monos) if i not in pivset]
            surv_pos = {m: j for j, m in enumerate(surv)}
            tbl = {}
            for i, m in enumerate(monos):
                vec = np.zeros(len(surv), dtype=np.int64)
                if i in pivset:
                    rowi = piv.index(i)
                    for j, mm in enumerate(surv):
                        c = int(r[rowi, index[mm]])
                        if c:
                            vec[j] = (-c) % p
                else:
                    vec[surv_pos[m]] = 1
                tbl[m] = vec
            if not surv:
                break
            mono_by_deg.append(monos)
            self.survivors.append(surv)
            self.reduce_table.append(tbl)
            d += 1
        self.max_degree = len(self.survivors) - 1
        self.dimension = sum(len(s) for s in self.survivors)

    def monomial_source(self, mono) -> str:
        if mono[0] == "e":
            return mono[1]
        return self.quiver.arrow_map[mono[0]].source

    def monomial_target(self, mono) -> str:
        if mono[0] == "e":
            return mono[1]
        return self.quiver.arrow_map[mono[-1]].target

    def basis_paths(self):
        """All basis classes as (degree, monomial), degree ascending."""
        for d, surv in enumerate(self.survivors):
            for m in surv:
                yield d, m

    def extend_by_arrow(self, degree: int, mono, label: str):
        """Class vector of (mono * arrow) over the degree+1 survivors.

        Returns (degree+1, vector) where the vector is indexed by
        survivors[degree+1]; beyond the maximal degree everything is zero.
        """
        arr = self.quiver.arrow_map[label]
        if self.monomial_target(mono) != arr.source:
            raise ValueError("non-composable extension")
        nd = degree + 1
        if nd > self.max_degree:
            return nd, np.zeros(0, dtype=np.int64)
        new = (label,) if mono[0] == "e" else mono + (label,)
        tbl = self.reduce_table[nd]
        if new not in tbl:
            return nd, np.zeros(len(self.survivors[nd]), dtype=np.int64)
        return nd, tbl[new]

    def opposite(self) -> "PathAlgebra":
        if self._opposite is None:
            self._opposite = PathAlgebra(opposite_presentation(self.presentation))
            self._opposite._opposite = self
        return self._opposite

    def __eq__(self, other):
        return isinstance(other, PathAlgebra) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "PathAlgebra(%s, dim=%d)" % (self.name, self.dimension)


def build_basis(pres: Presentation, length_cap: int = 12) -> PathAlgebra:
    return PathAlgebra(pres, length_cap=length_cap)
