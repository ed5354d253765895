"""Independent brute-force oracles used to freeze expected values.

Everything here is deliberately naive: exhaustive enumeration over small
fields and raw combinatorial counting straight off a presentation.  The
library under test must agree with these on the corpus scale.
"""

from __future__ import annotations

import itertools

import numpy as np


def brute_kernel(m, p):
    """All kernel vectors of m over GF(p), found by trying every vector."""
    m = np.asarray(m, dtype=np.int64) % p
    rows, cols = m.shape
    out = []
    for v in itertools.product(range(p), repeat=cols):
        x = np.array(v, dtype=np.int64)
        if not (m @ x % p).any():
            out.append(tuple(v))
    return set(out)


def brute_rank(m, p):
    cols = m.shape[1]
    nullity = 0
    for v in brute_kernel(m, p):
        nullity += 1
    # kernel size is p^(cols - rank)
    k = len(brute_kernel(m, p))
    r = cols
    while p ** (cols - r) != k:
        r -= 1
    return r


def count_arrows(pres, src, tgt):
    """Number of arrows src -> tgt in a parsed presentation."""
    return sum(1 for a in pres.quiver.arrows if a.source == src and a.target == tgt)


def count_relation_generators(pres, src, tgt):
    """Number of relation generators with all terms running src -> tgt."""
    n = 0
    for rel in pres.relations:
        t0 = rel.terms[0]
        first = pres.quiver.arrow_map[t0.path[0]]
        last = pres.quiver.arrow_map[t0.path[-1]]
        if first.source == src and last.target == tgt:
            n += 1
    return n


def enumerate_paths(pres, max_len):
    """All composable arrow sequences up to max_len, plus vertex idempotents."""
    arrows = pres.quiver.arrows
    paths = {0: [("e", v) for v in pres.quiver.vertices]}
    cur = [(a.label,) for a in arrows]
    ln = 1
    while ln <= max_len and cur:
        paths[ln] = list(cur)
        nxt = []
        for pth in cur:
            end = pres.quiver.arrow_map[pth[-1]].target
            for a in arrows:
                if a.source == end:
                    nxt.append(pth + (a.label,))
        cur = nxt
        ln += 1
    return paths


def monomial_algebra_dimension(pres, max_len=10):
    """Dimension of kQ/I for monomial relations, by subword exclusion.

    Only valid when every relation is a single path (all corpus algebras).
    A path survives iff it contains no relation path as a contiguous subword.
    """
    forbidden = []
    for rel in pres.relations:
        assert len(rel.terms) == 1, "oracle only handles monomial relations"
        forbidden.append(tuple(rel.terms[0].path))
    paths = enumerate_paths(pres, max_len)
    dim = len(paths[0])
    alive_prev = True
    for ln in range(1, max_len + 1):
        if ln not in paths:
            break
        alive = []
        for pth in paths[ln]:
            dead = False
            for f in forbidden:
                k = len(f)
                if k <= len(pth):
                    for s in range(len(pth) - k + 1):
                        if pth[s:s + k] == f:
                            dead = True
                            break
                if dead:
                    break
            if not dead:
                alive.append(pth)
        if not alive:
            break
        dim += len(alive)
    return dim


def brute_hom_count(M, N, cap=4096):
    """Count vertexwise map tuples commuting with every arrow action.

    Enumerates every choice of matrices, so the total entry count must be
    tiny.  For a correct hom computation of dimension h this equals p^h.
    """
    p = M.algebra.p
    verts = M.algebra.quiver.vertices
    shapes = [(N.dim(v), M.dim(v)) for v in verts]
    entries = sum(r * c for r, c in shapes)
    assert p ** entries <= cap, "oracle enumeration too large"
    count = 0
    for flat in itertools.product(range(p), repeat=entries):
        blocks = {}
        at = 0
        for v, (r, c) in zip(verts, shapes):
            blocks[v] = np.array(flat[at:at + r * c], dtype=np.int64).reshape(r, c)
            at += r * c
        ok = True
        for arr in M.algebra.quiver.arrows:
            lhs = N.action[arr.label] @ blocks[arr.source] % p
            rhs = blocks[arr.target] @ M.action[arr.label] % p
            if not np.array_equal(lhs, rhs):
                ok = False
                break
        if ok:
            count += 1
    return count
