"""Multiplicity censuses, cell assignment and graded dimensions of cells.

The modified algebra is never materialized. Counts for the block Ua_eta go
through the chain B(lam, -mu) in B(lam + t, -mu - t) with strictly dominant
steps t and are declared stable at two consecutive equal counts.

Why the step is s*rho with s = max(1, max_i k_i), k = root coordinates of
xi - eta: an element b of B(-mu) contributing to xi has wt(b) = -mu + (xi - eta),
and b = Dual(c) with c in B(mu) of weight mu - (xi - eta). The criterion
eps_i(b) <= lam(h_i) becomes eps_i(c) <= xi(h_i). Once mu(h_i) >= k_i the
weight space B(mu)_{mu - beta} matches B(infinity)_{-beta} (every eps*_i there
is at most k_i), so the count is constant from the first step on.
"""

import csv
import io
from dataclasses import dataclass, field

from .crystal import Tensor, classify_component, dual_crystal_of, generate, highest
from .errors import NotStabilized
from .filtration import hw_quotient


def _witnesses(rd, lam, mu, xi, max_length):
    g = dual_crystal_of(rd, mu, max_length, ops="e")
    return [b for b in g.vertices if hw_quotient(rd, lam, b) == xi]


def count_hw_components(rd, lam, mu, xi, max_length):
    """#{b in B(-mu), l(b) <= max_length : u_lam x b is highest of weight xi}."""
    if not (lam.is_dominant() and mu.is_dominant() and xi.is_dominant()):
        raise ValueError("lambda, mu and xi must be dominant")
    h = rd.height(xi - lam + mu)
    if h is None or h > max_length:
        return 0
    return len(_witnesses(rd, lam, mu, xi, h))


@dataclass
class MultiplicityCell:
    xi: object
    eta: object  # Weight, or (eta1, eta2) for bi-weight censuses
    count: int
    stabilized_at: int
    step: object  # the stabilizer weight
    counts: list  # count at each step j = 0, 1, ...
    depth: int  # length of the weight layer that was enumerated
    oracle: object = None
    meta: dict = field(default_factory=dict)

    def to_row(self):
        eta = self.eta if not isinstance(self.eta, tuple) else "|".join(str(e) for e in self.eta)
        return {"xi": str(self.xi), "eta": str(eta), "count": self.count,
                "oracle": "" if self.oracle is None else self.oracle,
                "stabilized_at": self.stabilized_at, "depth": self.depth}

    def to_json(self):
        eta = ([e.to_json() for e in self.eta] if isinstance(self.eta, tuple)
               else self.eta.to_json())
        return {"xi": self.xi.to_json(), "eta": eta, "count": self.count,
                "oracle": self.oracle,
                "certificate": {"stabilized_at": self.stabilized_at, "step": self.step.to_json(),
                                "counts": self.counts, "depth": self.depth}}


def stabilizer(rd, xi, eta):
    """(lam0, mu0, step, beta-height) for the chain lam_j = lam0 + j*step, mu_j = lam_j - eta.

    Returns None when xi - eta is not in Q^+ (the count is then identically zero).
    """
    k = rd.root_coords(xi - eta)
    if k is None or any(x.denominator != 1 or x < 0 for x in k):
        return None
    s = max([1] + [int(x) for x in k])
    lam0 = rd.weight([max(x, 0) for x in eta.h], eta.d)
    mu0 = lam0 - eta
    return lam0, mu0, rd.rho * s, int(sum(k))


def _stabilize(rd, xi, eta, theta_steps, count_at):
    st = stabilizer(rd, xi, eta)
    if st is None:
        return 0, 0, rd.rho, [0], 0
    lam0, mu0, step, h = st
    counts = []
    for j in range(theta_steps + 1):
        counts.append(count_at(lam0 + step * j, mu0 + step * j, h))
        if j >= 1 and counts[-1] == counts[-2]:
            return counts[-1], j, step, counts, h
    raise NotStabilized(f"count for xi={xi}, eta={eta} still changing after {theta_steps} steps", counts)


def multiplicity(rd, xi, eta, theta_steps=3, max_length=None):
    """Stabilized [B(Ua_eta) : B(xi)]; equals dim V(xi)_eta in finite type (asserted)."""
    if not xi.is_dominant():
        raise ValueError("xi must be dominant")

    def count_at(lam, mu, h):
        if max_length is not None and h > max_length:
            raise NotStabilized(f"weight layer {h} is beyond max_length {max_length}", [])
        return len(_witnesses(rd, lam, mu, xi, h))

    count, j, step, counts, h = _stabilize(rd, xi, eta, theta_steps, count_at)
    oracle = None
    if rd.kind == "finite":
        oracle = rd.freudenthal_dim(xi, eta)
        assert count == oracle, (str(xi), str(eta), count, oracle)
    return MultiplicityCell(xi, eta, count, j, step, counts, h, oracle)


def cell_assign(rd, g, v, use_level=True):
    """Cell label of the component of vertex v (an index or an element) of an explored B(lam, -mu)."""
    idx = v if isinstance(v, int) else g.index[v]
    return classify_component(g, idx, rd, use_level)


def cell_graded_dimension(rd, xi, eta1, eta2, theta_steps=3, max_length=None):
    """#{canonical elements in cell xi with left weight eta1 and right weight eta2}.

    Census: for each witness b with quotient xi in B(lam, -mu), lam - mu = eta2, the
    f-closure of u_lam x b is a copy of B(xi); count its vertices of weight eta1.
    """
    down = rd.height(xi - eta1)

    def count_at(lam, mu, h):
        if down is None:
            return 0
        if max_length is not None and h > max_length:
            raise NotStabilized(f"weight layer {h} is beyond max_length {max_length}", [])
        u = highest(rd, lam)
        total = 0
        for b in _witnesses(rd, lam, mu, xi, h):
            comp = generate([Tensor(u, b)], down, rd.n, ops="f")
            total += sum(1 for k, c in enumerate(comp.vertices) if comp.layer[k] == down and c.wt() == eta1)
        return total

    count, j, step, counts, h = _stabilize(rd, xi, eta2, theta_steps, count_at)
    oracle = None
    if rd.kind == "finite":
        oracle = rd.freudenthal_dim(xi, eta1) * rd.freudenthal_dim(xi, eta2)
        assert count == oracle, (str(xi), str(eta1), str(eta2), count, oracle)
    return MultiplicityCell(xi, (eta1, eta2), count, j, step, counts, h, oracle)


def dominant_weights_upto(rd, cutoff):
    """Dominant xi (finite type) with sum_i xi(h_i) <= cutoff, in a fixed order."""
    out = []

    def rec(prefix, left):
        if len(prefix) == rd.n:
            out.append(rd.weight(prefix))
            return
        for x in range(left + 1):
            rec(prefix + [x], left - x)

    rec([], cutoff)
    return sorted(out, key=lambda w: (sum(w.h), w.h))


@dataclass
class PeterWeylCount:
    eta1: object
    eta2: object
    cutoff: int
    total: int
    census: int
    cells: list  # MultiplicityCell per contributing xi

    def to_json(self):
        return {"eta1": self.eta1.to_json(), "eta2": self.eta2.to_json(), "cutoff": self.cutoff,
                "total": self.total, "census": self.census,
                "cells": [c.to_json() for c in self.cells]}


def peter_weyl_count(rd, eta1, eta2, cutoff, theta_steps=3):
    """sum over dominant xi with sum xi(h_i) <= cutoff of dim V(xi)_eta1 * dim V(xi)_eta2.

    The closed form is checked against the stabilized bi-weight census of every cell.
    """
    rd._need_finite()
    total = census = 0
    cells = []
    for xi in dominant_weights_upto(rd, cutoff):
        prod = rd.freudenthal_dim(xi, eta1) * rd.freudenthal_dim(xi, eta2)
        total += prod
        if rd.height(xi - eta1) is None or rd.height(xi - eta2) is None:
            continue
        cell = cell_graded_dimension(rd, xi, eta1, eta2, theta_steps)
        census += cell.count
        cells.append(cell)
    assert census == total, (census, total)
    return PeterWeylCount(eta1, eta2, cutoff, total, census, cells)


def multiplicity_table(rd, xis, theta_steps=3):
    """MultiplicityCell for every xi in xis and every eta in the weight diagram of V(xi)."""
    rows = []
    for xi in xis:
        for eta in sorted(rd.character(xi)):
            rows.append(multiplicity(rd, xi, eta, theta_steps))
    return rows


def to_csv(cells, header=None):
    buf = io.StringIO()
    if header:
        for line in header.splitlines():
            buf.write(f"# {line}\n")
    w = csv.DictWriter(buf, fieldnames=["xi", "eta", "count", "oracle", "stabilized_at", "depth"],
                       lineterminator="\n")
    w.writeheader()
    for c in cells:
        w.writerow(c.to_row())
    return buf.getvalue()
