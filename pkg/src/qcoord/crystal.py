"""Crystals B(lambda), B(-mu), their tensor products, and depth-bounded exploration.

B(lambda) is realized by Littelmann root operators on the orbit of the straight
path t -> t*lambda, with exact rational vertices. B(-mu) is the contragredient
dual of B(mu). All elements are immutable and hashable.
"""

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
import json

from .cartan import Weight
from .errors import BudgetExceeded, IntegralityViolation

NEG_INF = float("-inf")

# "kashiwara": f_i(b1 x b2) = f_i b1 x b2 iff phi_i(b1) > eps_i(b2).
# "anti-kashiwara" reads every tensor pair right-to-left.
TENSOR_CONVENTION = "kashiwara"


def _vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _parallel(u, v):
    """u = c v with c > 0."""
    k = next(j for j, x in enumerate(v) if x != 0)
    c = u[k] / v[k]
    if c <= 0:
        return False
    return all(a == c * b for a, b in zip(u, v))


def _canonical(verts):
    out = [verts[0]]
    for v in verts[1:]:
        seg = _vsub(v, out[-1])
        if not any(seg):
            continue
        if len(out) >= 2 and _parallel(seg, _vsub(out[-1], out[-2])):
            out[-1] = v
        else:
            out.append(v)
    return tuple(out)


def _fmt(x):
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Element:
    """Common interface; concrete classes implement wt, eps, phi, e, f, key."""

    def key(self):
        raise NotImplementedError

    def __lt__(self, other):
        return self.key() < other.key()

    def __str__(self):
        return self.key()


@dataclass(frozen=True, eq=False)
class HWPath(Element):
    """Littelmann path in B(shape); verts[0] is the origin."""

    shape: Weight
    verts: tuple
    rd: object = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, HWPath) and self.verts == other.verts and self.shape == other.shape

    def __hash__(self):
        return hash((self.shape, self.verts))

    @cached_property
    def _mins(self):
        return tuple(min(v[i] for v in self.verts) for i in range(self.rd.n))

    @cached_property
    def _wt(self):
        end = self.verts[-1]
        if any(x.denominator != 1 for x in end):
            raise IntegralityViolation(f"non-integral endpoint {end}")
        n = self.rd.n
        return Weight(tuple(int(x) for x in end[:n]), tuple(int(x) for x in end[n:]))

    def wt(self):
        return self._wt

    def eps(self, i):
        return int(-self._mins[i])

    def phi(self, i):
        return int(self.verts[-1][i] - self._mins[i])

    def _alpha(self, i):
        a = self.rd.alpha(i)
        return tuple(Fraction(x) for x in a.h + a.d)

    def _make(self, verts):
        p = HWPath(self.shape, _canonical(verts), self.rd)
        for i, m in enumerate(p._mins):
            if m.denominator != 1:
                raise IntegralityViolation(f"i-height minimum {m} for i={i} in {p.key()}")
        return p

    def f(self, i):
        verts = self.verts
        hv = [v[i] for v in verts]
        m = self._mins[i]
        if hv[-1] - m < 1:
            return None
        k0 = max(k for k, x in enumerate(hv) if x == m)
        k = next(k for k in range(k0, len(hv) - 1) if hv[k] < m + 1 <= hv[k + 1])
        s = (m + 1 - hv[k]) / (hv[k + 1] - hv[k])
        star = tuple(a + s * (b - a) for a, b in zip(verts[k], verts[k + 1]))
        alpha = self._alpha(i)
        base = verts[k0]

        def refl(p):
            d = _vsub(p, base)
            return _vadd(base, tuple(x - d[i] * a for x, a in zip(d, alpha)))

        new = list(verts[:k0 + 1])
        new += [refl(p) for p in verts[k0 + 1:k + 1]]
        new.append(_vsub(star, alpha))
        new += [_vsub(p, alpha) for p in verts[k + 1:]]
        return self._make(new)

    def e(self, i):
        verts = self.verts
        hv = [v[i] for v in verts]
        m = self._mins[i]
        if m > -1:
            return None
        k1 = min(k for k, x in enumerate(hv) if x == m)
        j = max(k for k in range(k1) if hv[k] >= m + 1)
        s = (m + 1 - hv[j]) / (hv[j + 1] - hv[j])
        star = tuple(a + s * (b - a) for a, b in zip(verts[j], verts[j + 1]))
        alpha = self._alpha(i)

        def refl(p):
            d = _vsub(p, star)
            return _vadd(star, tuple(x - d[i] * a for x, a in zip(d, alpha)))

        new = list(verts[:j + 1]) + [star]
        new += [refl(p) for p in verts[j + 1:k1 + 1]]
        new += [_vadd(p, alpha) for p in verts[k1 + 1:]]
        return self._make(new)

    def key(self):
        body = ";".join(",".join(_fmt(x) for x in v) for v in self.verts[1:])
        return f"P{self.shape}[{body}]"


@dataclass(frozen=True)
class Dual(Element):
    """Contragredient dual of an element of B(mu); lives in B(-mu)."""

    inner: Element

    def wt(self):
        return -self.inner.wt()

    def eps(self, i):
        return self.inner.phi(i)

    def phi(self, i):
        return self.inner.eps(i)

    def e(self, i):
        x = self.inner.f(i)
        return None if x is None else Dual(x)

    def f(self, i):
        x = self.inner.e(i)
        return None if x is None else Dual(x)

    def key(self):
        return f"D({self.inner.key()})"


@dataclass(frozen=True)
class TToken(Element):
    """Single-element crystal T_lambda: eps = phi = -inf."""

    weight: Weight

    def wt(self):
        return self.weight

    def eps(self, i):
        return NEG_INF

    def phi(self, i):
        return NEG_INF

    def e(self, i):
        return None

    def f(self, i):
        return None

    def key(self):
        return f"t{self.weight}"


@dataclass(frozen=True)
class Tensor(Element):
    left: Element
    right: Element

    def _pair(self):
        if TENSOR_CONVENTION == "kashiwara":
            return self.left, self.right
        return self.right, self.left

    def _build(self, b1, b2):
        if TENSOR_CONVENTION == "kashiwara":
            return Tensor(b1, b2)
        return Tensor(b2, b1)

    @cached_property
    def _wt(self):
        return self.left.wt() + self.right.wt()

    def wt(self):
        return self._wt

    def eps(self, i):
        b1, b2 = self._pair()
        return max(b1.eps(i), b2.eps(i) - b1.wt().h[i])

    def phi(self, i):
        b1, b2 = self._pair()
        return max(b2.phi(i), b1.phi(i) + b2.wt().h[i])

    def f(self, i):
        b1, b2 = self._pair()
        if b1.phi(i) > b2.eps(i):
            x = b1.f(i)
            return None if x is None else self._build(x, b2)
        x = b2.f(i)
        return None if x is None else self._build(b1, x)

    def e(self, i):
        b1, b2 = self._pair()
        if b1.phi(i) >= b2.eps(i):
            x = b1.e(i)
            return None if x is None else self._build(x, b2)
        x = b2.e(i)
        return None if x is None else self._build(b1, x)

    def key(self):
        return f"({self.left.key()} x {self.right.key()})"


def highest(rd, lam):
    """u_lambda: the straight path to lambda."""
    end = tuple(Fraction(x) for x in lam.h + lam.d)
    zero = tuple(Fraction(0) for _ in end)
    verts = (zero,) if not any(end) else (zero, end)
    return HWPath(lam, verts, rd)


def lowest(rd, mu):
    """u_{-mu} in B(-mu)."""
    return Dual(highest(rd, mu))


# module-level aliases matching the operator names
def eps(b, i):
    return b.eps(i)


def phi(b, i):
    return b.phi(i)


def wt(b):
    return b.wt()


def path_f(p, i):
    return p.f(i)


def path_e(p, i):
    return p.e(i)


def tensor_f(b, i):
    return b.f(i)


def tensor_e(b, i):
    return b.e(i)


# -- graphs ----------------------------------------------------------------------

@dataclass
class CrystalGraph:
    vertices: list
    layer: list
    complete: list
    edges: list  # (src, i, dst) with f_i(src) = dst
    depth: object
    seeds: list
    n: int
    ops: str = "ef"
    index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.index:
            self.index = {v: k for k, v in enumerate(self.vertices)}

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, b):
        return b in self.index

    def all_complete(self):
        return all(self.complete)

    def components(self):
        parent = list(range(len(self.vertices)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s, _, t in self.edges:
            a, b = find(s), find(t)
            if a != b:
                parent[max(a, b)] = min(a, b)
        groups = {}
        for v in range(len(self.vertices)):
            groups.setdefault(find(v), []).append(v)
        return [groups[r] for r in sorted(groups)]

    def component_of(self, v):
        for comp in self.components():
            if v in comp:
                return comp
        raise KeyError(v)

    def to_json(self, classification=None, extra=None):
        out = {
            "depth": self.depth,
            "vertices": [
                {"id": k, "element": b.key(), "weight": b.wt().to_json(),
                 "layer": self.layer[k], "complete": self.complete[k]}
                for k, b in enumerate(self.vertices)
            ],
            "edges": [{"source": s, "target": t, "label": i} for s, i, t in self.edges],
            "classification": classification,
        }
        if extra:
            out.update(extra)
        return out

    def to_dot(self, name="crystal", header=None):
        lines = []
        if header:
            lines += [f"// {line}" for line in header.splitlines()]
        lines.append(f"digraph {json.dumps(name)} {{")
        for k, b in enumerate(self.vertices):
            label = f"{b.wt()}\\n{b.key()}"
            style = "" if self.complete[k] else ", style=dashed"
            lines.append(f"  v{k} [label={json.dumps(label)}{style}];")
        for s, i, t in self.edges:
            lines.append(f"  v{s} -> v{t} [label=\"{i}\"];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def generate(seeds, depth, n, ops="ef", vertex_cap=200000):
    """Breadth-first closure of seeds under the operators in ops, up to depth steps.

    depth=None explores until closure (only safe for finite crystals). A vertex
    is complete when every operator image is null or already a vertex.
    """
    seen = {}
    order = []
    layer = []
    frontier = []
    for s in sorted(set(seeds), key=lambda b: b.key()):
        seen[s] = len(order)
        order.append(s)
        layer.append(0)
        frontier.append(s)
    d = 0
    while frontier and (depth is None or d < depth):
        d += 1
        new = set()
        for v in frontier:
            for i in range(n):
                for op in ops:
                    w = v.f(i) if op == "f" else v.e(i)
                    if w is not None and w not in seen and w not in new:
                        new.add(w)
        frontier = sorted(new, key=lambda b: b.key())
        for w in frontier:
            seen[w] = len(order)
            order.append(w)
            layer.append(d)
        if len(order) > vertex_cap:
            raise BudgetExceeded(f"vertex cap {vertex_cap} exceeded at depth {d}",
                                 {"vertices": len(order), "complete_depth": d - 1})
    edges = []
    complete = []
    for k, v in enumerate(order):
        ok = True
        for i in range(n):
            w = v.f(i)
            if w is not None:
                if w in seen:
                    edges.append((k, i, seen[w]))
                elif "f" in ops:
                    ok = False
            if "e" in ops:
                w = v.e(i)
                if w is not None and w not in seen:
                    ok = False
        complete.append(ok)
    edges.sort()
    return CrystalGraph(order, layer, complete, edges, depth, list(order[:len(set(seeds))]), n, ops, seen)


@dataclass(frozen=True)
class Classification:
    kind: str  # "HW" | "NotHW" | "UnknownAtDepth"
    weight: Weight = None
    certificate: str = ""

    def to_json(self):
        return {"kind": self.kind,
                "weight": self.weight.to_json() if self.weight is not None else None,
                "certificate": self.certificate}


def classify_component(g, v, rd=None, use_level=False):
    """Classify the component of vertex index v.

    HW(xi) needs a complete vertex killed by every e_i. NotHW needs a certificate:
    a fully explored component without such a vertex, or (use_level, affine rd)
    the level argument.
    """
    comp = g.component_of(v)
    for u in comp:
        b = g.vertices[u]
        if g.complete[u] and all(b.e(i) is None for i in range(g.n)):
            return Classification("HW", b.wt(), f"highest weight vertex {u}")
    if all(g.complete[u] for u in comp) and "e" in g.ops:
        return Classification("NotHW", None, "component closed without a highest weight vertex")
    if use_level and rd is not None and rd.kind == "affine":
        w = g.vertices[v].wt()
        lev = rd.level(w)
        if lev < 0:
            return Classification("NotHW", None, f"level {lev} < 0")
        if lev == 0 and not w.in_P0():
            return Classification("NotHW", None, "level 0 weight outside P0")
        if lev == 0 and len(comp) > 1:
            return Classification("NotHW", None, "level 0 component with more than one vertex")
    return Classification("UnknownAtDepth", None, f"depth {g.depth}")


def character(g):
    counts = {}
    incomplete = {}
    for k, b in enumerate(g.vertices):
        target = counts if g.complete[k] else incomplete
        w = b.wt()
        target[w] = target.get(w, 0) + 1
    return counts, incomplete


def crystal_of(rd, lam, depth=None, **kw):
    """Explored B(lam)."""
    return generate([highest(rd, lam)], depth, rd.n, **kw)


def dual_crystal_of(rd, mu, depth=None, **kw):
    """Explored B(-mu)."""
    return generate([lowest(rd, mu)], depth, rd.n, **kw)


def tensor_seeds(rd, lam, mu, max_length):
    """u_lambda x c for c in B(-mu) of length <= max_length; their f-closure is B(lam) x B(-mu)."""
    bm = dual_crystal_of(rd, mu, max_length)
    u = highest(rd, lam)
    return [Tensor(u, c) for c in bm.vertices]


def decompose(rd, lam, mu, depth=None, vertex_cap=200000, use_level=False):
    """Components of the explored part of B(lam) x B(-mu) with their classifications.

    Returns (graph, [(seed vertex index, Classification), ...]).
    """
    seeds = tensor_seeds(rd, lam, mu, depth)
    g = generate(seeds, depth, rd.n, vertex_cap=vertex_cap)
    out = []
    for comp in g.components():
        out.append((comp[0], classify_component(g, comp[0], rd, use_level)))
    return g, out


def embed_component(g, start, target, target_start):
    """Check that the component of g through start maps into target by a
    label-preserving morphism sending start to target_start and matching wt, eps, phi.
    """
    mapping = {start: target_start}
    queue = deque([start])
    n = g.n
    while queue:
        u = queue.popleft()
        b = g.vertices[u]
        t = mapping[u]
        if b.wt() != t.wt():
            return False
        for i in range(n):
            if g.complete[u] and (b.eps(i), b.phi(i)) != (t.eps(i), t.phi(i)):
                return False
            for op in "fe":
                nb = b.f(i) if op == "f" else b.e(i)
                nt = t.f(i) if op == "f" else t.e(i)
                if nb is None or nb not in g.index:
                    if nb is None and nt is not None and g.complete[u]:
                        return False
                    continue
                if nt is None or nt not in target.index:
                    return False
                w = g.index[nb]
                if w in mapping:
                    if mapping[w] != nt:
                        return False
                else:
                    mapping[w] = nt
                    queue.append(w)
    return True
