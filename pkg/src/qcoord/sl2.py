"""The modified quantized enveloping algebra of sl2 and its canonical basis.

Every triple (a, b, n) with a, b >= 0 labels exactly one canonical basis element:
E^(a)F^(b)1_n when n <= b - a (family A) and F^(b)E^(a)1_n when n >= b - a
(family B); on the overlap n = b - a the two monomials coincide and the label A
is used. The weight index n is the right weight; the left weight is n + 2(a - b).

Modules: V(N) has basis v_k = F^(k)v_0 (weight N - 2k). V(-mu) is the omega-twist
of V(mu) with basis w_k (weight -mu + 2k), so u_{-mu} = w_0.
"""

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import MarginViolation
from .qlaurent import ONE, ZERO, LaurentPoly, q_binomial, q_factorial, q_int

# "lower": D(E) = E x K^-1 + 1 x E, D(F) = F x 1 + K x F (matches the Kashiwara tensor rule).
# "upper": D(E) = E x 1 + K x E, D(F) = F x K^-1 + 1 x F.
COPRODUCT_CONVENTION = "lower"


def _q(k):
    return LaurentPoly.monomial(k)


@dataclass(frozen=True, order=True)
class Monomial:
    family: str  # "A" = E^(a)F^(b)1_n, "B" = F^(b)E^(a)1_n
    a: int
    b: int
    n: int

    @property
    def left(self):
        return self.n + 2 * (self.a - self.b)

    @property
    def right(self):
        return self.n

    def is_canonical(self):
        if self.family == "A":
            return self.n <= self.b - self.a
        return self.n > self.b - self.a

    def __str__(self):
        def pw(g, k):
            return "" if k == 0 else g if k == 1 else f"{g}^({k})"

        body = pw("E", self.a) + pw("F", self.b) if self.family == "A" else pw("F", self.b) + pw("E", self.a)
        return f"{body}1_{self.n}"

    def to_json(self):
        return {"family": self.family, "a": self.a, "b": self.b, "n": self.n, "text": str(self)}


def canon(a, b, n):
    """The canonical basis label with E-power a, F-power b and right weight n."""
    if a < 0 or b < 0:
        raise ValueError("divided powers must be nonnegative")
    return Monomial("A" if n <= b - a else "B", a, b, n)


def idempotent(n):
    return canon(0, 0, n)


_MONO = re.compile(r"^\s*(?:([EF])(?:\^\((\d+)\))?)?(?:([EF])(?:\^\((\d+)\))?)?1_(-?\d+)\s*$")


def parse_monomial(text):
    """Parse "E^(2)F^(3)1_-1", "F1_1", "EF1_0", "1_2" or "F^(2)E1_3" into a canonical label.

    The monomial written must itself be canonical.
    """
    m = _MONO.match(text)
    if not m:
        raise ValueError(f"cannot parse monomial {text!r}")
    g1, p1, g2, p2, n = m.groups()
    n = int(n)
    pows = {"E": 0, "F": 0}
    if g1:
        pows[g1] = int(p1) if p1 else 1
    if g2:
        if g2 == g1:
            raise ValueError(f"repeated generator in {text!r}")
        pows[g2] = int(p2) if p2 else 1
    a, b = pows["E"], pows["F"]
    mono = canon(a, b, n)
    if a and b:
        written = "A" if g1 == "E" else "B"
        if written != mono.family and n != b - a:
            raise ValueError(f"{text} is not a canonical basis element")
    return mono


# -- raw monomials and rewriting ---------------------------------------------------

def _ef_to_fe(a, b, n):
    """E^(a)F^(b)1_n = sum_t [a - b + n, t] F^(b-t)E^(a-t)1_n."""
    return [(("B", a - t, b - t, n), q_binomial(a - b + n, t)) for t in range(min(a, b) + 1)]


def _fe_to_ef(a, b, n):
    """F^(b)E^(a)1_n = sum_t [b - a - n, t] E^(a-t)F^(b-t)1_n."""
    return [(("A", a - t, b - t, n), q_binomial(b - a - n, t)) for t in range(min(a, b) + 1)]


def to_canonical(raw):
    """Rewrite a combination {(family, a, b, n): coeff} in canonical labels."""
    out = {}
    for (fam, a, b, n), c in raw.items():
        if not c:
            continue
        if fam == "A" and n > b - a:
            terms = _ef_to_fe(a, b, n)
        elif fam == "B" and n < b - a:
            terms = _fe_to_ef(a, b, n)
        else:
            terms = [((fam, a, b, n), ONE)]
        for (_, a2, b2, n2), k in terms:
            if k:
                m = canon(a2, b2, n2)
                out[m] = out.get(m, ZERO) + c * k
    return AlgElement(out)


class AlgElement:
    """Finite combination of canonical basis elements with Laurent coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if isinstance(terms, Monomial):
            terms = {terms: ONE}
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        assert all(m.is_canonical() for m in self.terms)

    def __eq__(self, other):
        return isinstance(other, AlgElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, ZERO) + c
        return AlgElement(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        if isinstance(c, int):
            c = LaurentPoly(c)
        return AlgElement({m: k * c for m, k in self.terms.items()})

    def __mul__(self, other):
        return multiply(self, other)

    def is_zero(self):
        return not self.terms

    def items(self):
        return sorted(self.terms.items())

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{m}" for m, c in self.items())

    __repr__ = __str__


def _as_ef(m):
    if m.family == "A":
        return [((m.a, m.b, m.n), ONE)]
    return [((a, b, n), c) for (_, a, b, n), c in _fe_to_ef(m.a, m.b, m.n)]


@lru_cache(maxsize=None)
def _mul_mono(mx, my):
    if mx.n != my.left:
        return {}
    raw = {}
    for (a, b, _), c1 in _as_ef(mx):
        for (c, d, n), c2 in _as_ef(my):
            # E^(a)F^(b) E^(c)F^(d)1_n: reorder the middle F^(b)E^(c)1_{n-2d}
            for t in range(min(b, c) + 1):
                k = q_binomial(b - c - (n - 2 * d), t)
                if not k:
                    continue
                k = c1 * c2 * k * q_binomial(a + c - t, a) * q_binomial(b + d - t, d)
                key = ("A", a + c - t, b + d - t, n)
                raw[key] = raw.get(key, ZERO) + k
    return to_canonical(raw).terms


def multiply(x, y):
    """Product in the modified algebra; 1_m 1_n = delta_{m,n} 1_n."""
    out = {}
    for mx, cx in x.terms.items():
        for my, cy in y.terms.items():
            for m, k in _mul_mono(mx, my).items():
                out[m] = out.get(m, ZERO) + cx * cy * k
    return AlgElement(out)


def element(mono):
    return AlgElement({mono: ONE})


def E(a, n):
    """E^(a)1_n."""
    return element(canon(a, 0, n))


def F(b, n):
    """F^(b)1_n."""
    return element(canon(0, b, n))


def one(n):
    return element(idempotent(n))


# -- involutions -------------------------------------------------------------------

def star_index(m):
    """The anti-automorphism with E* = E, F* = F, 1_n* = 1_-n, on a canonical label."""
    if m.family == "A":
        img = Monomial("B", m.a, m.b, -m.n + 2 * (m.b - m.a))
    else:
        img = Monomial("A", m.a, m.b, -m.n + 2 * (m.b - m.a))
    return canon(img.a, img.b, img.n)


def omega_index(m):
    """The automorphism swapping E and F and sending 1_n to 1_-n."""
    return canon(m.b, m.a, -m.n)


def star(x):
    return AlgElement({star_index(m): c for m, c in x.terms.items()})


def omega(x):
    return AlgElement({omega_index(m): c for m, c in x.terms.items()})


def star_raw(m):
    """star computed from the definition on the written monomial, then rewritten."""
    # (E^(a)F^(b)1_n)* = 1_-n F^(b)E^(a) = F^(b)E^(a)1_{n'} with n' + 2(a-b) = -n
    fam = "B" if m.family == "A" else "A"
    return to_canonical({(fam, m.a, m.b, -m.n + 2 * (m.b - m.a)): ONE})


def omega_raw(m):
    fam = "B" if m.family == "A" else "A"
    return to_canonical({(fam, m.b, m.a, -m.n): ONE})


# -- modules -----------------------------------------------------------------------

class Module:
    """Tensor product of factors ("V", N) and ("W", mu) under the chosen coproduct."""

    def __init__(self, factors, convention=None):
        self.factors = [tuple(f) for f in factors]
        self.convention = convention or COPRODUCT_CONVENTION
        self.basis = list(itertools.product(*[range(k + 1) for _, k in self.factors]))
        self.position = {v: i for i, v in enumerate(self.basis)}

    def _wt1(self, f, k):
        kind, top = f
        return top - 2 * k if kind == "V" else -top + 2 * k

    def weight(self, idx):
        return sum(self._wt1(f, k) for f, k in zip(self.factors, idx))

    def highest(self):
        return {tuple(0 for _ in self.factors): ONE}

    def _e1(self, f, k):
        kind, top = f
        if kind == "V":
            return (k - 1, q_int(top - k + 1)) if k >= 1 else None
        return (k + 1, q_int(k + 1)) if k < top else None

    def _f1(self, f, k):
        kind, top = f
        if kind == "V":
            return (k + 1, q_int(k + 1)) if k < top else None
        return (k - 1, q_int(top - k + 1)) if k >= 1 else None

    def _gen(self, vec, which):
        lower = self.convention == "lower"
        out = {}
        for idx, c in vec.items():
            wts = [self._wt1(f, k) for f, k in zip(self.factors, idx)]
            for j, f in enumerate(self.factors):
                step = self._e1(f, idx[j]) if which == "E" else self._f1(f, idx[j])
                if step is None:
                    continue
                k2, coeff = step
                if which == "E":
                    # lower: K^-1 on the factors right of j; upper: K on the factors left of j
                    shift = -sum(wts[j + 1:]) if lower else sum(wts[:j])
                else:
                    # lower: K on the factors left of j; upper: K^-1 on the factors right of j
                    shift = sum(wts[:j]) if lower else -sum(wts[j + 1:])
                new = idx[:j] + (k2,) + idx[j + 1:]
                out[new] = out.get(new, ZERO) + c * coeff.shift(shift)
        return {k: v for k, v in out.items() if v}

    def divided(self, vec, which, p):
        for _ in range(p):
            vec = self._gen(vec, which)
            if not vec:
                return {}
        if p > 1:
            d = q_factorial(p)
            vec = {k: v.exact_div(d) for k, v in vec.items()}
        return vec

    def act_monomial(self, m, vec):
        vec = {k: v for k, v in vec.items() if self.weight(k) == m.n}
        if m.family == "A":
            return self.divided(self.divided(vec, "F", m.b), "E", m.a)
        return self.divided(self.divided(vec, "E", m.a), "F", m.b)

    def act(self, x, vec):
        out = {}
        for m, c in x.terms.items():
            for k, v in self.act_monomial(m, vec).items():
                out[k] = out.get(k, ZERO) + c * v
        return {k: v for k, v in out.items() if v}

    def matrix(self, x):
        """Column j is the image of basis vector j."""
        size = len(self.basis)
        mat = [[ZERO] * size for _ in range(size)]
        for j, idx in enumerate(self.basis):
            for k, v in self.act(x, {idx: ONE}).items():
                mat[self.position[k]][j] = v
        return mat


def act_V(x, N):
    return Module([("V", N)]).matrix(x)


def act_tensor(x, lam, mu):
    return Module([("V", lam), ("W", mu)]).matrix(x)


def is_zero_matrix(mat):
    return all(not c for row in mat for c in row)


def matmul(p, r):
    n, m, k = len(p), len(r), len(r[0]) if r else 0
    return [[sum((p[i][t] * r[t][j] for t in range(m)), ZERO) for j in range(k)] for i in range(n)]


def on_highest(mono, lam, mu, convention=None):
    """G(mono) u_{lam,-mu} as a vector on pure tensors v_i x w_j."""
    mod = Module([("V", lam), ("W", mu)], convention)
    return mod.act_monomial(mono, mod.highest())


# -- canonical basis of V(lam) x V(-mu) and its crystal shadow ------------------

def canonical_module_basis(lam, mu, check_shadow=True):
    """[(crystal vertex, vector)] for the canonical labels b with G(b)u_{lam,-mu} nonzero."""
    from .cartan import preset
    from .crystal import Dual, highest

    rd = preset("A1")
    n = lam - mu
    out = []
    seen = set()
    top = lam + mu
    for a in range(top + 1):
        for b in range(top + 1):
            m = canon(a, b, n)
            vec = on_highest(m, lam, mu)
            if not vec:
                continue
            vertex = None
            if check_shadow:
                (i, j), = _shadow(vec)
                assert (i, j) not in seen, (str(m), i, j)
                seen.add((i, j))
                p = highest(rd, rd.weight([lam]))
                for _ in range(i):
                    p = p.f(0)
                r = highest(rd, rd.weight([mu]))
                for _ in range(j):
                    r = r.f(0)
                vertex = _tensor(p, Dual(r))
                assert vertex.wt().h[0] == m.left
            out.append((m, vertex, vec))
    if check_shadow:
        assert len(out) == (lam + 1) * (mu + 1), (lam, mu, len(out))
    return out


def _tensor(x, y):
    from .crystal import Tensor
    return Tensor(x, y)


def _shadow(vec):
    """Support of the q = 0 specialization; requires regularity at q = 0."""
    support = []
    for k, c in vec.items():
        v = c.eval_at_zero()
        if v:
            assert v == 1, (k, str(c))
            support.append(k)
    return support


def shadow_ok(lam, mu):
    try:
        canonical_module_basis(lam, mu, check_shadow=True)
    except (AssertionError, ValueError):
        return False
    return True


# -- memberships and cells --------------------------------------------------------

@lru_cache(maxsize=None)
def minimal_membership(m):
    """Smallest (lam, mu), lam - mu = right weight of m, with G(m)u_{lam,-mu} nonzero."""
    mu = max(0, -m.n)
    for _ in range(m.a + m.b + 3):
        if on_highest(m, mu + m.n, mu):
            return (mu + m.n, mu)
        mu += 1
    raise RuntimeError(f"no membership found for {m}")


@lru_cache(maxsize=None)
def cell_of(m):
    """Smallest N with G(m) acting nonzero on V(N)."""
    N = abs(m.n)
    while N <= abs(m.n) + 2 * (m.a + m.b) + 2:
        mod = Module([("V", N)])
        k = (N - m.n) // 2
        if mod.act_monomial(m, {(k,): ONE}):
            return N
        N += 2
    raise RuntimeError(f"no cell found for {m}")


def biweight_census(eta1, eta2, cutoff):
    """#{canonical b : left weight eta1, right weight eta2, cell_of(b) <= cutoff}.

    cell_of(b) >= max(a, b) since E^(a) and F^(b) kill V(N) for powers above N,
    so powers up to the cutoff exhaust the census.
    """
    if (eta1 - eta2) % 2:
        return 0
    d = (eta1 - eta2) // 2
    count = 0
    for b in range(cutoff + 1):
        a = b + d
        if 0 <= a <= cutoff and cell_of(canon(a, b, eta2)) <= cutoff:
            count += 1
    return count


def biweight_formula(eta1, eta2, cutoff):
    """sum over N <= cutoff of dim V(N)_eta1 * dim V(N)_eta2."""
    def dim(N, e):
        return int(abs(e) <= N and (N - e) % 2 == 0)
    return sum(dim(N, eta1) * dim(N, eta2) for N in range(cutoff + 1))


# -- coproduct ---------------------------------------------------------------------

def _left_mul(mono, x):
    return multiply(element(mono), x)


def _apply_delta(pair, which, p, convention):
    """Left-multiply a combination {(m1, m2): coeff} by D(E^(p)) or D(F^(p))."""
    out = {}
    for (m1, m2), c in pair.items():
        l1, l2 = m1.left, m2.left
        for s in range(p + 1):
            r = p - s
            if which == "E":
                if convention == "lower":
                    # E^(s) x K^-s E^(r)
                    k = _q(s * r - s * (l2 + 2 * r))
                else:
                    # E^(s) K^r x E^(r)
                    k = _q(s * r + r * l1)
                g1, g2 = canon(s, 0, l1), canon(r, 0, l2)
            else:
                if convention == "lower":
                    # F^(s) K^r x F^(r)
                    k = _q(-s * r + r * l1)
                else:
                    # F^(s) x K^-s F^(r)
                    k = _q(-s * r - s * (l2 - 2 * r))
                g1, g2 = canon(0, s, l1), canon(0, r, l2)
            x1 = _left_mul(g1, element(m1))
            x2 = _left_mul(g2, element(m2))
            for b1, c1 in x1.terms.items():
                for b2, c2 in x2.terms.items():
                    out[(b1, b2)] = out.get((b1, b2), ZERO) + c * k * c1 * c2
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _block_mono(m, n1, convention):
    n2 = m.n - n1
    pair = {(idempotent(n1), idempotent(n2)): ONE}
    ops = [("F", m.b), ("E", m.a)] if m.family == "A" else [("E", m.a), ("F", m.b)]
    for which, p in ops:
        if p:
            pair = _apply_delta(pair, which, p, convention)
    return pair


def coproduct_block(x, n1, n2, convention=None):
    """The (n1, n2) block of D(x) in canonical x canonical labels."""
    conv = convention or COPRODUCT_CONVENTION
    out = {}
    for m, c in x.terms.items():
        if n1 + n2 != m.n:
            continue
        for key, v in _block_mono(m, n1, conv).items():
            out[key] = out.get(key, ZERO) + c * v
    return {k: v for k, v in out.items() if v}


def coassociativity_holds(x, n1, n2, n3, convention=None):
    """(D x id)D x = (id x D)D x on the (n1, n2, n3) block."""
    lhs = {}
    for (p, r), c in coproduct_block(x, n1 + n2, n3, convention).items():
        for (p1, p2), v in coproduct_block(element(p), n1, n2, convention).items():
            key = (p1, p2, r)
            lhs[key] = lhs.get(key, ZERO) + c * v
    rhs = {}
    for (p, r), c in coproduct_block(x, n1, n2 + n3, convention).items():
        for (r1, r2), v in coproduct_block(element(r), n2, n3, convention).items():
            key = (p, r1, r2)
            rhs[key] = rhs.get(key, ZERO) + c * v
    lhs = {k: v for k, v in lhs.items() if v}
    rhs = {k: v for k, v in rhs.items() if v}
    return lhs == rhs


# -- structure constants -----------------------------------------------------------

@dataclass
class StructureEntry:
    b: Monomial
    c: Monomial
    entries: dict  # Monomial a -> LaurentPoly
    membership: tuple  # ((lam1, mu1), (lam2, mu2))
    candidates: list
    margin: int
    scanned: int

    def to_json(self):
        (l1, m1), (l2, m2) = self.membership
        return {
            "b": str(self.b),
            "c": str(self.c),
            "entries": [{"a": str(a), "poly": str(p)} for a, p in sorted(self.entries.items())],
            "certificate": {"lambda": l1 + l2, "mu": m1 + m2, "margin": self.margin,
                            "memberships": [[l1, m1], [l2, m2]],
                            "candidates": [str(a) for a in self.candidates],
                            "scanned": self.scanned},
        }


def _labels_with(left, right, max_power):
    if (left - right) % 2:
        return []
    d = (left - right) // 2
    return [canon(b + d, b, right) for b in range(max_power + 1) if 0 <= b + d <= max_power]


def _is_integral(p):
    return isinstance(p, LaurentPoly) and all(isinstance(c, int) for _, c in p.items())


def structure_constants(b, c, margin=2, convention=None):
    """m^{b,c}_a for all a, certified by the membership bound plus a scanned margin."""
    return _structure_constants(b, c, margin, convention or COPRODUCT_CONVENTION)


@lru_cache(maxsize=None)
def _structure_constants(b, c, margin, conv):
    (l1, m1), (l2, m2) = minimal_membership(b), minimal_membership(c)
    lam, mu = l1 + l2, m1 + m2
    right = b.n + c.n
    left = b.left + c.left
    bound = lam + mu
    cands = [a for a in _labels_with(left, right, bound) if on_highest(a, lam, mu)]
    entries = {}
    top = max([max(a.a, a.b) for a in cands], default=0)
    scanned = _labels_with(left, right, top + margin)
    for a in scanned:
        v = _block_mono(a, b.n, conv).get((b, c), ZERO)
        if not v:
            continue
        assert _is_integral(v)
        if a not in cands:
            raise MarginViolation(f"m^{{{b},{c}}}_{a} = {v} outside the certified candidates")
        entries[a] = v
    return StructureEntry(b, c, entries, ((l1, m1), (l2, m2)), cands, margin, len(scanned))


def dual_product(b, c, convention=None):
    """b* . c* = sum_a m^{b,c}_a a* in the coordinate ring."""
    return dict(structure_constants(b, c, convention=convention).entries)


def _times(coeffs, d):
    out = {}
    for x, k in coeffs.items():
        for e, v in dual_product(x, d).items():
            out[e] = out.get(e, ZERO) + k * v
    return {e: v for e, v in out.items() if v}


def associativity_holds(a, b, d):
    """sum_c m^{a,b}_c m^{c,d}_e = sum_c m^{a,c}_e m^{b,d}_c for every e."""
    lhs = _times(dual_product(a, b), d)
    rhs = {}
    for x, k in dual_product(b, d).items():
        for e, v in dual_product(a, x).items():
            rhs[e] = rhs.get(e, ZERO) + k * v
    rhs = {e: v for e, v in rhs.items() if v}
    return lhs == rhs


@dataclass
class VerifyResult:
    ok: bool
    diff: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def verify_coproduct_action(a, lam1, mu1, lam2, mu2, convention=None):
    """G(a)(u1 x u2) through the module action against sum m^{b,c}_a (G(b)u1) x (G(c)u2)."""
    conv = convention or COPRODUCT_CONVENTION
    big = Module([("V", lam1), ("W", mu1), ("V", lam2), ("W", mu2)], conv)
    lhs = big.act_monomial(a, big.highest())
    rhs = {}
    for (b, c), k in coproduct_block(element(a), lam1 - mu1, lam2 - mu2, conv).items():
        x = on_highest(b, lam1, mu1, conv)
        y = on_highest(c, lam2, mu2, conv)
        for i, u in x.items():
            for j, v in y.items():
                rhs[i + j] = rhs.get(i + j, ZERO) + k * u * v
    rhs = {k: v for k, v in rhs.items() if v}
    if lhs == rhs:
        return VerifyResult(True)
    keys = sorted(set(lhs) | set(rhs))
    diff = {str(k): [str(lhs.get(k, ZERO)), str(rhs.get(k, ZERO))]
            for k in keys if lhs.get(k, ZERO) != rhs.get(k, ZERO)}
    return VerifyResult(False, diff)


def canonical_labels(max_power, max_weight):
    """All canonical labels with powers <= max_power and |n| <= max_weight."""
    return [canon(a, b, n) for n in range(-max_weight, max_weight + 1)
            for a in range(max_power + 1) for b in range(max_power + 1)]

