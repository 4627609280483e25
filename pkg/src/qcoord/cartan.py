"""Root data for symmetrizable Kac-Moody algebras.

Weights are stored by their values on the basis {h_i} u {d_j} of the coweight
lattice, so affine weights such as delta are representable and dominance is a
square rational linear solve.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, lcm
import re

from .errors import (
    DegenerateRootDatum,
    NonGCM,
    NotAffine,
    NotDominant,
    NotFiniteType,
    NotSymmetrizable,
)


@dataclass(frozen=True, order=True)
class Weight:
    h: tuple
    d: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "h", tuple(int(x) for x in self.h))
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))

    def __add__(self, other):
        return Weight(tuple(a + b for a, b in zip(self.h, other.h)),
                      tuple(a + b for a, b in zip(self.d, other.d)))

    def __sub__(self, other):
        return Weight(tuple(a - b for a, b in zip(self.h, other.h)),
                      tuple(a - b for a, b in zip(self.d, other.d)))

    def __neg__(self):
        return Weight(tuple(-a for a in self.h), tuple(-a for a in self.d))

    def __mul__(self, k):
        return Weight(tuple(k * a for a in self.h), tuple(k * a for a in self.d))

    __rmul__ = __mul__

    def is_dominant(self):
        return all(x >= 0 for x in self.h)

    def in_P0(self):
        return all(x == 0 for x in self.h)

    def to_json(self):
        return {"h": list(self.h), "d": list(self.d)}

    @classmethod
    def from_json(cls, obj):
        return cls(tuple(obj["h"]), tuple(obj.get("d", ())))

    def __str__(self):
        s = ",".join(str(x) for x in self.h)
        if self.d:
            s += "|" + ",".join(str(x) for x in self.d)
        return "(" + s + ")"


@dataclass(frozen=True)
class CartanSpec:
    """Raw input: generalized Cartan matrix plus d-coordinates of the simple roots."""

    matrix: tuple
    corank: int = 0
    root_d: tuple = ()  # root_d[i][j] = alpha_i(d_j)

    def __post_init__(self):
        object.__setattr__(self, "matrix", tuple(tuple(int(x) for x in row) for row in self.matrix))
        n = len(self.matrix)
        rd = self.root_d or tuple(() for _ in range(n))
        if self.corank and not self.root_d:
            rd = tuple(tuple(0 for _ in range(self.corank)) for _ in range(n))
        object.__setattr__(self, "root_d", tuple(tuple(int(x) for x in r) for r in rd))


# -- exact linear algebra over Fractions ---------------------------------------

def _rref(rows, ncols):
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def _rank(rows, ncols):
    return len(_rref(rows, ncols)[1])


def _det(mat):
    n = len(mat)
    m = [[Fraction(x) for x in r] for r in mat]
    det = Fraction(1)
    for c in range(n):
        p = next((k for k in range(c, n) if m[k][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for k in range(c + 1, n):
            f = m[k][c] / m[c][c]
            m[k] = [a - f * b for a, b in zip(m[k], m[c])]
    return det


def _nullspace(rows, ncols):
    m, pivots = _rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][f]
        basis.append(v)
    return basis


def _primitive(v):
    """Scale a rational vector to the primitive integer vector with positive sum."""
    den = reduce(lcm, (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(gcd, (abs(x) for x in ints), 0) or 1
    ints = [x // g for x in ints]
    if sum(ints) < 0:
        ints = [-x for x in ints]
    return tuple(ints)


# -- root datum ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RootDatum:
    spec: CartanSpec
    symmetrizers: tuple
    kind: str  # "finite" | "affine" | "indefinite"
    central: tuple = None
    positive_roots: tuple = None  # root coordinates, finite type only
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n(self):
        return len(self.spec.matrix)

    @property
    def corank(self):
        return self.spec.corank

    @property
    def cartan(self):
        return self.spec.matrix

    def a(self, i, j):
        return self.spec.matrix[i][j]

    def alpha(self, i):
        """Simple root alpha_i; alpha_i(h_j) = a_{ji}."""
        return Weight(tuple(self.spec.matrix[j][i] for j in range(self.n)), self.spec.root_d[i])

    @property
    def simple_roots(self):
        return tuple(self.alpha(i) for i in range(self.n))

    def zero(self):
        return Weight((0,) * self.n, (0,) * self.corank)

    def fundamental(self, i):
        h = [0] * self.n
        h[i] = 1
        return Weight(tuple(h), (0,) * self.corank)

    def weight(self, h, d=None):
        h = tuple(h)
        if len(h) != self.n:
            raise ValueError(f"expected {self.n} h-coordinates, got {len(h)}")
        d = tuple(d) if d is not None else (0,) * self.corank
        if len(d) != self.corank:
            raise ValueError(f"expected {self.corank} d-coordinates, got {len(d)}")
        return Weight(h, d)

    def from_root_coords(self, coeffs):
        w = self.zero()
        for i, c in enumerate(coeffs):
            if c:
                w = w + self.alpha(i) * int(c)
        return w

    @property
    def rho(self):
        return Weight((1,) * self.n, (0,) * self.corank)

    @property
    def theta(self):
        """Highest root (finite type)."""
        self._need_finite()
        top = max(self.positive_roots, key=lambda k: (sum(k), k))
        return self.from_root_coords(top)

    # -- linear algebra on weights --------------------------------------------

    def root_coords(self, w):
        """Rational c with w = sum c_i alpha_i, or None if w is outside the root span."""
        key = ("rc", w)
        if key in self._cache:
            return self._cache[key]
        n = self.n
        rows = []
        for j in range(n):
            rows.append([self.spec.matrix[j][i] for i in range(n)] + [w.h[j]])
        for k in range(self.corank):
            rows.append([self.spec.root_d[i][k] for i in range(n)] + [w.d[k]])
        m, pivots = _rref(rows, n + 1)
        if n in pivots:
            res = None
        else:
            res = tuple(m[r][n] for r in range(n))
        self._cache[key] = res
        return res

    def dominance_leq(self, mu, lam):
        """True iff lam - mu is a nonnegative integral combination of simple roots."""
        c = self.root_coords(lam - mu)
        return c is not None and all(x.denominator == 1 and x >= 0 for x in c)

    def height(self, w):
        """Height of w in Q^+, or None if w is not in Q^+."""
        c = self.root_coords(w)
        if c is None or any(x.denominator != 1 or x < 0 for x in c):
            return None
        return int(sum(c))

    def reflect(self, w, i):
        return w - self.alpha(i) * w.h[i]

    def central_root(self):
        """Primitive imaginary root delta in root coordinates (kernel of A)."""
        ker = _nullspace([list(r) for r in self.cartan], self.n)
        return _primitive(ker[0])

    def level(self, lam):
        if self.kind != "affine":
            raise NotAffine(f"level needs an affine root datum, got {self.kind}")
        return sum(c * x for c, x in zip(self.central, lam.h))

    def form_root(self, coeffs, w):
        """Symmetric form (beta, w) for beta = sum coeffs_i alpha_i; (alpha_i, w) = d_i w(h_i)."""
        return sum(k * di * x for k, di, x in zip(coeffs, self.symmetrizers, w.h))

    # -- finite-type oracles ----------------------------------------------------

    def _need_finite(self):
        if self.kind != "finite":
            raise NotFiniteType(f"operation needs finite type, got {self.kind}")

    def dominant_conjugate(self, w):
        self._need_finite()
        while True:
            i = next((k for k, x in enumerate(w.h) if x < 0), None)
            if i is None:
                return w
            w = self.reflect(w, i)

    def weyl_dim(self, lam):
        self._need_finite()
        if not lam.is_dominant():
            raise NotDominant(str(lam))
        lr = lam + self.rho
        num = den = 1
        for beta in self.positive_roots:
            num *= self.form_root(beta, lr)
            den *= self.form_root(beta, self.rho)
        assert num % den == 0
        return num // den

    def character(self, lam):
        """All weight multiplicities of V(lam) by Freudenthal's recursion."""
        self._need_finite()
        if not lam.is_dominant():
            raise NotDominant(str(lam))
        key = ("char", lam)
        if key in self._cache:
            return self._cache[key]
        rho2 = self.rho * 2
        pos_h = [(beta, self.from_root_coords(beta)) for beta in self.positive_roots]
        mult = {lam: 1}
        layer = [lam]
        while layer:
            cands = sorted({mu - self.alpha(i) for mu in layer for i in range(self.n)})
            layer = []
            for nu in cands:
                if not self.dominance_leq(self.dominant_conjugate(nu), lam):
                    continue
                c = self.root_coords(lam - nu)
                denom = sum(ci * di * x for ci, di, x in
                            zip(c, self.symmetrizers, (lam + nu + rho2).h))
                total = 0
                for beta, bw in pos_h:
                    k = 1
                    while True:
                        up = nu + bw * k
                        if not self.dominance_leq(up, lam):
                            break
                        m = mult.get(up, 0)
                        if m:
                            total += m * self.form_root(beta, up)
                        k += 1
                total *= 2
                if total == 0:
                    continue
                assert denom > 0 and total % denom == 0, (nu, total, denom)
                mult[nu] = int(total // denom)
                layer.append(nu)
        self._cache[key] = mult
        return mult

    def freudenthal_dim(self, lam, mu):
        self._need_finite()
        if not lam.is_dominant():
            raise NotDominant(str(lam))
        return self.character(lam).get(mu, 0)

    # -- serialization ------------------------------------------------------------

    def to_json(self):
        return {
            "type": self.kind,
            "name": self.name,
            "cartan": [list(r) for r in self.cartan],
            "symmetrizers": list(self.symmetrizers),
            "corank": self.corank,
            "simple_roots": [a.to_json() for a in self.simple_roots],
        }

    def parse_weight(self, text):
        return parse_weight(self, text)


def _symmetrizers(a):
    n = len(a)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        comp = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j == i or a[i][j] == 0:
                    continue
                want = d[i] * a[i][j] / a[j][i]
                if d[j] is None:
                    d[j] = want
                    stack.append(j)
                    comp.append(j)
                elif d[j] != want:
                    raise NotSymmetrizable(f"inconsistent symmetrizer between {i} and {j}")
        den = reduce(lcm, (d[k].denominator for k in comp), 1)
        ints = {k: int(d[k] * den) for k in comp}
        g = reduce(gcd, ints.values(), 0)
        for k in comp:
            d[k] = Fraction(ints[k] // g)
    out = tuple(int(x) for x in d)
    for i in range(n):
        for j in range(n):
            assert out[i] * a[i][j] == out[j] * a[j][i]
    return out


def _positive_roots(a):
    n = len(a)
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    roots = set(simple)
    queue = list(simple)
    while queue:
        beta = queue.pop()
        for i in range(n):
            if beta == simple[i]:
                continue
            p = sum(beta[j] * a[i][j] for j in range(n))
            new = tuple(b - (p if k == i else 0) for k, b in enumerate(beta))
            if all(x >= 0 for x in new) and new not in roots:
                roots.add(new)
                queue.append(new)
    return tuple(sorted(roots, key=lambda k: (sum(k), k)))


def validate(spec, name=""):
    """Check a generalized Cartan matrix and build its RootDatum."""
    a = spec.matrix
    n = len(a)
    if n == 0:
        raise NonGCM("empty Cartan matrix")
    if any(len(r) != n for r in a):
        raise NonGCM("Cartan matrix is not square")
    for i in range(n):
        if a[i][i] != 2:
            raise NonGCM(f"diagonal entry a[{i}][{i}] = {a[i][i]} != 2")
        for j in range(n):
            if i != j and a[i][j] > 0:
                raise NonGCM(f"positive off-diagonal entry a[{i}][{j}]")
            if (a[i][j] == 0) != (a[j][i] == 0):
                raise NonGCM(f"zero pattern asymmetric at ({i},{j})")
    if len(spec.root_d) != n or any(len(r) != spec.corank for r in spec.root_d):
        raise DegenerateRootDatum("root_d must give corank values per simple root")
    d = _symmetrizers(a)
    cols = [[a[j][i] for i in range(n)] for j in range(n)]
    cols += [[spec.root_d[i][k] for i in range(n)] for k in range(spec.corank)]
    if _rank(cols, n) != n:
        raise DegenerateRootDatum("simple roots are dependent; supply d-coordinates")

    sym = [[d[i] * a[i][j] for j in range(n)] for i in range(n)]
    rank = _rank(sym, n)
    if all(_det([r[:k] for r in sym[:k]]) > 0 for k in range(1, n + 1)):
        kind = "finite"
    elif rank == n - 1 and all(
        _det([[sym[i][j] for j in s] for i in s]) >= 0
        for k in range(1, n + 1) for s in combinations(range(n), k)
    ):
        kind = "affine"
    else:
        kind = "indefinite"

    central = None
    roots = None
    if kind == "affine":
        at = [[a[j][i] for j in range(n)] for i in range(n)]
        ker = _nullspace(at, n)
        central = _primitive(ker[0])
        assert all(x > 0 for x in central)
    elif kind == "finite":
        roots = _positive_roots(a)
    return RootDatum(spec=spec, symmetrizers=d, kind=kind, central=central,
                     positive_roots=roots, name=name)


_PRESETS = {
    "A1": CartanSpec(((2,),)),
    "A2": CartanSpec(((2, -1), (-1, 2))),
    "B2": CartanSpec(((2, -2), (-1, 2))),
    "G2": CartanSpec(((2, -1), (-3, 2))),
    "A1~": CartanSpec(((2, -2), (-2, 2)), corank=1, root_d=((1,), (0,))),
}


def preset(name):
    try:
        spec = _PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(_PRESETS)}") from None
    return validate(spec, name=name)


_TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*\*?\s*(L\d+|Lambda\d+|alpha\d+|a\d+|theta|rho|delta|\[[^\]]*\])")


def parse_weight(rd, text):
    """Parse a weight.

    Accepted forms: a comma list of h-coordinates ("1,1"; a bare "0" is the zero
    weight), optionally followed by "|d1,..." for d-coordinates, or a linear
    combination of atoms L<i>, alpha<i>, theta, rho, delta, [h-list], e.g.
    "L0-2L1" or "2theta".
    """
    text = str(text).strip()
    if re.fullmatch(r"-?\d+(\s*,\s*-?\d+)*(\s*\|\s*-?\d+(\s*,\s*-?\d+)*)?", text):
        hpart, _, dpart = text.partition("|")
        h = [int(x) for x in hpart.split(",")]
        d = [int(x) for x in dpart.split(",")] if dpart else None
        if h == [0] and rd.n != 1:
            h = [0] * rd.n
        return rd.weight(h, d)
    pos = 0
    w = rd.zero()
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse weight {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        atom = m.group(3)
        if atom.startswith("L"):
            atom_w = rd.fundamental(int(re.sub(r"\D", "", atom)))
        elif atom.startswith("a"):
            atom_w = rd.alpha(int(re.sub(r"\D", "", atom)))
        elif atom == "theta":
            atom_w = rd.theta
        elif atom == "rho":
            atom_w = rd.rho
        elif atom == "delta":
            if rd.kind != "affine":
                raise NotAffine("delta needs an affine root datum")
            atom_w = rd.from_root_coords(rd.central_root())
        else:
            atom_w = rd.weight([int(x) for x in atom[1:-1].split(",")])
        w = w + atom_w * (sign * coef)
        pos = m.end()
    return w

