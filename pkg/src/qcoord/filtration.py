"""The total order on B(-mu) and the highest-weight filtration of B(lambda) x B(-mu).

Elements of B(-mu) are ordered by (length above u_{-mu}, lexicographically
minimal e-word). The successive quotient attached to b is V(lambda + wt(b))
exactly when u_lambda x b is killed by every e_i, i.e. eps_i(b) <= lambda(h_i).
"""

import csv
import io
from dataclasses import dataclass, field

from .crystal import Dual, Tensor, dual_crystal_of, crystal_of, generate, highest, lowest
from .errors import NotAffine, NotInCrystal


@dataclass(frozen=True, order=True)
class OrderKey:
    length: int
    word: tuple

    def __str__(self):
        return "(" + ",".join(str(i) for i in self.word) + ")"


def _check_lw(rd, b, mu):
    if not (hasattr(b, "inner") and b.inner.shape == mu):
        raise NotInCrystal(f"{b.key()} is not an element of B(-{mu})")


def lw_length(rd, b, mu):
    """l(b): the m with wt(b) = -mu + (sum of m simple roots)."""
    _check_lw(rd, b, mu)
    h = rd.height(b.wt() + mu)
    if h is None:
        raise NotInCrystal(f"{b.key()} is not above u_-mu")
    return h


def min_word(rd, b, mu, index_order=None):
    """Lexicographically minimal (i_1, ..., i_l) with b = e_{i_1} ... e_{i_l} u_{-mu}.

    Greedy: the outermost letter is the smallest i (in index_order) with f_i b nonzero.
    """
    _check_lw(rd, b, mu)
    order = list(index_order) if index_order is not None else list(range(rd.n))
    bottom = lowest(rd, mu)
    word = []
    while b != bottom:
        for i in order:
            nb = b.f(i)
            if nb is not None:
                word.append(i)
                b = nb
                break
        else:
            raise NotInCrystal("descent stuck above u_-mu")
    return tuple(word)


def order_key(rd, b, mu, index_order=None):
    w = min_word(rd, b, mu, index_order)
    order = list(index_order) if index_order is not None else list(range(rd.n))
    rank = {i: k for k, i in enumerate(order)}
    return OrderKey(len(w), tuple(rank[i] for i in w))


def order_lt(rd, b, c, mu, index_order=None):
    return order_key(rd, b, mu, index_order) < order_key(rd, c, mu, index_order)


def hw_quotient(rd, lam, b):
    """lambda + wt(b) if u_lambda x b is a highest weight vertex, else None."""
    if all(b.eps(i) <= lam.h[i] for i in range(rd.n)):
        xi = lam + b.wt()
        assert xi.is_dominant(), xi
        return xi
    return None


@dataclass
class Record:
    element: object
    key: OrderKey
    quotient: object  # Weight or None


@dataclass
class FiltrationReport:
    lam: object
    mu: object
    records: list
    max_length: object
    complete: bool  # True when the enumerated crystal was exhausted
    mirror: bool = False
    meta: dict = field(default_factory=dict)

    def quotients(self):
        return [r.quotient for r in self.records if r.quotient is not None]

    def to_rows(self):
        return [
            {"length": r.key.length, "word": str(r.key), "weight": str(r.element.wt()),
             "quotient": "" if r.quotient is None else str(r.quotient)}
            for r in self.records
        ]

    def to_csv(self, header=None):
        buf = io.StringIO()
        if header:
            for line in header.splitlines():
                buf.write(f"# {line}\n")
        w = csv.DictWriter(buf, fieldnames=["length", "word", "weight", "quotient"], lineterminator="\n")
        w.writeheader()
        w.writerows(self.to_rows())
        return buf.getvalue()

    def to_json(self):
        return {
            "lambda": self.lam.to_json(),
            "mu": self.mu.to_json(),
            "mirror": self.mirror,
            "certificate": {"max_length": self.max_length, "exhausted": self.complete},
            "records": [
                {"element": r.element.key(), "length": r.key.length, "word": list(r.key.word),
                 "weight": r.element.wt().to_json(),
                 "quotient": None if r.quotient is None else r.quotient.to_json()}
                for r in self.records
            ],
        }


def filtration_report(rd, lam, mu, max_length=None, index_order=None):
    if not (lam.is_dominant() and mu.is_dominant()):
        raise ValueError("lambda and mu must be dominant")
    g = dual_crystal_of(rd, mu, max_length)
    recs = [Record(b, order_key(rd, b, mu, index_order), hw_quotient(rd, lam, b)) for b in g.vertices]
    recs.sort(key=lambda r: r.key)
    return FiltrationReport(lam, mu, recs, max_length, g.all_complete())


def mirror_report(rd, lam, mu, max_length=None, index_order=None):
    """The mirrored filtration built from G(c) x u_{-mu}, c in B(lambda).

    Records b in B(lambda), keyed through Dual(b) in B(-lambda); the
    quotient is the lowest weight -mu + wt(b) iff phi_i(b) <= mu(h_i) for all i.
    """
    if not (lam.is_dominant() and mu.is_dominant()):
        raise ValueError("lambda and mu must be dominant")
    g = crystal_of(rd, lam, max_length)
    recs = []
    for b in g.vertices:
        key = order_key(rd, Dual(b), lam, index_order)
        if all(b.phi(i) <= mu.h[i] for i in range(rd.n)):
            quo = b.wt() - mu
            assert (-quo).is_dominant()
        else:
            quo = None
        recs.append(Record(b, key, quo))
    recs.sort(key=lambda r: r.key)
    return FiltrationReport(lam, mu, recs, max_length, g.all_complete(), mirror=True)


def explicit_filtration_crystal(rd, lam, mu, b, depth, max_length=None):
    """f-closure of {u_lambda x c : c >= b} to the given depth."""
    L = max_length if max_length is not None else depth
    bkey = order_key(rd, b, mu)
    if L is not None:
        L = max(L, bkey.length)
    g = dual_crystal_of(rd, mu, L)
    u = highest(rd, lam)
    seeds = [Tensor(u, c) for c in g.vertices if order_key(rd, c, mu) >= bkey]
    return generate(seeds, depth, rd.n, ops="f")


@dataclass
class AffineVerdict:
    case: str  # AllHW | NoneHW | TrivialM | LevelZeroNonP0
    level: int
    witnesses: list  # (element, quotient)
    depth: int
    consistent: bool

    def to_json(self):
        return {
            "case": self.case,
            "level": self.level,
            "depth": self.depth,
            "consistent": self.consistent,
            "witnesses": [{"element": b.key(), "quotient": q.to_json()} for b, q in self.witnesses],
        }


def affine_classify(rd, lam, mu, depth):
    if rd.kind != "affine":
        raise NotAffine(f"affine_classify needs an affine root datum, got {rd.kind}")
    diff = lam - mu
    lev = rd.level(diff)
    rep = filtration_report(rd, lam, mu, depth)
    wit = [(r.element, r.quotient) for r in rep.records if r.quotient is not None]
    bottom = lowest(rd, mu)
    if lev > 0:
        case, ok = "AllHW", len(wit) >= 1
    elif lev < 0:
        case, ok = "NoneHW", len(wit) == 0
    elif diff.in_P0():
        case = "TrivialM"
        ok = len(wit) == 1 and wit[0][0] == bottom and wit[0][1].in_P0()
    else:
        case, ok = "LevelZeroNonP0", len(wit) == 0
    return AffineVerdict(case, lev, wit, depth, ok)
