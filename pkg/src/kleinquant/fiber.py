"""Semi-invariants on the zero fiber of the moment map, type A.

For the cyclic quiver on n vertices with dimension vector (1, ..., 1) the
group is a torus and C[mu^{-1}(0)] is the polynomial ring in the 2n arrow
coordinates a_i (i -> i+1) and a_i* (i+1 -> i) modulo the binomials
a_i a_i* - a_0 a_0* (i = 1..n-1). Those binomials are a Groebner basis for a
degree-lex order in which a_0, a_0* are the smallest variables, so normal
forms are monomials and every computation below is combinatorial and exact.

Monomials are exponent tuples of length 2n: positions 0..n-1 hold a_i,
positions n..2n-1 hold a_i*.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .quiver import QuiverSpec, build_extended_dynkin

__all__ = [
    "FiberError",
    "FiberRing",
    "GradedSlice",
    "build_fiber_ring",
    "slice_",
    "invariant_hilbert",
    "check_mult_surjective",
    "surjectivity_threshold",
    "check_power_stabilization",
    "minimal_stabilizing_N",
    "verify_kleinian_presentation",
    "rank_one_proxy",
    "uniform_chi",
]


class FiberError(ValueError):
    pass


Monomial = tuple[int, ...]
Poly = dict  # Monomial -> Fraction


@dataclass(frozen=True)
class FiberRing:
    n: int

    @cached_property
    def quiver(self) -> QuiverSpec:
        return build_extended_dynkin(f"A{self.n - 1}")

    @property
    def num_vars(self) -> int:
        return 2 * self.n

    def var_names(self) -> list[str]:
        return [f"a{i}" for i in range(self.n)] + [f"a{i}*" for i in range(self.n)]

    def var_weight(self, k: int) -> tuple[int, ...]:
        """G-weight of a variable: e_head - e_tail for the arrow it is dual to."""
        n = self.n
        i = k % n
        tail, head = (i, (i + 1) % n) if k < n else ((i + 1) % n, i)
        w = [0] * n
        w[head] += 1
        w[tail] -= 1
        return tuple(w)

    def relations(self) -> list[Poly]:
        """a_i a_i* - a_0 a_0* for i = 1..n-1, leading term first."""
        return [{self.unit(i, i + self.n): Fraction(1), self.unit(0, self.n): Fraction(-1)}
                for i in range(1, self.n)]

    def moment_components(self) -> list[Poly]:
        """Vertex components a_{i-1} a_{i-1}* - a_i a_i* of the moment map (they sum to 0)."""
        n = self.n
        out = []
        for i in range(n):
            j = (i - 1) % n
            p: Poly = {}
            for mono, c in ((self.unit(j, j + n), 1), (self.unit(i, i + n), -1)):
                p[mono] = p.get(mono, 0) + Fraction(c)
            out.append({m: c for m, c in p.items() if c})
        return out

    def unit(self, *idx: int) -> Monomial:
        e = [0] * self.num_vars
        for k in idx:
            e[k] += 1
        return tuple(e)

    # --- monomial arithmetic -------------------------------------------------

    def weight(self, mono: Monomial) -> tuple[int, ...]:
        n = self.n
        w = [0] * n
        for i in range(n):
            g = mono[i] - mono[i + n]
            w[(i + 1) % n] += g
            w[i] -= g
        return tuple(w)

    def normal_form(self, mono: Monomial) -> Monomial:
        n = self.n
        e = list(mono)
        for i in range(1, n):
            k = min(e[i], e[i + n])
            if k:
                e[i] -= k
                e[i + n] -= k
                e[0] += k
                e[n] += k
        return tuple(e)

    def is_normal(self, mono: Monomial) -> bool:
        return all(min(mono[i], mono[i + self.n]) == 0 for i in range(1, self.n))

    def rewrite_once(self, mono: Monomial, i: int) -> Monomial | None:
        """One application of a_i a_i* -> a_0 a_0*, or None if it does not apply."""
        n = self.n
        if not (1 <= i < n) or mono[i] == 0 or mono[i + n] == 0:
            return None
        e = list(mono)
        e[i] -= 1
        e[i + n] -= 1
        e[0] += 1
        e[n] += 1
        return tuple(e)

    def mul(self, *monos: Monomial) -> Monomial:
        return self.normal_form(tuple(map(sum, zip(*monos))))

    def fmt(self, mono: Monomial) -> str:
        parts = []
        for name, e in zip(self.var_names(), mono):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return " ".join(parts) if parts else "1"

    # --- polynomial reduction (used for the Groebner basis certificate) ------

    def _order_key(self, mono: Monomial):
        # degree first, then lex with a_0, a_0* the smallest variables
        n = self.n
        order = []
        for i in range(n - 1, 0, -1):
            order += [i, i + n]
        order += [0, n]
        return (sum(mono), tuple(mono[k] for k in order))

    def leading(self, poly: Poly) -> Monomial:
        return max(poly, key=self._order_key)

    def reduce(self, poly: Poly) -> Poly:
        """Full reduction of a polynomial modulo the relations."""
        rels = [(self.leading(r), r) for r in self.relations()]
        p = {m: Fraction(c) for m, c in poly.items() if c}
        rem: Poly = {}
        while p:
            lt = self.leading(p)
            c = p[lt]
            for lm, r in rels:
                if all(a >= b for a, b in zip(lt, lm)):
                    shift = tuple(a - b for a, b in zip(lt, lm))
                    lc = r[lm]
                    for m, rc in r.items():
                        mm = tuple(a + b for a, b in zip(m, shift))
                        v = p.get(mm, 0) - c * rc / lc
                        if v:
                            p[mm] = v
                        else:
                            p.pop(mm, None)
                    break
            else:
                rem[lt] = c
                del p[lt]
        return rem

    def check_groebner(self) -> bool:
        """Every S-polynomial of the relations reduces to zero."""
        rels = self.relations()
        for a in range(len(rels)):
            for b in range(a + 1, len(rels)):
                f, g = rels[a], rels[b]
                lf, lg = self.leading(f), self.leading(g)
                lcm = tuple(max(x, y) for x, y in zip(lf, lg))
                s: Poly = {}
                for poly, lm, sign in ((f, lf, 1), (g, lg, -1)):
                    shift = tuple(x - y for x, y in zip(lcm, lm))
                    for m, c in poly.items():
                        mm = tuple(x + y for x, y in zip(m, shift))
                        s[mm] = s.get(mm, 0) + sign * c / poly[lm]
                s = {m: c for m, c in s.items() if c}
                if self.reduce(s):
                    return False
        return True


def build_fiber_ring(n: int) -> FiberRing:
    if n < 2:
        raise FiberError("the cyclic quiver needs n >= 2 vertices")
    ring = FiberRing(n)
    if not ring.check_groebner():
        raise AssertionError(f"relations are not a Groebner basis for n={n}")
    return ring


def uniform_chi(n: int) -> tuple[int, ...]:
    """The strictly dominant weight (-(n-1), 1, ..., 1)."""
    return (-(n - 1),) + (1,) * (n - 1)


@dataclass(frozen=True)
class GradedSlice:
    m: int
    d: int
    basis: tuple[Monomial, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def to_dict(self, ring: FiberRing | None = None) -> dict:
        out = {"m": self.m, "d": self.d, "dim": self.dimension, "basis": [list(b) for b in self.basis]}
        if ring is not None:
            out["monomials"] = [ring.fmt(b) for b in self.basis]
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "GradedSlice":
        return cls(d["m"], d["d"], tuple(tuple(b) for b in d["basis"]))


def _check_chi(ring: FiberRing, chi) -> tuple[int, ...]:
    chi = tuple(int(x) for x in chi)
    if len(chi) != ring.n:
        raise FiberError(f"chi has length {len(chi)}, expected {ring.n}")
    if sum(chi) != 0:
        raise FiberError(f"chi = {chi} is not in Lambda (coordinates must sum to 0)")
    return chi


@lru_cache(maxsize=4096)
def _slice_basis(ring: FiberRing, chi: tuple[int, ...], m: int, d: int) -> tuple[Monomial, ...]:
    n = ring.n
    # a_i - a_i* exponent differences are pinned by the weight up to one constant c
    partial = [0] * n
    for j in range(1, n):
        partial[j] = partial[j - 1] + m * chi[j]
    out = []
    for c in range(-d, d + 1):
        g = [c - partial[j] for j in range(n)]
        rem = d - sum(abs(x) for x in g)
        if rem < 0 or rem % 2:
            continue
        k = rem // 2
        e = [max(x, 0) for x in g] + [max(-x, 0) for x in g]
        e[0] += k
        e[n] += k
        out.append(tuple(e))
    return tuple(sorted(out))


def slice_(ring: FiberRing, chi, m: int, d: int) -> GradedSlice:
    """Normal-form monomial basis of (S_m)_d, the weight m*chi part in degree d."""
    chi = _check_chi(ring, chi)
    if d < 0:
        return GradedSlice(m, d, ())
    return GradedSlice(m, d, _slice_basis(ring, chi, m, d))


def invariant_hilbert(ring: FiberRing, d_max: int) -> list[int]:
    zero = (0,) * ring.n
    return [slice_(ring, zero, 0, d).dimension for d in range(d_max + 1)]


def _products(ring: FiberRing, chi, m: int, k: int, d: int) -> set[Monomial]:
    out = set()
    for d1 in range(d + 1):
        left = slice_(ring, chi, m, d1).basis
        right = slice_(ring, chi, k, d - d1).basis
        for u in left:
            for v in right:
                out.add(ring.mul(u, v))
    return out


def check_mult_surjective(ring: FiberRing, chi, m: int, n: int, d_max: int) -> dict:
    """Does S_m * S_n span S_{m+n} in every degree <= d_max?"""
    if m < 0 or n < 0:
        raise FiberError("m and n must be nonnegative")
    chi = _check_chi(ring, chi)
    rows = []
    first_failure = None
    for d in range(d_max + 1):
        target = set(slice_(ring, chi, m + n, d).basis)
        got = _products(ring, chi, m, n, d)
        if not got <= target:
            raise AssertionError(f"products left the slice ({m}+{n}, {d})")
        ok = target <= got
        rows.append({"d": d, "target_dim": len(target), "span_dim": len(got), "ok": ok})
        if not ok and first_failure is None:
            first_failure = {"m": m, "n": n, "d": d}
    return {
        "m": m,
        "n": n,
        "d_max": d_max,
        "surjective": first_failure is None,
        "first_failure": first_failure,
        "degrees": rows,
    }


def surjectivity_threshold(ring: FiberRing, chi, m_max: int, d_max: int) -> dict:
    """Smallest N with S_m * S_n -> S_{m+n} onto for all N <= m, n <= m_max (degrees <= d_max)."""
    table = {}
    for m in range(1, m_max + 1):
        for n in range(1, m_max + 1):
            table[(m, n)] = check_mult_surjective(ring, chi, m, n, d_max)["surjective"]
    minimal = None
    for N in range(1, m_max + 1):
        if all(ok for (m, n), ok in table.items() if m >= N and n >= N):
            minimal = N
            break
    return {
        "chi": list(chi),
        "m_max": m_max,
        "d_max": d_max,
        "minimal_N": minimal,
        "pairs": [{"m": m, "n": n, "surjective": ok} for (m, n), ok in sorted(table.items())],
    }


def check_power_stabilization(ring: FiberRing, chi, N: int, j_max: int, d_max: int) -> dict:
    """Does (S_N)^j span S_{jN} in every degree <= d_max, for j = 1..j_max?"""
    if N < 1:
        raise FiberError("N must be >= 1")
    chi = _check_chi(ring, chi)
    base = {d: set(slice_(ring, chi, N, d).basis) for d in range(d_max + 1)}
    power = dict(base)
    rows = []
    ok_all = True
    for j in range(1, j_max + 1):
        if j > 1:
            nxt = {d: set() for d in range(d_max + 1)}
            for d1, left in power.items():
                for d2 in range(d_max + 1 - d1):
                    for u in left:
                        for v in base[d2]:
                            nxt[d1 + d2].add(ring.mul(u, v))
            power = nxt
        for d in range(d_max + 1):
            target = set(slice_(ring, chi, j * N, d).basis)
            ok = target <= power[d]
            ok_all &= ok
            rows.append({"j": j, "d": d, "target_dim": len(target), "span_dim": len(power[d]), "ok": ok})
    return {"N": N, "j_max": j_max, "d_max": d_max, "holds": ok_all, "rows": rows}


def minimal_stabilizing_N(ring: FiberRing, chi, N_max: int, j_max: int, d_max: int) -> int | None:
    for N in range(1, N_max + 1):
        if check_power_stabilization(ring, chi, N, j_max, d_max)["holds"]:
            return N
    return None


def kleinian_generators(ring: FiberRing) -> tuple[Monomial, Monomial, Monomial]:
    """x = a_0 a_0*, A = a_0 ... a_{n-1}, B = a_0* ... a_{n-1}*."""
    n = ring.n
    x = ring.unit(0, n)
    a = tuple([1] * n + [0] * n)
    b = tuple([0] * n + [1] * n)
    return x, a, b


def verify_kleinian_presentation(ring: FiberRing, d_max: int) -> dict:
    n = ring.n
    x, a, b = kleinian_generators(ring)
    ab = ring.mul(a, b)
    xn = ring.normal_form(tuple(n * e for e in x))
    zero = (0,) * n
    rows = []
    spans = True
    for d in range(d_max + 1):
        target = set(slice_(ring, zero, 0, d).basis)
        gen = set()
        for j in range(d // n + 1):
            for k in range((d - n * j) // n + 1):
                rest = d - n * (j + k)
                if rest % 2:
                    continue
                i = rest // 2
                mono = tuple(i * p + j * q + k * r for p, q, r in zip(x, a, b))
                gen.add(ring.normal_form(mono))
        ok = target <= gen and gen <= target
        spans &= ok
        rows.append({"d": d, "dim": len(target), "generated": len(gen), "ok": ok})
    return {
        "n": n,
        "d_max": d_max,
        "AB_equals_x^n": ab == xn,
        "AB": ring.fmt(ab),
        "spanned": spans,
        "passed": spans and ab == xn,
        "degrees": rows,
    }


def rank_one_proxy(ring: FiberRing, chi, m: int, d_max: int) -> dict:
    """Every monomial of S_m lies in u * S_0[x^{-1}] for one fixed u of weight m*chi.

    For each basis element v we exhibit s in S_0 and e >= 0 with
    v * x^e = u * s, using x^n = prod_i a_i a_i* in the fiber ring.
    """
    chi = _check_chi(ring, chi)
    n = ring.n
    u = None
    for d in range(d_max + 1):
        basis = slice_(ring, chi, m, d).basis
        if basis:
            u = basis[0]
            break
    if u is None:
        return {"m": m, "d_max": d_max, "u": None, "contained": True, "vacuous": True, "max_x_power": 0}
    x = ring.unit(0, n)
    max_power = 0
    ok = True
    for d in range(d_max + 1):
        for v in slice_(ring, chi, m, d).basis:
            k = max(0, max(b - a for a, b in zip(v, u)))
            s = tuple(a + k - b for a, b in zip(v, u))
            e = n * k
            lhs = ring.normal_form(tuple(a + e * c for a, c in zip(v, x)))
            if ring.weight(s) != (0,) * n or ring.mul(u, s) != lhs:
                ok = False
            max_power = max(max_power, e)
    return {"m": m, "d_max": d_max, "u": ring.fmt(u), "contained": ok, "vacuous": False, "max_x_power": max_power}

