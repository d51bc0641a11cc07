"""Exact arithmetic in finite fields GF(p^s) with explicit moduli.

A field context models GF(p^s) as GF(p)[T]/(modulus) for a monic
irreducible modulus of degree s. Elements are canonical coefficient
tuples over GF(p): ascending order, no trailing zeros, the zero element
is the empty tuple. Contexts of at most 2^16 elements get discrete-log
tables on first use; larger contexts fall back to direct modular
polynomial arithmetic.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterator

TABLE_MAX = 1 << 16

CACHE_ENV = "KTS_CACHE_DIR"


class ContextMismatch(ValueError):
    """Operands belong to different field contexts."""


def element_sort_key(coeffs: tuple) -> tuple:
    """Canonical total order: coefficient length, then ascending lex."""
    return (len(coeffs), coeffs)


# ----------------------------------------------------------------------
# integer polynomial helpers over GF(p), coefficients ascending
# ----------------------------------------------------------------------

def _pp_trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pp_sub(p: int, a, b) -> list:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _pp_trim(out)


def _pp_mul(p: int, a, b) -> list:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _pp_trim(prod)


def _pp_divmod(p: int, a, b) -> tuple[list, list]:
    a = list(a)
    db = len(b) - 1
    binv = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] % p
        if c:
            c = (c * binv) % p
            q[k - db] = c
            for j in range(db + 1):
                a[k - db + j] = (a[k - db + j] - c * b[j]) % p
    return _pp_trim(q), _pp_trim(a[:db])


def _pp_mulmod(p: int, a, b, m) -> list:
    return _pp_divmod(p, _pp_mul(p, a, b), m)[1]


def _pp_powmod(p: int, base, e: int, m) -> list:
    r = [1]
    b = _pp_divmod(p, base, m)[1]
    while e:
        if e & 1:
            r = _pp_mulmod(p, r, b, m)
        b = _pp_mulmod(p, b, b, m)
        e >>= 1
    return r


def _pp_gcd(p: int, a, b) -> list:
    a, b = _pp_trim(list(a)), _pp_trim(list(b))
    while b:
        a, b = b, _pp_divmod(p, a, b)[1]
    return a


def _pp_eval(p: int, f, x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


_X = [0, 1]


def _pp_is_irreducible(p: int, f: list) -> bool:
    """Rabin test: x^(p^s) = x mod f and gcd(f, x^(p^(s/l)) - x) = 1."""
    s = len(f) - 1
    if s == 1:
        return True
    if f[0] == 0:
        return False
    for ell in _prime_factors(s):
        k = s // ell
        t = _pp_powmod(p, _X, p ** k, f)
        if len(_pp_gcd(p, _pp_sub(p, t, _X), f)) - 1 > 0:
            return False
    t = _pp_powmod(p, _X, p ** s, f)
    return _pp_sub(p, t, _X) == []


def _pp_smallest_factor_degree(p: int, f: list) -> int:
    """Degree of the smallest irreducible factor of a reducible monic f."""
    s = len(f) - 1
    t = list(_X)
    for d in range(1, s // 2 + 1):
        t = _pp_powmod(p, t, p, f)
        if len(_pp_gcd(p, _pp_sub(p, t, _X), f)) - 1 > 0:
            return d
    return s  # should not happen for reducible input


# ----------------------------------------------------------------------
# default modulus selection (lexicographically smallest irreducible)
# ----------------------------------------------------------------------

# Precomputed lex-smallest monic irreducibles; recomputable via
# _search_default_modulus and asserted equal in the test suite.
_BAKED_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (0, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 0, 1, 1),
    (2, 4): (1, 0, 0, 1, 1),
    (2, 5): (1, 0, 0, 1, 0, 1),
    (2, 6): (1, 0, 0, 0, 0, 1, 1),
    (2, 7): (1, 0, 0, 0, 0, 0, 1, 1),
    (2, 8): (1, 0, 0, 0, 1, 1, 0, 1, 1),
    (2, 9): (1, 0, 0, 0, 0, 0, 0, 0, 1, 1),
    (2, 10): (1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1),
    (2, 11): (1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1),
    (2, 12): (1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1),
    (2, 13): (1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 1),
    (2, 14): (1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    (2, 15): (1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1),
    (2, 16): (1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 1),
    (3, 1): (0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 0, 2, 1),
    (3, 4): (1, 0, 1, 1, 1),
    (3, 5): (1, 0, 0, 0, 2, 1),
    (3, 6): (1, 0, 0, 0, 1, 1, 1),
    (3, 7): (1, 0, 0, 0, 0, 1, 2, 1),
    (3, 8): (1, 0, 0, 0, 0, 1, 1, 0, 1),
    (3, 9): (1, 0, 0, 0, 0, 0, 2, 1, 0, 1),
    (3, 10): (1, 0, 0, 0, 0, 0, 0, 0, 2, 0, 1),
    (3, 11): (1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 2, 1),
    (3, 12): (1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 1),
    (3, 13): (1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 1),
    (3, 14): (1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1),
    (3, 15): (1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 2, 1),
    (3, 16): (1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1),
    (5, 1): (0, 1),
    (5, 2): (1, 1, 1),
    (5, 3): (1, 0, 1, 1),
    (5, 4): (1, 0, 1, 1, 1),
    (5, 5): (1, 0, 0, 0, 4, 1),
    (5, 6): (1, 0, 0, 0, 1, 1, 1),
    (5, 7): (1, 0, 0, 0, 0, 0, 1, 1),
    (5, 8): (1, 0, 0, 0, 0, 1, 1, 0, 1),
    (5, 9): (1, 0, 0, 0, 0, 0, 0, 2, 3, 1),
    (5, 10): (1, 0, 0, 0, 0, 0, 0, 0, 2, 2, 1),
    (5, 11): (1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 1),
    (5, 12): (1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 4, 1),
    (5, 13): (1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 3, 1),
    (5, 14): (1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 3, 1),
}

_cached_moduli: dict[tuple[int, int], tuple[int, ...]] = {}
_disk_cache_loaded = False


def _cache_path() -> str:
    base = os.environ.get(CACHE_ENV)
    if not base:
        base = os.path.join(os.path.expanduser("~"), ".cache", "kts")
    return os.path.join(base, "moduli.txt")


def _load_disk_cache() -> None:
    global _disk_cache_loaded
    if _disk_cache_loaded:
        return
    _disk_cache_loaded = True
    try:
        with open(_cache_path(), "r", encoding="utf-8") as fh:
            for line in fh:
                parts = line.strip().split(":")
                if len(parts) != 3:
                    continue
                p, s = int(parts[0]), int(parts[1])
                mod = tuple(int(c) for c in parts[2].split(","))
                if len(mod) == s + 1 and mod[-1] == 1 and _pp_is_irreducible(p, list(mod)):
                    _cached_moduli.setdefault((p, s), mod)
    except (OSError, ValueError):
        pass


def _store_disk_cache(p: int, s: int, mod: tuple[int, ...]) -> None:
    path = _cache_path()
    try:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        entries = dict(_cached_moduli)
        entries[(p, s)] = mod
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            for (cp, cs), cm in sorted(entries.items()):
                fh.write(f"{cp}:{cs}:{','.join(map(str, cm))}\n")
        os.replace(tmp, path)
    except OSError:
        pass


def _search_default_modulus(p: int, s: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree s over GF(p)."""
    if s == 1:
        return (0, 1)
    for coeffs in itertools.product(range(p), repeat=s):
        if coeffs[0] == 0:
            continue
        f = list(coeffs) + [1]
        if any(_pp_eval(p, f, x) == 0 for x in range(p)):
            continue
        if _pp_is_irreducible(p, f):
            return tuple(f)
    raise RuntimeError(f"no irreducible of degree {s} over GF({p})")  # unreachable


def default_modulus(p: int, s: int) -> tuple[int, ...]:
    """Deterministic default modulus for GF(p^s)."""
    key = (p, s)
    if key in _BAKED_MODULI:
        return _BAKED_MODULI[key]
    if key in _cached_moduli:
        return _cached_moduli[key]
    _load_disk_cache()
    if key in _cached_moduli:
        return _cached_moduli[key]
    mod = _search_default_modulus(p, s)
    _cached_moduli[key] = mod
    _store_disk_cache(p, s, mod)
    return mod


# ----------------------------------------------------------------------
# field contexts
# ----------------------------------------------------------------------

class FieldCtx:
    """GF(p^s) presented as GF(p)[T] modulo a monic irreducible.

    All element-level operations work on canonical coefficient tuples.
    Instances are immutable once constructed and safe to share across
    workers; use make_prime_field / make_extension to get the cached
    singleton for a given (p, s, modulus).
    """

    __slots__ = ("p", "s", "modulus", "order", "label",
                 "_red", "_exp", "_log", "_ts_aux", "_prows", "_frob_cols")

    def __init__(self, p: int, s: int, modulus: tuple[int, ...]):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        if not isinstance(s, int) or s < 1:
            raise ValueError(f"extension degree must be >= 1, got {s}")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != s + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {s}")
        if s > 1 and not _pp_is_irreducible(p, list(modulus)):
            d = _pp_smallest_factor_degree(p, list(modulus))
            raise ValueError(
                f"modulus is reducible over GF({p}): it has an irreducible "
                f"factor of degree {d}")
        self.p = p
        self.s = s
        self.modulus = modulus
        self.order = p ** s
        self.label = f"GF({p}^{s};{','.join(map(str, modulus))})"
        self._exp = None
        self._log = None
        self._ts_aux = None
        self._frob_cols = {}
        # reduction rows: T^k mod modulus for k = s .. 2s-2
        if s > 1:
            rows = []
            cur = [(-modulus[i]) % p for i in range(s)]
            rows.append(tuple(cur))
            for _ in range(s + 1, 2 * s - 1):
                top = cur[-1]
                cur = [0] + cur[:-1]
                if top:
                    base = rows[0]
                    cur = [(cur[j] + top * base[j]) % p for j in range(s)]
                rows.append(tuple(cur))
            self._red = tuple(rows)
        else:
            self._red = ()
        # packed reduction rows for the 16-bit Kronecker product path;
        # usable only while fold accumulation cannot overflow a digit
        worst = s * (p - 1) * (p - 1) * (1 + (s - 1) * (p - 1))
        if s > 1 and worst < (1 << 16):
            packed = []
            for row in self._red:
                acc = 0
                for c in reversed(row):
                    acc = (acc << 16) | c
                packed.append(acc)
            self._prows = tuple(packed)
        else:
            self._prows = None

    # -- identity ------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, FieldCtx) and self.p == other.p
                and self.s == other.s and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.s, self.modulus))

    def __repr__(self):
        return self.label

    def descriptor(self) -> dict:
        return {"p": self.p, "s": self.s, "modulus": list(self.modulus)}

    # -- element construction and iteration -----------------------------

    @property
    def zero(self) -> tuple:
        return ()

    @property
    def one(self) -> tuple:
        return (1,)

    def scalar(self, n: int) -> tuple:
        n %= self.p
        return (n,) if n else ()

    def canon(self, coeffs) -> tuple:
        """Canonicalize arbitrary integer coefficients into an element."""
        out = [int(c) % self.p for c in coeffs]
        if len(out) > self.s:
            raise ValueError(
                f"element needs at most {self.s} coefficients, got {len(out)}")
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def elements(self) -> Iterator[tuple]:
        """All p^s elements in canonical order."""
        yield ()
        p = self.p
        for ln in range(1, self.s + 1):
            for head in itertools.product(range(p), repeat=ln - 1):
                for top in range(1, p):
                    yield head + (top,)

    def nonzero_elements(self) -> Iterator[tuple]:
        it = self.elements()
        next(it)
        return it

    # -- arithmetic on coefficient tuples --------------------------------

    def add(self, a: tuple, b: tuple) -> tuple:
        if not a:
            return b
        if not b:
            return a
        if len(a) < len(b):
            a, b = b, a
        p = self.p
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % p
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def neg(self, a: tuple) -> tuple:
        p = self.p
        return tuple((-c) % p for c in a)

    def sub(self, a: tuple, b: tuple) -> tuple:
        return self.add(a, self.neg(b))

    def smul(self, n: int, a: tuple) -> tuple:
        """Scalar multiple by an integer."""
        n %= self.p
        if n == 0 or not a:
            return ()
        if n == 1:
            return a
        p = self.p
        out = [(n * c) % p for c in a]
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def _ensure_tables(self) -> bool:
        if self._exp is not None:
            return True
        if self.order > TABLE_MAX or self.s == 1:
            return False
        n = self.order - 1
        fac = _prime_factors(n)
        gen = None
        for cand in self.nonzero_elements():
            if all(self._pow_nt(cand, n // q) != (1,) for q in fac):
                gen = cand
                break
        exp = [None] * n
        log = {}
        x = (1,)
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._mul_nt(x, gen)
        self._exp = exp
        self._log = log
        return True

    def _mul_nt(self, a: tuple, b: tuple) -> tuple:
        if self._prows is not None:
            ai = 0
            for c in reversed(a):
                ai = (ai << 16) | c
            bi = 0
            for c in reversed(b):
                bi = (bi << 16) | c
            prod = ai * bi
            s = self.s
            if len(a) + len(b) - 1 > s:
                prows = self._prows
                high = prod >> (16 * s)
                prod &= (1 << (16 * s)) - 1
                k = 0
                while high:
                    d = high & 0xFFFF
                    if d:
                        prod += d * prows[k]
                    high >>= 16
                    k += 1
            p = self.p
            out = []
            while prod:
                out.append((prod & 0xFFFF) % p)
                prod >>= 16
            while out and out[-1] == 0:
                out.pop()
            return tuple(out)
        prod = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return self._reduce(prod)

    def _reduce(self, prod: list) -> tuple:
        s = self.s
        p = self.p
        rows = self._red
        for k in range(len(prod) - 1, s - 1, -1):
            c = prod[k] % p
            if c:
                row = rows[k - s]
                for j in range(s):
                    rj = row[j]
                    if rj:
                        prod[j] += c * rj
        out = [v % p for v in prod[:s]]
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def _pow_nt(self, a: tuple, n: int) -> tuple:
        r = (1,)
        while n:
            if n & 1:
                r = self._mul_nt(r, a)
            a = self._mul_nt(a, a)
            n >>= 1
        return r

    def mul(self, a: tuple, b: tuple) -> tuple:
        if not a or not b:
            return ()
        if self.s == 1:
            return self.scalar(a[0] * b[0])
        if self._exp is not None or self._ensure_tables():
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        return self._mul_nt(a, b)

    def inv(self, a: tuple) -> tuple:
        if not a:
            raise ZeroDivisionError("zero element has no inverse")
        if len(a) == 1:
            return (pow(a[0], -1, self.p),)
        if self._exp is not None or self._ensure_tables():
            return self._exp[(-self._log[a]) % (self.order - 1)]
        # extended Euclid against the modulus
        p = self.p
        r0, r1 = list(self.modulus), list(a)
        t0, t1 = [], [1]
        while r1:
            q, r = _pp_divmod(p, r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, _pp_sub(p, t0, _pp_mul(p, q, t1))
        c = pow(r0[0], -1, p)
        out = [(x * c) % p for x in t0]
        return tuple(_pp_trim(out))

    def pow(self, a: tuple, n: int) -> tuple:
        if n < 0:
            a = self.inv(a)
            n = -n
        if not a:
            return (1,) if n == 0 else ()
        if n == 0:
            return (1,)
        if self.s == 1:
            return self.scalar(pow(a[0], n, self.p))
        if self._exp is not None or self._ensure_tables():
            return self._exp[(self._log[a] * n) % (self.order - 1)]
        return self._pow_nt(a, n)

    def frobenius(self, a: tuple, k: int = 1) -> tuple:
        return self.pow(a, self.p ** k)

    def in_subfield(self, a: tuple, d: int) -> bool:
        """Whether a lies in the subfield GF(p^d); d must divide s."""
        if d < 1 or self.s % d:
            raise ValueError(f"{d} does not divide the extension degree {self.s}")
        return self.pow(a, self.p ** d) == a

    def _frobenius_fast(self, a: tuple, k: int) -> tuple:
        """x -> x^(p^k) as a precomputed linear map on coefficients."""
        cols = self._frob_cols.get(k)
        if cols is None:
            d = self.canon((0, 1)) if self.s > 1 else ()
            cols = []
            x = (1,)
            for _ in range(self.s):
                cols.append(self.pow(x, self.p ** k))
                x = self.mul(x, d) if d else x
            cols = tuple(cols)
            self._frob_cols[k] = cols
        acc = [0] * self.s
        for c, col in zip(a, cols):
            if c:
                for j, v in enumerate(col):
                    if v:
                        acc[j] += c * v
        p = self.p
        out = [v % p for v in acc]
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    # -- square roots (used by quadratic root extraction) ----------------

    def is_square(self, a: tuple) -> bool:
        if not a:
            return True
        if self.p == 2:
            return True
        if self._exp is not None or self._ensure_tables():
            return self._log[a] % 2 == 0
        # norm descent: x is a square in GF(q^2) iff x^(q+1) is one in GF(q)
        x = a
        deg = self.s
        while deg % 2 == 0:
            x = self.mul(x, self._frobenius_fast(x, deg // 2))
            deg //= 2
        if deg == 1:
            return pow(x[0], (self.p - 1) // 2, self.p) == 1
        return self.pow(x, (self.p ** deg - 1) // 2) == (1,)

    def sqrt(self, a: tuple) -> tuple:
        """A square root of a; raises ValueError for non-squares."""
        if not a:
            return ()
        if self.p == 2:
            # squaring is an automorphism in characteristic 2
            return self.pow(a, self.order // 2)
        if self._exp is not None or self._ensure_tables():
            k = self._log[a]
            if k % 2:
                raise ValueError("element is not a square")
            return self._exp[k // 2]
        q = self.order
        if not self.is_square(a):
            raise ValueError("element is not a square")
        if q % 4 == 3:
            return self.pow(a, (q + 1) // 4)
        # Tonelli-Shanks with a deterministic non-residue
        if self._ts_aux is None:
            t = q - 1
            e = 0
            while t % 2 == 0:
                t //= 2
                e += 1
            n = next(x for x in self.nonzero_elements()
                     if not self.is_square(x))
            self._ts_aux = (t, e, self.pow(n, t))
        t, e, g = self._ts_aux
        x = self.pow(a, (t + 1) // 2)
        b = self.pow(a, t)
        r = e
        while b != (1,):
            m = 0
            bb = b
            while bb != (1,):
                bb = self.mul(bb, bb)
                m += 1
            gp = g
            for _ in range(r - m - 1):
                gp = self.mul(gp, gp)
            x = self.mul(x, gp)
            g = self.mul(gp, gp)
            b = self.mul(b, g)
            r = m
        return x


_CTX_CACHE: dict[tuple, FieldCtx] = {}


def make_extension(p: int, s: int = 1, modulus=None) -> FieldCtx:
    """Field context for GF(p^s).

    With no modulus, the deterministic default (lexicographically
    smallest monic irreducible) is used; a supplied modulus is verified
    irreducible. Contexts are cached, so equal parameters always return
    the identical object.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if not isinstance(s, int) or s < 1:
        raise ValueError(f"extension degree must be >= 1, got {s}")
    if modulus is None:
        modulus = default_modulus(p, s)
    modulus = tuple(int(c) % p for c in modulus)
    key = (p, s, modulus)
    ctx = _CTX_CACHE.get(key)
    if ctx is None:
        ctx = FieldCtx(p, s, modulus)
        _CTX_CACHE[key] = ctx
    return ctx


def make_prime_field(p: int) -> FieldCtx:
    """Field context for the prime field GF(p)."""
    return make_extension(p, 1)


def ctx_from_descriptor(d: dict) -> FieldCtx:
    return make_extension(int(d["p"]), int(d["s"]), d.get("modulus"))


# ----------------------------------------------------------------------
# elements
# ----------------------------------------------------------------------

class FieldElement:
    """An element of a FieldCtx, wrapping a canonical coefficient tuple."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs):
        if isinstance(coeffs, FieldElement):
            coeffs = coeffs.coeffs
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        self.ctx = ctx
        self.coeffs = ctx.canon(coeffs)

    @classmethod
    def _raw(cls, ctx: FieldCtx, coeffs: tuple) -> "FieldElement":
        el = object.__new__(cls)
        el.ctx = ctx
        el.coeffs = coeffs
        return el

    def _peer(self, other) -> tuple:
        if isinstance(other, int):
            return self.ctx.scalar(other)
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ContextMismatch(
                f"elements of {self.ctx.label} and {other.ctx.label} cannot be combined")
        return other.coeffs

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        return FieldElement._raw(self.ctx, self.ctx.add(self.coeffs, self._peer(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement._raw(self.ctx, self.ctx.sub(self.coeffs, self._peer(other)))

    def __rsub__(self, other):
        return FieldElement._raw(self.ctx, self.ctx.sub(self._peer(other), self.coeffs))

    def __mul__(self, other):
        return FieldElement._raw(self.ctx, self.ctx.mul(self.coeffs, self._peer(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement._raw(
            self.ctx, self.ctx.mul(self.coeffs, self.ctx.inv(self._peer(other))))

    def __neg__(self):
        return FieldElement._raw(self.ctx, self.ctx.neg(self.coeffs))

    def __pow__(self, n: int):
        return FieldElement._raw(self.ctx, self.ctx.pow(self.coeffs, n))

    def inv(self) -> "FieldElement":
        return FieldElement._raw(self.ctx, self.ctx.inv(self.coeffs))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == self.ctx.scalar(other)
        return (isinstance(other, FieldElement) and self.ctx == other.ctx
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ctx.label, self.coeffs))

    def __lt__(self, other):
        peer = self._peer(other)
        return element_sort_key(self.coeffs) < element_sort_key(peer)

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"<{format_element(self)} in {self.ctx.label}>"

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    @classmethod
    def from_json(cls, ctx: FieldCtx, data) -> "FieldElement":
        return cls(ctx, data)


def format_element(a: FieldElement | tuple, generator: str = "d") -> str:
    """Render an element as text, e.g. '2*d^3+2*d^2+1'."""
    coeffs = a.coeffs if isinstance(a, FieldElement) else a
    if not coeffs:
        return "0"
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        elif i == 1:
            terms.append(generator if c == 1 else f"{c}*{generator}")
        else:
            terms.append(f"{generator}^{i}" if c == 1 else f"{c}*{generator}^{i}")
    return "+".join(terms)


def enumerate_elements(ctx: FieldCtx) -> Iterator[FieldElement]:
    """All elements of ctx in canonical order."""
    for coeffs in ctx.elements():
        yield FieldElement._raw(ctx, coeffs)


def in_subfield(a: FieldElement, d: int) -> bool:
    return a.ctx.in_subfield(a.coeffs, d)


# ----------------------------------------------------------------------
# embeddings between compatible contexts
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class EmbeddingMap:
    """A ring embedding GF(p^a) -> GF(p^b), a | b, fixed by the image of
    the source generator. Apply with .apply (tuples) or call (elements)."""

    src: FieldCtx
    dst: FieldCtx
    gen_image: tuple
    powers: tuple  # gen_image^0 .. gen_image^(src.s - 1) in dst

    def apply(self, coeffs: tuple) -> tuple:
        if self.src is self.dst:
            return coeffs
        dst = self.dst
        acc = [0] * dst.s
        for c, pw in zip(coeffs, self.powers):
            if c:
                for j, v in enumerate(pw):
                    if v:
                        acc[j] += c * v
        p = dst.p
        out = [v % p for v in acc]
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def __call__(self, a: FieldElement) -> FieldElement:
        if a.ctx != self.src:
            raise ContextMismatch(
                f"embedding maps {self.src.label}, got element of {a.ctx.label}")
        return FieldElement._raw(self.dst, self.apply(a.coeffs))


def make_embedding(src: FieldCtx, dst: FieldCtx, gen_image) -> EmbeddingMap:
    """Build the embedding sending the source generator to gen_image.

    gen_image must be a root of the source modulus inside dst; this is
    verified, as is degree compatibility.
    """
    if src.p != dst.p:
        raise ContextMismatch(
            f"cannot embed characteristic {src.p} into characteristic {dst.p}")
    if dst.s % src.s:
        raise ContextMismatch(
            f"GF({src.p}^{src.s}) does not embed into GF({dst.p}^{dst.s}): "
            f"{src.s} does not divide {dst.s}")
    gen = gen_image.coeffs if isinstance(gen_image, FieldElement) else tuple(gen_image)
    acc = ()
    xp = (1,)
    for c in src.modulus:
        if c:
            acc = dst.add(acc, dst.smul(c, xp))
        xp = dst.mul(xp, gen)
    if acc:
        raise ValueError("generator image is not a root of the source modulus")
    powers = [(1,)]
    for _ in range(1, src.s):
        powers.append(dst.mul(powers[-1], gen))
    return EmbeddingMap(src, dst, gen, tuple(powers))


def compose_embeddings(first: EmbeddingMap, second: EmbeddingMap) -> EmbeddingMap:
    if first.dst != second.src:
        raise ContextMismatch("embeddings do not compose")
    return make_embedding(first.src, second.dst, second.apply(first.gen_image))


def embed(a: FieldElement, src: FieldCtx, dst: FieldCtx, emap: EmbeddingMap) -> FieldElement:
    """Move an element along a precomputed embedding."""
    if a.ctx != src:
        raise ContextMismatch("element does not belong to the source context")
    if emap.src != src or emap.dst != dst:
        raise ContextMismatch("embedding map is inconsistent with the contexts")
    return FieldElement._raw(dst, emap.apply(a.coeffs))
