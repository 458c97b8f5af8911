"""Finite-field arithmetic for the prime-power MUB constructions.

GF(p^k) elements are encoded as integers 0..p^k-1 whose base-p digits are
the coefficients of a polynomial residue modulo a fixed irreducible
polynomial (table below, ascending coefficients, monic).  Multiplication
is realized through log/antilog tables over a searched generator of the
multiplicative group; the full field-axiom battery runs exhaustively at
table build for every supported size (p^k <= 64).

Two derived maps feed the basis constructions:

* ``trace[e]``: the Frobenius trace to GF(p), tr(e) = sum_i e^(p^i).
* ``conj_pair_sum[e]`` (p = 2 only): s(e) = sum_{i<j} e^(2^i + 2^j), the
  sum over products of distinct Frobenius conjugates.  It is Frobenius
  invariant, hence lands in GF(2), and supplies the mod-4 correction
  2*s(e) that lifts the binary trace to the Galois-ring trace used by the
  even-characteristic bases.
"""

from __future__ import annotations

import numpy as np

from .errors import NotPrimePower

# Monic irreducible polynomials over GF(p), ascending coefficients
# (constant term first), for every p^k <= 64 with k >= 2.
IRREDUCIBLE_POLYS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),            # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),         # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),      # x^4 + x + 1
    (2, 5): (1, 0, 1, 0, 0, 1),   # x^5 + x^2 + 1
    (2, 6): (1, 1, 0, 0, 0, 0, 1),  # x^6 + x + 1
    (3, 2): (2, 1, 1),            # x^2 + x + 2
    (3, 3): (1, 2, 0, 1),         # x^3 + 2x + 1
    (5, 2): (2, 4, 1),            # x^2 + 4x + 2
    (7, 2): (3, 6, 1),            # x^2 + 6x + 3
}

MAX_FIELD_SIZE = 64


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in range(2, int(n**0.5) + 1):
        if n % q == 0:
            return False
    return True


def prime_power_decomposition(d: int) -> tuple[int, int]:
    """Return (p, k) with d = p^k, or raise NotPrimePower."""
    if d < 2:
        raise NotPrimePower(f"{d} is not a prime power")
    for p in range(2, d + 1):
        if not is_prime(p):
            continue
        if d % p:
            continue
        k, rest = 0, d
        while rest % p == 0:
            rest //= p
            k += 1
        if rest == 1:
            return p, k
        raise NotPrimePower(f"{d} is not a prime power")
    raise NotPrimePower(f"{d} is not a prime power")


def _digits(e: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(e % p)
        e //= p
    return out


def _undigits(coeffs, p: int) -> int:
    out = 0
    for c in reversed(coeffs):
        out = out * p + int(c)
    return out


def _poly_mul_mod(a: list[int], b: list[int], f: tuple[int, ...], p: int) -> list[int]:
    """Schoolbook product of residues, reduced mod the monic polynomial f."""
    k = len(f) - 1
    prod = [0] * (2 * k - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            prod[i + j] = (prod[i + j] + ai * bj) % p
    for deg in range(2 * k - 2, k - 1, -1):
        c = prod[deg]
        if c == 0:
            continue
        prod[deg] = 0
        for j in range(k):
            prod[deg - k + j] = (prod[deg - k + j] - c * f[j]) % p
    return prod[:k]


class GaloisField:
    """GF(p^k) with dense operation tables and exhaustive axiom checks."""

    def __init__(self, p: int, k: int) -> None:
        if not is_prime(p) or k < 1:
            raise NotPrimePower(f"GF({p}^{k}) is not a valid field size")
        q = p**k
        if q > MAX_FIELD_SIZE:
            raise ValueError(f"field size {q} exceeds the cap {MAX_FIELD_SIZE}")
        if k == 1:
            f: tuple[int, ...] = (0, 1)  # the residue ring is GF(p) itself
        else:
            f = IRREDUCIBLE_POLYS[(p, k)]
        self.p = p
        self.k = k
        self.order = q
        self.modulus = f

        elems = np.arange(q)
        digit_mat = np.array([_digits(int(e), p, k) for e in elems])  # (q, k)
        self.add_table = np.array(
            [
                [_undigits((digit_mat[a] + digit_mat[b]) % p, p) for b in range(q)]
                for a in range(q)
            ],
            dtype=np.int64,
        )

        g = self._find_generator(digit_mat)
        self.generator = g
        antilog = np.zeros(q - 1, dtype=np.int64)  # antilog[j] = g^j
        cur = [0] * k
        cur[0] = 1
        for j in range(q - 1):
            antilog[j] = _undigits(cur, p)
            cur = _poly_mul_mod(cur, _digits(g, p, k), f, p)
        log = np.full(q, -1, dtype=np.int64)
        log[antilog] = np.arange(q - 1)
        self.antilog = antilog
        self.log = log

        mul = np.zeros((q, q), dtype=np.int64)
        nz = elems[1:]
        mul[np.ix_(nz, nz)] = antilog[(log[nz, None] + log[None, nz]) % (q - 1)]
        self.mul_table = mul

        self.trace = self._build_trace()
        self.conj_pair_sum = self._build_conj_pair_sum() if p == 2 else None
        self._verify()

    # -- construction helpers -------------------------------------------------

    def _find_generator(self, digit_mat: np.ndarray) -> int:
        q, p, k, f = self.order, self.p, self.k, self.modulus
        if q == 2:
            return 1
        for g in range(2, q):
            cur = list(digit_mat[g])
            order = 1
            while _undigits(cur, p) != 1:
                cur = _poly_mul_mod(cur, list(digit_mat[g]), f, p)
                order += 1
                if order > q:
                    break
            if order == q - 1:
                return g
        raise ArithmeticError(f"no multiplicative generator found for GF({p}^{k})")

    def _frobenius(self, e: int) -> int:
        """e^p by repeated multiplication (fields are tiny)."""
        if e == 0:
            return 0
        out = e
        for _ in range(self.p - 1):
            out = int(self.mul_table[out, e])
        return out

    def _build_trace(self) -> np.ndarray:
        q, p, k = self.order, self.p, self.k
        tr = np.zeros(q, dtype=np.int64)
        for e in range(q):
            conj = e
            acc = e
            for _ in range(k - 1):
                conj = self._frobenius(conj)
                acc = int(self.add_table[acc, conj])
            digits = _digits(acc, p, k)
            if any(digits[1:]):
                raise ArithmeticError("trace left the prime subfield")
            tr[e] = digits[0]
        return tr

    def _build_conj_pair_sum(self) -> np.ndarray:
        q, k = self.order, self.k
        s = np.zeros(q, dtype=np.int64)
        for e in range(q):
            conj = [e]
            for _ in range(k - 1):
                conj.append(self._frobenius(conj[-1]))
            acc = 0
            for i in range(k):
                for j in range(i + 1, k):
                    acc = int(self.add_table[acc, self.mul_table[conj[i], conj[j]]])
            if acc not in (0, 1):
                raise ArithmeticError("conjugate-pair sum left GF(2)")
            s[e] = acc
        return s

    # -- public ops ------------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    # -- exhaustive verification -----------------------------------------------

    def _verify(self) -> None:
        q, p = self.order, self.p
        add, mul = self.add_table, self.mul_table
        if not np.array_equal(add, add.T) or not np.array_equal(mul, mul.T):
            raise ArithmeticError("operation tables are not commutative")
        if not np.array_equal(add[0], np.arange(q)) or not np.array_equal(mul[1], np.arange(q)):
            raise ArithmeticError("identity elements misbehave")
        if np.any(mul[0] != 0):
            raise ArithmeticError("0 * x != 0")
        # every element has an additive inverse; every nonzero a multiplicative one
        if not np.all(np.any(add == 0, axis=1)):
            raise ArithmeticError("additive inverses missing")
        if q > 1 and not np.all(np.any(mul[1:, 1:] == 1, axis=1)):
            raise ArithmeticError("multiplicative inverses missing (modulus reducible?)")
        # associativity and distributivity over all triples, vectorized
        a = np.arange(q)[:, None, None]
        b = np.arange(q)[None, :, None]
        c = np.arange(q)[None, None, :]
        if not np.array_equal(add[add[a, b], c], add[a, add[b, c]]):
            raise ArithmeticError("addition not associative")
        if not np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]]):
            raise ArithmeticError("multiplication not associative")
        if not np.array_equal(mul[a, add[b, c]], add[mul[a, b], mul[a, c]]):
            raise ArithmeticError("distributivity fails")
        # trace: additive and onto GF(p)
        tr = self.trace
        pair_sum = (tr[np.arange(q)[:, None]] + tr[np.arange(q)[None, :]]) % p
        if not np.array_equal(tr[add], pair_sum):
            raise ArithmeticError("trace is not additive")
        if set(tr.tolist()) != set(range(p)):
            raise ArithmeticError("trace is not onto the prime subfield")
