"""Brute-force counting oracles, independent of the divisor-sum formula.

Two unrelated enumerations give the combinatorial and field-theoretic
meanings of the necklace values:

  * Lyndon words of length n over x letters (standard successor
    algorithm) and, separately, primitive strings by naive periodicity
    testing; the two must stand in the ratio 1 : n.
  * Monic irreducible polynomials over GF(p^m), counted by an
    Eratosthenes-style sieve: every product of a lower-degree monic
    irreducible with an arbitrary monic cofactor is marked reducible,
    so a degree-n monic survives iff no irreducible of degree <= n/2
    divides it.  No counting formula enters the sieve.

Enumeration sizes are capped by a single configurable budget (total
candidates); exceeding it raises rather than silently truncating.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .necklace import necklace_eval_int
from .numtheory import divisors, is_prime

DEFAULT_BUDGET = 10**8

_CHUNK = 1 << 18  # cofactor rows processed per slice, keeps peak memory flat


class BudgetExceededError(Exception):
    """An enumeration would exceed the configured candidate budget."""

    def __init__(self, message: str, size: int | None = None, degree: int | None = None):
        super().__init__(message)
        self.size = size
        self.degree = degree


def _resolve_budget(budget: int | None) -> int:
    budget = DEFAULT_BUDGET if budget is None else budget
    if budget < 1:
        raise ValueError(f"budget must be positive, got {budget}")
    return budget


def count_lyndon(n: int, x: int, budget: int | None = None) -> int:
    """Number of Lyndon words of length exactly n over an x-letter alphabet.

    Successor generation: after emitting a word, extend it periodically to
    length n, strip trailing maximal letters, then bump the last position.
    Enumerates every Lyndon word of length <= n once, in lexicographic
    order, and counts those of full length.
    """
    if n < 1 or x < 1:
        raise ValueError(f"need n >= 1 and x >= 1, got ({n}, {x})")
    budget = _resolve_budget(budget)
    cost = n * x**n
    if cost > budget:
        raise BudgetExceededError(
            f"lyndon enumeration cost {cost} exceeds budget {budget}", size=cost
        )
    count = 0
    w = [-1]
    while w:
        w[-1] += 1
        if len(w) == n:
            count += 1
        m = len(w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == x - 1:
            w.pop()
    return count


def count_primitive_strings(n: int, x: int, budget: int | None = None) -> int:
    """Number of length-n strings over x letters that repeat no shorter block.

    Checks every proper period d | n directly on each string; deliberately
    shares nothing with the Lyndon generator so the two can cross-check
    each other (primitive count = n * Lyndon count).
    """
    if n < 1 or x < 1:
        raise ValueError(f"need n >= 1 and x >= 1, got ({n}, {x})")
    budget = _resolve_budget(budget)
    cost = x**n
    if cost > budget:
        raise BudgetExceededError(
            f"string enumeration cost {cost} exceeds budget {budget}", size=cost
        )
    periods = [(d, n // d) for d in divisors(n) if d < n]
    count = 0
    for s in itertools.product(range(x), repeat=n):
        if not any(s == s[:d] * reps for d, reps in periods):
            count += 1
    return count


# ---------------------------------------------------------------------------
# prime-field helpers (coefficient tuples over GF(p), constant term first)


def _poly_mod(f: tuple[int, ...], g: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Remainder of f modulo monic g, coefficients mod p."""
    rem = list(f)
    dg = len(g) - 1
    for top in range(len(rem) - 1, dg - 1, -1):
        c = rem[top] % p
        if c:
            for i in range(dg + 1):
                rem[top - dg + i] = (rem[top - dg + i] - c * g[i]) % p
    rem = [c % p for c in rem[:dg]]
    while rem and rem[-1] == 0:
        rem.pop()
    return tuple(rem)


def _prime_field_irreducibles(p: int, max_degree: int) -> dict[int, list[tuple[int, ...]]]:
    """Monic irreducibles over GF(p) by degree, built bottom-up by trial division."""
    table: dict[int, list[tuple[int, ...]]] = {}
    for d in range(1, max_degree + 1):
        found = []
        trial = [g for dd in range(1, d // 2 + 1) for g in table[dd]]
        for tail in itertools.product(range(p), repeat=d):
            candidate = tail + (1,)
            if all(_poly_mod(candidate, g, p) for g in trial):
                found.append(candidate)
        table[d] = found
    return table


class FieldSpec:
    """GF(p^m) presented as residue polynomials modulo a monic irreducible.

    Elements are encoded as integers 0..q-1 whose base-p digits are the
    residue coefficients, constant term first.  All arithmetic goes
    through precomputed addition/multiplication tables, so prime fields
    and extension fields share every code path downstream.
    """

    def __init__(self, characteristic: int, extension_degree: int, modulus: tuple[int, ...]):
        p, m = characteristic, extension_degree
        if not is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        if m < 1:
            raise ValueError(f"extension degree must be positive, got {m}")
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {m}, got {modulus}")
        if m >= 2:
            lower = _prime_field_irreducibles(p, m // 2)
            for g in (g for gs in lower.values() for g in gs):
                if not _poly_mod(modulus, g, p):
                    raise ValueError(f"modulus {modulus} is divisible by {g} over GF({p})")
        self.characteristic = p
        self.extension_degree = m
        self.modulus = modulus
        self.q = p**m
        self._add, self._mul = self._build_tables()

    def _build_tables(self) -> tuple[np.ndarray, np.ndarray]:
        p, m, q = self.characteristic, self.extension_degree, self.q
        elems = [self.element_coeffs(e) for e in range(q)]
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                s = tuple((elems[a][i] + elems[b][i]) % p for i in range(m))
                add[a, b] = add[b, a] = self.encode(s)
                conv = [0] * (2 * m - 1)
                for i, ca in enumerate(elems[a]):
                    if ca:
                        for j, cb in enumerate(elems[b]):
                            conv[i + j] += ca * cb
                mul[a, b] = mul[b, a] = self.encode(_poly_mod(tuple(conv), self.modulus, p))
        return add, mul

    def element_coeffs(self, element: int) -> tuple[int, ...]:
        """Residue coefficients (length m, constant term first) of an element index."""
        p, m = self.characteristic, self.extension_degree
        out = []
        for _ in range(m):
            element, digit = divmod(element, p)
            out.append(digit)
        return tuple(out)

    def encode(self, coeffs: tuple[int, ...]) -> int:
        p = self.characteristic
        out = 0
        for c in reversed(coeffs):
            out = out * p + c
        return out

    def add(self, a: int, b: int) -> int:
        return int(self._add[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self._mul[a, b])

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldSpec):
            return (self.characteristic, self.extension_degree, self.modulus) == (
                other.characteristic,
                other.extension_degree,
                other.modulus,
            )
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.characteristic, self.extension_degree, self.modulus))

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.characteristic}, m={self.extension_degree}, modulus={self.modulus})"


def build_field(p: int, m: int) -> FieldSpec:
    """GF(p^m) with the lexicographically smallest monic irreducible modulus.

    Coefficient tuples are compared constant term first; irreducibility is
    certified by trial division against all monic irreducibles of degree
    <= m/2, themselves built bottom-up.  For m = 1 the modulus is t and
    the field is GF(p) itself.
    """
    if not is_prime(p):
        raise ValueError(f"characteristic must be prime, got {p}")
    if m < 1:
        raise ValueError(f"extension degree must be positive, got {m}")
    if m == 1:
        return FieldSpec(p, 1, (0, 1))
    lower = _prime_field_irreducibles(p, m // 2)
    trial = [g for gs in lower.values() for g in gs]
    for tail in itertools.product(range(p), repeat=m):
        candidate = tail + (1,)
        if all(_poly_mod(candidate, g, p) for g in trial):
            return FieldSpec(p, m, candidate)
    raise AssertionError(f"no monic irreducible of degree {m} over GF({p})")  # unreachable


@dataclass(frozen=True)
class CensusReport:
    """Per-degree irreducible counts from the sieve vs. the formula."""

    q: int
    max_degree: int
    brute_counts: tuple[int, ...]  # index d-1 holds the count at degree d
    formula_counts: tuple[int, ...]

    @property
    def matches(self) -> tuple[bool, ...]:
        return tuple(b == f for b, f in zip(self.brute_counts, self.formula_counts))

    @property
    def all_match(self) -> bool:
        return all(self.matches)

    def rows(self) -> list[tuple[int, int, int, bool]]:
        """(degree, brute_count, formula_count, match) per degree."""
        return [
            (d + 1, self.brute_counts[d], self.formula_counts[d], self.matches[d])
            for d in range(self.max_degree)
        ]

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "max_degree": self.max_degree,
            "rows": [
                {"degree": d, "brute_count": b, "formula_count": f, "match": m}
                for d, b, f, m in self.rows()
            ],
            "all_match": self.all_match,
        }


def max_degree_within_budget(q: int, budget: int | None = None) -> int:
    """Largest N with q + q^2 + ... + q^N within the candidate budget."""
    budget = _resolve_budget(budget)
    total = 0
    n = 0
    while total + q ** (n + 1) <= budget:
        n += 1
        total += q**n
    return n


def census(field: FieldSpec, max_degree: int, budget: int | None = None) -> CensusReport:
    """Count monic irreducibles per degree by sieve and compare with the formula.

    For each degree n the sieve marks every product g*h with g a monic
    irreducible of degree d <= n/2 found earlier and h an arbitrary monic
    of degree n - d; the unmarked monics are exactly the irreducibles.
    Products are expanded by table lookups, vectorized over h in chunks.
    """
    if max_degree < 1:
        raise ValueError(f"max degree must be positive, got {max_degree}")
    budget = _resolve_budget(budget)
    q = field.q
    total = 0
    for d in range(1, max_degree + 1):
        total += q**d
        if total > budget:
            raise BudgetExceededError(
                f"census needs {total} candidates up to degree {d}, budget is {budget}",
                size=total,
                degree=d,
            )
    add_t, mul_t = field._add, field._mul
    irreducibles: dict[int, np.ndarray] = {}
    brute: list[int] = []
    for n in range(1, max_degree + 1):
        size = q**n
        marked = np.zeros(size, dtype=bool)
        for d in range(1, n // 2 + 1):
            gs = irreducibles[d]
            e = n - d
            for start in range(0, q**e, _CHUNK):
                rows = np.arange(start, min(start + _CHUNK, q**e), dtype=np.int64)
                # cofactor coefficient columns: digits of the row index, then leading 1
                cols = [(rows // q**j) % q for j in range(e)]
                cols.append(np.ones(len(rows), dtype=np.int64))
                for g in gs:
                    prod = [np.zeros(len(rows), dtype=np.int64) for _ in range(n)]
                    for i in range(d + 1):
                        gi = int(g[i])
                        if not gi:
                            continue
                        row_mul = mul_t[gi]
                        for j in range(e + 1):
                            if i + j < n:  # the leading column is identically 1
                                prod[i + j] = add_t[prod[i + j], row_mul[cols[j]]]
                    idx = np.zeros(len(rows), dtype=np.int64)
                    for j in range(n):
                        idx += prod[j] * q**j
                    marked[idx] = True
        count = int(size - int(marked.sum()))
        brute.append(count)
        if n <= max_degree // 2:
            survivors = np.nonzero(~marked)[0]
            coeffs = np.empty((len(survivors), n + 1), dtype=np.int64)
            for j in range(n):
                coeffs[:, j] = (survivors // q**j) % q
            coeffs[:, n] = 1
            irreducibles[n] = coeffs
    formula = [necklace_eval_int(d, q) for d in range(1, max_degree + 1)]
    return CensusReport(q, max_degree, tuple(brute), tuple(formula))
