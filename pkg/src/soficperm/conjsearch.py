"""Search for order-constrained permutations that almost conjugate one
generator image to another.

A :class:`ConjProblem` scores a candidate f by its agreement count
|{x : f(alpha(x)) = beta(f(x))}| -- the number of points where
f o alpha = beta o f holds.  The searches keep f^k = id invariant by
construction: the hill climber only moves by conjugating f with a
transposition, which preserves the cycle type.

For translation problems (alpha: x -> x+p, beta: x -> x+q) full agreement
forces n | q^k - p^k, and when the multiplier l = q * p^-1 mod n satisfies
l^k = 1 the map x -> l*x is an exact, order-k conjugator
(:func:`exact_multiplicative`).
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Optional, Sequence

import numpy as np

from . import approx as approxmod
from . import groups
from . import perm as permmod
from .approx import ApproxSpec
from .groups import GenWord, GroupElem
from .perm import Perm

__all__ = [
    "ConjProblem",
    "SearchReport",
    "AlignmentReport",
    "translation_perm",
    "multiplication_perm",
    "translation_problem",
    "multiplication_problem",
    "problem_from_spec",
    "agreement",
    "exact_multiplicative",
    "exact_search",
    "brute_force",
    "local_search",
    "psi_f_eval",
    "higman_defect",
    "align",
    "sign_flip_perm",
    "transport_sign_flip",
]

# the single scored orientation: f o alpha = beta o f
ORIENTATION = "f.alpha=beta.f"


def translation_perm(n: int, s: int) -> Perm:
    return Perm((np.arange(n, dtype=np.int64) + s) % n, _trusted=True)


def multiplication_perm(n: int, u: int) -> Perm:
    if math.gcd(u, n) != 1:
        raise ValueError(f"u={u} not invertible mod {n}")
    return Perm((u % n) * np.arange(n, dtype=np.int64) % n, _trusted=True)


@dataclass(frozen=True, eq=False)
class ConjProblem:
    """Degree n, order bound k, and the two permutations being intertwined."""

    n: int
    k: int
    alpha: Perm
    beta: Perm
    orientation: str = ORIENTATION

    def __post_init__(self):
        if self.alpha.n != self.n or self.beta.n != self.n:
            raise ValueError("alpha and beta must have degree n")
        if self.k < 1:
            raise ValueError("k must be >= 1")


def translation_problem(n: int, p: int, q: int, k: int) -> ConjProblem:
    """alpha: x -> x + p, beta: x -> x + q."""
    return ConjProblem(n, k, translation_perm(n, p), translation_perm(n, q))


def multiplication_problem(n: int, u: int, k: int) -> ConjProblem:
    """alpha: x -> x + 1, beta: x -> u * x."""
    return ConjProblem(n, k, translation_perm(n, 1), multiplication_perm(n, u))


def problem_from_spec(spec: ApproxSpec, k: int) -> ConjProblem:
    """Conjugation problem for the defining relation b^t = a: candidates f
    should satisfy f(psi(a)(x)) = psi(b)(f(x)) on most points."""
    return ConjProblem(spec.npoints, k, spec.psi_a, spec.psi_b)


def agreement(f: Perm, prob: ConjProblem) -> int:
    """|{x : f(alpha(x)) = beta(f(x))}|, exactly."""
    if f.n != prob.n:
        raise ValueError(f"degree mismatch: {f.n} != {prob.n}")
    fi = f.images
    return int(np.count_nonzero(fi[prob.alpha.images] == prob.beta.images[fi]))


@dataclass(frozen=True, eq=False)
class SearchReport:
    """One search outcome.  ``elapsed_s`` is diagnostic only and is kept out
    of the serialized data stream so runs are byte-reproducible."""

    problem: ConjProblem
    algorithm: str
    seed: Optional[int]
    f: Perm
    order_of_f: int
    agreement_count: int
    agreement_fraction: Fraction
    iterations: int
    elapsed_s: float


def _make_report(prob, algorithm, seed, f, iterations, elapsed) -> SearchReport:
    count = agreement(f, prob)
    return SearchReport(
        problem=prob,
        algorithm=algorithm,
        seed=seed,
        f=f,
        order_of_f=permmod.order_of(f),
        agreement_count=count,
        agreement_fraction=Fraction(count, prob.n),
        iterations=iterations,
        elapsed_s=elapsed,
    )


def _translation_offset(g: Perm) -> Optional[int]:
    """s with g(x) = x + s for all x, or None."""
    s = int(g.images[0])
    expected = (np.arange(g.n, dtype=np.int64) + s) % g.n
    return s if np.array_equal(g.images, expected) else None


def exact_multiplicative(n: int, p: int, q: int, k: int) -> Optional[Perm]:
    """x -> l*x with l = q * p^-1 mod n, when that is an order-dividing-k
    bijection (l^k = 1 and gcd(l, n) = 1); None otherwise.

    Such an f intertwines x -> x+p with x -> x+q at every point.
    """
    if math.gcd(p, n) != 1:
        raise ValueError(f"p={p} must be invertible mod n={n}")
    l = (q * pow(p, -1, n)) % n
    if math.gcd(l, n) != 1:
        return None
    if pow(l, k, n) != 1:
        return None
    return multiplication_perm(n, l)


def exact_search(prob: ConjProblem) -> Optional[SearchReport]:
    """Closed-form attempt for a translation pair: alpha and beta must both
    be x -> x + s maps; returns None when no multiplicative solution of
    order dividing k exists."""
    p = _translation_offset(prob.alpha)
    q = _translation_offset(prob.beta)
    if p is None or q is None:
        raise ValueError(
            "exact construction needs translation alpha and beta")
    f = exact_multiplicative(prob.n, p, q, prob.k)
    if f is None:
        return None
    return _make_report(prob, "exact", None, f, 1, 0.0)


@lru_cache(maxsize=32)
def _order_dividing_matrix(n: int, k: int) -> np.ndarray:
    """All f in Sym(n) with f^k = id, stacked in lexicographic image order."""
    rows = []
    for tup in permutations(range(n)):
        # cycle-length check without building a Perm
        seen = [False] * n
        ok = True
        for start in range(n):
            if seen[start]:
                continue
            length = 0
            x = start
            while not seen[x]:
                seen[x] = True
                x = tup[x]
                length += 1
            if k % length != 0:
                ok = False
                break
        if ok:
            rows.append(tup)
    return np.asarray(rows, dtype=np.int64)


def brute_force(prob: ConjProblem, *, cap: int = 9) -> SearchReport:
    """Exact optimum by enumerating every f with f^k = id; ties go to the
    lexicographically smallest image array."""
    if prob.n > cap:
        raise ValueError(f"n={prob.n} over the brute-force cap {cap}")
    t0 = time.perf_counter()
    F = _order_dividing_matrix(prob.n, prob.k)
    scores = np.count_nonzero(
        F[:, prob.alpha.images] == prob.beta.images[F], axis=1
    )
    best = int(np.argmax(scores))  # first occurrence = lexicographically least
    f = Perm(F[best], _trusted=True)
    return _make_report(
        prob, "brute", None, f, len(F), time.perf_counter() - t0
    )


# ---------------------------------------------------------------------------
# hill climbing
# ---------------------------------------------------------------------------

def _greedy_chain_start(prob: ConjProblem) -> Perm:
    """Extend f along alpha-orbits by f(alpha(x)) := beta(f(x)) until a value
    collides, patch the leftovers into a bijection, then project to order k."""
    n = prob.n
    alpha = prob.alpha.images.tolist()
    beta = prob.beta.images.tolist()
    f = [-1] * n
    used = [False] * n
    next_free = 0
    for x0 in range(n):
        if f[x0] >= 0:
            continue
        while used[next_free]:
            next_free += 1
        f[x0] = next_free
        used[next_free] = True
        x = x0
        while True:
            y = alpha[x]
            v = beta[f[x]]
            if f[y] >= 0 or used[v]:
                break
            f[y] = v
            used[v] = True
            x = y
    candidate = Perm(np.asarray(f, dtype=np.int64), _trusted=True)
    return permmod.project_to_order(candidate, prob.k)


def _multiplicative_start(prob: ConjProblem) -> Optional[Perm]:
    """exact_multiplicative seed for translation problems, projected to
    order k when l^k != 1."""
    p = _translation_offset(prob.alpha)
    q = _translation_offset(prob.beta)
    if p is None or q is None or math.gcd(p, prob.n) != 1:
        return None
    l = (q * pow(p, -1, prob.n)) % prob.n
    if math.gcd(l, prob.n) != 1:
        return None
    return permmod.project_to_order(
        multiplication_perm(prob.n, l), prob.k
    )


def _climb(prob: ConjProblem, f_list: list[int], iters: int,
           rng: random.Random) -> tuple[list[int], int]:
    """In-place hill climb; returns (f, score).  Moves are conjugations by a
    transposition, evaluated incrementally on the <= 8 affected points."""
    n = prob.n
    alpha = prob.alpha.images.tolist()
    beta = prob.beta.images.tolist()
    ainv = [0] * n
    for x, y in enumerate(alpha):
        ainv[y] = x
    f = f_list
    finv = [0] * n
    for x, y in enumerate(f):
        finv[y] = x
    score = sum(1 for x in range(n) if f[alpha[x]] == beta[f[x]])

    for _ in range(iters):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue

        def tau(y: int) -> int:
            return j if y == i else i if y == j else y

        changed = {y for y in (i, j, finv[i], finv[j]) if tau(f[tau(y)]) != f[y]}
        if not changed:
            continue
        affected = changed | {ainv[d] for d in changed}
        old = sum(1 for x in affected if f[alpha[x]] == beta[f[x]])
        new = sum(
            1 for x in affected if tau(f[tau(alpha[x])]) == beta[tau(f[tau(x)])]
        )
        delta = new - old
        if delta > 0 or (delta == 0 and rng.random() < 0.25):
            updates = [(y, tau(f[tau(y)])) for y in changed]
            for y, v in updates:
                f[y] = v
            for y, v in updates:
                finv[v] = y
            score += delta
    return f, score


def local_search(
    prob: ConjProblem,
    seed: int = 0,
    iters: Optional[int] = None,
    restarts: int = 16,
) -> SearchReport:
    """Seeded hill climbing over {f : f^k = id}.

    Restart r climbs from, in order: the exact-multiplicative seed when the
    problem is a translation pair (r = 0), the greedy chain extension
    (r <= 1), then uniform order-dividing-k samples.  Restart RNGs are
    derived as seed * 2^32 + r, restarts run independently, and the winner
    is the best score with lexicographically smallest f, so the result does
    not depend on how restarts are scheduled.
    """
    if iters is None:
        iters = 200 * prob.n
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    t0 = time.perf_counter()
    best_key: Optional[tuple[int, tuple[int, ...]]] = None
    total = 0
    for r in range(restarts):
        rng = random.Random((seed << 32) + r)
        start: Optional[Perm] = None
        if r == 0:
            start = _multiplicative_start(prob)
        if start is None and r <= 1:
            start = _greedy_chain_start(prob)
        if start is None:
            start = permmod._sample_order_k_rng(prob.n, prob.k, rng)
        f, score = _climb(prob, start.images.tolist(), iters, rng)
        total += iters
        key = (-score, tuple(f))
        if best_key is None or key < best_key:
            best_key = key
    f = Perm(np.asarray(best_key[1], dtype=np.int64), _trusted=True)
    return _make_report(
        prob, "local", seed, f, total, time.perf_counter() - t0
    )


# ---------------------------------------------------------------------------
# evaluating words that mix group letters with the order-k letter t
# ---------------------------------------------------------------------------

def psi_f_eval(spec: ApproxSpec, f: Perm, w: GenWord) -> Perm:
    """Evaluate a word over {a, b, t}: group letters go through the spec's
    psi, each t power becomes the same power of f, all composed
    right-to-left so the evaluation is multiplicative on words."""
    if f.n != spec.npoints:
        raise ValueError(f"degree mismatch: f has {f.n}, spec has {spec.npoints}")
    acc = Perm.identity(spec.npoints)
    for gen, exp in w.letters:
        if gen == "t":
            img = permmod.power(f, exp)
        else:
            img = approxmod.eval(
                spec, groups.generator(spec.family, gen, exp, m=spec.m)
            )
        acc = permmod.compose(acc, img)
    return acc


def higman_defect(
    spec: ApproxSpec, f: Perm,
    pairs: Sequence[tuple[GroupElem | GenWord, GroupElem | GenWord]],
) -> Fraction:
    """max over (b, phi_b) of d(psi(b) o f, f o psi(phi_b))."""
    if f.n != spec.npoints:
        raise ValueError(f"degree mismatch: f has {f.n}, spec has {spec.npoints}")
    if not pairs:
        raise ValueError("need at least one (b, phi(b)) pair")
    worst = Fraction(0)
    for b, phib in pairs:
        lhs = permmod.compose(approxmod.eval(spec, b), f)
        rhs = permmod.compose(f, approxmod.eval(spec, phib))
        worst = max(worst, permmod.hamming(lhs, rhs))
    return worst


# ---------------------------------------------------------------------------
# alignment of two approximations (empirical conjugator search)
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AlignmentReport:
    """Best tau found with d(tau^-1 rho1(s) tau, rho2(s)) for each s in S."""

    tau: Perm
    per_element: tuple[tuple[GroupElem, Fraction], ...]
    max_distance: Fraction
    iterations: int
    elapsed_s: float


def _align_counts(tau_images, tau_inv, rho1_list, rho2_list, n):
    """(max, total) disagreement counts of tau^-1 rho1 tau vs rho2 over S."""
    worst = 0
    total = 0
    for r1, r2 in zip(rho1_list, rho2_list):
        c = int(np.count_nonzero(tau_inv[r1[tau_images]] != r2))
        worst = max(worst, c)
        total += c
    return worst, total


def align(
    spec1,
    spec2,
    S: Iterable[GroupElem],
    seed: int = 0,
    iters: Optional[int] = None,
    restarts: int = 8,
) -> AlignmentReport:
    """Steepest-descent search for tau minimizing the worst distance
    d(tau^-1 rho1(s) tau, rho2(s)) over s in S (total distance breaks ties).

    Best-effort only: the search stops at local optima; restarts beyond the
    identity start use seeded random tau.  Reported distances are exact.
    """
    if spec1.npoints != spec2.npoints:
        raise ValueError("degree mismatch between the two specs")
    if getattr(spec1, "family", None) != getattr(spec2, "family", None):
        raise ValueError("family mismatch between the two specs")
    n = spec1.npoints
    elements = sorted(set(S), key=groups.sort_key)
    rho1 = [approxmod.eval_any(spec1, s).images for s in elements]
    rho2 = [approxmod.eval_any(spec2, s).images for s in elements]
    if iters is None:
        iters = 50 * n
    t0 = time.perf_counter()

    best: Optional[tuple[tuple[int, int], tuple[int, ...]]] = None
    steps_total = 0
    for r in range(restarts):
        if r == 0:
            tau = np.arange(n, dtype=np.int64)
        else:
            rng = random.Random((seed << 32) + r)
            lst = list(range(n))
            rng.shuffle(lst)
            tau = np.asarray(lst, dtype=np.int64)
        tau_inv = np.argsort(tau)
        obj = _align_counts(tau, tau_inv, rho1, rho2, n)
        for _ in range(iters):
            steps_total += 1
            improved = None
            for i in range(n - 1):
                for j in range(i + 1, n):
                    cand = tau.copy()
                    cand[i], cand[j] = cand[j], cand[i]
                    cand_inv = np.argsort(cand)
                    cobj = _align_counts(cand, cand_inv, rho1, rho2, n)
                    if cobj < obj and (improved is None or cobj < improved[0]):
                        improved = (cobj, cand, cand_inv)
            if improved is None:
                break
            obj, tau, tau_inv = improved
        key = (obj, tuple(int(v) for v in tau))
        if best is None or key < best:
            best = key

    tau = Perm(np.asarray(best[1], dtype=np.int64), _trusted=True)
    tau_inv = permmod.inverse(tau)
    per_element = []
    worst = Fraction(0)
    for s, r1, r2 in zip(elements, rho1, rho2):
        conj = permmod.compose(permmod.compose(tau_inv, Perm(r1, _trusted=True)), tau)
        d = permmod.hamming(conj, Perm(r2, _trusted=True))
        per_element.append((s, d))
        worst = max(worst, d)
    return AlignmentReport(
        tau=tau,
        per_element=tuple(per_element),
        max_distance=worst,
        iterations=steps_total,
        elapsed_s=time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# sign-flip transport between reciprocal multiplication targets
# ---------------------------------------------------------------------------

def sign_flip_perm(f: Perm) -> Perm:
    """f~(x) = -f(-x) mod n; conjugation by negation, so cycle type (and
    order) are preserved."""
    n = f.n
    idx = np.arange(n, dtype=np.int64)
    neg = (-idx) % n
    return Perm((-f.images[neg]) % n, _trusted=True)


def transport_sign_flip(prob: ConjProblem, f: Perm) -> tuple[ConjProblem, Perm]:
    """Carry (prob, f) with alpha = +t, beta = *u to the reciprocal problem
    beta' = *u^-1 with f~ = sign_flip_perm(f); agreement counts match
    point-for-point and the transport is an involution."""
    t = _translation_offset(prob.alpha)
    if t is None:
        raise ValueError("transport needs alpha to be a translation")
    n = prob.n
    u = int(prob.beta.images[1]) if n > 1 else 0  # beta(1) = u for x -> u*x
    if not np.array_equal(
        prob.beta.images, (u * np.arange(n, dtype=np.int64)) % n
    ) or math.gcd(u, n) != 1:
        raise ValueError("transport needs beta to be an invertible multiplication")
    new_beta = multiplication_perm(n, pow(u, -1, n))
    new_prob = replace(prob, beta=new_beta)
    return new_prob, sign_flip_perm(f)
