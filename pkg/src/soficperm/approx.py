"""Finite approximations psi of the group families, and the verifier.

For each family, :func:`make_approx` builds the standard generator images on
Z/nZ (or on (Z/nZ)^2 for the Heisenberg group):

- ``z2``     psi(a): x -> x + p,            psi(b): x -> x + q
- ``heis``   psi(a^lam b^mu c^nu): (x, y) -> (x + mu*y - nu, y + lam)
- ``bs``     psi(a): x -> x + 1,            psi(b): x -> m^-1 x
- ``zwrz``   psi(a): x -> x + 1,            psi(b): x -> m^-1 x
- ``metab``  psi(a): x -> q^-1 (x + 1),     psi(b): x -> p^-1 x

Each map is an exact homomorphism of its family; :func:`verify` confirms
the zero homomorphism defect and checks the distance-from-identity
condition over a finite set S at a tolerance delta, with exact rational
arithmetic throughout.  Amplified specs (block-diagonal copies of a smaller
spec, see :func:`amplify_spec`) evaluate through the base spec, which keeps
the homomorphism defect at zero while the identity-distance condition
degrades by at most 1/(q+1) for q full blocks.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from . import groups
from . import perm as permmod
from .groups import (
    Ball,
    BSElem,
    FreeWord,
    GenWord,
    GroupElem,
    HeisElem,
    WreathElem,
    Z2Elem,
)
from .perm import Perm

__all__ = [
    "ApproxSpec",
    "VerifyReport",
    "PolyConditionResult",
    "HeisFixedReport",
    "make_approx",
    "eval",
    "verify",
    "amplify_spec",
    "conjugate_spec",
    "check_poly_condition",
    "heis_fixed_bound",
    "z2_ball_constant",
    "wreath_ball_constant",
    "to_fraction",
]

def to_fraction(x) -> Fraction:
    """Exact tolerance parsing: Fraction, int, and decimal strings pass
    through exactly; floats go through their shortest repr."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(str(x))
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


@dataclass(frozen=True, eq=False)
class ApproxSpec:
    """A family tag, its parameters, and the two generator images.

    ``n`` is the modulus; ``npoints`` the degree of the permutations
    (n for all families except heis, which acts on n^2 points encoded as
    x*n + y).  When ``base`` is set the spec is a block-diagonal
    amplification of ``base`` and evaluation routes through it.
    """

    family: str
    n: int
    npoints: int
    p: Optional[int]
    q: Optional[int]
    m: Optional[int]
    psi_a: Perm
    psi_b: Perm
    base: Optional["ApproxSpec"] = None

    def params(self) -> dict:
        out: dict = {"n": self.n}
        for name in ("p", "q", "m"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        if self.base is not None:
            out["amplified_to"] = self.npoints
        return out


def _affine_perm(n: int, u: int, v: int) -> Perm:
    """x -> u*x + v mod n as a Perm (requires gcd(u, n) = 1)."""
    u, v = u % n, v % n
    images = (u * np.arange(n, dtype=np.int64) + v) % n
    return Perm(images, _trusted=True)


def _heis_perm(n: int, lam: int, mu: int, nu: int) -> Perm:
    """(x, y) -> (x + mu*y - nu, y + lam) on n^2 points encoded x*n + y."""
    lam, mu, nu = lam % n, mu % n, nu % n
    idx = np.arange(n * n, dtype=np.int64)
    x, y = idx // n, idx % n
    return Perm(((x + mu * y - nu) % n) * n + (y + lam) % n, _trusted=True)


def make_approx(
    family: str,
    n: int,
    *,
    p: int | None = None,
    q: int | None = None,
    m: int | None = None,
) -> ApproxSpec:
    """Build the generator images for one family at modulus n."""
    if family not in groups.FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    if family == "z2":
        if p is None or q is None:
            raise ValueError("z2 needs translation amounts p and q")
        return ApproxSpec("z2", n, n, p, q, None,
                          _affine_perm(n, 1, p % n), _affine_perm(n, 1, q % n))
    if family == "heis":
        return ApproxSpec("heis", n, n * n, None, None, None,
                          _heis_perm(n, 1, 0, 0), _heis_perm(n, 0, 1, 0))
    if family in ("bs", "zwrz"):
        if m is None:
            raise ValueError(f"{family} needs the parameter m")
        if abs(m) < 2:
            raise ValueError("|m| must be >= 2")
        if math.gcd(m, n) != 1:
            raise ValueError(f"m={m} must be coprime to n={n}")
        minv = pow(m, -1, n)
        return ApproxSpec(family, n, n, None, None, m,
                          _affine_perm(n, 1, 1), _affine_perm(n, minv, 0))
    # metab
    if p is None or q is None:
        raise ValueError("metab needs parameters p and q")
    if math.gcd(p, n) != 1 or math.gcd(q, n) != 1:
        raise ValueError(f"p={p} and q={q} must be coprime to n={n}")
    qinv = pow(q, -1, n)
    pinv = pow(p, -1, n)
    return ApproxSpec("metab", n, n, p, q, None,
                      _affine_perm(n, qinv, qinv), _affine_perm(n, pinv, 0))


def _metab_affine(spec: ApproxSpec, w: GenWord) -> tuple[int, int]:
    """Fold a word over {a, b} into the affine map (u, v): x -> u*x + v."""
    n = spec.n
    qinv = pow(spec.q, -1, n)
    pinv = pow(spec.p, -1, n)
    gen_maps = {
        ("a", 1): (qinv, qinv),             # x -> q^-1 (x + 1)
        ("a", -1): (spec.q % n, (-1) % n),  # x -> q*x - 1
        ("b", 1): (pinv, 0),
        ("b", -1): (spec.p % n, 0),         # x -> p*x
    }
    u, v = 1, 0
    for gen, exp in w.letters:
        step = 1 if exp > 0 else -1
        gu, gv = gen_maps[(gen, step)]
        for _ in range(abs(exp)):
            # acc = acc o gen_image (gen image applied first)
            u, v = (u * gu) % n, (u * gv + v) % n
    return u, v


def eval(spec: ApproxSpec, x: GroupElem | GenWord) -> Perm:  # noqa: A001
    """The image permutation of ``x`` under the spec's homomorphism."""
    if spec.base is not None:
        return permmod.amplify(eval(spec.base, x), spec.npoints)
    n = spec.n
    if isinstance(x, GenWord):
        if spec.family != "metab":
            x_elem = groups.eval_word(x, spec.family, m=spec.m)
            return eval(spec, x_elem)
        x = FreeWord(x)
    fam = groups.family_of(x)
    if fam != spec.family:
        raise ValueError(f"family mismatch: element is {fam}, spec is {spec.family}")
    if isinstance(x, Z2Elem):
        return _affine_perm(n, 1, (x.lam * spec.p + x.mu * spec.q) % n)
    if isinstance(x, HeisElem):
        return _heis_perm(n, x.lam, x.mu, x.nu)
    if isinstance(x, BSElem):
        if x.m != spec.m:
            raise ValueError(f"parameter mismatch: m={x.m} vs spec m={spec.m}")
        u = pow(spec.m, -x.pow, n)
        v = (u * x.num * pow(spec.m, -x.den_exp, n)) % n
        return _affine_perm(n, u, v)
    if isinstance(x, WreathElem):
        tm = sum(c * pow(spec.m, e, n) for e, c in x.poly) % n
        u = pow(spec.m, -x.pow, n)
        return _affine_perm(n, u, (u * tm) % n)
    # metab word
    u, v = _metab_affine(spec, x.word)
    return _affine_perm(n, u, v)


def amplify_spec(spec: ApproxSpec, npoints: int) -> ApproxSpec:
    """Block-diagonal amplification: q = npoints // spec.npoints copies."""
    if npoints < spec.npoints:
        raise ValueError("target degree smaller than the spec degree")
    if spec.base is not None:
        raise ValueError("amplifying an amplified spec is not supported; "
                         "amplify the original instead")
    return ApproxSpec(
        spec.family, spec.n, npoints, spec.p, spec.q, spec.m,
        permmod.amplify(spec.psi_a, npoints),
        permmod.amplify(spec.psi_b, npoints),
        base=spec,
    )


class ConjugatedSpec:
    """rho2 = sigma^-1 rho1 sigma; used to exercise alignment search."""

    def __init__(self, base: ApproxSpec, sigma: Perm):
        if sigma.n != base.npoints:
            raise ValueError("degree mismatch")
        self.base = base
        self.sigma = sigma
        self.family = base.family
        self.npoints = base.npoints

    def eval(self, x: GroupElem | GenWord) -> Perm:
        inner = eval(self.base, x)
        return permmod.compose(
            permmod.compose(permmod.inverse(self.sigma), inner), self.sigma
        )


def conjugate_spec(spec: ApproxSpec, sigma: Perm) -> ConjugatedSpec:
    return ConjugatedSpec(spec, sigma)


def eval_any(spec, x) -> Perm:
    """eval() for either ApproxSpec or ConjugatedSpec."""
    if isinstance(spec, ConjugatedSpec):
        return spec.eval(x)
    return eval(spec, x)


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of the two approximation conditions over a finite set S.

    ``worst_hom_defect`` is the largest d(psi(g) psi(h), psi(gh)) over pairs
    with g, h, gh all in S; ``worst_id_closeness`` the smallest
    d(psi(g), id) over nontrivial g in S.  Passing means
    worst_hom_defect < delta and worst_id_closeness > 1 - delta.
    """

    family: str
    npoints: int
    delta: Fraction
    worst_hom_defect: Fraction
    hom_witness: Optional[tuple[GroupElem, GroupElem]]
    worst_id_closeness: Optional[Fraction]
    id_witness: Optional[GroupElem]
    passed: bool
    elements_checked: int
    pairs_checked: int


def _is_identity_elem(x: GroupElem, exact: bool) -> bool:
    if isinstance(x, FreeWord) or not exact:
        # metab: only the empty word is *known* trivial; the caller asserts
        # the nontriviality of everything else (word problem out of scope)
        if isinstance(x, FreeWord):
            return x.word.is_empty()
        raise ValueError("non-exact sets need word elements")
    return groups.is_trivial(x)


def verify(spec: ApproxSpec, S: Ball | Iterable[GroupElem], delta) -> VerifyReport:
    """Check both approximation conditions of psi over S at tolerance delta.

    For metab, S holds words; every nonempty word is taken to be nontrivial
    on the caller's authority, since the word problem is out of scope here.
    """
    delta = to_fraction(delta)
    exact = S.exact if isinstance(S, Ball) else (spec.family != "metab")
    elements = sorted(set(S), key=groups.sort_key)
    images = {g: eval(spec, g) for g in elements}
    membership = {g: g for g in elements}

    worst_defect = Fraction(0)
    hom_witness: Optional[tuple[GroupElem, GroupElem]] = None
    pairs = 0
    for g, h in itertools.product(elements, elements):
        gh = groups.mul(g, h)
        if gh not in membership:
            continue
        pairs += 1
        d = permmod.hamming(permmod.compose(images[g], images[h]), images[gh])
        if d > worst_defect:
            worst_defect, hom_witness = d, (g, h)

    ident = Perm.identity(spec.npoints)
    worst_closeness: Optional[Fraction] = None
    id_witness: Optional[GroupElem] = None
    for g in elements:
        if _is_identity_elem(g, exact):
            continue
        d = permmod.hamming(images[g], ident)
        if worst_closeness is None or d < worst_closeness:
            worst_closeness, id_witness = d, g

    ok = worst_defect < delta and (
        worst_closeness is None or worst_closeness > 1 - delta
    )
    return VerifyReport(
        family=spec.family,
        npoints=spec.npoints,
        delta=delta,
        worst_hom_defect=worst_defect,
        hom_witness=hom_witness,
        worst_id_closeness=worst_closeness,
        id_witness=id_witness,
        passed=ok,
        elements_checked=len(elements),
        pairs_checked=pairs,
    )


# ---------------------------------------------------------------------------
# executable constants for the wreath / z2 sufficient conditions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolyConditionResult:
    """Whether n divides t(m) for no admissible nonzero polynomial t.

    Admissible: degree <= C, integer coefficients with |t_i| < C.  When the
    answer is False, ``witness`` holds the coefficients (t_0, ..., t_d) of
    the first offending polynomial in the (degree, coefficients) scan and
    ``witness_value`` its value at m.
    """

    ok: bool
    witness: Optional[tuple[int, ...]]
    witness_value: Optional[int]
    mode: str

    def __bool__(self) -> bool:
        return self.ok


def check_poly_condition(
    n: int, m: int, C: int, *, mode: str = "auto", cap: int = 4
) -> PolyConditionResult:
    """Test whether n | t(m) fails for every nonzero t of degree <= C with
    |t_i| < C; exhaustive for C <= cap, with the sufficient fast path
    |m| > 2C + 1 and n > |m|^(C+1).
    """
    if C < 0:
        raise ValueError("C must be >= 0")
    if math.gcd(m, n) != 1:
        raise ValueError(f"m={m} must be coprime to n={n}")
    if mode not in ("auto", "exhaustive", "fast"):
        raise ValueError(f"unknown mode {mode!r}")
    if C == 0:
        # no nonzero polynomial has degree <= 0 and |t_0| < 0 < 1: vacuous
        return PolyConditionResult(True, None, None, "vacuous")
    fast_ok = abs(m) > 2 * C + 1 and n > abs(m) ** (C + 1)
    if mode == "fast":
        if not fast_ok:
            raise ValueError("fast-path hypotheses do not hold; use exhaustive")
        return PolyConditionResult(True, None, None, "fast")
    if mode == "auto" and fast_ok:
        return PolyConditionResult(True, None, None, "fast")
    if C > cap:
        raise ValueError(f"C={C} over the exhaustive cap {cap}")
    coeff_range = range(-(C - 1), C)
    powers = [m ** i for i in range(C + 1)]
    for degree in range(C + 1):
        lead_choices = [c for c in coeff_range if c != 0] if degree > 0 else coeff_range
        for lower in itertools.product(coeff_range, repeat=degree):
            for lead in lead_choices:
                coeffs = lower + (lead,)
                if degree == 0 and lead == 0:
                    continue
                value = sum(c * powers[i] for i, c in enumerate(coeffs))
                if value % n == 0:
                    return PolyConditionResult(False, coeffs, value, "exhaustive")
    return PolyConditionResult(True, None, None, "exhaustive")


def z2_ball_constant(S: Iterable[Z2Elem]) -> int:
    """C = 3 * (largest generator exponent in S); with p > C q and n > C p
    every nontrivial element of S maps to a nonzero translation."""
    biggest = max((max(abs(g.lam), abs(g.mu)) for g in S), default=0)
    return 3 * max(1, biggest)


def wreath_ball_constant(S: Iterable[WreathElem], delta) -> int:
    """The polynomial bound C that makes check_poly_condition(n, m, C)
    sufficient for verify() to pass on S at delta (for prime-free gcd
    situations it covers both the pure-Laurent and the shifted cases)."""
    delta = to_fraction(delta)
    C = math.floor(1 / delta) + 1
    for g in S:
        if g.poly:
            exps = [e for e, _ in g.poly]
            span = max(exps) - min(exps)
            coeff = max(abs(c) for _, c in g.poly)
            C = max(C, span, coeff + 1)
        C = max(C, abs(g.pow))
    return C


@dataclass(frozen=True)
class HeisFixedReport:
    """Exact fixed-point count of psi(a^lam b^mu c^nu) on n^2 points.

    ``bound`` is |lam| * n.  ``bound_ok`` is None when lam = 0: the bound
    reads 0 there while mu or nu can still leave n * gcd(mu, n) points
    fixed, so that subcase is reported rather than judged.
    """

    n: int
    lam: int
    mu: int
    nu: int
    count: int
    bound: int
    bound_ok: Optional[bool]


def heis_fixed_bound(n: int, lam: int, mu: int, nu: int) -> HeisFixedReport:
    if n < 1:
        raise ValueError("n must be >= 1")
    if lam % n == 0 and mu % n == 0 and nu % n == 0:
        raise ValueError("element is trivial mod n")
    image = _heis_perm(n, lam, mu, nu)
    count = int(np.count_nonzero(image.images == np.arange(n * n, dtype=np.int64)))
    bound = abs(lam) * n
    bound_ok = None if lam == 0 else count <= bound
    return HeisFixedReport(n, lam, mu, nu, count, bound, bound_ok)
