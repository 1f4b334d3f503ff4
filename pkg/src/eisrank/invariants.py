"""Elementary criteria attached to a parameter point (p, ell, k): Merel's
product, the cyclotomic-unit product detecting the first cup product, the
higher Merel product detecting the second, the hypothesis gate, and the
resulting rank/principality prediction."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from . import arith
from ._primes import is_prime
from .errors import HypothesesNotSatisfiedError, ParameterError

__all__ = [
    "ParameterPoint",
    "HypothesisReport",
    "Prediction",
    "ProductTest",
    "merel_invariant",
    "wake_unit",
    "lecouturier_invariant",
    "check_setup",
    "predict",
]


@dataclass(frozen=True)
class ParameterPoint:
    """A triple (p, ell, k) with the derived valuations nu = v_p(ell-1) and
    vpk = v_p(k).  Construction is permissive about the setup hypotheses
    (check_setup reports on them); primality of p and ell is enforced."""

    p: int
    ell: int
    k: int
    nu: int
    vpk: int

    @classmethod
    def create(cls, p: int, ell: int, k: int) -> "ParameterPoint":
        if not is_prime(p):
            raise ParameterError(f"p = {p} is not prime")
        if not is_prime(ell):
            raise ParameterError(f"ell = {ell} is not prime")
        if k < 1:
            raise ParameterError(f"k = {k} must be a positive integer")
        nu = arith.p_adic_valuation(ell - 1, p) if ell > 1 else 0
        vpk = arith.p_adic_valuation(k, p)
        return cls(p=p, ell=ell, k=k, nu=nu, vpk=vpk)


class ProductTest(NamedTuple):
    value: arith.ResidueClass
    is_pth_power: bool


@dataclass(frozen=True)
class HypothesisReport:
    p_gt_3: bool
    p_divides_ell_minus_1: bool
    k_even: bool
    p_minus_1_ndiv_k: bool
    p_regular: bool
    all_ok: bool


@dataclass(frozen=True)
class Prediction:
    """Truth-table output of the rank and principality criteria.

    For k = 2 the first cup-product flag is fixed to True by convention: the
    weight-2 criterion never consults it and the Eisenstein ideal is always
    principal there."""

    c0_cup_b0_nonzero: bool
    c0_cup_a0_nonzero: bool
    rank_gt_1_predicted: bool
    eis_principal_predicted: bool
    invariant_values: dict = field(default_factory=dict)


def _require_gate_arith(pt: ParameterPoint) -> None:
    if pt.nu < 1:
        raise ParameterError(f"p = {pt.p} does not divide ell - 1 = {pt.ell - 1}")


def merel_invariant(pt: ParameterPoint) -> ProductTest:
    """prod_{i=1}^{(ell-1)/2} i^i mod ell and its p-th-power status."""
    _require_gate_arith(pt)
    ell = pt.ell
    acc = 1
    for i in range(1, (ell - 1) // 2 + 1):
        acc = acc * pow(i, i % (ell - 1), ell) % ell
    value = arith.ResidueClass(acc, ell)
    return ProductTest(value, arith.is_pth_power(value, pt.p))


def wake_unit(pt: ParameterPoint) -> ProductTest:
    """prod_{j=1}^{p-1} (1 - zeta_p^j)^(j^(k-2)) mod ell, zeta_p deterministic.

    A p-th power here reports the vanishing of the first cup product under
    the setup hypotheses; the flag does not depend on the choice of zeta_p.
    """
    _require_gate_arith(pt)
    p, ell, k = pt.p, pt.ell, pt.k
    zeta = arith.primitive_pth_root(p, ell).value
    acc = 1
    zj = 1
    for j in range(1, p):
        zj = zj * zeta % ell
        base = (1 - zj) % ell
        acc = acc * pow(base, pow(j, k - 2, ell - 1), ell) % ell
    value = arith.ResidueClass(acc, ell)
    return ProductTest(value, arith.is_pth_power(value, p))


def lecouturier_invariant(pt: ParameterPoint) -> ProductTest:
    """prod_{i=1}^{ell-1} i^(sum_{j<i} j^(k-1)) mod ell.

    The inner sums are maintained incrementally mod (ell-1), keeping the whole
    product at O(ell log k) ring operations.  A p-th power here reports the
    vanishing of the second cup product under the setup hypotheses.
    """
    _require_gate_arith(pt)
    ell, k = pt.ell, pt.k
    acc = 1
    s = 0  # sum_{j=1}^{i-1} j^(k-1) mod (ell-1)
    for i in range(1, ell):
        acc = acc * pow(i, s, ell) % ell
        s = (s + pow(i, k - 1, ell - 1)) % (ell - 1)
    value = arith.ResidueClass(acc, ell)
    return ProductTest(value, arith.is_pth_power(value, pt.p))


def check_setup(pt: ParameterPoint) -> HypothesisReport:
    """The implementable hypothesis gate.  Regularity of p stands in for the
    class-group and cohomology-dimension hypotheses, both of which it
    implies; irregular p is reported as hypotheses-unverified."""
    p_gt_3 = pt.p > 3
    p_div = (pt.ell - 1) % pt.p == 0
    k_even = pt.k % 2 == 0
    ndiv = pt.k % (pt.p - 1) != 0
    regular = arith.is_regular_prime(pt.p) if pt.p > 2 else False
    return HypothesisReport(
        p_gt_3=p_gt_3,
        p_divides_ell_minus_1=p_div,
        k_even=k_even,
        p_minus_1_ndiv_k=ndiv,
        p_regular=regular,
        all_ok=p_gt_3 and p_div and k_even and ndiv and regular,
    )


def predict(pt: ParameterPoint) -> Prediction:
    """Rank and principality prediction from the product tests.

    rank > 1 is predicted exactly when the relevant cup products vanish:
    for k = 2 the single weight-2 criterion decides, for k > 2 both products
    must be non-p-th-powers for rank 1.  The Merel product is recorded for
    every point; at k = 2 its flag and the higher product's flag are two
    routes to the same statement and the harness cross-checks them.
    """
    report = check_setup(pt)
    if not report.all_ok:
        raise HypothesesNotSatisfiedError(f"hypothesis gate fails for {pt}")
    merel = merel_invariant(pt)
    wake = wake_unit(pt)
    lec = lecouturier_invariant(pt)
    c0b0_nonzero = True if pt.k == 2 else not wake.is_pth_power
    c0a0_nonzero = not lec.is_pth_power
    if pt.k == 2:
        rank_gt_1 = not c0a0_nonzero
    else:
        rank_gt_1 = not (c0b0_nonzero and c0a0_nonzero)
    principal = pt.k == 2 or c0b0_nonzero
    return Prediction(
        c0_cup_b0_nonzero=c0b0_nonzero,
        c0_cup_a0_nonzero=c0a0_nonzero,
        rank_gt_1_predicted=rank_gt_1,
        eis_principal_predicted=principal,
        invariant_values={"merel": merel, "wake": wake, "lecouturier": lec},
    )
