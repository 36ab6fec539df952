"""Frame multipliers: construction, inversion, induced duals, identity checks.

A multiplier is the operator f -> sum_n m_n <f, psi_n> phi_n built from a
weight sequence m (the symbol), an output-side sequence Phi and an
input-side sequence Psi. Its matrix is Syn_Phi * diag(m) * Ana_Psi.

When the multiplier is invertible, applying its inverse to the weighted
frame vectors produces two distinguished dual frames here called the
induced duals:

    psi_dagger_n = Minv (m_n phi_n)          (a dual of Psi)
    phi_dagger_n = Minv* (conj(m_n) psi_n)   (a dual of Phi)

They make the inverse itself a multiplier: for EVERY dual Psi_d of Psi,
Minv = Syn_{Psi_d} diag(1/m) Ana_{phi_dagger}, and for every dual Phi_d of
Phi, Minv = Syn_{psi_dagger} diag(1/m) Ana_{Phi_d}. The for-every
quantifier is certified exactly: the identity defect is affine in the dual
parametrization, so vanishing at the canonical dual plus a vanishing
linear term settles all duals at once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import frames
from .errors import (
    DimensionMismatch,
    IdentityDoesNotHold,
    ImplicationViolated,
    NotADual,
    NotEquivalent,
    NotInvertible,
    PreconditionFailed,
    ZeroSymbolEntry,
)
from .frames import FiniteFrame
from .numerics import DEFAULT_TOL, ToleranceConfig, adjoint, relative_residual, try_invert


class Symbol:
    """Finite complex weight sequence with modulus predicates.

    ``semi_normalized`` means the moduli are bounded away from zero (the
    finite upper bound is automatic for a finite sequence).
    """

    __slots__ = ("_values",)

    def __init__(self, values) -> None:
        arr = np.array(values, dtype=np.complex128, copy=True).reshape(-1)
        if arr.size == 0:
            raise ValueError("a symbol needs at least one entry")
        if not np.all(np.isfinite(arr)):
            raise ValueError("symbol entries must be finite")
        arr.setflags(write=False)
        self._values = arr

    @property
    def values(self) -> np.ndarray:
        return self._values

    def __len__(self) -> int:
        return self._values.size

    @property
    def all_nonzero(self) -> bool:
        return bool(np.all(self._values != 0))

    @property
    def inf_modulus(self) -> float:
        return float(np.min(np.abs(self._values)))

    @property
    def sup_modulus(self) -> float:
        return float(np.max(np.abs(self._values)))

    @property
    def is_semi_normalized(self) -> bool:
        return self.inf_modulus > 0.0

    def reciprocal(self) -> "Symbol":
        """Entrywise 1/m_n; ZeroSymbolEntry when any entry is exactly zero."""
        if not self.all_nonzero:
            raise ZeroSymbolEntry("cannot take the reciprocal of a symbol with zeros")
        return Symbol(1.0 / self._values)

    def conjugate(self) -> "Symbol":
        return Symbol(np.conj(self._values))

    def is_constant(self, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
        """All entries equal up to rel_eps, relative to the first entry."""
        first = self._values[0]
        spread = float(np.max(np.abs(self._values - first)))
        return bool(spread <= tol.rel_eps * (1.0 + abs(first)))

    def has_constant_modulus(self, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
        moduli = np.abs(self._values)
        spread = float(np.max(moduli) - np.min(moduli))
        return bool(spread <= tol.rel_eps * (1.0 + float(np.max(moduli))))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Symbol(length={len(self)})"


def weighted_frame(frame: FiniteFrame, weights) -> FiniteFrame:
    """The sequence (w_n phi_n): each vector scaled by its own weight."""
    w = weights.values if isinstance(weights, Symbol) else np.asarray(weights, dtype=np.complex128)
    if w.ndim != 1 or w.size != frame.size:
        raise DimensionMismatch(f"need {frame.size} weights, got shape {w.shape}")
    return FiniteFrame.from_synthesis(frame.synthesis * w[None, :])


class Multiplier:
    """Realized multiplier (symbol, output side, input side) with its matrix.

    The inverse, once computed under a given tolerance policy, is cached on
    the instance keyed by that policy.
    """

    def __init__(self, symbol: Symbol, phi: FiniteFrame, psi: FiniteFrame) -> None:
        if phi.dim != psi.dim:
            raise DimensionMismatch(f"frame dims differ: {phi.dim} vs {psi.dim}")
        if len(symbol) != phi.size or len(symbol) != psi.size:
            raise DimensionMismatch(
                f"symbol length {len(symbol)} does not match frame sizes "
                f"{phi.size} and {psi.size}"
            )
        self.symbol = symbol
        self.phi = phi
        self.psi = psi
        self.matrix = _multiplier_matrix(symbol.values, phi, psi)
        self._inverse_tol: ToleranceConfig | None = None
        self._inverse: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.phi.dim

    @property
    def size(self) -> int:
        return self.phi.size

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Multiplier(dim={self.dim}, size={self.size})"


def _multiplier_matrix(values: np.ndarray, out_side: FiniteFrame, in_side: FiniteFrame) -> np.ndarray:
    """Syn_out * diag(values) * Ana_in, accumulated term by term in index order.

    The fixed accumulation order makes the matrix of an embedded
    block-diagonal system agree entrywise with the per-block matrices
    (zero terms from other blocks leave partial sums untouched); a BLAS
    product would regroup the sums and lose that exactness.
    """
    out = np.zeros((out_side.dim, in_side.dim), dtype=np.complex128)
    syn = out_side.synthesis
    conj_in = np.conj(in_side.synthesis)
    for n in range(values.size):
        out += values[n] * np.outer(syn[:, n], conj_in[:, n])
    return out


def build(m: Symbol, phi: FiniteFrame, psi: FiniteFrame) -> Multiplier:
    """Assemble the multiplier for symbol ``m``, output ``phi``, input ``psi``."""
    if not isinstance(m, Symbol):
        m = Symbol(m)
    return Multiplier(m, phi, psi)


def apply_termwise(m: Symbol, phi: FiniteFrame, psi: FiniteFrame, f) -> np.ndarray:
    """Direct evaluation of sum_n m_n <f, psi_n> phi_n, term by term.

    Kept as an explicit loop so it stays an independent route from the
    matrix realization; tests compare the two.
    """
    vec = np.asarray(f, dtype=np.complex128).reshape(-1)
    if vec.size != phi.dim:
        raise DimensionMismatch(f"vector length {vec.size} != dim {phi.dim}")
    out = np.zeros(phi.dim, dtype=np.complex128)
    for n in range(phi.size):
        coefficient = complex(np.sum(vec * np.conj(psi.synthesis[:, n])))
        out = out + m.values[n] * coefficient * phi.synthesis[:, n]
    return out


def invert(mult: Multiplier, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Matrix inverse of the multiplier under the invertibility policy."""
    if mult._inverse is not None and mult._inverse_tol == tol:
        return mult._inverse
    inverse = try_invert(mult.matrix, tol)
    mult._inverse = inverse
    mult._inverse_tol = tol
    return inverse


@dataclass(frozen=True)
class InducedDuals:
    """The two dual frames an invertible multiplier induces."""

    psi_dagger: FiniteFrame
    phi_dagger: FiniteFrame


def induced_duals(mult: Multiplier, tol: ToleranceConfig = DEFAULT_TOL) -> InducedDuals:
    """Duals produced by pushing the weighted frame vectors through the inverse.

    psi_dagger_n = Minv (m_n phi_n) is a dual frame of the input side Psi;
    phi_dagger_n = Minv* (conj(m_n) psi_n) is a dual frame of the output
    side Phi. Requires invertibility and a zero-free symbol.
    """
    if not mult.symbol.all_nonzero:
        raise ZeroSymbolEntry("induced duals need a symbol without zero entries")
    minv = invert(mult, tol)
    m = mult.symbol.values
    psi_dagger = FiniteFrame.from_synthesis(minv @ (mult.phi.synthesis * m[None, :]))
    phi_dagger = FiniteFrame.from_synthesis(
        adjoint(minv) @ (mult.psi.synthesis * np.conj(m)[None, :])
    )
    return InducedDuals(psi_dagger=psi_dagger, phi_dagger=phi_dagger)


def _inverse_as_multiplier(out_side: FiniteFrame, reciprocal: np.ndarray,
                           in_side: FiniteFrame) -> np.ndarray:
    return _multiplier_matrix(reciprocal, out_side, in_side)


def verify_identity_minv1(mult: Multiplier, psi_dual: FiniteFrame,
                          tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Residual of Minv against Syn_{psi_dual} diag(1/m) Ana_{phi_dagger}.

    ``psi_dual`` must reconstruct through the input side (synthesis-side
    pseudo-dual of Psi, which duality implies); otherwise NotADual. The
    returned residual is relative to ||Minv||; at or below rel_eps the
    identity is verified.
    """
    minv = invert(mult, tol)
    if not frames.is_s_pseudo_dual(psi_dual, mult.psi, tol):
        raise NotADual("the supplied sequence does not reconstruct through the input side")
    recip = mult.symbol.reciprocal().values
    duals = induced_duals(mult, tol)
    candidate = _inverse_as_multiplier(psi_dual, recip, duals.phi_dagger)
    return relative_residual(candidate, minv)


def verify_identity_minv2(mult: Multiplier, phi_dual: FiniteFrame,
                          tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Residual of Minv against Syn_{psi_dagger} diag(1/m) Ana_{phi_dual}.

    Mirror of verify_identity_minv1 with the roles of the two sides
    swapped; ``phi_dual`` must reconstruct through the output side.
    """
    minv = invert(mult, tol)
    if not frames.is_a_pseudo_dual(phi_dual, mult.phi, tol):
        raise NotADual("the supplied sequence does not reconstruct through the output side")
    recip = mult.symbol.reciprocal().values
    duals = induced_duals(mult, tol)
    candidate = _inverse_as_multiplier(duals.psi_dagger, recip, phi_dual)
    return relative_residual(candidate, minv)


@dataclass(frozen=True)
class DualsCertificate:
    """Exact certification of an inverse identity over every dual frame.

    The identity defect is affine in the dual-family perturbation H:
    checking it at H = 0 (base_residual) and checking that the linear
    coefficient vanishes (linear_residual) covers all duals at once, which
    is the same as probing every basis perturbation one at a time.
    """

    base_residual: float
    linear_residual: float

    @property
    def max_residual(self) -> float:
        return max(self.base_residual, self.linear_residual)

    def passes(self, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
        return self.max_residual <= tol.rel_eps


def certify_minv1_all_duals(mult: Multiplier, tol: ToleranceConfig = DEFAULT_TOL) -> DualsCertificate:
    """Certify Minv = Syn_{Psi_d} diag(1/m) Ana_{phi_dagger} for ALL duals Psi_d.

    Duals of Psi are exactly tilde_Psi + H (I - C) over perturbations H,
    with C the cross-correlation of Psi with its canonical dual. The defect
    then equals defect(0) + H B for a fixed matrix B, so defect(0) == 0 and
    B == 0 certify every dual. Both norms are reported relative to ||Minv||,
    with B additionally scaled by the perturbation-norm cap the sampler uses.
    """
    minv = invert(mult, tol)
    recip = mult.symbol.reciprocal().values
    duals = induced_duals(mult, tol)
    tilde_psi = frames.canonical_dual(mult.psi, tol)

    base = _inverse_as_multiplier(tilde_psi, recip, duals.phi_dagger)
    base_residual = relative_residual(base, minv)

    cross = mult.psi.analysis_matrix @ tilde_psi.synthesis
    slope = (np.eye(mult.size) - cross) @ (recip[:, None] * duals.phi_dagger.analysis_matrix)
    cap = 1.0 + float(np.linalg.norm(tilde_psi.synthesis))
    linear_residual = float(np.linalg.norm(slope)) * cap / float(np.linalg.norm(minv))
    return DualsCertificate(base_residual=base_residual, linear_residual=linear_residual)


def certify_minv2_all_duals(mult: Multiplier, tol: ToleranceConfig = DEFAULT_TOL) -> DualsCertificate:
    """Certify Minv = Syn_{psi_dagger} diag(1/m) Ana_{Phi_d} for ALL duals Phi_d."""
    minv = invert(mult, tol)
    recip = mult.symbol.reciprocal().values
    duals = induced_duals(mult, tol)
    tilde_phi = frames.canonical_dual(mult.phi, tol)

    base = _inverse_as_multiplier(duals.psi_dagger, recip, tilde_phi)
    base_residual = relative_residual(base, minv)

    cross = mult.phi.analysis_matrix @ tilde_phi.synthesis
    # Ana of the perturbed dual contributes (I - C)* H*, so the fixed factor
    # sits on the left this time.
    slope = (duals.psi_dagger.synthesis * recip[None, :]) @ adjoint(np.eye(mult.size) - cross)
    cap = 1.0 + float(np.linalg.norm(tilde_phi.synthesis))
    linear_residual = float(np.linalg.norm(slope)) * cap / float(np.linalg.norm(minv))
    return DualsCertificate(base_residual=base_residual, linear_residual=linear_residual)


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None:
        raise ValueError("sampling operations require an explicit seed")
    return np.random.default_rng(seed)


def sampled_dual_residuals(mult: Multiplier, draws: int, *, seed,
                           tol: ToleranceConfig = DEFAULT_TOL) -> tuple[float, float]:
    """Cross-check of the all-duals certificates by random dual sampling.

    Returns the worst residual of each inverse identity over ``draws``
    random duals of the input side and of the output side respectively.
    """
    rng = _as_rng(seed)
    worst1 = 0.0
    worst2 = 0.0
    for _ in range(draws):
        psi_d = frames.random_dual(mult.psi, rng, tol)
        phi_d = frames.random_dual(mult.phi, rng, tol)
        worst1 = max(worst1, verify_identity_minv1(mult, psi_d, tol))
        worst2 = max(worst2, verify_identity_minv2(mult, phi_d, tol))
    return worst1, worst2


def _stacked_nullity(dual_list: list[FiniteFrame], recip: np.ndarray,
                     tol: ToleranceConfig) -> int:
    stacked = np.vstack([d.synthesis * recip[None, :] for d in dual_list])
    sigmas = np.linalg.svd(stacked, compute_uv=False)
    if sigmas.size == 0 or float(sigmas[0]) == 0.0:
        return stacked.shape[1]
    rank = int(np.sum(sigmas > tol.rel_eps * sigmas[0]))
    return stacked.shape[1] - rank


def uniqueness_kernel(mult: Multiplier, dual_samples: int, *, seed,
                      tol: ToleranceConfig = DEFAULT_TOL) -> int:
    """Kernel dimension of the stacked inverse-identity constraints.

    Treating the unknown sequence F in Minv = Syn_{Psi_d} diag(1/m) Ana_F
    as a variable, each sampled dual Psi_d contributes linear constraints;
    the homogeneous system's numerical kernel dimension counts the leftover
    freedom. Zero certifies that the induced dual is the only length-N
    solution (the mirrored system with sampled duals of Phi is included,
    and the larger of the two nullities is returned). The first sample is
    always the canonical dual; the remaining ``dual_samples - 1`` are
    random draws, which is why a seed is required.

    Uniqueness is certified among length-N sequences only; nothing is
    claimed about longer sequences.
    """
    if dual_samples < 1:
        raise ValueError("dual_samples must be at least 1")
    invert(mult, tol)  # NotInvertible propagates
    recip = mult.symbol.reciprocal().values
    rng = _as_rng(seed)
    psi_duals = [frames.canonical_dual(mult.psi, tol)]
    phi_duals = [frames.canonical_dual(mult.phi, tol)]
    for _ in range(dual_samples - 1):
        psi_duals.append(frames.random_dual(mult.psi, rng, tol))
        phi_duals.append(frames.random_dual(mult.phi, rng, tol))
    nullity_input = _stacked_nullity(psi_duals, recip, tol)
    nullity_output = _stacked_nullity(phi_duals, np.conj(recip), tol)
    return max(nullity_input, nullity_output)


def recover_pseudo_dual_F(mult: Multiplier, candidate: FiniteFrame,
                          tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """If Minv = Syn_F diag(1/m) Ana_{phi_dagger} holds, F reconstructs Psi.

    Checks the hypothesis first and raises IdentityDoesNotHold when it
    fails; when it holds, returns the synthesis-side reconstruction
    predicate for the input side, which the identity forces to be true.
    """
    minv = invert(mult, tol)
    recip = mult.symbol.reciprocal().values
    duals = induced_duals(mult, tol)
    candidate_matrix = _inverse_as_multiplier(candidate, recip, duals.phi_dagger)
    residual = relative_residual(candidate_matrix, minv)
    if residual > tol.rel_eps:
        raise IdentityDoesNotHold(
            f"inverse identity fails for the candidate (residual {residual:.3e})",
            residual=residual,
        )
    return frames.is_s_pseudo_dual(candidate, mult.psi, tol)


def recover_pseudo_dual_G(mult: Multiplier, candidate: FiniteFrame,
                          tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """If Minv = Syn_{psi_dagger} diag(1/m) Ana_G holds, G reconstructs Phi.

    Mirror of recover_pseudo_dual_F for the output side (analysis-side
    reconstruction predicate).
    """
    minv = invert(mult, tol)
    recip = mult.symbol.reciprocal().values
    duals = induced_duals(mult, tol)
    candidate_matrix = _inverse_as_multiplier(duals.psi_dagger, recip, candidate)
    residual = relative_residual(candidate_matrix, minv)
    if residual > tol.rel_eps:
        raise IdentityDoesNotHold(
            f"inverse identity fails for the candidate (residual {residual:.3e})",
            residual=residual,
        )
    return frames.is_a_pseudo_dual(candidate, mult.phi, tol)


def verify_canonical_inversion(mult: Multiplier, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Residual of Minv against the canonical-duals multiplier.

    Builds Syn_{tilde_Psi} diag(1/m) Ana_{tilde_Phi} and compares with the
    actual inverse, relative to ||Minv||. For exact (Riesz) bases with a
    zero-free symbol this vanishes; for redundant sequences it usually
    does not.
    """
    minv = invert(mult, tol)
    recip = mult.symbol.reciprocal().values
    tilde_psi = frames.canonical_dual(mult.psi, tol)
    tilde_phi = frames.canonical_dual(mult.phi, tol)
    candidate = _inverse_as_multiplier(tilde_psi, recip, tilde_phi)
    return relative_residual(candidate, minv)


@dataclass(frozen=True)
class PropQReport:
    """Joint outcome of the canonical-inversion and equivalence tests."""

    eq1_holds: bool
    psi_equiv_mphi: bool
    phi_equiv_mbar_psi: bool
    psi_dagger_is_canonical: bool
    phi_dagger_is_canonical: bool
    constant_symbol: bool

    def as_dict(self) -> dict:
        return {
            "eq1_holds": self.eq1_holds,
            "psi_equiv_mphi": self.psi_equiv_mphi,
            "phi_equiv_mbar_psi": self.phi_equiv_mbar_psi,
            "psi_dagger_is_canonical": self.psi_dagger_is_canonical,
            "phi_dagger_is_canonical": self.phi_dagger_is_canonical,
            "constant_symbol": self.constant_symbol,
        }


def _equivalent(a: FiniteFrame, b: FiniteFrame, tol: ToleranceConfig) -> bool:
    try:
        frames.equivalence_operator(a, b, tol)
    except NotEquivalent:
        return False
    return True


def check_prop_q(mult: Multiplier, tol: ToleranceConfig = DEFAULT_TOL) -> PropQReport:
    """Evaluate the equivalence criteria tied to the canonical inversion.

    Computes five booleans: whether the canonical-duals multiplier inverts
    M (eq1_holds); whether the input side is equivalent to the weighted
    output side m*Phi; whether the output side is equivalent to the
    conjugate-weighted input side conj(m)*Psi; and whether each induced
    dual coincides with the corresponding canonical dual. The implications
    that must hold between them are asserted, and ImplicationViolated
    (an implementation-bug signal) is raised on any violation:

    * psi_equiv_mphi implies eq1_holds, and is equivalent to
      psi_dagger_is_canonical;
    * phi_equiv_mbar_psi implies eq1_holds, and is equivalent to
      phi_dagger_is_canonical;
    * for a constant symbol the four non-eq1 booleans agree.
    """
    if not mult.symbol.all_nonzero:
        raise ZeroSymbolEntry("the equivalence criteria need a zero-free symbol")
    eq1 = verify_canonical_inversion(mult, tol) <= tol.rel_eps

    m_phi = weighted_frame(mult.phi, mult.symbol)
    mbar_psi = weighted_frame(mult.psi, mult.symbol.conjugate())
    psi_equiv_mphi = _equivalent(m_phi, mult.psi, tol)
    phi_equiv_mbar_psi = _equivalent(mbar_psi, mult.phi, tol)

    duals = induced_duals(mult, tol)
    psi_dagger_is_canonical = frames.frames_equal(
        duals.psi_dagger, frames.canonical_dual(mult.psi, tol), tol
    )
    phi_dagger_is_canonical = frames.frames_equal(
        duals.phi_dagger, frames.canonical_dual(mult.phi, tol), tol
    )
    constant = mult.symbol.is_constant(tol)

    report = PropQReport(
        eq1_holds=eq1,
        psi_equiv_mphi=psi_equiv_mphi,
        phi_equiv_mbar_psi=phi_equiv_mbar_psi,
        psi_dagger_is_canonical=psi_dagger_is_canonical,
        phi_dagger_is_canonical=phi_dagger_is_canonical,
        constant_symbol=constant,
    )
    _assert_prop_q_consistency(report)
    return report


def _assert_prop_q_consistency(report: PropQReport) -> None:
    if report.psi_equiv_mphi and not report.eq1_holds:
        raise ImplicationViolated("input side equivalent to weighted output side, yet eq1 fails")
    if report.phi_equiv_mbar_psi and not report.eq1_holds:
        raise ImplicationViolated("output side equivalent to conjugate-weighted input side, yet eq1 fails")
    if report.psi_equiv_mphi != report.psi_dagger_is_canonical:
        raise ImplicationViolated(
            "psi_equiv_mphi and psi_dagger_is_canonical must agree "
            f"(got {report.psi_equiv_mphi} vs {report.psi_dagger_is_canonical})"
        )
    if report.phi_equiv_mbar_psi != report.phi_dagger_is_canonical:
        raise ImplicationViolated(
            "phi_equiv_mbar_psi and phi_dagger_is_canonical must agree "
            f"(got {report.phi_equiv_mbar_psi} vs {report.phi_dagger_is_canonical})"
        )
    if report.constant_symbol:
        four = (
            report.psi_equiv_mphi,
            report.phi_equiv_mbar_psi,
            report.psi_dagger_is_canonical,
            report.phi_dagger_is_canonical,
        )
        if len(set(four)) != 1:
            raise ImplicationViolated(
                f"constant symbol but the equivalence booleans disagree: {four}"
            )


def check_weighted_canonical(phi: FiniteFrame, m: Symbol,
                             tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Does the canonical dual of (m_n phi_n) equal (1/conj(m_n)) tilde_phi_n?

    True for unit-modulus scalings and more generally whenever the weighted
    frame operator is a constant multiple of the original one; false in
    general. Needs a zero-free symbol and a spanning weighted sequence.
    """
    if not isinstance(m, Symbol):
        m = Symbol(m)
    if not m.all_nonzero:
        raise ZeroSymbolEntry("weighted canonical comparison needs a zero-free symbol")
    m_phi = weighted_frame(phi, m)
    lhs = frames.canonical_dual(m_phi, tol)  # NotAFrame if m*Phi does not span
    tilde_phi = frames.canonical_dual(phi, tol)
    rhs = FiniteFrame.from_synthesis(tilde_phi.synthesis / np.conj(m.values)[None, :])
    return frames.frames_equal(lhs, rhs, tol)


@dataclass(frozen=True)
class ConstantModulusReport:
    """Outcome of the constant-modulus equivalence chain.

    For symbols whose entries all share one nonzero modulus, the three
    statements (invertible with eq1 holding, input side equivalent to the
    weighted output side, output side equivalent to the conjugate-weighted
    input side) are a package deal: all true or all false.
    """

    invertible_and_eq1: bool
    psi_equiv_mphi: bool
    phi_equiv_mbar_psi: bool

    @property
    def all_agree(self) -> bool:
        return self.invertible_and_eq1 == self.psi_equiv_mphi == self.phi_equiv_mbar_psi

    @property
    def all_equivalent(self) -> bool:
        return self.invertible_and_eq1 and self.psi_equiv_mphi and self.phi_equiv_mbar_psi

    def as_dict(self) -> dict:
        return {
            "invertible_and_eq1": self.invertible_and_eq1,
            "psi_equiv_mphi": self.psi_equiv_mphi,
            "phi_equiv_mbar_psi": self.phi_equiv_mbar_psi,
            "all_agree": self.all_agree,
        }


def check_constant_modulus(mult: Multiplier, tol: ToleranceConfig = DEFAULT_TOL) -> ConstantModulusReport:
    """Evaluate the three-way equivalence chain for constant-modulus symbols.

    Raises PreconditionFailed unless all symbol moduli agree (nonzero), and
    ImplicationViolated if the three computed legs fail to agree.
    """
    m = mult.symbol
    if m.inf_modulus == 0.0 or not m.has_constant_modulus(tol):
        raise PreconditionFailed("the symbol moduli must share one nonzero constant value")

    try:
        invertible_and_eq1 = verify_canonical_inversion(mult, tol) <= tol.rel_eps
    except NotInvertible:
        invertible_and_eq1 = False

    m_phi = weighted_frame(mult.phi, m)
    mbar_psi = weighted_frame(mult.psi, m.conjugate())
    report = ConstantModulusReport(
        invertible_and_eq1=invertible_and_eq1,
        psi_equiv_mphi=_equivalent(m_phi, mult.psi, tol),
        phi_equiv_mbar_psi=_equivalent(mbar_psi, mult.phi, tol),
    )
    if not report.all_agree:
        raise ImplicationViolated(
            "constant-modulus legs disagree: "
            f"eq1={report.invertible_and_eq1}, "
            f"psi~mPhi={report.psi_equiv_mphi}, phi~mbarPsi={report.phi_equiv_mbar_psi}"
        )
    return report
