"""Threshold sampling and the bit-encoding evaluator built on it.

A single bit b is encoded as a set W of m Goedel indices: for b = 0 the m
elements are drawn from the full urn {1..N} with N = n**(2*beta), where m
stays below the hit threshold and W most likely misses the target language;
for b = 1 the urn is first thinned to n surviving elements, relative to
which the same m exceeds the threshold and W most likely contains a member.
Both branches emit sets of identical cardinality from the same index space,
so the output's shape carries no information about the bit.

The evaluator splits its input word into n leading payload bits and a bit
tape, then chains the per-bit sampler, handing each round the tape remainder
of the previous one.  Everything downstream of the input word is
deterministic, so equal inputs give equal outputs and equal input lengths
give equal output shapes.

The hardness story this models is not asserted here: the experiments measure
miss rates against exact hypergeometric values and report them.  The
inversion demo shows the complementary direction: with a membership decider
for the graph language {(y, N) : some x <= N has g(x) = y}, a preimage is
recovered with logarithmically many decisions by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple

from .bitsampler import BitTape, profile_k, select_subset
from .errors import ContractViolation, DegenerateParameters, TapeExhausted
from .languages import LanguageOracle, density
from .threshold import (
    SamplerParams,
    hit_probability,
    sampler_params,
)
from .words import Word, goedel_inverse


@dataclass(frozen=True)
class InstanceSet:
    """A drawn set of Goedel indices from the urn {1..urn_bound}."""

    members: tuple[int, ...]  # sorted, distinct
    urn_bound: int

    def __post_init__(self):
        assert list(self.members) == sorted(set(self.members))
        assert all(1 <= i <= self.urn_bound for i in self.members)

    def indicator_word(self) -> Word:
        present = set(self.members)
        return "".join("1" if i in present else "0" for i in range(1, self.urn_bound + 1))


@dataclass(frozen=True)
class OwfOutput:
    sets: tuple[InstanceSet, ...]
    n: int
    bits_consumed: int
    params: SamplerParams

    def __post_init__(self):
        cards = {len(w.members) for w in self.sets}
        bounds = {w.urn_bound for w in self.sets}
        assert len(cards) <= 1 and len(bounds) <= 1, "output shape must not vary"

    def encode(self) -> Word:
        """Fixed-width indicator encoding, n * N bits."""
        return "".join(w.indicator_word() for w in self.sets)


def compute_n(ell: int, beta: int) -> int:
    """Largest i with i**(6*beta) + 2*i**(2*beta) + i <= ell (payload size
    whose tape budget fits into the remaining input bits)."""
    if beta < 1:
        raise ValueError("beta must be >= 1")
    if ell < 4:
        raise ValueError("inputs must have length >= 4 (the i = 1 cost)")
    i = 1
    while (i + 1) ** (6 * beta) + 2 * (i + 1) ** (2 * beta) + (i + 1) <= ell:
        i += 1
    return i


def round_consumption(b: int, params: SamplerParams, k_profile: str) -> int:
    """Exact tape cost of one sampler round for bit b."""
    n, N = params.n, params.N
    cost = N * profile_k(k_profile, N)
    if b == 1:
        cost += n * profile_k(k_profile, n)
    return cost


def _ptsamp_traced(
    b: int,
    n: int,
    tape: BitTape,
    params: SamplerParams,
    k_profile: str = "paper",
) -> tuple[InstanceSet, BitTape, tuple[int, ...]]:
    if b not in (0, 1):
        raise ValueError("b must be a bit")
    if params.n != n:
        raise ValueError("params were built for a different base size")
    N, m = params.N, params.m
    need = round_consumption(b, params, k_profile)
    if tape.remaining() < need:
        raise TapeExhausted(
            f"branch b={b} needs {need} bits, tape has {tape.remaining()}"
        )
    full_urn = range(1, N + 1)
    if b == 1:
        if m > n:
            raise DegenerateParameters(
                f"draw count m={m} exceeds the thinned urn size n={n}; "
                f"the b=1 branch cannot produce |W|=m"
            )
        thinned = select_subset(tape, n, full_urn, profile_k(k_profile, N))
        urn = thinned.chosen
        picked = select_subset(tape, m, urn, profile_k(k_profile, n))
    else:
        urn = tuple(full_urn)
        picked = select_subset(tape, m, full_urn, profile_k(k_profile, N))
    return InstanceSet(picked.chosen, N), tape, urn


def ptsamp(
    b: int,
    n: int,
    tape: BitTape,
    params: SamplerParams,
    k_profile: str = "paper",
) -> tuple[InstanceSet, BitTape]:
    """One probabilistic threshold-sampling round; returns the drawn set and
    the tape remainder (same tape object, cursor advanced)."""
    instance, tape, _ = _ptsamp_traced(b, n, tape, params, k_profile)
    return instance, tape


def owf_evaluate(
    w: Word,
    beta: int,
    k_profile: str = "paper",
    alpha: Fraction | int | None = None,
) -> OwfOutput:
    """Evaluate the bit encoder on input word w = payload || tape.

    Deterministic in w.  Raises TapeExhausted with the number of completable
    rounds when the tape budget implied by the payload split cannot cover all
    n rounds (the b=1 branch costs more than the n(ell) formula accounts
    for, so feasibility is checked exactly per run).
    """
    ell = len(w)
    n = compute_n(ell, beta)
    params = sampler_params(n, beta, alpha)
    payload, tape = w[:n], BitTape(w[n:])
    sets = []
    for i, c in enumerate(payload):
        b = 1 if c == "1" else 0
        if tape.remaining() < round_consumption(b, params, k_profile):
            exc = TapeExhausted(
                f"round {i + 1} of {n} (b={b}) would overrun the tape; "
                f"{i} rounds are feasible for this input"
            )
            exc.feasible_rounds = i
            raise exc
        instance, tape = ptsamp(b, n, tape, params, k_profile)
        sets.append(instance)
    return OwfOutput(
        sets=tuple(sets), n=n, bits_consumed=tape.cursor, params=params
    )


def hit_test(instance: InstanceSet, oracle: LanguageOracle) -> bool:
    """Verification-side membership: does the set contain an oracle member?
    (Evaluation never calls this; that is the whole point.)"""
    return any(oracle.member(goedel_inverse(i)) for i in instance.members)


@dataclass(frozen=True)
class BijectivityReport:
    """Measured sampling-error rates against their exact hypergeometric
    values, plus the pairwise-collision criterion they feed."""

    n: int
    beta: int
    trials: int
    k_profile: str
    miss0: float  # frequency of W hitting the language although b = 0
    miss1: float  # frequency of W missing the language although b = 1
    exact0: float  # exact Pr(hit | b=0) from the urn composition
    exact1: float  # mean exact Pr(miss | b=1) over the measured thinned urns
    z0: float
    z1: float
    criterion_value: float  # miss0 + miss1, the union-bound left side
    criterion_satisfied: bool  # < 1, the two-class collision threshold
    e_ell_frequency: float  # empirical rate of the correct class mapping
    orientation: str
    bits_consumed: int
    m: int
    N: int
    good_count: int
    reference_success0_lower: float  # (1-2**-N)**N * 2**(-n**(-2b/a)), printed
    # for reference only; the b=1 analogue carries an unpinned constant.

    def to_json_dict(self) -> dict:
        return {
            "params": {
                "n": self.n,
                "beta": self.beta,
                "N": self.N,
                "m": self.m,
                "good_count": self.good_count,
                "trials": self.trials,
                "k_profile": self.k_profile,
            },
            "miss0": self.miss0,
            "miss1": self.miss1,
            "exact0": self.exact0,
            "exact1": self.exact1,
            "z0": self.z0,
            "z1": self.z1,
            "criterion_value": self.criterion_value,
            "criterion_satisfied": self.criterion_satisfied,
            "e_ell_frequency": self.e_ell_frequency,
            "orientation": self.orientation,
            "bits_consumed": self.bits_consumed,
            "reference_success0_lower": self.reference_success0_lower,
        }


def sampling_error_experiment(
    n: int,
    beta: int,
    oracle: LanguageOracle,
    trials: int,
    seed: int,
    *,
    alpha: Fraction | int | None = None,
    k_profile: str = "practical",
) -> BijectivityReport:
    """Run both sampler branches with fresh disjoint tapes per trial and
    compare miss frequencies against exact hypergeometric values.

    The b=0 oracle value is Pr(Q_m) for the full urn's measured good count;
    for b=1 each trial's thinned urn is measured and contributes its exact
    conditional miss probability, so the comparison is against the actual
    urn compositions rather than any asymptotic bound.  Trial tapes derive
    from (seed, trial, branch), making aggregates independent of execution
    order.
    """
    if trials < 1000:
        raise ValueError("the error experiment needs trials >= 1000")
    params = sampler_params(n, beta, alpha)
    N, m = params.N, params.m
    good_positions = frozenset(
        i for i in range(1, N + 1) if oracle.member(goedel_inverse(i))
    )
    good = len(good_positions)
    exact0 = hit_probability(N, good, m)

    need0 = round_consumption(0, params, k_profile)
    need1 = round_consumption(1, params, k_profile)
    hits0 = 0
    misses1 = 0
    exact1_sum = Fraction(0)
    exact1_var = 0.0
    bits_consumed = 0
    for t in range(trials):
        tape0 = BitTape.from_seed(seed, need0, stream=2 * t)
        w0, tape0, _ = _ptsamp_traced(0, n, tape0, params, k_profile)
        if not good_positions.isdisjoint(w0.members):
            hits0 += 1
        tape1 = BitTape.from_seed(seed, need1, stream=2 * t + 1)
        w1, tape1, urn1 = _ptsamp_traced(1, n, tape1, params, k_profile)
        if good_positions.isdisjoint(w1.members):
            misses1 += 1
        g_t = sum(1 for i in urn1 if i in good_positions)
        p_t = Fraction(math.comb(n - g_t, m), math.comb(n, m))
        exact1_sum += p_t
        exact1_var += float(p_t) * float(1 - p_t)
        bits_consumed += tape0.cursor + tape1.cursor

    p0 = float(exact0)
    var0 = trials * p0 * (1 - p0)
    z0 = (hits0 - trials * p0) / math.sqrt(var0) if var0 > 0 else (
        0.0 if hits0 == trials * p0 else math.inf
    )
    z1 = (misses1 - float(exact1_sum)) / math.sqrt(exact1_var) if exact1_var > 0 else (
        0.0 if misses1 == exact1_sum else math.inf
    )
    miss0 = hits0 / trials
    miss1 = misses1 / trials
    criterion = miss0 + miss1
    e_ell = 1.0 - criterion / 2.0
    if e_ell > 0.5:
        orientation = "standard"
    elif e_ell < 0.5:
        orientation = "swapped"
    else:
        orientation = "undetermined"
    reference = (1 - 2.0**-N) ** N * 2.0 ** -(n ** (-2 * beta / float(params.alpha)))
    return BijectivityReport(
        n=n,
        beta=beta,
        trials=trials,
        k_profile=k_profile,
        miss0=miss0,
        miss1=miss1,
        exact0=p0,
        exact1=float(exact1_sum) / trials,
        z0=z0,
        z1=z1,
        criterion_value=criterion,
        criterion_satisfied=criterion < 1.0,
        e_ell_frequency=e_ell,
        orientation=orientation,
        bits_consumed=bits_consumed,
        m=m,
        N=N,
        good_count=good,
        reference_success0_lower=reference,
    )


class InversionResult(NamedTuple):
    preimage: int | None
    queries: int


def binary_search_invert(
    y: int,
    decider: Callable[[int, int], bool],
    n_bound: int,
) -> InversionResult:
    """Recover x with g(x) = y from a range decider for the graph language
    {(y, N) : some x <= N has g(x) = y}.

    Uses at most ceil(log2(n_bound)) + 1 decider calls: one to rule the whole
    range in or out, then bisection for the minimal admissible N, which is
    the preimage itself.  Recorded answers are checked for monotone
    consistency (a yes below a no); a decider that is inconsistent along the
    probed path raises ContractViolation.
    """
    if n_bound < 1:
        raise ValueError("the search range must be nonempty")
    answers: dict[int, bool] = {}

    def ask(bound: int) -> bool:
        if bound in answers:
            return answers[bound]
        ans = bool(decider(y, bound))
        answers[bound] = ans
        _check_monotone(answers)
        return ans

    if not ask(n_bound):
        return InversionResult(None, len(answers))
    lo, hi = 1, n_bound
    while lo < hi:
        mid = (lo + hi) // 2
        if ask(mid):
            hi = mid
        else:
            lo = mid + 1
    return InversionResult(lo, len(answers))


def _check_monotone(answers: dict[int, bool]) -> None:
    # The decider's language is upward closed in the bound: once true, a
    # larger bound can never answer false.
    largest_false = max((b for b, a in answers.items() if not a), default=None)
    smallest_true = min((b for b, a in answers.items() if a), default=None)
    if (
        largest_false is not None
        and smallest_true is not None
        and largest_false > smallest_true
    ):
        raise ContractViolation(
            f"decider answered yes at {smallest_true} but no at {largest_false}"
        )


def oracle_good_count(oracle: LanguageOracle, N: int) -> int:
    """Number of urn positions 1..N whose word is an oracle member (equals
    the oracle's density at N)."""
    return density(oracle, N)


__all__ = [
    "BijectivityReport",
    "InstanceSet",
    "InversionResult",
    "OwfOutput",
    "binary_search_invert",
    "compute_n",
    "hit_test",
    "oracle_good_count",
    "owf_evaluate",
    "ptsamp",
    "round_consumption",
    "sampling_error_experiment",
]
