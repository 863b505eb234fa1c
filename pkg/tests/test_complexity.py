import random

import pytest

from kolmolab import codec
from kolmolab.complexity import (
    ComplexityBound,
    bound_table,
    compose_program,
    estimate_k,
    estimate_k_given,
    estimate_k_pair,
    info_estimate,
    mix_program_len,
    mix_programs,
)
from kolmolab.dovetail import all_bitstrings
from kolmolab.machines import (
    E_COMP,
    E_FLIP,
    E_ID,
    E_SND,
    ExecBudget,
    ResourceRefusal,
    conditional_run,
    universal_run,
    wrap_program,
)

H = 64
CONVERGENCE_STEPS = 256


def brute_force_k(x, max_len, steps):
    """Independent double-loop oracle over (program, step budget)."""
    best = None
    for q in all_bitstrings(max_len):
        for t in range(1, steps + 1):
            out = universal_run(q, ExecBudget(t, 4096))
            if out.halted:
                if out.output == x and (best is None or len(q) < best):
                    best = len(q)
                break
    return best


def test_plain_bound_at_most_length_plus_identity_cost():
    for x in ("", "0", "10", "1011", "111000111"):
        got = estimate_k(x, H)
        assert got is not None
        assert got.bound <= len(x) + E_ID + 1


def test_witness_replays():
    rng = random.Random(21)
    for _ in range(30):
        x = "".join(rng.choice("01") for _ in range(rng.randrange(8)))
        got = estimate_k(x, H)
        out = universal_run(got.witness, ExecBudget(got.horizon, 4096))
        assert out.halted and out.output == x
        assert got.bound == len(got.witness)


def test_bound_monotone_in_horizon():
    for x in ("1011", "0000", "1"):
        bounds = []
        for h in (6, 8, 16, 32, 64):
            got = estimate_k(x, h)
            if got is not None:
                bounds.append(got.bound)
        assert bounds == sorted(bounds, reverse=True) or len(set(bounds)) == 1
        assert all(b2 <= b1 for b1, b2 in zip(bounds, bounds[1:]))


def test_converged_bounds_match_brute_force_oracle():
    # all |x| <= 4, fully converged: estimator == independent double loop
    for x in all_bitstrings(4):
        got = estimate_k(x, CONVERGENCE_STEPS)
        expect = brute_force_k(x, got.bound, CONVERGENCE_STEPS)
        assert got.bound == expect, x
        # converged: doubling the horizon does not improve the bound
        assert estimate_k(x, 2 * CONVERGENCE_STEPS).bound == got.bound


def test_not_found_honest_at_small_horizon():
    # horizon 2 cannot produce the 3-bit target (identity witness needs 4 bits)
    assert estimate_k("101", 2) is None


def test_refusal_beyond_search_cap():
    with pytest.raises(ResourceRefusal):
        estimate_k("01" * 40, 64, search_cap=8)  # no witness within cap, horizon above it


def test_conditional_projection_bound():
    for y in ("0", "0110", "111"):
        got = estimate_k_given(y, y, H)
        assert got is not None
        assert got.bound <= E_SND + 1
        out = conditional_run(got.witness, y, ExecBudget(H, 4096))
        assert out.halted and out.output == y


def test_conditional_monotone_and_oracle():
    def brute_cond(x, y, max_len, steps):
        best = None
        for q in all_bitstrings(max_len):
            out = conditional_run(q, y, ExecBudget(steps, 4096))
            if out.halted and out.output == x and (best is None or len(q) < best):
                best = len(q)
        return best

    for x in ("", "1", "01"):
        for y in ("", "10"):
            got = estimate_k_given(x, y, CONVERGENCE_STEPS)
            if got is None:
                assert brute_cond(x, y, CONVERGENCE_STEPS, CONVERGENCE_STEPS) is None
            else:
                assert got.bound == brute_cond(x, y, got.bound, CONVERGENCE_STEPS)


def test_pair_bound_is_plain_bound_of_encoding():
    x, y = "10", "011"
    got = estimate_k_pair(x, y, H)
    direct = estimate_k(codec.encode_pair(2, x, y), H)
    assert got.bound == direct.bound and got.witness == direct.witness
    assert got.kind == "pair"
    # symmetric existence
    assert estimate_k_pair(y, x, H) is not None


def test_bound_table_agrees_with_estimator():
    table = bound_table(horizon=32, max_len=6)
    for x, entry in table.items():
        direct = estimate_k(x, 32)
        if entry.bound >= direct.bound:
            assert entry.bound == direct.bound
            assert entry.witness == direct.witness


# --- program transformers -----------------------------------------------------


def test_compose_with_identity_is_universal():
    rng = random.Random(5)
    for _ in range(20):
        p = wrap_program(E_ID, "".join(rng.choice("01") for _ in range(rng.randrange(6))))
        direct = universal_run(p, ExecBudget(H, 4096))
        composed = universal_run(compose_program(E_ID, p), ExecBudget(H, 4096))
        assert composed.halted and composed.output == direct.output


def test_compose_with_flip():
    p = wrap_program(E_ID, "100110")
    out = universal_run(compose_program(E_FLIP, p), ExecBudget(H, 4096))
    assert out.halted and out.output == "011001"


def test_compose_length_bookkeeping():
    rng = random.Random(6)
    for e_f in (0, 3, 9):
        deltas = set()
        for _ in range(20):
            p = "".join(rng.choice("01") for _ in range(rng.randrange(30)))
            deltas.add(len(compose_program(e_f, p)) - len(p))
        assert deltas == {e_f + E_COMP + 2}


def test_mix_end_to_end():
    # p produces y via identity; q is the conditional projection returning y
    p = wrap_program(E_ID, "110")
    q = wrap_program(E_SND, "")
    out = universal_run(mix_programs(p, q), ExecBudget(H, 4096))
    assert out.halted and out.output == "110"


def test_mix_exhaustive_small_premises():
    budget = ExecBudget(64, 1024)
    checked = 0
    for p in all_bitstrings(4):
        first = universal_run(p, budget)
        if not first.halted:
            continue
        y = first.output
        for q in all_bitstrings(4):
            second = conditional_run(q, y, budget)
            if not second.halted:
                continue
            mixed = universal_run(mix_programs(p, q), ExecBudget(256, 1024))
            assert mixed.halted and mixed.output == second.output, (p, q)
            checked += 1
    assert checked > 10


def test_mix_length_formula():
    rng = random.Random(77)
    for _ in range(100):
        p = "".join(rng.choice("01") for _ in range(rng.randrange(50)))
        q = "".join(rng.choice("01") for _ in range(rng.randrange(50)))
        assert len(mix_programs(p, q)) == mix_program_len(len(p), len(q))


def test_mix_randomized_larger():
    # premises built by construction: U(p) = x via identity, V(q, x) = x via
    # the pair projection (whatever payload q carries)
    rng = random.Random(78)
    for _ in range(50):
        x = "".join(rng.choice("01") for _ in range(rng.randrange(24)))
        p = wrap_program(E_ID, x)
        q = wrap_program(E_SND, "".join(rng.choice("01") for _ in range(rng.randrange(6))))
        out = universal_run(mix_programs(p, q), ExecBudget(512, 4096))
        assert out.halted and out.output == x


def test_compose_randomized_larger():
    rng = random.Random(79)
    for _ in range(50):
        x = "".join(rng.choice("01") for _ in range(rng.randrange(40)))
        p = wrap_program(E_ID, x)
        out = universal_run(compose_program(E_FLIP, p), ExecBudget(512, 4096))
        flipped = x.translate(str.maketrans("01", "10"))
        assert out.halted and out.output == flipped


# --- information estimate ------------------------------------------------------


def test_info_self_nonnegative_for_tested_sizes():
    rng = random.Random(9)
    for _ in range(10):
        x = "".join(rng.choice("01") for _ in range(rng.randrange(3, 7)))
        assert info_estimate(x, x, H) >= 0


def test_info_is_difference_of_terms():
    x, y = "101", "0110"
    k_y = estimate_k(y, H)
    k_y_given_x = estimate_k_given(y, x, H)
    assert info_estimate(x, y, H) == k_y.bound - k_y_given_x.bound


def test_info_none_when_term_missing():
    assert info_estimate("101", "0110", 2) is None


def test_bound_dataclass_shape():
    got = estimate_k("1", 16)
    assert isinstance(got, ComplexityBound)
    assert set(got.__dataclass_fields__) == {
        "target",
        "bound",
        "witness",
        "horizon",
        "kind",
        "given",
    }
