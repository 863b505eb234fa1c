import random

import pytest

from kolmolab import codec
from kolmolab.machines import (
    DEFAULT_CELLS,
    E_COMP,
    E_FLIP,
    E_FST,
    E_ID,
    E_LOOP,
    E_MIX,
    E_SND,
    E_ZEROS,
    TABLE_ZONE_START,
    ExecBudget,
    ResourceRefusal,
    conditional_run,
    decode_table,
    enumerate_machine,
    run,
    run_table_trace,
    universal_run,
    wrap_program,
)
from kolmolab.machinedoc import load_machine_doc, verify_machine_doc

B = ExecBudget(256, 512)

IDENTITY_TABLE_E = 2120
SELF_LOOP_TABLE_E = 5942


def all_bitstrings(max_len):
    for n in range(max_len + 1):
        for k in range(2**n):
            yield format(k, f"0{n}b") if n else ""


# --- wrapping ---------------------------------------------------------------


def test_wrap_program_examples():
    assert wrap_program(0, "101") == "1101"
    assert wrap_program(3, "") == "0001"
    assert wrap_program(2, "01") == "00101"
    assert len(wrap_program(5, "0110")) == 5 + 1 + 4


# --- builtins ---------------------------------------------------------------


def test_identity_machine():
    for p in ["", "0", "1011", "1" * 40]:
        out = run(E_ID, p, B)
        assert out.halted and out.output == p and out.steps == 1


def test_loop_never_halts():
    for t in (1, 7, 100):
        out = run(E_LOOP, "101", ExecBudget(t, 64))
        assert not out.halted and out.steps == t


def test_flip():
    out = run(E_FLIP, "1011", B)
    assert out.halted and out.output == "0100" and out.steps == 5
    assert run(E_FLIP, "", B).output == ""


def test_pair_projections():
    w = codec.encode_pair(2, "10", "0111")
    assert run(E_SND, w, B).output == "0111"
    assert run(E_FST, w, B).output == "10"
    # malformed pair input diverges rather than erroring
    assert not run(E_SND, "0000", B).halted


def test_zero_run():
    assert run(E_ZEROS, "", B).output == "0"  # value of "1"
    assert run(E_ZEROS, "000", B).output == "0" * 8
    assert run(E_ZEROS, "01", B).output == "0" * 5
    big = run(E_ZEROS, "1" * 30, ExecBudget(100, 64))  # would need 2^30 cells
    assert not big.halted


def test_universal_parse():
    assert universal_run(wrap_program(E_ID, "1100"), B).output == "1100"
    for q in ("", "0", "0000"):
        out = universal_run(q, ExecBudget(13, 64))
        assert not out.halted and out.steps == 13


def test_universal_delegation_exact():
    rng = random.Random(7)
    for _ in range(200):
        e = rng.randrange(70)
        p = "".join(rng.choice("01") for _ in range(rng.randrange(9)))
        assert universal_run(wrap_program(e, p), B) == run(e, p, B)


def test_conditional_projection():
    for y in ("", "1", "0110"):
        out = conditional_run(wrap_program(E_SND, ""), y, B)
        assert out.halted and out.output == y


def test_conditional_identity_matches_codec():
    out = conditional_run(wrap_program(E_ID, "10"), "110", B)
    assert out.output == codec.encode_pair(2, "10", "110")


def test_conditional_no_marker_diverges():
    assert not conditional_run("000", "11", B).halted


def test_compose_semantics():
    # comp input 0^e 1 z runs machine e on U(z)
    inner = wrap_program(E_ID, "1001")
    out = universal_run(wrap_program(E_COMP, wrap_program(E_FLIP, inner)), B)
    assert out.halted and out.output == "0110"


def test_mix_semantics():
    # mix of p (producing y) and q (conditional program y -> x)
    p = wrap_program(E_ID, "110")  # U(p) = "110"
    q = wrap_program(E_SND, "")  # V(q, y) = y
    w = codec.pad(codec.bin_nat(len(p))) + "1" + p + q
    out = universal_run(wrap_program(E_MIX, w), B)
    assert out.halted and out.output == "110"


# --- determinism and monotonicity -------------------------------------------


def test_determinism():
    rng = random.Random(3)
    for _ in range(100):
        e = rng.randrange(100)
        p = "".join(rng.choice("01") for _ in range(rng.randrange(10)))
        assert run(e, p, B) == run(e, p, B)


def test_step_monotonicity():
    rng = random.Random(4)
    for _ in range(300):
        e = rng.randrange(100)
        p = "".join(rng.choice("01") for _ in range(rng.randrange(10)))
        small = run(e, p, ExecBudget(32, 512))
        if small.halted:
            for t in (33, 64, 256):
                again = run(e, p, ExecBudget(t, 512))
                assert again == small


# --- table zone -------------------------------------------------------------


def test_every_index_decodes():
    for e in range(TABLE_ZONE_START, TABLE_ZONE_START + 200):
        m = enumerate_machine(e)
        assert m.kind == "table"
        assert m.table.shape == (m.n_states * 3, 3)


def test_golden_zero_offset_table():
    n, table = decode_table(0)
    assert n == 1
    assert table.tolist() == [[-1, 0, 0], [-1, 0, 0], [-1, 0, 0]]
    # writes a 0 over the first cell then halts
    assert run(TABLE_ZONE_START, "101", B).output == "001"
    assert run(TABLE_ZONE_START, "", B).output == "0"


def test_golden_identity_table_index():
    mach = enumerate_machine(IDENTITY_TABLE_E)
    assert mach.n_states == 1
    assert mach.table.tolist() == [[-1, 0, 0], [-1, 1, 0], [-1, 2, 0]]
    for p in ("", "0", "1011", "111000"):
        out = run(IDENTITY_TABLE_E, p, B)
        assert out.halted and out.output == p and out.steps == 1


def test_golden_self_loop_table_index():
    mach = enumerate_machine(SELF_LOOP_TABLE_E)
    assert mach.table.tolist() == [[0, 0, 1], [0, 1, 1], [0, 2, 1]]
    out = run(SELF_LOOP_TABLE_E, "1", ExecBudget(50, 512))
    assert not out.halted and out.steps == 50


def test_surjectivity_is_plausible_on_small_tables():
    # every 1-state table should appear among the indices that encode n=1
    seen = set()
    for m in range(0, 1 << 13):
        if m & 1:
            continue  # n > 1
        n, table = decode_table(m)
        seen.add(tuple(map(tuple, table.tolist())))
    assert len(seen) == 12**3  # all (6*(1+1))^3 one-state tables reachable


def test_tape_cap_yields_still_running():
    # machine moving right forever trips the cell cap before the step budget
    out = run(SELF_LOOP_TABLE_E, "", ExecBudget(10_000, 16))
    assert not out.halted and out.steps == 10_000


def test_input_exceeding_tape_cap():
    out = run(E_ID, "1" * 100, ExecBudget(10, 16))
    assert not out.halted


def test_state_count_cap_refused():
    with pytest.raises(ResourceRefusal):
        decode_table((1 << 5000) - 1)


def test_trace_moves_one_cell_per_step():
    mach = enumerate_machine(IDENTITY_TABLE_E)
    outcome, heads, states = run_table_trace(mach.table, "101", B)
    assert outcome.halted
    assert len(heads) == outcome.steps + 1
    assert all(abs(int(a) - int(b)) == 1 for a, b in zip(heads, heads[1:]))
    assert states[-1] == -1


# --- invariance at desk scale ------------------------------------------------


def test_invariance_identity_sampled():
    rng = random.Random(11)
    for _ in range(500):
        e = rng.randrange(65)
        p = "".join(rng.choice("01") for _ in range(rng.randrange(13)))
        budget = ExecBudget(64, 256)
        assert universal_run(wrap_program(e, p), budget) == run(e, p, budget)


def test_machine_doc_matches_build():
    doc = load_machine_doc()
    verify_machine_doc(doc)
    assert doc["golden_indices"]["identity_table"] == IDENTITY_TABLE_E
    assert doc["golden_indices"]["self_loop_table"] == SELF_LOOP_TABLE_E


def test_budget_validation():
    with pytest.raises(ValueError):
        ExecBudget(0, 5)
    with pytest.raises(ValueError):
        ExecBudget(5, 0)
    assert ExecBudget(1).max_cells == DEFAULT_CELLS
