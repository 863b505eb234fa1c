"""Hot inner loops of the one-tape machine simulator.

Plain-Python reference implementations over numpy arrays.  ``engine``
jit-compiles these with numba when available; the source here is the single
point of truth for both backends.

Conventions (frozen, see docs/machine_model.md):
  - tape symbols: 0, 1, BLANK=2
  - table layout: int16 array of shape (n_states*3, 3); row = state*3 + symbol;
    columns = (next_state or -1 for halt, write_symbol, move 0=L/1=R)
  - the tape array is a finite window of a two-way infinite tape; the head
    starts at index ``origin``; stepping outside the window is a tape-cap hit
  - every transition (halting ones included) writes and moves exactly one cell
"""

BLANK = 2

# return status codes
HALTED = 1
OUT_OF_FUEL = 0
OUT_OF_TAPE = -1


def table_run(table, tape, origin, max_steps):
    """Run a table machine in-place on ``tape`` starting at ``origin``.

    Returns (status, steps, head) where steps is the number of transitions
    applied before halting (status HALTED), or max_steps otherwise.
    """
    head = origin
    state = 0
    width = tape.shape[0]
    for step in range(1, max_steps + 1):
        row = state * 3 + tape[head]
        nxt = table[row, 0]
        tape[head] = table[row, 1]
        if table[row, 2] == 1:
            head += 1
        else:
            head -= 1
        if nxt < 0:
            return HALTED, step, head
        if head < 0 or head >= width:
            return OUT_OF_TAPE, step, head
        state = nxt
    return OUT_OF_FUEL, max_steps, head


def table_run_trace(table, tape, origin, max_steps, head_path, state_path):
    """table_run variant recording head and state trajectories.

    head_path and state_path must have length max_steps+1.  state_path[t] is
    the state after t steps (-1 once halted); head_path[t] the head position.
    """
    head = origin
    state = 0
    width = tape.shape[0]
    head_path[0] = head
    state_path[0] = 0
    for step in range(1, max_steps + 1):
        row = state * 3 + tape[head]
        nxt = table[row, 0]
        tape[head] = table[row, 1]
        if table[row, 2] == 1:
            head += 1
        else:
            head -= 1
        head_path[step] = head
        state_path[step] = nxt
        if nxt < 0:
            return HALTED, step, head
        if head < 0 or head >= width:
            return OUT_OF_TAPE, step, head
        state = nxt
    return OUT_OF_FUEL, max_steps, head


def output_span(tape, origin):
    """Length of the output: cells from ``origin`` up to the first blank."""
    n = 0
    width = tape.shape[0]
    while origin + n < width and tape[origin + n] != BLANK:
        n += 1
    return n
