//! Small machines used in tests, benchmarks and the command line.

use super::{Move, TuringMachine};

fn build(states: &[&str], tape: &[&str], finals: &[&str], delta: &[(&str, &str, &str, &str, Move)]) -> TuringMachine {
    TuringMachine::new(states, tape, "q0", finals, delta).expect("fixture machine")
}

/// Writes `1` and halts.
pub fn one_step_halting() -> TuringMachine {
    build(&["q0", "qf"], &["1"], &["qf"], &[("q0", "_", "qf", "1", Move::R)])
}

/// Writes `1` forever, moving right.
pub fn right_mover() -> TuringMachine {
    build(&["q0"], &["1"], &[], &[("q0", "_", "q0", "1", Move::R)])
}

/// Writes `1`, then `0`, steps back and halts. Reversible.
pub fn three_state_halting() -> TuringMachine {
    build(
        &["q0", "q1", "q2"],
        &["0", "1"],
        &["q2"],
        &[("q0", "_", "q1", "1", Move::R), ("q1", "_", "q2", "0", Move::L)],
    )
}

/// Co-functional, but `1|q2 1` and `1 1|q1` step to each other.
pub fn cycle_machine() -> TuringMachine {
    build(&["q0", "q1", "q2"], &["1"], &[], &[("q2", "1", "q1", "1", Move::R), ("q1", "1", "q2", "1", Move::L)])
}

/// Two transitions into `q1` writing the same symbol in the same direction,
/// so `1 _|q1` has two predecessors.
pub fn merging_machine() -> TuringMachine {
    build(&["q0", "q1"], &["1"], &[], &[("q0", "_", "q1", "1", Move::R), ("q0", "1", "q1", "1", Move::R)])
}

/// Writes `11` and halts; the default machine for the 2-coloring gadget.
pub fn thm4_demo() -> TuringMachine {
    build(&["q0", "q1", "qf"], &["1"], &["qf"], &[("q0", "_", "q1", "1", Move::R), ("q1", "_", "qf", "1", Move::R)])
}

/// Names accepted by [`machine`].
pub const MACHINE_NAMES: &[&str] = &["one-step", "right-mover", "three-state", "cycle", "merging", "thm4-demo"];

pub fn machine(name: &str) -> Option<TuringMachine> {
    Some(match name {
        "one-step" => one_step_halting(),
        "right-mover" => right_mover(),
        "three-state" => three_state_halting(),
        "cycle" => cycle_machine(),
        "merging" => merging_machine(),
        "thm4-demo" => thm4_demo(),
        _ => return None,
    })
}
