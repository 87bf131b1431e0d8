//! Two-input gate netlists: synthesis from constructions, simulation and
//! equivalence checking.

mod netlist;
mod sim;
mod synth;

pub use netlist::{Gate, GateCount, GateOp, Lit, Netlist, NetlistBuilder, Signal};
pub use sim::{
    netlist_truth_table, simulate, simulate_words, verify_equivalence, BoolOracle, Certificate, VerifyMode,
    N_MAX_EXHAUSTIVE,
};
pub use synth::{construction_into, majority_into, synth_construction, synth_majority, synth_tree};

/// Gate tally of a netlist.
pub fn count_gates(nl: &Netlist) -> GateCount {
    nl.count_gates()
}
