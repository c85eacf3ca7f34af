//! Physical realization of the superposed unitary with an ancilla qubit.
//!
//! The ancilla A is prepared in `|α⟩ = cosα|0⟩ + sinα|1⟩`. Two controlled
//! gates act back to back: the `|0⟩` branch rotates S about `m̂` and the `|1⟩`
//! branch rotates S about `n̂`. Keeping only the `|+⟩_A` outcome leaves S
//! transformed by `cosα U1 + sinα U0 = Ũ`, the numerator of the superposed
//! unitary. The success probability is `N²/2` for every input state.
//!
//! The `−` outcome of the same experiment gives `Ũ− = cosα U1 − sinα U0`.
//! Only quadratic quantities (`T−`, `N−²`) are ever read from it.

mod channel;
mod interferometer;
mod pulses;

pub use channel::{
    ancilla_ket, ancilla_state, controlled_u_t0, controlled_u_t1, joint_propagator,
    postselect_map, project_ancilla_plus, PostSelected,
};
pub use interferometer::{
    interferometer_signal, normalization_signal, reconstructed_correlator, AncillaCircuit,
    InterferometerSignal, NormalizationSignal, Readout,
};
pub use pulses::{
    build_pulse_library, controlled_sigma_z_sequence, controlled_sigma_z_target,
    u_t0_sequence, u_t0_target, u_t1_sequence, u_t1_target, verify_pulse_sequences, Pulse, PulseAxis, PulseCheck,
    PulseSequence, Qubit, SequenceSummary, VerificationReport, VerificationRow, PULSE_TOL,
};
