//! Two-time correlators, the three-time Leggett-Garg combination K3, and the
//! sweeps built on them.
//!
//! Correlators always come from the trace formula
//! `Cij = ½ tr[Q U(tj, ti) Q U†(tj, ti)]` with `Q = σz` by default. Since
//! `U(tj, ti)` depends on `tj − ti` only, the grid `t1 = 0, t2 = t, t3 = 2t`
//! gives `C12 = C23` and `K3 = 2 C12 − C13`.

mod correlator;
mod sweep;

pub use correlator::{correlator, k3_at, k3_at_with_observable, CorrelatorSet};
pub use sweep::{
    k3_curve, k3_max, k3max_surface, ttb_map, CurvePoint, Endpoints, K3Max, SurfaceEntry,
    SweepAxis, TtbEntry,
};
