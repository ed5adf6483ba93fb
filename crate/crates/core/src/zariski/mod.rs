//! Zariski decomposition on surfaces: pointwise, along a v-ray, and as a (u, v) chart.

mod chart;
mod decompose;
mod sweep;

pub use chart::{build_chart, ChartChamber, ChartPiece, ZariskiChart};
pub use decompose::{is_negative_definite, zariski_decompose, NamedCurves, ZariskiResult};
pub use sweep::{v_sweep, SweepChamber};
