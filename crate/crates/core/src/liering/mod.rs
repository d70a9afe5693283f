//! Finite Lie rings, finite groups, filtrations and the functors Laz, Laz⁻¹.

mod fast;
mod group;
mod ring;
mod series;

pub use group::{prime_of_order, FinGroup};
pub use ring::{laz_inv, laz_inv_canonical, LieRingSC, LieRingTable, Report, DEFAULT_MAX_ORDER};
pub use series::{Filtration, Series, Span};
