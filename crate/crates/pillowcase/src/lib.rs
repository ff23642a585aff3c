//! Traceless SU(2) character varieties of the twice-punctured torus.
//!
//! * [`su2`]: unit quaternion arithmetic.
//! * [`char_variety`]: R(T²,2), the μ-map and the P3/P4 charts.
//! * [`lagrangians`]: the disk Lagrangian `L_d` and the perturbed sphere
//!   Lagrangian `L_s`.
//! * [`mcg`]: the mapping class group action.
//! * [`cohomology`]: constrained group cohomology.
//! * [`intersect`]: counting `L_s ∩ L_d·f`.

pub mod char_variety;
pub mod cohomology;
pub mod intersect;
mod jet;
pub mod lagrangians;
pub mod mcg;
pub mod su2;

pub use char_variety::{ChartPoint, RepTuple, TraceFn, TraceProfile};
pub use lagrangians::{DiskCoord, PerturbationConfig, Shape, SphereCoord};
pub use mcg::McgWord;
pub use su2::{Axis, Su2Element, Su2Vector, UnitVector3};
