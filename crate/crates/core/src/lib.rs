//! Heights of elliptic curves over rational function fields `Q(T1, ..., Tn)`.

pub mod algebra;
pub mod curve;
pub mod error;
pub mod height;
pub mod interval;
pub mod point;
pub mod reduction;
pub mod specialization;

pub use curve::{discriminant, FunctionFieldCurve, InfinityModel, RatForm, WeierstrassModel};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use height::{weil_height, weil_height_divisor_sum, HeightEstimate, HeightOptions};
pub use interval::Interval;
pub use point::ProjPoint;
