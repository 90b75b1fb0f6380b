//! Classification of singular points of matrix linear systems: Laurent
//! series machinery, gauge transformations, coefficient recurrences, shearing
//! reduction, and the strong-regularity classifier.

pub mod classify;
pub mod laurent;
pub mod patterns;
pub mod recurrence;
pub mod shearing;

pub use classify::{
    default_truncation, strong_regularity_classify, ClassificationReport, ClassifyError,
    Reason, Verdict, WitnessPair,
};
pub use laurent::{gauge_transform, GaugeError, GaugeTransform, LaurentMatrixFunction};
pub use patterns::{
    extract_second_order_pattern, katsnelson_volok_check, second_order_pole_check,
    PatternError, SecondOrderPattern,
};
pub use recurrence::{
    forward_recurrence, inverse_recurrence, satisfies_forward, satisfies_inverse,
    LaurentSolution, RecurrenceError,
};
pub use shearing::{reduce_to_min_spectrum, shearing_step, ShearError};
