//! Zeta functions of curves over finite fields: point counts, exact
//! recognition of `P(T)`, the Weil bounds, and the determinant form.

pub mod curve;
pub mod field;
pub mod zeta;

pub use curve::{load_curve, parse_curve, CurveForm, PlaneCurve, Polynomial};
pub use field::FiniteField;
pub use zeta::{
    curve_zeta_det_form, rational_recognize, rational_value_exact, weil_rh_check, zeta_series, DetFormValue,
    LocalZeta, WeilReport,
};
