//! Exact Zariski decompositions, pseudoeffective thresholds, and Green's
//! functions of real divisorial valuations on surfaces.
//!
//! Every engine is generic over an [`ExactField`]; the aliases below fix
//! the scalar to [`Quadratic`], which covers all rational data plus one real
//! quadratic extension.
//!
//! ```
//! use zariski_core::{golden, zariski_decompose, Class};
//!
//! let bl = golden::blowup_plane();
//! let z = zariski_decompose(&bl, &Class::from_ints(&[1, 1])).unwrap();
//! assert_eq!(bl.format_class(&z.positive), "1*H");
//! assert_eq!(bl.format_divisor(&z.negative), "1*E");
//! ```

pub mod curve;
pub mod error;
pub mod flag;
pub mod golden;
pub mod green;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod scalar;
pub mod valuation;
pub mod zariski;

pub use curve::{evaluate_curve, green_curve, CurveGreenFunction, CurveSigma};
pub use error::{Error, Result};
pub use flag::{flag_green, flag_zariski, FlagConfiguration, FlagDecomposition, FlagGreenFunction};
pub use green::{green_from_sigma, GreenFunction, SigmaSet};
pub use lattice::{
    ConeMode, ConeOracle, Curve, Divisor, DivisorClass, SurfaceLattice, ValidationReport,
    Violation,
};
pub use scalar::{ExactField, Quadratic, Rational, ScalarError};
pub use valuation::RealDivisorialValuation;
pub use zariski::{
    minimal_vanishing_order, pl_family, threshold_psef, zariski_decompose, PLFamily, Segment,
    ZariskiDecomposition,
};

pub type Scalar = Quadratic;
pub type Class = DivisorClass<Scalar>;
pub type Lattice = SurfaceLattice<Scalar>;
pub type Decomposition = ZariskiDecomposition<Scalar>;
pub type Family = PLFamily<Scalar>;
pub type Green = GreenFunction<Scalar>;
pub type Sigma = SigmaSet<Scalar>;
pub type Flag = FlagConfiguration<Scalar>;
pub type FlagGreen = FlagGreenFunction<Scalar>;
pub type CurveData = CurveSigma<Scalar>;
pub type CurveGreen = CurveGreenFunction<Scalar>;
pub type Valuation = RealDivisorialValuation<Scalar>;
