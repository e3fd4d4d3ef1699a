//! Reference instances with known answers, shared by tests and the CLI
//! self-test.

use crate::curve::CurveSigma;
use crate::flag::FlagConfiguration;
use crate::lattice::{ConeOracle, Curve, DivisorClass, SurfaceLattice};
use crate::scalar::ExactField;

fn gram<F: ExactField>(rows: &[&[i64]]) -> Vec<Vec<F>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| F::from_int(x)).collect())
        .collect()
}

/// The blowup of the plane at a point: basis `H, E` with `H^2 = 1`,
/// `E^2 = -1`, negative curves `E` and the strict transform `C = H - E` of a
/// line through the point, `Psef = cone(E, C)`, ample class `2H - E`.
pub fn blowup_plane<F: ExactField>() -> SurfaceLattice<F> {
    let e = DivisorClass::from_ints(&[0, 1]);
    let c = DivisorClass::from_ints(&[1, -1]);
    SurfaceLattice::new(
        vec!["H".into(), "E".into()],
        gram(&[&[1, 0], &[0, -1]]),
        ConeOracle::Curves {
            generators: vec![e.clone(), c.clone()],
            curves: vec![Curve::new("E", e), Curve::new("C", c)],
        },
        DivisorClass::from_ints(&[2, -1]),
    )
    .expect("blowup lattice is well formed")
}

/// A rank-two abelian surface lattice with Gram `[[4, 6], [6, 2]]` on the
/// basis `L, E`, with `Nef = Psef` the quadric cone polarized by `L`.
pub fn abelian_surface<F: ExactField>() -> SurfaceLattice<F> {
    let l = DivisorClass::from_ints(&[1, 0]);
    SurfaceLattice::new(
        vec!["L".into(), "E".into()],
        gram(&[&[4, 6], &[6, 2]]),
        ConeOracle::Quadric {
            polarization: l.clone(),
        },
        l,
    )
    .expect("abelian lattice is well formed")
}

/// The surface `S` of a Cutkosky-type flag: same lattice as
/// [`abelian_surface`] with basis `h, Z`, `omega|_S = h` and `Z = e_2`.
pub fn cutkosky_flag<F: ExactField>() -> FlagConfiguration<F> {
    let h = DivisorClass::from_ints(&[1, 0]);
    let surface = SurfaceLattice::new(
        vec!["h".into(), "Z".into()],
        gram(&[&[4, 6], &[6, 2]]),
        ConeOracle::Quadric {
            polarization: h.clone(),
        },
        h.clone(),
    )
    .expect("flag surface is well formed");
    FlagConfiguration::new(surface, h, DivisorClass::from_ints(&[0, 1]), None)
        .expect("flag hypotheses hold")
}

/// Degree one, `Sigma = {ord_p}`.
pub fn curve_degree_one<F: ExactField>() -> CurveSigma<F> {
    CurveSigma::new(F::from_int(1), vec![("p".into(), F::from_int(1))])
        .expect("valid curve data")
}

/// Degree three, `Sigma = {ord_p, ord_q / 2}`.
pub fn curve_degree_three<F: ExactField>() -> CurveSigma<F> {
    CurveSigma::new(
        F::from_int(3),
        vec![("p".into(), F::from_int(1)), ("q".into(), F::from_ratio(1, 2))],
    )
    .expect("valid curve data")
}
