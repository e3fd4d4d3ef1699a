//! Flags `Z ⊂ S ⊂ X` of smooth subvarieties (a curve on a surface on a
//! threefold) with `S ≡ omega` and `Nef(S) = Psef(S)`.
//!
//! Only `N^1(S)` with its intersection form and the restricted classes are
//! represented. In the 2-plane spanned by `theta_nef` and `[S]` the negative
//! part is `b * S` at `a theta_nef + b [S]`, and the Green's function of
//! `ord_Z` is
//!
//! ```text
//! phi(w) = max { 0, lambda (1 - w(b_Z)), 1 - w(b_S) }
//! ```
//!
//! where `lambda` is the nef threshold of `omega|_S - lambda [Z]` on `S`.

use crate::error::{Error, Result};
use crate::lattice::{ConeMode, DivisorClass, SurfaceLattice};
use crate::scalar::ExactField;
use crate::zariski::threshold_psef;

#[derive(Debug, Clone)]
pub struct FlagConfiguration<F> {
    surface: SurfaceLattice<F>,
    omega: DivisorClass<F>,
    z: DivisorClass<F>,
    s_restr: DivisorClass<F>,
}

impl<F: ExactField> FlagConfiguration<F> {
    /// `s_restr` is the self-restriction of the prime divisor used for the
    /// 2-plane analysis; it defaults to `omega|_S - [Z]`, the restriction of
    /// the strict transform of `S` after blowing up `Z`.
    pub fn new(
        surface: SurfaceLattice<F>,
        omega: DivisorClass<F>,
        z: DivisorClass<F>,
        s_restr: Option<DivisorClass<F>>,
    ) -> Result<Self> {
        if surface.mode() != ConeMode::Quadric {
            return Err(Error::HypothesisViolated(
                "the surface S must have Nef(S) = Psef(S) (quadric cone mode)".into(),
            ));
        }
        let report = surface.validate();
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidLattice(v.to_string()));
        }
        surface.check_class(&z)?;
        if !surface.is_ample(&omega)? {
            return Err(Error::NotAmple(surface.format_class(&omega)));
        }
        let difference = &omega - &z;
        if surface.is_nef(&difference)? {
            return Err(Error::HypothesisViolated(format!(
                "omega|_S - Z = {} is nef on S",
                surface.format_class(&difference)
            )));
        }
        let s_restr = s_restr.unwrap_or(difference);
        if surface.is_nef(&s_restr)? {
            return Err(Error::HypothesisViolated(format!(
                "S|_S = {} is nef",
                surface.format_class(&s_restr)
            )));
        }
        Ok(FlagConfiguration {
            surface,
            omega,
            z,
            s_restr,
        })
    }

    pub fn surface(&self) -> &SurfaceLattice<F> {
        &self.surface
    }

    pub fn omega(&self) -> &DivisorClass<F> {
        &self.omega
    }

    pub fn z(&self) -> &DivisorClass<F> {
        &self.z
    }

    pub fn s_restr(&self) -> &DivisorClass<F> {
        &self.s_restr
    }

    /// `sup { lambda >= 0 : omega|_S - lambda [Z] nef on S }`, required to be
    /// below 1.
    pub fn lambda_nef_on_s(&self) -> Result<F> {
        let lambda = threshold_psef(&self.surface, &self.omega, &self.z)?;
        if lambda >= F::one() {
            return Err(Error::HypothesisViolated(format!(
                "lambda_nef on S is {lambda} >= 1"
            )));
        }
        Ok(lambda)
    }
}

/// Zariski decomposition of `a theta_nef + b [S]` on the 2-plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagDecomposition<F> {
    /// Coefficient of `theta_nef` in the positive part.
    pub positive_theta_nef: F,
    /// Coefficient of the prime divisor `S` in the negative part.
    pub negative_s: F,
}

pub fn flag_zariski<F: ExactField>(a: &F, b: &F) -> Result<FlagDecomposition<F>> {
    if a.is_sign_negative() || b.is_sign_negative() {
        return Err(Error::NegativeCoefficients);
    }
    Ok(FlagDecomposition {
        positive_theta_nef: a.clone(),
        negative_s: b.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagGreenFunction<F> {
    lambda_s_nef: F,
}

pub fn flag_green<F: ExactField>(cfg: &FlagConfiguration<F>) -> Result<FlagGreenFunction<F>> {
    let lambda_s_nef = cfg.lambda_nef_on_s()?;
    if !lambda_s_nef.is_sign_positive() {
        return Err(Error::HypothesisViolated(format!(
            "lambda_nef on S is {lambda_s_nef}, expected a positive value"
        )));
    }
    Ok(FlagGreenFunction { lambda_s_nef })
}

impl<F: ExactField> FlagGreenFunction<F> {
    pub fn lambda_s_nef(&self) -> &F {
        &self.lambda_s_nef
    }

    /// `phi(w) = max{0, lambda (1 - w(b_Z)), 1 - w(b_S)}` from the vanishing
    /// orders `w(b_S) >= w(b_Z) >= 0`; the ideal of `S` lies inside the ideal
    /// of `Z`.
    pub fn evaluate(&self, vb_z: &F, vb_s: &F) -> Result<F> {
        if vb_z.is_sign_negative() || vb_s.is_sign_negative() {
            return Err(Error::NegativeCoefficients);
        }
        if vb_z > vb_s {
            return Err(Error::InconsistentVanishing {
                vb_z: vb_z.to_string(),
                vb_s: vb_s.to_string(),
            });
        }
        let one = F::one();
        let z_term = self.lambda_s_nef.clone() * (one.clone() - vb_z);
        let s_term = one - vb_s;
        Ok([F::zero(), z_term, s_term].into_iter().max().expect("nonempty"))
    }

    /// `sup phi`, attained at the trivial valuation; always 1.
    pub fn tau(&self) -> F {
        self.evaluate(&F::zero(), &F::zero())
            .expect("trivial valuation is consistent")
    }

    pub fn is_rational_pl(&self) -> bool {
        self.lambda_s_nef.is_rational()
    }

    /// Breakpoints `0 < lambda < 1` of the concave family attached to `phi`.
    pub fn breakpoints(&self) -> [F; 3] {
        [F::zero(), self.lambda_s_nef.clone(), F::one()]
    }
}
