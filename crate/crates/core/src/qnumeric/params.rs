use crate::{Error, Result};

pub const DEFAULT_TOL_REL: f64 = 1e-9;
pub const DEFAULT_TOL_TERM: f64 = 1e-18;

/// Numeric parameters `(q, a, z) ∈ (0,1)³` plus tolerances.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QParams {
    q: f64,
    a: f64,
    z: f64,
    tol_rel: f64,
    tol_term: f64,
}

pub(crate) fn check_open_unit(what: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            what,
            value: v,
            domain: "(0, 1)",
        })
    }
}

fn check_tolerance(what: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            what,
            value: v,
            domain: "(0, inf)",
        })
    }
}

impl QParams {
    pub fn new(q: f64, a: f64, z: f64) -> Result<Self> {
        check_open_unit("q", q)?;
        check_open_unit("a", a)?;
        check_open_unit("z", z)?;
        Ok(Self {
            q,
            a,
            z,
            tol_rel: DEFAULT_TOL_REL,
            tol_term: DEFAULT_TOL_TERM,
        })
    }

    pub fn with_tol_rel(mut self, tol_rel: f64) -> Result<Self> {
        check_tolerance("tol_rel", tol_rel)?;
        self.tol_rel = tol_rel;
        Ok(self)
    }

    pub fn with_tol_term(mut self, tol_term: f64) -> Result<Self> {
        check_tolerance("tol_term", tol_term)?;
        self.tol_term = tol_term;
        Ok(self)
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn tol_rel(&self) -> f64 {
        self.tol_rel
    }

    pub fn tol_term(&self) -> f64 {
        self.tol_term
    }

    pub fn ln_q(&self) -> f64 {
        libm::log(self.q)
    }

    /// `1 - z(1 - a)`; above it `g` has a single interior peak.
    pub fn unimodal_threshold(&self) -> f64 {
        1.0 - self.z * (1.0 - self.a)
    }

    pub fn unimodal_ok(&self) -> bool {
        self.q > self.unimodal_threshold()
    }

    pub(crate) fn require_unimodal(&self) -> Result<()> {
        if self.unimodal_ok() {
            Ok(())
        } else {
            Err(Error::NotUnimodal {
                q: self.q,
                threshold: self.unimodal_threshold(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(QParams::new(0.5, 0.5, 0.5).is_ok());
        assert!(QParams::new(1.0, 0.5, 0.5).is_err());
        assert!(QParams::new(0.5, 0.0, 0.5).is_err());
        assert!(QParams::new(0.5, 0.5, f64::NAN).is_err());
        let p = QParams::new(0.5, 0.5, 0.5).unwrap();
        assert!(p.with_tol_rel(0.0).is_err());
        assert_eq!(p.with_tol_term(1e-12).unwrap().tol_term(), 1e-12);
    }

    #[test]
    fn unimodal_flag() {
        // threshold 1 - 0.5·0.5 = 0.75
        assert!(!QParams::new(0.75, 0.5, 0.5).unwrap().unimodal_ok());
        assert!(QParams::new(0.76, 0.5, 0.5).unwrap().unimodal_ok());
        assert!(matches!(
            QParams::new(0.3, 0.5, 0.5).unwrap().require_unimodal(),
            Err(Error::NotUnimodal { .. })
        ));
    }
}
