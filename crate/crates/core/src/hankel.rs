//! Hankel matrices `H_n = (s_{i+j})_{i,j=0..n}` of rational sequences and
//! exact positive-semidefiniteness scans over their orders.
//!
//! A bounded sequence is the moment sequence of a positive measure on
//! `[-1, 1]` iff every `H_n` is positive semidefinite. Leading principal
//! minors alone cannot decide semidefiniteness of singular matrices, so each
//! order is judged by [`RatMatrix::psd_check`]; determinants are reported
//! alongside.

use num_traits::Signed;

use crate::cfrac::kperiodic_eval;
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::matrix::{NotPsdCertificate, PsdVerdict, RatMatrix};

/// Orders scanned when the caller does not choose.
pub const DEFAULT_MAX_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HankelMatrix {
    order: usize,
    terms: Vec<Rational>,
}

impl HankelMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        assert!(i <= self.order && j <= self.order);
        &self.terms[i + j]
    }

    pub fn to_matrix(&self) -> RatMatrix {
        RatMatrix::from_fn(self.order + 1, |i, j| self.terms[i + j].clone())
    }

    pub fn det(&self) -> Rational {
        exact_det(&self.to_matrix())
    }

    pub fn psd_check(&self) -> PsdVerdict {
        self.to_matrix().psd_check()
    }
}

/// `H_n` built from the first `2n + 1` terms of `seq`.
pub fn hankel_matrix(seq: &[Rational], n: usize) -> Result<HankelMatrix> {
    let needed = 2 * n + 1;
    if seq.len() < needed {
        return Err(Error::SequenceTooShort {
            len: seq.len(),
            order: n,
            needed,
        });
    }
    Ok(HankelMatrix {
        order: n,
        terms: seq[..needed].to_vec(),
    })
}

pub fn exact_det(m: &RatMatrix) -> Rational {
    m.det()
}

pub fn psd_check(m: &RatMatrix) -> PsdVerdict {
    m.psd_check()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderResult {
    pub order: usize,
    pub determinant: Rational,
    pub verdict: PsdVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsdReport {
    pub max_order: usize,
    pub orders: Vec<OrderResult>,
}

impl PsdReport {
    /// The lowest order that is not PSD, with its certificate.
    pub fn first_failure(&self) -> Option<(usize, &NotPsdCertificate)> {
        self.orders.iter().find_map(|o| match &o.verdict {
            PsdVerdict::NotPsd(cert) => Some((o.order, cert)),
            PsdVerdict::Psd => None,
        })
    }

    pub fn all_psd(&self) -> bool {
        self.orders.iter().all(|o| o.verdict.is_psd())
    }

    pub fn determinants(&self) -> impl Iterator<Item = &Rational> {
        self.orders.iter().map(|o| &o.determinant)
    }

    pub fn negative_determinant_orders(&self) -> Vec<usize> {
        self.orders
            .iter()
            .filter(|o| o.determinant.is_negative())
            .map(|o| o.order)
            .collect()
    }
}

/// Determinant and PSD verdict of `H_0..=H_max_order` for `seq`.
pub fn scan_sequence(seq: &[Rational], max_order: usize) -> Result<PsdReport> {
    let orders = (0..=max_order)
        .map(|order| {
            let h = hankel_matrix(seq, order)?;
            let m = h.to_matrix();
            Ok(OrderResult {
                order,
                determinant: m.det(),
                verdict: m.psd_check(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PsdReport { max_order, orders })
}

/// Hankel scan of the truncations of the k-periodic fraction with
/// partial denominators `periods`, terminated by `+ w`.
pub fn scan_kperiodic(periods: &[Rational], w: &Rational, max_order: usize) -> Result<PsdReport> {
    let seq = kperiodic_eval(periods, w, 2 * max_order)?;
    scan_sequence(&seq, max_order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn all_ones() {
        let ones = vec![rat(1, 1); 5];
        let h = hankel_matrix(&ones, 2).unwrap();
        assert!((0..3).all(|i| (0..3).all(|j| h.entry(i, j) == &rat(1, 1))));
        assert_eq!(h.det(), rat(0, 1));
        assert!(h.psd_check().is_psd());
    }

    #[test]
    fn too_short() {
        let seq = vec![rat(1, 1); 4];
        assert_eq!(
            hankel_matrix(&seq, 2),
            Err(Error::SequenceTooShort {
                len: 4,
                order: 2,
                needed: 5
            })
        );
    }

    #[test]
    fn fibonacci_ratio_h1() {
        let seq = vec![rat(1, 1), rat(1, 2), rat(2, 3)];
        let h = hankel_matrix(&seq, 1).unwrap();
        assert_eq!(h.entry(0, 1), &rat(1, 2));
        assert_eq!(h.det(), rat(5, 12));
    }

    #[test]
    fn order_zero_scan() {
        let report = scan_kperiodic(&[rat(1, 1)], &rat(0, 1), 0).unwrap();
        assert_eq!(report.orders.len(), 1);
        assert_eq!(report.orders[0].determinant, rat(0, 1));
        assert!(report.all_psd());
    }
}
