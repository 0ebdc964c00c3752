//! Finite continued fractions of periodic continued fractions.
//!
//! The central objects are the truncations
//!
//! ```text
//! s_0 = w,  s_1 = 1/(a + w),  s_2 = 1/(a + 1/(b + w)),  ...
//! ```
//!
//! of `1/(a + 1/(b + 1/(a + ...)))`, written `s_n = N_n / D_n` with
//!
//! ```text
//! N_{n+2} = b D_n + N_n
//! D_{n+2} = ab D_n + a N_n + D_n
//! ```
//!
//! and `N_0 = w, N_1 = 1, D_0 = 1, D_1 = a + w`. Extending with
//! `D_{-2} = 1 - aw, D_{-1} = w`, each parity class of `D_n` solves
//! `x_{m+1} = (2 + ab) x_m - x_{m-1}`, which gives closed forms in
//! `Q(sqrt(a^2 b^2 + 4ab))`.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{rat, QuadElem, QuadField, Rational};

/// Validated parameters `(a, b, w)` with `a, b > 0` and `w >= 0`.
#[derive(Debug, Clone)]
pub struct CfParams {
    a: Rational,
    b: Rational,
    w: Rational,
    field: Arc<QuadField>,
}

impl CfParams {
    pub fn new(a: Rational, b: Rational, w: Rational) -> Result<CfParams> {
        require_positive("a", &a)?;
        require_positive("b", &b)?;
        require_nonnegative("w", &w)?;
        let ab = &a * &b;
        let delta = &ab * &ab + &ab * rat(4, 1);
        let field = QuadField::new(delta)?;
        Ok(CfParams { a, b, w, field })
    }

    pub fn from_ints(a: i64, b: i64, w: i64) -> Result<CfParams> {
        Self::new(rat(a, 1), rat(b, 1), rat(w, 1))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn w(&self) -> &Rational {
        &self.w
    }

    /// `a^2 b^2 + 4ab`.
    pub fn delta(&self) -> &Rational {
        self.field.delta()
    }

    /// `Q(sqrt(delta))`, where every closed form for these parameters lives.
    pub fn field(&self) -> &Arc<QuadField> {
        &self.field
    }

    pub(crate) fn constant(&self, value: &Rational) -> QuadElem {
        QuadElem::from_rational(&self.field, value.clone())
    }
}

pub(crate) fn require_positive(name: &'static str, value: &Rational) -> Result<()> {
    if value.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: value.to_string(),
            requirement: "must be positive (> 0)",
        })
    }
}

pub(crate) fn require_nonnegative(name: &'static str, value: &Rational) -> Result<()> {
    if value.is_negative() {
        Err(Error::InvalidParameter {
            name,
            value: value.to_string(),
            requirement: "must be nonnegative (>= 0)",
        })
    } else {
        Ok(())
    }
}

/// One term `s_n = N_n / D_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub n: usize,
    pub numer: Rational,
    pub denom: Rational,
}

impl Convergent {
    pub fn value(&self) -> Rational {
        &self.numer / &self.denom
    }
}

/// Unbounded iterator over `(N_n, D_n)` driven by the two-step recurrence.
#[derive(Debug, Clone)]
pub struct Convergents {
    a: Rational,
    b: Rational,
    n: usize,
    current: (Rational, Rational),
    next: (Rational, Rational),
}

impl Convergents {
    pub fn new(params: &CfParams) -> Convergents {
        let a = params.a.clone();
        let w = params.w.clone();
        Convergents {
            current: (w.clone(), Rational::one()),
            next: (Rational::one(), &a + &w),
            b: params.b.clone(),
            a,
            n: 0,
        }
    }
}

impl Iterator for Convergents {
    type Item = Convergent;

    fn next(&mut self) -> Option<Convergent> {
        let (numer, denom) = &self.current;
        assert!(
            denom.is_positive(),
            "D_{} = {} is not positive for a = {}, b = {}",
            self.n,
            denom,
            self.a,
            self.b
        );
        let after = (
            &self.b * denom + numer,
            &self.a * &self.b * denom + &self.a * numer + denom,
        );
        let out = Convergent {
            n: self.n,
            numer: numer.clone(),
            denom: denom.clone(),
        };
        self.current = std::mem::replace(&mut self.next, after);
        self.n += 1;
        Some(out)
    }
}

/// `(N_n, D_n, s_n)` for `n = 0..=n_max`.
pub fn convergents(params: &CfParams, n_max: usize) -> Vec<Convergent> {
    Convergents::new(params).take(n_max + 1).collect()
}

/// Just the values `s_0..=s_{n_max}`.
pub fn sequence(params: &CfParams, n_max: usize) -> Vec<Rational> {
    Convergents::new(params)
        .take(n_max + 1)
        .map(|c| c.value())
        .collect()
}

/// `D_n` for `n = -2..=n_max`, with `D_{-2} = 1 - aw` and `D_{-1} = w`.
#[derive(Debug, Clone)]
pub struct DenominatorRun {
    values: Vec<Rational>,
}

impl DenominatorRun {
    pub fn new(params: &CfParams, n_max: usize) -> DenominatorRun {
        let mut values = Vec::with_capacity(n_max + 3);
        values.push(Rational::one() - &params.a * &params.w);
        values.push(params.w.clone());
        values.extend(Convergents::new(params).take(n_max + 1).map(|c| c.denom));
        DenominatorRun { values }
    }

    /// `D_n`; panics outside `-2..=n_max`.
    pub fn get(&self, n: i64) -> &Rational {
        &self.values[usize::try_from(n + 2).expect("index below -2")]
    }

    pub fn n_max(&self) -> i64 {
        self.values.len() as i64 - 3
    }
}

/// `q`, `alpha`, `beta` for a parameter triple.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedConstants {
    pub q: QuadElem,
    pub alpha: QuadElem,
    pub beta: QuadElem,
}

/// Computes
///
/// ```text
/// q     = (2 + ab - sqrt(a^2 b^2 + 4ab)) / 2
/// alpha = q (aw - (1 - q)) / (qaw + 1 - q)
/// beta  = (qa - (1 - q) w) / (a + (1 - q) w)
/// ```
///
/// and verifies `q^2 - (2 + ab) q + 1 = 0`, `0 < q < 1`, `|alpha| < 1` and
/// `|beta| < 1` exactly.
pub fn derived_constants(params: &CfParams) -> Result<DerivedConstants> {
    let field = &params.field;
    let ab = &params.a * &params.b;
    let two_plus_ab = rat(2, 1) + &ab;
    let q = QuadElem::new(field, &two_plus_ab / rat(2, 1), rat(-1, 2));

    let one = QuadElem::one(field);
    let a = params.constant(&params.a);
    let w = params.constant(&params.w);
    let one_minus_q = &one - &q;
    let aw = &a * &w;
    let alpha = &q * &(&aw - &one_minus_q) / (&(&q * &aw) + &one_minus_q);
    let beta = (&(&q * &a) - &(&one_minus_q * &w)) / (&a + &(&one_minus_q * &w));

    let char_poly = &(&q * &q) - &q.scale(&two_plus_ab) + &one;
    check(char_poly.is_zero(), || {
        format!("q = {q} is not a root of x^2 - (2+ab)x + 1")
    })?;
    check(q.is_positive() && (&one - &q).is_positive(), || {
        format!("q = {q} outside (0, 1)")
    })?;
    check((&one - &alpha.abs()).is_positive(), || {
        format!("|alpha| >= 1, alpha = {alpha}")
    })?;
    check((&one - &beta.abs()).is_positive(), || {
        format!("|beta| >= 1, beta = {beta}")
    })?;
    Ok(DerivedConstants { q, alpha, beta })
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvariantViolation(msg()))
    }
}

/// Coefficients of `D_{2m} = c0 q^-m + c1 q^m` and `D_{2m+1} = d0 q^-m + d1 q^m`.
#[derive(Debug, Clone)]
pub struct ClosedForm {
    pub q: QuadElem,
    pub c0: QuadElem,
    pub c1: QuadElem,
    pub d0: QuadElem,
    pub d1: QuadElem,
}

impl ClosedForm {
    pub fn new(params: &CfParams) -> Result<ClosedForm> {
        let q = derived_constants(params)?.q;
        let field = &params.field;
        let one = QuadElem::one(field);
        let a = params.constant(&params.a);
        let w = params.constant(&params.w);
        let one_minus_q = &one - &q;
        let denom = &one - &(&q * &q);
        let aw = &a * &w;
        let c0 = (&one_minus_q + &(&q * &aw)) / &denom;
        let c1 = &q * &(&one_minus_q - &aw) / &denom;
        let d0 = (&a + &(&one_minus_q * &w)) / &denom;
        let d1 = &q * &(&(&one_minus_q * &w) - &(&q * &a)) / &denom;
        Ok(ClosedForm { q, c0, c1, d0, d1 })
    }

    /// `D_n` for any integer `n >= -2` (and beyond, by the same formula).
    pub fn denominator(&self, n: i64) -> QuadElem {
        let m = n.div_euclid(2);
        let up = self.q.powi(-m).expect("q is nonzero");
        let down = self.q.powi(m).expect("q is nonzero");
        if n.rem_euclid(2) == 0 {
            &(&self.c0 * &up) + &(&self.c1 * &down)
        } else {
            &(&self.d0 * &up) + &(&self.d1 * &down)
        }
    }
}

/// Closed-form `D_n` in `Q(sqrt(delta))`.
pub fn closed_form_d(params: &CfParams, n: i64) -> Result<QuadElem> {
    Ok(ClosedForm::new(params)?.denominator(n))
}

/// The limit of the infinite 2-periodic fraction: the positive root
/// `(-ab + sqrt(a^2 b^2 + 4ab)) / (2a)` of `a x^2 + ab x - b`.
pub fn cf_limit(params: &CfParams) -> Result<QuadElem> {
    let ab = &params.a * &params.b;
    let two_a = &params.a * rat(2, 1);
    let x = QuadElem::new(&params.field, -&ab / &two_a, Rational::one() / &two_a);
    let residual = &(&(&x * &x).scale(&params.a) + &x.scale(&ab)) - &params.b;
    check(residual.is_zero(), || {
        format!("{x} is not a root of a x^2 + ab x - b")
    })?;
    check(x.is_positive(), || format!("limit {x} is not positive"))?;
    Ok(x)
}

/// `D_{-1}..=D_{n_max}` from the one-step recurrence `D_{n+1} = a D_n + D_{n-1}`
/// with `D_{-1} = w`, `D_0 = 1`. Valid for the symmetric case `a = b`.
pub fn symmetric_denominators(a: &Rational, w: &Rational, n_max: usize) -> Vec<Rational> {
    let mut out = vec![w.clone(), Rational::one()];
    for i in 1..=n_max {
        let next = a * &out[i] + &out[i - 1];
        out.push(next);
    }
    out
}

/// The value `a = 2 sinh(theta)` indexing Ismail's generalized Fibonacci numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenFibParams {
    a: Rational,
}

impl GenFibParams {
    pub fn new(a: Rational) -> Result<GenFibParams> {
        require_positive("a", &a)?;
        Ok(GenFibParams { a })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// The symmetric triple `(a, a, 1/a)` whose convergents are `F_{n+1}/F_{n+2}`.
    pub fn cf_params(&self) -> CfParams {
        CfParams::new(self.a.clone(), self.a.clone(), self.a.recip())
            .expect("a > 0 gives valid parameters")
    }
}

/// `F_0..=F_{n_max}` with `F_0 = 0`, `F_1 = 1`, `F_{n+1} = a F_n + F_{n-1}`.
pub fn gen_fibonacci(p: &GenFibParams, n_max: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(), Rational::one()];
    while out.len() < n_max + 1 {
        let n = out.len();
        let next = &p.a * &out[n - 1] + &out[n - 2];
        out.push(next);
    }
    out.truncate(n_max + 1);
    out
}

/// Truncations of a k-periodic continued fraction with partial denominators
/// cycling through `periods`, terminated by `+ w` at the innermost level:
/// `s_0 = w`, `s_n = 1/(p_1 + 1/(p_2 + ... 1/(p_n + w)))`.
pub fn kperiodic_eval(periods: &[Rational], w: &Rational, n_max: usize) -> Result<Vec<Rational>> {
    if periods.is_empty() {
        return Err(Error::InvalidParameter {
            name: "periods",
            value: "[]".into(),
            requirement: "must be a nonempty list",
        });
    }
    for p in periods {
        require_positive("periods", p)?;
    }
    require_nonnegative("w", w)?;
    let period = |j: usize| &periods[(j - 1) % periods.len()];

    let mut out = Vec::with_capacity(n_max + 1);
    out.push(w.clone());
    for n in 1..=n_max {
        let mut tail = period(n) + w;
        for j in (1..n).rev() {
            assert!(!tail.is_zero(), "zero partial denominator at depth {j}");
            tail = period(j) + tail.recip();
        }
        assert!(!tail.is_zero(), "zero partial denominator at depth 0");
        out.push(tail.recip());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::parse_rational;

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn params(a: &str, b: &str, w: &str) -> CfParams {
        CfParams::new(r(a), r(b), r(w)).unwrap()
    }

    #[test]
    fn fibonacci_convergents() {
        let s = sequence(&params("1", "1", "0"), 5);
        let expected: Vec<_> = ["0", "1", "1/2", "2/3", "3/5", "5/8"]
            .iter()
            .map(|x| r(x))
            .collect();
        assert_eq!(s, expected);
        assert_eq!(sequence(&params("1", "1", "1"), 0), vec![r("1")]);
    }

    #[test]
    fn parameter_validation() {
        for (a, b, w, name) in [
            ("0", "1", "0", "a"),
            ("1", "-1", "0", "b"),
            ("1", "1", "-1/2", "w"),
        ] {
            match CfParams::new(r(a), r(b), r(w)) {
                Err(Error::InvalidParameter { name: got, .. }) => assert_eq!(got, name),
                other => panic!("expected invalid {name}, got {other:?}"),
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        let p = params("1", "1", "0");
        assert_eq!(closed_form_d(&p, 0).unwrap(), QuadElem::one(p.field()));
        assert_eq!(
            closed_form_d(&p, 5).unwrap(),
            QuadElem::from_int(p.field(), 8)
        );
        let p = params("1", "1", "1");
        assert!(closed_form_d(&p, -2).unwrap().is_zero());
    }

    #[test]
    fn closed_form_matches_recurrence_with_degenerate_field() {
        // ab = 4/3 makes delta = 64/9 a rational square.
        let p = params("2/3", "2", "5/7");
        assert!(p.field().is_degenerate());
        let run = DenominatorRun::new(&p, 20);
        let cf = ClosedForm::new(&p).unwrap();
        for n in -2..=20 {
            assert_eq!(cf.denominator(n).as_rational(), Some(run.get(n)), "n = {n}");
        }
    }

    #[test]
    fn golden_constants() {
        let p = params("1", "1", "0");
        let k = derived_constants(&p).unwrap();
        let q = QuadElem::new(p.field(), r("3/2"), r("-1/2"));
        assert_eq!(k.q, q);
        assert_eq!(k.alpha, -&q);
        assert_eq!(k.beta, q);

        let p = params("1", "1", "1");
        let k = derived_constants(&p).unwrap();
        assert_eq!(k.alpha, &k.q * &k.q);
        assert_eq!(k.beta, -(&k.q * &k.q));
    }

    #[test]
    fn euler_sqrt7_constants() {
        let p = params("2", "7", "0");
        assert_eq!(p.delta(), &r("252"));
        let k = derived_constants(&p).unwrap();
        // sqrt(252) = 6 sqrt(7), so 8 - 3 sqrt(7) = 8 - sqrt(252)/2
        assert_eq!(k.q, QuadElem::new(p.field(), r("8"), r("-1/2")));
        let q_inv = QuadElem::new(p.field(), r("8"), r("1/2"));
        assert_eq!(&k.q * &q_inv, QuadElem::one(p.field()));
    }

    #[test]
    fn limits() {
        let p = params("1", "1", "0");
        assert_eq!(
            cf_limit(&p).unwrap(),
            QuadElem::new(p.field(), r("-1/2"), r("1/2"))
        );
        let p = params("2", "7", "0");
        let seven = QuadField::new(r("7")).unwrap();
        let euler = QuadElem::new(&seven, r("-7/2"), r("3/2"));
        assert_eq!(cf_limit(&p).unwrap(), euler.embed_into(p.field()).unwrap());
    }

    #[test]
    fn generalized_fibonacci() {
        let fib = gen_fibonacci(&GenFibParams::new(r("1")).unwrap(), 7);
        let expected: Vec<_> = [0, 1, 1, 2, 3, 5, 8, 13]
            .iter()
            .map(|&x| rat(x, 1))
            .collect();
        assert_eq!(fib, expected);
        let pell = gen_fibonacci(&GenFibParams::new(r("2")).unwrap(), 5);
        let expected: Vec<_> = [0, 1, 2, 5, 12, 29].iter().map(|&x| rat(x, 1)).collect();
        assert_eq!(pell, expected);
        let third = gen_fibonacci(&GenFibParams::new(r("1/3")).unwrap(), 0);
        assert_eq!(third, vec![rat(0, 1)]);
        assert!(GenFibParams::new(r("0")).is_err());
    }

    #[test]
    fn kperiodic_matches_two_periodic() {
        let p = params("3", "7/2", "1/2");
        let k = kperiodic_eval(&[r("3"), r("7/2")], &r("1/2"), 20).unwrap();
        assert_eq!(k, sequence(&p, 20));
        let one = kperiodic_eval(&[r("1")], &r("0"), 5).unwrap();
        assert_eq!(one, sequence(&params("1", "1", "0"), 5));
    }

    #[test]
    fn kperiodic_rejects_bad_input() {
        assert!(kperiodic_eval(&[], &r("1"), 3).is_err());
        assert!(kperiodic_eval(&[r("1"), r("0")], &r("1"), 3).is_err());
        assert!(kperiodic_eval(&[r("1")], &r("-1"), 3).is_err());
    }

    #[test]
    fn symmetric_reduction() {
        let p = params("5/2", "5/2", "1/3");
        let run = DenominatorRun::new(&p, 15);
        let sym = symmetric_denominators(p.a(), p.w(), 15);
        for n in -1..=15i64 {
            assert_eq!(&sym[(n + 1) as usize], run.get(n));
        }
    }
}
