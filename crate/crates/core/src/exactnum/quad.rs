use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{parse_rational, rat, rational_sqrt, Rational};
use crate::error::{Error, Result};

/// The real quadratic field `Q(sqrt(delta))`.
///
/// When `delta` is the square of a rational the field collapses to `Q`;
/// the rational root is recorded and every element is kept with a zero
/// surd part.
#[derive(Debug, Clone)]
pub struct QuadField {
    delta: Rational,
    root: Option<Rational>,
}

impl QuadField {
    pub fn new(delta: Rational) -> Result<Arc<QuadField>> {
        if delta.is_negative() {
            return Err(Error::NegativeDiscriminant(Box::new(delta)));
        }
        let root = rational_sqrt(&delta);
        Ok(Arc::new(QuadField { delta, root }))
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    /// True when `sqrt(delta)` is rational and the field is just `Q`.
    pub fn is_degenerate(&self) -> bool {
        self.root.is_some()
    }

    pub fn rational_root(&self) -> Option<&Rational> {
        self.root.as_ref()
    }
}

impl PartialEq for QuadField {
    fn eq(&self, other: &Self) -> bool {
        self.delta == other.delta
    }
}

impl Eq for QuadField {}

/// An element `p + r*sqrt(delta)` of a [`QuadField`], always in canonical
/// form so that structural equality is mathematical equality.
#[derive(Debug, Clone)]
pub struct QuadElem {
    rat: Rational,
    surd: Rational,
    field: Arc<QuadField>,
}

/// The four field operations, for [`quad_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Fallible binary arithmetic on two field elements.
pub fn quad_arith(x: &QuadElem, y: &QuadElem, op: QuadOp) -> Result<QuadElem> {
    match op {
        QuadOp::Add => x.checked_add(y),
        QuadOp::Sub => x.checked_sub(y),
        QuadOp::Mul => x.checked_mul(y),
        QuadOp::Div => x.checked_div(y),
    }
}

impl QuadElem {
    pub fn new(field: &Arc<QuadField>, rat: Rational, surd: Rational) -> QuadElem {
        let mut x = QuadElem {
            rat,
            surd,
            field: Arc::clone(field),
        };
        x.normalize();
        x
    }

    pub fn from_rational(field: &Arc<QuadField>, value: Rational) -> QuadElem {
        QuadElem {
            rat: value,
            surd: Rational::zero(),
            field: Arc::clone(field),
        }
    }

    pub fn from_int(field: &Arc<QuadField>, value: i64) -> QuadElem {
        Self::from_rational(field, rat(value, 1))
    }

    pub fn zero(field: &Arc<QuadField>) -> QuadElem {
        Self::from_rational(field, Rational::zero())
    }

    pub fn one(field: &Arc<QuadField>) -> QuadElem {
        Self::from_rational(field, Rational::one())
    }

    /// `sqrt(delta)` itself.
    pub fn sqrt_delta(field: &Arc<QuadField>) -> QuadElem {
        Self::new(field, Rational::zero(), Rational::one())
    }

    fn normalize(&mut self) {
        if let Some(root) = &self.field.root {
            if !self.surd.is_zero() {
                self.rat = &self.rat + &self.surd * root;
                self.surd = Rational::zero();
            }
        }
    }

    fn with_parts(&self, rat: Rational, surd: Rational) -> QuadElem {
        Self::new(&self.field, rat, surd)
    }

    pub fn rat_part(&self) -> &Rational {
        &self.rat
    }

    pub fn surd_part(&self) -> &Rational {
        &self.surd
    }

    pub fn field(&self) -> &Arc<QuadField> {
        &self.field
    }

    pub fn delta(&self) -> &Rational {
        &self.field.delta
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.surd.is_zero()
    }

    /// The value as a rational, if the surd part vanishes.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.surd.is_zero().then_some(&self.rat)
    }

    pub fn same_field(&self, other: &QuadElem) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field == other.field
    }

    fn check_field(&self, other: &QuadElem) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: Box::new(self.field.delta.clone()),
                right: Box::new(other.field.delta.clone()),
            })
        }
    }

    /// Galois conjugate `p - r*sqrt(delta)`.
    pub fn conj(&self) -> QuadElem {
        self.with_parts(self.rat.clone(), -&self.surd)
    }

    /// Field norm `p^2 - r^2*delta`.
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - &self.surd * &self.surd * &self.field.delta
    }

    pub fn checked_add(&self, rhs: &QuadElem) -> Result<QuadElem> {
        self.check_field(rhs)?;
        Ok(self.with_parts(&self.rat + &rhs.rat, &self.surd + &rhs.surd))
    }

    pub fn checked_sub(&self, rhs: &QuadElem) -> Result<QuadElem> {
        self.check_field(rhs)?;
        Ok(self.with_parts(&self.rat - &rhs.rat, &self.surd - &rhs.surd))
    }

    pub fn checked_mul(&self, rhs: &QuadElem) -> Result<QuadElem> {
        self.check_field(rhs)?;
        let rat = &self.rat * &rhs.rat + &self.surd * &rhs.surd * &self.field.delta;
        let surd = &self.rat * &rhs.surd + &self.surd * &rhs.rat;
        Ok(self.with_parts(rat, surd))
    }

    pub fn checked_div(&self, rhs: &QuadElem) -> Result<QuadElem> {
        self.check_field(rhs)?;
        self.checked_mul(&rhs.recip()?)
    }

    /// `1/(p + r*sqrt(D)) = (p - r*sqrt(D)) / (p^2 - r^2*D)`.
    pub fn recip(&self) -> Result<QuadElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Nonzero elements have nonzero norm: D is not a rational square
        // whenever the surd part survives normalization.
        let n = self.norm();
        Ok(self.with_parts(&self.rat / &n, -&self.surd / &n))
    }

    pub fn scale(&self, c: &Rational) -> QuadElem {
        self.with_parts(&self.rat * c, &self.surd * c)
    }

    pub fn pow(&self, mut exp: u32) -> QuadElem {
        let mut base = self.clone();
        let mut acc = QuadElem::one(&self.field);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents go through [`QuadElem::recip`].
    pub fn powi(&self, exp: i64) -> Result<QuadElem> {
        let mag = u32::try_from(exp.unsigned_abs())
            .map_err(|_| Error::InvariantViolation(format!("exponent {exp} out of range")))?;
        if exp >= 0 {
            Ok(self.pow(mag))
        } else {
            Ok(self.recip()?.pow(mag))
        }
    }

    /// Exact sign. When `p` and `r` disagree in sign, the larger of `p^2`
    /// and `r^2*delta` wins.
    pub fn sign(&self) -> Ordering {
        let sp = sign_of(&self.rat);
        let sr = sign_of(&self.surd);
        if sr == Ordering::Equal || sr == sp {
            return sp;
        }
        if sp == Ordering::Equal {
            return sr;
        }
        // p^2 vs r^2 delta with every denominator cleared; integer products
        // avoid the gcd that each rational product would take.
        let (pn, pd) = (self.rat.numer(), self.rat.denom());
        let (rn, rd) = (self.surd.numer(), self.surd.denom());
        let (dn, dd) = (self.field.delta.numer(), self.field.delta.denom());
        let lhs = (pn * rd).pow(2) * dd;
        let rhs = (rn * pd).pow(2) * dn;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sp,
            Ordering::Less => sr,
            // Only reachable for a rational-square delta, which normalization excludes.
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    pub fn abs(&self) -> QuadElem {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact comparison of two elements of the same field.
    pub fn checked_cmp(&self, other: &QuadElem) -> Result<Ordering> {
        Ok(self.checked_sub(other)?.sign())
    }

    /// Moves the element into a field `Q(sqrt(D'))` where `D'/D` is a rational
    /// square, so `sqrt(D) = sqrt(D'/D)^-1 * sqrt(D')`.
    pub fn embed_into(&self, target: &Arc<QuadField>) -> Result<QuadElem> {
        if self.surd.is_zero() {
            return Ok(QuadElem::from_rational(target, self.rat.clone()));
        }
        let not_embeddable = || Error::NotEmbeddable {
            from: Box::new(self.field.delta.clone()),
            into: Box::new(target.delta.clone()),
        };
        if target.delta.is_zero() {
            return Err(not_embeddable());
        }
        let c = rational_sqrt(&(&target.delta / &self.field.delta)).ok_or_else(not_embeddable)?;
        Ok(QuadElem::new(target, self.rat.clone(), &self.surd / &c))
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        if self.surd.is_zero() {
            return self.rat.floor().to_integer();
        }
        let r2d = &self.surd * &self.surd * &self.field.delta;
        let root = r2d.floor().to_integer().sqrt();
        let mut guess = self.rat.floor().to_integer();
        if self.surd.is_negative() {
            guess -= root;
        } else {
            guess += root;
        }
        loop {
            let lower = QuadElem::from_rational(&self.field, Rational::from_integer(guess.clone()));
            if (self - &lower).is_negative() {
                guess -= 1;
                continue;
            }
            let upper = &lower + &Rational::one();
            if !(self - &upper).is_negative() {
                guess += 1;
                continue;
            }
            return guess;
        }
    }

    /// Decimal expansion with `digits` places after the point, correctly
    /// rounded (ties away from zero). For display only.
    pub fn to_decimal(&self, digits: usize) -> String {
        let negative = self.is_negative();
        let scale = Rational::from_integer(BigInt::from(10u32).pow(digits as u32));
        let shifted = &self.abs().scale(&scale) + &rat(1, 2);
        let units = shifted.floor().to_string();
        let body = if digits == 0 {
            units
        } else {
            let padded = format!("{units:0>width$}", width = digits + 1);
            let (int_part, frac_part) = padded.split_at(padded.len() - digits);
            format!("{int_part}.{frac_part}")
        };
        if negative && body.bytes().any(|b| (b'1'..=b'9').contains(&b)) {
            format!("-{body}")
        } else {
            body
        }
    }

    /// Parses the [`Display`](fmt::Display) form `"p"`, `"p + r*sqrt(D)"` or
    /// `"p - r*sqrt(D)"` into `field`. The radicand must match the field.
    pub fn parse(field: &Arc<QuadField>, s: &str) -> Result<QuadElem> {
        parse_quad_in(field, s)
    }
}

fn sign_of(x: &Rational) -> Ordering {
    if x.is_zero() {
        Ordering::Equal
    } else if x.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

fn parse_quad_in(field: &Arc<QuadField>, s: &str) -> Result<QuadElem> {
    let err = || Error::Parse(s.to_string());
    let t = s.trim();
    if !t.contains("sqrt(") {
        return Ok(QuadElem::from_rational(field, parse_rational(t)?));
    }
    let (p, rest, negate) = if let Some((p, rest)) = t.rsplit_once(" + ") {
        (p, rest, false)
    } else if let Some((p, rest)) = t.rsplit_once(" - ") {
        (p, rest, true)
    } else {
        return Err(err());
    };
    let (r, radicand) = rest.split_once("*sqrt(").ok_or_else(err)?;
    let radicand = radicand.strip_suffix(')').ok_or_else(err)?;
    if parse_rational(radicand)? != field.delta {
        return Err(Error::FieldMismatch {
            left: Box::new(field.delta.clone()),
            right: Box::new(parse_rational(radicand)?),
        });
    }
    let p = parse_rational(p)?;
    let mut r = parse_rational(r)?;
    if negate {
        r = -r;
    }
    Ok(QuadElem::new(field, p, r))
}

/// Parses `"p + r*sqrt(D)"` (or a plain rational) building the field from `D`.
/// A plain rational lands in the degenerate field `Q(sqrt(0))`.
pub fn parse_quad(s: &str) -> Result<QuadElem> {
    let delta = match s.split_once("sqrt(") {
        Some((_, tail)) => parse_rational(tail.trim().strip_suffix(')').unwrap_or(tail))?,
        None => Rational::zero(),
    };
    parse_quad_in(&QuadField::new(delta)?, s)
}

/// Exact sign as `-1`, `0` or `+1`.
pub fn quad_sign(x: &QuadElem) -> i8 {
    match x.sign() {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

impl PartialEq for QuadElem {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.rat == other.rat && self.surd == other.surd
    }
}

impl Eq for QuadElem {}

impl PartialOrd for QuadElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.checked_cmp(other).ok()
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() {
            return write!(f, "{}", self.rat);
        }
        let op = if self.surd.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{} {} {}*sqrt({})",
            self.rat,
            op,
            self.surd.abs(),
            self.field.delta
        )
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem {
            rat: -&self.rat,
            surd: -&self.surd,
            field: Arc::clone(&self.field),
        }
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        -&self
    }
}

// Operator forms panic on mixed fields or division by zero; use the
// `checked_*` methods where either can legitimately happen.
macro_rules! quad_binop {
    ($Trait:ident, $method:ident, $checked:ident) => {
        impl $Trait<&QuadElem> for &QuadElem {
            type Output = QuadElem;
            fn $method(self, rhs: &QuadElem) -> QuadElem {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $Trait<QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $method(self, rhs: QuadElem) -> QuadElem {
                (&self).$method(&rhs)
            }
        }
        impl $Trait<&QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $method(self, rhs: &QuadElem) -> QuadElem {
                (&self).$method(rhs)
            }
        }
        impl $Trait<QuadElem> for &QuadElem {
            type Output = QuadElem;
            fn $method(self, rhs: QuadElem) -> QuadElem {
                self.$method(&rhs)
            }
        }
        impl $Trait<&Rational> for &QuadElem {
            type Output = QuadElem;
            fn $method(self, rhs: &Rational) -> QuadElem {
                self.$method(&QuadElem::from_rational(&self.field, rhs.clone()))
            }
        }
        impl $Trait<&Rational> for QuadElem {
            type Output = QuadElem;
            fn $method(self, rhs: &Rational) -> QuadElem {
                (&self).$method(rhs)
            }
        }
    };
}

quad_binop!(Add, add, checked_add);
quad_binop!(Sub, sub, checked_sub);
quad_binop!(Mul, mul, checked_mul);
quad_binop!(Div, div, checked_div);
