//! Discrete signed measures with finitely many head atoms and geometric
//! atom families, and the specific measures whose moments are the
//! finite continued fractions `s_n(a, b, w)`.
//!
//! With `q`, `alpha`, `beta` from [`derived_constants`] and
//! `c = (1/a)(1/q - q)`:
//!
//! ```text
//! mu  = (1/a)(1 - q) d_1 + c * sum_k alpha^{k+1} d_{q^{k+1}}
//! nu  = (1/a)(1 - q) d_1 + c * sum_k beta^{k+1}  d_{q^{k+1}}
//! rho = (mu + reflect(mu))/2 + (nu - reflect(nu))/2
//!     = (1/a)(1 - q) d_1
//!       + (c/2) sum_k (alpha^{k+1} + beta^{k+1}) d_{q^{k+1}}
//!                   + (alpha^{k+1} - beta^{k+1}) d_{-q^{k+1}}
//! ```
//!
//! `rho` has moments `s_n`; `mu` carries the even ones and `nu` the odd ones.
//! Everything is exact in `Q(sqrt(a^2 b^2 + 4ab))`.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cfrac::{derived_constants, CfParams, GenFibParams};
use crate::error::{Error, Result};
use crate::exactnum::{rat, QuadElem, QuadField, Rational};

/// A weighted Dirac mass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub location: QuadElem,
    pub weight: QuadElem,
}

impl Atom {
    pub fn new(location: QuadElem, weight: QuadElem) -> Atom {
        Atom { location, weight }
    }

    fn within_unit_interval(&self) -> bool {
        (&QuadElem::one(self.location.field()) - &self.location.abs()).sign() != Ordering::Less
    }
}

/// The atoms `scale * ratio_weight^{k+1}` at `±ratio_location^{k+1}`, `k >= 0`,
/// with the minus sign when the family is mirrored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricAtomFamily {
    scale: QuadElem,
    ratio_weight: QuadElem,
    ratio_location: QuadElem,
    mirrored: bool,
}

impl GeometricAtomFamily {
    /// Both ratios must lie strictly inside `(-1, 1)`.
    pub fn new(scale: QuadElem, ratio_weight: QuadElem, ratio_location: QuadElem) -> Result<Self> {
        let one = QuadElem::one(scale.field());
        for (name, r) in [
            ("ratio_weight", &ratio_weight),
            ("ratio_location", &ratio_location),
        ] {
            if !(&one - &r.abs()).is_positive() {
                return Err(Error::InvariantViolation(format!(
                    "geometric family {name} = {r} must satisfy |{name}| < 1"
                )));
            }
        }
        Ok(GeometricAtomFamily {
            scale,
            ratio_weight,
            ratio_location,
            mirrored: false,
        })
    }

    /// The same family with every location negated.
    pub fn mirrored(&self) -> Self {
        GeometricAtomFamily {
            mirrored: !self.mirrored,
            ..self.clone()
        }
    }

    pub fn is_mirrored(&self) -> bool {
        self.mirrored
    }

    pub fn scale(&self) -> &QuadElem {
        &self.scale
    }

    pub fn ratio_weight(&self) -> &QuadElem {
        &self.ratio_weight
    }

    pub fn ratio_location(&self) -> &QuadElem {
        &self.ratio_location
    }

    /// Atom number `k` (counting from zero).
    pub fn atom(&self, k: u32) -> Atom {
        let location = self.ratio_location.pow(k + 1);
        Atom {
            location: if self.mirrored { -location } else { location },
            weight: &self.scale * &self.ratio_weight.pow(k + 1),
        }
    }

    /// `ratio_weight * ratio_location^n`, the common ratio of the n-th moment series.
    fn moment_ratio(&self, n: u32) -> QuadElem {
        &self.ratio_weight * &self.ratio_location.pow(n)
    }

    /// `scale * t / (1 - t)` with `t = ratio_weight * ratio_location^n`,
    /// negated for odd `n` when mirrored.
    pub fn moment(&self, n: u32) -> QuadElem {
        let t = self.moment_ratio(n);
        let one = QuadElem::one(t.field());
        &self.signed_scale(n) * &(&t / &(&one - &t))
    }

    fn signed_scale(&self, n: u32) -> QuadElem {
        if self.mirrored && n % 2 == 1 {
            -&self.scale
        } else {
            self.scale.clone()
        }
    }
}

/// A signed measure given by finitely many atoms plus geometric families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteSignedMeasure {
    field: Arc<QuadField>,
    head_atoms: Vec<Atom>,
    families: Vec<GeometricAtomFamily>,
    unit_supported: bool,
}

impl DiscreteSignedMeasure {
    /// A measure supported in `[-1, 1]`; head atoms outside it are rejected.
    pub fn new(
        field: &Arc<QuadField>,
        head_atoms: Vec<Atom>,
        families: Vec<GeometricAtomFamily>,
    ) -> Result<Self> {
        let m = Self::build(field, head_atoms, families, true)?;
        if let Some(bad) = m.head_atoms.iter().find(|a| !a.within_unit_interval()) {
            return Err(Error::InvariantViolation(format!(
                "atom at {} lies outside [-1, 1]",
                bad.location
            )));
        }
        Ok(m)
    }

    /// A measure with no support restriction on its head atoms. The result
    /// reports `false` from [`Self::is_supported_in_unit_interval`].
    pub fn new_unbounded(
        field: &Arc<QuadField>,
        head_atoms: Vec<Atom>,
        families: Vec<GeometricAtomFamily>,
    ) -> Result<Self> {
        Self::build(field, head_atoms, families, false)
    }

    fn build(
        field: &Arc<QuadField>,
        head_atoms: Vec<Atom>,
        families: Vec<GeometricAtomFamily>,
        unit_supported: bool,
    ) -> Result<Self> {
        let probe = QuadElem::zero(field);
        let elems = head_atoms
            .iter()
            .flat_map(|a| [&a.location, &a.weight])
            .chain(
                families
                    .iter()
                    .flat_map(|f| [&f.scale, &f.ratio_weight, &f.ratio_location]),
            );
        for e in elems {
            if !e.same_field(&probe) {
                return Err(Error::FieldMismatch {
                    left: Box::new(field.delta().clone()),
                    right: Box::new(e.delta().clone()),
                });
            }
        }
        Ok(DiscreteSignedMeasure {
            field: Arc::clone(field),
            head_atoms,
            families,
            unit_supported,
        })
    }

    pub fn field(&self) -> &Arc<QuadField> {
        &self.field
    }

    pub fn head_atoms(&self) -> &[Atom] {
        &self.head_atoms
    }

    pub fn families(&self) -> &[GeometricAtomFamily] {
        &self.families
    }

    pub fn is_supported_in_unit_interval(&self) -> bool {
        self.unit_supported
    }

    /// Mirror image under `t -> -t`.
    pub fn reflect(&self) -> Self {
        DiscreteSignedMeasure {
            field: Arc::clone(&self.field),
            head_atoms: self
                .head_atoms
                .iter()
                .map(|a| Atom::new(-&a.location, a.weight.clone()))
                .collect(),
            families: self
                .families
                .iter()
                .map(GeometricAtomFamily::mirrored)
                .collect(),
            unit_supported: self.unit_supported,
        }
    }

    /// Every weight multiplied by `c`.
    pub fn scaled(&self, c: &QuadElem) -> Self {
        DiscreteSignedMeasure {
            field: Arc::clone(&self.field),
            head_atoms: self
                .head_atoms
                .iter()
                .map(|a| Atom::new(a.location.clone(), &a.weight * c))
                .collect(),
            families: self
                .families
                .iter()
                .map(|f| GeometricAtomFamily {
                    scale: &f.scale * c,
                    ..f.clone()
                })
                .collect(),
            unit_supported: self.unit_supported,
        }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        let mut head_atoms = self.head_atoms.clone();
        head_atoms.extend(other.head_atoms.iter().cloned());
        let mut families = self.families.clone();
        families.extend(other.families.iter().cloned());
        Self::build(
            &self.field,
            head_atoms,
            families,
            self.unit_supported && other.unit_supported,
        )
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.scaled(&-QuadElem::one(&other.field)))
    }

    /// Canonical presentation: head atoms merged by location, families
    /// merged by `(ratio_weight, ratio_location)`, zero terms dropped, and
    /// both lists sorted. Two presentations of the same sum of terms
    /// become structurally equal.
    pub fn canonical(&self) -> Self {
        let mut head: Vec<Atom> = Vec::new();
        for a in &self.head_atoms {
            match head.iter_mut().find(|h| h.location == a.location) {
                Some(h) => h.weight = &h.weight + &a.weight,
                None => head.push(a.clone()),
            }
        }
        head.retain(|a| !a.weight.is_zero());
        head.sort_by(|x, y| structural_cmp(&x.location, &y.location));

        let mut families: Vec<GeometricAtomFamily> = Vec::new();
        for f in &self.families {
            match families.iter_mut().find(|g| {
                g.ratio_weight == f.ratio_weight
                    && g.ratio_location == f.ratio_location
                    && g.mirrored == f.mirrored
            }) {
                Some(g) => g.scale = &g.scale + &f.scale,
                None => families.push(f.clone()),
            }
        }
        families.retain(|f| !f.scale.is_zero() && !f.ratio_weight.is_zero());
        families.sort_by(|x, y| {
            x.mirrored
                .cmp(&y.mirrored)
                .then_with(|| structural_cmp(&x.ratio_location, &y.ratio_location))
                .then_with(|| structural_cmp(&x.ratio_weight, &y.ratio_weight))
        });

        DiscreteSignedMeasure {
            field: Arc::clone(&self.field),
            head_atoms: head,
            families,
            unit_supported: self.unit_supported,
        }
    }

    /// The head atoms and the first `per_family` atoms of every family,
    /// merged by location and sorted, with zero weights dropped.
    pub fn atoms(&self, per_family: u32) -> Vec<Atom> {
        let mut all: Vec<Atom> = Vec::new();
        let expanded = self.head_atoms.iter().cloned().chain(
            self.families
                .iter()
                .flat_map(|f| (0..per_family).map(|k| f.atom(k))),
        );
        for a in expanded {
            match all.iter_mut().find(|h| h.location == a.location) {
                Some(h) => h.weight = &h.weight + &a.weight,
                None => all.push(a),
            }
        }
        all.retain(|a| !a.weight.is_zero());
        all.sort_by(|x, y| structural_cmp(&x.location, &y.location));
        all
    }

    /// Exact n-th moment: head atoms directly, each family summed as a
    /// geometric series.
    pub fn moment_closed(&self, n: u32) -> QuadElem {
        let head = self
            .head_atoms
            .iter()
            .fold(QuadElem::zero(&self.field), |acc, a| {
                &acc + &(&a.weight * &a.location.pow(n))
            });
        self.families
            .iter()
            .fold(head, |acc, f| &acc + &f.moment(n))
    }

    /// Partial sum over the first `terms` atoms of each family, plus a
    /// rigorous bound `sum |scale| g^{terms+1} / (1 - g)`, `g >= |t|`, on
    /// what was left out. The bound is rational: `|scale|` and `|t|` are
    /// replaced by decimal upper bounds good to nine significant digits and
    /// each term is rounded up to fifteen.
    pub fn moment_truncated(&self, n: u32, terms: u32) -> Result<TruncatedMoment> {
        if terms == 0 {
            return Err(Error::InvalidParameter {
                name: "K",
                value: "0".into(),
                requirement: "must be positive (> 0)",
            });
        }
        let head = self
            .head_atoms
            .iter()
            .fold(QuadElem::zero(&self.field), |acc, a| {
                &acc + &(&a.weight * &a.location.pow(n))
            });
        let delta = self.field.delta();
        let mut value = Cleared::from_quad(&head);
        let mut tail_bound = Rational::zero();
        for f in &self.families {
            let t = f.moment_ratio(n);
            let partial = geometric_partial_sum(&t, terms);
            value = value.add(&Cleared::from_quad(&f.signed_scale(n)).mul(&partial, delta));
            tail_bound += tail_term(&f.scale, &t, terms);
        }
        Ok(TruncatedMoment {
            value: value.into_quad(&self.field),
            tail_bound: QuadElem::from_rational(&self.field, tail_bound),
        })
    }

    /// Zeroth moment.
    pub fn mass(&self) -> QuadElem {
        self.moment_closed(0)
    }
}

/// `(x + y sqrt(delta)) / den` with integer parts and `den > 0`, not reduced.
/// Long sums stay in this form so that no gcd is taken until the end.
struct Cleared {
    x: BigInt,
    y: BigInt,
    den: BigInt,
}

impl Cleared {
    fn from_quad(q: &QuadElem) -> Cleared {
        let (p, r) = (q.rat_part(), q.surd_part());
        let den = p.denom().lcm(r.denom());
        Cleared {
            x: p.numer() * (&den / p.denom()),
            y: r.numer() * (&den / r.denom()),
            den,
        }
    }

    fn mul(&self, other: &Cleared, delta: &Rational) -> Cleared {
        let (e, f) = (delta.numer(), delta.denom());
        Cleared {
            x: f * (&self.x * &other.x) + e * (&self.y * &other.y),
            y: f * (&self.x * &other.y + &self.y * &other.x),
            den: f * (&self.den * &other.den),
        }
    }

    fn add(&self, other: &Cleared) -> Cleared {
        if self.den == other.den {
            return Cleared {
                x: &self.x + &other.x,
                y: &self.y + &other.y,
                den: self.den.clone(),
            };
        }
        Cleared {
            x: &self.x * &other.den + &other.x * &self.den,
            y: &self.y * &other.den + &other.y * &self.den,
            den: &self.den * &other.den,
        }
    }

    fn into_quad(self, field: &Arc<QuadField>) -> QuadElem {
        QuadElem::new(
            field,
            Rational::new(self.x, self.den.clone()),
            Rational::new(self.y, self.den),
        )
    }
}

/// `t + t^2 + ... + t^terms`, summed term by term with Horner's rule.
fn geometric_partial_sum(t: &QuadElem, terms: u32) -> Cleared {
    let step = Cleared::from_quad(t);
    // holds 1 + t + ... + t^{j-1} before pass j
    let mut acc = Cleared {
        x: if terms == 0 {
            BigInt::zero()
        } else {
            BigInt::one()
        },
        y: BigInt::zero(),
        den: BigInt::one(),
    };
    for j in 1..=terms {
        acc = step.mul(&acc, t.delta());
        if j < terms {
            acc.x += &acc.den;
        }
    }
    acc
}

/// Significant digits kept by the decimal upper bounds below.
const BOUND_DIGITS: u32 = 15;

/// An upper bound `|scale| g^{terms+1} / (1 - g)` on the tail of one
/// family, with `g >= |t|`, rounded up to a short decimal.
fn tail_term(scale: &QuadElem, t: &QuadElem, terms: u32) -> Rational {
    if t.is_zero() || scale.is_zero() {
        return Rational::zero();
    }
    let (g, g_exp) = decimal_upper_bound(&t.abs());
    let (s, s_exp) = decimal_upper_bound(&scale.abs());
    let ten = BigInt::from(10);
    // 1/(1 - g) = 10^g_exp / (10^g_exp - g) <= c / 10^BOUND_DIGITS
    let unit = ten.pow(g_exp);
    let c = ceil_div(&(&unit * ten.pow(BOUND_DIGITS)), &(&unit - &g));
    let numer = s * g.pow(terms + 1) * c;
    round_up(numer, s_exp + g_exp * (terms + 1) + BOUND_DIGITS)
}

/// `(m, e)` with `m / 10^e >= x` for `x >= 0` and `m` carrying at least
/// nine significant digits, so the bound is within a relative `1e-9` of `x`.
/// When `x < 1` the bound stays below 1.
fn decimal_upper_bound(x: &QuadElem) -> (BigInt, u32) {
    let ten = BigInt::from(10);
    let floor_target = ten.pow(9);
    let below_one = x < &QuadElem::one(x.field());
    let mut digits = 12u32;
    loop {
        let scale = ten.pow(digits);
        let fl = x.scale(&Rational::from_integer(scale.clone())).floor();
        let m = fl.clone() + 1;
        if fl >= floor_target && (!below_one || m < scale) {
            return (m, digits);
        }
        digits += 12;
    }
}

fn ceil_div(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_rem(d);
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

/// The smallest `m / 10^k >= n / 10^exp` with `m` at most `BOUND_DIGITS`
/// digits long (or exactly `n / 10^exp` when `n` is that short). `n >= 0`.
fn round_up(n: BigInt, exp: u32) -> Rational {
    let ten = BigInt::from(10);
    // n has at least floor((bits - 1) log10 2) + 1 decimal digits
    let digits = ((n.bits().max(1) - 1) as f64 * std::f64::consts::LOG10_2) as u32 + 1;
    let drop = digits.saturating_sub(BOUND_DIGITS);
    let m = ceil_div(&n, &ten.pow(drop));
    if drop >= exp {
        Rational::from_integer(m * ten.pow(drop - exp))
    } else {
        Rational::new(m, ten.pow(exp - drop))
    }
}

fn structural_cmp(x: &QuadElem, y: &QuadElem) -> Ordering {
    x.rat_part()
        .cmp(y.rat_part())
        .then_with(|| x.surd_part().cmp(y.surd_part()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedMoment {
    pub value: QuadElem,
    pub tail_bound: QuadElem,
}

pub fn reflect(m: &DiscreteSignedMeasure) -> DiscreteSignedMeasure {
    m.reflect()
}

pub fn moment_closed(m: &DiscreteSignedMeasure, n: u32) -> QuadElem {
    m.moment_closed(n)
}

pub fn moment_truncated(m: &DiscreteSignedMeasure, n: u32, terms: u32) -> Result<TruncatedMoment> {
    m.moment_truncated(n, terms)
}

struct RhoPieces {
    head_weight: QuadElem,
    family_scale: QuadElem,
    q: QuadElem,
    alpha: QuadElem,
    beta: QuadElem,
}

fn rho_pieces(params: &CfParams) -> Result<RhoPieces> {
    let k = derived_constants(params)?;
    let field = params.field();
    let one = QuadElem::one(field);
    let inv_a = params.a().recip();
    let head_weight = (&one - &k.q).scale(&inv_a);
    let family_scale = (&k.q.recip()? - &k.q).scale(&inv_a);
    Ok(RhoPieces {
        head_weight,
        family_scale,
        q: k.q,
        alpha: k.alpha,
        beta: k.beta,
    })
}

/// The measures `mu` (even moments) and `nu` (odd moments).
pub fn build_mu_nu(params: &CfParams) -> Result<(DiscreteSignedMeasure, DiscreteSignedMeasure)> {
    let p = rho_pieces(params)?;
    let field = params.field();
    let head = vec![Atom::new(QuadElem::one(field), p.head_weight.clone())];
    let mu = DiscreteSignedMeasure::new(
        field,
        head.clone(),
        vec![GeometricAtomFamily::new(
            p.family_scale.clone(),
            p.alpha,
            p.q.clone(),
        )?],
    )?;
    let nu = DiscreteSignedMeasure::new(
        field,
        head,
        vec![GeometricAtomFamily::new(p.family_scale, p.beta, p.q)?],
    )?;
    Ok((mu, nu))
}

/// `rho` written out term by term: one head atom at 1 and four families.
pub fn build_rho(params: &CfParams) -> Result<DiscreteSignedMeasure> {
    let p = rho_pieces(params)?;
    let field = params.field();
    let half = p.family_scale.scale(&rat(1, 2));
    DiscreteSignedMeasure::new(
        field,
        vec![Atom::new(QuadElem::one(field), p.head_weight)],
        vec![
            GeometricAtomFamily::new(half.clone(), p.alpha.clone(), p.q.clone())?,
            GeometricAtomFamily::new(half.clone(), p.beta.clone(), p.q.clone())?,
            GeometricAtomFamily::new(half.clone(), p.alpha, p.q.clone())?.mirrored(),
            GeometricAtomFamily::new(-half, p.beta, p.q)?.mirrored(),
        ],
    )
}

/// `rho` assembled as `(mu + reflect(mu))/2 + (nu - reflect(nu))/2`.
pub fn assemble_rho(params: &CfParams) -> Result<DiscreteSignedMeasure> {
    let (mu, nu) = build_mu_nu(params)?;
    let half = QuadElem::from_rational(params.field(), rat(1, 2));
    let even = mu.plus(&mu.reflect())?.scaled(&half);
    let odd = nu.minus(&nu.reflect())?.scaled(&half);
    even.plus(&odd)
}

/// Outcome of the positivity test for `rho`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityVerdict {
    pub is_positive: bool,
    pub cond_alpha_nonneg: bool,
    pub cond_a_ge_b: bool,
    /// `w >= -b/2 + sqrt((b/2)^2 + b/a)`, i.e. `a w^2 + ab w - b >= 0`.
    pub cond_w1: bool,
    /// `w >= -(a+b)/4 + sqrt(((a+b)/4)^2 + 1)`, i.e. `w^2 + w(a+b)/2 - 1 >= 0`.
    pub cond_w2: bool,
    pub alpha: QuadElem,
    pub beta: QuadElem,
}

/// Decides whether `rho` is a positive measure.
///
/// The weights of `rho` are `alpha^{k+1} ± beta^{k+1}` times a positive
/// constant, so `rho >= 0` iff `alpha >= 0` and `-alpha <= beta <= alpha`.
/// Each of those three sign conditions is also checked against its
/// parameter-level equivalent: `alpha >= 0` against `cond_w1`,
/// `beta <= alpha` against `cond_w2`, and (only for `w > 0`)
/// `-beta <= alpha` against `a >= b`. Any disagreement is an error.
pub fn classify_positivity(params: &CfParams) -> Result<PositivityVerdict> {
    let k = derived_constants(params)?;
    let (a, b, w) = (params.a(), params.b(), params.w());

    let alpha_nonneg = !k.alpha.is_negative();
    let beta_ge_neg_alpha = !(&k.alpha + &k.beta).is_negative();
    let alpha_ge_beta = !(&k.alpha - &k.beta).is_negative();

    let zero = Rational::from_integer(0.into());
    let cond_a_ge_b = a >= b;
    let cond_w1 = a * w * w + a * b * w - b >= zero;
    let cond_w2 = w * w + w * (a + b) / rat(2, 1) - Rational::one() >= zero;

    let mismatch = |what: &str, sign: bool, surface: bool| {
        Error::InvariantViolation(format!(
            "{what}: sign test says {sign}, parameter test says {surface} for (a, b, w) = ({a}, {b}, {w})"
        ))
    };
    if alpha_nonneg != cond_w1 {
        return Err(mismatch("alpha >= 0", alpha_nonneg, cond_w1));
    }
    if alpha_ge_beta != cond_w2 {
        return Err(mismatch("alpha >= beta", alpha_ge_beta, cond_w2));
    }
    if w > &zero && beta_ge_neg_alpha != cond_a_ge_b {
        return Err(mismatch("-beta <= alpha", beta_ge_neg_alpha, cond_a_ge_b));
    }

    Ok(PositivityVerdict {
        is_positive: alpha_nonneg && beta_ge_neg_alpha && alpha_ge_beta,
        cond_alpha_nonneg: alpha_nonneg,
        cond_a_ge_b,
        cond_w1,
        cond_w2,
        alpha: k.alpha,
        beta: k.beta,
    })
}

/// `e^{-theta}` for `2 sinh(theta) = a`, as `(sqrt(a^2 + 4) - a)/2`, placed in
/// the field of the parameters `(a, a, 1/a)`.
pub fn exp_neg_theta(p: &GenFibParams) -> Result<QuadElem> {
    let a = p.a();
    let small = QuadField::new(a * a + rat(4, 1))?;
    let e = QuadElem::new(&small, -a / rat(2, 1), rat(1, 2));
    e.embed_into(p.cf_params().field())
}

/// The measure with moments `F_{n+1}(theta)/F_{n+2}(theta)`:
/// `e^{-theta} d_1 + 2 cosh(theta) sum_{k>=1} e^{-4k theta} d_{(-1)^k e^{-2k theta}}`.
pub fn mu_theta(p: &GenFibParams) -> Result<DiscreteSignedMeasure> {
    let e = exp_neg_theta(p)?;
    let field = Arc::clone(e.field());
    let two_cosh = &e.recip()? + &e;
    let q = &e * &e;
    DiscreteSignedMeasure::new(
        &field,
        vec![Atom::new(QuadElem::one(&field), e)],
        vec![GeometricAtomFamily::new(two_cosh, &q * &q, -q)?],
    )
}

/// `(2 sinh theta) d_1 + mu_theta`, with moments `F_{n+3}(theta)/F_{n+2}(theta)`.
pub fn nu_theta(p: &GenFibParams) -> Result<DiscreteSignedMeasure> {
    let mu = mu_theta(p)?;
    let field = Arc::clone(mu.field());
    let shift = DiscreteSignedMeasure::new(
        &field,
        vec![Atom::new(
            QuadElem::one(&field),
            QuadElem::from_rational(&field, p.a().clone()),
        )],
        vec![],
    )?;
    shift.plus(&mu)
}

/// The probability measure `phi d_1 + sqrt(5) sum_{k>=1} phi^{4k} d_{(-1)^k phi^{2k}}`,
/// `phi = (sqrt(5) - 1)/2`, whose moments are `F_{n+1}/F_{n+2}`.
pub fn golden_ratio_measure() -> DiscreteSignedMeasure {
    let field = QuadField::new(rat(5, 1)).expect("5 > 0");
    let phi = QuadElem::new(&field, rat(-1, 2), rat(1, 2));
    let phi2 = &phi * &phi;
    DiscreteSignedMeasure::new(
        &field,
        vec![Atom::new(QuadElem::one(&field), phi)],
        vec![
            GeometricAtomFamily::new(QuadElem::sqrt_delta(&field), &phi2 * &phi2, -phi2)
                .expect("phi^4 and phi^2 lie in (0, 1)"),
        ],
    )
    .expect("atoms lie in [-1, 1]")
}

/// The two-atom measure with moments `F_{n+1}` from the Binet formula.
/// Its atoms lie outside `[-1, 1]`.
pub fn binet_tau() -> DiscreteSignedMeasure {
    let field = QuadField::new(rat(5, 1)).expect("5 > 0");
    let atoms = vec![
        Atom::new(
            QuadElem::new(&field, rat(1, 2), rat(1, 2)),
            QuadElem::new(&field, rat(1, 2), rat(1, 10)),
        ),
        Atom::new(
            QuadElem::new(&field, rat(1, 2), rat(-1, 2)),
            QuadElem::new(&field, rat(1, 2), rat(-1, 10)),
        ),
    ];
    DiscreteSignedMeasure::new_unbounded(&field, atoms, vec![]).expect("single field")
}
