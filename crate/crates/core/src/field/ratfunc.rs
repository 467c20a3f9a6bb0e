use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{FieldError, Poly, Rat};

/// How much is known about membership of a value in the positive cone F⁺.
///
/// The ordering is by strength: `Unchecked < Sampled < Structural`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Positivity {
    /// No information.
    Unchecked,
    /// Passed the sampled positivity check on the positive real axis.
    Sampled,
    /// Built from R/L/C constructors with sums, products and quotients.
    Structural,
}

/// An element of Q(s), kept in canonical form: `gcd(num, den) = 1` and `den`
/// monic. Two values are equal as field elements iff their canonical parts
/// are identical, so `PartialEq` compares `num` and `den` only; the
/// positivity witness does not take part in equality or hashing.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
    witness: Positivity,
}

/// Field operations accepted by [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

/// Component kind for [`impedance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Resistor,
    Inductor,
    Capacitor,
}

impl ComponentKind {
    pub fn letter(self) -> char {
        match self {
            ComponentKind::Resistor => 'R',
            ComponentKind::Inductor => 'L',
            ComponentKind::Capacitor => 'C',
        }
    }
}

/// Builds the canonical quotient `num / den`.
pub fn rat_func(num: Poly, den: Poly) -> Result<RatFunc, FieldError> {
    if den.is_zero() {
        return Err(FieldError::ZeroDenominator);
    }
    Ok(RatFunc::reduce(num, den, Positivity::Unchecked))
}

/// Applies `op` to `a` (and `b` for the binary operations; `b` is ignored
/// for `Neg` and `Inv`).
pub fn field_arith(a: &RatFunc, b: &RatFunc, op: FieldOp) -> Result<RatFunc, FieldError> {
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => a.try_div(b)?,
        FieldOp::Neg => -a,
        FieldOp::Inv => a.inv()?,
    })
}

/// Evaluates `f` at the rational point `sigma`.
pub fn eval_at(f: &RatFunc, sigma: &Rat) -> Result<Rat, FieldError> {
    let d = f.den.eval(sigma);
    if d.is_zero() {
        return Err(FieldError::PoleAtPoint(sigma.to_string()));
    }
    Ok(f.num.eval(sigma) / d)
}

/// Impedance of a resistor (`R`), inductor (`sL`) or capacitor (`1/(sC)`).
pub fn impedance(kind: ComponentKind, value: &Rat) -> Result<RatFunc, FieldError> {
    if !value.is_positive() {
        return Err(FieldError::NonPositiveValue(value.to_string()));
    }
    let z = match kind {
        ComponentKind::Resistor => RatFunc::from_rat(value.clone()),
        ComponentKind::Inductor => RatFunc::from_poly(Poly::monomial(value.clone(), 1)),
        ComponentKind::Capacitor => RatFunc::reduce(
            Poly::one(),
            Poly::monomial(value.clone(), 1),
            Positivity::Unchecked,
        ),
    };
    Ok(z.with_witness(Positivity::Structural))
}

/// Sample grid used when a raw impedance has to be vetted.
pub fn default_sample_points() -> Vec<Rat> {
    [(1, 3), (1, 2), (1, 1), (2, 1), (3, 1), (7, 1)]
        .iter()
        .map(|&(n, d)| Rat::new(BigInt::from(n), BigInt::from(d)))
        .collect()
}

/// Necessary condition for positive-realness: `f(σ) > 0` at every sample
/// point. Zero is never positive.
pub fn is_positive_sampled(f: &RatFunc, points: &[Rat]) -> Result<bool, FieldError> {
    if points.is_empty() {
        return Err(FieldError::EmptySampleSet);
    }
    let mut all = true;
    for p in points {
        if !p.is_positive() {
            return Err(FieldError::NonPositiveValue(p.to_string()));
        }
        all &= eval_at(f, p)?.is_positive();
    }
    Ok(all)
}

impl RatFunc {
    fn reduce(num: Poly, den: Poly, witness: Positivity) -> RatFunc {
        if num.is_zero() {
            return RatFunc {
                num,
                den: Poly::one(),
                witness,
            };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = Poly::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g), den.exact_div(&g))
            }
        };
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFunc { num, den, witness }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
                witness,
            }
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
            witness: Positivity::Unchecked,
        }
    }

    pub fn one() -> Self {
        RatFunc::from_rat(Rat::one())
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::from_rat(Rat::from_integer(n.into()))
    }

    pub fn from_rat(c: Rat) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
            witness: Positivity::Unchecked,
        }
    }

    /// The indeterminate `s`.
    pub fn s() -> Self {
        RatFunc::from_poly(Poly::s())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn witness(&self) -> Positivity {
        self.witness
    }

    pub fn with_witness(mut self, witness: Positivity) -> Self {
        self.witness = witness;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True for elements of Q (degree-zero numerator and denominator).
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    /// The rational value of a constant element.
    pub fn as_constant(&self) -> Option<Rat> {
        self.is_constant().then(|| self.num.constant_term())
    }

    pub fn inv(&self) -> Result<RatFunc, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(RatFunc::reduce(
            self.den.clone(),
            self.num.clone(),
            self.witness,
        ))
    }

    pub fn try_div(&self, rhs: &RatFunc) -> Result<RatFunc, FieldError> {
        Ok(self * &rhs.inv()?)
    }

    /// Samples positivity and upgrades the witness to `Sampled` on success.
    /// A `Structural` witness is never downgraded.
    pub fn vet_sampled(self, points: &[Rat]) -> Result<(RatFunc, bool), FieldError> {
        let ok = is_positive_sampled(&self, points)?;
        if ok && self.witness < Positivity::Sampled {
            Ok((self.with_witness(Positivity::Sampled), true))
        } else {
            Ok((self, ok))
        }
    }

    /// Scales numerator and denominator to coprime integer polynomials with
    /// positive leading denominator coefficient.
    pub fn integral_parts(&self) -> (Poly, Poly) {
        if self.is_zero() {
            return (Poly::zero(), Poly::one());
        }
        let l = self.num.denominator_lcm().lcm(&self.den.denominator_lcm());
        let lq = Rat::from_integer(l);
        let n = self.num.scale(&lq);
        let d = self.den.scale(&lq);
        let content = n.numerator_content().gcd(&d.numerator_content());
        let c = Rat::from_integer(content).recip();
        (n.scale(&c), d.scale(&c))
    }

    fn combine(a: Positivity, b: Positivity) -> Positivity {
        a.min(b)
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for RatFunc {}

impl Hash for RatFunc {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl PartialOrd for RatFunc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but total order on canonical forms, used only to make map keys
/// and printed output deterministic.
impl Ord for RatFunc {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |f: &RatFunc| (f.den.coeffs().len(), f.num.coeffs().len());
        key(self)
            .cmp(&key(other))
            .then_with(|| self.den.coeffs().cmp(other.den.coeffs()))
            .then_with(|| self.num.coeffs().cmp(other.num.coeffs()))
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_int(n)
    }
}

impl From<Rat> for RatFunc {
    fn from(c: Rat) -> Self {
        RatFunc::from_rat(c)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let w = RatFunc::combine(self.witness, rhs.witness);
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RatFunc {
                    num,
                    den: Poly::one(),
                    witness: w,
                };
            }
            return RatFunc::reduce(num, self.den.clone(), w);
        }
        let g = Poly::gcd(&self.den, &rhs.den);
        let a_cof = self.den.exact_div(&g);
        let b_cof = rhs.den.exact_div(&g);
        let num = &(&self.num * &b_cof) + &(&rhs.num * &a_cof);
        let den = &self.den * &b_cof;
        RatFunc::reduce(num, den, w)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        (self + &(-rhs)).with_witness(Positivity::Unchecked)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
            witness: Positivity::Unchecked,
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        let w = RatFunc::combine(self.witness, rhs.witness);
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc {
                num: &self.num * &rhs.num,
                den: Poly::one(),
                witness: w,
            };
        }
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let num = &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2);
        let den = &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1);
        // Both denominators are monic and so are the gcds, hence `den` is
        // monic already; `reduce` only normalizes the zero case.
        RatFunc::reduce(num, den, w)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::try_div`] for a checked
    /// version.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.try_div(rhs).expect("division by zero in Q(s)")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl std::iter::Sum for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(iter: I) -> RatFunc {
        iter.fold(RatFunc::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a RatFunc> for RatFunc {
    fn sum<I: Iterator<Item = &'a RatFunc>>(iter: I) -> RatFunc {
        iter.fold(RatFunc::zero(), |acc, x| acc + x)
    }
}

/// Textual form with integer coefficients. Constants print as plain
/// rationals (`2`, `-1/4`), polynomials as `3*s+1`, everything else as
/// `(num)/(den)`, e.g. `(3*s^2+2*s+2)/(s)`.
impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_constant() {
            return write!(f, "{c}");
        }
        let (n, d) = self.integral_parts();
        if d.is_one() {
            return n.write_integral(f);
        }
        f.write_str("(")?;
        n.write_integral(f)?;
        f.write_str(")/(")?;
        d.write_integral(f)?;
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn cancels_common_factor() {
        let f = rat_func(Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[-1, 1])).unwrap();
        assert_eq!(f.num(), &Poly::from_ints(&[1, 1]));
        assert!(f.den().is_one());
    }

    #[test]
    fn normalizes_to_monic_denominator() {
        let f = rat_func(Poly::one(), Poly::from_ints(&[0, 2])).unwrap();
        assert_eq!(f.num(), &Poly::constant(r(1, 2)));
        assert_eq!(f.den(), &Poly::s());
    }

    #[test]
    fn zero_has_unit_denominator() {
        let f = rat_func(Poly::zero(), Poly::from_ints(&[2, 0, 0, 1])).unwrap();
        assert!(f.is_zero());
        assert!(f.den().is_one());
        assert_eq!(f, RatFunc::zero());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            rat_func(Poly::one(), Poly::zero()),
            Err(FieldError::ZeroDenominator)
        );
    }

    #[test]
    fn arithmetic_examples() {
        let s = RatFunc::s();
        let inv_s = field_arith(&s, &s, FieldOp::Inv).unwrap();
        assert_eq!(inv_s, rat_func(Poly::one(), Poly::s()).unwrap());
        assert!(field_arith(&inv_s, &s, FieldOp::Mul).unwrap().is_one());

        let rr = impedance(ComponentKind::Resistor, &r(2, 1)).unwrap();
        let ll = impedance(ComponentKind::Inductor, &r(3, 1)).unwrap();
        let cc = impedance(ComponentKind::Capacitor, &r(1, 2)).unwrap();
        let z = &ll + &(&rr + &cc);
        let expected = rat_func(Poly::from_ints(&[2, 2, 3]), Poly::s()).unwrap();
        assert_eq!(z, expected);
        assert_eq!(z.to_string(), "(3*s^2+2*s+2)/(s)");
        assert_eq!(z.witness(), Positivity::Structural);
    }

    #[test]
    fn division_by_zero() {
        let z = RatFunc::zero();
        assert_eq!(z.inv(), Err(FieldError::DivisionByZero));
        assert_eq!(
            field_arith(&RatFunc::one(), &z, FieldOp::Div),
            Err(FieldError::DivisionByZero)
        );
    }

    #[test]
    fn evaluation() {
        let inv_s = RatFunc::s().inv().unwrap();
        assert_eq!(eval_at(&inv_s, &r(2, 1)).unwrap(), r(1, 2));
        assert!(matches!(
            eval_at(&inv_s, &r(0, 1)),
            Err(FieldError::PoleAtPoint(_))
        ));
        let z = rat_func(Poly::from_ints(&[2, 2, 3]), Poly::s()).unwrap();
        assert_eq!(eval_at(&z, &r(1, 1)).unwrap(), r(7, 1));
    }

    #[test]
    fn impedance_constructors() {
        assert_eq!(
            impedance(ComponentKind::Resistor, &r(2, 1)).unwrap(),
            RatFunc::from_int(2)
        );
        assert_eq!(
            impedance(ComponentKind::Inductor, &r(3, 1)).unwrap(),
            RatFunc::from_poly(Poly::from_ints(&[0, 3]))
        );
        assert_eq!(
            impedance(ComponentKind::Capacitor, &r(1, 2)).unwrap(),
            rat_func(Poly::from_ints(&[2]), Poly::s()).unwrap()
        );
        assert!(matches!(
            impedance(ComponentKind::Resistor, &r(0, 1)),
            Err(FieldError::NonPositiveValue(_))
        ));
        assert!(impedance(ComponentKind::Capacitor, &r(-1, 1)).is_err());
    }

    #[test]
    fn sampled_positivity() {
        let inv_s = RatFunc::s().inv().unwrap();
        assert!(is_positive_sampled(&inv_s, &[r(1, 1), r(2, 1), r(10, 1)]).unwrap());
        let f = RatFunc::from_poly(Poly::from_ints(&[-1, 1]));
        assert!(!is_positive_sampled(&f, &[r(1, 2), r(2, 1)]).unwrap());
        assert!(!is_positive_sampled(&RatFunc::zero(), &[r(1, 1)]).unwrap());
        assert_eq!(
            is_positive_sampled(&inv_s, &[]),
            Err(FieldError::EmptySampleSet)
        );
        assert!(matches!(
            is_positive_sampled(&inv_s, &[r(0, 1)]),
            Err(FieldError::NonPositiveValue(_))
        ));
    }

    #[test]
    fn witness_tracking() {
        let a = impedance(ComponentKind::Resistor, &r(1, 1)).unwrap();
        let b = impedance(ComponentKind::Capacitor, &r(1, 1)).unwrap();
        assert_eq!((&a * &b).witness(), Positivity::Structural);
        assert_eq!((&a / &b).witness(), Positivity::Structural);
        assert_eq!((&a - &b).witness(), Positivity::Unchecked);
        let raw = rat_func(Poly::from_ints(&[1, 0, 1]), Poly::from_ints(&[2, 1])).unwrap();
        let (raw, ok) = raw.vet_sampled(&default_sample_points()).unwrap();
        assert!(ok);
        assert_eq!(raw.witness(), Positivity::Sampled);
        assert_eq!((&raw + &a).witness(), Positivity::Sampled);
    }

    #[test]
    fn display_forms() {
        assert_eq!(RatFunc::from_rat(r(-1, 4)).to_string(), "-1/4");
        assert_eq!((RatFunc::s() / RatFunc::from_int(4)).to_string(), "(s)/(4)");
        assert_eq!((RatFunc::s() + RatFunc::one()).to_string(), "s+1");
        let f = rat_func(Poly::one(), Poly::from_ints(&[0, 2])).unwrap();
        assert_eq!(f.to_string(), "(1)/(2*s)");
    }
}
