//! Exact surgery slopes and slope triads.
//!
//! A [`Slope`] is a reduced rational `p/q` with `q >= 0`; the single infinite
//! slope is stored as `1/0`. All arithmetic is on arbitrary-precision
//! integers.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlopeError {
    #[error("0/0 is not a slope")]
    ZeroOverZero,
    #[error("mediant of {} and {} is degenerate: the component sum is not a primitive vector", .0.0, .0.1)]
    DegenerateMediant(Box<(Slope, Slope)>),
    #[error("slope {0} is infinite; a finite slope is required")]
    Infinite(Slope),
    #[error("slope {0} is integral; use the integer fan")]
    Integral(Slope),
    #[error("slope {0} has zero numerator")]
    ZeroNumerator(Slope),
    #[error("cannot parse slope {0:?}: expected p/q with an optional sign on p and no whitespace")]
    Parse(String),
}

/// A reduced surgery slope `p/q` with `q >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Slope {
    p: BigInt,
    q: BigInt,
}

impl Slope {
    /// Reduces `p/q` to lowest terms with a nonnegative denominator.
    /// Every `k/0` becomes `1/0`.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self, SlopeError> {
        let (p, q) = (p.into(), q.into());
        if p.is_zero() && q.is_zero() {
            return Err(SlopeError::ZeroOverZero);
        }
        if q.is_zero() {
            return Ok(Self::infinity());
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / &g, q / &g);
        if q.is_negative() {
            p = -p;
            q = -q;
        }
        Ok(Slope { p, q })
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Slope {
            p: n.into(),
            q: BigInt::one(),
        }
    }

    pub fn infinity() -> Self {
        Slope {
            p: BigInt::one(),
            q: BigInt::zero(),
        }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.q.is_one()
    }

    /// `-p/q`. The infinite slope is its own negation.
    pub fn negate(&self) -> Self {
        if self.is_infinite() {
            return self.clone();
        }
        Slope {
            p: -&self.p,
            q: self.q.clone(),
        }
    }

    /// Returns `n` when this slope is `n/1`.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.is_integral().then_some(&self.p)
    }

    pub(crate) fn require_finite(&self) -> Result<(), SlopeError> {
        if self.is_infinite() {
            Err(SlopeError::Infinite(self.clone()))
        } else {
            Ok(())
        }
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (&self.p * &other.q).cmp(&(&other.p * &self.q)),
        }
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = SlopeError;

    /// Accepts `p/q` or a bare integer `n`. Only the numerator may carry a sign.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SlopeError::Parse(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let digits = num.strip_prefix(['+', '-']).unwrap_or(num);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let p: BigInt = num.parse().map_err(|_| bad())?;
        let q: BigInt = match den {
            Some(d) if !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) => {
                d.parse().map_err(|_| bad())?
            }
            Some(_) => return Err(bad()),
            None => BigInt::one(),
        };
        Slope::new(p, q)
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Reduced representative of `p/q`; see [`Slope::new`].
pub fn normalize(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Slope, SlopeError> {
    Slope::new(p, q)
}

/// The Farey mediant `(pa + pb)/(qa + qb)`.
///
/// The component sum must already be primitive. A sum that would need
/// reducing means `a` and `b` are not Farey neighbours, and the result is
/// rejected rather than silently renormalized.
pub fn mediant(a: &Slope, b: &Slope) -> Result<Slope, SlopeError> {
    let p = &a.p + &b.p;
    let q = &a.q + &b.q;
    if !p.gcd(&q).is_one() {
        return Err(SlopeError::DegenerateMediant(Box::new((
            a.clone(),
            b.clone(),
        ))));
    }
    Slope::new(p, q)
}

/// Signed intersection number `pa*qb - pb*qa` of the two slope curves.
pub fn triad_det(a: &Slope, b: &Slope) -> BigInt {
    &a.p * &b.q - &b.p * &a.q
}

/// Whether `(a, b, c)` is a slope triad.
///
/// Slopes are unoriented, so each may be replaced by its negative vector.
/// The triple is a triad when signs can be chosen so that the cyclic
/// determinants `det(a,b)`, `det(b,c)`, `det(c,a)` all equal `1`. That
/// happens exactly when every pairwise determinant is `±1` and their
/// product is `+1`.
pub fn is_slope_triad(a: &Slope, b: &Slope, c: &Slope) -> bool {
    let dets = [triad_det(a, b), triad_det(b, c), triad_det(c, a)];
    dets.iter().all(|d| d.abs().is_one()) && dets.iter().product::<BigInt>().is_one()
}

/// Floor with a strict convention at integers: the largest integer strictly below `r` when `r`
/// is integral, the usual floor otherwise. So `floor_slope(3) = 2`.
pub fn floor_slope(r: &Slope) -> Result<BigInt, SlopeError> {
    r.require_finite()?;
    if r.is_integral() {
        Ok(&r.p - 1)
    } else {
        Ok(r.p.div_floor(&r.q))
    }
}

/// Five slopes in the configuration used by the two exact triangles:
/// `r1 > r0 > r2`, `r3 = mediant(r0, r1)`, `r4 = mediant(r0, r3)`, and the
/// triads `(r0, r1, r2)`, `(r0, r3, r1)`, `(r0, r4, r3)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriadFan {
    pub r0: Slope,
    pub r1: Slope,
    pub r2: Slope,
    pub r3: Slope,
    pub r4: Slope,
}

impl TriadFan {
    pub fn triads(&self) -> [(&Slope, &Slope, &Slope); 3] {
        [
            (&self.r0, &self.r1, &self.r2),
            (&self.r0, &self.r3, &self.r1),
            (&self.r0, &self.r4, &self.r3),
        ]
    }

    /// Checks every structural condition of the fan.
    pub fn is_valid(&self) -> bool {
        let sums = &self.r1.p + &self.r2.p == self.r0.p && &self.r1.q + &self.r2.q == self.r0.q;
        let order = self.r1 > self.r0 && self.r0 > self.r2;
        let triads = self
            .triads()
            .iter()
            .all(|(a, b, c)| is_slope_triad(a, b, c));
        let mediants = mediant(&self.r0, &self.r1).ok().as_ref() == Some(&self.r3)
            && mediant(&self.r0, &self.r3).ok().as_ref() == Some(&self.r4);
        sums && order && triads && mediants
    }
}

impl fmt::Display for TriadFan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}; {}, {}, {}, {})",
            self.r0, self.r1, self.r2, self.r3, self.r4
        )
    }
}

/// Resolves a finite non-integral slope `p0/q0` into its two Farey parents
/// `r1 > r0 > r2`, which satisfy `p1 + p2 = p0`, `q1 + q2 = q0` and
/// `p1*q0 - p0*q1 = 1`, and extends them by mediants to a full fan.
///
/// The parents are found directly: `q1` is the unique solution of
/// `p0*q1 ≡ -1 (mod q0)` in `[1, q0 - 1]`.
pub fn farey_resolve(r0: &Slope) -> Result<TriadFan, SlopeError> {
    r0.require_finite()?;
    if r0.is_integral() {
        return Err(SlopeError::Integral(r0.clone()));
    }
    if r0.p.is_zero() {
        return Err(SlopeError::ZeroNumerator(r0.clone()));
    }
    let (p0, q0) = (&r0.p, &r0.q);
    // p0 * x ≡ 1 (mod q0)
    let egcd = p0.extended_gcd(q0);
    let inverse = (egcd.x * egcd.gcd).mod_floor(q0);
    let q1 = (q0 - inverse).mod_floor(q0);
    let p1: BigInt = (p0 * &q1 + 1) / q0;
    let r1 = Slope::new(p1.clone(), q1.clone())?;
    let r2 = Slope::new(p0 - p1, q0 - q1)?;
    let r3 = mediant(r0, &r1)?;
    let r4 = mediant(r0, &r3)?;
    Ok(TriadFan {
        r0: r0.clone(),
        r1,
        r2,
        r3,
        r4,
    })
}

/// The fan `(n; 1/0, n-1, n+1, (2n+1)/2)` used for integral surgery.
pub fn integer_fan(n: impl Into<BigInt>) -> TriadFan {
    let n = n.into();
    TriadFan {
        r0: Slope::integer(n.clone()),
        r1: Slope::infinity(),
        r2: Slope::integer(&n - 1),
        r3: Slope::integer(&n + 1),
        r4: Slope {
            p: 2 * &n + 1,
            q: BigInt::from(2),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(6, 4).unwrap(), s(3, 2));
        let r = normalize(3, -2).unwrap();
        assert_eq!((r.p(), r.q()), (&BigInt::from(-3), &BigInt::from(2)));
        assert_eq!(normalize(-5, 0).unwrap(), Slope::infinity());
        assert_eq!(normalize(0, 0), Err(SlopeError::ZeroOverZero));
        assert_eq!(normalize(0, -7).unwrap(), s(0, 1));
    }

    #[test]
    fn mediant_examples() {
        assert_eq!(mediant(&s(5, 3), &s(2, 1)).unwrap(), s(7, 4));
        assert_eq!(mediant(&Slope::infinity(), &s(3, 1)).unwrap(), s(4, 1));
        assert!(matches!(
            mediant(&s(1, 2), &s(-1, 2)),
            Err(SlopeError::DegenerateMediant(_))
        ));
        assert!(mediant(&Slope::infinity(), &Slope::infinity()).is_err());
    }

    #[test]
    fn triad_det_examples() {
        assert_eq!(triad_det(&s(2, 1), &s(5, 3)), BigInt::from(1));
        assert_eq!(triad_det(&s(7, 4), &s(7, 4)), BigInt::zero());
        for n in -5..=5 {
            assert_eq!(triad_det(&Slope::infinity(), &s(n, 1)), BigInt::one());
        }
    }

    #[test]
    fn triad_examples() {
        assert!(is_slope_triad(&s(5, 3), &s(2, 1), &s(3, 2)));
        for n in -20..=20 {
            assert!(is_slope_triad(&s(n, 1), &s(n + 1, 1), &Slope::infinity()));
        }
        assert!(!is_slope_triad(&s(1, 2), &s(1, 3), &s(1, 5)));
        // orientation matters: swapping two entries reverses it
        assert!(!is_slope_triad(&s(2, 1), &s(5, 3), &s(3, 2)));
    }

    #[test]
    fn farey_resolve_examples() {
        let fan = farey_resolve(&s(5, 3)).unwrap();
        assert_eq!(
            (&fan.r1, &fan.r2, &fan.r3, &fan.r4),
            (&s(2, 1), &s(3, 2), &s(7, 4), &s(12, 7))
        );
        assert!(fan.is_valid());
        let fan = farey_resolve(&s(1, 2)).unwrap();
        assert_eq!(
            (&fan.r1, &fan.r2, &fan.r3, &fan.r4),
            (&s(1, 1), &s(0, 1), &s(2, 3), &s(3, 5))
        );
        let fan = farey_resolve(&s(-1, 2)).unwrap();
        assert_eq!((&fan.r1, &fan.r2), (&s(0, 1), &s(-1, 1)));
        assert!(fan.is_valid());
        assert_eq!(farey_resolve(&s(3, 1)), Err(SlopeError::Integral(s(3, 1))));
        assert!(matches!(
            farey_resolve(&Slope::infinity()),
            Err(SlopeError::Infinite(_))
        ));
    }

    #[test]
    fn integer_fan_examples() {
        let fan = integer_fan(3);
        assert_eq!(
            fan,
            TriadFan {
                r0: s(3, 1),
                r1: Slope::infinity(),
                r2: s(2, 1),
                r3: s(4, 1),
                r4: s(7, 2)
            }
        );
        let fan = integer_fan(0);
        assert_eq!((&fan.r2, &fan.r3, &fan.r4), (&s(-1, 1), &s(1, 1), &s(1, 2)));
        for n in -10..=10 {
            assert!(integer_fan(n).is_valid(), "n = {n}");
        }
    }

    #[test]
    fn floor_convention() {
        assert_eq!(floor_slope(&s(5, 3)).unwrap(), BigInt::from(1));
        assert_eq!(floor_slope(&s(-1, 2)).unwrap(), BigInt::from(-1));
        assert_eq!(floor_slope(&s(3, 1)).unwrap(), BigInt::from(2));
        assert_eq!(floor_slope(&s(-3, 1)).unwrap(), BigInt::from(-4));
        assert!(floor_slope(&Slope::infinity()).is_err());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("-5/3".parse::<Slope>().unwrap(), s(-5, 3));
        assert_eq!("+6/4".parse::<Slope>().unwrap(), s(3, 2));
        assert_eq!("7".parse::<Slope>().unwrap(), s(7, 1));
        assert_eq!("1/0".parse::<Slope>().unwrap(), Slope::infinity());
        for bad in [
            "", "/3", "3/", "3/-2", " 3/2", "3 /2", "a/b", "0/0", "--1/2",
        ] {
            assert!(bad.parse::<Slope>().is_err(), "{bad:?}");
        }
        assert_eq!(s(-7, 4).to_string(), "-7/4");
        assert_eq!(Slope::infinity().to_string(), "1/0");
    }

    #[test]
    fn ordering_treats_infinity_as_largest() {
        assert!(Slope::infinity() > s(1_000_000, 1));
        assert!(s(-1, 2) < s(0, 1));
        assert!(s(7, 4) > s(12, 7));
    }
}
