//! Exact rational intervals `[mid - radius, mid + radius]`.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::algebra::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub mid: Rational,
    pub radius: Rational,
}

impl Interval {
    pub fn new(mid: Rational, radius: Rational) -> Self {
        assert!(!radius.is_negative(), "negative radius");
        Interval { mid, radius }
    }

    pub fn exact(mid: Rational) -> Self {
        Interval { mid, radius: Rational::zero() }
    }

    pub fn lo(&self) -> Rational {
        &self.mid - &self.radius
    }

    pub fn hi(&self) -> Rational {
        &self.mid + &self.radius
    }

    pub fn contains(&self, x: &Rational) -> bool {
        (x - &self.mid).abs() <= self.radius
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rational::zero())
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        (&self.mid - &other.mid).abs() <= &self.radius + &other.radius
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval::new(&self.mid + &o.mid, &self.radius + &o.radius)
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval::new(&self.mid - &o.mid, &self.radius + &o.radius)
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        Interval::new(&self.mid * c, &self.radius * c.abs())
    }

    /// Encloses `{ab : a ∈ self, b ∈ o}`.
    pub fn mul(&self, o: &Interval) -> Interval {
        let radius = &self.mid.abs() * &o.radius + &o.mid.abs() * &self.radius + &self.radius * &o.radius;
        Interval::new(&self.mid * &o.mid, radius)
    }

    /// Determinant of a square matrix of intervals by cofactor expansion.
    pub fn determinant(m: &[Vec<Interval>]) -> Interval {
        let n = m.len();
        match n {
            0 => Interval::exact(Rational::from_integer(1.into())),
            1 => m[0][0].clone(),
            _ => {
                let mut acc = Interval::exact(Rational::zero());
                for (j, entry) in m[0].iter().enumerate() {
                    let minor: Vec<Vec<Interval>> = m[1..]
                        .iter()
                        .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect())
                        .collect();
                    let term = entry.mul(&Interval::determinant(&minor));
                    acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
                acc
            }
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", format_rational(&self.mid), format_rational(&self.radius))
    }
}
