use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::RootSystemError;
use crate::rational::RationalVector;
use crate::roots::{RootCandidate, RootSystem};

/// Families with integer embeddings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// `{e_i - e_j}` in the sum-zero hyperplane of `R^(n+1)`
    A,
    /// `{±e_i, ±e_i±e_j}`
    B,
    /// `{±2e_i, ±e_i±e_j}`
    C,
    /// `{±e_i±e_j}`
    D,
    /// `{e_i - e_j} ∪ {±(2e_i - e_j - e_k)}` in the sum-zero plane of `R^3`
    G2,
    /// `{±e_1, ±e_2}`
    A1xA1,
}

impl Family {
    pub const ALL: [Family; 6] = [Family::A, Family::B, Family::C, Family::D, Family::G2, Family::A1xA1];

    /// Whether `rank` is accepted for this family.
    pub fn supports_rank(self, rank: usize) -> bool {
        match self {
            Family::A | Family::B | Family::C => rank >= 1,
            Family::D => rank >= 2,
            Family::G2 | Family::A1xA1 => rank == 2,
        }
    }

    /// Rank implied by the family name alone, if any.
    pub fn fixed_rank(self) -> Option<usize> {
        matches!(self, Family::G2 | Family::A1xA1).then_some(2)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G2 => "G2",
            Family::A1xA1 => "A1xA1",
        })
    }
}

/// A family together with a rank, written like `B2`, `A3`, `G2` or `A1xA1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Designation {
    pub family: Family,
    pub rank: usize,
}

impl Designation {
    pub fn build(self) -> Result<RootSystem, RootSystemError> {
        standard_root_system(self.family, self.rank)
    }
}

impl fmt::Display for Designation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family.fixed_rank() {
            Some(_) => write!(f, "{}", self.family),
            None => write!(f, "{}{}", self.family, self.rank),
        }
    }
}

impl FromStr for Designation {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_uppercase();
        let unsupported = || RootSystemError::Unsupported {
            family: s.to_string(),
            rank: 0,
        };
        let (family, rank) = match t.as_str() {
            "G2" => (Family::G2, 2),
            "A1XA1" | "A1×A1" => (Family::A1xA1, 2),
            _ => {
                let mut chars = t.chars();
                let family = match chars.next() {
                    Some('A') => Family::A,
                    Some('B') => Family::B,
                    Some('C') => Family::C,
                    Some('D') => Family::D,
                    _ => return Err(unsupported()),
                };
                let rank: usize = chars.as_str().parse().map_err(|_| unsupported())?;
                (family, rank)
            }
        };
        if !family.supports_rank(rank) {
            return Err(RootSystemError::Unsupported {
                family: family.to_string(),
                rank,
            });
        }
        Ok(Designation { family, rank })
    }
}

/// The integer-embedded root system of the given family and rank.
///
/// `B1` is the one-dimensional system `{±1}`, whose alcove is `(0, 1)`.
pub fn standard_root_system(family: Family, rank: usize) -> Result<RootSystem, RootSystemError> {
    if !family.supports_rank(rank) {
        return Err(RootSystemError::Unsupported {
            family: family.to_string(),
            rank,
        });
    }
    let n = rank;
    let e = |dim: usize, i: usize| RationalVector::unit(dim, i);
    let mut roots = Vec::new();
    let mut support = None;
    match family {
        Family::A => {
            let d = n + 1;
            for i in 0..d {
                for j in 0..d {
                    if i != j {
                        roots.push(e(d, i).sub(&e(d, j)));
                    }
                }
            }
            support = Some((0..n).map(|i| e(d, i).sub(&e(d, i + 1))).collect());
        }
        Family::B | Family::C | Family::D => {
            for i in 0..n {
                for j in i + 1..n {
                    for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        let mut c = alloc::vec![0i64; n];
                        c[i] = si;
                        c[j] = sj;
                        roots.push(RationalVector::from_ints(&c));
                    }
                }
                let k = match family {
                    Family::B => 1,
                    Family::C => 2,
                    _ => 0,
                };
                if k > 0 {
                    let mut c = alloc::vec![0i64; n];
                    c[i] = k;
                    roots.push(RationalVector::from_ints(&c));
                    c[i] = -k;
                    roots.push(RationalVector::from_ints(&c));
                }
            }
        }
        Family::G2 => {
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        roots.push(e(3, i).sub(&e(3, j)));
                    }
                }
                let mut c = [-1i64; 3];
                c[i] = 2;
                let long = RationalVector::from_ints(&c);
                roots.push(long.neg());
                roots.push(long);
            }
            support = Some(alloc::vec![
                RationalVector::from_ints(&[1, -1, 0]),
                RationalVector::from_ints(&[0, 1, -1]),
            ]);
        }
        Family::A1xA1 => {
            for i in 0..2 {
                roots.push(e(2, i));
                roots.push(e(2, i).neg());
            }
        }
    }
    let mut candidate = RootCandidate::euclidean(roots);
    candidate.support = support;
    RootSystem::new(candidate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::validate_root_system;

    #[test]
    fn root_counts() {
        let count = |f, r| standard_root_system(f, r).unwrap().roots().len();
        assert_eq!(count(Family::A1xA1, 2), 4);
        assert_eq!(count(Family::A, 2), 6);
        assert_eq!(count(Family::B, 2), 8);
        assert_eq!(count(Family::G2, 2), 12);
        assert_eq!(count(Family::B, 1), 2);
        assert_eq!(count(Family::A, 3), 12);
        assert_eq!(count(Family::B, 3), 18);
        assert_eq!(count(Family::C, 3), 18);
        assert_eq!(count(Family::D, 3), 12);
        assert_eq!(count(Family::D, 4), 24);
    }

    #[test]
    fn every_supported_system_up_to_rank_four_validates() {
        for f in Family::ALL {
            for r in 1..=4 {
                if f.supports_rank(r) {
                    let sys = standard_root_system(f, r).unwrap();
                    assert_eq!(sys.rank(), r, "{f}{r}");
                    let report = validate_root_system(&sys.to_candidate());
                    assert!(report.all_passed(), "{f}{r}: {report}");
                }
            }
        }
    }

    #[test]
    fn unsupported_ranks() {
        assert!(standard_root_system(Family::G2, 3).is_err());
        assert!(standard_root_system(Family::D, 1).is_err());
        assert!(standard_root_system(Family::A, 0).is_err());
    }

    #[test]
    fn designations_parse() {
        let d: Designation = "B2".parse().unwrap();
        assert_eq!(d, Designation { family: Family::B, rank: 2 });
        let d: Designation = "g2".parse().unwrap();
        assert_eq!(d.family, Family::G2);
        let d: Designation = "A1xA1".parse().unwrap();
        assert_eq!(d.to_string(), "A1xA1");
        assert_eq!("A3".parse::<Designation>().unwrap().to_string(), "A3");
        assert!("E8".parse::<Designation>().is_err());
        assert!("B0".parse::<Designation>().is_err());
    }
}
