use alloc::vec::Vec;

use num_complex::Complex64;

use crate::rational::{to_f64, Rational, RationalVector};

/// `coefficient * exp(i frequency . x)`
#[derive(Clone, Debug, PartialEq)]
pub struct TrigTerm {
    pub coefficient: Complex64,
    pub frequency: Vec<f64>,
    /// The exact weight `w q` behind the frequency, when known.
    pub weight: Option<RationalVector>,
}

/// A finite sum of complex exponentials, all with the same squared
/// frequency norm, in Euclidean coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigSum {
    pub dim: usize,
    pub terms: Vec<TrigTerm>,
    /// Exact `|q|^2` when the sum comes from a weight `q`; the eigenvalue is
    /// then `4 pi^2 |q|^2`.
    pub q_norm_sq: Option<Rational>,
}

impl TrigSum {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: Vec::new(),
            q_norm_sq: None,
        }
    }

    pub fn from_terms(dim: usize, terms: Vec<TrigTerm>) -> Self {
        Self {
            dim,
            terms,
            q_norm_sq: None,
        }
    }

    /// `amplitude * sin(frequency . x)`
    pub fn sine(amplitude: f64, frequency: &[f64]) -> Self {
        let half = Complex64::new(0.0, -0.5 * amplitude);
        let neg: Vec<f64> = frequency.iter().map(|f| -f).collect();
        Self::from_terms(
            frequency.len(),
            alloc::vec![
                TrigTerm {
                    coefficient: half,
                    frequency: frequency.to_vec(),
                    weight: None,
                },
                TrigTerm {
                    coefficient: -half,
                    frequency: neg,
                    weight: None,
                },
            ],
        )
    }

    /// `amplitude * cos(frequency . x)`
    pub fn cosine(amplitude: f64, frequency: &[f64]) -> Self {
        let half = Complex64::new(0.5 * amplitude, 0.0);
        let neg: Vec<f64> = frequency.iter().map(|f| -f).collect();
        Self::from_terms(
            frequency.len(),
            alloc::vec![
                TrigTerm {
                    coefficient: half,
                    frequency: frequency.to_vec(),
                    weight: None,
                },
                TrigTerm {
                    coefficient: half,
                    frequency: neg,
                    weight: None,
                },
            ],
        )
    }

    pub fn add(mut self, other: Self) -> Self {
        assert_eq!(self.dim, other.dim);
        if self.q_norm_sq != other.q_norm_sq {
            self.q_norm_sq = None;
        }
        self.terms.extend(other.terms);
        self
    }

    pub fn scale(mut self, s: Complex64) -> Self {
        for t in &mut self.terms {
            t.coefficient *= s;
        }
        self
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn frequency_norms_sq(&self) -> Vec<f64> {
        self.terms
            .iter()
            .map(|t| t.frequency.iter().map(|f| f * f).sum())
            .collect()
    }

    /// Whether every term has the same squared frequency norm, up to a
    /// relative tolerance.
    pub fn has_equal_norms(&self, rel_tol: f64) -> bool {
        let n = self.frequency_norms_sq();
        let Some(&first) = n.first() else { return true };
        n.iter().all(|x| (x - first).abs() <= rel_tol * first.abs().max(1e-300))
    }

    /// `lambda`: `4 pi^2 |q|^2` if known, otherwise the squared frequency norm
    /// of the first term.
    pub fn eigenvalue(&self) -> f64 {
        match &self.q_norm_sq {
            Some(q) => 4.0 * core::f64::consts::PI * core::f64::consts::PI * to_f64(q),
            None => self.frequency_norms_sq().first().copied().unwrap_or(0.0),
        }
    }

    /// Compensated sum of the terms at `x`.
    pub fn evaluate(&self, x: &[f64]) -> Complex64 {
        assert_eq!(x.len(), self.dim, "dimension mismatch");
        let mut re = Neumaier::default();
        let mut im = Neumaier::default();
        for t in &self.terms {
            let phase: f64 = t.frequency.iter().zip(x).map(|(f, y)| f * y).sum();
            let (s, c) = (libm::sin(phase), libm::cos(phase));
            re.add(t.coefficient.re * c - t.coefficient.im * s);
            im.add(t.coefficient.re * s + t.coefficient.im * c);
        }
        Complex64::new(re.total(), im.total())
    }

    pub fn evaluate_re(&self, x: &[f64]) -> f64 {
        self.evaluate(x).re
    }

    /// `(u + conj u) / 2`, as a sum of exponentials.
    pub fn real_part(&self) -> Self {
        self.mix(Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0))
    }

    /// `(u - conj u) / 2i`
    pub fn imag_part(&self) -> Self {
        self.mix(Complex64::new(0.0, -0.5), Complex64::new(0.0, 0.5))
    }

    fn mix(&self, a: Complex64, b: Complex64) -> Self {
        let mut terms = Vec::with_capacity(2 * self.terms.len());
        for t in &self.terms {
            terms.push(TrigTerm {
                coefficient: t.coefficient * a,
                frequency: t.frequency.clone(),
                weight: t.weight.clone(),
            });
            terms.push(TrigTerm {
                coefficient: t.coefficient.conj() * b,
                frequency: t.frequency.iter().map(|f| -f).collect(),
                weight: t.weight.as_ref().map(RationalVector::neg),
            });
        }
        Self {
            dim: self.dim,
            terms,
            q_norm_sq: self.q_norm_sq.clone(),
        }
    }

    /// `x -> u(M x + b)`, where `M` is `self.dim` rows by `cols` columns.
    pub fn pullback(&self, m: &[Vec<f64>], b: &[f64]) -> Self {
        let cols = m.first().map_or(0, Vec::len);
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let frequency = (0..cols)
                    .map(|j| (0..self.dim).map(|i| m[i][j] * t.frequency[i]).sum())
                    .collect();
                let shift: f64 = t.frequency.iter().zip(b).map(|(f, y)| f * y).sum();
                TrigTerm {
                    coefficient: t.coefficient * Complex64::new(libm::cos(shift), libm::sin(shift)),
                    frequency,
                    weight: t.weight.clone(),
                }
            })
            .collect();
        Self {
            dim: cols,
            terms,
            q_norm_sq: self.q_norm_sq.clone(),
        }
    }
}

/// Kahan-Babuska-Neumaier summation.
#[derive(Default, Clone, Copy, Debug)]
pub struct Neumaier {
    sum: f64,
    c: f64,
}

impl Neumaier {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.c
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_1_SQRT_2, PI};

    fn fig8() -> TrigSum {
        TrigSum::sine(1.0, &[1.0, 0.0])
            .add(TrigSum::sine(1.0, &[0.0, 1.0]))
            .add(TrigSum::sine(1.0, &[FRAC_1_SQRT_2, FRAC_1_SQRT_2]))
    }

    #[test]
    fn sine_at_zero_vanishes() {
        let u = TrigSum::sine(3.0, &[PI]);
        assert_eq!(u.evaluate(&[0.0]), Complex64::new(0.0, 0.0));
        assert!((u.evaluate_re(&[0.5]) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn fig8_function_at_origin_and_on_antidiagonal() {
        let u = fig8();
        assert!(u.has_equal_norms(1e-15));
        assert_eq!(u.evaluate_re(&[0.0, 0.0]), 0.0);
        for t in [-7.5, -1.0, 0.3, 2.0, 6.1] {
            assert!(u.evaluate_re(&[t, -t]).abs() < 1e-14);
        }
        let x = [0.7, -0.2];
        let direct = libm::sin(0.7) + libm::sin(-0.2) + libm::sin(0.5 * FRAC_1_SQRT_2);
        assert!((u.evaluate_re(&x) - direct).abs() < 1e-14);
        assert!(u.evaluate(&x).im.abs() < 1e-15);
    }

    #[test]
    fn parts_and_pullback() {
        let u = TrigSum::from_terms(
            1,
            alloc::vec![TrigTerm {
                coefficient: Complex64::new(1.0, 0.0),
                frequency: alloc::vec![2.0],
                weight: None,
            }],
        );
        let x = [0.3];
        assert!((u.real_part().evaluate(&x).re - libm::cos(0.6)).abs() < 1e-15);
        assert!((u.imag_part().evaluate(&x).re - libm::sin(0.6)).abs() < 1e-15);
        assert!(u.real_part().evaluate(&x).im.abs() < 1e-15);
        // u(3y + 1)
        let p = u.pullback(&[alloc::vec![3.0]], &[1.0]);
        let y = [0.1];
        assert!((p.evaluate(&y) - u.evaluate(&[1.3])).norm() < 1e-14);
    }

    #[test]
    fn compensated_sum() {
        let mut s = Neumaier::default();
        for x in [1.0, 1e100, 1.0, -1e100] {
            s.add(x);
        }
        assert_eq!(s.total(), 2.0);
    }
}
