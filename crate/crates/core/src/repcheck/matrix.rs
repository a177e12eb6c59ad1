use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::exactnum::rational::to_f64;
use crate::exactnum::Rational;

use super::ddouble::DoubleDouble;

/// Entry type of representation matrices.
pub trait Scalar:
    Clone + PartialEq + fmt::Debug + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_rational(q: &Rational) -> Self;
    fn magnitude(&self) -> f64;
}

impl Scalar for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn magnitude(&self) -> f64 {
        to_f64(&self.abs())
    }
}

impl Scalar for DoubleDouble {
    fn from_rational(q: &Rational) -> Self {
        DoubleDouble::from_rational(q)
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64()
    }
}

impl Scalar for f64 {
    fn from_rational(q: &Rational) -> Self {
        to_f64(q)
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

/// Dense square matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct Dense<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> Dense<T> {
    pub fn zeros(n: usize) -> Self {
        Dense { n, data: vec![T::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diag((0..n).map(|_| T::one()))
    }

    pub fn diag(values: impl IntoIterator<Item = T>) -> Self {
        let v: Vec<T> = values.into_iter().collect();
        let mut m = Self::zeros(v.len());
        for (i, x) in v.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn scale(&self, c: &T) -> Self {
        Dense { n: self.n, data: self.data.iter().map(|x| c.clone() * x.clone()).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.n), |acc, _| &acc * self)
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        &(self * rhs) - &(rhs * self)
    }

    pub fn anticommutator(&self, rhs: &Self) -> Self {
        &(self * rhs) + &(rhs * self)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }
}

impl<T: Scalar> Add for &Dense<T> {
    type Output = Dense<T>;
    fn add(self, rhs: &Dense<T>) -> Dense<T> {
        assert_eq!(self.n, rhs.n);
        Dense { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect() }
    }
}

impl<T: Scalar> Sub for &Dense<T> {
    type Output = Dense<T>;
    fn sub(self, rhs: &Dense<T>) -> Dense<T> {
        assert_eq!(self.n, rhs.n);
        Dense { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect() }
    }
}

impl<T: Scalar> Mul for &Dense<T> {
    type Output = Dense<T>;
    fn mul(self, rhs: &Dense<T>) -> Dense<T> {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = Dense::<T>::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).clone() + a.clone() * b.clone();
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Dense<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Dense<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.n.max(1))).finish()
    }
}
