//! Exact arithmetic in cyclotomic fields `ℚ(ζ_m)`.
//!
//! Elements are residues of `ℚ[x]` modulo the `m`-th cyclotomic polynomial
//! `Φ_m`, with `x` standing for `ζ_m = e^{2π√-1/m}`. Only conductors divisible
//! by 12 are supported, so `ζ₄` and `ζ₆` are always available.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

type Poly = Vec<BigRational>;

/// `ℚ(ζ_m)` with `12 | m`.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloField {
    conductor: u64,
    /// Coefficients of `Φ_m`, lowest degree first.
    modulus: Vec<BigInt>,
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n)
        .take_while(|d| d * d <= n)
        .filter(|d| n.is_multiple_of(*d))
        .collect();
    let mut hi: Vec<u64> = out.iter().map(|d| n / d).filter(|&q| q * q != n).collect();
    hi.reverse();
    out.extend(hi);
    out
}

/// `Φ_n` by dividing `x^n - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n > 0);
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        p = exact_div_monic(&p, &cyclotomic_polynomial(d));
    }
    p
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![BigInt::zero(); num.len() - dn];
    for i in (0..q.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    q
}

impl CycloField {
    pub fn new(conductor: u64) -> Result<Arc<Self>> {
        if conductor == 0 || !conductor.is_multiple_of(12) {
            return Err(Error::InvalidConductor(conductor));
        }
        Ok(Arc::new(CycloField {
            conductor,
            modulus: cyclotomic_polynomial(conductor),
        }))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `φ(m)`, the degree over `ℚ`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    pub fn zero(self: &Arc<Self>) -> CycloNumber {
        CycloNumber {
            field: Arc::clone(self),
            coeffs: vec![BigRational::zero(); self.degree()],
        }
    }

    pub fn one(self: &Arc<Self>) -> CycloNumber {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(self: &Arc<Self>, q: BigRational) -> CycloNumber {
        let mut z = self.zero();
        z.coeffs[0] = q;
        z
    }

    pub fn from_int(self: &Arc<Self>, k: impl Into<BigInt>) -> CycloNumber {
        self.from_rational(BigRational::from_integer(k.into()))
    }

    /// `ζ_m^e` for any integer exponent.
    pub fn zeta_pow(self: &Arc<Self>, e: i64) -> CycloNumber {
        let m = self.conductor as i64;
        let e = e.rem_euclid(m) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        self.reduce(poly)
    }

    /// `e^{2π√-1·k/d} = ζ_m^{k·m/d}`; requires `d | m`.
    pub fn root_of_unity(self: &Arc<Self>, d: u64, k: i64) -> Result<CycloNumber> {
        if d == 0 || !self.conductor.is_multiple_of(d) {
            return Err(Error::RootOrderOutsideField {
                order: d,
                conductor: self.conductor,
            });
        }
        Ok(self.zeta_pow(k * (self.conductor / d) as i64))
    }

    fn reduce(self: &Arc<Self>, mut p: Poly) -> CycloNumber {
        let deg = self.degree();
        for i in (deg..p.len()).rev() {
            let c = std::mem::replace(&mut p[i], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            // x^deg = -(lower terms of Φ_m)
            for (j, mj) in self.modulus[..deg].iter().enumerate() {
                p[i - deg + j] -= &c * BigRational::from_integer(mj.clone());
            }
        }
        p.resize(deg, BigRational::zero());
        CycloNumber {
            field: Arc::clone(self),
            coeffs: p,
        }
    }

    fn modulus_poly(&self) -> Poly {
        self.modulus
            .iter()
            .cloned()
            .map(BigRational::from_integer)
            .collect()
    }
}

/// An element of `ℚ(ζ_m)` in the power basis `1, ζ_m, …, ζ_m^{φ(m)-1}`.
#[derive(Clone)]
pub struct CycloNumber {
    field: Arc<CycloField>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNumber {}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}·ζ{}", self.field.conductor),
                _ => format!("{c}·ζ{}^{i}", self.field.conductor),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl CycloNumber {
    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn check_field(&self, other: &CycloNumber) {
        assert_eq!(
            self.field.conductor, other.field.conductor,
            "operands from different cyclotomic fields"
        );
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against `Φ_m`.
    pub fn inverse(&self) -> Result<CycloNumber> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Invariant: s_i·a ≡ r_i (mod Φ).
        let mut r0 = self.field.modulus_poly();
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Poly = vec![];
        let mut s1: Poly = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant because Φ_m is irreducible.
        let c = r1[0].recip();
        let s: Poly = s1.into_iter().map(|x| x * &c).collect();
        Ok(self.field.reduce(s))
    }

    /// Complex conjugation `ζ_m ↦ ζ_m^{-1}`.
    pub fn conjugate(&self) -> CycloNumber {
        let mut acc = self.field.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = self.field.zeta_pow(-(i as i64)).scale(c);
            acc = &acc + &t;
        }
        acc
    }

    pub fn scale(&self, q: &BigRational) -> CycloNumber {
        CycloNumber {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn pow(&self, k: u64) -> CycloNumber {
        (0..k).fold(self.field.one(), |acc, _| &acc * self)
    }

    /// The rational value, if this element lies in `ℚ`.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }
}

impl Add for &CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        self.check_field(rhs);
        CycloNumber {
            field: Arc::clone(&self.field),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        self.check_field(rhs);
        CycloNumber {
            field: Arc::clone(&self.field),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        self.check_field(rhs);
        self.field.reduce(poly_mul(&self.coeffs, &rhs.coeffs))
    }
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Poly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

/// Division with remainder; `den` must be trimmed and nonzero.
fn poly_divrem(num: &[BigRational], den: &[BigRational]) -> (Poly, Poly) {
    let num = trim(num.to_vec());
    let dn = den.len() - 1;
    if num.len() < den.len() {
        return (vec![], num);
    }
    let lead = den[dn].recip();
    let mut rem = num.clone();
    let mut q = vec![BigRational::zero(); num.len() - dn];
    for i in (0..q.len()).rev() {
        let c = &rem[i + dn] * &lead;
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    rem.truncate(dn);
    (trim(q), trim(rem))
}

/// A square matrix over one cyclotomic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloMatrix {
    field: Arc<CycloField>,
    n: usize,
    entries: Vec<CycloNumber>,
}

impl CycloMatrix {
    pub fn from_fn(
        field: &Arc<CycloField>,
        n: usize,
        mut f: impl FnMut(usize, usize) -> CycloNumber,
    ) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let e = f(i, j);
                assert_eq!(
                    e.field.conductor, field.conductor,
                    "entry from a different field"
                );
                entries.push(e);
            }
        }
        CycloMatrix {
            field: Arc::clone(field),
            n,
            entries,
        }
    }

    /// Embeds a rational matrix.
    pub fn from_rational(field: &Arc<CycloField>, m: &crate::linalg::RatMatrix) -> Self {
        assert!(m.is_square());
        CycloMatrix::from_fn(field, m.rows(), |i, j| {
            field.from_rational(m[(i, j)].clone())
        })
    }

    pub fn identity(field: &Arc<CycloField>, n: usize) -> Self {
        CycloMatrix::from_fn(
            field,
            n,
            |i, j| if i == j { field.one() } else { field.zero() },
        )
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloNumber {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, rhs: &CycloMatrix) -> CycloMatrix {
        assert_eq!(self.n, rhs.n);
        CycloMatrix::from_fn(&self.field, self.n, |i, j| {
            (0..self.n).fold(self.field.zero(), |acc, k| {
                &acc + &(self.get(i, k) * rhs.get(k, j))
            })
        })
    }

    pub fn conjugate(&self) -> CycloMatrix {
        CycloMatrix::from_fn(&self.field, self.n, |i, j| self.get(i, j).conjugate())
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    /// `self - c·I`.
    pub fn shifted(&self, c: &CycloNumber) -> CycloMatrix {
        CycloMatrix::from_fn(&self.field, self.n, |i, j| {
            if i == j {
                self.get(i, j) - c
            } else {
                self.get(i, j).clone()
            }
        })
    }

    /// Rank by Gaussian elimination, pivoting on the first nonzero entry of each column.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut a: Vec<Vec<CycloNumber>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].inverse().expect("pivot is nonzero");
            for i in r + 1..n {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = &a[i][c] * &inv;
                let (top, bottom) = a.split_at_mut(i);
                for (x, p) in bottom[0][c..].iter_mut().zip(&top[r][c..]) {
                    *x = &*x - &(&f * p);
                }
            }
            r += 1;
        }
        r
    }
}

/// `dim ker(M − ζ·I)`; for finite-order `M` this is the multiplicity of the eigenvalue `ζ`.
pub fn eigen_multiplicity(m: &CycloMatrix, zeta: &CycloNumber) -> usize {
    m.size() - m.shifted(zeta).rank()
}

/// The pairs `(k, d)` with `0 <= k < d`, `gcd(k, d) = 1`, `d | order`: every
/// root of unity of order dividing `order`, as `e^{2π√-1·k/d}`.
pub fn roots_of_unity_dividing(order: u64) -> Vec<(i64, u64)> {
    let mut out = Vec::new();
    for d in divisors(order) {
        for k in 0..d {
            if k.gcd(&d) == 1 {
                out.push((k as i64, d));
            }
        }
    }
    out
}
