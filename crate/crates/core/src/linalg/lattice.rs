use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::torsion::reduce_mod_one;
use super::{hermite_rows, snf_full, IntMatrix, RatMatrix, TorsionPoint};

/// A sublattice of `ℤ^N`, stored by the Hermite normal form of its basis rows.
///
/// Because the basis is canonical, `==` is lattice equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    basis: IntMatrix,
}

impl Lattice {
    /// The lattice spanned by `generators` (dependent generators are fine).
    pub fn new(ambient: usize, generators: Vec<Vec<BigInt>>) -> Self {
        Lattice::from_matrix(&IntMatrix::from_rows(ambient, generators))
    }

    /// The lattice spanned by the rows of `m`.
    pub fn from_matrix(m: &IntMatrix) -> Self {
        Lattice {
            basis: hermite_rows(m),
        }
    }

    pub fn from_i64(ambient: usize, generators: &[&[i64]]) -> Self {
        Lattice::new(
            ambient,
            generators
                .iter()
                .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn full(ambient: usize) -> Self {
        Lattice {
            basis: IntMatrix::identity(ambient),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Lattice {
            basis: IntMatrix::zeros(0, ambient),
        }
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Half the rank: the complex dimension of the subtorus the lattice spans.
    pub fn complex_dim(&self) -> usize {
        self.rank() / 2
    }

    /// Basis vectors as the rows of a `rank × ambient` matrix.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient()
    }

    pub fn is_saturated(&self) -> bool {
        saturate(self) == *self
    }

    /// Lattice membership of an integer vector.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        let q: Vec<BigRational> = v.iter().cloned().map(BigRational::from_integer).collect();
        self.coordinates(&q)
            .is_some_and(|c| c.iter().all(|x| x.is_integer()))
    }

    /// Whether `v` lies in the rational span.
    pub fn spans(&self, v: &[BigRational]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coordinates of `v` in this basis, when `v` is in the rational span.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        if self.rank() == 0 {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        self.basis.to_rational().solve_left(v)
    }

    /// Whether the rational span of `self` contains that of `other`.
    pub fn spans_lattice(&self, other: &Lattice) -> bool {
        other.basis.row_vectors().all(|r| self.spans(&to_rat(r)))
    }

    /// Whether `m` maps the rational span into itself (`m` acting on column vectors).
    pub fn is_stable_under(&self, m: &RatMatrix) -> bool {
        self.basis
            .row_vectors()
            .all(|r| self.spans(&m.mul_vec(&to_rat(r))))
    }

    /// Sum of the two lattices.
    pub fn sum(&self, other: &Lattice) -> Lattice {
        Lattice::from_matrix(&self.basis.vstack(&other.basis))
    }

    /// `[ℤ^N : self]` when the rank is full.
    pub fn index(&self) -> Option<BigInt> {
        self.is_full().then(|| self.basis.abs_det())
    }

    /// A surjection `P: ℤ^N → ℤ^{N-k}` whose rational kernel is the span of `self`.
    ///
    /// `self` must be saturated.
    pub fn quotient_map(&self) -> IntMatrix {
        let k = self.rank();
        let n = self.ambient();
        let (_, _, v, _) = snf_full(&self.basis);
        let cols: Vec<usize> = (k..n).collect();
        v.select_cols(&cols).transpose()
    }

    /// Canonical representative of the coset `p + span_ℝ(self) + ℤ^N`.
    ///
    /// Two points lie on the same translate of the subtorus iff their
    /// reductions agree. `self` must be saturated.
    pub fn reduce_point(&self, p: &TorsionPoint) -> TorsionPoint {
        let k = self.rank();
        if k == 0 {
            return p.clone();
        }
        if self.is_full() {
            return TorsionPoint::zero(self.ambient());
        }
        let (_, _, v, v_inv) = snf_full(&self.basis);
        // y = p·V (row vector); the first k coordinates run along the subtorus.
        let mut y = v.transpose().mul_rat_vec(p.coords());
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = if i < k {
                BigRational::zero()
            } else {
                reduce_mod_one(yi)
            };
        }
        TorsionPoint::new(v_inv.transpose().mul_rat_vec(&y))
    }
}

fn to_rat(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

/// `(L ⊗ ℚ) ∩ ℤ^N`.
pub fn saturate(l: &Lattice) -> Lattice {
    let k = l.rank();
    if k == 0 {
        return l.clone();
    }
    let (s, _, _, v_inv) = snf_full(l.basis());
    debug_assert!(!s[(k - 1, k - 1)].is_zero());
    Lattice::from_matrix(&v_inv.select_rows(0..k))
}

/// Saturation of `L1 ∩ L2`: the lattice of the connected component through 0
/// of the intersection of the two subtori.
pub fn intersect_lattices(l1: &Lattice, l2: &Lattice) -> Lattice {
    assert_eq!(l1.ambient(), l2.ambient(), "ambient rank mismatch");
    let n = l1.ambient();
    let k1 = l1.rank();
    if k1 == 0 || l2.rank() == 0 {
        return Lattice::zero(n);
    }
    let stacked = l1.basis().vstack(l2.basis());
    let (s, u, _, _) = snf_full(&stacked);
    let r = (0..s.rows().min(s.cols()))
        .take_while(|&i| !s[(i, i)].is_zero())
        .count();
    // Rows of U past the rank are the left kernel (a, b) with a·B1 + b·B2 = 0.
    let gens: Vec<Vec<BigInt>> = (r..u.rows())
        .map(|i| {
            let a = &u.row(i)[..k1];
            (0..n)
                .map(|j| {
                    a.iter()
                        .enumerate()
                        .map(|(t, at)| at * &l1.basis()[(t, j)])
                        .sum()
                })
                .collect()
        })
        .collect();
    saturate(&Lattice::new(n, gens))
}

/// Saturated right kernel `{x ∈ ℤ^N : M·x = 0}`.
pub fn kernel_lattice(m: &IntMatrix) -> Lattice {
    let (s, _, v, _) = snf_full(m);
    let r = (0..s.rows().min(s.cols()))
        .take_while(|&i| !s[(i, i)].is_zero())
        .count();
    let gens: Vec<Vec<BigInt>> = (r..m.cols()).map(|j| v.column(j)).collect();
    Lattice::new(m.cols(), gens)
}

impl Lattice {
    /// Vectors of `ℤ^N` representing every class of `ℤ^N / self`, for full-rank `self`.
    pub fn coset_representatives(&self) -> Vec<Vec<BigInt>> {
        assert!(
            self.is_full(),
            "coset enumeration needs a full-rank lattice"
        );
        let n = self.ambient();
        // self = U⁻¹ S V⁻¹ as rows, so ℤ^N/self ≅ ⊕ ℤ/s_i via y ↦ y·V⁻¹.
        let (s, _, _, v_inv) = snf_full(&self.basis);
        let divisors: Vec<BigInt> = (0..n).map(|i| s[(i, i)].clone()).collect();
        let mut out = Vec::new();
        let mut y = vec![BigInt::zero(); n];
        loop {
            out.push(v_inv.transpose().mul_vec(&y));
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                y[i] += BigInt::one();
                if y[i] < divisors[i] {
                    break;
                }
                y[i] = BigInt::zero();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn saturate_scaled_vector() {
        let l = Lattice::from_i64(2, &[&[2, 0]]);
        assert_eq!(saturate(&l), Lattice::from_i64(2, &[&[1, 0]]));
    }

    #[test]
    fn saturate_index_two_sublattice() {
        let l = Lattice::from_i64(2, &[&[1, 1], &[1, -1]]);
        assert_eq!(l.index(), Some(BigInt::from(2)));
        assert_eq!(saturate(&l), Lattice::full(2));
    }

    #[test]
    fn saturate_is_idempotent_on_saturated() {
        let l = Lattice::from_i64(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        assert!(l.is_saturated());
        assert_eq!(saturate(&l), l);
    }

    #[test]
    fn intersect_equal() {
        let l = Lattice::from_i64(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        assert_eq!(intersect_lattices(&l, &l), l);
    }

    #[test]
    fn intersect_diagonal_with_first_factor() {
        let d = Lattice::from_i64(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        let e = Lattice::from_i64(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        assert_eq!(intersect_lattices(&d, &e).rank(), 0);
    }

    #[test]
    fn intersect_rational_spans() {
        let a = Lattice::from_i64(2, &[&[1, 0], &[0, 2]]);
        let b = Lattice::from_i64(2, &[&[0, 1]]);
        assert_eq!(intersect_lattices(&a, &b), Lattice::from_i64(2, &[&[0, 1]]));
    }

    #[test]
    fn kernel_is_saturated() {
        let m = IntMatrix::from_i64(1, 3, &[2, 4, 6]);
        let k = kernel_lattice(&m);
        assert_eq!(k.rank(), 2);
        assert!(k.is_saturated());
        for r in k.basis().row_vectors() {
            assert!(m.mul_vec(r).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn reduce_point_along_subtorus() {
        let l = Lattice::from_i64(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let p = TorsionPoint::from_fractions(&[(1, 3), (2, 5), (1, 2), (0, 1)]);
        assert_eq!(
            l.reduce_point(&p),
            TorsionPoint::from_fractions(&[(0, 1), (0, 1), (1, 2), (0, 1)])
        );
        let p = l.quotient_map();
        assert_eq!(p.rows(), 2);
        assert!(p.mul_vec(l.basis().row(0)).iter().all(Zero::is_zero));
    }

    #[test]
    fn cosets_of_diag_plus_antidiag() {
        let l = Lattice::from_i64(
            4,
            &[&[1, 0, 1, 0], &[0, 1, 0, 1], &[1, 0, -1, 0], &[0, 1, 0, -1]],
        );
        let reps = l.coset_representatives();
        assert_eq!(reps.len(), 4);
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[i + 1..] {
                let d: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                assert!(!l.contains(&d));
            }
        }
    }
}
