use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{snf_full, IntMatrix, Lattice, TorsionPoint};

/// Solutions of `M·x ≡ a (mod ℤ^R)` on the torus `ℝ^N/ℤ^N`.
///
/// When nonempty the set is a disjoint union of `component_count` translates
/// of the subtorus spanned by `kernel`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolutionSet {
    pub nonempty: bool,
    pub kernel: Lattice,
    pub component_count: BigInt,
    /// One canonical point per component, sorted lexicographically.
    pub representatives: Vec<TorsionPoint>,
}

impl AffineSolutionSet {
    /// Complex dimension of each component.
    pub fn complex_dim(&self) -> usize {
        self.kernel.complex_dim()
    }

    /// Whether `x` is a solution.
    pub fn contains(&self, x: &TorsionPoint) -> bool {
        self.nonempty && {
            let r = self.kernel.reduce_point(x);
            self.representatives.binary_search(&r).is_ok()
        }
    }
}

/// Solves `M·x ≡ a (mod ℤ^R)` for `x ∈ ℝ^N/ℤ^N`, where `M` is `R × N`.
///
/// With `U·M·V = S`, substitute `y = V⁻¹x`; the system decouples into
/// `s_i·y_i ≡ (U·a)_i`. It is solvable iff `(U·a)_i` is integral past the rank,
/// and then each nonzero `s_i` contributes `s_i` choices for `y_i`.
pub fn solve_affine_mod_lattice(m: &IntMatrix, a: &TorsionPoint) -> AffineSolutionSet {
    assert_eq!(m.rows(), a.dim(), "right-hand side has the wrong length");
    let n = m.cols();
    let (s, u, v, _) = snf_full(m);
    let rank = (0..s.rows().min(s.cols()))
        .take_while(|&i| !s[(i, i)].is_zero())
        .count();
    let kernel = Lattice::new(n, (rank..n).map(|j| v.column(j)).collect());

    let c = u.mul_rat_vec(a.coords());
    if !TorsionPoint::is_integral_vector(&c[rank..]) {
        return AffineSolutionSet {
            nonempty: false,
            kernel,
            component_count: BigInt::zero(),
            representatives: Vec::new(),
        };
    }

    let divisors: Vec<BigInt> = (0..rank).map(|i| s[(i, i)].clone()).collect();
    let component_count: BigInt = divisors.iter().product();

    let mut reps = Vec::new();
    let mut k = vec![BigInt::zero(); rank];
    loop {
        let mut y = vec![BigRational::zero(); n];
        for i in 0..rank {
            y[i] = (&c[i] + BigRational::from_integer(k[i].clone()))
                / BigRational::from_integer(divisors[i].clone());
        }
        let x = TorsionPoint::new(v.mul_rat_vec(&y));
        reps.push(kernel.reduce_point(&x));
        if !advance(&mut k, &divisors) {
            break;
        }
    }
    reps.sort();
    reps.dedup();
    debug_assert_eq!(BigInt::from(reps.len()), component_count);

    AffineSolutionSet {
        nonempty: true,
        kernel,
        component_count,
        representatives: reps,
    }
}

/// Odometer over `0 <= k_i < bound_i`; false once every combination was visited.
fn advance(k: &mut [BigInt], bounds: &[BigInt]) -> bool {
    for i in (0..k.len()).rev() {
        k[i] += BigInt::one();
        if k[i] < bounds[i] {
            return true;
        }
        k[i] = BigInt::zero();
    }
    false
}
