//! Lattices with an involution, i.e. `Z[C2]`-lattices.
//!
//! Every such lattice splits as a sum of trivial summands (`x -> x`), sign
//! summands (`x -> -x`) and regular summands (`(x, y) -> (y, x)`). The
//! multiplicities are read off the two Tate cohomology groups
//! `ker(r - 1) / im(r + 1)` and `ker(r + 1) / im(r - 1)`, which are
//! elementary abelian 2-groups equal to the torsion of `coker(r + 1)` and
//! `coker(r - 1)` respectively.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

/// Multiplicities of trivial, sign and regular summands, together with a
/// basis realizing the splitting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaLatticeInvariants {
    pub n0: usize,
    pub n1: usize,
    pub n2: usize,
    /// Rows: `n0` fixed vectors, then `n1` negated vectors, then `n2`
    /// consecutive pairs exchanged by the involution.
    pub adapted_basis: IntMatrix,
}

impl GammaLatticeInvariants {
    pub fn rank(&self) -> usize {
        self.n0 + self.n1 + 2 * self.n2
    }

    pub fn triple(&self) -> (usize, usize, usize) {
        (self.n0, self.n1, self.n2)
    }

    pub fn fixed_rows(&self) -> impl Iterator<Item = &[BigInt]> {
        (0..self.n0).map(move |i| self.adapted_basis.row(i))
    }

    /// Block-diagonal normal form `diag(1^n0, (-1)^n1, swap^n2)`.
    pub fn normal_form(&self) -> IntMatrix {
        normal_form(self.n0, self.n1, self.n2)
    }
}

pub fn normal_form(n0: usize, n1: usize, n2: usize) -> IntMatrix {
    let mut blocks = Vec::with_capacity(n0 + n1 + n2);
    blocks.extend((0..n0).map(|_| IntMatrix::square(&[[1]])));
    blocks.extend((0..n1).map(|_| IntMatrix::square(&[[-1]])));
    blocks.extend((0..n2).map(|_| IntMatrix::square(&[[0, 1], [1, 0]])));
    IntMatrix::block_diagonal(&blocks)
}

/// Number of order-2 factors in the torsion of `Z^n / rowspace(m)`.
fn two_torsion_rank(m: &IntMatrix) -> Result<usize> {
    let two = BigInt::from(2);
    let mut count = 0;
    for f in smith_normal_form(m).invariant_factors() {
        if f == two {
            count += 1;
        } else if !f.is_one() {
            return Err(Error::NotInvolution);
        }
    }
    Ok(count)
}

/// Tate cohomology ranks `(dim H^0, dim H^1)` over `F_2`.
pub fn tate_ranks(r: &IntMatrix) -> Result<(usize, usize)> {
    if !r.is_involution() {
        return Err(Error::NotInvolution);
    }
    Ok((two_torsion_rank(&r.add_scalar_identity(1))?, two_torsion_rank(&r.add_scalar_identity(-1))?))
}

/// Classifies the involution `r` (acting on row vectors from the right).
pub fn involution_invariants(r: &IntMatrix) -> Result<GammaLatticeInvariants> {
    let (n0, n1) = tate_ranks(r)?;
    let n = r.rows();
    if (n - n0 - n1) % 2 != 0 {
        return Err(Error::NotInvolution);
    }
    let n2 = (n - n0 - n1) / 2;
    let basis = split(r);
    let inv = GammaLatticeInvariants { n0, n1, n2, adapted_basis: basis.matrix };
    // The splitting is computed independently of the Tate ranks.
    assert_eq!(
        (basis.n0, basis.n1, basis.n2),
        (n0, n1, n2),
        "summand splitting disagrees with Tate cohomology for {r}"
    );
    Ok(inv)
}

struct Splitting {
    n0: usize,
    n1: usize,
    n2: usize,
    matrix: IntMatrix,
}

/// Builds an adapted basis.
///
/// With `W = ker(r + 1)` and a complement `Y`, `r` has block form
/// `[[1, C], [0, -1]]`. Base changes act on `C` by `U C V^-1` and by adding
/// even matrices, so `C` reduces to `diag(1^k, 0)`: `k` regular summands,
/// the remaining rows of `Y` fixed and the remaining rows of `W` negated.
fn split(r: &IntMatrix) -> Splitting {
    let n = r.rows();
    let plus = r.add_scalar_identity(1);
    let s = smith_normal_form(&plus);
    let a = s.rank();
    // Rows of u with zero invariant factor span ker(r + 1); the others a complement.
    let y = s.u.select_rows(&(0..a).collect::<Vec<_>>());
    let w = s.u.select_rows(&(a..n).collect::<Vec<_>>());
    let b = n - a;

    // C: rows of y*r - y expressed in the basis w.
    let yr = &y * r;
    let mut c = IntMatrix::zeros(a, b);
    for i in 0..a {
        let diff: Vec<BigInt> = yr.row(i).iter().zip(y.row(i)).map(|(p, q)| p - q).collect();
        let coords = if b == 0 { Vec::new() } else { w.solve_left(&diff).expect("(r - 1)Y lies in ker(r + 1)") };
        for (j, x) in coords.into_iter().enumerate() {
            c[(i, j)] = x;
        }
    }

    // U C V0 = D, then Y' = U Y, W' = V0^-1 W.
    let sc = smith_normal_form(&c);
    let y1 = &sc.u * &y;
    let v0_inv = sc.v.integral_inverse().expect("unimodular");
    let w1 = &v0_inv * &w;
    // Y'' = Y' + E W' with E = (D - (D mod 2)) / 2.
    let mut y2 = y1.clone();
    let mut k = 0;
    for i in 0..a.min(b) {
        let d = &sc.d[(i, i)];
        if d.is_zero() {
            break;
        }
        let half = if d.is_odd() {
            k += 1;
            (d - BigInt::one()) / 2
        } else {
            d / 2
        };
        for j in 0..n {
            let t = &half * &w1[(i, j)];
            y2[(i, j)] += t;
        }
    }
    // Divisibility makes the odd invariant factors a prefix 0..k.
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in k..a {
        rows.push(y2.row_vec(i));
    }
    for j in k..b {
        rows.push(w1.row_vec(j));
    }
    for i in 0..k {
        let p = y2.row_vec(i);
        let q = r.apply_row(&p);
        rows.push(p);
        rows.push(q);
    }
    Splitting {
        n0: a - k,
        n1: b - k,
        n2: k,
        matrix: IntMatrix::from_big_rows(n, rows).expect("square adapted basis"),
    }
}
