//! Finite-difference clamped plate on the unit square.
//!
//! The 13-point stencil with ghost values u₋₁ = u₁ is D = M⊗I + 2L⊗L + I⊗M, where L is the
//! 1-D Dirichlet second difference and M = L² plus 2/h⁴ on the two end diagonals. D commutes
//! with the reflections x ↦ 1−x, y ↦ 1−y and the swap x ↔ y, so it is solved in parity
//! blocks: EE and OO split again into swap-symmetric and swap-antisymmetric parts, and OE is
//! the swap image of EO.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::{from_u64, lit, Scalar};
use crate::spectra::jacobi::jacobi_eigenvalues;
use crate::spectra::{require_count, Provenance, Spectrum};

/// Largest grid the dense solver accepts.
pub const MAX_FD_GRID: usize = 64;
const MIN_FD_GRID: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FdOptions {
    /// Number of intervals per side; h = 1/grid.
    pub grid: usize,
    /// Richardson-combine with the grid/2 solution under an O(h²) error model.
    #[serde(default)]
    pub extrapolate: bool,
}

type Dense<T> = Vec<Vec<T>>;

fn matmul<T: Scalar>(a: &Dense<T>, b: &Dense<T>) -> Dense<T> {
    let (r, k, c) = (a.len(), b.len(), b[0].len());
    (0..r).map(|i| (0..c).map(|j| (0..k).fold(T::zero(), |acc, t| acc + a[i][t] * b[t][j])).collect()).collect()
}

fn transpose<T: Scalar>(a: &Dense<T>) -> Dense<T> {
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

/// Orthonormal even and odd vectors (as columns) under j ↦ m−1−j.
fn parity_bases<T: Scalar>(m: usize) -> (Dense<T>, Dense<T>) {
    let r = T::one() / T::SQRT_2();
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for j in 0..m / 2 {
        let mut e = vec![T::zero(); m];
        let mut o = vec![T::zero(); m];
        e[j] = r;
        e[m - 1 - j] = r;
        o[j] = r;
        o[m - 1 - j] = -r;
        even.push(e);
        odd.push(o);
    }
    if m % 2 == 1 {
        let mut e = vec![T::zero(); m];
        e[m / 2] = T::one();
        even.push(e);
    }
    (transpose(&even), transpose(&odd))
}

/// 1-D operators (in units of 1/h⁴ for M and 1/h² for L) restricted to a parity subspace.
struct Factor<T> {
    l: Dense<T>,
    m: Dense<T>,
}

fn factors<T: Scalar>(grid: usize) -> (Factor<T>, Factor<T>) {
    let m = grid - 1;
    let two = lit::<T>(2.0);
    let mut l = vec![vec![T::zero(); m]; m];
    for i in 0..m {
        l[i][i] = -two;
        if i + 1 < m {
            l[i][i + 1] = T::one();
            l[i + 1][i] = T::one();
        }
    }
    let mut mm = matmul(&l, &l);
    mm[0][0] = mm[0][0] + two;
    mm[m - 1][m - 1] = mm[m - 1][m - 1] + two;
    let (qe, qo) = parity_bases::<T>(m);
    let project = |q: &Dense<T>, a: &Dense<T>| matmul(&transpose(q), &matmul(a, q));
    (Factor { l: project(&qe, &l), m: project(&qe, &mm) }, Factor { l: project(&qo, &l), m: project(&qo, &mm) })
}

/// Entry of M_a⊗I + 2L_a⊗L_b + I⊗M_b between tensor indices (i, j) and (k, l).
fn kron_entry<T: Scalar>(a: &Factor<T>, b: &Factor<T>, (i, j): (usize, usize), (k, l): (usize, usize)) -> T {
    let mut v = lit::<T>(2.0) * a.l[i][k] * b.l[j][l];
    if j == l {
        v = v + a.m[i][k];
    }
    if i == k {
        v = v + b.m[j][l];
    }
    v
}

/// Basis vectors of a block as sparse combinations of tensor indices.
type Basis<T> = Vec<Vec<((usize, usize), T)>>;

fn tensor_basis<T: Scalar>(pa: usize, pb: usize) -> Basis<T> {
    (0..pa).flat_map(|i| (0..pb).map(move |j| vec![((i, j), T::one())])).collect()
}

fn swap_basis<T: Scalar>(p: usize, symmetric: bool) -> Basis<T> {
    let r = T::one() / T::SQRT_2();
    let mut out = Vec::new();
    for i in 0..p {
        if symmetric {
            out.push(vec![((i, i), T::one())]);
        }
        for j in i + 1..p {
            let sign = if symmetric { r } else { -r };
            out.push(vec![((i, j), r), ((j, i), sign)]);
        }
    }
    out
}

fn block_eigenvalues<T: Scalar>(a: &Factor<T>, b: &Factor<T>, basis: &Basis<T>) -> Vec<T> {
    let n = basis.len();
    let mut mat = vec![T::zero(); n * n];
    for r in 0..n {
        for c in r..n {
            let mut v = T::zero();
            for &(x, cx) in &basis[r] {
                for &(y, cy) in &basis[c] {
                    v = v + cx * cy * kron_entry(a, b, x, y);
                }
            }
            mat[r * n + c] = v;
            mat[c * n + r] = v;
        }
    }
    jacobi_eigenvalues(mat, n)
}

/// Row factor, column factor, basis and how many times the block's spectrum repeats.
type Block<'a, T> = (&'a Factor<T>, &'a Factor<T>, Basis<T>, usize);

/// All eigenvalues of the discrete clamped plate on a `grid` × `grid` mesh, ascending.
fn solve_grid<T: Scalar>(grid: usize) -> Vec<T> {
    let (even, odd) = factors::<T>(grid);
    let (pe, po) = (even.l.len(), odd.l.len());
    let jobs: Vec<Block<'_, T>> = vec![
        (&even, &even, swap_basis(pe, true), 1),
        (&even, &even, swap_basis(pe, false), 1),
        (&odd, &odd, swap_basis(po, true), 1),
        (&odd, &odd, swap_basis(po, false), 1),
        (&even, &odd, tensor_basis(pe, po), 2),
    ];
    let h4 = from_u64::<T>(grid as u64).powi(4);
    let mut all: Vec<T> = jobs
        .par_iter()
        .map(|(a, b, basis, copies)| {
            let eig = block_eigenvalues(a, b, basis);
            let mut out = Vec::with_capacity(eig.len() * copies);
            for _ in 0..*copies {
                out.extend(eig.iter().map(|&e| e * h4));
            }
            out
        })
        .flatten()
        .collect();
    all.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    all
}

/// The `count` smallest clamped-plate eigenvalues of the unit square from the FD model.
pub fn fd_clamped_square<T: Scalar>(opts: FdOptions, count: usize) -> Result<Spectrum<T>> {
    require_count(count)?;
    let grid = opts.grid;
    if grid > MAX_FD_GRID {
        return Err(Error::Budget { grid, max: MAX_FD_GRID });
    }
    if grid < MIN_FD_GRID {
        return Err(Error::InvalidParameter { name: "grid", reason: format!("{grid} is below {MIN_FD_GRID}") });
    }
    if opts.extrapolate && !grid.is_multiple_of(2) {
        return Err(Error::InvalidParameter { name: "grid", reason: "extrapolation needs an even grid".into() });
    }
    let available = if opts.extrapolate { (grid / 2 - 1).pow(2) } else { (grid - 1).pow(2) };
    if count > available {
        return Err(Error::InvalidParameter {
            name: "count",
            reason: format!("{count} exceeds the {available} eigenvalues the grid resolves"),
        });
    }
    let h = 1.0 / grid as f64;
    let values: Vec<T> = if opts.extrapolate {
        let (fine, coarse) = rayon::join(|| solve_grid::<T>(grid), || solve_grid::<T>(grid / 2));
        fine.iter().zip(&coarse).take(count).map(|(&f, &c)| (lit::<T>(4.0) * f - c) / lit(3.0)).collect()
    } else {
        solve_grid::<T>(grid).into_iter().take(count).collect()
    };
    Ok(Spectrum::new(Operator::Bilaplace, values, Provenance::Discretized { h, extrapolated: opts.extrapolate }))
}
