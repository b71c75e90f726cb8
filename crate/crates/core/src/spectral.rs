/*
 * SPDX-License-Identifier: Apache-2.0
 */

//! Perron roots of sparse 0-1 matrices.
//!
//! Small irreducible blocks (at most [`EXACT_LIMIT`] states) use the
//! integer characteristic polynomial and Newton's method from the right of
//! the spectrum. Larger blocks use power iteration on `A + I` with
//! Collatz-Wielandt bounds as the stopping rule. Reducible matrices are
//! split into strongly connected components first.

use alloc::vec;
use alloc::vec::Vec;

/// Blocks up to this size are solved through the characteristic polynomial.
pub const EXACT_LIMIT: usize = 8;

/// Relative width of the Collatz-Wielandt bracket at which power
/// iteration stops.
pub const POWER_TOLERANCE: f64 = 1e-10;

const POWER_MAX_ITERS: usize = 5_000_000;

/// A square 0-1 matrix stored as successor lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: Vec<Vec<usize>>,
}

impl SparseMatrix {
    pub fn new(n: usize) -> Self {
        Self { rows: vec![Vec::new(); n] }
    }

    pub fn from_rows(mut rows: Vec<Vec<usize>>) -> Self {
        for r in &mut rows {
            r.sort_unstable();
            r.dedup();
        }
        Self { rows }
    }

    pub fn set(&mut self, i: usize, j: usize) {
        if let Err(pos) = self.rows[i].binary_search(&j) {
            self.rows[i].insert(pos, j);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].binary_search(&j).is_ok()
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Principal submatrix on `keep` (in the given order).
    pub fn principal(&self, keep: &[usize]) -> SparseMatrix {
        let mut index = vec![usize::MAX; self.size()];
        for (k, &i) in keep.iter().enumerate() {
            index[i] = k;
        }
        let rows = keep
            .iter()
            .map(|&i| self.rows[i].iter().filter(|&&j| index[j] != usize::MAX).map(|&j| index[j]).collect())
            .collect();
        SparseMatrix::from_rows(rows)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadiusMethod {
    /// No cycle: the matrix is nilpotent and the radius is exactly zero.
    Nilpotent,
    CharacteristicPolynomial,
    PowerIteration,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralRadius {
    pub radius: f64,
    /// Method used on the dominant component.
    pub method: RadiusMethod,
    /// False only if power iteration hit its iteration limit.
    pub converged: bool,
    pub components: usize,
    pub cyclic_components: usize,
}

/// Tarjan's algorithm, iterative. Components come out in reverse
/// topological order; each component's members are sorted.
pub fn strongly_connected_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            if *next < adj[v].len() {
                let w = adj[v][*next];
                *next += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

/// Coefficients `c[0..=n]` of `det(xI - A)`, exact, via Faddeev-LeVerrier.
pub fn characteristic_polynomial(m: &SparseMatrix) -> Vec<i128> {
    let n = m.size();
    let a: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| if m.get(i, j) { 1 } else { 0 }).collect())
        .collect();
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    let mut mk = vec![vec![0i128; n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0i128;
                for l in 0..n {
                    s += a[i][l] * mk[l][j];
                }
                next[i][j] = s;
            }
            next[i][i] += coeffs[n - k + 1];
        }
        mk = next;
        let mut tr = 0i128;
        for i in 0..n {
            for l in 0..n {
                tr += a[i][l] * mk[l][i];
            }
        }
        coeffs[n - k] = -tr / k as i128;
    }
    coeffs
}

fn eval_with_derivative(coeffs: &[i128], x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    for &c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c as f64;
    }
    (p, dp)
}

/// Largest real root of the characteristic polynomial of a nonnegative
/// matrix. Every eigenvalue has real part at most the Perron root, so the
/// polynomial and its first two derivatives are positive to the right of
/// it and Newton's method from an upper bound decreases monotonically.
pub fn perron_root_exact(m: &SparseMatrix) -> f64 {
    let n = m.size();
    if n == 0 {
        return 0.0;
    }
    let coeffs = characteristic_polynomial(m);
    if coeffs[..n].iter().all(|&c| c == 0) {
        return 0.0;
    }
    let max_row = m.rows().iter().map(Vec::len).max().unwrap_or(0) as f64;
    let mut x = max_row + 1.0;
    for _ in 0..100_000 {
        let (p, dp) = eval_with_derivative(&coeffs, x);
        if p <= 0.0 || dp <= 0.0 {
            break;
        }
        let step = p / dp;
        let next = x - step;
        if next >= x || step <= 1e-16 * x.max(1e-300) {
            x = next.min(x);
            break;
        }
        x = next;
    }
    x.max(0.0)
}

/// Power iteration on `A + I` for an irreducible matrix.
fn perron_root_power(m: &SparseMatrix) -> (f64, bool) {
    let n = m.size();
    let mut x = vec![1.0f64; n];
    let mut y = vec![0.0f64; n];
    for _ in 0..POWER_MAX_ITERS {
        for i in 0..n {
            let mut s = x[i];
            for &j in m.row(i) {
                s += x[j];
            }
            y[i] = s;
        }
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for i in 0..n {
            let r = y[i] / x[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        let scale = y.iter().cloned().fold(0.0, f64::max);
        for i in 0..n {
            x[i] = y[i] / scale;
        }
        if hi - lo <= POWER_TOLERANCE * (hi - 1.0).max(1e-300) {
            return (0.5 * (lo + hi) - 1.0, true);
        }
    }
    let mut hi = 0.0f64;
    for i in 0..n {
        let mut s = x[i];
        for &j in m.row(i) {
            s += x[j];
        }
        hi = hi.max(s / x[i]);
    }
    (hi - 1.0, false)
}

/// Spectral radius of a 0-1 matrix.
pub fn spectral_radius(m: &SparseMatrix) -> SpectralRadius {
    let comps = strongly_connected_components(m.rows());
    let mut best = SpectralRadius {
        radius: 0.0,
        method: RadiusMethod::Nilpotent,
        converged: true,
        components: comps.len(),
        cyclic_components: 0,
    };
    for comp in &comps {
        let cyclic = comp.len() > 1 || m.get(comp[0], comp[0]);
        if !cyclic {
            continue;
        }
        best.cyclic_components += 1;
        let sub = m.principal(comp);
        let (r, method, ok) = if sub.size() <= EXACT_LIMIT {
            (perron_root_exact(&sub), RadiusMethod::CharacteristicPolynomial, true)
        } else {
            let (r, ok) = perron_root_power(&sub);
            (r, RadiusMethod::PowerIteration, ok)
        };
        if r > best.radius || best.method == RadiusMethod::Nilpotent {
            best.radius = r.max(best.radius);
            best.method = method;
            best.converged = ok;
        }
    }
    best
}
