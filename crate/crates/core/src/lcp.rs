//! Linear complementarity problems: find `x ≥ 0` with `w = M x + q ≥ 0` and
//! `xᵀw = 0`.
//!
//! [`lemke_solve`] follows one complementary pivoting path and is the
//! workhorse; [`enumerate_solutions`] checks all `2^n` supports and is the
//! ground truth on small instances.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::matrix::{self, Lu, SquareMatrix, SINGULAR_RCOND};

pub const ENUMERATION_CAP: usize = 20;
/// Solutions closer than this in the ∞-norm are reported once.
pub const DEDUP_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct LcpInstance {
    m: SquareMatrix,
    q: Vec<f64>,
}

impl LcpInstance {
    pub fn new(m: SquareMatrix, q: Vec<f64>) -> Result<Self> {
        if q.len() != m.n() {
            return Err(Error::DimensionMismatch {
                expected: m.n(),
                found: q.len(),
            });
        }
        if q.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidMatrix("q has non-finite entries".into()));
        }
        Ok(Self { m, q })
    }

    pub fn n(&self) -> usize {
        self.m.n()
    }

    pub fn m(&self) -> &SquareMatrix {
        &self.m
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    /// `M x + q`.
    pub fn slack(&self, x: &[f64]) -> Vec<f64> {
        self.m
            .mul_vec(x)
            .into_iter()
            .zip(&self.q)
            .map(|(a, b)| a + b)
            .collect()
    }

    /// Relabels index `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut q = vec![0.0; self.n()];
        for (i, &p) in perm.iter().enumerate() {
            q[p] = self.q[i];
        }
        Self {
            m: self.m.permuted(perm),
            q,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LcpSolution {
    pub x: Vec<f64>,
    pub w: Vec<f64>,
    /// Indices with `x_i > tol`.
    pub support: Vec<usize>,
}

impl LcpSolution {
    fn from_parts(x: Vec<f64>, w: Vec<f64>, tol: f64) -> Self {
        let support = (0..x.len()).filter(|&i| x[i] > tol).collect();
        Self { x, w, support }
    }

    /// Coordinates with both `x_i` and `w_i` within `tol` of zero.
    pub fn degenerate_coordinates(&self, tol: f64) -> Vec<usize> {
        (0..self.x.len())
            .filter(|&i| self.x[i].abs() <= tol && self.w[i].abs() <= tol)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LemkeOutcome {
    Solved { solution: LcpSolution, pivots: usize },
    /// The path left along an unbounded ray. Not a proof of infeasibility
    /// unless `M` belongs to a class where Lemke is complete.
    RayTermination { pivots: usize },
}

impl LemkeOutcome {
    pub fn solution(&self) -> Option<&LcpSolution> {
        match self {
            LemkeOutcome::Solved { solution, .. } => Some(solution),
            LemkeOutcome::RayTermination { .. } => None,
        }
    }

    pub fn pivots(&self) -> usize {
        match self {
            LemkeOutcome::Solved { pivots, .. } | LemkeOutcome::RayTermination { pivots } => *pivots,
        }
    }
}

/// Lemke's complementary pivoting with covering vector `1` and lexicographic
/// ratio test.
pub fn lemke_solve(inst: &LcpInstance, tol: f64) -> Result<LemkeOutcome> {
    let n = inst.n();
    if inst.q.iter().all(|&v| v >= 0.0) {
        let solution = LcpSolution::from_parts(vec![0.0; n], inst.q.clone(), tol);
        return Ok(LemkeOutcome::Solved { solution, pivots: 0 });
    }

    let mut tab = Tableau::new(inst);
    let z0 = 2 * n;
    let max_pivots = 10usize.saturating_mul(1usize << n.min(40));

    // z0 enters; every row has coefficient -1 in its column.
    let r = tab
        .lex_min_row(z0, |a| a < 0.0, None)
        .expect("some q_i is negative");
    let mut leaving = tab.pivot(r, z0);
    let mut pivots = 1;

    loop {
        if leaving == z0 {
            break;
        }
        if pivots >= max_pivots {
            return Err(Error::CycleDetected { pivots });
        }
        let entering = complement(leaving, n);
        let Some(r) = tab.lex_min_row(entering, |a| a > tab.eps, Some(z0)) else {
            return Ok(LemkeOutcome::RayTermination { pivots });
        };
        leaving = tab.pivot(r, entering);
        pivots += 1;
    }

    let mut x = vec![0.0; n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if (n..2 * n).contains(&b) {
            x[b - n] = tab.rhs(i);
        }
    }
    let solution = polish(inst, &x, tol).unwrap_or_else(|| clean(inst, x, tol));
    Ok(LemkeOutcome::Solved { solution, pivots })
}

fn complement(var: usize, n: usize) -> usize {
    if var < n {
        var + n
    } else {
        var - n
    }
}

/// Dense tableau over `[w (n) | z (n) | z0 | rhs]`. The `w` block of the
/// current tableau is `B⁻¹`, which supplies the lexicographic tie-breakers.
struct Tableau {
    n: usize,
    width: usize,
    t: Vec<f64>,
    basis: Vec<usize>,
    eps: f64,
}

impl Tableau {
    fn new(inst: &LcpInstance) -> Self {
        let n = inst.n();
        let width = 2 * n + 2;
        let mut t = vec![0.0; n * width];
        for i in 0..n {
            t[i * width + i] = 1.0;
            for j in 0..n {
                t[i * width + n + j] = -inst.m[(i, j)];
            }
            t[i * width + 2 * n] = -1.0;
            t[i * width + 2 * n + 1] = inst.q[i];
        }
        let scale = 1.0 + inst.m.max_abs();
        Self {
            n,
            width,
            t,
            basis: (0..n).collect(),
            eps: 1e-12 * scale,
        }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.t[i * self.width + j]
    }

    #[inline]
    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.width - 1)
    }

    /// Row minimizing `(rhs_i, B⁻¹_i) / a_i` lexicographically among rows whose
    /// entering-column entry `a_i` passes `admissible`. When `prefer` is basic
    /// in a row tied on the plain ratio, that row wins.
    fn lex_min_row(&self, col: usize, admissible: impl Fn(f64) -> bool, prefer: Option<usize>) -> Option<usize> {
        let rows: Vec<usize> = (0..self.n).filter(|&i| admissible(self.at(i, col))).collect();
        let first = *rows.first()?;
        let key = |i: usize, k: usize| -> f64 {
            let a = self.at(i, col).abs();
            if k == 0 {
                self.rhs(i) / a
            } else {
                self.at(i, k - 1) / a
            }
        };
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-11 * (1.0 + a.abs().max(b.abs()));

        if let Some(p) = prefer {
            let min_ratio = rows.iter().map(|&i| key(i, 0)).fold(f64::INFINITY, f64::min);
            if let Some(&i) = rows
                .iter()
                .find(|&&i| self.basis[i] == p && close(key(i, 0), min_ratio))
            {
                return Some(i);
            }
        }

        let mut best = first;
        for &i in &rows[1..] {
            for k in 0..=self.n {
                let (a, b) = (key(i, k), key(best, k));
                if close(a, b) {
                    continue;
                }
                if a < b {
                    best = i;
                }
                break;
            }
        }
        Some(best)
    }

    /// Pivots on `(r, c)`; returns the variable that left the basis.
    fn pivot(&mut self, r: usize, c: usize) -> usize {
        let w = self.width;
        let p = self.t[r * w + c];
        for j in 0..w {
            self.t[r * w + j] /= p;
        }
        for i in 0..self.n {
            if i == r {
                continue;
            }
            let f = self.t[i * w + c];
            if f != 0.0 {
                for j in 0..w {
                    self.t[i * w + j] -= f * self.t[r * w + j];
                }
                self.t[i * w + c] = 0.0;
            }
        }
        std::mem::replace(&mut self.basis[r], c)
    }
}

enum SupportOutcome {
    Singular,
    Infeasible,
    Solution(LcpSolution),
}

/// Solves `(M x + q)_S = 0`, `x_{S̄} = 0` and checks sign feasibility.
fn solve_on_support(inst: &LcpInstance, support: &[usize], tol: f64) -> SupportOutcome {
    let n = inst.n();
    let mut x = vec![0.0; n];
    if !support.is_empty() {
        let sub = inst.m.principal_submatrix(support);
        let lu = Lu::new(&sub);
        if lu.rcond() < SINGULAR_RCOND {
            return SupportOutcome::Singular;
        }
        let rhs: Vec<f64> = support.iter().map(|&i| -inst.q[i]).collect();
        let Ok(xs) = lu.solve(&rhs) else {
            return SupportOutcome::Singular;
        };
        for (&i, v) in support.iter().zip(xs) {
            x[i] = v;
        }
    }
    if support.iter().any(|&i| x[i] < -tol) {
        return SupportOutcome::Infeasible;
    }
    let w = inst.slack(&x);
    let mut in_support = vec![false; n];
    support.iter().for_each(|&i| in_support[i] = true);
    if (0..n).any(|i| !in_support[i] && w[i] < -tol) {
        return SupportOutcome::Infeasible;
    }
    SupportOutcome::Solution(clean(inst, x, tol))
}

/// Clamps tiny negative values and zeroes `w` on the support of `x`.
fn clean(inst: &LcpInstance, mut x: Vec<f64>, tol: f64) -> LcpSolution {
    x.iter_mut().filter(|v| **v < 0.0 && **v >= -tol).for_each(|v| *v = 0.0);
    let mut w = inst.slack(&x);
    for i in 0..x.len() {
        if (x[i] > 0.0 && w[i].abs() <= tol) || (w[i] < 0.0 && w[i] >= -tol) {
            w[i] = 0.0;
        }
    }
    LcpSolution::from_parts(x, w, tol)
}

/// Re-solves on the support of an approximate solution for full precision.
pub fn polish(inst: &LcpInstance, x: &[f64], tol: f64) -> Option<LcpSolution> {
    let support: Vec<usize> = (0..x.len()).filter(|&i| x[i] > tol).collect();
    match solve_on_support(inst, &support, tol) {
        SupportOutcome::Solution(s) if verify_solution(inst, &s, tol) => Some(s),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Enumeration {
    /// Distinct solutions, sorted lexicographically by `x`.
    pub solutions: Vec<LcpSolution>,
    /// Supports whose linear subsystem was numerically singular.
    pub singular_supports: Vec<Vec<usize>>,
    pub supports_checked: usize,
}

/// Exhaustive search over all `2^n` candidate supports.
pub fn enumerate_solutions(inst: &LcpInstance, tol: f64) -> Result<Enumeration> {
    let n = inst.n();
    if n > ENUMERATION_CAP {
        return Err(Error::DimensionTooLarge {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    let mut solutions: Vec<LcpSolution> = Vec::new();
    let mut singular_supports = Vec::new();
    let mut support = Vec::with_capacity(n);
    let total = 1u64 << n;
    for mask in 0..total {
        support.clear();
        support.extend((0..n).filter(|&i| mask & (1 << i) != 0));
        match solve_on_support(inst, &support, tol) {
            SupportOutcome::Singular => singular_supports.push(support.clone()),
            SupportOutcome::Infeasible => {}
            SupportOutcome::Solution(s) => {
                if !solutions
                    .iter()
                    .any(|t| matrix::max_abs_diff(&t.x, &s.x) <= DEDUP_TOL)
                {
                    solutions.push(s);
                }
            }
        }
    }
    solutions.sort_by(|a, b| lex_cmp(&a.x, &b.x));
    Ok(Enumeration {
        solutions,
        singular_supports,
        supports_checked: total as usize,
    })
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Feasibility and complementarity of `(x, w)` for the instance, within `tol`.
pub fn verify_solution(inst: &LcpInstance, sol: &LcpSolution, tol: f64) -> bool {
    let n = inst.n();
    if sol.x.len() != n || sol.w.len() != n {
        return false;
    }
    let residual = matrix::max_abs_diff(&sol.w, &inst.slack(&sol.x));
    let min_x = sol.x.iter().copied().fold(f64::INFINITY, f64::min);
    let min_w = sol.w.iter().copied().fold(f64::INFINITY, f64::min);
    let gap: f64 = sol.x.iter().zip(&sol.w).map(|(a, b)| a * b).sum();
    residual <= tol && min_x >= -tol && min_w >= -tol && gap.abs() <= tol * n as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    fn inst(rows: &[&[f64]], q: &[f64]) -> LcpInstance {
        LcpInstance::new(SquareMatrix::from_rows(rows).unwrap(), q.to_vec()).unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        matrix::max_abs_diff(a, b) <= tol
    }

    #[test]
    fn positive_q_gives_zero_effort() {
        let p = LcpInstance::new(SquareMatrix::identity(2), vec![1.0, 1.0]).unwrap();
        let out = lemke_solve(&p, TOL).unwrap();
        let s = out.solution().unwrap();
        assert_eq!(s.x, vec![0.0, 0.0]);
        assert_eq!(s.w, vec![1.0, 1.0]);
        assert_eq!(out.pivots(), 0);
    }

    #[test]
    fn lemke_unique_substitutes() {
        let p = inst(&[&[1.0, 0.5], &[0.5, 1.0]], &[-1.0, -1.0]);
        let s = lemke_solve(&p, TOL).unwrap().solution().cloned().unwrap();
        assert!(close(&s.x, &[2.0 / 3.0, 2.0 / 3.0], 1e-14));
        assert!(close(&s.w, &[0.0, 0.0], 1e-14));
        assert!(verify_solution(&p, &s, TOL));
    }

    #[test]
    fn lemke_ray_on_strong_complements() {
        let p = inst(&[&[1.0, -2.0], &[-2.0, 1.0]], &[-1.0, -1.0]);
        assert!(matches!(lemke_solve(&p, TOL).unwrap(), LemkeOutcome::RayTermination { .. }));
    }

    #[test]
    fn lemke_finds_one_of_several() {
        let p = inst(&[&[1.0, 2.0], &[2.0, 1.0]], &[-1.0, -1.0]);
        let s = lemke_solve(&p, TOL).unwrap().solution().cloned().unwrap();
        assert!(verify_solution(&p, &s, TOL));
    }

    #[test]
    fn enumeration_examples() {
        let p = inst(&[&[1.0, 2.0], &[2.0, 1.0]], &[-1.0, -1.0]);
        let e = enumerate_solutions(&p, TOL).unwrap();
        let xs: Vec<_> = e.solutions.iter().map(|s| s.x.clone()).collect();
        assert_eq!(xs.len(), 3);
        assert!(close(&xs[0], &[0.0, 1.0], 1e-14));
        assert!(close(&xs[1], &[1.0 / 3.0, 1.0 / 3.0], 1e-14));
        assert!(close(&xs[2], &[1.0, 0.0], 1e-14));

        let p = inst(&[&[1.0, 0.5], &[0.5, 1.0]], &[-1.0, -1.0]);
        let e = enumerate_solutions(&p, TOL).unwrap();
        assert_eq!(e.solutions.len(), 1);
        assert!(close(&e.solutions[0].x, &[2.0 / 3.0, 2.0 / 3.0], 1e-14));

        let p = LcpInstance::new(SquareMatrix::identity(2), vec![1.0, 1.0]).unwrap();
        let e = enumerate_solutions(&p, TOL).unwrap();
        assert_eq!(e.solutions.len(), 1);
        assert_eq!(e.solutions[0].x, vec![0.0, 0.0]);

        let p = inst(&[&[1.0, -2.0], &[-2.0, 1.0]], &[-1.0, -1.0]);
        assert!(enumerate_solutions(&p, TOL).unwrap().solutions.is_empty());
    }

    #[test]
    fn enumeration_records_singular_supports() {
        let p = inst(&[&[1.0, 1.0], &[1.0, 1.0]], &[-1.0, -1.0]);
        let e = enumerate_solutions(&p, TOL).unwrap();
        assert_eq!(e.singular_supports, vec![vec![0, 1]]);
        // (1,0) and (0,1) are solutions; the segment between them is missed by design.
        assert_eq!(e.solutions.len(), 2);
    }

    #[test]
    fn enumeration_cap() {
        let p = LcpInstance::new(SquareMatrix::identity(21), vec![1.0; 21]).unwrap();
        assert!(matches!(enumerate_solutions(&p, TOL), Err(Error::DimensionTooLarge { .. })));
    }

    #[test]
    fn verify_rejects_bad_pairs() {
        let p = LcpInstance::new(SquareMatrix::identity(2), vec![1.0, 1.0]).unwrap();
        let bad = LcpSolution {
            x: vec![1.0, 1.0],
            w: vec![1.0, 1.0],
            support: vec![0, 1],
        };
        assert!(!verify_solution(&p, &bad, TOL));

        let p = inst(&[&[1.0, 2.0], &[2.0, 1.0]], &[-1.0, -1.0]);
        let third = 1.0 / 3.0;
        let good = LcpSolution {
            x: vec![third, third],
            w: p.slack(&[third, third]),
            support: vec![0, 1],
        };
        assert!(verify_solution(&p, &good, TOL));
    }

    #[test]
    fn degenerate_start_is_handled() {
        // Ties in q and a degenerate second pivot.
        let p = inst(
            &[&[1.0, 1.0, 0.0], &[1.0, 1.0, 0.0], &[0.0, 0.0, 1.0]],
            &[-1.0, -1.0, -1.0],
        );
        let s = lemke_solve(&p, TOL).unwrap().solution().cloned().unwrap();
        assert!(verify_solution(&p, &s, TOL));
    }

    #[test]
    fn mismatched_q_rejected() {
        assert!(LcpInstance::new(SquareMatrix::identity(2), vec![1.0]).is_err());
    }
}
