//! Phase-1 simplex: decide feasibility of `A x = b, x ≥ 0`.
//!
//! Dense tableau with one artificial variable per row and Bland's smallest
//! index rule for both entering and leaving variables, so the method cannot
//! cycle. Intended for the small dense systems that appear when testing
//! matrix classes and cone membership.

/// Finds `x ≥ 0` with `A x = b`, or `None` if infeasible.
///
/// `a` is given row-major with `rows × cols` entries. Feasibility is accepted
/// when the phase-1 optimum (sum of artificials) is at most `tol·(1 + ‖b‖∞)`.
pub fn feasible_point(a: &[f64], rows: usize, cols: usize, b: &[f64], tol: f64) -> Option<Vec<f64>> {
    assert_eq!(a.len(), rows * cols);
    assert_eq!(b.len(), rows);
    if rows == 0 {
        return Some(vec![0.0; cols]);
    }

    // Tableau columns: [structural (cols) | artificial (rows) | rhs].
    let width = cols + rows + 1;
    let rhs = width - 1;
    let mut t = vec![0.0; rows * width];
    for i in 0..rows {
        let flip = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..cols {
            t[i * width + j] = flip * a[i * cols + j];
        }
        t[i * width + cols + i] = 1.0;
        t[i * width + rhs] = flip * b[i];
    }
    let mut basis: Vec<usize> = (cols..cols + rows).collect();

    // Reduced costs of minimizing the artificial sum: c_j − c_Bᵀ B⁻¹ a_j.
    let mut cost = vec![0.0; width];
    for i in 0..rows {
        for j in 0..width {
            if j < cols || j == rhs {
                cost[j] -= t[i * width + j];
            }
        }
    }

    let scale = 1.0 + b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let eps = 1e-12 * scale.max(1.0);
    let max_iter = 50 * (rows + cols) + 1000;

    for _ in 0..max_iter {
        // Bland: smallest index with negative reduced cost.
        let Some(enter) = (0..cols + rows).find(|&j| cost[j] < -eps) else {
            break;
        };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..rows {
            let col = t[i * width + enter];
            if col > eps {
                let ratio = t[i * width + rhs] / col;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((r, best)) => {
                        if ratio < best - eps || ((ratio - best).abs() <= eps && basis[i] < basis[r]) {
                            Some((i, ratio))
                        } else {
                            Some((r, best))
                        }
                    }
                };
            }
        }
        // Phase-1 objective is bounded below by zero, so a column with no
        // positive entry cannot have negative reduced cost in exact arithmetic.
        let Some((r, _)) = leave else { break };
        pivot(&mut t, &mut cost, rows, width, r, enter);
        basis[r] = enter;
    }

    let infeasibility = -cost[rhs];
    if infeasibility > tol * scale {
        return None;
    }
    let mut x = vec![0.0; cols];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < cols {
            x[bv] = t[i * width + rhs].max(0.0);
        }
    }
    Some(x)
}

fn pivot(t: &mut [f64], cost: &mut [f64], rows: usize, width: usize, r: usize, c: usize) {
    let p = t[r * width + c];
    for j in 0..width {
        t[r * width + j] /= p;
    }
    for i in 0..rows {
        if i == r {
            continue;
        }
        let f = t[i * width + c];
        if f != 0.0 {
            for j in 0..width {
                t[i * width + j] -= f * t[r * width + j];
            }
        }
    }
    let f = cost[c];
    if f != 0.0 {
        for j in 0..width {
            cost[j] -= f * t[r * width + j];
        }
    }
}
