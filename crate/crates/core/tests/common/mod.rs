//! Independent dense reference implementations and shared fixtures. Nothing
//! here calls into the library's linear algebra; operators are only used as
//! containers.

#![allow(dead_code, clippy::needless_range_loop)]

use edss::tensor::{ComplexOperator, DensityMatrix, Register, Role, C64};
use proptest::prelude::*;

pub type Mat = Vec<Vec<C64>>;

pub fn to_mat(op: &ComplexOperator) -> Mat {
    (0..op.dim()).map(|i| op.row(i).to_vec()).collect()
}

pub fn from_mat(m: &Mat) -> ComplexOperator {
    ComplexOperator::from_vec(m.len(), m.iter().flatten().copied().collect()).unwrap()
}

pub fn max_diff(a: &Mat, b: &Mat) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Qubit digits of `index`, most significant first.
pub fn bits(index: usize, n: usize) -> Vec<usize> {
    (0..n).map(|k| (index >> (n - 1 - k)) & 1).collect()
}

pub fn from_bits(b: &[usize]) -> usize {
    b.iter().fold(0, |acc, &x| acc * 2 + x)
}

pub fn oracle_kron(a: &Mat, b: &Mat) -> Mat {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![C64::new(0.0, 0.0); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// Transposes the qubits flagged in `side` by swapping their bra/ket digits.
pub fn oracle_partial_transpose(rho: &Mat, n: usize, side: &[bool]) -> Mat {
    let d = rho.len();
    let mut out = vec![vec![C64::new(0.0, 0.0); d]; d];
    for i in 0..d {
        for j in 0..d {
            let (mut bi, mut bj) = (bits(i, n), bits(j, n));
            for q in 0..n {
                if side[q] {
                    std::mem::swap(&mut bi[q], &mut bj[q]);
                }
            }
            out[from_bits(&bi)][from_bits(&bj)] = rho[i][j];
        }
    }
    out
}

/// Sums over matching digits of the qubits not in `keep`.
pub fn oracle_partial_trace(rho: &Mat, n: usize, keep: &[bool]) -> Mat {
    let kept: Vec<usize> = (0..n).filter(|&q| keep[q]).collect();
    let dk = 1 << kept.len();
    let mut out = vec![vec![C64::new(0.0, 0.0); dk]; dk];
    for i in 0..rho.len() {
        for j in 0..rho.len() {
            let (bi, bj) = (bits(i, n), bits(j, n));
            if (0..n).any(|q| !keep[q] && bi[q] != bj[q]) {
                continue;
            }
            let ki = from_bits(&kept.iter().map(|&q| bi[q]).collect::<Vec<_>>());
            let kj = from_bits(&kept.iter().map(|&q| bj[q]).collect::<Vec<_>>());
            out[ki][kj] += rho[i][j];
        }
    }
    out
}

/// Cyclic complex Jacobi eigenvalue iteration for Hermitian matrices.
/// Returns ascending eigenvalues and the eigenvector matrix (columns).
pub fn jacobi_eigen(m: &Mat) -> (Vec<f64>, Mat) {
    let n = m.len();
    let mut a = m.clone();
    let mut v: Mat = (0..n)
        .map(|i| (0..n).map(|j| C64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
        .collect();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j].norm_sqr())
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq.norm() < 1e-300 {
                    continue;
                }
                // rotate so that a[p][q] becomes zero
                let phase = apq / apq.norm();
                let app = a[p][p].re;
                let aqq = a[q][q].re;
                let theta = 0.5 * (2.0 * apq.norm()).atan2(aqq - app);
                let (c, s) = (theta.cos(), theta.sin());
                // J = diag(1, e^{-iα}) · [[c, s], [−s, c]] with a_pq = |a_pq| e^{iα}
                let gpp = C64::new(c, 0.0);
                let gpq = C64::new(s, 0.0);
                let gqp = -phase.conj() * s;
                let gqq = phase.conj() * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = akp * gpp + akq * gqp;
                    a[k][q] = akp * gpq + akq * gqq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = gpp.conj() * apk + gqp.conj() * aqk;
                    a[q][k] = gpq.conj() * apk + gqq.conj() * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[k][p], v[k][q]);
                    v[k][p] = vkp * gpp + vkq * gqp;
                    v[k][q] = vkp * gpq + vkq * gqq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[x][x].re.total_cmp(&a[y][y].re));
    let values = order.iter().map(|&k| a[k][k].re).collect();
    let vectors = (0..n).map(|i| order.iter().map(|&k| v[i][k]).collect()).collect();
    (values, vectors)
}

pub fn jacobi_values(m: &Mat) -> Vec<f64> {
    jacobi_eigen(m).0
}

/// Number of eigenvalues of the Hermitian `m` below `lambda`, from the signs
/// of the pivots of `m − λI` (Sylvester's law of inertia).
pub fn count_below(m: &Mat, lambda: f64) -> usize {
    let n = m.len();
    let mut a = m.clone();
    for (i, row) in a.iter_mut().enumerate() {
        row[i] -= lambda;
    }
    let mut negatives = 0;
    for k in 0..n {
        let mut pivot = a[k][k].re;
        if pivot.abs() < 1e-300 {
            pivot = -1e-300;
        }
        if pivot < 0.0 {
            negatives += 1;
        }
        for i in k + 1..n {
            let f = a[i][k] / pivot;
            for j in k + 1..n {
                let sub = f * a[k][j];
                a[i][j] -= sub;
            }
        }
    }
    negatives
}

/// Eigenvalues located one by one through bisection on [`count_below`].
pub fn bisection_values(m: &Mat) -> Vec<f64> {
    let n = m.len();
    let bound: f64 = m
        .iter()
        .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
        + 1.0;
    (0..n)
        .map(|k| {
            let (mut lo, mut hi) = (-bound, bound);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if count_below(m, mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn adjoint(a: &Mat) -> Mat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].conj()).collect()).collect()
}

pub fn qubit_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("Q{i}")).collect()
}

/// `G G† / tr` for a complex `G` given as interleaved re/im parts.
pub fn density_from_entries(n_qubits: usize, entries: &[f64]) -> DensityMatrix {
    let d = 1 << n_qubits;
    let g: Mat = (0..d)
        .map(|i| (0..d).map(|j| C64::new(entries[2 * (i * d + j)], entries[2 * (i * d + j) + 1])).collect())
        .collect();
    let mut rho = mat_mul(&g, &adjoint(&g));
    let tr: f64 = (0..d).map(|i| rho[i][i].re).sum();
    for row in &mut rho {
        for z in row.iter_mut() {
            *z /= tr;
        }
    }
    // exact Hermiticity
    for i in 0..d {
        rho[i][i].im = 0.0;
        for j in i + 1..d {
            rho[j][i] = rho[i][j].conj();
        }
    }
    let register = Register::qubits(&qubit_labels(n_qubits), Role::Node).unwrap();
    DensityMatrix::new(register, from_mat(&rho)).unwrap()
}

/// Random mixed states on 1..=`max_qubits` qubits, plus a nonempty proper
/// subset mask when `n ≥ 2`.
pub fn arb_state(min_qubits: usize, max_qubits: usize) -> impl Strategy<Value = DensityMatrix> {
    (min_qubits..=max_qubits).prop_flat_map(|n| {
        let d = 1usize << n;
        proptest::collection::vec(-1.0f64..1.0, 2 * d * d)
            .prop_filter("nonzero", |v| v.iter().any(|x| x.abs() > 1e-3))
            .prop_map(move |v| density_from_entries(n, &v))
    })
}

pub fn arb_state_and_side(max_qubits: usize) -> impl Strategy<Value = (DensityMatrix, Vec<bool>)> {
    arb_state(2, max_qubits).prop_flat_map(|rho| {
        let n = rho.register().len();
        let mask = (1u32..(1 << n) - 1).prop_map(move |m| (0..n).map(|q| (m >> (n - 1 - q)) & 1 == 1).collect());
        (Just(rho), mask)
    })
}

pub fn masked_labels(rho: &DensityMatrix, mask: &[bool]) -> Vec<String> {
    rho.register()
        .labels()
        .zip(mask)
        .filter(|(_, &m)| m)
        .map(|(l, _)| l.to_owned())
        .collect()
}

/// Sorted negative values of a list.
pub fn negatives(values: &[f64], threshold: f64) -> Vec<f64> {
    let mut v: Vec<f64> = values.iter().copied().filter(|&x| x < -threshold).collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn lists_match(actual: &[f64], expected: &[f64], tol: f64) -> bool {
    let mut a = actual.to_vec();
    let mut e = expected.to_vec();
    a.sort_by(f64::total_cmp);
    e.sort_by(f64::total_cmp);
    a.len() == e.len() && a.iter().zip(&e).all(|(x, y)| (x - y).abs() <= tol)
}
