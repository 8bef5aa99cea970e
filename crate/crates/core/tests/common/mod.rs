//! Reference implementations used as test oracles. Everything here works on
//! plain nested vectors and shares no numerical code with the library.

#![allow(dead_code, clippy::needless_range_loop)]

use trotmit::linalg::ComplexMatrix;
use trotmit::C64;

pub type Dense = Vec<Vec<C64>>;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn zeros(n: usize) -> Dense {
    vec![vec![c(0.0, 0.0); n]; n]
}

pub fn identity(n: usize) -> Dense {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = c(1.0, 0.0);
    }
    m
}

pub fn mm(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let p = b[0].len();
    let mut out = vec![vec![c(0.0, 0.0); p]; n];
    for i in 0..n {
        for k in 0..b.len() {
            let aik = a[i][k];
            for j in 0..p {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn dagger(a: &Dense) -> Dense {
    let mut out = vec![vec![c(0.0, 0.0); a.len()]; a[0].len()];
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            out[j][i] = v.conj();
        }
    }
    out
}

pub fn add(a: &Dense, b: &Dense) -> Dense {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn scale(a: &Dense, s: C64) -> Dense {
    a.iter()
        .map(|r| r.iter().map(|x| x * s).collect())
        .collect()
}

pub fn kron(a: &Dense, b: &Dense) -> Dense {
    let (ra, ca, rb, cb) = (a.len(), a[0].len(), b.len(), b[0].len());
    let mut out = vec![vec![c(0.0, 0.0); ca * cb]; ra * rb];
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn trace(a: &Dense) -> C64 {
    (0..a.len()).map(|i| a[i][i]).sum()
}

pub fn max_diff(a: &Dense, b: &Dense) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| (x - y).norm()))
        .fold(0.0, f64::max)
}

pub fn to_dense(m: &ComplexMatrix) -> Dense {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)]).collect())
        .collect()
}

pub fn from_dense(d: &Dense) -> ComplexMatrix {
    ComplexMatrix::new(d.len(), d[0].len(), d.iter().flatten().copied().collect()).unwrap()
}

pub fn pauli2(p: char) -> Dense {
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    match p {
        'I' => vec![vec![l, o], vec![o, l]],
        'X' => vec![vec![o, l], vec![l, o]],
        'Y' => vec![vec![o, -i], vec![i, o]],
        'Z' => vec![vec![l, o], vec![o, -l]],
        _ => panic!("bad Pauli {p}"),
    }
}

/// Tensor product of the label's factors, leftmost character outermost.
pub fn pauli_label(label: &str) -> Dense {
    let mut out = vec![vec![c(1.0, 0.0)]];
    for ch in label.chars() {
        out = kron(&out, &pauli2(ch));
    }
    out
}

pub fn hamiltonian_dense(terms: &[(&str, f64)]) -> Dense {
    let n = terms[0].0.len();
    let mut h = zeros(1 << n);
    for &(label, coeff) in terms {
        h = add(&h, &scale(&pauli_label(label), c(coeff, 0.0)));
    }
    h
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn jacobi_symmetric(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _ in 0..200 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        let diag: f64 = (0..n).map(|i| a[i][i] * a[i][i]).sum();
        if off <= 1e-30 * (1.0 + diag) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = cs * akp - sn * akq;
                    row[q] = sn * akp + cs * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = cs * apk - sn * aqk;
                    a[q][k] = sn * apk + cs * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Hermitian eigenvalues through the real embedding `[[A, -B], [B, A]]`,
/// whose spectrum is the Hermitian one with every value doubled.
pub fn hermitian_eigenvalues(h: &Dense) -> Vec<f64> {
    let n = h.len();
    let mut big = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let (re, im) = (h[i][j].re, h[i][j].im);
            big[i][j] = re;
            big[i + n][j + n] = re;
            big[i][j + n] = -im;
            big[i + n][j] = im;
        }
    }
    jacobi_symmetric(big).into_iter().step_by(2).collect()
}

pub fn trace_norm_hermitian(h: &Dense) -> f64 {
    hermitian_eigenvalues(h).iter().map(|l| l.abs()).sum()
}

fn inf_norm(a: &Dense) -> f64 {
    a.iter()
        .map(|r| r.iter().map(|x| x.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `exp(A)` by scaling and squaring around a truncated Taylor series.
pub fn taylor_expm(a: &Dense) -> Dense {
    let n = a.len();
    let norm = inf_norm(a);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = scale(a, c(0.5f64.powi(squarings as i32), 0.0));
    let mut result = identity(n);
    let mut term = identity(n);
    for k in 1..=30 {
        term = scale(&mm(&term, &scaled), c(1.0 / k as f64, 0.0));
        result = add(&result, &term);
    }
    for _ in 0..squarings {
        result = mm(&result, &result);
    }
    result
}

/// `exp(-i t H)`.
pub fn propagator(h: &Dense, t: f64) -> Dense {
    taylor_expm(&scale(h, c(0.0, -t)))
}

/// Gaussian elimination with partial pivoting.
pub fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

/// Weights with `sum_i g_i a_i^j = [j == 0]` for `j < k`.
pub fn richardson_oracle(nodes: &[f64]) -> Vec<f64> {
    let k = nodes.len();
    let a: Vec<Vec<f64>> = (0..k)
        .map(|j| nodes.iter().map(|x| x.powi(j as i32)).collect())
        .collect();
    let mut b = vec![0.0; k];
    b[0] = 1.0;
    solve(a, b)
}

pub fn basis_density(n: usize, index: usize) -> Dense {
    let mut rho = zeros(1 << n);
    rho[index][index] = c(1.0, 0.0);
    rho
}

fn embed(n: usize, placed: &[(usize, char)]) -> String {
    let mut label = vec!['I'; n];
    for &(q, p) in placed {
        label[q] = p;
    }
    label.into_iter().collect()
}

/// Independent noisy first-order Trotter run: dense gate unitaries and a
/// Kraus sum over explicit Pauli products after every gate.
pub fn reference_noisy_run(
    terms: &[(&str, f64)],
    t: f64,
    steps: usize,
    single: [f64; 3],
    two_leg: [f64; 3],
    rho0: &Dense,
) -> Dense {
    let n = terms[0].0.len();
    let dim = 1 << n;
    let mut rho = rho0.clone();
    let axes = ['X', 'Y', 'Z'];
    for _ in 0..steps {
        for &(label, coeff) in terms {
            let theta = coeff * t / steps as f64;
            let p = pauli_label(label);
            let u = add(
                &scale(&identity(dim), c(theta.cos(), 0.0)),
                &scale(&p, c(0.0, -theta.sin())),
            );
            rho = mm(&mm(&u, &rho), &dagger(&u));
            let support: Vec<usize> = label
                .char_indices()
                .filter(|&(_, ch)| ch != 'I')
                .map(|(i, _)| i)
                .collect();
            let rates = if support.len() == 2 { two_leg } else { single };
            let mut legs = vec![(1.0 - rates.iter().sum::<f64>(), 'I')];
            legs.extend(axes.iter().zip(rates).map(|(&a, w)| (w, a)));
            let mut kraus: Vec<(f64, Vec<(usize, char)>)> = vec![(1.0, vec![])];
            for &q in &support {
                kraus = kraus
                    .into_iter()
                    .flat_map(|(w, placed)| {
                        legs.iter().map(move |&(wl, a)| {
                            let mut placed = placed.clone();
                            placed.push((q, a));
                            (w * wl, placed)
                        })
                    })
                    .collect();
            }
            let mut next = zeros(dim);
            for (w, placed) in kraus {
                let k = pauli_label(&embed(n, &placed));
                next = add(&next, &scale(&mm(&mm(&k, &rho), &k), c(w, 0.0)));
            }
            rho = next;
        }
    }
    rho
}

/// `<psi(t)| A |psi(t)>` from the Taylor propagator.
pub fn exact_expectation(terms: &[(&str, f64)], t: f64, psi0: usize, observable: &str) -> f64 {
    let u = propagator(&hamiltonian_dense(terms), t);
    let psi: Vec<C64> = u.iter().map(|row| row[psi0]).collect();
    let a = pauli_label(observable);
    let mut acc = c(0.0, 0.0);
    for i in 0..psi.len() {
        for j in 0..psi.len() {
            acc += psi[i].conj() * a[i][j] * psi[j];
        }
    }
    acc.re
}

pub fn expectation_in(rho: &Dense, observable: &str) -> f64 {
    trace(&mm(&pauli_label(observable), rho)).re
}
