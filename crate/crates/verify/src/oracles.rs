//! Reference computations that share no code with the library under test.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use statrs::function::factorial::ln_binomial;

/// First eight outputs of the simulation generator at seed 0.
pub const RNG_SEED0_FIXTURE: [u64; 8] = [
    0x53175D61490B23DF,
    0x61DA6F3DC380D507,
    0x5C0FDF91EC9A7BFC,
    0x02EEBF8C3BBE5E1A,
    0x7ECA04EBAF4A5EEA,
    0x0543C37757F08D9A,
    0xDB7490C75AB5026E,
    0xD87343E6464BC959,
];

/// Σ_{r≥0} Σ_{s≥1} (s + rβ/2)^{−j}, 50-digit mpmath values rounded to f64.
/// Rows are j = 3, 4, 5; columns β = 1, 2, 4.
pub const ZETA_DOUBLE_SUMS: [[f64; 3]; 3] = [
    [2.372537106334326, 1.6449340668482264, 1.348366928556436],
    [1.499030972443218, 1.2020569031595942, 1.108367467381893],
    [1.244791534655977, 1.0823232337111381, 1.043423498253139],
];

/// Bell numbers from the Bell triangle.
pub fn bell_triangle(max: usize) -> Vec<u128> {
    let mut out = vec![1u128];
    let mut row = vec![1u128];
    for _ in 0..max {
        let mut next = vec![*row.last().unwrap()];
        for v in &row {
            next.push(next.last().unwrap() + v);
        }
        out.push(next[0]);
        row = next;
    }
    out.truncate(max + 1);
    out
}

const GK_NODES: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const GK_WEIGHTS: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const G_WEIGHTS: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = GK_WEIGHTS[7] * fc;
    let mut gauss = G_WEIGHTS[3] * fc;
    for i in 0..7 {
        let x = h * GK_NODES[i];
        let s = f(c - x) + f(c + x);
        kronrod += GK_WEIGHTS[i] * s;
        if i % 2 == 1 {
            gauss += G_WEIGHTS[i / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive Gauss–Kronrod (7, 15) quadrature by bisection of the worst panel.
pub fn adaptive_gk(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    let mut panels = vec![(a, b, gk15(f, a, b))];
    for _ in 0..20_000 {
        let total: f64 = panels.iter().map(|p| p.2 .0).sum();
        let err: f64 = panels.iter().map(|p| p.2 .1).sum();
        if err <= rel_tol * total.abs() {
            break;
        }
        let worst = (0..panels.len()).max_by(|&i, &k| panels[i].2 .1.total_cmp(&panels[k].2 .1)).unwrap();
        let (lo, hi, _) = panels.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        panels.push((lo, mid, gk15(f, lo, mid)));
        panels.push((mid, hi, gk15(f, mid, hi)));
    }
    panels.iter().map(|p| p.2 .0).sum()
}

/// ψ^{(j)}(z) from its integral representation. For j ≥ 1 this is
/// (−1)^{j+1} ∫ t^j e^{−zt}/(1 − e^{−t}) dt; for j = 0, Gauss's form
/// ∫ (e^{−t}/t − e^{−zt}/(1 − e^{−t})) dt.
pub fn polygamma_integral(j: usize, z: f64) -> f64 {
    let upper = 300.0 / z.min(1.0) + 20.0 * j as f64;
    let panels = [0.0, 1.0, 4.0, 16.0, 64.0, upper];
    let f = move |t: f64| -> f64 {
        let denom = -(-t).exp_m1();
        if j == 0 {
            ((-t).exp() * denom - t * (-z * t).exp()) / (t * denom)
        } else {
            t.powi(j as i32) * (-z * t).exp() / denom
        }
    };
    let total: f64 = panels.windows(2).map(|w| adaptive_gk(&f, w[0], w[1], 1e-14)).sum();
    if j == 0 || j % 2 == 1 {
        total
    } else {
        -total
    }
}

/// P(S ≥ k) for S ~ Binomial(n, 1/2), summed from the top.
pub fn fair_binomial_upper(n: u64, k: u64) -> f64 {
    let ln_half = -(n as f64) * std::f64::consts::LN_2;
    (k..=n).rev().map(|i| (ln_binomial(n, i) + ln_half).exp()).sum()
}

/// Exact pmf of the triangle count of G(4, p) by enumerating all 64 graphs.
/// Bit e of the mask is the edge 01, 02, 03, 12, 13, 23 in that order.
pub fn triangle_pmf_n4(p: &BigRational) -> Vec<BigRational> {
    let triangles = [[0, 1, 3], [0, 2, 4], [1, 2, 5], [3, 4, 5]];
    let q = BigRational::one() - p;
    let mut pmf = vec![BigRational::zero(); 5];
    for mask in 0u32..64 {
        let count = triangles.iter().filter(|t| t.iter().all(|&e| mask >> e & 1 == 1)).count();
        let e = mask.count_ones() as usize;
        let w = num_traits::pow(p.clone(), e) * num_traits::pow(q.clone(), 6 - e);
        pmf[count] += w;
    }
    pmf
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Poisson-binomial pmf from the characteristic function on n + 1 points.
pub fn poisson_binomial_dft(lambdas: &[f64]) -> Vec<f64> {
    let m = lambdas.len() + 1;
    let mut cf = vec![(0.0f64, 0.0f64); m];
    for (l, slot) in cf.iter_mut().enumerate() {
        let w = 2.0 * std::f64::consts::PI * l as f64 / m as f64;
        let (mut re, mut im) = (1.0, 0.0);
        for &p in lambdas {
            let (a, b) = (1.0 - p + p * w.cos(), p * w.sin());
            (re, im) = (re * a - im * b, re * b + im * a);
        }
        *slot = (re, im);
    }
    (0..m)
        .map(|k| {
            let s: f64 = cf
                .iter()
                .enumerate()
                .map(|(l, &(re, im))| {
                    let w = -2.0 * std::f64::consts::PI * (l * k) as f64 / m as f64;
                    re * w.cos() - im * w.sin()
                })
                .sum();
            (s / m as f64).max(0.0)
        })
        .collect()
}
