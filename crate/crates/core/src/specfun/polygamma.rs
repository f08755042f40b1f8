use super::BERNOULLI_EVEN;
use crate::error::{Error, Result};

/// Highest derivative order supported by [`polygamma`].
pub const MAX_POLYGAMMA_ORDER: usize = 16;

/// ψ^{(j)}(z) = d^{j+1}/dz^{j+1} ln Γ(z) for real z > 0, `j <= 16`.
///
/// The argument is raised with ψ^{(j)}(z) = ψ^{(j)}(z+1) − (−1)^j j! z^{−j−1}
/// until it reaches `12 + j`, where the asymptotic Bernoulli series is summed.
pub fn polygamma(j: usize, z: f64) -> Result<f64> {
    if j > MAX_POLYGAMMA_ORDER {
        return Err(Error::Range(format!("polygamma order {j} exceeds {MAX_POLYGAMMA_ORDER}")));
    }
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain { what: "polygamma", value: z, domain: "z > 0" });
    }
    let threshold = 12.0 + j as f64;
    let order = j as i32;
    let mut shifted = z;
    let mut recurrence = 0.0;
    while shifted < threshold {
        recurrence += shifted.powi(-order - 1);
        shifted += 1.0;
    }
    let fact_j = factorial(j);
    let sign_j = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
    let correction = sign_j * fact_j * recurrence;
    #[cfg(feature = "mutate-polygamma")]
    let correction = -correction;
    Ok(asymptotic(j, shifted) - correction)
}

fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

fn asymptotic(j: usize, z: f64) -> f64 {
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    if j == 0 {
        let mut sum = z.ln() - 0.5 * inv;
        let mut zpow = inv2;
        for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
            let m = 2.0 * (k as f64 + 1.0);
            sum -= b / m * zpow;
            zpow *= inv2;
        }
        return sum;
    }
    // (−1)^{j+1} [ (j−1)!/z^j + j!/(2 z^{j+1}) + Σ B_2k (2k+j−1)!/((2k)! z^{2k+j}) ]
    let zj = z.powi(-(j as i32));
    let mut sum = factorial(j - 1) * zj + 0.5 * factorial(j) * zj * inv;
    // coef_k = (2k+j−1)!/(2k)!, built incrementally.
    let mut coef = factorial(j - 1);
    let mut zpow = zj;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let m = 2 * (k + 1);
        coef *= ((m + j - 2) * (m + j - 1)) as f64 / ((m - 1) * m) as f64;
        zpow *= inv2;
        sum += b * coef * zpow;
    }
    if j % 2 == 1 {
        sum
    } else {
        -sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn reference_values() {
        let cases = [
            (0usize, 1.0, -0.577_215_664_901_532_860_6),
            (1, 1.0, 1.644_934_066_848_226_436),
            (2, 1.5, -0.828_796_644_234_319_995_6),
            (6, 0.5, -92_203.457_923_803_023_29),
            (16, 1.0, -20_922_949_679_481.510_91),
            (16, 200.0, -2.076_297_382_548_347_648e-25),
            (0, 200.0, 5.295_815_283_219_911_615),
            (3, 10.0, 0.002_319_901_304_289_868_386),
        ];
        for (j, z, want) in cases {
            let got = polygamma(j, z).unwrap();
            assert!(rel(got, want) < 1e-12, "ψ^({j})({z}) = {got}, want {want}");
        }
    }

    #[test]
    fn sign_pattern() {
        for j in 1..=MAX_POLYGAMMA_ORDER {
            for z in [0.5, 3.0, 150.0] {
                let v = polygamma(j, z).unwrap();
                let expected = if j % 2 == 1 { 1.0 } else { -1.0 };
                assert_eq!(v.signum(), expected, "j={j} z={z}");
            }
        }
    }

    #[test]
    fn recurrence_residual() {
        for j in 0..=8usize {
            for z in [0.5, 1.0, 2.7, 11.0, 60.0] {
                let lhs = polygamma(j, z + 1.0).unwrap() - polygamma(j, z).unwrap();
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                let rhs = sign * factorial(j) * z.powi(-(j as i32) - 1);
                let scale = polygamma(j, z).unwrap().abs().max(rhs.abs()).max(1.0);
                assert!((lhs - rhs).abs() <= 1e-10 * scale, "j={j} z={z}: {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn domain_and_range() {
        assert!(polygamma(17, 1.0).is_err());
        assert!(polygamma(1, 0.0).is_err());
        assert!(polygamma(1, -2.0).is_err());
    }
}
