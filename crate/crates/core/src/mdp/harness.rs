use serde::{Deserialize, Serialize};

use super::generator::{Generator, GeneratorSpec};
use crate::bounds::{rss_corridor, CumulantCondition, RssQuantities};
use crate::error::{Error, Result};
use crate::mc;
use crate::rng::stream_seed;
use crate::serde_ext::{neg_inf_as_null, pos_inf_as_null};
use crate::specfun::std_normal_sf;

/// Fewest trials an experiment may request.
pub const MIN_TRIALS: usize = 1000;
/// Two-sided 95% normal quantile.
pub const WILSON_Z: f64 = 1.959_963_984_540_054;
/// Standard errors allowed in the standardization check.
pub const STANDARDIZATION_SE: f64 = 5.0;

/// One (n, a_n) cell of a moderate-deviation sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MdpExperiment {
    pub generator: GeneratorSpec,
    pub a_n: f64,
    pub x_grid: Vec<f64>,
    pub trials: usize,
    pub root_seed: u64,
    /// Skip the rare-event guard t²/2 ≤ ln(trials)/2.
    #[serde(default)]
    pub allow_rare: bool,
}

impl MdpExperiment {
    pub fn validate(&self) -> Result<()> {
        if !(self.a_n > 1.0) || !self.a_n.is_finite() {
            return Err(Error::Config(format!("a_n must be a finite real > 1, got {}", self.a_n)));
        }
        if self.x_grid.is_empty() {
            return Err(Error::Config("x_grid is empty".into()));
        }
        if let Some(x) = self.x_grid.iter().find(|x| !(**x >= 0.0) || !x.is_finite()) {
            return Err(Error::Config(format!("x_grid entries must be finite and non-negative, got {x}")));
        }
        if self.x_grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Config("x_grid must be strictly increasing".into()));
        }
        if self.trials < MIN_TRIALS {
            return Err(Error::Config(format!("trials must be at least {MIN_TRIALS}, got {}", self.trials)));
        }
        Ok(())
    }

    /// Seed of the generator's auxiliary Monte Carlo, disjoint from the
    /// trial streams.
    pub fn aux_seed(&self) -> u64 {
        stream_seed(self.root_seed, u64::MAX)
    }

    pub fn build_generator(&self) -> Result<Box<dyn Generator>> {
        self.generator.build(self.aux_seed())
    }

    fn check_rare(&self, thresholds: &[f64]) -> Result<()> {
        if self.allow_rare {
            return Ok(());
        }
        let limit = (self.trials as f64).ln() / 2.0;
        match thresholds.iter().find(|t| **t * **t / 2.0 > limit) {
            Some(t) => Err(Error::Range(format!(
                "threshold {t} is a rare event for {} trials (t^2/2 = {} > ln(trials)/2 = {limit}); \
                 lower it or set allow_rare",
                self.trials,
                t * t / 2.0
            ))),
            None => Ok(()),
        }
    }
}

/// Batch moments of the draws against the standardization target (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StandardizationCheck {
    pub mean: f64,
    pub variance: f64,
    pub se_mean: f64,
    pub se_variance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Default)]
struct Tally {
    right: Vec<u64>,
    left: Vec<u64>,
    power: [f64; 4],
    n: usize,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        if self.n == 0 {
            return other;
        }
        for (a, b) in self.right.iter_mut().zip(&other.right) {
            *a += b;
        }
        for (a, b) in self.left.iter_mut().zip(&other.left) {
            *a += b;
        }
        for (a, b) in self.power.iter_mut().zip(&other.power) {
            *a += b;
        }
        self.n += other.n;
        self
    }

    fn standardization(&self) -> StandardizationCheck {
        let n = self.n as f64;
        let [s1, s2, s3, s4] = self.power.map(|s| s / n);
        let mean = s1;
        let variance = s2 - mean * mean;
        let m4 = s4 - 4.0 * mean * s3 + 6.0 * mean * mean * s2 - 3.0 * mean.powi(4);
        let se_mean = (variance.max(0.0) / n).sqrt();
        let se_variance = ((m4 - variance * variance).max(0.0) / n).sqrt();
        let pass = mean.abs() <= STANDARDIZATION_SE * se_mean
            && (variance - 1.0).abs() <= STANDARDIZATION_SE * se_variance;
        StandardizationCheck { mean, variance, se_mean, se_variance, pass }
    }
}

/// Counts Z ≥ t and Z ≤ −t for every threshold, one chunk per RNG stream.
fn simulate(g: &dyn Generator, thresholds: &[f64], trials: usize, seed: u64) -> Tally {
    let chunks = mc::run_chunks(trials, seed, |rng, count| {
        let mut t = Tally { right: vec![0; thresholds.len()], left: vec![0; thresholds.len()], ..Tally::default() };
        for _ in 0..count {
            let z = g.draw(rng);
            for (i, &th) in thresholds.iter().enumerate() {
                t.right[i] += (z >= th) as u64;
                t.left[i] += (z <= -th) as u64;
            }
            let z2 = z * z;
            t.power[0] += z;
            t.power[1] += z2;
            t.power[2] += z2 * z;
            t.power[3] += z2 * z2;
        }
        t.n = count;
        t
    });
    chunks.into_iter().fold(Tally::default(), Tally::merge)
}

fn checked_simulation(g: &dyn Generator, thresholds: &[f64], exp: &MdpExperiment) -> Result<Tally> {
    let tally = simulate(g, thresholds, exp.trials, exp.root_seed);
    let s = tally.standardization();
    if !s.pass {
        return Err(Error::Precondition(format!(
            "generator {} is not standardized: batch mean {} (s.e. {}), variance {} (s.e. {})",
            g.id(),
            s.mean,
            s.se_mean,
            s.variance,
            s.se_variance
        )));
    }
    Ok(tally)
}

/// Wilson score interval for `hits` successes in `trials`.
pub fn wilson_interval(hits: u64, trials: u64, z: f64) -> (f64, f64) {
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2n = z * z / n;
    let centre = (p + z2n / 2.0) / (1.0 + z2n);
    let half = z / (1.0 + z2n) * (p * (1.0 - p) / n + z2n / (4.0 * n)).sqrt();
    let lo = if hits == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if hits == trials { 1.0 } else { (centre + half).min(1.0) };
    (lo, hi)
}

/// [lower, upper] with `upper` possibly +∞.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UpperOpen {
    pub lower: f64,
    #[serde(with = "pos_inf_as_null")]
    pub upper: f64,
}

/// [lower, upper] with `lower` possibly −∞.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerOpen {
    #[serde(with = "neg_inf_as_null")]
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorridorBounds {
    #[serde(with = "neg_inf_as_null")]
    pub lower: f64,
    pub upper: f64,
    pub vacuous_lower: bool,
}

fn corridor_at(t: f64, q: &RssQuantities<f64>) -> Result<CorridorBounds> {
    let c = rss_corridor(t, q)?;
    Ok(CorridorBounds { lower: c.lower, upper: c.upper, vacuous_lower: c.vacuous_lower })
}

/// −ln(p)/a², or `None` for p = 0.
fn rate(p: f64, a_n: f64) -> Option<f64> {
    (p > 0.0).then(|| -p.ln() / (a_n * a_n))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailRecord {
    pub x: f64,
    /// a_n · x; the event is Z ≥ threshold.
    pub threshold: f64,
    pub hit_count: u64,
    pub p_hat: f64,
    pub wilson_interval: (f64, f64),
    /// Absent when the cell is censored.
    pub empirical_rate: Option<f64>,
    /// Rate range mapped from the Wilson interval; unbounded above when censored.
    pub rate_interval: UpperOpen,
    /// No hits: the sample only bounds the rate from below.
    pub censored: bool,
    pub theoretical_rate: f64,
    pub left_hit_count: u64,
    pub left_empirical_rate: Option<f64>,
    pub left_wilson_interval: (f64, f64),
    pub exact_p: Option<f64>,
    pub exact_rate: Option<f64>,
    /// RSS corridor for log(P(Z ≥ t)/(1 − Φ(t))), when t < Δ_γ.
    pub corridor: Option<CorridorBounds>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MdpReport {
    pub generator: String,
    pub a_n: f64,
    pub trials: usize,
    pub root_seed: u64,
    pub standardization: StandardizationCheck,
    pub condition: Option<CumulantCondition<f64>>,
    pub records: Vec<TailRecord>,
}

/// Empirical rates −(1/a_n²) log P̂(Z ≥ a_n x) against x²/2.
pub fn estimate_tail_rate(exp: &MdpExperiment) -> Result<MdpReport> {
    exp.validate()?;
    let g = exp.build_generator()?;
    estimate_tail_rate_with(exp, g.as_ref())
}

pub fn estimate_tail_rate_with(exp: &MdpExperiment, g: &dyn Generator) -> Result<MdpReport> {
    exp.validate()?;
    let a = exp.a_n;
    let thresholds: Vec<f64> = exp.x_grid.iter().map(|x| a * x).collect();
    exp.check_rare(&thresholds)?;
    let tally = checked_simulation(g, &thresholds, exp)?;
    let condition = g.condition();
    let rss = condition.map(RssQuantities::new);
    let n = exp.trials as u64;
    let mut records = Vec::with_capacity(thresholds.len());
    for (i, (&x, &t)) in exp.x_grid.iter().zip(&thresholds).enumerate() {
        let hits = tally.right[i];
        let wilson = wilson_interval(hits, n, WILSON_Z);
        let left_wilson = wilson_interval(tally.left[i], n, WILSON_Z);
        let exact_p = g.exact_law().map(|l| l.upper_tail(t));
        let corridor = match &rss {
            Some(q) if t < q.delta_gamma() => Some(corridor_at(t, q)?),
            _ => None,
        };
        records.push(TailRecord {
            x,
            threshold: t,
            hit_count: hits,
            p_hat: hits as f64 / n as f64,
            wilson_interval: wilson,
            empirical_rate: rate(hits as f64 / n as f64, a),
            rate_interval: UpperOpen {
                lower: rate(wilson.1, a).unwrap_or(0.0),
                upper: rate(wilson.0, a).unwrap_or(f64::INFINITY),
            },
            censored: hits == 0,
            theoretical_rate: x * x / 2.0,
            left_hit_count: tally.left[i],
            left_empirical_rate: rate(tally.left[i] as f64 / n as f64, a),
            left_wilson_interval: left_wilson,
            exact_p,
            exact_rate: exact_p.and_then(|p| rate(p, a)),
            corridor,
        });
    }
    Ok(MdpReport {
        generator: g.id().to_string(),
        a_n: a,
        trials: exp.trials,
        root_seed: exp.root_seed,
        standardization: tally.standardization(),
        condition,
        records,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalZoneRecord {
    pub x: f64,
    pub hit_count: u64,
    pub p_hat: f64,
    pub wilson_interval: (f64, f64),
    /// 1 − Φ(x).
    pub normal_tail: f64,
    pub ratio: f64,
    pub ratio_interval: (f64, f64),
    pub exact_p: Option<f64>,
    pub exact_ratio: Option<f64>,
    /// x beyond Δ^{1/(1+2γ)} of the attached condition.
    pub beyond_zone: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalZoneReport {
    pub generator: String,
    pub trials: usize,
    pub root_seed: u64,
    pub standardization: StandardizationCheck,
    pub zone_edge: Option<f64>,
    pub records: Vec<NormalZoneRecord>,
}

/// P̂(Z ≥ x) / (1 − Φ(x)) on the raw grid (no a_n scaling).
pub fn normal_zone_ratio(exp: &MdpExperiment) -> Result<NormalZoneReport> {
    exp.validate()?;
    let g = exp.build_generator()?;
    normal_zone_ratio_with(exp, g.as_ref())
}

pub fn normal_zone_ratio_with(exp: &MdpExperiment, g: &dyn Generator) -> Result<NormalZoneReport> {
    exp.validate()?;
    exp.check_rare(&exp.x_grid)?;
    let tally = checked_simulation(g, &exp.x_grid, exp)?;
    let zone_edge = g.condition().map(|c| c.delta().powf(c.window_exponent()));
    let n = exp.trials as u64;
    let mut records = Vec::with_capacity(exp.x_grid.len());
    for (i, &x) in exp.x_grid.iter().enumerate() {
        let hits = tally.right[i];
        let wilson = wilson_interval(hits, n, WILSON_Z);
        let normal_tail = std_normal_sf(x)?;
        let p_hat = hits as f64 / n as f64;
        let exact_p = g.exact_law().map(|l| l.upper_tail(x));
        records.push(NormalZoneRecord {
            x,
            hit_count: hits,
            p_hat,
            wilson_interval: wilson,
            normal_tail,
            ratio: p_hat / normal_tail,
            ratio_interval: (wilson.0 / normal_tail, wilson.1 / normal_tail),
            exact_p,
            exact_ratio: exact_p.map(|p| p / normal_tail),
            beyond_zone: zone_edge.map(|e| x > e),
        });
    }
    Ok(NormalZoneReport {
        generator: g.id().to_string(),
        trials: exp.trials,
        root_seed: exp.root_seed,
        standardization: tally.standardization(),
        zone_edge,
        records,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorridorRecord {
    pub x: f64,
    pub hit_count: u64,
    /// Wilson interval of P̂ mapped to log(P/(1 − Φ(x))).
    pub log_ratio_interval: LowerOpen,
    pub corridor: CorridorBounds,
    pub intersects: bool,
    pub exact_log_ratio: Option<f64>,
    pub exact_inside: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorridorReport {
    pub generator: String,
    pub trials: usize,
    pub root_seed: u64,
    pub condition: CumulantCondition<f64>,
    pub delta_gamma: f64,
    pub standardization: StandardizationCheck,
    pub records: Vec<CorridorRecord>,
}

/// Whether the Monte Carlo log-ratio interval meets the RSS corridor at each x.
pub fn corridor_check(exp: &MdpExperiment, cond: &CumulantCondition<f64>) -> Result<CorridorReport> {
    exp.validate()?;
    let g = exp.build_generator()?;
    corridor_check_with(exp, g.as_ref(), cond)
}

pub fn corridor_check_with(
    exp: &MdpExperiment,
    g: &dyn Generator,
    cond: &CumulantCondition<f64>,
) -> Result<CorridorReport> {
    exp.validate()?;
    let q = RssQuantities::new(*cond);
    let dg = q.delta_gamma();
    if let Some(&x) = exp.x_grid.iter().find(|&&x| x >= dg) {
        return Err(Error::Domain { what: "corridor check x", value: x, domain: "[0, Δ_γ)" });
    }
    exp.check_rare(&exp.x_grid)?;
    let tally = checked_simulation(g, &exp.x_grid, exp)?;
    let n = exp.trials as u64;
    let mut records = Vec::with_capacity(exp.x_grid.len());
    for (i, &x) in exp.x_grid.iter().enumerate() {
        let hits = tally.right[i];
        let (lo, hi) = wilson_interval(hits, n, WILSON_Z);
        let ln_tail = std_normal_sf(x)?.ln();
        let interval = LowerOpen { lower: lo.ln() - ln_tail, upper: hi.ln() - ln_tail };
        let corridor = corridor_at(x, &q)?;
        let exact_log_ratio = g.exact_law().map(|l| l.upper_tail(x).ln() - ln_tail);
        records.push(CorridorRecord {
            x,
            hit_count: hits,
            log_ratio_interval: interval,
            corridor,
            intersects: interval.lower <= corridor.upper && interval.upper >= corridor.lower,
            exact_log_ratio,
            exact_inside: exact_log_ratio.map(|v| v >= corridor.lower && v <= corridor.upper),
        });
    }
    Ok(CorridorReport {
        generator: g.id().to_string(),
        trials: exp.trials,
        root_seed: exp.root_seed,
        condition: *cond,
        delta_gamma: dg,
        standardization: tally.standardization(),
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: usize, a_n: f64, x_grid: Vec<f64>, trials: usize) -> MdpExperiment {
        MdpExperiment { generator: GeneratorSpec::Binomial { n }, a_n, x_grid, trials, root_seed: 1, allow_rare: false }
    }

    #[test]
    fn validation() {
        assert!(binomial(10, 1.0, vec![0.5], 1000).validate().is_err());
        assert!(binomial(10, 2.0, vec![], 1000).validate().is_err());
        assert!(binomial(10, 2.0, vec![1.0, 0.5], 1000).validate().is_err());
        assert!(binomial(10, 2.0, vec![0.5], 999).validate().is_err());
        assert!(binomial(10, 2.0, vec![0.0, 0.5], 1000).validate().is_ok());
    }

    #[test]
    fn rare_guard() {
        let e = binomial(100, 2.0, vec![2.0], 1000);
        assert!(matches!(estimate_tail_rate(&e), Err(Error::Range(_))));
        let e = MdpExperiment { allow_rare: true, ..e };
        let r = estimate_tail_rate(&e).unwrap();
        assert!(r.records[0].hit_count <= 1000);
    }

    #[test]
    fn zero_threshold_median() {
        let r = estimate_tail_rate(&binomial(101, 2.0, vec![0.0, 0.5], 40_000)).unwrap();
        let rec = &r.records[0];
        assert!((rec.p_hat - 0.5).abs() < 0.01);
        assert!((rec.empirical_rate.unwrap() - 2f64.ln() / 4.0).abs() < 0.01);
        assert_eq!(rec.theoretical_rate, 0.0);
        assert!(r.records[1].hit_count <= 40_000);
    }

    #[test]
    fn wilson_edges() {
        assert_eq!(wilson_interval(0, 100, WILSON_Z).0, 0.0);
        assert_eq!(wilson_interval(100, 100, WILSON_Z).1, 1.0);
        let (lo, hi) = wilson_interval(50, 100, WILSON_Z);
        assert!((lo - 0.4038).abs() < 1e-4 && (hi - 0.5962).abs() < 1e-4);
    }

    #[test]
    fn unstandardized_generator_rejected() {
        struct Shifted;
        impl Generator for Shifted {
            fn id(&self) -> &str {
                "shifted"
            }
            fn draw(&self, rng: &mut crate::rng::SimRng) -> f64 {
                rng.uniform() * 2.0
            }
            fn condition(&self) -> Option<CumulantCondition<f64>> {
                None
            }
        }
        let e = binomial(10, 2.0, vec![0.1], 5000);
        let err = estimate_tail_rate_with(&e, &Shifted).unwrap_err();
        assert!(matches!(err, Error::Precondition(m) if m.contains("batch mean")));
    }

    #[test]
    fn corridor_domain_and_report() {
        let e = binomial(10_000, 2.0, vec![0.0, 0.5, 3.0], 5000);
        let cond = CumulantCondition::new(0.0, 50.0).unwrap();
        assert!(matches!(corridor_check(&e, &cond), Err(Error::Domain { .. })));
        let e = binomial(10_000, 2.0, vec![0.0, 0.5], 5000);
        let r = corridor_check(&e, &cond).unwrap();
        assert!(r.records.iter().all(|c| c.intersects));
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<CorridorReport>(&json).unwrap(), r);
    }

    #[test]
    fn normal_zone_vanishes_past_sqrt_n() {
        let e = MdpExperiment { allow_rare: true, ..binomial(16, 2.0, vec![0.0, 4.5, 6.0], 10_000) };
        let r = normal_zone_ratio(&e).unwrap();
        assert!((r.records[0].ratio - r.records[0].exact_ratio.unwrap()).abs() < 0.05);
        for rec in &r.records[1..] {
            assert_eq!(rec.hit_count, 0);
            assert_eq!(rec.exact_p, Some(0.0));
            assert_eq!(rec.ratio, 0.0);
        }
    }
}
