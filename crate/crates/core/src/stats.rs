//! Intervals, chi-square tests and pass/fail verdicts.
//!
//! Every chi-square test here runs at the 0.001 level, and every comparison
//! with a closed form uses a `z`-multiple of the standard error (3 by default).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laws::RadialLaw;
use crate::padic::Norm;

pub const DEFAULT_Z: f64 = 3.0;

/// Standard normal quantile at 0.999.
const Z_999: f64 = 3.090_232_306_167_813;

// Upper 0.001 quantiles of chi-square, df = 1..=64.
const CHI2_999: [f64; 64] = [
    10.8276, 13.8155, 16.2662, 18.4668, 20.5150, 22.4577, 24.3219, 26.1245, 27.8772, 29.5883, 31.2641, 32.9095,
    34.5282, 36.1233, 37.6973, 39.2524, 40.7902, 42.3124, 43.8202, 45.3147, 46.7970, 48.2679, 49.7282, 51.1786,
    52.6197, 54.0520, 55.4760, 56.8923, 58.3012, 59.7031, 61.0983, 62.4872, 63.8701, 65.2472, 66.6188, 67.9852,
    69.3465, 70.7029, 72.0547, 73.4020, 74.7449, 76.0838, 77.4186, 78.7495, 80.0767, 81.4003, 82.7204, 84.0371,
    85.3506, 86.6608, 87.9680, 89.2722, 90.5734, 91.8718, 93.1675, 94.4605, 95.7510, 97.0388, 98.3242, 99.6072,
    100.8879, 102.1662, 103.4424, 104.7163,
];

/// Critical value of chi-square with `df` degrees of freedom at the 0.001
/// level. Tabulated up to 64, Wilson-Hilferty beyond.
pub fn chi_square_critical(df: usize) -> Result<f64> {
    match df {
        0 => Err(Error::Statistics("chi-square needs at least one degree of freedom".into())),
        1..=64 => Ok(CHI2_999[df - 1]),
        _ => {
            let k = df as f64;
            let h = 2.0 / (9.0 * k);
            Ok(k * (1.0 - h + Z_999 * h.sqrt()).powi(3))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestVerdict {
    pub name: String,
    pub statistic: f64,
    pub threshold: f64,
    pub pass: bool,
    pub details: String,
}

impl fmt::Display for TestVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: statistic {:.4e} threshold {:.4e}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.statistic,
            self.threshold
        )?;
        if !self.details.is_empty() {
            write!(f, " ({})", self.details)?;
        }
        Ok(())
    }
}

/// Normal-approximation interval `p_hat +- z sqrt(p_hat (1 - p_hat) / n)`,
/// clipped to `[0, 1]`.
pub fn binomial_ci(successes: u64, n: u64, z: f64) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::Statistics("binomial interval needs n >= 1".into()));
    }
    if successes > n {
        return Err(Error::Statistics(format!("{successes} successes out of {n}")));
    }
    let p = successes as f64 / n as f64;
    let half = z * (p * (1.0 - p) / n as f64).sqrt();
    Ok(((p - half).max(0.0), (p + half).min(1.0)))
}

/// `sqrt(p_hat (1 - p_hat) / n)`.
pub fn binomial_se(successes: u64, n: u64) -> f64 {
    if n == 0 {
        return f64::NAN;
    }
    let p = successes as f64 / n as f64;
    (p * (1.0 - p) / n as f64).sqrt()
}

/// Pass iff `|estimate - closed_form| <= z se`.
pub fn compare_to_closed_form(name: &str, estimate: f64, se: f64, closed_form: f64, z: f64) -> TestVerdict {
    let statistic = (estimate - closed_form).abs();
    let threshold = z * se;
    TestVerdict {
        name: name.to_string(),
        statistic,
        threshold,
        pass: statistic <= threshold,
        details: format!("estimate {estimate:.6} se {se:.2e} closed form {closed_form:.6}"),
    }
}

/// Score-type check of a Monte Carlo proportion against a known probability.
///
/// The standard error is taken at the closed form, `sqrt(q (1 - q) / n)`,
/// not at the estimate: the plug-in value is zero whenever no draw succeeds,
/// which rejects every rare-event cell regardless of how close it is.
pub fn compare_proportion(name: &str, estimate: f64, n: u64, closed_form: f64, z: f64) -> TestVerdict {
    let se = if n == 0 {
        f64::NAN
    } else {
        (closed_form * (1.0 - closed_form) / n as f64).sqrt()
    };
    let mut v = compare_to_closed_form(name, estimate, se, closed_form, z);
    v.details = format!("estimate {estimate:.6} closed form {closed_form:.6} se at closed form {se:.2e}");
    v
}

/// Two independent estimates agree within `z` combined standard errors.
pub fn compare_estimates(name: &str, a: (f64, f64), b: (f64, f64), z: f64) -> TestVerdict {
    let se = a.1.hypot(b.1);
    let statistic = (a.0 - b.0).abs();
    TestVerdict {
        name: name.to_string(),
        statistic,
        threshold: z * se,
        pass: statistic <= z * se,
        details: format!("{:.6} vs {:.6}, combined se {se:.2e}", a.0, b.0),
    }
}

/// Counts of observed norm levels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelHistogram {
    pub counts: BTreeMap<i32, u64>,
    pub zeros: u64,
}

impl LevelHistogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, norm: Norm) {
        match norm {
            Norm::Zero => self.zeros += 1,
            Norm::Level(k) => *self.counts.entry(k).or_default() += 1,
        }
    }

    pub fn merge(&mut self, other: &LevelHistogram) {
        self.zeros += other.zeros;
        for (&k, &c) in &other.counts {
            *self.counts.entry(k).or_default() += c;
        }
    }

    pub fn total(&self) -> u64 {
        self.zeros + self.counts.values().sum::<u64>()
    }

    pub fn count(&self, k: i32) -> u64 {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    /// Observations with level below `k` (zero included).
    pub fn below(&self, k: i32) -> u64 {
        self.zeros + self.counts.range(..k).map(|(_, c)| c).sum::<u64>()
    }

    pub fn above(&self, k: i32) -> u64 {
        self.counts.range(k + 1..).map(|(_, c)| c).sum()
    }

    /// Fraction of observations with level at most `k`.
    pub fn fraction_within(&self, k: i32) -> f64 {
        (self.below(k) + self.count(k)) as f64 / self.total() as f64
    }
}

/// Merges adjacent `(observed, expected)` cells left to right until each
/// expected count reaches `min`; a short remainder joins the last cell.
fn pool(cells: &[(f64, f64)], min: f64) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::new();
    let mut acc = (0.0, 0.0);
    for &(o, e) in cells {
        acc.0 += o;
        acc.1 += e;
        if acc.1 >= min {
            out.push(acc);
            acc = (0.0, 0.0);
        }
    }
    if acc != (0.0, 0.0) {
        match out.last_mut() {
            Some(last) => {
                last.0 += acc.0;
                last.1 += acc.1;
            }
            None => out.push(acc),
        }
    }
    out
}

fn pearson(name: &str, pooled: &[(f64, f64)], df: usize, details: String) -> Result<TestVerdict> {
    let statistic: f64 = pooled.iter().map(|(o, e)| (o - e).powi(2) / e).sum();
    let threshold = chi_square_critical(df)?;
    Ok(TestVerdict {
        name: name.to_string(),
        statistic,
        threshold,
        pass: statistic <= threshold,
        details,
    })
}

/// Pearson goodness of fit of observed levels against a radial law.
///
/// Cells are `[below k_min, k_min, ..., k_max, above k_max]`, pooled so every
/// expected count is at least `pooling_min`; `df` is the pooled cell count
/// minus one.
pub fn chi_square_gof(observed: &LevelHistogram, expected: &RadialLaw, pooling_min: u64) -> Result<TestVerdict> {
    let n = observed.total();
    if n == 0 {
        return Err(Error::Statistics("no observations".into()));
    }
    if pooling_min == 0 {
        return Err(Error::Statistics("pooling_min must be at least 1".into()));
    }
    let nf = n as f64;
    let mut cells = vec![(observed.below(expected.k_min()) as f64, expected.lower_tail() * nf)];
    cells.extend(expected.levels().map(|(k, m)| (observed.count(k) as f64, m * nf)));
    cells.push((observed.above(expected.k_max()) as f64, expected.upper_tail() * nf));
    let pooled = pool(&cells, pooling_min as f64);
    if pooled.len() < 2 {
        return Err(Error::Statistics("fewer than two cells after pooling".into()));
    }
    if pooled.iter().any(|&(o, e)| e <= 0.0 && o > 0.0) {
        return Err(Error::Statistics("observations in a cell with zero expected mass".into()));
    }
    let details = format!("n={n}, {} cells", pooled.len());
    pearson("chi-square goodness of fit", &pooled, pooled.len() - 1, details)
}

/// Pearson test of independence for a contingency table.
///
/// Rows and columns with zero total are dropped. Cells are not pooled, so
/// callers should bin coarsely enough that expected counts are reasonable.
pub fn chi_square_independence(table: &[Vec<u64>]) -> Result<TestVerdict> {
    let cols = table.first().map_or(0, Vec::len);
    if table.iter().any(|r| r.len() != cols) {
        return Err(Error::Statistics("ragged contingency table".into()));
    }
    let row_tot: Vec<f64> = table.iter().map(|r| r.iter().sum::<u64>() as f64).collect();
    let col_tot: Vec<f64> = (0..cols).map(|j| table.iter().map(|r| r[j]).sum::<u64>() as f64).collect();
    let rows: Vec<usize> = (0..table.len()).filter(|&i| row_tot[i] > 0.0).collect();
    let used: Vec<usize> = (0..cols).filter(|&j| col_tot[j] > 0.0).collect();
    if rows.len() < 2 || used.len() < 2 {
        return Err(Error::Statistics("contingency table needs two nonempty rows and columns".into()));
    }
    let n: f64 = row_tot.iter().sum();
    let cells: Vec<(f64, f64)> = rows
        .iter()
        .flat_map(|&i| used.iter().map(move |&j| (i, j)))
        .map(|(i, j)| (table[i][j] as f64, row_tot[i] * col_tot[j] / n))
        .collect();
    let df = (rows.len() - 1) * (used.len() - 1);
    let details = format!("{}x{} table, n={n}", rows.len(), used.len());
    pearson("chi-square independence", &cells, df, details)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::ProcessParams;

    #[test]
    fn intervals() {
        let (lo, hi) = binomial_ci(50, 100, 3.0).unwrap();
        assert!((lo - 0.35).abs() < 1e-12 && (hi - 0.65).abs() < 1e-12);
        assert_eq!(binomial_ci(10, 10, 3.0).unwrap(), (1.0, 1.0));
        assert_eq!(binomial_ci(0, 10, 3.0).unwrap().0, 0.0);
        assert!(binomial_ci(0, 0, 3.0).is_err());
        assert!(binomial_ci(11, 10, 3.0).is_err());
    }

    #[test]
    fn closed_form_verdicts() {
        assert!(compare_to_closed_form("x", 0.3, 0.01, 0.3, 3.0).pass);
        assert!(compare_to_closed_form("x", 0.3, 0.0, 0.3, 3.0).pass);
        assert!(!compare_to_closed_form("x", 0.34, 0.01, 0.3, 3.0).pass);
        assert!(!compare_to_closed_form("x", 0.3 + 1e-9, 0.0, 0.3, 3.0).pass);
        assert!(compare_estimates("y", (0.5, 0.03), (0.6, 0.03), 3.0).pass);
        // no successes against a rare closed form
        assert!(compare_proportion("z", 0.0, 100_000, 4e-6, 3.0).pass);
        assert!(!compare_proportion("z", 0.0, 100_000, 1e-3, 3.0).pass);
        assert!(!compare_proportion("z", 0.5, 0, 0.5, 3.0).pass);
    }

    #[test]
    fn critical_values() {
        assert_eq!(chi_square_critical(1).unwrap(), 10.8276);
        assert!((chi_square_critical(80).unwrap() - 124.84).abs() < 0.1);
        // the approximation joins the table smoothly
        let k = 64.0f64;
        let h = 2.0 / (9.0 * k);
        let wh = k * (1.0 - h + Z_999 * h.sqrt()).powi(3);
        assert!((wh - CHI2_999[63]).abs() < 0.1);
        assert!(chi_square_critical(0).is_err());
    }

    #[test]
    fn pooling_preserves_totals() {
        let cells = [(1.0, 0.5), (3.0, 2.0), (40.0, 45.0), (50.0, 48.0), (2.0, 1.0), (0.0, 0.5)];
        let pooled = pool(&cells, 5.0);
        assert!(pooled.iter().all(|&(_, e)| e >= 5.0));
        let (o, e): (f64, f64) = pooled.iter().fold((0.0, 0.0), |a, c| (a.0 + c.0, a.1 + c.1));
        assert_eq!((o, e), (96.0, 97.0));
        assert_eq!(pooled, vec![(44.0, 47.5), (52.0, 49.5)]);
    }

    #[test]
    fn gof_exact_counts_pass_and_degenerate_input_fails() {
        let params = ProcessParams::new(2, 1, 1.0, 1.0).unwrap();
        let law = RadialLaw::from_masses(params, 1.0, 0, vec![0.25, 0.5, 0.25], 0.0, 0.0).unwrap();
        let mut h = LevelHistogram::new();
        for (k, c) in [(0, 250), (1, 500), (2, 250)] {
            for _ in 0..c {
                h.record(Norm::Level(k));
            }
        }
        let v = chi_square_gof(&h, &law, 5).unwrap();
        assert!(v.pass && v.statistic.abs() < 1e-12);
        let one = RadialLaw::from_masses(params, 1.0, 0, vec![1.0], 0.0, 0.0).unwrap();
        assert!(chi_square_gof(&h, &one, 5).is_err());
        assert!(chi_square_gof(&LevelHistogram::new(), &law, 5).is_err());
    }

    #[test]
    fn independence_of_a_product_table() {
        let v = chi_square_independence(&[vec![100, 200, 300], vec![200, 400, 600]]).unwrap();
        assert!(v.pass && v.statistic < 1e-12);
        let w = chi_square_independence(&[vec![500, 10], vec![10, 500]]).unwrap();
        assert!(!w.pass);
        assert!(chi_square_independence(&[vec![1, 2]]).is_err());
    }
}
