//! Two-sample tests: Kolmogorov-Smirnov (1-D) and the energy distance with
//! permutation p-values (2-D), plus small helpers shared by the suite.

use rayon::prelude::*;

use super::special::{chi2_cdf, kolmogorov_q};
use super::StatsError;
use crate::rng::RandomStream;

fn sorted_copy(xs: &[f64]) -> Vec<f64> {
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("no NaN in samples"));
    v
}

/// Classical two-sample Kolmogorov-Smirnov statistic and its asymptotic
/// p-value.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<(f64, f64), StatsError> {
    if a.is_empty() || b.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let xs = sorted_copy(a);
    let ys = sorted_copy(b);
    let (n, m) = (xs.len(), ys.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < n && j < m {
        let x = xs[i];
        let y = ys[j];
        let t = x.min(y);
        while i < n && xs[i] <= t {
            i += 1;
        }
        while j < m && ys[j] <= t {
            j += 1;
        }
        let diff = (i as f64 / n as f64 - j as f64 / m as f64).abs();
        if diff > d {
            d = diff;
        }
    }
    let en = ((n as f64 * m as f64) / (n as f64 + m as f64)).sqrt();
    let p = kolmogorov_q(d * (en + 0.12 + 0.11 / en));
    Ok((d, p))
}

fn dist2(p: (f64, f64), q: (f64, f64)) -> f64 {
    let dx = p.0 - q.0;
    let dy = p.1 - q.1;
    (dx * dx + dy * dy).sqrt()
}

/// Energy statistic for two planar samples `x`, `y`:
/// `2 E|X-Y| - E|X-X'| - E|Y-Y'|`, scaled by `n m / (n + m)`.
pub fn energy_statistic_2d(x: &[(f64, f64)], y: &[(f64, f64)]) -> f64 {
    let n = x.len();
    let m = y.len();
    let cross: f64 = x
        .par_iter()
        .map(|&p| y.iter().map(|&q| dist2(p, q)).sum::<f64>())
        .sum();
    let within_x: f64 = (0..n)
        .into_par_iter()
        .map(|i| (i + 1..n).map(|j| dist2(x[i], x[j])).sum::<f64>())
        .sum();
    let within_y: f64 = (0..m)
        .into_par_iter()
        .map(|i| (i + 1..m).map(|j| dist2(y[i], y[j])).sum::<f64>())
        .sum();
    let (nf, mf) = (n as f64, m as f64);
    let e = 2.0 * cross / (nf * mf) - 2.0 * within_x / (nf * nf) - 2.0 * within_y / (mf * mf);
    nf * mf / (nf + mf) * e
}

/// Permutation test on the energy statistic. Returns `(statistic, p_value)`
/// with `p = (1 + #{permuted >= observed}) / (1 + permutations)`.
pub fn energy_permutation_test_2d(
    x: &[(f64, f64)],
    y: &[(f64, f64)],
    permutations: usize,
    rng: &mut RandomStream,
) -> Result<(f64, f64), StatsError> {
    if x.is_empty() || y.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let observed = energy_statistic_2d(x, y);
    let mut pool: Vec<(f64, f64)> = Vec::with_capacity(x.len() + y.len());
    pool.extend_from_slice(x);
    pool.extend_from_slice(y);
    let n = x.len();
    // Pre-draw the shuffles sequentially so the permutation loop can run in
    // parallel yet stay deterministic.
    let shuffles: Vec<Vec<u32>> = (0..permutations)
        .map(|_| {
            let mut idx: Vec<u32> = (0..pool.len() as u32).collect();
            // Fisher-Yates.
            for i in (1..idx.len()).rev() {
                let j = (rng.next_u64() % (i as u64 + 1)) as usize;
                idx.swap(i, j);
            }
            idx
        })
        .collect();
    let exceed = shuffles
        .par_iter()
        .filter(|idx| {
            let xs: Vec<(f64, f64)> = idx[..n].iter().map(|&i| pool[i as usize]).collect();
            let ys: Vec<(f64, f64)> = idx[n..].iter().map(|&i| pool[i as usize]).collect();
            energy_statistic_2d(&xs, &ys) >= observed
        })
        .count();
    let p = (1.0 + exceed as f64) / (1.0 + permutations as f64);
    Ok((observed, p))
}

/// Pearson correlation coefficient.
pub fn pearson_r(x: &[f64], y: &[f64]) -> Result<f64, StatsError> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(StatsError::EmptySample);
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let dx = a - mx;
        let dy = b - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(StatsError::DegenerateSample);
    }
    Ok(sxy / (sxx * syy).sqrt())
}

/// Chi-squared goodness-of-fit p-value for counts against a Poisson law with
/// the given mean. Bins with small expectation are pooled from the right.
pub fn poisson_gof_pvalue(counts: &[usize], mean: f64) -> f64 {
    let n = counts.len() as f64;
    let max = counts.iter().copied().max().unwrap_or(0);
    let mut observed = vec![0.0f64; max + 2];
    for &c in counts {
        observed[c] += 1.0;
    }
    // Poisson pmf by recurrence, final bin is the upper tail.
    let mut expected = vec![0.0f64; max + 2];
    let mut pmf = (-mean).exp();
    let mut cum = 0.0;
    for (k, e) in expected.iter_mut().enumerate().take(max + 1) {
        *e = n * pmf;
        cum += pmf;
        pmf *= mean / (k as f64 + 1.0);
    }
    expected[max + 1] = n * (1.0 - cum).max(0.0);
    // Pool bins until every pooled expectation is at least 5.
    let mut obs_pooled = Vec::new();
    let mut exp_pooled = Vec::new();
    let (mut o_acc, mut e_acc) = (0.0, 0.0);
    for (o, e) in observed.iter().zip(&expected) {
        o_acc += o;
        e_acc += e;
        if e_acc >= 5.0 {
            obs_pooled.push(o_acc);
            exp_pooled.push(e_acc);
            o_acc = 0.0;
            e_acc = 0.0;
        }
    }
    if e_acc > 0.0 {
        if let (Some(o), Some(e)) = (obs_pooled.last_mut(), exp_pooled.last_mut()) {
            *o += o_acc;
            *e += e_acc;
        } else {
            return 1.0;
        }
    }
    if obs_pooled.len() < 2 {
        return 1.0;
    }
    let chi2: f64 = obs_pooled
        .iter()
        .zip(&exp_pooled)
        .map(|(o, e)| (o - e) * (o - e) / e)
        .sum();
    let dof = (obs_pooled.len() - 1) as f64;
    1.0 - chi2_cdf(dof, chi2)
}

/// Holm step-down adjustment; returns per-member rejection decisions at
/// family level `alpha`.
pub fn holm_reject(p_values: &[f64], alpha: f64) -> Vec<bool> {
    let m = p_values.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| p_values[i].partial_cmp(&p_values[j]).unwrap());
    let mut reject = vec![false; m];
    for (rank, &idx) in order.iter().enumerate() {
        let level = alpha / (m - rank) as f64;
        if p_values[idx] <= level {
            reject[idx] = true;
        } else {
            break;
        }
    }
    reject
}
