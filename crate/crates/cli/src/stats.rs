//! Spearman rank correlation with average-rank tie handling.

use anyhow::{bail, Result};

/// Ranks 1..=n, ties replaced by the average of the positions they occupy.
fn average_ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut ranks = vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && xs[order[j + 1]] == xs[order[i]] {
            j += 1;
        }
        // positions i..=j (0-based) share the rank (i+1 + j+1)/2
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = rank;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman's rho: Pearson correlation of the average ranks. Errors on
/// mismatched lengths, fewer than two points, non-finite values, or a
/// constant sequence (whose correlation is undefined).
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        bail!(
            "length mismatch: {} values against {}",
            xs.len(),
            ys.len()
        );
    }
    if xs.len() < 2 {
        bail!("correlation needs at least two points, got {}", xs.len());
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        bail!("correlation inputs must be finite");
    }
    let rx = average_ranks(xs);
    let ry = average_ranks(ys);
    let n = rx.len() as f64;
    let mean = (n + 1.0) / 2.0;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (a, b) in rx.iter().zip(&ry) {
        cov += (a - mean) * (b - mean);
        var_x += (a - mean) * (a - mean);
        var_y += (b - mean) * (b - mean);
    }
    if var_x == 0.0 || var_y == 0.0 {
        bail!("correlation of a constant sequence is undefined");
    }
    Ok(cov / (var_x * var_y).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monotone_sequences_correlate_perfectly() {
        let xs = [1.0, 2.0, 3.0, 4.0, 5.0];
        let up = [2.0, 4.0, 5.0, 7.0, 11.0];
        assert_eq!(spearman(&xs, &up).unwrap(), 1.0);
        let down = [11.0, 7.0, 5.0, 4.0, 2.0];
        assert_eq!(spearman(&xs, &down).unwrap(), -1.0);
    }

    #[test]
    fn one_swap_gives_four_fifths() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [1.0, 3.0, 2.0, 4.0];
        let rho = spearman(&xs, &ys).unwrap();
        assert!((rho - 0.8).abs() < 1e-15);
    }

    #[test]
    fn ties_take_average_ranks() {
        // xs ranks: 1.5, 1.5, 3, 4
        let xs = [5.0, 5.0, 7.0, 9.0];
        let ys = [1.0, 2.0, 3.0, 4.0];
        let rho = spearman(&xs, &ys).unwrap();
        // hand computation: cov = 4.5, var_x = 4.5, var_y = 5
        assert!((rho - 4.5 / (4.5f64 * 5.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn degenerate_inputs_error() {
        assert!(spearman(&[1.0], &[1.0]).is_err());
        assert!(spearman(&[1.0, 2.0], &[1.0]).is_err());
        assert!(spearman(&[3.0, 3.0, 3.0], &[1.0, 2.0, 3.0]).is_err());
        assert!(spearman(&[1.0, 2.0], &[f64::NAN, 0.0]).is_err());
    }
}
