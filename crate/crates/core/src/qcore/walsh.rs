//! Unnormalized fast Walsh-Hadamard transform.

use crate::error::{Error, Result};

/// In-place transform of a length `2^N` slice:
///
/// ```text
/// out[s] = sum_x (-1)^popcount(s & x) data[x]
/// ```
///
/// Applying it twice multiplies by the length. The butterfly costs
/// `N * 2^N` additions.
pub fn fwht_in_place(data: &mut [f64]) -> Result<()> {
    if !data.len().is_power_of_two() {
        return Err(Error::contract(format!(
            "Walsh-Hadamard transform needs a power-of-two length, got {}",
            data.len()
        )));
    }
    let mut h = 1;
    while h < data.len() {
        let mut base = 0;
        while base < data.len() {
            for lo in base..base + h {
                let a = data[lo];
                let b = data[lo + h];
                data[lo] = a + b;
                data[lo + h] = a - b;
            }
            base += 2 * h;
        }
        h *= 2;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(data: &[f64]) -> Vec<f64> {
        (0..data.len())
            .map(|s| {
                data.iter()
                    .enumerate()
                    .map(|(x, v)| if (s & x).count_ones() % 2 == 0 { *v } else { -v })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_quadratic_definition() {
        let mut data: Vec<f64> = (0..16).map(|k| (k as f64 * 0.37).sin()).collect();
        let want = brute(&data);
        fwht_in_place(&mut data).unwrap();
        for (got, want) in data.iter().zip(&want) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn twice_is_scaling_by_length() {
        let orig: Vec<f64> = vec![1.0, -2.0, 0.5, 3.0, -1.0, 0.0, 2.0, 4.0];
        let mut data = orig.clone();
        fwht_in_place(&mut data).unwrap();
        fwht_in_place(&mut data).unwrap();
        for (got, want) in data.iter().zip(&orig) {
            assert!((got - want * 8.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_power_of_two() {
        assert!(fwht_in_place(&mut [1.0, 2.0, 3.0]).is_err());
    }
}
