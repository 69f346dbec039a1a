use crate::error::{Error, Result};

const NORM_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hellinger {
    pub distance: f64,
    /// `1 − (1 − H²)²`, zero for identical distributions.
    pub infidelity: f64,
}

fn check_normalized(p: &[f64]) -> Result<()> {
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > NORM_TOL || p.iter().any(|&x| x < 0.0 || !x.is_finite()) {
        return Err(Error::Normalization { total });
    }
    Ok(())
}

/// Hellinger distance `‖√P − √Q‖₂ / √2` and the matching infidelity.
pub fn hellinger(p: &[f64], q: &[f64]) -> Result<Hellinger> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    check_normalized(p)?;
    check_normalized(q)?;
    let h2 = 0.5
        * p.iter()
            .zip(q)
            .map(|(a, b)| (a.sqrt() - b.sqrt()).powi(2))
            .sum::<f64>();
    let h2 = h2.min(1.0);
    let fidelity = (1.0 - h2) * (1.0 - h2);
    Ok(Hellinger {
        distance: h2.sqrt(),
        infidelity: 1.0 - fidelity,
    })
}

/// Total variation distance `½ Σ |P − Q|`.
pub fn total_variation(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical() {
        let h = hellinger(&[0.2, 0.8], &[0.2, 0.8]).unwrap();
        assert_eq!(h.distance, 0.0);
        assert_eq!(h.infidelity, 0.0);
    }

    #[test]
    fn disjoint() {
        let h = hellinger(&[1.0, 0.0], &[0.0, 1.0]).unwrap();
        assert!((h.distance - 1.0).abs() < 1e-15);
        assert!((h.infidelity - 1.0).abs() < 1e-15);
    }

    #[test]
    fn half_overlap() {
        // Oracle straight from the definition: ‖√P − √Q‖ / √2.
        let (p, q) = ([1.0f64, 0.0], [0.5f64, 0.5]);
        let norm = p
            .iter()
            .zip(&q)
            .map(|(a, b)| (a.sqrt() - b.sqrt()).powi(2))
            .sum::<f64>()
            .sqrt();
        let want = norm / 2f64.sqrt();
        let h = hellinger(&p, &q).unwrap();
        assert!((h.distance - want).abs() < 1e-12);
        assert!((h.distance - 0.5412).abs() < 1e-4);
    }

    #[test]
    fn rejects_unnormalized() {
        assert!(matches!(hellinger(&[0.5, 0.4], &[0.5, 0.5]), Err(Error::Normalization { .. })));
        assert!(hellinger(&[1.0], &[0.5, 0.5]).is_err());
    }

    #[test]
    fn tv() {
        assert!((total_variation(&[1.0, 0.0], &[0.5, 0.5]).unwrap() - 0.5).abs() < 1e-15);
    }
}
