use nalgebra::DVector;
use rand::Rng;
use rand_distr::StandardNormal;

/// Uniform draw from the unit sphere in `dim` dimensions.
pub fn sample_uniform_sphere<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DVector<f64> {
    assert!(dim >= 1, "sphere dimension must be positive");
    loop {
        let v = DVector::from_fn(dim, |_, _| rng.sample::<f64, _>(StandardNormal));
        let n = v.norm();
        if n > 1e-300 {
            return v / n;
        }
    }
}

/// `dim` i.i.d. `N(0, scale²)` coordinates.
pub fn sample_gaussian<R: Rng + ?Sized>(dim: usize, scale: f64, rng: &mut R) -> DVector<f64> {
    DVector::from_fn(dim, |_, _| scale * rng.sample::<f64, _>(StandardNormal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unit_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for d in 1..12 {
            for _ in 0..50 {
                assert!((sample_uniform_sphere(d, &mut rng).norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn one_dimensional_signs_are_balanced() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let n = 10_000;
        let plus = (0..n).filter(|_| sample_uniform_sphere(1, &mut rng)[0] > 0.0).count();
        let freq = plus as f64 / n as f64;
        assert!((freq - 0.5).abs() <= 0.02, "{freq}");
    }

    #[test]
    fn second_moment_is_isotropic() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let d = 4;
        let n = 100_000;
        let mut m = DMatrix::zeros(d, d);
        for _ in 0..n {
            let x = sample_uniform_sphere(d, &mut rng);
            m.ger(1.0, &x, &x, 1.0);
        }
        m /= n as f64;
        let target = DMatrix::identity(d, d) / d as f64;
        assert!((m - target).abs().max() <= 0.01);
    }
}
