use nalgebra::DVector;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use super::RatedRow;
use crate::error::{AlbError, Result};

/// Rows grouped into pseudo-arms.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusteredArms {
    pub centroids: Vec<DVector<f64>>,
    /// Mean reward of the rows in each cluster.
    pub arm_means: Vec<f64>,
    pub assignment: Vec<usize>,
    /// Within-cluster sum of squares after each Lloyd iteration.
    pub history: Vec<f64>,
}

impl ClusteredArms {
    pub fn k(&self) -> usize {
        self.centroids.len()
    }

    pub fn dim(&self) -> usize {
        self.centroids.first().map_or(0, |c| c.len())
    }

    pub fn distortion(&self) -> f64 {
        self.history.last().copied().unwrap_or(0.0)
    }
}

fn nearest(x: &DVector<f64>, centroids: &[DVector<f64>]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (j, c) in centroids.iter().enumerate() {
        let d = (x - c).norm_squared();
        if d < best.1 {
            best = (j, d);
        }
    }
    best
}

fn plus_plus_init<R: Rng + ?Sized>(points: &[DVector<f64>], k: usize, rng: &mut R) -> Vec<DVector<f64>> {
    let mut centroids = vec![points[rng.random_range(0..points.len())].clone()];
    let mut dist: Vec<f64> = points.iter().map(|p| (p - &centroids[0]).norm_squared()).collect();
    while centroids.len() < k {
        let next = match WeightedIndex::new(&dist) {
            Ok(w) => w.sample(rng),
            // every point already coincides with a centroid
            Err(_) => rng.random_range(0..points.len()),
        };
        centroids.push(points[next].clone());
        for (d, p) in dist.iter_mut().zip(points) {
            *d = d.min((p - &centroids[centroids.len() - 1]).norm_squared());
        }
    }
    centroids
}

/// k-means++ seeding followed by Lloyd iterations until the assignment stops
/// changing or `max_iters` is reached. A cluster that empties is re-seeded
/// with the point farthest from its current centroid.
pub fn kmeans_cluster<R: Rng + ?Sized>(rows: &[RatedRow], k: usize, max_iters: usize, rng: &mut R) -> Result<ClusteredArms> {
    if k == 0 || k > rows.len() {
        return Err(AlbError::contract(format!("k = {k} must lie in 1..={}", rows.len())));
    }
    let dim = rows[0].features.len();
    if let Some(r) = rows.iter().position(|r| r.features.len() != dim) {
        return Err(AlbError::DimensionMismatch { expected: dim, actual: rows[r].features.len() });
    }
    let points: Vec<DVector<f64>> = rows.iter().map(|r| DVector::from_row_slice(&r.features)).collect();
    let mut centroids = plus_plus_init(&points, k, rng);
    let mut assignment = vec![usize::MAX; points.len()];
    let mut history = Vec::new();

    for _ in 0..max_iters.max(1) {
        let mut changed = false;
        let mut cost = vec![0.0; points.len()];
        for (i, p) in points.iter().enumerate() {
            let (j, d) = nearest(p, &centroids);
            changed |= assignment[i] != j;
            assignment[i] = j;
            cost[i] = d;
        }
        let mut counts = vec![0usize; k];
        for &j in &assignment {
            counts[j] += 1;
        }
        while let Some(empty) = counts.iter().position(|&c| c == 0) {
            // farthest point from its own centroid, taken from a cluster
            // that can spare it
            let far = (0..points.len())
                .filter(|&i| counts[assignment[i]] > 1)
                .max_by(|&a, &b| cost[a].total_cmp(&cost[b]))
                .expect("k <= rows leaves a cluster with two points");
            counts[assignment[far]] -= 1;
            assignment[far] = empty;
            counts[empty] = 1;
            cost[far] = 0.0;
            centroids[empty] = points[far].clone();
            changed = true;
        }
        let mut sums = vec![DVector::zeros(dim); k];
        for (p, &j) in points.iter().zip(&assignment) {
            sums[j] += p;
        }
        for j in 0..k {
            centroids[j] = &sums[j] / counts[j] as f64;
        }
        history.push(points.iter().zip(&assignment).map(|(p, &j)| (p - &centroids[j]).norm_squared()).sum());
        if !changed {
            break;
        }
    }

    let mut totals = vec![0.0; k];
    let mut counts = vec![0usize; k];
    for (r, &j) in rows.iter().zip(&assignment) {
        totals[j] += r.reward;
        counts[j] += 1;
    }
    let arm_means = totals.iter().zip(&counts).map(|(t, &c)| t / c as f64).collect();
    Ok(ClusteredArms { centroids, arm_means, assignment, history })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn row(reward: f64, f: &[f64]) -> RatedRow {
        RatedRow { reward, features: f.to_vec() }
    }

    fn random_rows(n: usize, d: usize, seed: u64) -> Vec<RatedRow> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                let c = rng.random_range(0..4) as f64 * 3.0;
                row(c, &(0..d).map(|_| c + rng.random_range(-1.5..1.5)).collect::<Vec<_>>())
            })
            .collect()
    }

    #[test]
    fn separated_clusters() {
        let rows = [row(1.0, &[0.0, 0.0]), row(3.0, &[0.0, 1.0]), row(0.0, &[10.0, 0.0]), row(4.0, &[10.0, 1.0])];
        let c = kmeans_cluster(&rows, 2, 50, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        let mut pairs: Vec<(Vec<f64>, f64)> =
            c.centroids.iter().map(|x| x.iter().copied().collect()).zip(c.arm_means.iter().copied()).collect();
        pairs.sort_by(|a, b| a.0[0].total_cmp(&b.0[0]));
        assert_eq!(pairs, vec![(vec![0.0, 0.5], 2.0), (vec![10.0, 0.5], 2.0)]);
    }

    #[test]
    fn one_cluster_per_row() {
        let rows = random_rows(12, 3, 1);
        let c = kmeans_cluster(&rows, 12, 50, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        assert!(c.distortion() < 1e-20);
        let mut a = c.assignment.clone();
        a.sort_unstable();
        assert_eq!(a, (0..12).collect::<Vec<_>>());
    }

    #[test]
    fn lloyd_is_monotone_and_means_exact() {
        let rows = random_rows(300, 4, 3);
        let c = kmeans_cluster(&rows, 6, 100, &mut ChaCha8Rng::seed_from_u64(4)).unwrap();
        assert!(c.history.windows(2).all(|w| w[1] <= w[0] + 1e-9));
        for j in 0..6 {
            let members: Vec<f64> = rows.iter().zip(&c.assignment).filter(|(_, &a)| a == j).map(|(r, _)| r.reward).collect();
            assert!(!members.is_empty());
            assert_eq!(c.arm_means[j], members.iter().sum::<f64>() / members.len() as f64);
        }
    }

    #[test]
    fn beats_median_of_random_restarts() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rows: Vec<RatedRow> =
            (0..200).map(|_| row(0.0, &(0..5).map(|_| rng.random_range(-1.0..1.0)).collect::<Vec<_>>())).collect();
        let ours = kmeans_cluster(&rows, 8, 100, &mut ChaCha8Rng::seed_from_u64(6)).unwrap().distortion();
        // oracle: Lloyd from uniformly chosen initial centers
        let points: Vec<DVector<f64>> = rows.iter().map(|r| DVector::from_row_slice(&r.features)).collect();
        let mut runs: Vec<f64> = (0..50)
            .map(|s| {
                let mut r = ChaCha8Rng::seed_from_u64(100 + s);
                let mut cs: Vec<DVector<f64>> = rand::seq::index::sample(&mut r, 200, 8).iter().map(|i| points[i].clone()).collect();
                let mut last = f64::INFINITY;
                for _ in 0..100 {
                    let assign: Vec<usize> = points.iter().map(|p| nearest(p, &cs).0).collect();
                    for (j, c) in cs.iter_mut().enumerate() {
                        let m: Vec<&DVector<f64>> = points.iter().zip(&assign).filter(|(_, &a)| a == j).map(|(p, _)| p).collect();
                        if !m.is_empty() {
                            *c = m.iter().fold(DVector::zeros(5), |acc, p| acc + *p) / m.len() as f64;
                        }
                    }
                    let cost: f64 = points.iter().map(|p| nearest(p, &cs).1).sum();
                    if cost >= last {
                        break;
                    }
                    last = cost;
                }
                last
            })
            .collect();
        runs.sort_by(f64::total_cmp);
        assert!(ours <= runs[25]);
    }

    #[test]
    fn too_many_clusters_rejected() {
        let rows = random_rows(3, 2, 7);
        assert!(kmeans_cluster(&rows, 4, 10, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let rows = random_rows(100, 3, 8);
        let a = kmeans_cluster(&rows, 5, 50, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = kmeans_cluster(&rows, 5, 50, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
    }
}
