use nalgebra::{DMatrix, DVector};

use crate::error::{AlbError, Result};

/// Ridge added when an unregularized refit is rank deficient or has fewer
/// samples than dimensions.
pub const PSEUDO_RIDGE: f64 = 1e-8;

/// Running sufficient statistics for regularized least squares.
///
/// `gram` holds `Σ x xᵀ + λ·I` and `moment` holds `Σ y·x`. When `lambda > 0`
/// the inverse of `gram` is tracked with rank-one Sherman–Morrison updates so
/// that per-round estimates and ellipsoid norms cost O(d²).
#[derive(Debug, Clone, PartialEq)]
pub struct RidgeState {
    dim: usize,
    lambda: f64,
    gram: DMatrix<f64>,
    moment: DVector<f64>,
    count: u64,
    inverse: Option<DMatrix<f64>>,
}

impl RidgeState {
    pub fn new(dim: usize, lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(AlbError::contract(format!("ridge regularizer must be finite and >= 0, got {lambda}")));
        }
        let gram = DMatrix::identity(dim, dim) * lambda;
        let inverse = (lambda > 0.0).then(|| DMatrix::identity(dim, dim) / lambda);
        Ok(Self { dim, lambda, gram, moment: DVector::zeros(dim), count: 0, inverse })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn moment(&self) -> &DVector<f64> {
        &self.moment
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Sherman–Morrison tracked inverse of `gram`, present iff `lambda > 0`.
    pub fn inverse(&self) -> Option<&DMatrix<f64>> {
        self.inverse.as_ref()
    }

    /// Absorbs one `(x, y)` sample.
    pub fn update(&mut self, x: &DVector<f64>, y: f64) -> Result<()> {
        if x.len() != self.dim {
            return Err(AlbError::DimensionMismatch { expected: self.dim, actual: x.len() });
        }
        self.gram.ger(1.0, x, x, 1.0);
        self.moment.axpy(y, x, 1.0);
        self.count += 1;
        if let Some(inv) = self.inverse.as_mut() {
            let vx = &*inv * x;
            let denom = 1.0 + x.dot(&vx);
            inv.ger(-1.0 / denom, &vx, &vx, 1.0);
        }
        Ok(())
    }

    /// Solves `gram · θ = moment` by Cholesky factorization.
    ///
    /// Fails with [`AlbError::Singular`] when `gram` is not positive definite,
    /// which can only happen for `lambda = 0`.
    pub fn solve(&self) -> Result<DVector<f64>> {
        if self.dim == 0 {
            return Ok(DVector::zeros(0));
        }
        match self.gram.clone().cholesky() {
            Some(chol) => Ok(chol.solve(&self.moment)),
            None => {
                let rank = self.gram.rank(1e-10 * self.gram.norm().max(1.0));
                Err(AlbError::Singular {
                    rank,
                    dim: self.dim,
                    hint: "add samples or use a positive regularizer".into(),
                })
            }
        }
    }

    /// Estimate from the tracked inverse when available, else a full solve.
    pub fn estimate(&self) -> Result<DVector<f64>> {
        match &self.inverse {
            Some(inv) => Ok(inv * &self.moment),
            None => self.solve(),
        }
    }

    /// Unregularized refit with the [`PSEUDO_RIDGE`] fallback: exact least
    /// squares once the store has at least `dim` samples and a positive
    /// definite design, the tiny ridge otherwise.
    pub fn solve_with_fallback(&self) -> DVector<f64> {
        if self.count as usize >= self.dim {
            if let Ok(theta) = self.solve() {
                return theta;
            }
        }
        let mut g = self.gram.clone();
        for i in 0..self.dim {
            g[(i, i)] += PSEUDO_RIDGE;
        }
        match g.clone().cholesky() {
            Some(chol) => chol.solve(&self.moment),
            None => g.svd(true, true).solve(&self.moment, 1e-14).unwrap_or_else(|_| DVector::zeros(self.dim)),
        }
    }

    /// Squared ellipsoid norm `xᵀ gram⁻¹ x`.
    pub fn inverse_norm_sq(&self, x: &DVector<f64>) -> Result<f64> {
        match &self.inverse {
            Some(inv) => Ok(x.dot(&(inv * x))),
            None => {
                let chol = self.gram.clone().cholesky().ok_or_else(|| AlbError::Singular {
                    rank: self.gram.rank(1e-10),
                    dim: self.dim,
                    hint: "ellipsoid norm needs a positive definite design".into(),
                })?;
                Ok(x.dot(&chol.solve(x)))
            }
        }
    }
}

/// Functional form of [`RidgeState::update`].
pub fn ridge_update(mut state: RidgeState, x: &DVector<f64>, y: f64) -> Result<RidgeState> {
    state.update(x, y)?;
    Ok(state)
}

/// Functional form of [`RidgeState::solve`].
pub fn ridge_solve(state: &RidgeState) -> Result<DVector<f64>> {
    state.solve()
}
