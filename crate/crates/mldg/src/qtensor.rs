//! Symmetric-traceless tensor fields in compact component storage.
//!
//! A Q-tensor field stores only the independent components, so the
//! symmetric-traceless constraint is structural and every componentwise
//! linear update keeps the representation closed:
//!
//! * d = 2: `(q11, q12)` with `q22 = -q11`
//! * d = 3: `(q11, q22, q12, q13, q23)` with `q33 = -q11 - q22`
//!
//! Full-matrix views exist only at computation sites that need products.

use crate::grid::{self, check_same_grid, GridSpec, ScalarField, SymMatrixField};
use crate::{Error, Result, Scalar};

/// Number of independent components of a traceless symmetric `d x d` matrix.
pub fn q_len(d: usize) -> usize {
    match d {
        2 => 2,
        3 => 5,
        _ => unreachable!("grid dimension is validated to 2 or 3"),
    }
}

/// Symmetric-traceless tensor field.
#[derive(Clone, Debug)]
pub struct QField<S> {
    grid: GridSpec<S>,
    components: Vec<ScalarField<S>>,
}

impl<S: Scalar> QField<S> {
    pub fn zeros(grid: GridSpec<S>) -> Self {
        let components = (0..q_len(grid.dim())).map(|_| ScalarField::zeros(grid)).collect();
        QField { grid, components }
    }

    /// Build from independent components in storage order.
    pub fn from_components(components: Vec<ScalarField<S>>) -> Result<Self> {
        let grid = *components[0].grid();
        if components.len() != q_len(grid.dim()) {
            return Err(Error::Argument(format!(
                "Q field needs {} components for d={}, got {}",
                q_len(grid.dim()),
                grid.dim(),
                components.len()
            )));
        }
        for c in &components {
            check_same_grid(&grid, c.grid())?;
        }
        Ok(QField { grid, components })
    }

    pub fn grid(&self) -> &GridSpec<S> {
        &self.grid
    }

    pub fn components(&self) -> &[ScalarField<S>] {
        &self.components
    }

    pub fn components_mut(&mut self) -> &mut [ScalarField<S>] {
        &mut self.components
    }

    /// Reconstruct the full symmetric matrix field (trace-free by
    /// construction).
    pub fn to_full(&self) -> SymMatrixField<S> {
        let d = self.grid.dim();
        let comps = match d {
            2 => {
                let q11 = self.components[0].clone();
                let q22 = q11.scaled(-S::one());
                vec![q11, q22, self.components[1].clone()]
            }
            _ => {
                let q11 = self.components[0].clone();
                let q22 = self.components[1].clone();
                let mut q33 = q11.scaled(-S::one());
                q33.add_scaled(-S::one(), &q22);
                vec![
                    q11,
                    q22,
                    q33,
                    self.components[2].clone(),
                    self.components[3].clone(),
                    self.components[4].clone(),
                ]
            }
        };
        SymMatrixField::from_components(comps).expect("component counts match")
    }

    /// Pack a symmetric matrix field whose trace vanishes to relative
    /// tolerance 1e-10 pointwise; the residual trace is projected out before
    /// packing.
    pub fn from_full(m: &SymMatrixField<S>) -> Result<Self> {
        let tol = S::cast(1e-10);
        let tr = m.trace();
        let f2 = m.frobenius_norm2();
        for (i, (&t, &n2)) in tr.values().iter().zip(f2.values()).enumerate() {
            if t.abs() > tol * n2.sqrt() {
                return Err(Error::Constraint(format!(
                    "matrix trace {t} at point {i} exceeds 1e-10 of the Frobenius norm {}",
                    n2.sqrt()
                )));
            }
        }
        Ok(Self::pack_deviatoric(&m.deviatoric()))
    }

    /// Pack the independent components of an (assumed trace-free) symmetric
    /// matrix field.
    pub(crate) fn pack_deviatoric(m: &SymMatrixField<S>) -> Self {
        let d = m.grid().dim();
        let comps = match d {
            2 => vec![m.component(0, 0).clone(), m.component(0, 1).clone()],
            _ => vec![
                m.component(0, 0).clone(),
                m.component(1, 1).clone(),
                m.component(0, 1).clone(),
                m.component(0, 2).clone(),
                m.component(1, 2).clone(),
            ],
        };
        QField { grid: *m.grid(), components: comps }
    }

    /// Full-matrix component fields with their Frobenius multiplicities;
    /// reductions over all `d^2` entries loop over these.
    pub(crate) fn full_component_fields(&self) -> Vec<(ScalarField<S>, S)> {
        let one = S::one();
        let two = S::two();
        match self.grid.dim() {
            2 => vec![(self.components[0].clone(), two), (self.components[1].clone(), two)],
            _ => {
                let mut q33 = self.components[0].scaled(-S::one());
                q33.add_scaled(-S::one(), &self.components[1]);
                vec![
                    (self.components[0].clone(), one),
                    (self.components[1].clone(), one),
                    (q33, one),
                    (self.components[2].clone(), two),
                    (self.components[3].clone(), two),
                    (self.components[4].clone(), two),
                ]
            }
        }
    }

    pub fn scaled(&self, c: S) -> Self {
        QField { grid: self.grid, components: self.components.iter().map(|f| f.scaled(c)).collect() }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: S, other: &Self) {
        debug_assert_eq!(self.grid, other.grid);
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            a.add_scaled(c, b);
        }
    }

    /// Pointwise scale by a scalar field.
    pub fn scaled_by_field(&self, u: &ScalarField<S>) -> Result<Self> {
        check_same_grid(&self.grid, u.grid())?;
        let components = self
            .components
            .iter()
            .map(|c| {
                ScalarField::from_values(
                    self.grid,
                    c.values().iter().zip(u.values()).map(|(&a, &b)| a * b).collect(),
                )
                .expect("length preserved")
            })
            .collect::<Vec<_>>();
        Ok(QField { grid: self.grid, components })
    }

    pub fn is_finite(&self) -> bool {
        self.components.iter().all(|c| c.is_finite())
    }
}

/// Deviatoric projection `M - tr(M)/d I` (re-exported from the matrix field
/// for discoverability next to the Q algebra).
pub fn dev<S: Scalar>(m: &SymMatrixField<S>) -> SymMatrixField<S> {
    m.deviatoric()
}

/// Pointwise `tr(Q^2) = |Q|_F^2 >= 0`.
pub fn tr_q2<S: Scalar>(q: &QField<S>) -> ScalarField<S> {
    let grid = *q.grid();
    let two = S::two();
    let c = q.components();
    let values = match grid.dim() {
        2 => c[0]
            .values()
            .iter()
            .zip(c[1].values())
            .map(|(&a, &b)| two * (a * a + b * b))
            .collect::<Vec<_>>(),
        _ => (0..grid.n_points())
            .map(|i| {
                let (a, b) = (c[0].values()[i], c[1].values()[i]);
                let (f, g, e) = (c[2].values()[i], c[3].values()[i], c[4].values()[i]);
                two * (a * a + b * b + a * b + f * f + g * g + e * e)
            })
            .collect(),
    };
    ScalarField::from_values(grid, values).expect("length matches")
}

/// Pointwise `tr(Q^3)`; for traceless symmetric `Q` this equals `3 det(Q)`,
/// which vanishes identically in 2D, so the operation is 3D-only.
pub fn tr_q3<S: Scalar>(q: &QField<S>) -> Result<ScalarField<S>> {
    let grid = *q.grid();
    if grid.dim() != 3 {
        return Err(Error::Argument("tr(Q^3) is only meaningful for d=3".into()));
    }
    let three = S::cast(3.0);
    let c = q.components();
    let values = (0..grid.n_points())
        .map(|i| {
            let (a, b) = (c[0].values()[i], c[1].values()[i]);
            let cc = -a - b;
            let (f, g, e) = (c[2].values()[i], c[3].values()[i], c[4].values()[i]);
            let det = a * (b * cc - e * e) - f * (f * cc - e * g) + g * (f * e - b * g);
            three * det
        })
        .collect();
    Ok(ScalarField::from_values(grid, values).expect("length matches"))
}

/// Pointwise matrix square `Q^2` (symmetric, but not traceless).
pub fn q_squared<S: Scalar>(q: &QField<S>) -> SymMatrixField<S> {
    let grid = *q.grid();
    let c = q.components();
    let n = grid.n_points();
    let comps: Vec<Vec<S>> = match grid.dim() {
        2 => {
            // Q^2 = (q11^2 + q12^2) I for traceless symmetric 2x2.
            let t: Vec<S> = (0..n)
                .map(|i| {
                    let (a, f) = (c[0].values()[i], c[1].values()[i]);
                    a * a + f * f
                })
                .collect();
            vec![t.clone(), t, vec![S::zero(); n]]
        }
        _ => {
            let mut m11 = Vec::with_capacity(n);
            let mut m22 = Vec::with_capacity(n);
            let mut m33 = Vec::with_capacity(n);
            let mut m12 = Vec::with_capacity(n);
            let mut m13 = Vec::with_capacity(n);
            let mut m23 = Vec::with_capacity(n);
            for i in 0..n {
                let (a, b) = (c[0].values()[i], c[1].values()[i]);
                let cc = -a - b;
                let (f, g, e) = (c[2].values()[i], c[3].values()[i], c[4].values()[i]);
                m11.push(a * a + f * f + g * g);
                m22.push(f * f + b * b + e * e);
                m33.push(g * g + e * e + cc * cc);
                m12.push(a * f + f * b + g * e);
                m13.push(a * g + f * e + g * cc);
                m23.push(f * g + b * e + e * cc);
            }
            vec![m11, m22, m33, m12, m13, m23]
        }
    };
    SymMatrixField::from_components(
        comps
            .into_iter()
            .map(|v| ScalarField::from_values(grid, v).expect("length matches"))
            .collect(),
    )
    .expect("component counts match")
}

/// The coupling tensor `M = Q/s_+ + I/d`; `tr(M) = 1` pointwise.
pub fn m_tensor<S: Scalar>(q: &QField<S>, s_plus: S) -> Result<SymMatrixField<S>> {
    if !(s_plus > S::zero()) {
        return Err(Error::Parameter(format!("s_+ must be positive, got {s_plus}")));
    }
    let grid = *q.grid();
    let d = grid.dim();
    let inv_s = S::one() / s_plus;
    let inv_d = S::one() / S::from_usize(d).unwrap();
    let full = q.to_full();
    let mut comps = Vec::with_capacity(full.components().len());
    for (idx, c) in full.components().iter().enumerate() {
        let mut f = c.scaled(inv_s);
        if idx < d {
            for v in f.values_mut() {
                *v += inv_d;
            }
        }
        comps.push(f);
    }
    Ok(SymMatrixField::from_components(comps).expect("component counts match"))
}

/// Pointwise Frobenius contraction of two Q fields.
pub fn frobenius_dot<S: Scalar>(a: &QField<S>, b: &QField<S>) -> Result<ScalarField<S>> {
    check_same_grid(a.grid(), b.grid())?;
    let grid = *a.grid();
    let two = S::two();
    let (ca, cb) = (a.components(), b.components());
    let values = match grid.dim() {
        2 => (0..grid.n_points())
            .map(|i| {
                two * (ca[0].values()[i] * cb[0].values()[i] + ca[1].values()[i] * cb[1].values()[i])
            })
            .collect::<Vec<_>>(),
        _ => (0..grid.n_points())
            .map(|i| {
                let (a11, a22) = (ca[0].values()[i], ca[1].values()[i]);
                let (b11, b22) = (cb[0].values()[i], cb[1].values()[i]);
                let diag = two * (a11 * b11 + a22 * b22) + a11 * b22 + a22 * b11;
                let off = ca[2].values()[i] * cb[2].values()[i]
                    + ca[3].values()[i] * cb[3].values()[i]
                    + ca[4].values()[i] * cb[4].values()[i];
                diag + two * off
            })
            .collect(),
    };
    Ok(ScalarField::from_values(grid, values).expect("length matches"))
}

/// Global inner product `h^d sum_x A(x) : B(x)` of two Q fields.
pub fn frobenius_inner<S: Scalar>(a: &QField<S>, b: &QField<S>) -> Result<S> {
    Ok(grid::integral(&frobenius_dot(a, b)?))
}

/// `max_x |Q(x)|_F`, the sup norm used by the maximum-bound monitor.
pub fn sup_frobenius<S: Scalar>(q: &QField<S>) -> S {
    tr_q2(q).values().iter().fold(S::zero(), |m, &v| m.max(v.max(S::zero()).sqrt()))
}

/// Tensor l2 norm `sqrt(sum_ij ||Q^ij||^2)`.
pub fn norm_l2<S: Scalar>(q: &QField<S>) -> S {
    frobenius_inner(q, q).expect("same grid").max(S::zero()).sqrt()
}

/// `||grad Q||^2 = sum_k sum_ij ||Dk+ Q^ij||^2`.
pub fn grad_norm2<S: Scalar>(q: &QField<S>) -> S {
    let mut acc = S::zero();
    for (comp, mult) in q.full_component_fields() {
        acc += mult * grid::norm_grad2(&comp);
    }
    acc
}

pub fn norm_h1<S: Scalar>(q: &QField<S>) -> S {
    (frobenius_inner(q, q).expect("same grid") + grad_norm2(q)).sqrt()
}

/// Largest eigenvalue of `Q` per point (snapshot diagnostic).
pub fn eig_max<S: Scalar>(q: &QField<S>) -> ScalarField<S> {
    let grid = *q.grid();
    let c = q.components();
    let values: Vec<S> = match grid.dim() {
        2 => (0..grid.n_points())
            .map(|i| {
                let (a, f) = (c[0].values()[i], c[1].values()[i]);
                (a * a + f * f).sqrt()
            })
            .collect(),
        _ => {
            // Traceless symmetric 3x3: eigenvalues 2 sqrt(m) cos(theta + 2k pi/3)
            // with m = tr(Q^2)/6 and cos(3 theta) = det(Q) / (2 m^{3/2}).
            let six = S::cast(6.0);
            let two = S::two();
            (0..grid.n_points())
                .map(|i| {
                    let (a, b) = (c[0].values()[i], c[1].values()[i]);
                    let cc = -a - b;
                    let (f, g, e) = (c[2].values()[i], c[3].values()[i], c[4].values()[i]);
                    let tr2 = two * (a * a + b * b + a * b + f * f + g * g + e * e);
                    let m = (tr2 / six).max(S::zero());
                    if m < S::cast(1e-300) {
                        return S::zero();
                    }
                    let det = a * (b * cc - e * e) - f * (f * cc - e * g) + g * (f * e - b * g);
                    let cos3t = (det / (two * m * m.sqrt())).max(-S::one()).min(S::one());
                    two * m.sqrt() * (cos3t.acos() / S::cast(3.0)).cos()
                })
                .collect()
        }
    };
    ScalarField::from_values(grid, values).expect("length matches")
}
