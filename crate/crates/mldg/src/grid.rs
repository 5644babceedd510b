//! Periodic uniform collocated grid and finite-difference calculus.
//!
//! All fields live on `J^d` points of the torus `(0, L)^d` with spacing
//! `h = L/J`; indices wrap modulo `J` (no ghost storage). The gradient uses
//! forward differences, the divergence backward differences, so that
//! `<div v, f> = -[v, grad f]` holds exactly and the Laplacian
//! `lap = sum_k Dk+ Dk-` is self-adjoint and negative semi-definite under the
//! discrete inner product `<f, g> = h^d sum f g` over all points.

use crate::{Error, Result, Scalar};

/// Periodic uniform grid: dimension `d` in {2,3}, `j` points per axis on a
/// box of edge `l`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec<S> {
    d: usize,
    j: usize,
    l: S,
}

impl<S: Scalar> GridSpec<S> {
    pub fn new(d: usize, j: usize, l: S) -> Result<Self> {
        if d != 2 && d != 3 {
            return Err(Error::Argument(format!("dimension must be 2 or 3, got {d}")));
        }
        if j < 4 {
            return Err(Error::Argument(format!("need at least 4 points per axis, got {j}")));
        }
        if !(l > S::zero()) || !l.is_finite() {
            return Err(Error::Argument(format!("domain length must be positive and finite, got {l}")));
        }
        Ok(GridSpec { d, j, l })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn points_per_axis(&self) -> usize {
        self.j
    }

    pub fn length(&self) -> S {
        self.l
    }

    /// Grid spacing `h = L/J`.
    pub fn spacing(&self) -> S {
        self.l / S::from_usize(self.j).unwrap()
    }

    /// Total number of grid points `J^d`.
    pub fn n_points(&self) -> usize {
        self.j.pow(self.d as u32)
    }

    /// Quadrature weight `h^d` of one grid point.
    pub fn cell_volume(&self) -> S {
        self.spacing().powi(self.d as i32)
    }

    /// `L^d`, the measure of the whole box.
    pub fn volume(&self) -> S {
        self.l.powi(self.d as i32)
    }

    /// Linear-index stride of `axis` (x fastest).
    pub fn stride(&self, axis: usize) -> usize {
        self.j.pow(axis as u32)
    }

    /// Physical coordinates of the point with linear index `i`, written into
    /// `out[..d]`.
    pub fn coords(&self, i: usize, out: &mut [S]) {
        let h = self.spacing();
        let mut rest = i;
        for a in 0..self.d {
            out[a] = S::from_usize(rest % self.j).unwrap() * h;
            rest /= self.j;
        }
    }
}

/// Real-valued grid function with periodic index arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField<S> {
    grid: GridSpec<S>,
    values: Vec<S>,
}

impl<S: Scalar> ScalarField<S> {
    pub fn zeros(grid: GridSpec<S>) -> Self {
        ScalarField { grid, values: vec![S::zero(); grid.n_points()] }
    }

    pub fn constant(grid: GridSpec<S>, c: S) -> Self {
        ScalarField { grid, values: vec![c; grid.n_points()] }
    }

    pub fn from_values(grid: GridSpec<S>, values: Vec<S>) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(Error::Argument(format!(
                "expected {} values for a {}^{} grid, got {}",
                grid.n_points(),
                grid.points_per_axis(),
                grid.dim(),
                values.len()
            )));
        }
        Ok(ScalarField { grid, values })
    }

    /// Sample `f(x)` at every grid point; `x` has length `d`.
    pub fn from_fn(grid: GridSpec<S>, f: impl Fn(&[S]) -> S) -> Self {
        let mut values = Vec::with_capacity(grid.n_points());
        let mut x = [S::zero(); 3];
        for i in 0..grid.n_points() {
            grid.coords(i, &mut x);
            values.push(f(&x[..grid.dim()]));
        }
        ScalarField { grid, values }
    }

    pub fn grid(&self) -> &GridSpec<S> {
        &self.grid
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [S] {
        &mut self.values
    }

    pub fn map(&self, f: impl Fn(S) -> S) -> Self {
        ScalarField { grid: self.grid, values: self.values.iter().map(|&v| f(v)).collect() }
    }

    pub fn zip_map(&self, other: &Self, f: impl Fn(S, S) -> S) -> Result<Self> {
        check_same_grid(&self.grid, &other.grid)?;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Ok(ScalarField { grid: self.grid, values })
    }

    pub fn scaled(&self, c: S) -> Self {
        self.map(|v| v * c)
    }

    /// `self += c * other` (grids must match; checked by the caller).
    pub fn add_scaled(&mut self, c: S, other: &Self) {
        debug_assert_eq!(self.grid, other.grid);
        for (a, &b) in self.values.iter_mut().zip(&other.values) {
            *a += c * b;
        }
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}

pub(crate) fn check_same_grid<S: Scalar>(a: &GridSpec<S>, b: &GridSpec<S>) -> Result<()> {
    if a != b {
        return Err(Error::Argument(format!(
            "grid mismatch: {}^{} (L={}) vs {}^{} (L={})",
            a.points_per_axis(),
            a.dim(),
            a.length(),
            b.points_per_axis(),
            b.dim(),
            b.length()
        )));
    }
    Ok(())
}

/// `d` scalar components sharing one grid.
#[derive(Clone, Debug)]
pub struct VectorField<S> {
    components: Vec<ScalarField<S>>,
}

impl<S: Scalar> VectorField<S> {
    pub fn new(components: Vec<ScalarField<S>>) -> Result<Self> {
        let grid = *components[0].grid();
        if components.len() != grid.dim() {
            return Err(Error::Argument(format!(
                "vector field needs {} components, got {}",
                grid.dim(),
                components.len()
            )));
        }
        for c in &components {
            check_same_grid(&grid, c.grid())?;
        }
        Ok(VectorField { components })
    }

    pub fn grid(&self) -> &GridSpec<S> {
        self.components[0].grid()
    }

    pub fn component(&self, axis: usize) -> &ScalarField<S> {
        &self.components[axis]
    }

    pub fn components(&self) -> &[ScalarField<S>] {
        &self.components
    }
}

/// Symmetric (not necessarily traceless) matrix field in compact storage:
/// diagonal components first, then off-diagonals row-wise
/// (2D: `[m11, m22, m12]`; 3D: `[m11, m22, m33, m12, m13, m23]`).
#[derive(Clone, Debug)]
pub struct SymMatrixField<S> {
    grid: GridSpec<S>,
    components: Vec<ScalarField<S>>,
}

/// Compact component index of entry `(k, l)` of a `d x d` symmetric matrix.
pub fn sym_index(d: usize, k: usize, l: usize) -> usize {
    let (a, b) = if k <= l { (k, l) } else { (l, k) };
    if a == b {
        a
    } else {
        match (d, a, b) {
            (2, 0, 1) => 2,
            (3, 0, 1) => 3,
            (3, 0, 2) => 4,
            (3, 1, 2) => 5,
            _ => panic!("invalid symmetric index ({k},{l}) for d={d}"),
        }
    }
}

/// Number of compact components of a `d x d` symmetric matrix.
pub fn sym_len(d: usize) -> usize {
    d * (d + 1) / 2
}

impl<S: Scalar> SymMatrixField<S> {
    pub fn zeros(grid: GridSpec<S>) -> Self {
        let components = (0..sym_len(grid.dim())).map(|_| ScalarField::zeros(grid)).collect();
        SymMatrixField { grid, components }
    }

    pub fn from_components(components: Vec<ScalarField<S>>) -> Result<Self> {
        let grid = *components[0].grid();
        if components.len() != sym_len(grid.dim()) {
            return Err(Error::Argument(format!(
                "symmetric matrix field needs {} components for d={}, got {}",
                sym_len(grid.dim()),
                grid.dim(),
                components.len()
            )));
        }
        for c in &components {
            check_same_grid(&grid, c.grid())?;
        }
        Ok(SymMatrixField { grid, components })
    }

    pub fn grid(&self) -> &GridSpec<S> {
        &self.grid
    }

    pub fn component(&self, k: usize, l: usize) -> &ScalarField<S> {
        &self.components[sym_index(self.grid.dim(), k, l)]
    }

    pub fn component_mut(&mut self, k: usize, l: usize) -> &mut ScalarField<S> {
        &mut self.components[sym_index(self.grid.dim(), k, l)]
    }

    pub fn components(&self) -> &[ScalarField<S>] {
        &self.components
    }

    /// Pointwise trace.
    pub fn trace(&self) -> ScalarField<S> {
        let d = self.grid.dim();
        let mut out = self.components[0].clone();
        for k in 1..d {
            out.add_scaled(S::one(), &self.components[k]);
        }
        out
    }

    /// Pointwise deviatoric part `M - tr(M)/d I`; idempotent, trace-free.
    pub fn deviatoric(&self) -> SymMatrixField<S> {
        let d = self.grid.dim();
        let inv_d = S::one() / S::from_usize(d).unwrap();
        let tr = self.trace();
        let mut out = self.clone();
        for k in 0..d {
            out.components[k].add_scaled(-inv_d, &tr);
        }
        out
    }

    /// Pointwise product with a scalar field (`(M u)(x) = M(x) u(x)`).
    pub fn scaled_by_field(&self, u: &ScalarField<S>) -> Result<SymMatrixField<S>> {
        check_same_grid(&self.grid, u.grid())?;
        let components = self
            .components
            .iter()
            .map(|c| {
                let values =
                    c.values().iter().zip(u.values()).map(|(&m, &s)| m * s).collect::<Vec<_>>();
                ScalarField { grid: self.grid, values }
            })
            .collect();
        Ok(SymMatrixField { grid: self.grid, components })
    }

    /// Pointwise Frobenius contraction `A : B` (off-diagonals counted twice).
    pub fn frobenius_dot(&self, other: &SymMatrixField<S>) -> Result<ScalarField<S>> {
        check_same_grid(&self.grid, &other.grid)?;
        let d = self.grid.dim();
        let two = S::two();
        let mut out = ScalarField::zeros(self.grid);
        for (c, (a, b)) in self.components.iter().zip(&other.components).enumerate() {
            let w = if c < d { S::one() } else { two };
            for (o, (&x, &y)) in out.values.iter_mut().zip(a.values().iter().zip(b.values())) {
                *o += w * x * y;
            }
        }
        Ok(out)
    }

    /// Pointwise squared Frobenius norm `|M|_F^2`.
    pub fn frobenius_norm2(&self) -> ScalarField<S> {
        self.frobenius_dot(self).expect("same grid")
    }

    /// Global inner product `h^d sum_x A(x) : B(x)`.
    pub fn frobenius_inner(&self, other: &SymMatrixField<S>) -> Result<S> {
        Ok(integral(&self.frobenius_dot(other)?))
    }

    /// Max over points of the pointwise Frobenius norm.
    pub fn sup_frobenius(&self) -> S {
        let d = self.grid.dim();
        let two = S::two();
        let mut sup = S::zero();
        for i in 0..self.grid.n_points() {
            let mut s = S::zero();
            for (c, comp) in self.components.iter().enumerate() {
                let w = if c < d { S::one() } else { two };
                let v = comp.values()[i];
                s += w * v * v;
            }
            sup = sup.max(s.sqrt());
        }
        sup
    }

    pub fn is_finite(&self) -> bool {
        self.components.iter().all(|c| c.is_finite())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiffKind {
    Forward,
    Backward,
    Central,
}

/// One-axis difference operator `D_k^{+,-,c}` with periodic wrap.
pub fn apply_diff<S: Scalar>(f: &ScalarField<S>, axis: usize, kind: DiffKind) -> Result<ScalarField<S>> {
    let grid = *f.grid();
    if axis >= grid.dim() {
        return Err(Error::Argument(format!("axis {} out of range for d={}", axis, grid.dim())));
    }
    let j = grid.points_per_axis();
    let stride = grid.stride(axis);
    let h = grid.spacing();
    let inv_h = S::one() / h;
    let inv_2h = S::half() * inv_h;
    let v = f.values();
    let mut out = vec![S::zero(); v.len()];
    for (i, o) in out.iter_mut().enumerate() {
        let c = (i / stride) % j;
        let ip = if c + 1 == j { i + stride - stride * j } else { i + stride };
        let im = if c == 0 { i + stride * (j - 1) } else { i - stride };
        *o = match kind {
            DiffKind::Forward => (v[ip] - v[i]) * inv_h,
            DiffKind::Backward => (v[i] - v[im]) * inv_h,
            DiffKind::Central => (v[ip] - v[im]) * inv_2h,
        };
    }
    Ok(ScalarField { grid, values: out })
}

/// Fused `D_k^+ D_k^- f = (f_{i+1} - 2 f_i + f_{i-1}) / h^2` along one axis.
fn second_diff_axis<S: Scalar>(f: &ScalarField<S>, axis: usize) -> ScalarField<S> {
    let grid = *f.grid();
    let j = grid.points_per_axis();
    let stride = grid.stride(axis);
    let h = grid.spacing();
    let inv_h2 = S::one() / (h * h);
    let v = f.values();
    let mut out = vec![S::zero(); v.len()];
    for (i, o) in out.iter_mut().enumerate() {
        let c = (i / stride) % j;
        let ip = if c + 1 == j { i + stride - stride * j } else { i + stride };
        let im = if c == 0 { i + stride * (j - 1) } else { i - stride };
        *o = ((v[ip] - v[i]) - (v[i] - v[im])) * inv_h2;
    }
    ScalarField { grid, values: out }
}

/// Discrete gradient (forward differences per axis).
pub fn gradient<S: Scalar>(f: &ScalarField<S>) -> VectorField<S> {
    let comps = (0..f.grid().dim())
        .map(|a| apply_diff(f, a, DiffKind::Forward).expect("axis in range"))
        .collect();
    VectorField { components: comps }
}

/// Discrete divergence (backward differences), the negative adjoint of
/// [`gradient`].
pub fn divergence<S: Scalar>(v: &VectorField<S>) -> Result<ScalarField<S>> {
    let mut out = apply_diff(v.component(0), 0, DiffKind::Backward)?;
    for a in 1..v.grid().dim() {
        let da = apply_diff(v.component(a), a, DiffKind::Backward)?;
        out.add_scaled(S::one(), &da);
    }
    Ok(out)
}

/// `lap f = sum_k Dk+ Dk- f`; its trace identity `tr(hessian) = lap` holds
/// bit-for-bit because both accumulate the same per-axis fields in the same
/// order.
pub fn laplacian<S: Scalar>(f: &ScalarField<S>) -> ScalarField<S> {
    let mut out = second_diff_axis(f, 0);
    for a in 1..f.grid().dim() {
        let sd = second_diff_axis(f, a);
        out.add_scaled(S::one(), &sd);
    }
    out
}

/// `lap(lap f)`.
pub fn biharmonic<S: Scalar>(f: &ScalarField<S>) -> ScalarField<S> {
    laplacian(&laplacian(f))
}

/// Discrete Hessian: diagonal `Dk+ Dk-`, off-diagonal mixed central
/// `Dk^c Dl^c`. Every component operator is self-adjoint.
pub fn hessian<S: Scalar>(f: &ScalarField<S>) -> SymMatrixField<S> {
    let grid = *f.grid();
    let d = grid.dim();
    let mut components = Vec::with_capacity(sym_len(d));
    for a in 0..d {
        components.push(second_diff_axis(f, a));
    }
    for k in 0..d {
        for l in (k + 1)..d {
            let dl = apply_diff(f, l, DiffKind::Central).expect("axis in range");
            components.push(apply_diff(&dl, k, DiffKind::Central).expect("axis in range"));
        }
    }
    SymMatrixField { grid, components }
}

/// Adjoint of [`hessian`] under `<hessian(f), T>_F = <f, hessian_adjoint(T)>`:
/// apply each (self-adjoint) component operator to the matching component and
/// sum, off-diagonals twice. Realizes the double divergence
/// `div(div(T))` for symmetric `T`.
pub fn hessian_adjoint<S: Scalar>(t: &SymMatrixField<S>) -> ScalarField<S> {
    let d = t.grid().dim();
    let two = S::two();
    let mut out = second_diff_axis(&t.components[0], 0);
    for a in 1..d {
        let sd = second_diff_axis(&t.components[a], a);
        out.add_scaled(S::one(), &sd);
    }
    let mut c = d;
    for k in 0..d {
        for l in (k + 1)..d {
            let dl = apply_diff(&t.components[c], l, DiffKind::Central).expect("axis in range");
            let dkl = apply_diff(&dl, k, DiffKind::Central).expect("axis in range");
            out.add_scaled(two, &dkl);
            c += 1;
        }
    }
    out
}

/// Pairwise sum; keeps long reductions accurate enough for the 1e-12-level
/// identity checks on fine grids.
pub(crate) fn psum<S: Scalar>(xs: &[S]) -> S {
    if xs.len() <= 32 {
        let mut acc = S::zero();
        for &x in xs {
            acc += x;
        }
        acc
    } else {
        let mid = xs.len() / 2;
        psum(&xs[..mid]) + psum(&xs[mid..])
    }
}

/// `h^d sum_x f(x)`, i.e. `<f, 1>`.
pub fn integral<S: Scalar>(f: &ScalarField<S>) -> S {
    f.grid().cell_volume() * psum(f.values())
}

/// Discrete inner product `<f, g> = h^d sum_x f g` over all `J^d` points.
pub fn inner<S: Scalar>(f: &ScalarField<S>, g: &ScalarField<S>) -> Result<S> {
    check_same_grid(f.grid(), g.grid())?;
    let prods: Vec<S> = f.values().iter().zip(g.values()).map(|(&a, &b)| a * b).collect();
    Ok(f.grid().cell_volume() * psum(&prods))
}

/// Inner product of vector fields `[u, v] = sum_k <u_k, v_k>`.
pub fn inner_vec<S: Scalar>(u: &VectorField<S>, v: &VectorField<S>) -> Result<S> {
    let mut acc = S::zero();
    for (a, b) in u.components().iter().zip(v.components()) {
        acc += inner(a, b)?;
    }
    Ok(acc)
}

pub fn norm_l2<S: Scalar>(f: &ScalarField<S>) -> S {
    inner(f, f).expect("same grid").sqrt()
}

pub fn norm_grad2<S: Scalar>(f: &ScalarField<S>) -> S {
    let g = gradient(f);
    inner_vec(&g, &g).expect("same grid")
}

pub fn norm_h1<S: Scalar>(f: &ScalarField<S>) -> S {
    (inner(f, f).expect("same grid") + norm_grad2(f)).sqrt()
}

pub fn norm_h2<S: Scalar>(f: &ScalarField<S>) -> S {
    let lap = laplacian(f);
    (norm_h1(f).powi(2) + inner(&lap, &lap).expect("same grid")).sqrt()
}

pub fn norm_inf<S: Scalar>(f: &ScalarField<S>) -> S {
    f.values().iter().fold(S::zero(), |m, &v| m.max(v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = ScalarField<f64>;

    fn g2(j: usize) -> GridSpec<f64> {
        GridSpec::new(2, j, 2.0 * std::f64::consts::PI).unwrap()
    }

    fn g3(j: usize) -> GridSpec<f64> {
        GridSpec::new(3, j, 2.0 * std::f64::consts::PI).unwrap()
    }

    fn rng_field(grid: GridSpec<f64>, seed: u64) -> F {
        use rand::{RngExt, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        F::from_values(grid, (0..grid.n_points()).map(|_| rng.random_range(-1.0..1.0)).collect())
            .unwrap()
    }

    /// Brute-force `h^d sum f g`, independent of `inner`.
    fn naive_inner(f: &F, g: &F) -> f64 {
        let mut s = 0.0;
        for (a, b) in f.values().iter().zip(g.values()) {
            s += a * b;
        }
        s * f.grid().cell_volume()
    }

    #[test]
    fn grid_spec_validation() {
        assert!(GridSpec::new(1, 8, 1.0f64).is_err());
        assert!(GridSpec::new(4, 8, 1.0f64).is_err());
        assert!(GridSpec::new(2, 3, 1.0f64).is_err());
        assert!(GridSpec::new(2, 8, -1.0f64).is_err());
        let g = GridSpec::new(2, 8, 1.0f64).unwrap();
        assert_eq!(g.spacing() * 8.0, 1.0);
        assert_eq!(g.n_points(), 64);
    }

    #[test]
    fn diff_of_constant_is_zero() {
        let f = F::constant(g2(8), 3.25);
        for kind in [DiffKind::Forward, DiffKind::Backward, DiffKind::Central] {
            for axis in 0..2 {
                let d = apply_diff(&f, axis, kind).unwrap();
                assert!(d.values().iter().all(|&v| v == 0.0));
            }
        }
        assert!(apply_diff(&f, 2, DiffKind::Forward).is_err());
    }

    #[test]
    fn central_diff_of_sine() {
        // Central stencil on sampled sin(x): (sin(x+h) - sin(x-h)) / (2h)
        // = (sin(h)/h) cos(x).
        let grid = g2(8);
        let h = grid.spacing();
        let f = F::from_fn(grid, |x| x[0].sin());
        let d = apply_diff(&f, 0, DiffKind::Central).unwrap();
        let expect = F::from_fn(grid, |x| (h.sin() / h) * x[0].cos());
        for (a, b) in d.values().iter().zip(expect.values()) {
            assert!((a - b).abs() < 1e-14, "{a} vs {b}");
        }
    }

    #[test]
    fn forward_diff_plane_wave_symbol() {
        // D+ applied to e^{ikx} multiplies the mode by (e^{ikh} - 1)/h; check
        // real and imaginary parts on sampled cos/sin.
        let grid = g2(8);
        let h = grid.spacing();
        let k = 3.0;
        let cosf = F::from_fn(grid, |x| (k * x[0]).cos());
        let sinf = F::from_fn(grid, |x| (k * x[0]).sin());
        let dcos = apply_diff(&cosf, 0, DiffKind::Forward).unwrap();
        let dsin = apply_diff(&sinf, 0, DiffKind::Forward).unwrap();
        let (cr, ci) = (((k * h).cos() - 1.0) / h, (k * h).sin() / h);
        // d/dx Re(e^{ikx}) -> Re((cr + i ci) e^{ikx}) = cr cos - ci sin
        let expect_c = F::from_fn(grid, |x| cr * (k * x[0]).cos() - ci * (k * x[0]).sin());
        let expect_s = F::from_fn(grid, |x| cr * (k * x[0]).sin() + ci * (k * x[0]).cos());
        for (a, b) in dcos.values().iter().zip(expect_c.values()) {
            assert!((a - b).abs() < 1e-13);
        }
        for (a, b) in dsin.values().iter().zip(expect_s.values()) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn div_grad_equals_laplacian() {
        let f = rng_field(g3(6), 7);
        let dg = divergence(&gradient(&f)).unwrap();
        let lap = laplacian(&f);
        for (a, b) in dg.values().iter().zip(lap.values()) {
            assert!((a - b).abs() <= 1e-11 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn divergence_gradient_adjointness() {
        // <div v, f> + [v, grad f] = 0, both sides by brute-force sums.
        for seed in 0..3u64 {
            let grid = g2(8);
            let f = rng_field(grid, seed);
            let v = VectorField::new(vec![rng_field(grid, seed + 10), rng_field(grid, seed + 20)])
                .unwrap();
            let lhs = naive_inner(&divergence(&v).unwrap(), &f);
            let gf = gradient(&f);
            let rhs: f64 =
                (0..2).map(|a| naive_inner(v.component(a), gf.component(a))).sum();
            assert!((lhs + rhs).abs() <= 1e-12 * (1.0 + lhs.abs() + rhs.abs()));
        }
    }

    #[test]
    fn laplacian_plane_wave_eigenvalue() {
        // Mode k=4 on J=8, L=2pi: eigenvalue -(4/h^2) sin^2(pi k / J).
        let grid = g2(8);
        let f = F::from_fn(grid, |x| (4.0 * x[0]).cos());
        let lap = laplacian(&f);
        let lam = -6.484555753109618; // -(4/h^2) sin^2(pi/2), h = pi/4
        for (a, b) in lap.values().iter().zip(f.values()) {
            assert!((a - lam * b).abs() < 1e-12);
        }
        // Biharmonic eigenvalue is the square.
        let bi = biharmonic(&f);
        for (a, b) in bi.values().iter().zip(f.values()) {
            assert!((a - lam * lam * b).abs() < 1e-10);
        }
    }

    #[test]
    fn laplacian_sbp_identity() {
        // <lap f, g> = -[grad f, grad g] (summation by parts).
        let grid = g3(5);
        let f = rng_field(grid, 1);
        let g = rng_field(grid, 2);
        let lhs = naive_inner(&laplacian(&f), &g);
        let (gf, gg) = (gradient(&f), gradient(&g));
        let rhs: f64 = (0..3).map(|a| naive_inner(gf.component(a), gg.component(a))).sum();
        assert!((lhs + rhs).abs() <= 1e-12 * (1.0 + lhs.abs() + rhs.abs()));
        // Negative semi-definiteness and biharmonic positivity.
        assert!(naive_inner(&laplacian(&f), &f) <= 0.0);
        assert!(naive_inner(&biharmonic(&f), &f) >= 0.0);
    }

    #[test]
    fn hessian_trace_and_mixed_entry() {
        let grid = g2(8);
        let h = grid.spacing();
        // f = cos(x) cos(y): off-diagonal entry (sin(h)/h)^2 sin(x) sin(y).
        let f = F::from_fn(grid, |x| x[0].cos() * x[1].cos());
        let hess = hessian(&f);
        let c = (h.sin() / h).powi(2);
        let expect = F::from_fn(grid, |x| c * x[0].sin() * x[1].sin());
        for (a, b) in hess.component(0, 1).values().iter().zip(expect.values()) {
            assert!((a - b).abs() < 1e-13);
        }
        // Trace equals laplacian bit-for-bit.
        let tr = hess.trace();
        assert_eq!(tr.values(), laplacian(&f).values());
        // Constant input -> zero matrix.
        let z = hessian(&F::constant(grid, 5.0));
        for c in z.components() {
            assert!(c.values().iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn hessian_adjoint_identity() {
        // <hessian(f), T>_F = <f, hessian_adjoint(T)> by brute-force sums.
        for (grid, seeds) in [(g2(8), 0u64), (g3(5), 100u64)] {
            let d = grid.dim();
            let f = rng_field(grid, seeds + 1);
            let comps: Vec<F> =
                (0..sym_len(d)).map(|c| rng_field(grid, seeds + 2 + c as u64)).collect();
            let t = SymMatrixField::from_components(comps).unwrap();
            let hf = hessian(&f);
            let mut lhs = 0.0;
            for k in 0..d {
                for l in 0..d {
                    lhs += naive_inner(hf.component(k, l), t.component(k, l));
                }
            }
            let rhs = naive_inner(&f, &hessian_adjoint(&t));
            assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs() + rhs.abs()), "d={d}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn hessian_adjoint_of_scaled_identity() {
        // T = f I reduces the adjoint to the laplacian of f.
        let grid = g2(8);
        let f = rng_field(grid, 3);
        let mut t = SymMatrixField::zeros(grid);
        for k in 0..2 {
            *t.component_mut(k, k) = f.clone();
        }
        let adj = hessian_adjoint(&t);
        let lap = laplacian(&f);
        for (a, b) in adj.values().iter().zip(lap.values()) {
            assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn inner_products_and_norms() {
        let grid = g2(8);
        let one = F::constant(grid, 1.0);
        let vol = grid.volume();
        assert!((inner(&one, &one).unwrap() - vol).abs() < 1e-12 * vol);
        // Resolved sine mode: <sin, sin> = L^d / 2 exactly.
        let l = grid.length();
        let s = F::from_fn(grid, |x| (2.0 * std::f64::consts::PI * x[0] / l).sin());
        assert!((inner(&s, &s).unwrap() - vol / 2.0).abs() < 1e-12 * vol);
        // H1 norm definition.
        let f = rng_field(grid, 9);
        let h1 = norm_h1(&f);
        let expect = (inner(&f, &f).unwrap() + norm_grad2(&f)).sqrt();
        assert!((h1 - expect).abs() < 1e-14 * (1.0 + expect));
        // Grid mismatch is an argument error.
        let other = F::constant(g2(16), 1.0);
        assert!(inner(&one, &other).is_err());
    }

    #[test]
    fn deviatoric_and_frobenius() {
        let grid = g2(8);
        let mut m = SymMatrixField::zeros(grid);
        *m.component_mut(0, 0) = F::constant(grid, 1.0);
        *m.component_mut(1, 1) = F::constant(grid, 1.0);
        let dev = m.deviatoric();
        for c in dev.components() {
            assert!(c.values().iter().all(|&v| v.abs() < 1e-15));
        }
        // dev is idempotent on random fields.
        let mut r = SymMatrixField::zeros(grid);
        for k in 0..3usize {
            r.components[k] = rng_field(grid, 40 + k as u64);
        }
        let d1 = r.deviatoric();
        let d2 = d1.deviatoric();
        for (a, b) in d1.components().iter().zip(d2.components()) {
            for (x, y) in a.values().iter().zip(b.values()) {
                assert!((x - y).abs() < 1e-14);
            }
        }
        assert!(norm_inf(&d1.trace()) < 1e-14);
    }

    #[test]
    fn operators_are_linear_and_shift_equivariant() {
        let grid = g2(8);
        let f = rng_field(grid, 11);
        let g = rng_field(grid, 12);
        let (al, be) = (1.25, -0.75);
        let combo =
            F::from_values(grid, f.values().iter().zip(g.values()).map(|(&a, &b)| al * a + be * b).collect())
                .unwrap();
        let lhs = laplacian(&combo);
        let (lf, lg) = (laplacian(&f), laplacian(&g));
        for i in 0..grid.n_points() {
            let want = al * lf.values()[i] + be * lg.values()[i];
            assert!((lhs.values()[i] - want).abs() <= 1e-11 * (1.0 + want.abs()));
        }
        // Cyclic shift of the input shifts the output identically.
        let j = grid.points_per_axis();
        let shift = |field: &F| -> F {
            let mut out = F::zeros(grid);
            for q in 0..j {
                for p in 0..j {
                    let src = ((p + 3) % j) + j * ((q + 5) % j);
                    out.values_mut()[p + j * q] = field.values()[src];
                }
            }
            out
        };
        let a = laplacian(&shift(&f));
        let b = shift(&laplacian(&f));
        assert_eq!(a.values(), b.values());
    }
}
