//! The one-excitation lattice Hamiltonian and its propagators.
//!
//! Amplitudes are computed three independent ways: a closed form in roots of
//! unity (source at the `(0,0)` corner only), the spectral sum over the
//! orthonormal Krawtchouk eigenvector table (any source), and a
//! scaling-and-squaring matrix exponential that deliberately knows nothing
//! about the eigenbasis. Agreement of the three is one of the strongest
//! end-to-end checks in the crate.

use ndarray::Array2;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::krawtchouk::SpectralData;
use crate::lattice::{Site, SiteIndexer};
use crate::scalar::{powi, Real};
use crate::scheme::binomial;

/// Dense symmetric operator on the triangular one-excitation space.
#[derive(Debug, Clone)]
pub struct LatticeOperator<T> {
    n: usize,
    alpha: T,
    beta: T,
    indexer: SiteIndexer,
    matrix: Array2<T>,
}

impl<T: Real> LatticeOperator<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn dim(&self) -> usize {
        self.indexer.dim()
    }

    pub fn indexer(&self) -> &SiteIndexer {
        &self.indexer
    }

    pub fn matrix(&self) -> &Array2<T> {
        &self.matrix
    }

    pub fn entry(&self, row: Site, col: Site) -> T {
        self.matrix[[self.indexer.index(row), self.indexer.index(col)]]
    }
}

/// Build the lattice Hamiltonian for couplings `alpha`, `beta`.
///
/// Hopping terms: `alpha sqrt((i+1)(N-i-j))` between `(i,j)` and `(i+1,j)`,
/// `beta sqrt(2(j+1)(N-i-j))` between `(i,j)` and `(i,j+1)`,
/// `beta sqrt(2(i+1)j)` between `(i,j)` and `(i+1,j-1)`; on-site term
/// `alpha j`. The downward coefficients coincide with the transposed upward
/// ones, which is asserted rather than assumed.
pub fn build_hamiltonian<T: Real>(n: usize, alpha: T, beta: T) -> LatticeOperator<T> {
    assert!(n >= 1, "need at least one block");
    let indexer = SiteIndexer::new(n);
    let dim = indexer.dim();
    let mut matrix = Array2::zeros((dim, dim));
    let f = |v: usize| T::from_usize(v).unwrap();
    let two = T::from_f64(2.0).unwrap();
    for site in indexer.iter() {
        let (i, j) = (site.i, site.j);
        let c = indexer.index(site);
        matrix[[c, c]] = alpha * f(j);
        if i + j < n {
            matrix[[indexer.index(Site::new(i + 1, j)), c]] = alpha * f((i + 1) * (n - i - j)).sqrt();
            matrix[[indexer.index(Site::new(i, j + 1)), c]] =
                beta * (two * f((j + 1) * (n - i - j))).sqrt();
        }
        if j >= 1 {
            matrix[[indexer.index(Site::new(i + 1, j - 1)), c]] =
                beta * (two * f((i + 1) * j)).sqrt();
        }
    }
    // the downward action terms must be exactly the transposes already placed
    for site in indexer.iter() {
        let (i, j) = (site.i, site.j);
        let c = indexer.index(site);
        if i >= 1 {
            let r = indexer.index(Site::new(i - 1, j));
            assert_eq!(matrix[[c, r]], alpha * f(i * (n + 1 - i - j)).sqrt());
            matrix[[r, c]] = matrix[[c, r]];
        }
        if j >= 1 {
            let r = indexer.index(Site::new(i, j - 1));
            assert_eq!(matrix[[c, r]], beta * (two * f(j * (n + 1 - i - j))).sqrt());
            matrix[[r, c]] = matrix[[c, r]];
        }
        if i >= 1 {
            let r = indexer.index(Site::new(i - 1, j + 1));
            assert_eq!(matrix[[c, r]], beta * (two * f(i * (j + 1))).sqrt());
            matrix[[r, c]] = matrix[[c, r]];
        }
    }
    LatticeOperator {
        n,
        alpha,
        beta,
        indexer,
        matrix,
    }
}

/// Complex amplitude per lattice site at a fixed time.
#[derive(Debug, Clone)]
pub struct AmplitudeField<T> {
    n: usize,
    time: T,
    source: Site,
    indexer: SiteIndexer,
    amps: Vec<Complex<T>>,
}

impl<T: Real> AmplitudeField<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn time(&self) -> T {
        self.time
    }

    pub fn source(&self) -> Site {
        self.source
    }

    pub fn indexer(&self) -> &SiteIndexer {
        &self.indexer
    }

    pub fn amp(&self, site: Site) -> Complex<T> {
        self.amps[self.indexer.index(site)]
    }

    /// Occupation probability of one site.
    pub fn prob(&self, site: Site) -> T {
        self.amp(site).norm_sqr()
    }

    pub fn total_prob(&self) -> T {
        self.amps
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    /// Probability carried by the `j = 0` edge of the triangle.
    pub fn edge_prob_j0(&self) -> T {
        (0..=self.n)
            .map(|i| self.prob(Site::new(i, 0)))
            .fold(T::zero(), |acc, p| acc + p)
    }

    /// `|total probability - 1|`.
    pub fn norm_residual(&self) -> T {
        (self.total_prob() - T::one()).abs()
    }
}

/// Closed-form transition amplitude from the `(0,0)` corner.
///
/// With `z1 = exp(2i(alpha+beta)t)` and `z2 = exp(4i beta t)`:
/// `f_(i,j)(t) = exp(-iN(alpha+2beta)t) sqrt(2^j binom(N;i,j)) / 4^N
///  * (1+2z1+z2)^(N-i-j) (1-2z1+z2)^i (1-z2)^j`,
/// where a vanishing base with zero exponent counts as one.
pub fn amplitude_closed_form<T: Real>(
    n: usize,
    alpha: T,
    beta: T,
    target: Site,
    t: T,
) -> Result<Complex<T>> {
    if target.sum() > n {
        return Err(Error::InvalidSite {
            i: target.i,
            j: target.j,
            n,
        });
    }
    let (i, j) = (target.i, target.j);
    let two = T::from_f64(2.0).unwrap();
    let four = T::from_f64(4.0).unwrap();
    let z1 = Complex::from_polar(T::one(), two * (alpha + beta) * t);
    let z2 = Complex::from_polar(T::one(), four * beta * t);
    let phase = Complex::from_polar(
        T::one(),
        -T::from_usize(n).unwrap() * (alpha + two * beta) * t,
    );
    let scale = (powi(&two, j) * T::from_u64(binomial(n, i) * binomial(n - i, j)).unwrap())
        .sqrt()
        / powi(&four, n);
    let one = Complex::new(T::one(), T::zero());
    let two_c = Complex::new(two, T::zero());
    // powu(0) is one, which implements the 0^0 = 1 convention
    let factors = (one + two_c * z1 + z2).powu((n - i - j) as u32)
        * (one - two_c * z1 + z2).powu(i as u32)
        * (one - z2).powu(j as u32);
    Ok(phase * factors * Complex::new(scale, T::zero()))
}

/// Transition amplitude by the spectral sum
/// `sum_k U[target,k] U[source,k] exp(-i lambda_k t)`.
pub fn amplitude_spectral<T: Real>(
    sd: &SpectralData<T>,
    source: Site,
    target: Site,
    t: T,
) -> Result<Complex<T>> {
    sd.indexer().checked(source)?;
    sd.indexer().checked(target)?;
    let mut acc = Complex::new(T::zero(), T::zero());
    for k in 0..sd.dim() {
        let phase = Complex::from_polar(T::one(), -sd.lambda(k) * t);
        acc += phase * (sd.u(target, k) * sd.u(source, k));
    }
    Ok(acc)
}

/// Full amplitude field at one time, by the spectral method.
pub fn field_at<T: Real>(sd: &SpectralData<T>, source: Site, t: T) -> Result<AmplitudeField<T>> {
    sd.indexer().checked(source)?;
    let dim = sd.dim();
    let coeffs: Vec<Complex<T>> = (0..dim)
        .map(|k| Complex::from_polar(T::one(), -sd.lambda(k) * t) * sd.u(source, k))
        .collect();
    let u = sd.u_matrix();
    let mut amps = Vec::with_capacity(dim);
    for a in 0..dim {
        let mut acc = Complex::new(T::zero(), T::zero());
        for (k, c) in coeffs.iter().enumerate() {
            acc += *c * u[[a, k]];
        }
        amps.push(acc);
    }
    Ok(AmplitudeField {
        n: sd.n(),
        time: t,
        source,
        indexer: sd.indexer().clone(),
        amps,
    })
}

/// One amplitude field per requested time.
pub fn evolve_field<T: Real>(
    sd: &SpectralData<T>,
    source: Site,
    times: &[T],
) -> Result<Vec<AmplitudeField<T>>> {
    times.iter().map(|&t| field_at(sd, source, t)).collect()
}

/// Largest entry of `H U - U diag(lambda)`: how well the orthonormal
/// polynomial table diagonalizes the Hamiltonian.
pub fn eigen_residual<T: Real>(sd: &SpectralData<T>, h: &LatticeOperator<T>) -> T {
    assert_eq!(sd.n(), h.n());
    let hu = h.matrix().dot(sd.u_matrix());
    let dim = sd.dim();
    let mut worst = T::zero();
    for r in 0..dim {
        for c in 0..dim {
            let want = sd.u_matrix()[[r, c]] * sd.lambda(c);
            worst = worst.max((hu[[r, c]] - want).abs());
        }
    }
    worst
}

/// Matrix 1-norm (maximum column absolute sum).
fn norm_1<T: Real>(m: &Array2<Complex<T>>) -> T {
    let (rows, cols) = m.dim();
    let mut worst = T::zero();
    for c in 0..cols {
        let mut acc = T::zero();
        for r in 0..rows {
            acc = acc + m[[r, c]].norm();
        }
        worst = worst.max(acc);
    }
    worst
}

/// `exp(M)` for a small dense complex matrix by scaling and squaring with a
/// truncated Taylor series. Independent of any eigenstructure on purpose.
fn expm<T: Real>(m: &Array2<Complex<T>>) -> Array2<Complex<T>> {
    let dim = m.nrows();
    let theta = T::from_f64(0.25).unwrap();
    let norm = norm_1(m);
    let mut squarings = 0u32;
    let mut scale = T::one();
    while norm / scale > theta {
        squarings += 1;
        scale = scale + scale;
    }
    let scaled = m.map(|v| *v / scale);
    let mut result = Array2::<Complex<T>>::eye(dim);
    let mut term = result.clone();
    let tail = T::epsilon() * T::epsilon();
    for k in 1..80 {
        term = term.dot(&scaled);
        term.map_inplace(|v| *v = *v / T::from_usize(k).unwrap());
        result = result + &term;
        if norm_1(&term) < tail {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.dot(&result);
    }
    result
}

/// Propagate a delta state at `source` by `exp(-iHt)` computed with the
/// series oracle; verifies the result is finite.
pub fn amplitude_expm_oracle<T: Real>(
    h: &LatticeOperator<T>,
    source: Site,
    t: T,
) -> Result<AmplitudeField<T>> {
    h.indexer().checked(source)?;
    let dim = h.dim();
    let m = h.matrix().map(|&v| Complex::new(T::zero(), -(v * t)));
    let propagator = expm(&m);
    let src = h.indexer().index(source);
    let amps: Vec<Complex<T>> = (0..dim).map(|r| propagator[[r, src]]).collect();
    if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
        return Err(Error::NonFinite("matrix exponential oracle".into()));
    }
    Ok(AmplitudeField {
        n: h.n(),
        time: t,
        source,
        indexer: h.indexer().clone(),
        amps,
    })
}
