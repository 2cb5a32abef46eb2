//! Univariate and bivariate (Tratnik-type) Krawtchouk polynomials.
//!
//! The bivariate family is a coupled product of univariate Krawtchouk
//! polynomials: the degree cap of the first factor is lowered by the second
//! degree, the cap of the second factor by the first argument. It is
//! orthogonal under the trinomial distribution, and its orthonormal version
//! evaluated on the triangle is exactly the eigenvector matrix of the
//! projected walk, with an affine spectrum in the spectral point `(x, y)`.
//!
//! Evaluation is by direct truncated hypergeometric sums: every Pochhammer
//! factor with a negative integer base terminates the series exactly, and at
//! desk scale (`N` up to a few tens) the term counts stay small. The same
//! code runs over `f64` and over exact rationals, which is how the test
//! suite pins the floating-point path.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::lattice::{Site, SiteIndexer};
use crate::report::CheckReport;
use crate::scalar::{powi, PolyScalar, Real};
use crate::scheme::binomial;

/// Trinomial weight parameters `p, q` with `p + q < 1`.
#[derive(Debug, Clone)]
pub struct PolyParams<T> {
    n: usize,
    p: T,
    q: T,
}

impl<T: PolyScalar> PolyParams<T> {
    pub fn new(n: usize, p: T, q: T) -> Result<Self> {
        let one = T::one();
        if !(p > T::zero() && q > T::zero() && p.clone() + q.clone() < one) {
            return Err(Error::InvalidParams(
                "need 0 < p, 0 < q, and p + q < 1".into(),
            ));
        }
        Ok(PolyParams { n, p, q })
    }

    /// The physical choice `p = 1/2`, `q = 1/4` that matches the walk.
    pub fn physical(n: usize) -> Self {
        let two = T::from_int(2);
        let four = T::from_int(4);
        PolyParams {
            n,
            p: T::one() / two,
            q: T::one() / four,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> &T {
        &self.p
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    /// `1 - p - q`, the weight of the neutral outcome.
    pub fn r(&self) -> T {
        T::one() - self.p.clone() - self.q.clone()
    }

    /// `p~ = p(1-p-q)/(1-p)`.
    pub fn p_tilde(&self) -> T {
        self.p.clone() * self.r() / (T::one() - self.p.clone())
    }

    /// `q~ = q/(1-p)`.
    pub fn q_tilde(&self) -> T {
        self.q.clone() / (T::one() - self.p.clone())
    }
}

fn check_triangle(n: usize, a: usize, b: usize) -> Result<()> {
    if a + b > n {
        return Err(Error::InvalidSite { i: a, j: b, n });
    }
    Ok(())
}

/// Univariate Krawtchouk polynomial `K_n^N(x; p)`, normalized to
/// `K_0 = K(0) = 1`, by its terminating hypergeometric series.
pub fn univariate<T: PolyScalar>(n: usize, x: usize, cap: usize, p: &T) -> Result<T> {
    check_triangle(cap, n, 0)?;
    check_triangle(cap, x, 0)?;
    let p_inv = T::one() / p.clone();
    let mut sum = T::zero();
    for l in 0..=n.min(x) {
        let mut term = powi(&p_inv, l);
        for r in 0..l {
            // (-n)_l (-x)_l / (l! (-N)_l), factor by factor
            term = term * T::from_int(r as i64 - n as i64) * T::from_int(r as i64 - x as i64)
                / (T::from_int(r as i64 + 1) * T::from_int(r as i64 - cap as i64));
        }
        sum = sum + term;
    }
    Ok(sum)
}

/// Monic-normalized factor `k_n^M(y; p) = (-M)_n K_n^M(y; p)`, evaluated
/// directly so caps `M < n` (where the prefactor vanishes) are exact.
fn k_factor<T: PolyScalar>(n: usize, cap: i64, y: usize, p: &T) -> T {
    let p_inv = T::one() / p.clone();
    let mut sum = T::zero();
    for l in 0..=n.min(y) {
        let mut term = powi(&p_inv, l);
        for r in 0..l {
            term = term * T::from_int(r as i64 - n as i64) * T::from_int(r as i64 - y as i64)
                / T::from_int(r as i64 + 1);
        }
        // remaining Pochhammer (-M + l)_{n - l}
        for r in 0..(n - l) {
            term = term * T::from_int(-cap + l as i64 + r as i64);
        }
        sum = sum + term;
    }
    sum
}

/// Pochhammer `(a)_k` over the scalar.
fn pochhammer<T: PolyScalar>(a: i64, k: usize) -> T {
    let mut acc = T::one();
    for r in 0..k {
        acc = acc * T::from_int(a + r as i64);
    }
    acc
}

/// Bivariate Krawtchouk polynomial of Tratnik type, `T_{m,n}^N(x, y)`.
pub fn tratnik<T: PolyScalar>(
    m: usize,
    n: usize,
    x: usize,
    y: usize,
    params: &PolyParams<T>,
) -> Result<T> {
    let cap = params.n();
    check_triangle(cap, m, n)?;
    check_triangle(cap, x, y)?;
    let first = k_factor(m, (cap - n) as i64, x, params.p());
    let second = k_factor(n, (cap - x) as i64, y, &params.q_tilde());
    Ok(first * second / pochhammer::<T>(-(cap as i64), m + n))
}

/// Squared orthonormalization coefficient
/// `binom(N; i, j) p~^i q~^j (1-p-q)^(-i-j)`, exact over the scalar.
pub fn orthonormal_coef_sq<T: PolyScalar>(i: usize, j: usize, params: &PolyParams<T>) -> Result<T> {
    let n = params.n();
    check_triangle(n, i, j)?;
    let trinomial = T::from_u64(binomial(n, i) * binomial(n - i, j)).expect("fits scalar");
    Ok(trinomial * powi(&params.p_tilde(), i) * powi(&params.q_tilde(), j)
        / powi(&params.r(), i + j))
}

/// Orthonormal bivariate Krawtchouk polynomial `t_{i,j}^N(x, y)`.
pub fn orthonormal<T: Real>(
    i: usize,
    j: usize,
    x: usize,
    y: usize,
    params: &PolyParams<T>,
) -> Result<T> {
    Ok(orthonormal_coef_sq(i, j, params)?.sqrt() * tratnik(i, j, x, y, params)?)
}

/// Trinomial weight `binom(N; x, y) p^x q^y (1-p-q)^(N-x-y)`.
pub fn weight<T: PolyScalar>(x: usize, y: usize, params: &PolyParams<T>) -> Result<T> {
    let n = params.n();
    check_triangle(n, x, y)?;
    let trinomial = T::from_u64(binomial(n, x) * binomial(n - x, y)).expect("fits scalar");
    Ok(trinomial * powi(params.p(), x) * powi(params.q(), y) * powi(&params.r(), n - x - y))
}

/// Walk eigenvalue at spectral point `(x, y)`:
/// `alpha (N - 2x) + beta (2N - 2x - 4y)`.
pub fn eigenvalue<T: PolyScalar>(
    n: usize,
    alpha: &T,
    beta: &T,
    x: usize,
    y: usize,
) -> Result<T> {
    check_triangle(n, x, y)?;
    let n = n as i64;
    let (x, y) = (x as i64, y as i64);
    Ok(alpha.clone() * T::from_int(n - 2 * x) + beta.clone() * T::from_int(2 * n - 2 * x - 4 * y))
}

/// Eigenvalues and the orthonormal eigenvector table of the projected walk.
///
/// Row index runs over lattice sites `(i, j)`, column index over spectral
/// points `(x, y)`, both in anti-diagonal order. Built at the physical
/// parameters `p = 1/2`, `q = 1/4`, where the orthonormal polynomial table
/// `sqrt(w(x,y)) t_{i,j}(x,y)` diagonalizes the lattice Hamiltonian.
#[derive(Debug, Clone)]
pub struct SpectralData<T> {
    n: usize,
    alpha: T,
    beta: T,
    indexer: SiteIndexer,
    lambda: Vec<T>,
    u: Array2<T>,
}

impl<T: Real> SpectralData<T> {
    pub fn build(n: usize, alpha: T, beta: T) -> Result<Self> {
        let params = PolyParams::<T>::physical(n);
        let indexer = SiteIndexer::new(n);
        let dim = indexer.dim();
        let mut lambda = Vec::with_capacity(dim);
        for point in indexer.iter() {
            lambda.push(eigenvalue(n, &alpha, &beta, point.i, point.j)?);
        }
        let sqrt_w: Vec<T> = indexer
            .iter()
            .map(|pt| weight(pt.i, pt.j, &params).map(|w| w.sqrt()))
            .collect::<Result<_>>()?;
        let mut u = Array2::zeros((dim, dim));
        for (a, site) in indexer.iter().enumerate() {
            let coef = orthonormal_coef_sq(site.i, site.j, &params)?.sqrt();
            for (b, point) in indexer.iter().enumerate() {
                u[[a, b]] = sqrt_w[b] * coef * tratnik(site.i, site.j, point.i, point.j, &params)?;
            }
        }
        Ok(SpectralData {
            n,
            alpha,
            beta,
            indexer,
            lambda,
            u,
        })
    }

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

    /// Eigenvalue of the spectral point with flat index `k`.
    pub fn lambda(&self, k: usize) -> T {
        self.lambda[k]
    }

    /// Eigenvector table entry for a lattice site and flat spectral index.
    pub fn u(&self, site: Site, k: usize) -> T {
        self.u[[self.indexer.index(site), k]]
    }

    pub fn u_matrix(&self) -> &Array2<T> {
        &self.u
    }

    /// Largest entry of `U^T U - I`.
    pub fn orthogonality_residual(&self) -> T {
        let dim = self.dim();
        let gram = self.u.t().dot(&self.u);
        let mut worst = T::zero();
        for r in 0..dim {
            for c in 0..dim {
                let want = if r == c { T::one() } else { T::zero() };
                worst = worst.max((gram[[r, c]] - want).abs());
            }
        }
        worst
    }
}

/// Out-of-range indices evaluate to zero; the recurrences only reference
/// them with vanishing coefficients.
fn tratnik_or_zero<T: PolyScalar>(
    m: i64,
    n: i64,
    x: usize,
    y: usize,
    params: &PolyParams<T>,
) -> T {
    if m < 0 || n < 0 || (m + n) as usize > params.n() {
        return T::zero();
    }
    tratnik(m as usize, n as usize, x, y, params).expect("indices checked")
}

fn orthonormal_or_zero<T: Real>(i: i64, j: i64, x: usize, y: usize, params: &PolyParams<T>) -> T {
    if i < 0 || j < 0 || (i + j) as usize > params.n() {
        return T::zero();
    }
    orthonormal(i as usize, j as usize, x, y, params).expect("indices checked")
}

/// Residual of the 3-term recurrence in `x` at one index tuple.
pub fn recurrence_x_residual<T: PolyScalar>(
    i: usize,
    j: usize,
    x: usize,
    y: usize,
    params: &PolyParams<T>,
) -> Result<T> {
    let n = params.n();
    check_triangle(n, i, j)?;
    check_triangle(n, x, y)?;
    let p = params.p().clone();
    let t = tratnik(i, j, x, y, params)?;
    let (ii, jj) = (i as i64, j as i64);
    let lhs = T::from_int(x as i64) * t.clone();
    let rhs = -(p.clone() * T::from_int((n - i - j) as i64))
        * (tratnik_or_zero(ii + 1, jj, x, y, params) - t.clone())
        - (T::one() - p) * T::from_int(ii) * (tratnik_or_zero(ii - 1, jj, x, y, params) - t);
    Ok(lhs - rhs)
}

/// Residual of the 7-term recurrence in `y` at one index tuple.
pub fn recurrence_y_residual<T: PolyScalar>(
    i: usize,
    j: usize,
    x: usize,
    y: usize,
    params: &PolyParams<T>,
) -> Result<T> {
    let n = params.n();
    check_triangle(n, i, j)?;
    check_triangle(n, x, y)?;
    let p = params.p().clone();
    let q = params.q().clone();
    let r = params.r();
    let one_m_p = T::one() - p.clone();
    let t = tratnik(i, j, x, y, params)?;
    let (ii, jj) = (i as i64, j as i64);
    let nij = T::from_int((n - i - j) as i64);
    let diff = |di: i64, dj: i64| tratnik_or_zero(ii + di, jj + dj, x, y, params) - t.clone();
    let lhs = T::from_int(y as i64) * t.clone();
    let rhs = p.clone() * q.clone() / one_m_p.clone() * nij.clone() * diff(1, 0)
        - q.clone() / one_m_p.clone() * nij * diff(0, 1)
        + q.clone() * T::from_int(ii) * diff(-1, 0)
        - r.clone() * T::from_int(jj) * diff(0, -1)
        - p * r / one_m_p.clone() * T::from_int(jj) * diff(1, -1)
        - q / one_m_p * T::from_int(ii) * diff(-1, 1);
    Ok(lhs - rhs)
}

/// Residual of the orthonormal contiguity relation (the eigen-relation of
/// the lattice Hamiltonian) at one index tuple, at the physical parameters.
pub fn contiguity_residual<T: Real>(
    i: usize,
    j: usize,
    x: usize,
    y: usize,
    alpha: T,
    beta: T,
    params: &PolyParams<T>,
) -> Result<T> {
    let n = params.n();
    check_triangle(n, i, j)?;
    check_triangle(n, x, y)?;
    let lam = eigenvalue(n, &alpha, &beta, x, y)?;
    let t = orthonormal(i, j, x, y, params)?;
    let (ii, jj) = (i as i64, j as i64);
    let tz = |di: i64, dj: i64| orthonormal_or_zero(ii + di, jj + dj, x, y, params);
    let f = |v: usize| T::from_usize(v).unwrap();
    let two = T::from_f64(2.0).unwrap();
    let rhs = alpha * f((i + 1) * (n - i - j)).sqrt() * tz(1, 0)
        + beta * (two * f((j + 1) * (n - i - j))).sqrt() * tz(0, 1)
        + alpha * f(j) * t
        + alpha * f(i * (n + 1 - i - j)).sqrt() * tz(-1, 0)
        + beta * (two * f(j * (n + 1 - i - j))).sqrt() * tz(0, -1)
        + beta * (two * f(i * (j + 1))).sqrt() * tz(-1, 1)
        + beta * (two * f((i + 1) * j)).sqrt() * tz(1, -1);
    Ok(lam * t - rhs)
}

/// Verify the `x`- and `y`-recurrences at the given parameters, and the
/// contiguity relation over the whole triangle.
///
/// The two multiplication recurrences hold for any admissible `(p, q)`; the
/// contiguity relation is tied to the physical `p = 1/2`, `q = 1/4` (its
/// square-root couplings come from that normalization), so that part always
/// runs at the physical parameters for the same `n`.
pub fn check_recurrences<T: Real>(
    params: &PolyParams<T>,
    alpha: T,
    beta: T,
    tol: T,
) -> Result<CheckReport> {
    let n = params.n();
    if n > 12 {
        return Err(Error::GuardExceeded { n, limit: 12 });
    }
    let physical = PolyParams::<T>::physical(n);
    let indexer = SiteIndexer::new(n);
    let mut report = CheckReport::new(format!("recurrence relations, n = {n}"));
    let tol = tol.to_f64().unwrap();
    for ij in indexer.iter() {
        for xy in indexer.iter() {
            let rx = recurrence_x_residual(ij.i, ij.j, xy.i, xy.j, params)?;
            report.check_residual(rx.abs().to_f64().unwrap(), tol, || {
                format!("x-recurrence at (i,j)={ij}, (x,y)={xy}")
            });
            let ry = recurrence_y_residual(ij.i, ij.j, xy.i, xy.j, params)?;
            report.check_residual(ry.abs().to_f64().unwrap(), tol, || {
                format!("y-recurrence at (i,j)={ij}, (x,y)={xy}")
            });
            let rc = contiguity_residual(ij.i, ij.j, xy.i, xy.j, alpha, beta, &physical)?;
            report.check_residual(rc.abs().to_f64().unwrap(), tol, || {
                format!("contiguity at (i,j)={ij}, (x,y)={xy}")
            });
        }
    }
    Ok(report)
}

/// Verify the generating-function identity at one `(s, t)` pair for every
/// `(i, j)`: the weighted polynomial sum against its closed product form.
pub fn check_generating_function<T: Real>(
    params: &PolyParams<T>,
    s: T,
    t: T,
    rel_tol: T,
) -> Result<CheckReport> {
    let n = params.n();
    let indexer = SiteIndexer::new(n);
    let mut report = CheckReport::new(format!("generating function, n = {n}, s = {s}, t = {t}"));
    let p = *params.p();
    let q = *params.q();
    for ij in indexer.iter() {
        let (i, j) = (ij.i, ij.j);
        let mut lhs = T::zero();
        for xy in indexer.iter() {
            let trinomial =
                T::from_u64(binomial(n, xy.i) * binomial(n - xy.i, xy.j)).unwrap();
            lhs = lhs
                + trinomial
                    * powi(&s, xy.i)
                    * powi(&t, xy.j)
                    * tratnik(i, j, xy.i, xy.j, params)?;
        }
        let one = T::one();
        let rhs = powi(&(one + s + t), n - i - j)
            * powi(&(one + (p - one) / p * s + t), i)
            * powi(&(one + (p + q - one) / q * t), j);
        let denom = one.max(lhs.abs()).max(rhs.abs());
        report.check_residual(ting((lhs - rhs).abs() / denom), rel_tol.to_f64().unwrap(), || {
            format!("generating function at (i,j)={ij}: lhs {lhs}, rhs {rhs}")
        });
    }
    Ok(report)
}

fn ting<T: Real>(v: T) -> f64 {
    v.to_f64().unwrap()
}
