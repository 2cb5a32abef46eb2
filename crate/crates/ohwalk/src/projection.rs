//! Column subspaces and the vertex-level projection of the weighted walk.
//!
//! The column of a lattice site `(i, j)` is the uniform superposition over
//! all vertices of shape `(i, j)`. Both `A_(1,0)` and `A_(0,1)` preserve the
//! span of these columns, so the walk operator `αA_(1,0) + βA_(0,1)`
//! restricts to a matrix on the triangle, computed here by exact integer
//! cross-edge counting and compared elsewhere against the analytic lattice
//! Hamiltonian.

use ndarray::Array2;

use crate::error::Result;
use crate::lattice::{Site, SiteIndexer};
use crate::report::CheckReport;
use crate::scalar::Real;
use crate::scheme::{column_size, enumerate_vertices, OhVector, Shape, DEFAULT_ENUM_GUARD};

/// Member lists of all columns `V_(i,j)`, indexed like the lattice.
#[derive(Debug, Clone)]
pub struct ColumnBasis {
    indexer: SiteIndexer,
    members: Vec<Vec<OhVector>>,
}

impl ColumnBasis {
    pub fn n(&self) -> usize {
        self.indexer.n()
    }

    pub fn indexer(&self) -> &SiteIndexer {
        &self.indexer
    }

    pub fn members(&self, site: Site) -> &[OhVector] {
        &self.members[self.indexer.index(site)]
    }

    /// Column cardinality `k_(i,j)`.
    pub fn size(&self, site: Site) -> u64 {
        self.members(site).len() as u64
    }
}

/// Partition `Q^(N,2)` into shape columns.
pub fn build_columns(n: usize) -> Result<ColumnBasis> {
    build_columns_with_limit(n, DEFAULT_ENUM_GUARD)
}

/// Same as [`build_columns`] with an explicit enumeration guard.
pub fn build_columns_with_limit(n: usize, limit: usize) -> Result<ColumnBasis> {
    let vertices = enumerate_vertices(n, limit)?;
    let indexer = SiteIndexer::new(n);
    let mut members = vec![Vec::new(); indexer.dim()];
    for v in vertices {
        let s = v.shape();
        members[indexer.index(Site::new(s.e1, s.e2))].push(v);
    }
    debug_assert!(indexer
        .iter()
        .all(|s| members[indexer.index(s)].len() as u64
            == column_size(n, s.i, s.j).expect("site in triangle")));
    Ok(ColumnBasis { indexer, members })
}

/// The walk operator in the column basis.
#[derive(Debug, Clone)]
pub struct ProjectedOperator<T> {
    pub n: usize,
    pub alpha: T,
    pub beta: T,
    /// Symmetric matrix over lattice sites, anti-diagonal index order.
    pub entries: Array2<T>,
}

/// Integer counts of cross edges between columns for one difference shape.
fn cross_counts(cb: &ColumnBasis, diff_block_values: &[u8]) -> Array2<u64> {
    let n = cb.n();
    let ix = cb.indexer();
    let dim = ix.dim();
    let mut counts = Array2::zeros((dim, dim));
    for site in ix.iter() {
        let c = ix.index(site);
        for v in cb.members(site) {
            for block in 0..n {
                for &value in diff_block_values {
                    let u = v.xor(&OhVector::from_code(n, (value as u64) << (2 * block)));
                    let s = u.shape();
                    let r = ix.index(Site::new(s.e1, s.e2));
                    counts[[r, c]] += 1;
                }
            }
        }
    }
    counts
}

/// Project `αA_(1,0) + βA_(0,1)` onto the column basis.
///
/// Entries are integer cross-edge counts scaled by `1/sqrt(k_r k_c)`, so the
/// result is symmetric exactly, not just to rounding.
pub fn project_walk<T: Real>(cb: &ColumnBasis, alpha: T, beta: T) -> ProjectedOperator<T> {
    let ix = cb.indexer();
    let dim = ix.dim();
    let count10 = cross_counts(cb, &[0b01]);
    let count01 = cross_counts(cb, &[0b10, 0b11]);
    let mut entries = Array2::zeros((dim, dim));
    for r in 0..dim {
        for c in 0..dim {
            let norm = (T::from_u64(cb.size(ix.site(r))).unwrap()
                * T::from_u64(cb.size(ix.site(c))).unwrap())
            .sqrt();
            entries[[r, c]] = (alpha * T::from_u64(count10[[r, c]]).unwrap()
                + beta * T::from_u64(count01[[r, c]]).unwrap())
                / norm;
        }
    }
    ProjectedOperator {
        n: cb.n(),
        alpha,
        beta,
        entries,
    }
}

/// Check that every vertex of every column sees the same per-column neighbor
/// census, which is what makes the column space invariant:
/// under `(1,0)`: `N-i-j` edges up to `V_(i+1,j)`, `j` inside `V_(i,j)`,
/// `i` down to `V_(i-1,j)`; under `(0,1)`: `2(N-i-j)` to `V_(i,j+1)`,
/// `2i` to `V_(i-1,j+1)`, `j` to `V_(i+1,j-1)`, `j` to `V_(i,j-1)`, and
/// nothing inside the column itself.
pub fn check_column_invariance(cb: &ColumnBasis) -> CheckReport {
    let n = cb.n();
    let ix = cb.indexer();
    let mut report = CheckReport::new(format!("column neighbor census, n = {n}"));
    let census = |v: &OhVector, values: &[u8]| {
        let mut out = std::collections::BTreeMap::new();
        for block in 0..n {
            for &value in values {
                let s = v
                    .xor(&OhVector::from_code(n, (value as u64) << (2 * block)))
                    .shape();
                *out.entry(s).or_insert(0u64) += 1;
            }
        }
        out
    };
    for site in ix.iter() {
        let (i, j) = (site.i, site.j);
        let mut expect10 = std::collections::BTreeMap::new();
        if n - i - j > 0 {
            expect10.insert(Shape::new(i + 1, j), (n - i - j) as u64);
        }
        if j > 0 {
            expect10.insert(Shape::new(i, j), j as u64);
        }
        if i > 0 {
            expect10.insert(Shape::new(i - 1, j), i as u64);
        }
        let mut expect01 = std::collections::BTreeMap::new();
        if n - i - j > 0 {
            expect01.insert(Shape::new(i, j + 1), 2 * (n - i - j) as u64);
        }
        if i > 0 {
            expect01.insert(Shape::new(i - 1, j + 1), 2 * i as u64);
        }
        if j > 0 {
            expect01.insert(Shape::new(i + 1, j - 1), j as u64);
            expect01.insert(Shape::new(i, j - 1), j as u64);
        }
        for v in cb.members(site) {
            let got10 = census(v, &[0b01]);
            report.check(got10 == expect10, || {
                format!("vertex {v} of column {site}: (1,0)-census {got10:?}, expected {expect10:?}")
            });
            let got01 = census(v, &[0b10, 0b11]);
            report.check(got01 == expect01, || {
                format!("vertex {v} of column {site}: (0,1)-census {got01:?}, expected {expect01:?}")
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn column_census_n2() {
        let cb = build_columns(2).unwrap();
        let sizes: Vec<(Site, u64)> = cb.indexer().iter().map(|s| (s, cb.size(s))).collect();
        let want = [
            (Site::new(0, 0), 1),
            (Site::new(0, 1), 4),
            (Site::new(1, 0), 2),
            (Site::new(0, 2), 4),
            (Site::new(1, 1), 4),
            (Site::new(2, 0), 1),
        ];
        assert_eq!(sizes, want);
        assert_eq!(sizes.iter().map(|(_, k)| k).sum::<u64>(), 16);
    }

    #[test]
    fn column_census_n1() {
        let cb = build_columns(1).unwrap();
        assert_eq!(cb.indexer().dim(), 3);
        assert_eq!(cb.size(Site::new(0, 0)), 1);
        assert_eq!(cb.size(Site::new(1, 0)), 1);
        assert_eq!(cb.size(Site::new(0, 1)), 2);
    }

    #[test]
    fn zero_column_is_the_zero_vector() {
        for n in 1..=5 {
            let cb = build_columns(n).unwrap();
            assert_eq!(cb.members(Site::new(0, 0)), &[OhVector::zero(n)]);
        }
    }

    #[test]
    fn guard_rejects_large_n() {
        assert!(build_columns(9).is_err());
        assert!(build_columns_with_limit(9, 9).is_ok());
    }

    #[test]
    fn projected_entries_match_analytic_values() {
        let n = 4;
        let cb = build_columns(n).unwrap();
        let ix = cb.indexer().clone();
        let op = project_walk(&cb, 1.0f64, 0.0);
        // alpha-part: <i+1,j|.|i,j> = sqrt((i+1)(N-i-j)), diagonal = j
        for site in ix.iter() {
            let (i, j) = (site.i, site.j);
            let c = ix.index(site);
            assert_eq!(op.entries[[c, c]], j as f64);
            if i + j < n {
                let r = ix.index(Site::new(i + 1, j));
                let want = (((i + 1) * (n - i - j)) as f64).sqrt();
                assert!((op.entries[[r, c]] - want).abs() < 1e-12);
            }
        }
        // beta-part entry ((0,1),(0,0)) at n=2 is 2 = sqrt(2*1*2)
        let cb2 = build_columns(2).unwrap();
        let op2 = project_walk(&cb2, 0.0f64, 1.0);
        let ix2 = cb2.indexer();
        assert!(
            (op2.entries[[ix2.index(Site::new(0, 1)), ix2.index(Site::new(0, 0))]] - 2.0).abs()
                < 1e-15
        );
    }

    #[test]
    fn projection_is_exactly_symmetric() {
        let cb = build_columns(4).unwrap();
        let op = project_walk(&cb, 0.9f64, 1.7);
        let dim = cb.indexer().dim();
        for r in 0..dim {
            for c in 0..dim {
                assert_eq!(op.entries[[r, c]], op.entries[[c, r]]);
            }
        }
    }

    #[test]
    fn off_lattice_neighbor_entries_vanish() {
        let n = 4;
        let cb = build_columns(n).unwrap();
        let op = project_walk(&cb, 1.0f64, 2.0);
        let ix = cb.indexer();
        for a in ix.iter() {
            for b in ix.iter() {
                let di = a.i as i64 - b.i as i64;
                let dj = a.j as i64 - b.j as i64;
                let lattice_neighbor = matches!(
                    (di, dj),
                    (0, 0) | (1, 0) | (-1, 0) | (0, 1) | (0, -1) | (1, -1) | (-1, 1)
                );
                if !lattice_neighbor {
                    assert_eq!(op.entries[[ix.index(a), ix.index(b)]], 0.0);
                }
            }
        }
    }

    #[test]
    fn column_invariance_holds_small_n() {
        for n in 1..=4 {
            let cb = build_columns(n).unwrap();
            let report = check_column_invariance(&cb);
            assert!(report.passed, "{:?}", report.failures);
        }
    }

    #[test]
    fn column_invariance_named_counts_n3() {
        // every vertex of V_(1,1) at n=3: N-i-j = 1 neighbor in V_(2,1)
        // under (1,0), 2(N-i-j) = 2 neighbors in V_(1,2) under (0,1)
        let cb = build_columns(3).unwrap();
        for v in cb.members(Site::new(1, 1)) {
            let up10 = crate::scheme::neighbors(v, Shape::new(1, 0))
                .unwrap()
                .iter()
                .filter(|u| u.shape() == Shape::new(2, 1))
                .count();
            assert_eq!(up10, 1);
            let up01 = crate::scheme::neighbors(v, Shape::new(0, 1))
                .unwrap()
                .iter()
                .filter(|u| u.shape() == Shape::new(1, 2))
                .count();
            assert_eq!(up01, 2);
        }
        // boundary: V_(0,2) at n=2 has nothing above it
        let cb2 = build_columns(2).unwrap();
        for v in cb2.members(Site::new(0, 2)) {
            let up = crate::scheme::neighbors(v, Shape::new(0, 1))
                .unwrap()
                .iter()
                .filter(|u| u.shape().weight() > 2)
                .count();
            assert_eq!(up, 0);
        }
    }
}
