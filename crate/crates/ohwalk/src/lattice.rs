//! Triangular index set `{(i, j) : i + j <= N}`.
//!
//! The same triangle indexes lattice sites `(i, j)` and spectral points
//! `(x, y)`; both run through [`SiteIndexer`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the triangular grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Site {
    pub i: usize,
    pub j: usize,
}

impl Site {
    pub fn new(i: usize, j: usize) -> Self {
        Site { i, j }
    }

    pub fn sum(&self) -> usize {
        self.i + self.j
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Flat indexing of the triangle, anti-diagonal by anti-diagonal.
///
/// Sites are ordered by `i + j` ascending, then by `i` ascending, so index 0
/// is `(0,0)`, indices 1..3 are `(0,1), (1,0)`, and so on. The flat index of
/// `(i, j)` is `s(s+1)/2 + i` with `s = i + j`.
#[derive(Debug, Clone)]
pub struct SiteIndexer {
    n: usize,
    sites: Vec<Site>,
}

impl SiteIndexer {
    pub fn new(n: usize) -> Self {
        let mut sites = Vec::with_capacity((n + 1) * (n + 2) / 2);
        for s in 0..=n {
            for i in 0..=s {
                sites.push(Site::new(i, s - i));
            }
        }
        SiteIndexer { n, sites }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of sites, `(N+1)(N+2)/2`.
    pub fn dim(&self) -> usize {
        self.sites.len()
    }

    pub fn contains(&self, site: Site) -> bool {
        site.sum() <= self.n
    }

    pub fn checked(&self, site: Site) -> Result<Site> {
        if self.contains(site) {
            Ok(site)
        } else {
            Err(Error::InvalidSite {
                i: site.i,
                j: site.j,
                n: self.n,
            })
        }
    }

    /// Flat index of a site; the site must lie in the triangle.
    pub fn index(&self, site: Site) -> usize {
        debug_assert!(self.contains(site));
        let s = site.sum();
        s * (s + 1) / 2 + site.i
    }

    pub fn site(&self, index: usize) -> Site {
        self.sites[index]
    }

    /// Sites in flat (anti-diagonal) order.
    pub fn iter(&self) -> impl Iterator<Item = Site> + '_ {
        self.sites.iter().copied()
    }

    /// Sites in lexicographic `(i, j)` order, used for file output.
    pub fn iter_lex(&self) -> impl Iterator<Item = Site> + '_ {
        let n = self.n;
        (0..=n).flat_map(move |i| (0..=(n - i)).map(move |j| Site::new(i, j)))
    }
}
