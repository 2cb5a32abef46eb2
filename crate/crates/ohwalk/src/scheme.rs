//! The depth-2 ordered Hamming scheme on `Q^(N,2)`.
//!
//! Vertices are length-`N` sequences of two-bit blocks over `Z/2Z`, encoded
//! as `2N`-bit integers so that vector addition is XOR and enumeration is a
//! counter loop. The shape of a vector counts, per block, whether the last
//! nonzero bit sits in position 1 or 2; vectors at a given XOR-difference
//! shape form one adjacency class of the scheme.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::report::CheckReport;

/// Enumeration guard: exhaustive routines refuse `n` above this unless an
/// explicit limit is passed (4^8 = 65,536 vertices).
pub const DEFAULT_ENUM_GUARD: usize = 8;

const FIRST_BITS: u64 = 0x5555_5555_5555_5555;

/// A vertex of `Q^(N,2)`: `N` two-bit blocks packed into a `u64`.
///
/// Block `j` occupies bits `2j` (first coordinate) and `2j+1` (second
/// coordinate), so block values are `0b00 = 0`, `0b01 = 1` (first bit set),
/// `0b10 = 2` (second bit set), `0b11 = 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OhVector {
    n: usize,
    code: u64,
}

impl OhVector {
    /// The all-zero vector.
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1 && n <= 31, "block count out of range");
        OhVector { n, code: 0 }
    }

    /// Vector from its packed encoding.
    pub fn from_code(n: usize, code: u64) -> Self {
        assert!(n >= 1 && n <= 31, "block count out of range");
        assert!(code < 1u64 << (2 * n), "code out of range for n blocks");
        OhVector { n, code }
    }

    /// Vector from block values in `0..=3`.
    pub fn from_blocks(blocks: &[u8]) -> Self {
        let mut code = 0u64;
        for (j, &b) in blocks.iter().enumerate() {
            assert!(b < 4, "block value out of range");
            code |= (b as u64) << (2 * j);
        }
        OhVector::from_code(blocks.len(), code)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn code(&self) -> u64 {
        self.code
    }

    /// Value of block `j` in `0..=3`.
    pub fn block(&self, j: usize) -> u8 {
        ((self.code >> (2 * j)) & 3) as u8
    }

    /// Group addition (blockwise XOR).
    pub fn xor(&self, other: &OhVector) -> OhVector {
        debug_assert_eq!(self.n, other.n);
        OhVector {
            n: self.n,
            code: self.code ^ other.code,
        }
    }

    /// Shape of the vector: `e1` counts blocks whose first bit alone is set,
    /// `e2` counts blocks whose second bit is set.
    pub fn shape(&self) -> Shape {
        let first = self.code & FIRST_BITS;
        let second = (self.code >> 1) & FIRST_BITS;
        Shape {
            e1: (first & !second).count_ones() as usize,
            e2: second.count_ones() as usize,
        }
    }
}

impl fmt::Display for OhVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for j in 0..self.n {
            if j > 0 {
                write!(f, ",")?;
            }
            let b = self.block(j);
            write!(f, "{}{}", b & 1, (b >> 1) & 1)?;
        }
        write!(f, ")")
    }
}

/// Shape `(e1, e2)` with `e1 + e2 <= N`; labels adjacency classes, columns,
/// and lattice sites alike.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shape {
    pub e1: usize,
    pub e2: usize,
}

impl Shape {
    pub fn new(e1: usize, e2: usize) -> Self {
        Shape { e1, e2 }
    }

    pub fn weight(&self) -> usize {
        self.e1 + self.e2
    }

    pub fn checked(self, n: usize) -> Result<Shape> {
        if self.weight() <= n {
            Ok(self)
        } else {
            Err(Error::InvalidShape {
                e1: self.e1,
                e2: self.e2,
                n,
            })
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.e1, self.e2)
    }
}

/// All shapes for a given `n`, by weight then `e1`.
pub fn all_shapes(n: usize) -> Vec<Shape> {
    let mut out = Vec::new();
    for s in 0..=n {
        for e1 in 0..=s {
            out.push(Shape::new(e1, s - e1));
        }
    }
    out
}

fn guard(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::GuardExceeded { n, limit })
    } else {
        Ok(())
    }
}

/// All vertices of `Q^(N,2)`, in ascending code order.
pub fn enumerate_vertices(n: usize, limit: usize) -> Result<Vec<OhVector>> {
    guard(n, limit)?;
    Ok((0..1u64 << (2 * n))
        .map(|c| OhVector::from_code(n, c))
        .collect())
}

/// Exact size of the shape class: `N! / (i! j! (N-i-j)!) * 2^j`.
pub fn column_size(n: usize, i: usize, j: usize) -> Result<u64> {
    if i + j > n {
        return Err(Error::InvalidShape { e1: i, e2: j, n });
    }
    let mut acc: u64 = 1;
    // multinomial as a product of two binomials: C(n, i) * C(n-i, j)
    acc *= binomial(n, i);
    acc *= binomial(n - i, j);
    Ok(acc << j)
}

/// Binomial coefficient as exact `u64` (safe for the desk-scale `n` here).
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for l in 0..k {
        acc = acc * (n - l) as u64 / (l + 1) as u64;
    }
    acc
}

/// All difference vectors of a given shape, ascending by code.
fn difference_vectors(n: usize, s: Shape) -> Vec<OhVector> {
    let mut out = Vec::new();
    let mut blocks = vec![0u8; n];
    // place e1 blocks of value 1 and e2 blocks of value 2 or 3
    fn rec(blocks: &mut Vec<u8>, j: usize, e1: usize, e2: usize, out: &mut Vec<OhVector>) {
        let n = blocks.len();
        if e1 + e2 > n - j {
            return;
        }
        if j == n {
            out.push(OhVector::from_blocks(blocks));
            return;
        }
        blocks[j] = 0;
        rec(blocks, j + 1, e1, e2, out);
        if e1 > 0 {
            blocks[j] = 1;
            rec(blocks, j + 1, e1 - 1, e2, out);
        }
        if e2 > 0 {
            blocks[j] = 2;
            rec(blocks, j + 1, e1, e2 - 1, out);
            blocks[j] = 3;
            rec(blocks, j + 1, e1, e2 - 1, out);
        }
        blocks[j] = 0;
    }
    rec(&mut blocks, 0, s.e1, s.e2, &mut out);
    out.sort_unstable();
    out
}

/// The `y` with `shape(x XOR y) = s`, ascending by code.
pub fn neighbors(x: &OhVector, s: Shape) -> Result<Vec<OhVector>> {
    s.checked(x.n())?;
    let mut out: Vec<OhVector> = difference_vectors(x.n(), s)
        .iter()
        .map(|d| x.xor(d))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// One graph `G_s` of the scheme: vertices adjacent iff their XOR-difference
/// has shape `s`.
#[derive(Debug, Clone)]
pub struct SchemeGraph {
    n_sites: usize,
    shape: Shape,
}

impl SchemeGraph {
    pub fn new(n: usize, shape: Shape) -> Result<Self> {
        shape.checked(n)?;
        Ok(SchemeGraph {
            n_sites: n,
            shape,
        })
    }

    pub fn n(&self) -> usize {
        self.n_sites
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// Common vertex degree `k_s`.
    pub fn degree(&self) -> u64 {
        column_size(self.n_sites, self.shape.e1, self.shape.e2).expect("shape checked")
    }

    pub fn neighbors(&self, x: &OhVector) -> Vec<OhVector> {
        neighbors(x, self.shape).expect("shape checked")
    }
}

/// Intersection numbers observed by counting: maps
/// `(s1, s2, diff)` to the number of `z` with `shape(x^z) = s1` and
/// `shape(z^y) = s2` for a pair with `shape(x^y) = diff`.
#[derive(Debug, Clone, Default)]
pub struct IntersectionTable {
    counts: BTreeMap<(Shape, Shape, Shape), u64>,
}

impl IntersectionTable {
    pub fn get(&self, s1: Shape, s2: Shape, diff: Shape) -> u64 {
        *self.counts.get(&(s1, s2, diff)).unwrap_or(&0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Shape, Shape, Shape), &u64)> {
        self.counts.iter()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// Count over all `z` for a fixed pair `(x, y)`; one full pass per call.
pub fn intersection_counts_for_pair(x: &OhVector, y: &OhVector) -> BTreeMap<(Shape, Shape), u64> {
    let n = x.n();
    // flat accumulator: shape -> e1*(n+1)+e2, pair -> s1*(n+1)^2+s2
    let stride = (n + 1) * (n + 1);
    let mut flat = vec![0u64; stride * stride];
    let key = |s: Shape| s.e1 * (n + 1) + s.e2;
    for code in 0..1u64 << (2 * n) {
        let z = OhVector::from_code(n, code);
        let s1 = key(x.xor(&z).shape());
        let s2 = key(z.xor(&y).shape());
        flat[s1 * stride + s2] += 1;
    }
    let mut counts = BTreeMap::new();
    for s1 in all_shapes(n) {
        for s2 in all_shapes(n) {
            let c = flat[key(s1) * stride + key(s2)];
            if c > 0 {
                counts.insert((s1, s2), c);
            }
        }
    }
    counts
}

/// Expected coefficient of `A_diff` in `A_(1,0) A_(i,j)`.
fn expected_product_10(n: usize, s: Shape, diff: Shape) -> u64 {
    let (i, j) = (s.e1 as i64, s.e2 as i64);
    let (di, dj) = (diff.e1 as i64, diff.e2 as i64);
    let n = n as i64;
    if (di, dj) == (i - 1, j) {
        (n + 1 - i - j) as u64
    } else if (di, dj) == (i, j) {
        j as u64
    } else if (di, dj) == (i + 1, j) {
        (i + 1) as u64
    } else {
        0
    }
}

/// Expected coefficient of `A_diff` in `A_(0,1) A_(i,j)`.
fn expected_product_01(n: usize, s: Shape, diff: Shape) -> u64 {
    let (i, j) = (s.e1 as i64, s.e2 as i64);
    let (di, dj) = (diff.e1 as i64, diff.e2 as i64);
    let n = n as i64;
    if (di, dj) == (i, j - 1) {
        (2 * (n + 1 - i - j)) as u64
    } else if (di, dj) == (i + 1, j - 1) {
        (2 * (i + 1)) as u64
    } else if (di, dj) == (i - 1, j + 1) {
        (j + 1) as u64
    } else if (di, dj) == (i, j + 1) {
        (j + 1) as u64
    } else {
        0
    }
}

/// Options for [`verify_bose_mesner`].
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Enumeration guard; raise deliberately for larger runs.
    pub max_n: usize,
    /// Random representative pairs sampled per difference shape, in addition
    /// to the canonical one.
    pub pairs_per_shape: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_n: DEFAULT_ENUM_GUARD,
            pairs_per_shape: 50,
            seed: 0x0441_77a1,
        }
    }
}

/// Result of the exhaustive Bose–Mesner verification.
#[derive(Debug)]
pub struct BoseMesnerReport {
    pub n: usize,
    /// Intersection numbers from the canonical representative of each
    /// difference shape.
    pub table: IntersectionTable,
    pub report: CheckReport,
}

/// Canonical vector of a shape: `e1` blocks `01`, then `e2` blocks `10`.
fn canonical_of_shape(n: usize, s: Shape) -> OhVector {
    let mut blocks = vec![0u8; n];
    for b in blocks.iter_mut().take(s.e1) {
        *b = 1;
    }
    for b in blocks.iter_mut().skip(s.e1).take(s.e2) {
        *b = 2;
    }
    OhVector::from_blocks(&blocks)
}

fn random_of_shape(n: usize, s: Shape, rng: &mut impl Rng) -> OhVector {
    let mut positions: Vec<usize> = (0..n).collect();
    positions.shuffle(rng);
    let mut blocks = vec![0u8; n];
    for &p in positions.iter().take(s.e1) {
        blocks[p] = 1;
    }
    for &p in positions.iter().skip(s.e1).take(s.e2) {
        blocks[p] = if rng.random::<bool>() { 2 } else { 3 };
    }
    OhVector::from_blocks(&blocks)
}

/// Verify the scheme's product relations for `A_(1,0) A_(i,j)` and
/// `A_(0,1) A_(i,j)` by exhaustive counting, together with
/// representative-independence of all observed intersection numbers.
pub fn verify_bose_mesner(n: usize, opts: &VerifyOptions) -> Result<BoseMesnerReport> {
    guard(n, opts.max_n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ n as u64);
    let shapes = all_shapes(n);
    let mut report = CheckReport::new(format!("bose-mesner products, n = {n}"));
    let mut table = IntersectionTable::default();

    for &diff in &shapes {
        // canonical pair first, then random pairs translated at random
        let canonical = (canonical_of_shape(n, diff), OhVector::zero(n));
        let mut reference: Option<BTreeMap<(Shape, Shape), u64>> = None;
        for pair_no in 0..=opts.pairs_per_shape {
            let (x, y) = if pair_no == 0 {
                canonical
            } else {
                let base = OhVector::from_code(n, rng.random_range(0..1u64 << (2 * n)));
                let d = random_of_shape(n, diff, &mut rng);
                (base.xor(&d), base)
            };
            debug_assert_eq!(x.xor(&y).shape(), diff);
            let counts = intersection_counts_for_pair(&x, &y);

            for &s in &shapes {
                let got10 = *counts.get(&(Shape::new(1, 0), s)).unwrap_or(&0);
                report.check(got10 == expected_product_10(n, s, diff), || {
                    format!(
                        "A_(1,0)A_{s}: coefficient of A_{diff} is {got10}, expected {}",
                        expected_product_10(n, s, diff)
                    )
                });
                let got01 = *counts.get(&(Shape::new(0, 1), s)).unwrap_or(&0);
                report.check(got01 == expected_product_01(n, s, diff), || {
                    format!(
                        "A_(0,1)A_{s}: coefficient of A_{diff} is {got01}, expected {}",
                        expected_product_01(n, s, diff)
                    )
                });
            }

            match &reference {
                None => {
                    for (&(s1, s2), &c) in &counts {
                        table.counts.insert((s1, s2, diff), c);
                    }
                    reference = Some(counts);
                }
                Some(reference) => {
                    report.check(&counts == reference, || {
                        format!(
                            "intersection numbers for difference shape {diff} depend on the representative pair ({x}, {y})"
                        )
                    });
                }
            }
        }
    }
    Ok(BoseMesnerReport { n, table, report })
}
