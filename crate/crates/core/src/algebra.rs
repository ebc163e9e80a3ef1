//! Exact sparse arithmetic in H = Z^{2g} and its third exterior power.
//!
//! Basis symbols are ordered x_1 < ... < x_g < y_1 < ... < y_g and addressed
//! by 0-based index: `0..g` are the x's, `g..2g` the y's. A [`TriVector`]
//! stores only nonzero coefficients, keyed by strictly increasing triples.
//! All arithmetic is checked `i64`; overflow is reported as an error rather
//! than wrapping.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported genus. Keeps basis indices well inside the packed
/// triple encoding.
pub const MAX_GENUS: u32 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Genus(u32);

impl Genus {
    /// Any genus the algebra is defined for (g >= 2).
    pub fn new(g: u32) -> Result<Self> {
        if !(2..=MAX_GENUS).contains(&g) {
            return Err(Error::InvalidGenus(g));
        }
        Ok(Genus(g))
    }

    /// A genus admissible for Torelli-level computations (g >= 3).
    pub fn torelli(g: u32) -> Result<Self> {
        Genus::new(g)?.require_torelli()
    }

    pub fn require_torelli(self) -> Result<Self> {
        if self.0 < 3 {
            return Err(Error::GenusTooSmall(self.0));
        }
        Ok(self)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Number of x's (equivalently y's).
    pub fn half(self) -> usize {
        self.0 as usize
    }

    /// Rank of H, i.e. 2g.
    pub fn rank(self) -> usize {
        2 * self.0 as usize
    }

    /// Dimension of the third exterior power, C(2g, 3).
    pub fn wedge3_dim(self) -> u64 {
        let n = self.rank() as u64;
        n * (n - 1) * (n - 2) / 6
    }

    pub fn ensure_same(self, other: Genus) -> Result<()> {
        if self != other {
            return Err(Error::GenusMismatch {
                left: self.0,
                right: other.0,
            });
        }
        Ok(())
    }

    /// Human-readable name of a basis index, e.g. `x1` or `y3`.
    pub fn symbol(self, index: usize) -> String {
        let g = self.half();
        if index < g {
            format!("x{}", index + 1)
        } else {
            format!("y{}", index - g + 1)
        }
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An element of H in the symplectic basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomologyVector {
    genus: Genus,
    coeffs: Vec<i64>,
}

impl HomologyVector {
    pub fn zero(genus: Genus) -> Self {
        HomologyVector {
            genus,
            coeffs: vec![0; genus.rank()],
        }
    }

    pub fn new(genus: Genus, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != genus.rank() {
            return Err(Error::InvalidArgument(format!(
                "homology vector needs {} coefficients, got {}",
                genus.rank(),
                coeffs.len()
            )));
        }
        Ok(HomologyVector { genus, coeffs })
    }

    /// The basis vector with 0-based index `index`.
    pub fn basis(genus: Genus, index: usize) -> Result<Self> {
        if index >= genus.rank() {
            return Err(Error::IndexOutOfRange {
                index: index as i64 + 1,
                genus: genus.get(),
                max: 2 * genus.get(),
            });
        }
        let mut v = Self::zero(genus);
        v.coeffs[index] = 1;
        Ok(v)
    }

    /// x_i, with `i` counted from 1 as in the symbol name.
    pub fn x(genus: Genus, i: usize) -> Result<Self> {
        if i == 0 || i > genus.half() {
            return Err(Error::IndexOutOfRange {
                index: i as i64,
                genus: genus.get(),
                max: genus.get(),
            });
        }
        Self::basis(genus, i - 1)
    }

    /// y_i, with `i` counted from 1 as in the symbol name.
    pub fn y(genus: Genus, i: usize) -> Result<Self> {
        if i == 0 || i > genus.half() {
            return Err(Error::IndexOutOfRange {
                index: i as i64,
                genus: genus.get(),
                max: genus.get(),
            });
        }
        Self::basis(genus, genus.half() + i - 1)
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn add(&self, other: &HomologyVector) -> Result<HomologyVector> {
        self.genus.ensure_same(other.genus)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("vector sum")))
            .collect::<Result<_>>()?;
        Ok(HomologyVector {
            genus: self.genus,
            coeffs,
        })
    }

    pub fn scale(&self, n: i64) -> Result<HomologyVector> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.checked_mul(n).ok_or(Error::Overflow("vector scaling")))
            .collect::<Result<_>>()?;
        Ok(HomologyVector {
            genus: self.genus,
            coeffs,
        })
    }

    fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, _)| i)
    }
}

const INDEX_BITS: u32 = 21;
const INDEX_MASK: u64 = (1 << INDEX_BITS) - 1;

/// A strictly increasing triple of 0-based basis indices, packed into one
/// word. The packed order is the lexicographic order of `(i, j, k)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisTriple(u64);

impl BasisTriple {
    pub fn new(i: usize, j: usize, k: usize) -> Result<Self> {
        if !(i < j && j < k) {
            return Err(Error::MalformedTriVector(format!(
                "triple ({i}, {j}, {k}) is not strictly increasing"
            )));
        }
        if k as u64 > INDEX_MASK {
            return Err(Error::MalformedTriVector(format!("index {k} too large")));
        }
        Ok(Self::pack(i, j, k))
    }

    fn pack(i: usize, j: usize, k: usize) -> Self {
        BasisTriple(((i as u64) << (2 * INDEX_BITS)) | ((j as u64) << INDEX_BITS) | k as u64)
    }

    /// Sorts three distinct indices, returning the canonical triple and the
    /// sign of the sorting permutation. `None` if an index repeats.
    pub fn canonicalize(a: usize, b: usize, c: usize) -> Option<(BasisTriple, i64)> {
        if a == b || b == c || a == c {
            return None;
        }
        let mut idx = [a, b, c];
        let mut sign = 1;
        // three-element bubble sort, counting swaps
        for (p, q) in [(0, 1), (1, 2), (0, 1)] {
            if idx[p] > idx[q] {
                idx.swap(p, q);
                sign = -sign;
            }
        }
        Some((Self::pack(idx[0], idx[1], idx[2]), sign))
    }

    pub fn indices(self) -> [usize; 3] {
        [
            (self.0 >> (2 * INDEX_BITS)) as usize,
            ((self.0 >> INDEX_BITS) & INDEX_MASK) as usize,
            (self.0 & INDEX_MASK) as usize,
        ]
    }

    pub fn max_index(self) -> usize {
        (self.0 & INDEX_MASK) as usize
    }
}

impl fmt::Debug for BasisTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i, j, k] = self.indices();
        write!(f, "({i},{j},{k})")
    }
}

/// Sparse element of the third exterior power of H.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriVector {
    genus: Genus,
    terms: BTreeMap<BasisTriple, i64>,
}

impl TriVector {
    pub fn zero(genus: Genus) -> Self {
        TriVector {
            genus,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a tri-vector from canonical triples, summing repeated keys and
    /// dropping zeros.
    pub fn from_terms<I>(genus: Genus, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BasisTriple, i64)>,
    {
        let mut v = Self::zero(genus);
        for (t, c) in terms {
            if t.max_index() >= genus.rank() {
                return Err(Error::IndexOutOfRange {
                    index: t.max_index() as i64 + 1,
                    genus: genus.get(),
                    max: 2 * genus.get(),
                });
            }
            v.add_term(t, c)?;
        }
        Ok(v)
    }

    /// Unit tri-vector e_i ∧ e_j ∧ e_k on 0-based indices in any order.
    pub fn basis(genus: Genus, i: usize, j: usize, k: usize) -> Result<Self> {
        let (t, sign) = BasisTriple::canonicalize(i, j, k)
            .ok_or(Error::RepeatedIndex(i as i64, j as i64, k as i64))?;
        Self::from_terms(genus, [(t, sign)])
    }

    /// Parses the `[i, j, k, coeff]` record form with 1-based indices.
    /// Indices may come in any order; the coefficient picks up the sign of
    /// the sorting permutation.
    pub fn from_records(genus: Genus, records: &[[i64; 4]]) -> Result<Self> {
        let rank = genus.rank() as i64;
        let mut v = Self::zero(genus);
        for &[i, j, k, c] in records {
            for idx in [i, j, k] {
                if idx < 1 || idx > rank {
                    return Err(Error::IndexOutOfRange {
                        index: idx,
                        genus: genus.get(),
                        max: 2 * genus.get(),
                    });
                }
            }
            let (t, sign) =
                BasisTriple::canonicalize((i - 1) as usize, (j - 1) as usize, (k - 1) as usize)
                    .ok_or(Error::RepeatedIndex(i, j, k))?;
            let c = c.checked_mul(sign).ok_or(Error::Overflow("record sign"))?;
            v.add_term(t, c)?;
        }
        Ok(v)
    }

    /// Canonical record form: sorted by triple, 1-based indices.
    pub fn to_records(&self) -> Vec<[i64; 4]> {
        self.terms
            .iter()
            .map(|(t, c)| {
                let [i, j, k] = t.indices();
                [i as i64 + 1, j as i64 + 1, k as i64 + 1, *c]
            })
            .collect()
    }

    /// Compact canonical text, e.g. `[[1,2,3,1],[4,5,6,1]]`.
    pub fn to_text(&self) -> String {
        let body: Vec<String> = self
            .to_records()
            .iter()
            .map(|[i, j, k, c]| format!("[{i},{j},{k},{c}]"))
            .collect();
        format!("[{}]", body.join(","))
    }

    pub fn from_text(genus: Genus, text: &str) -> Result<Self> {
        let records: Vec<[i64; 4]> =
            serde_json::from_str(text).map_err(|e| Error::MalformedTriVector(e.to_string()))?;
        Self::from_records(genus, &records)
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: BasisTriple) -> i64 {
        self.terms.get(&t).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (BasisTriple, i64)> + '_ {
        self.terms.iter().map(|(t, c)| (*t, *c))
    }

    fn add_term(&mut self, t: BasisTriple, c: i64) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        let entry = self.terms.entry(t).or_insert(0);
        *entry = entry
            .checked_add(c)
            .ok_or(Error::Overflow("tri-vector sum"))?;
        if *entry == 0 {
            self.terms.remove(&t);
        }
        Ok(())
    }

    /// Adds `n * other` into `self` in place.
    pub fn add_scaled_assign(&mut self, n: i64, other: &TriVector) -> Result<()> {
        self.genus.ensure_same(other.genus)?;
        if n == 0 {
            return Ok(());
        }
        for (t, c) in other.terms() {
            let c = c
                .checked_mul(n)
                .ok_or(Error::Overflow("tri-vector scaling"))?;
            self.add_term(t, c)?;
        }
        Ok(())
    }

    pub fn add(&self, other: &TriVector) -> Result<TriVector> {
        let mut out = self.clone();
        out.add_scaled_assign(1, other)?;
        Ok(out)
    }

    pub fn sub(&self, other: &TriVector) -> Result<TriVector> {
        let mut out = self.clone();
        out.add_scaled_assign(-1, other)?;
        Ok(out)
    }

    pub fn scale(&self, n: i64) -> Result<TriVector> {
        if n == 0 {
            return Ok(Self::zero(self.genus));
        }
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| {
                c.checked_mul(n)
                    .map(|c| (*t, c))
                    .ok_or(Error::Overflow("tri-vector scaling"))
            })
            .collect::<Result<_>>()?;
        Ok(TriVector {
            genus: self.genus,
            terms,
        })
    }

    pub fn negate(&self) -> Result<TriVector> {
        self.scale(-1)
    }

    /// Sup-norm of the coefficients; 0 for the zero vector.
    pub fn ell_norm(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// Checks the sparse-representation invariants: no stored zeros and all
    /// keys canonical and in range.
    pub fn validate(&self) -> Result<()> {
        for (t, c) in &self.terms {
            let [i, j, k] = t.indices();
            if !(i < j && j < k) {
                return Err(Error::MalformedTriVector(format!(
                    "non-canonical key {t:?}"
                )));
            }
            if k >= self.genus.rank() {
                return Err(Error::MalformedTriVector(format!(
                    "key {t:?} out of range for genus {}",
                    self.genus
                )));
            }
            if *c == 0 {
                return Err(Error::MalformedTriVector(format!("stored zero at {t:?}")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for TriVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (t, c)) in self.terms.iter().enumerate() {
            let [i, j, k] = t.indices();
            let sym = format!(
                "{}∧{}∧{}",
                self.genus.symbol(i),
                self.genus.symbol(j),
                self.genus.symbol(k)
            );
            let sign = if *c < 0 { "-" } else { "+" };
            if n == 0 {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if c.unsigned_abs() != 1 {
                write!(f, "{}", c.unsigned_abs())?;
            }
            write!(f, "{sym}")?;
        }
        Ok(())
    }
}

fn det3(m: [[i128; 3]; 3]) -> i128 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// a ∧ b ∧ c. The coefficient on e_i ∧ e_j ∧ e_k (i < j < k) is the 3x3
/// determinant with rows a, b, c and columns i, j, k.
pub fn wedge3(a: &HomologyVector, b: &HomologyVector, c: &HomologyVector) -> Result<TriVector> {
    a.genus.ensure_same(b.genus)?;
    a.genus.ensure_same(c.genus)?;
    let mut support: Vec<usize> = a.support().chain(b.support()).chain(c.support()).collect();
    support.sort_unstable();
    support.dedup();

    let rows = [&a.coeffs, &b.coeffs, &c.coeffs];
    let mut terms = BTreeMap::new();
    for (p, &i) in support.iter().enumerate() {
        for (q, &j) in support.iter().enumerate().skip(p + 1) {
            for &k in &support[q + 1..] {
                let m = rows.map(|r| [r[i] as i128, r[j] as i128, r[k] as i128]);
                let d = det3(m);
                if d != 0 {
                    let d = i64::try_from(d).map_err(|_| Error::Overflow("wedge product"))?;
                    terms.insert(BasisTriple::pack(i, j, k), d);
                }
            }
        }
    }
    Ok(TriVector {
        genus: a.genus,
        terms,
    })
}
