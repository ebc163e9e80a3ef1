//! Integer matrices acting on H, the symplectic and splitting checks for
//! admissible basis changes, and the induced action on tri-vectors.

use crate::algebra::{wedge3, Genus, HomologyVector, TriVector};
use crate::error::{Error, Result};
use crate::morita::Splitting;

/// Square integer matrix, row-major. Column `j` is the image of basis
/// vector `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::InvalidArgument(format!(
                "matrix row of length {} in a {n}-row matrix",
                bad.len()
            )));
        }
        Ok(IntMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.data[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: i64) {
        self.data[row * self.n + col] = value;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc: i128 = 0;
                for k in 0..n {
                    acc += self.get(i, k) as i128 * other.get(k, j) as i128;
                }
                out.set(
                    i,
                    j,
                    i64::try_from(acc).map_err(|_| Error::Overflow("matrix product"))?,
                );
            }
        }
        Ok(out)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<i128> {
        let n = self.n;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<i128> = self.data.iter().map(|&v| v as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k * n + k] == 0 {
                match (k + 1..n).find(|&r| a[r * n + k] != 0) {
                    Some(r) => {
                        for c in 0..n {
                            a.swap(k * n + c, r * n + c);
                        }
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            let pivot = a[k * n + k];
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i * n + j]
                        .checked_mul(pivot)
                        .and_then(|p| {
                            a[i * n + k]
                                .checked_mul(a[k * n + j])
                                .and_then(|q| p.checked_sub(q))
                        })
                        .ok_or(Error::Overflow("determinant"))?;
                    a[i * n + j] = num / prev;
                }
            }
            prev = pivot;
        }
        Ok(sign * a[n * n - 1])
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> IntMatrix {
        let n = self.n;
        let data = (0..n)
            .filter(|&i| i != skip_row)
            .flat_map(|i| (0..n).filter(move |&j| j != skip_col).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect();
        IntMatrix { n: n - 1, data }
    }

    /// Inverse of a matrix with determinant ±1, via the adjugate.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        let det = self.determinant()?;
        if det != 1 && det != -1 {
            return Err(Error::NotUnimodular(det));
        }
        let n = self.n;
        if n == 1 {
            return Ok(IntMatrix {
                n,
                data: vec![det as i64],
            });
        }
        let mut inv = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let cofactor = self.minor(j, i).determinant()?;
                let signed = if (i + j) % 2 == 0 {
                    cofactor
                } else {
                    -cofactor
                };
                let v =
                    i64::try_from(signed * det).map_err(|_| Error::Overflow("matrix inverse"))?;
                inv.set(i, j, v);
            }
        }
        Ok(inv)
    }

    /// diag(A, B) for square blocks.
    pub fn block_diag(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        let n = a.n + b.n;
        let mut m = Self::zeros(n);
        for i in 0..a.n {
            for j in 0..a.n {
                m.set(i, j, a.get(i, j));
            }
        }
        for i in 0..b.n {
            for j in 0..b.n {
                m.set(a.n + i, a.n + j, b.get(i, j));
            }
        }
        m
    }

    /// diag(A, (Aᵀ)⁻¹): the symplectic basis change induced by an integral
    /// change of basis A of the x-half.
    pub fn splitting_preserving(a: &IntMatrix) -> Result<IntMatrix> {
        let dual = a.transpose().inverse_unimodular()?;
        Ok(Self::block_diag(a, &dual))
    }

    pub fn apply(&self, v: &HomologyVector) -> Result<HomologyVector> {
        let genus = v.genus();
        self.check_size(genus)?;
        let coeffs = (0..self.n)
            .map(|i| {
                let acc: i128 = (0..self.n)
                    .map(|j| self.get(i, j) as i128 * v.coeffs()[j] as i128)
                    .sum();
                i64::try_from(acc).map_err(|_| Error::Overflow("matrix action"))
            })
            .collect::<Result<_>>()?;
        HomologyVector::new(genus, coeffs)
    }

    pub fn column(&self, genus: Genus, j: usize) -> Result<HomologyVector> {
        self.check_size(genus)?;
        HomologyVector::new(genus, (0..self.n).map(|i| self.get(i, j)).collect())
    }

    fn check_size(&self, genus: Genus) -> Result<()> {
        if self.n != genus.rank() {
            return Err(Error::DimensionMismatch {
                expected: genus.rank(),
                got: self.n,
            });
        }
        Ok(())
    }
}

/// Gram matrix of the standard form: ⟨x_i, y_i⟩ = 1 = -⟨y_i, x_i⟩.
pub fn standard_form(genus: Genus) -> IntMatrix {
    let g = genus.half();
    let mut j = IntMatrix::zeros(2 * g);
    for i in 0..g {
        j.set(i, g + i, 1);
        j.set(g + i, i, -1);
    }
    j
}

/// ⟨u, v⟩ under the standard symplectic form.
pub fn symplectic_pairing(u: &HomologyVector, v: &HomologyVector) -> Result<i64> {
    u.genus().ensure_same(v.genus())?;
    let g = u.genus().half();
    let (a, b) = (u.coeffs(), v.coeffs());
    let mut acc: i128 = 0;
    for i in 0..g {
        acc += a[i] as i128 * b[g + i] as i128 - a[g + i] as i128 * b[i] as i128;
    }
    i64::try_from(acc).map_err(|_| Error::Overflow("symplectic pairing"))
}

/// Mᵀ J M = J.
pub fn is_symplectic(m: &IntMatrix, genus: Genus) -> bool {
    if m.size() != genus.rank() {
        return false;
    }
    let j = standard_form(genus);
    match m.transpose().mul(&j).and_then(|mj| mj.mul(m)) {
        Ok(p) => p == j,
        Err(_) => false,
    }
}

/// M sends span(x) into span(x) and span(y) into span(y).
pub fn preserves_splitting(m: &IntMatrix, s: &Splitting) -> bool {
    let g = s.genus().half();
    if m.size() != 2 * g {
        return false;
    }
    (0..2 * g).all(|col| {
        let plus = col < g;
        (0..2 * g).all(|row| (row < g) == plus || m.get(row, col) == 0)
    })
}

/// The action of ∧³M: e_i∧e_j∧e_k ↦ Me_i ∧ Me_j ∧ Me_k, extended linearly.
pub fn induced_map(m: &IntMatrix, v: &TriVector) -> Result<TriVector> {
    let genus = v.genus();
    m.check_size(genus)?;
    let det = m.determinant()?;
    if det != 1 && det != -1 {
        return Err(Error::NotUnimodular(det));
    }
    let mut out = TriVector::zero(genus);
    for (t, c) in v.terms() {
        let [i, j, k] = t.indices();
        let image = wedge3(
            &m.column(genus, i)?,
            &m.column(genus, j)?,
            &m.column(genus, k)?,
        )?;
        out.add_scaled_assign(c, &image)?;
    }
    Ok(out)
}
