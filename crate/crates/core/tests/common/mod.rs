//! Brute-force oracles and random generators shared by the integration
//! tests. Nothing here calls the determinant or pairing code under test.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use casson::{Genus, HomologyVector, IntMatrix, TriVector};
use rand::Rng;

pub type DenseTri = BTreeMap<(usize, usize, usize), i64>;

/// Σ_{p,q,r} a_p b_q c_r e_p∧e_q∧e_r, each term moved onto its sorted
/// triple with the parity of its inversion count.
pub fn wedge_oracle(a: &[i64], b: &[i64], c: &[i64]) -> DenseTri {
    let n = a.len();
    let mut out = DenseTri::new();
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                if p == q || q == r || p == r {
                    continue;
                }
                let coeff = a[p] * b[q] * c[r];
                if coeff == 0 {
                    continue;
                }
                let idx = [p, q, r];
                let inversions = (0..3)
                    .flat_map(|x| (x + 1..3).map(move |y| (x, y)))
                    .filter(|&(x, y)| idx[x] > idx[y])
                    .count();
                let mut sorted = idx;
                sorted.sort_unstable();
                let signed = if inversions % 2 == 0 { coeff } else { -coeff };
                *out.entry((sorted[0], sorted[1], sorted[2])).or_insert(0) += signed;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn dense(v: &TriVector) -> DenseTri {
    v.to_records()
        .into_iter()
        .map(|[i, j, k, c]| ((i as usize - 1, j as usize - 1, k as usize - 1), c))
        .collect()
}

pub fn dense_add(a: &DenseTri, b: &DenseTri, scale_b: i64) -> DenseTri {
    let mut out = a.clone();
    for (k, v) in b {
        *out.entry(*k).or_insert(0) += scale_b * v;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Σ over every i<j<k<g of coeff(y_i y_j y_k in u) · coeff(x_i x_j x_k in v).
pub fn delta_oracle(u: &TriVector, v: &TriVector) -> i64 {
    let g = u.genus().half();
    let (du, dv) = (dense(u), dense(v));
    let mut acc = 0;
    for i in 0..g {
        for j in i + 1..g {
            for k in j + 1..g {
                let a = du.get(&(g + i, g + j, g + k)).copied().unwrap_or(0);
                let b = dv.get(&(i, j, k)).copied().unwrap_or(0);
                acc += a * b;
            }
        }
    }
    acc
}

pub fn column(m: &IntMatrix, j: usize) -> Vec<i64> {
    (0..m.size()).map(|i| m.get(i, j)).collect()
}

/// ∧³M applied term by term through the expansion oracle.
pub fn induced_oracle(m: &IntMatrix, v: &TriVector) -> DenseTri {
    let mut out = DenseTri::new();
    for ((i, j, k), c) in dense(v) {
        let image = wedge_oracle(&column(m, i), &column(m, j), &column(m, k));
        out = dense_add(&out, &image, c);
    }
    out
}

pub fn random_vector<R: Rng>(rng: &mut R, genus: Genus, range: i64) -> HomologyVector {
    let coeffs = (0..genus.rank())
        .map(|_| {
            // mostly sparse
            if rng.random_bool(0.5) {
                0
            } else {
                rng.random_range(-range..=range)
            }
        })
        .collect();
    HomologyVector::new(genus, coeffs).unwrap()
}

pub fn random_trivector<R: Rng>(
    rng: &mut R,
    genus: Genus,
    max_terms: usize,
    range: i64,
) -> TriVector {
    let n = genus.rank() as i64;
    let terms = rng.random_range(0..=max_terms);
    let mut records = Vec::with_capacity(terms);
    for _ in 0..terms {
        let i = rng.random_range(1..=n);
        let mut j = rng.random_range(1..=n);
        while j == i {
            j = rng.random_range(1..=n);
        }
        let mut k = rng.random_range(1..=n);
        while k == i || k == j {
            k = rng.random_range(1..=n);
        }
        records.push([i, j, k, rng.random_range(-range..=range)]);
    }
    TriVector::from_records(genus, &records).unwrap()
}

/// Tri-vector with extra weight on pure x and pure y triples, so δ_f is
/// usually nonzero.
pub fn random_pure_heavy<R: Rng>(rng: &mut R, genus: Genus, range: i64) -> TriVector {
    let g = genus.half() as i64;
    let mut v = random_trivector(rng, genus, 4, range);
    for offset in [0, g] {
        for _ in 0..rng.random_range(0..=3) {
            let mut idx: Vec<i64> = (1..=g).collect();
            for s in 0..3 {
                let pick = rng.random_range(s..idx.len());
                idx.swap(s, pick);
            }
            let rec = [
                idx[0] + offset,
                idx[1] + offset,
                idx[2] + offset,
                rng.random_range(-range..=range),
            ];
            v = v
                .add(&TriVector::from_records(genus, &[rec]).unwrap())
                .unwrap();
        }
    }
    v
}

/// Random unimodular g×g matrix as a product of elementary moves.
pub fn random_unimodular<R: Rng>(rng: &mut R, g: usize, moves: usize) -> IntMatrix {
    let mut a = IntMatrix::identity(g);
    for _ in 0..moves {
        match rng.random_range(0..3) {
            0 => {
                // row_i += k·row_j
                let i = rng.random_range(0..g);
                let mut j = rng.random_range(0..g);
                while j == i {
                    j = rng.random_range(0..g);
                }
                let k = rng.random_range(-2..=2);
                for c in 0..g {
                    let v = a.get(i, c) + k * a.get(j, c);
                    a.set(i, c, v);
                }
            }
            1 => {
                let i = rng.random_range(0..g);
                let j = rng.random_range(0..g);
                for c in 0..g {
                    let (x, y) = (a.get(i, c), a.get(j, c));
                    a.set(i, c, y);
                    a.set(j, c, x);
                }
            }
            _ => {
                let i = rng.random_range(0..g);
                for c in 0..g {
                    let v = -a.get(i, c);
                    a.set(i, c, v);
                }
            }
        }
    }
    a
}
