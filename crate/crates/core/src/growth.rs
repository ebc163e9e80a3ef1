//! Quadratic growth of λ_f in the word length.
//!
//! Upper bound: with C1 = max ℓ(τ(s)), C2 = C(2g,3)·C1², C3 = max |λ(s)|
//! over S^{±1}, every word of length n satisfies
//!
//! ```text
//! |λ| ≤ Σ|λ(s_i)| + 2Σ|δ_f(s_i, s_{i+1}⋯s_n)| ≤ C3·n + 2Σ C2·(n-i) ≤ (C3 + C2)·n²
//! ```
//!
//! Lower bound: λ(νⁿ) = n·λ(ν) + n(n-1).

use std::io;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Genus;
use crate::error::{Error, Result};
use crate::morita::{accumulate_fast, letter_lambda, telescope, Splitting};
use crate::words::{GeneratorTable, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundConstants {
    pub c1: u64,
    pub c2: u64,
    pub c3: u64,
    pub c: u64,
}

impl BoundConstants {
    /// C3·n + 2·Σ_{i=1}^{n-1} C2·(n-i) = C3·n + C2·n(n-1).
    pub fn per_step_bound(&self, n: u64) -> Result<u64> {
        let pairs = n
            .checked_mul(n.saturating_sub(1))
            .ok_or(Error::Overflow("bound"))?;
        self.c3
            .checked_mul(n)
            .and_then(|a| self.c2.checked_mul(pairs).and_then(|b| a.checked_add(b)))
            .ok_or(Error::Overflow("bound"))
    }

    /// C·n².
    pub fn quadratic_bound(&self, n: u64) -> Result<u64> {
        n.checked_mul(n)
            .and_then(|n2| self.c.checked_mul(n2))
            .ok_or(Error::Overflow("bound"))
    }
}

pub fn compute_constants(t: &GeneratorTable) -> Result<BoundConstants> {
    if t.is_empty() {
        return Err(Error::Table("table has no generators".into()));
    }
    let s = Splitting::standard(t.genus());
    // ℓ(-v) = ℓ(v), so generators cover S^{±1}
    let c1 = t
        .generators()
        .iter()
        .map(|g| g.tau.ell_norm())
        .max()
        .unwrap_or(0);
    let c2 = c1
        .checked_mul(c1)
        .and_then(|sq| sq.checked_mul(t.genus().wedge3_dim()))
        .ok_or(Error::Overflow("C2"))?;
    let mut c3 = 0u64;
    for l in t.alphabet() {
        c3 = c3.max(letter_lambda(t, l, &s)?.unsigned_abs());
    }
    let c = c3.checked_add(c2).ok_or(Error::Overflow("C"))?;
    Ok(BoundConstants { c1, c2, c3, c })
}

/// Reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ratio {
    pub num: i64,
    pub den: u64,
}

impl Ratio {
    /// num / den, reduced; 0/0 is reported as 0/1.
    pub fn new(num: i64, den: u64) -> Self {
        if den == 0 || num == 0 {
            return Ratio { num: 0, den: 1 };
        }
        let g = (num.unsigned_abs() as u128).gcd(&(den as u128)) as u64;
        let num_abs = num.unsigned_abs() / g;
        let num = if num < 0 {
            -(num_abs as i128) as i64
        } else {
            num_abs as i64
        };
        Ratio { num, den: den / g }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrowthRecord {
    pub n: usize,
    pub lambda: i64,
    /// Σ|λ(s_i)| + 2Σ|δ_f(s_i, suffix)| for this word.
    pub term_sum: u64,
    pub per_step_bound: u64,
    pub quadratic_bound: u64,
    /// λ / n².
    pub ratio: Ratio,
}

fn fail(msg: String) -> Error {
    Error::Certification(msg)
}

/// Evaluates λ on `w` and checks every link of the upper-bound chain,
/// including each telescoping term against its own bound.
pub fn certify_bound(w: &Word, t: &GeneratorTable, s: &Splitting) -> Result<GrowthRecord> {
    let consts = compute_constants(t)?;
    certify_with(&consts, w, t, s)
}

fn certify_with(
    consts: &BoundConstants,
    w: &Word,
    t: &GeneratorTable,
    s: &Splitting,
) -> Result<GrowthRecord> {
    let lambda = accumulate_fast(w, t, s)?;
    let steps = telescope(w, t, s)?;
    let n = w.len();

    let mut term_sum: u64 = 0;
    let mut recomputed: i64 = 0;
    for (i, step) in steps.iter().enumerate() {
        let lam = step.lambda.unsigned_abs();
        if lam > consts.c3 {
            return Err(fail(format!(
                "|λ(s_{})| = {lam} exceeds C3 = {}",
                i + 1,
                consts.c3
            )));
        }
        let suffix_len = (n - 1 - i) as u64;
        let delta_bound = consts
            .c2
            .checked_mul(suffix_len)
            .ok_or(Error::Overflow("bound"))?;
        let delta = step.delta.unsigned_abs();
        if delta > delta_bound {
            return Err(fail(format!(
                "|δ_f(s_{}, suffix)| = {delta} exceeds C2·{suffix_len} = {delta_bound}",
                i + 1
            )));
        }
        term_sum = delta
            .checked_mul(2)
            .and_then(|d| d.checked_add(lam))
            .and_then(|d| d.checked_add(term_sum))
            .ok_or(Error::Overflow("term sum"))?;
        recomputed = step
            .delta
            .checked_mul(2)
            .and_then(|d| d.checked_add(step.lambda))
            .and_then(|d| d.checked_add(recomputed))
            .ok_or(Error::Overflow("term sum"))?;
    }
    if recomputed != lambda {
        return Err(fail(format!(
            "telescoped terms sum to {recomputed}, accumulator gave {lambda}"
        )));
    }

    let per_step_bound = consts.per_step_bound(n as u64)?;
    let quadratic_bound = consts.quadratic_bound(n as u64)?;
    if lambda.unsigned_abs() > term_sum {
        return Err(fail(format!(
            "|λ| = {} exceeds the term sum {term_sum}",
            lambda.unsigned_abs()
        )));
    }
    if term_sum > per_step_bound {
        return Err(fail(format!(
            "term sum {term_sum} exceeds C3·n + C2·n(n-1) = {per_step_bound}"
        )));
    }
    if per_step_bound > quadratic_bound {
        return Err(fail(format!(
            "{per_step_bound} exceeds C·n² = {quadratic_bound}"
        )));
    }

    let n2 = (n as u64)
        .checked_mul(n as u64)
        .ok_or(Error::Overflow("n²"))?;
    Ok(GrowthRecord {
        n,
        lambda,
        term_sum,
        per_step_bound,
        quadratic_bound,
        ratio: Ratio::new(lambda, n2),
    })
}

/// Certified records for ν, ν², …, ν^{n_max} with λ(ν) = `lambda_nu`.
pub fn nu_family(n_max: usize, lambda_nu: i64, genus: Genus) -> Result<Vec<GrowthRecord>> {
    genus.require_torelli()?;
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let t = GeneratorTable::nu(genus, lambda_nu)?;
    let s = Splitting::standard(genus);
    let consts = compute_constants(&t)?;
    let nu = t.letter("nu")?;
    (1..=n_max)
        .into_par_iter()
        .map(|n| certify_with(&consts, &Word::power(nu, n as i64), &t, &s))
        .collect()
}

/// Uniform i.i.d. word over S^{±1}.
pub fn random_word<R: Rng>(t: &GeneratorTable, len: usize, rng: &mut R) -> Word {
    let alphabet = t.alphabet();
    Word::new(
        (0..len)
            .map(|_| alphabet[rng.random_range(0..alphabet.len())])
            .collect(),
    )
}

/// The generator for one (length, trial) cell. Each cell gets its own
/// ChaCha stream, so output does not depend on scheduling.
pub fn trial_rng(seed: u64, length_index: usize, trial: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((length_index as u64) << 32) | trial as u64);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleRecord {
    pub length: usize,
    pub trial: u32,
    pub record: GrowthRecord,
}

/// Certified records for `trials` random words at each requested length,
/// in (length, trial) order.
pub fn sample_growth(
    t: &GeneratorTable,
    s: &Splitting,
    lengths: &[usize],
    trials: u32,
    seed: u64,
) -> Result<Vec<SampleRecord>> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let consts = compute_constants(t)?;
    let cells: Vec<(usize, usize, u32)> = lengths
        .iter()
        .enumerate()
        .flat_map(|(li, &len)| (0..trials).map(move |trial| (li, len, trial)))
        .collect();
    cells
        .into_par_iter()
        .map(|(li, length, trial)| {
            let w = random_word(t, length, &mut trial_rng(seed, li, trial));
            let record = certify_with(&consts, &w, t, s)?;
            Ok(SampleRecord {
                length,
                trial,
                record,
            })
        })
        .collect()
}

/// One CSV row: `length,trial,lambda,per_step_bound,quadratic_bound,ratio_num,ratio_den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CsvRow {
    pub length: usize,
    pub trial: u32,
    pub lambda: i64,
    pub per_step_bound: u64,
    pub quadratic_bound: u64,
    pub ratio_num: i64,
    pub ratio_den: u64,
}

impl CsvRow {
    pub fn new(trial: u32, r: &GrowthRecord) -> Self {
        CsvRow {
            length: r.n,
            trial,
            lambda: r.lambda,
            per_step_bound: r.per_step_bound,
            quadratic_bound: r.quadratic_bound,
            ratio_num: r.ratio.num,
            ratio_den: r.ratio.den,
        }
    }
}

impl From<&SampleRecord> for CsvRow {
    fn from(s: &SampleRecord) -> Self {
        CsvRow::new(s.trial, &s.record)
    }
}

pub fn write_csv<W, I>(rows: I, out: W) -> Result<()>
where
    W: io::Write,
    I: IntoIterator<Item = CsvRow>,
{
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| Error::Io(e.to_string()))?;
    }
    writer.flush().map_err(|e| Error::Io(e.to_string()))
}
