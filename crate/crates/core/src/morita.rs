//! Morita's pairing δ_f, the composition law
//! λ_f(φψ) = λ_f(φ) + λ_f(ψ) + 2δ_f(φ,ψ), and the telescoping λ accumulator.
//!
//! δ_f(φ,ψ) pairs the pure-y coefficients of τ(φ̃) with the pure-x
//! coefficients of τ(ψ̃). It is not symmetric.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{BasisTriple, Genus, TriVector};
use crate::error::{Error, Result};
use crate::symplectic::{induced_map, is_symplectic, preserves_splitting, IntMatrix};
use crate::words::{tau_of_letters, GeneratorTable, Letter, Word};

/// The Lagrangian splitting H = H⁺ ⊕ H⁻ with H⁺ = span(x_i) and
/// H⁻ = span(y_i).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Splitting {
    genus: Genus,
}

impl Splitting {
    pub fn standard(genus: Genus) -> Self {
        Splitting { genus }
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    /// Whether basis index `index` lies in H⁺.
    pub fn is_plus(&self, index: usize) -> bool {
        index < self.genus.half()
    }
}

/// A triple of 0-based positions inside one Lagrangian half, i < j < k < g.
pub type HalfTriple = (usize, usize, usize);

pub type PureCoeffs = BTreeMap<HalfTriple, i64>;

/// Coefficients on y_i∧y_j∧y_k; everything else is dropped.
pub fn extract_y_coeffs(v: &TriVector) -> PureCoeffs {
    let g = v.genus().half();
    v.terms()
        .filter_map(|(t, c)| {
            let [i, j, k] = t.indices();
            (i >= g).then(|| ((i - g, j - g, k - g), c))
        })
        .collect()
}

/// Coefficients on x_i∧x_j∧x_k; everything else is dropped.
pub fn extract_x_coeffs(v: &TriVector) -> PureCoeffs {
    let g = v.genus().half();
    v.terms()
        .filter_map(|(t, c)| {
            let [i, j, k] = t.indices();
            (k < g).then_some(((i, j, k), c))
        })
        .collect()
}

/// The a_ijk (pure-y part of τ(φ̃)) and b_ijk (pure-x part of τ(ψ̃)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaInputs {
    pub a: PureCoeffs,
    pub b: PureCoeffs,
}

impl DeltaInputs {
    pub fn new(tau_phi: &TriVector, tau_psi: &TriVector, s: &Splitting) -> Result<Self> {
        check_genus(tau_phi, tau_psi, s)?;
        Ok(DeltaInputs {
            a: extract_y_coeffs(tau_phi),
            b: extract_x_coeffs(tau_psi),
        })
    }

    /// Σ a_ijk b_ijk.
    pub fn pairing(&self) -> Result<i64> {
        let mut acc: i128 = 0;
        for (key, a) in &self.a {
            if let Some(b) = self.b.get(key) {
                acc += *a as i128 * *b as i128;
            }
        }
        i64::try_from(acc).map_err(|_| Error::Overflow("delta pairing"))
    }
}

fn check_genus(u: &TriVector, v: &TriVector, s: &Splitting) -> Result<()> {
    s.genus().ensure_same(u.genus())?;
    s.genus().ensure_same(v.genus())
}

/// δ_f(φ, ψ) from lifted Johnson images.
pub fn delta_f(tau_phi: &TriVector, tau_psi: &TriVector, s: &Splitting) -> Result<i64> {
    check_genus(tau_phi, tau_psi, s)?;
    let g = s.genus().half();
    let mut acc: i128 = 0;
    for (t, a) in tau_phi.terms() {
        let [i, j, k] = t.indices();
        if i < g {
            continue;
        }
        let b = tau_psi.coeff(BasisTriple::new(i - g, j - g, k - g)?);
        acc += a as i128 * b as i128;
    }
    i64::try_from(acc).map_err(|_| Error::Overflow("delta pairing"))
}

/// λ_f(φψ) from the data of φ and ψ.
pub fn compose_lambda(
    lam_phi: i64,
    lam_psi: i64,
    tau_phi: &TriVector,
    tau_psi: &TriVector,
    s: &Splitting,
) -> Result<i64> {
    let delta = delta_f(tau_phi, tau_psi, s)?;
    combine(lam_phi, lam_psi, delta)
}

fn combine(lam_phi: i64, lam_psi: i64, delta: i64) -> Result<i64> {
    delta
        .checked_mul(2)
        .and_then(|d| d.checked_add(lam_phi))
        .and_then(|v| v.checked_add(lam_psi))
        .ok_or(Error::Overflow("lambda composition"))
}

/// λ of a single letter. For an inverse, the composition law applied to
/// s·s⁻¹ = id forces λ(s⁻¹) = -λ(s) - 2δ_f(-τ(s̃), τ(s̃)).
pub fn letter_lambda(t: &GeneratorTable, letter: Letter, s: &Splitting) -> Result<i64> {
    let gen = t.generator(letter)?;
    if !letter.inverse {
        return Ok(gen.lambda);
    }
    let self_pairing = delta_f(&gen.tau, &gen.tau, s)?;
    // -δ(-τ, τ) = δ(τ, τ)
    self_pairing
        .checked_mul(2)
        .and_then(|d| d.checked_sub(gen.lambda))
        .ok_or(Error::Overflow("inverse lambda"))
}

fn check_table(t: &GeneratorTable, s: &Splitting) -> Result<()> {
    t.genus().require_torelli()?;
    t.genus().ensure_same(s.genus())
}

/// Reference evaluation of
/// λ_f(s_1⋯s_n) = Σ λ(s_i) + 2 Σ δ_f(s_i, s_{i+1}⋯s_n),
/// recomputing every suffix image from scratch. Quadratic in the length.
pub fn accumulate_naive(w: &Word, t: &GeneratorTable, s: &Splitting) -> Result<i64> {
    check_table(t, s)?;
    let letters = w.letters();
    let mut total: i64 = 0;
    for (i, &l) in letters.iter().enumerate() {
        let lam = letter_lambda(t, l, s)?;
        let suffix = tau_of_letters(&letters[i + 1..], t)?;
        let delta = delta_f(&t.letter_tau(l)?, &suffix, s)?;
        total = total
            .checked_add(lam)
            .and_then(|v| delta.checked_mul(2).and_then(|d| v.checked_add(d)))
            .ok_or(Error::Overflow("lambda accumulation"))?;
    }
    Ok(total)
}

/// One term of the telescoped sum: λ(s_i) and δ_f(s_i, s_{i+1}⋯s_n).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TelescopeStep {
    pub lambda: i64,
    pub delta: i64,
}

struct CompiledLetter {
    lambda: i64,
    /// pure-y coefficients, by slot
    pairs_with: Vec<(usize, i64)>,
    /// pure-x coefficients on slotted triples
    contributes: Vec<(usize, i64)>,
}

/// Letter data projected onto the pure triples that can ever pair: a slot
/// for every half-triple on which some generator has a y-coefficient.
struct CompiledAlphabet {
    slots: usize,
    letters: Vec<CompiledLetter>,
}

impl CompiledAlphabet {
    fn new(t: &GeneratorTable, s: &Splitting) -> Result<Self> {
        let mut slot_of: HashMap<HalfTriple, usize> = HashMap::new();
        let ys: Vec<PureCoeffs> = t
            .generators()
            .iter()
            .map(|g| extract_y_coeffs(&g.tau))
            .collect();
        for y in &ys {
            for key in y.keys() {
                let next = slot_of.len();
                slot_of.entry(*key).or_insert(next);
            }
        }
        let mut letters = Vec::with_capacity(2 * t.len());
        for (idx, (gen, y)) in t.generators().iter().zip(&ys).enumerate() {
            let x = extract_x_coeffs(&gen.tau);
            for inverse in [false, true] {
                let sign = if inverse { -1 } else { 1 };
                let signed = |c: i64| c.checked_mul(sign).ok_or(Error::Overflow("inverse image"));
                let letter = Letter {
                    generator: idx,
                    inverse,
                };
                letters.push(CompiledLetter {
                    lambda: letter_lambda(t, letter, s)?,
                    pairs_with: y
                        .iter()
                        .map(|(k, c)| Ok((slot_of[k], signed(*c)?)))
                        .collect::<Result<_>>()?,
                    contributes: x
                        .iter()
                        .filter_map(|(k, c)| slot_of.get(k).map(|&slot| Ok((slot, signed(*c)?))))
                        .collect::<Result<_>>()?,
                });
            }
        }
        Ok(CompiledAlphabet {
            slots: slot_of.len(),
            letters,
        })
    }

    fn get(&self, l: Letter) -> Result<&CompiledLetter> {
        self.letters
            .get(2 * l.generator + l.inverse as usize)
            .ok_or_else(|| Error::UnknownLetter(format!("#{}", l.generator)))
    }
}

/// Right-to-left pass keeping the running pure-x image of the suffix.
/// `visit` receives steps in reverse order with their letter position.
fn scan<F>(w: &Word, t: &GeneratorTable, s: &Splitting, mut visit: F) -> Result<()>
where
    F: FnMut(usize, TelescopeStep) -> Result<()>,
{
    check_table(t, s)?;
    let alphabet = CompiledAlphabet::new(t, s)?;
    let mut suffix = vec![0i64; alphabet.slots];
    for (pos, &l) in w.letters().iter().enumerate().rev() {
        let letter = alphabet.get(l)?;
        let mut delta: i64 = 0;
        for &(slot, a) in &letter.pairs_with {
            delta = a
                .checked_mul(suffix[slot])
                .and_then(|p| delta.checked_add(p))
                .ok_or(Error::Overflow("delta pairing"))?;
        }
        visit(
            pos,
            TelescopeStep {
                lambda: letter.lambda,
                delta,
            },
        )?;
        for &(slot, b) in &letter.contributes {
            suffix[slot] = suffix[slot]
                .checked_add(b)
                .ok_or(Error::Overflow("suffix image"))?;
        }
    }
    Ok(())
}

/// The telescoped terms in word order.
pub fn telescope(w: &Word, t: &GeneratorTable, s: &Splitting) -> Result<Vec<TelescopeStep>> {
    let mut steps = vec![
        TelescopeStep {
            lambda: 0,
            delta: 0
        };
        w.len()
    ];
    scan(w, t, s, |pos, step| {
        steps[pos] = step;
        Ok(())
    })?;
    Ok(steps)
}

/// Same value as [`accumulate_naive`] in one linear pass: each step applies
/// the composition law to (s_i, suffix).
pub fn accumulate_fast(w: &Word, t: &GeneratorTable, s: &Splitting) -> Result<i64> {
    let mut running: i64 = 0;
    scan(w, t, s, |_, step| {
        running = combine(step.lambda, running, step.delta)?;
        Ok(())
    })?;
    Ok(running)
}

/// Whether δ_f is unchanged when both images are pushed through ∧³M.
/// M must be symplectic and preserve the splitting.
pub fn splitting_invariance_check(
    tau_phi: &TriVector,
    tau_psi: &TriVector,
    m: &IntMatrix,
    s: &Splitting,
) -> Result<bool> {
    check_genus(tau_phi, tau_psi, s)?;
    if !is_symplectic(m, s.genus()) {
        return Err(Error::NotAdmissible("not symplectic"));
    }
    if !preserves_splitting(m, s) {
        return Err(Error::NotAdmissible("does not preserve the splitting"));
    }
    let before = delta_f(tau_phi, tau_psi, s)?;
    let after = delta_f(&induced_map(m, tau_phi)?, &induced_map(m, tau_psi)?, s)?;
    Ok(before == after)
}
