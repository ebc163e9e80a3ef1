//! Generator tables, words over S^{±1}, and the abelianized Johnson image of
//! a word.
//!
//! A Torelli element is never represented as a mapping class. Each generator
//! carries one fixed lifted Johnson image and its λ-value, and a word is
//! lifted letter by letter.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use serde::de::{Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize};

use crate::algebra::{wedge3, Genus, HomologyVector, TriVector};
use crate::error::{Error, Result};

/// Upper limit on the number of letters a word expression may expand to.
pub const MAX_WORD_LEN: usize = 100_000_000;

/// The bundled ν table at genus 3.
pub const NU_TABLE_JSON: &str = include_str!("../tables/nu.json");

/// A bundled multi-letter table with mixed Johnson images, genus 3.
pub const MIXED_TABLE_JSON: &str = include_str!("../tables/mixed.json");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub tau: TriVector,
    pub lambda: i64,
}

/// The finite generating set S with one lifted τ and one λ per letter.
/// Generators are kept sorted by name so the alphabet order does not depend
/// on how a document was written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorTable {
    genus: Genus,
    generators: Vec<Generator>,
    by_name: HashMap<String, usize>,
}

impl GeneratorTable {
    pub fn new(genus: Genus, mut generators: Vec<Generator>) -> Result<Self> {
        genus
            .require_torelli()
            .map_err(|e| Error::Table(e.to_string()))?;
        if generators.is_empty() {
            return Err(Error::Table("table has no generators".into()));
        }
        generators.sort_by(|a, b| a.name.cmp(&b.name));
        let mut by_name = HashMap::with_capacity(generators.len());
        for (i, gen) in generators.iter().enumerate() {
            validate_name(&gen.name)?;
            if gen.tau.genus() != genus {
                return Err(Error::Table(format!(
                    "generator `{}` has tau of genus {}, table genus is {genus}",
                    gen.name,
                    gen.tau.genus()
                )));
            }
            gen.tau
                .validate()
                .map_err(|e| Error::Table(format!("generator `{}`: {e}", gen.name)))?;
            if by_name.insert(gen.name.clone(), i).is_some() {
                return Err(Error::Table(format!("duplicate letter `{}`", gen.name)));
            }
        }
        Ok(GeneratorTable {
            genus,
            generators,
            by_name,
        })
    }

    /// The single-letter table {ν}: τ(ν̃) = x1∧x2∧x3 + y1∧y2∧y3.
    pub fn nu(genus: Genus, lambda: i64) -> Result<Self> {
        let tau = nu_tau(genus)?;
        Self::new(
            genus,
            vec![Generator {
                name: "nu".into(),
                tau,
                lambda,
            }],
        )
    }

    pub fn from_json(document: &str) -> Result<Self> {
        let raw: RawTable =
            serde_json::from_str(document).map_err(|e| Error::Table(e.to_string()))?;
        let genus = Genus::new(raw.genus).map_err(|e| Error::Table(e.to_string()))?;
        genus
            .require_torelli()
            .map_err(|e| Error::Table(e.to_string()))?;
        let generators = raw
            .generators
            .0
            .into_iter()
            .map(|(name, g)| {
                let tau = TriVector::from_records(genus, &g.tau)
                    .map_err(|e| Error::Table(format!("generator `{name}`: {e}")))?;
                Ok(Generator {
                    name,
                    tau,
                    lambda: g.lambda,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(genus, generators)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Table(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Canonical JSON: generators sorted by name, τ records sorted.
    pub fn to_json(&self) -> String {
        let doc = OutTable {
            genus: self.genus.get(),
            generators: self
                .generators
                .iter()
                .map(|g| {
                    (
                        g.name.as_str(),
                        OutGenerator {
                            tau: g.tau.to_records(),
                            lambda: g.lambda,
                        },
                    )
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("table serialization is infallible")
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator(&self, letter: Letter) -> Result<&Generator> {
        self.generators
            .get(letter.generator)
            .ok_or_else(|| Error::UnknownLetter(format!("#{}", letter.generator)))
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.by_name
            .get(name)
            .map(|&generator| Letter {
                generator,
                inverse: false,
            })
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    /// S^{±1}: every generator followed by its inverse.
    pub fn alphabet(&self) -> Vec<Letter> {
        (0..self.generators.len())
            .flat_map(|generator| [false, true].map(|inverse| Letter { generator, inverse }))
            .collect()
    }

    /// Lifted Johnson image of one letter: τ(s̃) or -τ(s̃).
    pub fn letter_tau(&self, letter: Letter) -> Result<TriVector> {
        let gen = self.generator(letter)?;
        if letter.inverse {
            gen.tau.negate()
        } else {
            Ok(gen.tau.clone())
        }
    }
}

fn validate_name(name: &str) -> Result<()> {
    if name.is_empty() {
        return Err(Error::Table("empty letter name".into()));
    }
    if name.contains(|c: char| c.is_whitespace() || c == '^') {
        return Err(Error::Table(format!(
            "letter name `{name}` may not contain whitespace or `^`"
        )));
    }
    Ok(())
}

/// x1∧x2∧x3 + y1∧y2∧y3.
pub fn nu_tau(genus: Genus) -> Result<TriVector> {
    let g = genus.require_torelli()?.half() as i64;
    TriVector::from_records(genus, &[[1, 2, 3, 1], [g + 1, g + 2, g + 3, 1]])
}

/// Σ c ∧ a_i ∧ b_i: the Johnson image shape of a bounding-pair map.
pub fn bp_tau(c: &HomologyVector, pairs: &[(HomologyVector, HomologyVector)]) -> Result<TriVector> {
    let mut out = TriVector::zero(c.genus());
    for (a, b) in pairs {
        out.add_scaled_assign(1, &wedge3(c, a, b)?)?;
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    genus: u32,
    generators: RawGenerators,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    tau: Vec<[i64; 4]>,
    #[serde(default)]
    lambda: i64,
}

/// Generator map kept as a list so duplicate keys are seen rather than
/// silently overwritten.
struct RawGenerators(Vec<(String, RawGenerator)>);

impl<'de> Deserialize<'de> for RawGenerators {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct GenVisitor;

        impl<'de> Visitor<'de> for GenVisitor {
            type Value = RawGenerators;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from letter names to generators")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
                let mut out: Vec<(String, RawGenerator)> = Vec::new();
                while let Some((name, gen)) = map.next_entry::<String, RawGenerator>()? {
                    if out.iter().any(|(n, _)| *n == name) {
                        return Err(serde::de::Error::custom(format!(
                            "duplicate letter `{name}`"
                        )));
                    }
                    out.push((name, gen));
                }
                Ok(RawGenerators(out))
            }
        }

        deserializer.deserialize_map(GenVisitor)
    }
}

#[derive(Serialize)]
struct OutTable<'a> {
    genus: u32,
    generators: std::collections::BTreeMap<&'a str, OutGenerator>,
}

#[derive(Serialize)]
struct OutGenerator {
    tau: Vec<[i64; 4]>,
    lambda: i64,
}

/// A generator of the table or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    /// `letter^k`; negative `k` repeats the inverse.
    pub fn power(letter: Letter, k: i64) -> Self {
        let l = if k < 0 { letter.inverse() } else { letter };
        Word {
            letters: vec![l; k.unsigned_abs() as usize],
        }
    }

    /// Parses whitespace-separated tokens `name`, `name^k`, `name^-1`.
    pub fn parse(expr: &str, table: &GeneratorTable) -> Result<Self> {
        let mut letters = Vec::new();
        for token in expr.split_whitespace() {
            let (name, exp) = match token.split_once('^') {
                Some((name, exp)) => {
                    let k: i64 = exp
                        .parse()
                        .map_err(|_| Error::WordSyntax(format!("bad exponent in `{token}`")))?;
                    (name, k)
                }
                None => (token, 1),
            };
            if name.is_empty() {
                return Err(Error::WordSyntax(format!(
                    "missing letter name in `{token}`"
                )));
            }
            let letter = table.letter(name)?;
            let count = exp.unsigned_abs() as usize;
            if letters.len().saturating_add(count) > MAX_WORD_LEN {
                return Err(Error::WordSyntax(format!(
                    "word longer than {MAX_WORD_LEN} letters"
                )));
            }
            let l = if exp < 0 { letter.inverse() } else { letter };
            letters.extend(std::iter::repeat_n(l, count));
        }
        Ok(Word { letters })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Cancels adjacent s s⁻¹ pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Run-length expression, e.g. `nu^3 t1^-1`; parses back to the same word.
    pub fn to_expr(&self, table: &GeneratorTable) -> Result<String> {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let run = self.letters[i..].iter().take_while(|&&m| m == l).count();
            let name = &table.generator(l)?.name;
            let k = run as i64 * l.sign();
            parts.push(if k == 1 {
                name.clone()
            } else {
                format!("{name}^{k}")
            });
            i += run;
        }
        Ok(parts.join(" "))
    }
}

/// Letter count of the given word. This is an upper bound for the true word
/// norm, which is not computed here.
pub fn word_norm(w: &Word) -> usize {
    w.len()
}

/// Σ sign_i · τ(s_i). Only the signed multiplicity of each generator
/// matters, so letters are tallied first.
pub fn tau_of_word(w: &Word, t: &GeneratorTable) -> Result<TriVector> {
    tau_of_letters(w.letters(), t)
}

pub(crate) fn tau_of_letters(letters: &[Letter], t: &GeneratorTable) -> Result<TriVector> {
    let mut counts = vec![0i64; t.len()];
    for l in letters {
        let slot = counts
            .get_mut(l.generator)
            .ok_or_else(|| Error::UnknownLetter(format!("#{}", l.generator)))?;
        *slot += l.sign();
    }
    let mut out = TriVector::zero(t.genus());
    for (gen, n) in t.generators().iter().zip(counts) {
        out.add_scaled_assign(n, &gen.tau)?;
    }
    Ok(out)
}
