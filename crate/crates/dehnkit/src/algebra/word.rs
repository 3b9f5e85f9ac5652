use serde::Serialize;
use std::fmt;

/// Where a presentation generator came from.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Provenance {
    /// Dehn-style generator for a diagram region (global face id).
    Region(usize),
    /// Wirtinger generator for an over-arc; fields are (arc id, component).
    Arc(usize, usize),
    Anonymous,
}

/// A named free-group generator. Identity is the name; provenance is metadata.
#[derive(Debug, Clone, Serialize)]
pub struct Generator {
    pub name: String,
    pub provenance: Provenance,
}

impl Generator {
    pub fn new(name: impl Into<String>) -> Self {
        Generator {
            name: name.into(),
            provenance: Provenance::Anonymous,
        }
    }

    pub fn region(name: impl Into<String>, region: usize) -> Self {
        Generator {
            name: name.into(),
            provenance: Provenance::Region(region),
        }
    }

    pub fn arc(name: impl Into<String>, arc: usize, component: usize) -> Self {
        Generator {
            name: name.into(),
            provenance: Provenance::Arc(arc, component),
        }
    }
}

impl PartialEq for Generator {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}
impl Eq for Generator {}
impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Generator {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.name.cmp(&other.name)
    }
}
impl std::hash::Hash for Generator {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.name.hash(state);
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// One letter of a word: a generator with exponent +1 or -1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Letter {
    pub gen: Generator,
    pub exp: i8,
}

impl Letter {
    pub fn inverse(&self) -> Letter {
        Letter {
            gen: self.gen.clone(),
            exp: -self.exp,
        }
    }
}

/// A word in free-group generators, stored exactly as spelled.
///
/// Words are not reduced on construction; call [`FreeWord::reduce`] for the
/// canonical form. Group-ring keys always hold reduced words.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct FreeWord {
    pub letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn gen(g: Generator) -> Self {
        FreeWord {
            letters: vec![Letter { gen: g, exp: 1 }],
        }
    }

    pub fn gen_inv(g: Generator) -> Self {
        FreeWord {
            letters: vec![Letter { gen: g, exp: -1 }],
        }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        FreeWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Formal concatenation, no reduction.
    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        FreeWord { letters }
    }

    /// Formal inverse: reverse order, flip exponents. No reduction.
    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(Letter::inverse).collect(),
        }
    }

    /// Free reduction: cancel adjacent g g^-1 pairs until none remain.
    /// Reduction is confluent, so a single stack pass suffices.
    pub fn reduce(&self) -> FreeWord {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            match stack.last() {
                Some(top) if top.gen == l.gen && top.exp == -l.exp => {
                    stack.pop();
                }
                _ => stack.push(l.clone()),
            }
        }
        FreeWord { letters: stack }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !(w[0].gen == w[1].gen && w[0].exp == -w[1].exp))
    }

    /// The prefix of the first `n` letters, as spelled.
    pub fn prefix(&self, n: usize) -> FreeWord {
        FreeWord {
            letters: self.letters[..n].to_vec(),
        }
    }

    /// Generators occurring in the word, deduplicated in order of first use.
    pub fn support(&self) -> Vec<Generator> {
        let mut out: Vec<Generator> = Vec::new();
        for l in &self.letters {
            if !out.contains(&l.gen) {
                out.push(l.gen.clone());
            }
        }
        out
    }

    /// Remove every letter whose generator equals `g`, keeping the rest spelled as-is.
    pub fn delete_generator(&self, g: &Generator) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().filter(|l| &l.gen != g).cloned().collect(),
        }
    }

    /// Sum of exponents of `g` in the word.
    pub fn exponent_sum(&self, g: &Generator) -> i64 {
        self.letters
            .iter()
            .filter(|l| &l.gen == g)
            .map(|l| l.exp as i64)
            .sum()
    }

    /// Cyclic rotation by `k` letters.
    pub fn rotate(&self, k: usize) -> FreeWord {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        FreeWord { letters }
    }
}

/// True when `b` is a cyclic permutation of `a` (letter-for-letter, as spelled).
pub fn is_cyclic_permutation(a: &FreeWord, b: &FreeWord) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|k| &a.rotate(k) == b)
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if l.exp == 1 {
                write!(f, "{}", l.gen)?;
            } else {
                write!(f, "{}^-1", l.gen)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(name: &str) -> Generator {
        Generator::new(name)
    }

    fn word(spec: &[(&str, i8)]) -> FreeWord {
        FreeWord::from_letters(
            spec.iter()
                .map(|&(n, e)| Letter { gen: g(n), exp: e })
                .collect(),
        )
    }

    #[test]
    fn reduce_cancels_pair() {
        // x x^-1 -> 1
        assert!(word(&[("x", 1), ("x", -1)]).reduce().is_empty());
    }

    #[test]
    fn reduce_inner_cancellation() {
        // x y y^-1 x -> x x
        let w = word(&[("x", 1), ("y", 1), ("y", -1), ("x", 1)]);
        assert_eq!(w.reduce(), word(&[("x", 1), ("x", 1)]));
    }

    #[test]
    fn reduce_fixed_point() {
        // x y x^-1 already reduced
        let w = word(&[("x", 1), ("y", 1), ("x", -1)]);
        assert_eq!(w.reduce(), w);
        assert!(w.is_reduced());
    }

    #[test]
    fn reduce_idempotent() {
        let w = word(&[("a", 1), ("a", -1), ("b", 1), ("c", -1), ("c", 1), ("b", -1)]);
        let r = w.reduce();
        assert_eq!(r.reduce(), r);
        assert!(r.is_empty());
    }

    #[test]
    fn inverse_reverses_and_flips() {
        let w = word(&[("x", 1), ("y", -1)]);
        assert_eq!(w.inverse(), word(&[("y", 1), ("x", -1)]));
        assert!(w.concat(&w.inverse()).reduce().is_empty());
    }

    #[test]
    fn cyclic_permutation_check() {
        let a = word(&[("x", 1), ("y", 1), ("z", -1)]);
        let b = word(&[("y", 1), ("z", -1), ("x", 1)]);
        let c = word(&[("y", 1), ("x", 1), ("z", -1)]);
        assert!(is_cyclic_permutation(&a, &b));
        assert!(!is_cyclic_permutation(&a, &c));
    }

    #[test]
    fn display_renders_inverses() {
        let w = word(&[("U1", 1), ("U3", -1), ("S0", 1)]);
        assert_eq!(w.to_string(), "U1 U3^-1 S0");
    }
}
