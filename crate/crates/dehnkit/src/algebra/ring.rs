use super::word::{FreeWord, Generator};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An element of the integral group ring of a free group: a finite formal
/// integer combination of reduced words. No zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    pub terms: BTreeMap<FreeWord, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        GroupRingElement::default()
    }

    pub fn one() -> Self {
        GroupRingElement::from_word(FreeWord::identity())
    }

    /// The element 1*w (w is reduced on entry).
    pub fn from_word(w: FreeWord) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w.reduce(), BigInt::one());
        GroupRingElement { terms }
    }

    pub fn from_term(w: FreeWord, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut out = GroupRingElement::zero();
        out.add_term(w, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: FreeWord, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let w = w.reduce();
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Right-multiply by a single group element.
    pub fn mul_word(&self, w: &FreeWord) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (u, c) in &self.terms {
            out.add_term(u.concat(w), c.clone());
        }
        out
    }

    /// Left-multiply by a single group element.
    pub fn word_mul(w: &FreeWord, e: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (u, c) in &e.terms {
            out.add_term(w.concat(u), c.clone());
        }
        out
    }

    pub fn support_generators(&self) -> Vec<Generator> {
        let mut out: Vec<Generator> = Vec::new();
        for w in self.terms.keys() {
            for g in w.support() {
                if !out.contains(&g) {
                    out.push(g);
                }
            }
        }
        out
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if mag.is_one() {
                if w.is_empty() {
                    f.write_str("1")?;
                } else {
                    write!(f, "{}", w)?;
                }
            } else if w.is_empty() {
                write!(f, "{}", mag)?;
            } else {
                write!(f, "{}*{}", mag, w)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::word::Letter;

    fn g(name: &str) -> Generator {
        Generator::new(name)
    }

    fn w(spec: &[(&str, i8)]) -> FreeWord {
        FreeWord::from_letters(spec.iter().map(|&(n, e)| Letter { gen: g(n), exp: e }).collect())
    }

    #[test]
    fn zero_has_no_terms_after_cancellation() {
        let a = GroupRingElement::from_word(w(&[("x", 1)]));
        let s = &a - &a;
        assert!(s.is_zero());
        assert!(s.terms.is_empty());
    }

    #[test]
    fn multiplication_reduces_products() {
        // (x) * (x^-1 y) = y
        let a = GroupRingElement::from_word(w(&[("x", 1)]));
        let b = GroupRingElement::from_word(w(&[("x", -1), ("y", 1)]));
        assert_eq!(&a * &b, GroupRingElement::from_word(w(&[("y", 1)])));
    }

    #[test]
    fn distributes() {
        let x = GroupRingElement::from_word(w(&[("x", 1)]));
        let y = GroupRingElement::from_word(w(&[("y", 1)]));
        let z = GroupRingElement::from_word(w(&[("z", 1)]));
        let lhs = &x * &(&y + &z);
        let rhs = &(&x * &y) + &(&x * &z);
        assert_eq!(lhs, rhs);
    }
}
