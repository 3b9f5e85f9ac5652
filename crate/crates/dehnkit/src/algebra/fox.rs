//! Fox's free differential calculus and the ring specializations used on it.

use super::laurent::LaurentPoly;
use super::ring::GroupRingElement;
use super::word::{FreeWord, Generator};
use crate::error::ComputeError;
use num_bigint::BigInt;
use num_traits::One;
use std::collections::BTreeMap;

/// The partial derivative of `w` with respect to `g`.
///
/// Computed on the word exactly as spelled: each occurrence of `g` with
/// exponent +1 contributes its initial subword, each occurrence with
/// exponent -1 contributes minus (initial subword)*g^-1. The empty initial
/// subword is the ring identity.
pub fn fox_derivative(w: &FreeWord, g: &Generator) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    for (i, letter) in w.letters.iter().enumerate() {
        if &letter.gen != g {
            continue;
        }
        let prefix = w.prefix(i);
        if letter.exp == 1 {
            out.add_term(prefix, BigInt::one());
        } else {
            out.add_term(prefix.concat(&FreeWord::gen_inv(g.clone())), -BigInt::one());
        }
    }
    out
}

/// The derivative of a relator as a single group-ring element:
/// the sum over generators of (dr/dx_j) * x_j.
pub fn derivative_of_relator(r: &FreeWord, gens: &[Generator]) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    for g in gens {
        let d = fox_derivative(r, g);
        out = &out + &d.mul_word(&FreeWord::gen(g.clone()));
    }
    out
}

/// Ring-homomorphic substitution g -> m(g). Every image must be a unit
/// (a signed monomial) so that inverse letters have images.
pub fn specialize(
    e: &GroupRingElement,
    m: &BTreeMap<Generator, LaurentPoly>,
    nvars: usize,
) -> Result<LaurentPoly, ComputeError> {
    let mut out = LaurentPoly::zero(nvars);
    for (w, c) in &e.terms {
        let mut acc = LaurentPoly::constant(nvars, c.clone());
        for l in &w.letters {
            let img = m
                .get(&l.gen)
                .ok_or_else(|| ComputeError::MissingImage(l.gen.name.clone()))?;
            let factor = if l.exp == 1 {
                img.clone()
            } else {
                img.unit_inverse()
                    .ok_or_else(|| ComputeError::MissingImage(format!("{}^-1", l.gen.name)))?
            };
            acc = &acc * &factor;
        }
        out = &out + &acc;
    }
    Ok(out)
}

/// Image of a single word under a monomial substitution.
pub fn specialize_word(
    w: &FreeWord,
    m: &BTreeMap<Generator, LaurentPoly>,
    nvars: usize,
) -> Result<LaurentPoly, ComputeError> {
    specialize(&GroupRingElement::from_word(w.clone()), m, nvars)
}

/// Collapse t_1, ..., t_mu to the single variable t.
pub fn tau(p: &LaurentPoly) -> LaurentPoly {
    p.collapse_to_single()
}

/// 2-reduction: evaluate a single-variable polynomial at t = -1.
pub fn nu(p: &LaurentPoly) -> BigInt {
    p.eval_at_minus_one()
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

    fn term(spec: &[(&str, i8)], c: i64) -> GroupRingElement {
        GroupRingElement::from_term(w(spec), c)
    }

    #[test]
    fn inverse_case_from_definition() {
        // d(x^-1)/dx = -x^-1
        let d = fox_derivative(&w(&[("x", -1)]), &g("x"));
        assert_eq!(d, term(&[("x", -1)], -1));
    }

    #[test]
    fn single_occurrence_empty_prefix() {
        // d(xy)/dx = 1
        let d = fox_derivative(&w(&[("x", 1), ("y", 1)]), &g("x"));
        assert_eq!(d, GroupRingElement::one());
    }

    #[test]
    fn conjugate_expansion() {
        // d(x y x^-1)/dx = 1 - x y x^-1, expanding both occurrences by hand:
        // position 0 contributes 1; position 2 contributes -(x y) x^-1.
        let d = fox_derivative(&w(&[("x", 1), ("y", 1), ("x", -1)]), &g("x"));
        let expected = &GroupRingElement::one() - &term(&[("x", 1), ("y", 1), ("x", -1)], 1);
        assert_eq!(d, expected);
    }

    #[test]
    fn relator_derivative_examples() {
        // r = x  ->  x
        let gens = [g("x"), g("y")];
        assert_eq!(
            derivative_of_relator(&w(&[("x", 1)]), &gens),
            term(&[("x", 1)], 1)
        );
        // r = xy -> (dr/dx)x + (dr/dy)y = x + xy
        let d = derivative_of_relator(&w(&[("x", 1), ("y", 1)]), &gens);
        assert_eq!(d, &term(&[("x", 1)], 1) + &term(&[("x", 1), ("y", 1)], 1));
        // r = x^-1 -> -x^-1 * x = -1
        let d = derivative_of_relator(&w(&[("x", -1)]), &gens);
        assert_eq!(d, &GroupRingElement::zero() - &GroupRingElement::one());
    }

    #[test]
    fn homomorphism_kills_conjugator_at_one() {
        // specialize(1 - xyx^-1, all -> 1) = 0
        let e = &GroupRingElement::one() - &term(&[("x", 1), ("y", 1), ("x", -1)], 1);
        let mut m = BTreeMap::new();
        m.insert(g("x"), LaurentPoly::one(1));
        m.insert(g("y"), LaurentPoly::one(1));
        assert!(specialize(&e, &m, 1).unwrap().is_zero());
    }

    #[test]
    fn product_rule_spot_check() {
        // d(uv)/dg = du/dg + u dv/dg
        let u = w(&[("x", 1), ("y", -1)]);
        let v = w(&[("y", 1), ("x", 1), ("x", 1)]);
        let uv = u.concat(&v);
        for gen in [g("x"), g("y")] {
            let lhs = fox_derivative(&uv, &gen);
            let rhs = &fox_derivative(&u, &gen)
                + &GroupRingElement::word_mul(&u, &fox_derivative(&v, &gen));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn fundamental_identity_spot_check() {
        // sum_g (dw/dg)(g - 1) = w - 1
        let word = w(&[("x", 1), ("y", 1), ("x", -1), ("y", -1), ("x", 1)]);
        let mut acc = GroupRingElement::zero();
        for gen in [g("x"), g("y")] {
            let d = fox_derivative(&word, &gen);
            let gm1 = &GroupRingElement::from_word(FreeWord::gen(gen.clone())) - &GroupRingElement::one();
            acc = &acc + &(&d * &gm1);
        }
        let expected = &GroupRingElement::from_word(word) - &GroupRingElement::one();
        assert_eq!(acc, expected);
    }
}
