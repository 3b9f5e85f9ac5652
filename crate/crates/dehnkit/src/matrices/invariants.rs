//! Goeritz and Seifert matrices by both routes, Alexander matrices and
//! polynomials, determinants and the HNN criterion.

use super::{jacobian, IntMatrix, JacobianMatrix, LaurentMatrix};
use crate::algebra::{laurent_gcd, FreeWord, Generator, GroupRingElement, LaurentPoly, Provenance};
use crate::diagram::analysis::Analyzed;
use crate::error::ComputeError;
use crate::presentation::{theorem_main_presentation, BasePolicy, MainPresentation, Presentation};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecKind {
    Alpha,
    Tau,
    Nu,
}

/// The alpha image of a presentation generator: regions carry the monomial
/// propagated across the diagram, Wirtinger arcs the meridian of their
/// component.
pub fn alpha_image(an: &Analyzed, g: &Generator) -> Result<LaurentPoly, ComputeError> {
    let mu = an.diagram.components.len();
    match g.provenance {
        Provenance::Region(r) => Ok(an.alpha[r].clone()),
        Provenance::Arc(_, comp) => Ok(LaurentPoly::var(mu, comp)),
        Provenance::Anonymous => Err(ComputeError::MissingImage(g.name.clone())),
    }
}

fn nu_image(an: &Analyzed, g: &Generator) -> Result<i8, ComputeError> {
    match g.provenance {
        Provenance::Region(r) => Ok(an.nu_region(r)),
        Provenance::Arc(_, _) => Ok(-1),
        Provenance::Anonymous => Err(ComputeError::MissingImage(g.name.clone())),
    }
}

fn nu_of_element(an: &Analyzed, e: &GroupRingElement) -> Result<BigInt, ComputeError> {
    let mut acc = BigInt::zero();
    for (w, c) in &e.terms {
        let mut sign = 1i8;
        for l in &w.letters {
            // nu(g) = nu(g^-1) since values are +/-1.
            sign *= nu_image(an, &l.gen)?;
        }
        if sign == 1 {
            acc += c;
        } else {
            acc -= c;
        }
    }
    Ok(acc)
}

/// Entrywise alpha image of a Jacobian, over Z[t_1^.., t_mu^..].
pub fn specialize_jacobian_alpha(
    an: &Analyzed,
    j: &JacobianMatrix,
    p: &Presentation,
) -> Result<LaurentMatrix, ComputeError> {
    let mu = an.diagram.components.len();
    let mut m = std::collections::BTreeMap::new();
    for g in &p.generators {
        m.insert(g.clone(), alpha_image(an, g)?);
    }
    let mut out = LaurentMatrix::zeros(j.rows, j.cols, mu);
    for i in 0..j.rows {
        for k in 0..j.cols {
            out.data[i * j.cols + k] = crate::algebra::specialize(j.at(i, k), &m, mu)?;
        }
    }
    out.row_tags = j.row_tags.clone();
    out.col_tags = j.col_tags.clone();
    Ok(out)
}

/// Entrywise tau image: every t_i collapsed to t.
pub fn specialize_jacobian_tau(
    an: &Analyzed,
    j: &JacobianMatrix,
    p: &Presentation,
) -> Result<LaurentMatrix, ComputeError> {
    let alpha = specialize_jacobian_alpha(an, j, p)?;
    let mut out = LaurentMatrix::zeros(j.rows, j.cols, 1);
    for i in 0..alpha.data.len() {
        out.data[i] = alpha.data[i].collapse_to_single();
    }
    out.row_tags = j.row_tags.clone();
    out.col_tags = j.col_tags.clone();
    Ok(out)
}

/// Entrywise 2-reduction, landing in exact integers.
pub fn specialize_jacobian_nu(
    an: &Analyzed,
    j: &JacobianMatrix,
) -> Result<IntMatrix, ComputeError> {
    let mut out = IntMatrix::zeros(j.rows, j.cols);
    for i in 0..j.rows {
        for k in 0..j.cols {
            *out.at_mut(i, k) = nu_of_element(an, j.at(i, k))?;
        }
    }
    out.row_tags = j.row_tags.clone();
    out.col_tags = j.col_tags.clone();
    Ok(out)
}

/// The reduced Goeritz matrix straight from its defining sums: rows and
/// columns indexed by the bounded unshaded regions U1..Un.
pub fn goeritz_direct(an: &Analyzed) -> IntMatrix {
    let n = an.shading.u_regions.len();
    let mut g = IntMatrix::zeros(n, n);
    let tags: Vec<String> = (1..=n).map(|i| format!("U{}", i)).collect();
    g.row_tags = tags.clone();
    g.col_tags = tags;
    for c in 0..an.diagram.crossing_count() {
        let (p, q) = an.unshaded_corner_regions(c);
        if p == q {
            continue;
        }
        let eta = BigInt::from(an.eta(c));
        let pi = an.shading.u_index(p);
        let qi = an.shading.u_index(q);
        if let Some(i) = pi {
            *g.at_mut(i, i) += &eta;
        }
        if let Some(j) = qi {
            *g.at_mut(j, j) += &eta;
        }
        if let (Some(i), Some(j)) = (pi, qi) {
            *g.at_mut(i, j) -= &eta;
            *g.at_mut(j, i) -= &eta;
        }
    }
    g
}

/// The Goeritz matrix recovered from the 2-reduced Jacobian of the main
/// presentation. Checks the S-columns vanish and returns (G, full J^nu).
pub fn goeritz_via_jacobian(
    an: &Analyzed,
    main: &MainPresentation,
) -> Result<(IntMatrix, IntMatrix), ComputeError> {
    let j = jacobian(&main.presentation);
    let jnu = specialize_jacobian_nu(an, &j)?;
    let n = main.u_count;
    for i in 0..jnu.rows {
        for k in n..jnu.cols {
            if !jnu.at(i, k).is_zero() {
                return Err(ComputeError::CheckFailed(format!(
                    "2-reduced Jacobian has a nonzero shaded column at ({}, {})",
                    i, k
                )));
            }
        }
    }
    let mut g = IntMatrix::zeros(jnu.rows, n);
    for i in 0..jnu.rows {
        for k in 0..n {
            *g.at_mut(i, k) = jnu.at(i, k).clone();
        }
    }
    g.row_tags = jnu.row_tags.clone();
    g.col_tags = jnu.col_tags[..n].to_vec();
    Ok((g, jnu))
}

fn require_special_nonsplit(an: &Analyzed) -> Result<(), ComputeError> {
    if an.diagram.is_split() {
        return Err(ComputeError::Split(
            "Seifert matrices need a non-split diagram".into(),
        ));
    }
    match &an.special {
        crate::diagram::analysis::SpecialLabels::Consistent(_) => Ok(()),
        crate::diagram::analysis::SpecialLabels::Conflict(r) => {
            Err(ComputeError::NotSpecial { region: *r })
        }
    }
}

/// The region holding the dot of a crossing: the unshaded corner on the
/// left of the under-strand (the strand through slots 0 and 2, oriented
/// slot 0 to slot 2). Corners 2 and 3 flank that side; exactly one is
/// unshaded.
fn dot_region(an: &Analyzed, crossing: usize, reversed: bool) -> usize {
    let (a, b) = if reversed { (0, 1) } else { (2, 3) };
    let ra = an.corner_region[crossing * 4 + a];
    if !an.shading.is_shaded(ra) {
        ra
    } else {
        an.corner_region[crossing * 4 + b]
    }
}

fn seifert_by_dots(an: &Analyzed, reversed: bool) -> Result<IntMatrix, ComputeError> {
    require_special_nonsplit(an)?;
    let n = an.shading.u_regions.len();
    let mut h = IntMatrix::zeros(n, n);
    let tags: Vec<String> = (1..=n).map(|i| format!("U{}", i)).collect();
    h.row_tags = tags.clone();
    h.col_tags = tags;
    for c in 0..an.diagram.crossing_count() {
        let (p, q) = an.unshaded_corner_regions(c);
        let dot = dot_region(an, c, reversed);
        debug_assert!(dot == p || dot == q);
        let other = if dot == p { q } else { p };
        let eta = BigInt::from(an.eta(c));
        if let Some(i) = an.shading.u_index(dot) {
            *h.at_mut(i, i) += &eta;
            if other != dot {
                if let Some(j) = an.shading.u_index(other) {
                    *h.at_mut(j, i) -= &eta;
                }
            }
        }
    }
    Ok(h)
}

/// Seifert matrix H+ from the dot rule of the special-diagram construction.
pub fn seifert_plus_dots(an: &Analyzed) -> Result<IntMatrix, ComputeError> {
    seifert_by_dots(an, false)
}

/// Seifert matrix H-: the dot rule applied to the orientation-reversed
/// diagram (dots on the right of the under-strand). Equal to the transpose
/// of H+, which the tests assert as a theorem rather than by construction.
pub fn seifert_minus(an: &Analyzed) -> Result<IntMatrix, ComputeError> {
    seifert_by_dots(an, true)
}

/// Abelianized A and B matrices read off the return values W_i = A_i S0 B_i^-1
/// of the special presentation (base paths ending at +-labeled vertices).
pub fn seifert_from_words(
    an: &Analyzed,
    main: &MainPresentation,
) -> Result<(IntMatrix, IntMatrix), ComputeError> {
    require_special_nonsplit(an)?;
    let n = main.u_count;
    let u_gens: Vec<&Generator> = main.presentation.generators[..n].iter().collect();
    let mut a = IntMatrix::zeros(n, n);
    let mut b = IntMatrix::zeros(n, n);
    let tags: Vec<String> = (1..=n).map(|i| format!("U{}", i)).collect();
    a.row_tags = tags.clone();
    a.col_tags = tags.clone();
    b.row_tags = tags.clone();
    b.col_tags = tags;
    for (i, rel) in main.presentation.relators.iter().enumerate() {
        if rel.parts.len() != 1 {
            return Err(ComputeError::BadReturnValue {
                region: rel.region.unwrap_or(usize::MAX),
            });
        }
        let base = &rel.parts[0].base;
        // W with unbounded-region letters removed: the presentation spelling
        // of the relator minus its trailing S^-1.
        let w = FreeWord::from_letters(
            rel.word.letters[..rel.word.letters.len() - 1].to_vec(),
        );
        let s_positions: Vec<usize> = w
            .letters
            .iter()
            .enumerate()
            .filter(|(_, l)| &l.gen == base)
            .map(|(k, _)| k)
            .collect();
        if s_positions.len() != 1 || w.letters[s_positions[0]].exp != 1 {
            return Err(ComputeError::BadReturnValue {
                region: rel.region.unwrap_or(usize::MAX),
            });
        }
        let split = s_positions[0];
        let a_i = FreeWord::from_letters(w.letters[..split].to_vec());
        let b_i = FreeWord::from_letters(w.letters[split + 1..].to_vec()).inverse();
        for (j, g) in u_gens.iter().enumerate() {
            *a.at_mut(i, j) = BigInt::from(a_i.exponent_sum(g));
            *b.at_mut(i, j) = BigInt::from(b_i.exponent_sum(g));
        }
    }
    Ok((a, b))
}

/// The tau-specialized Jacobian of the special presentation; checks the
/// shaded column vanishes and the leading block equals H- - t H+ computed
/// independently via dots.
pub fn alexander_matrix_special(an: &Analyzed) -> Result<LaurentMatrix, ComputeError> {
    require_special_nonsplit(an)?;
    let main = theorem_main_presentation(an, BasePolicy::SpecialPlus)?;
    let j = jacobian(&main.presentation);
    let jt = specialize_jacobian_tau(an, &j, &main.presentation)?;
    let n = main.u_count;
    for i in 0..jt.rows {
        for k in n..jt.cols {
            if !jt.at(i, k).is_zero() {
                return Err(ComputeError::CheckFailed(
                    "tau-Jacobian has a nonzero shaded column".into(),
                ));
            }
        }
    }
    let hplus = seifert_plus_dots(an)?;
    let hminus = seifert_minus(an)?;
    let t = LaurentPoly::t_pow(1);
    for i in 0..n {
        for k in 0..n {
            let expected = &LaurentPoly::constant(1, hminus.at(i, k).clone())
                - &(&t * &LaurentPoly::constant(1, hplus.at(i, k).clone()));
            if jt.at(i, k) != &expected {
                return Err(ComputeError::CheckFailed(format!(
                    "tau-Jacobian block differs from H- - tH+ at ({}, {})",
                    i, k
                )));
            }
        }
    }
    Ok(jt)
}

/// H- - t H+ as a Laurent matrix.
pub fn h_tilde(hplus: &IntMatrix, hminus: &IntMatrix) -> LaurentMatrix {
    let n = hplus.rows;
    let mut out = LaurentMatrix::zeros(n, n, 1);
    let t = LaurentPoly::t_pow(1);
    for i in 0..n {
        for k in 0..n {
            out.data[i * n + k] = &LaurentPoly::constant(1, hminus.at(i, k).clone())
                - &(&t * &LaurentPoly::constant(1, hplus.at(i, k).clone()));
        }
    }
    out
}

/// Single-variable Alexander polynomial from a tau-specialized Jacobian:
/// gcd of the maximal minors after deleting each generator column in turn.
/// Presentations of deficiency above one (split links) report zero.
pub fn alexander_polynomial(jt: &LaurentMatrix) -> LaurentPoly {
    let rows = jt.rows;
    let cols = jt.cols;
    if cols > rows + 1 {
        return LaurentPoly::zero(1);
    }
    let mut gcd = LaurentPoly::zero(1);
    for drop_col in 0..cols {
        let keep_cols: Vec<usize> = (0..cols).filter(|&c| c != drop_col).collect();
        let k = keep_cols.len().min(rows);
        for rowset in combinations(rows, k) {
            let minor = jt.submatrix(&rowset, &keep_cols);
            if !minor.is_square() {
                continue;
            }
            let d = minor.determinant();
            if !d.is_zero() {
                gcd = laurent_gcd(&gcd, &d);
            }
        }
    }
    gcd
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    'outer: loop {
        out.push(idx.clone());
        if k == 0 {
            return out;
        }
        let mut i = k - 1;
        loop {
            if idx[i] < i + n - k {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                continue 'outer;
            }
            if i == 0 {
                return out;
            }
            i -= 1;
        }
    }
}

/// Normal form: lowest exponent zero, leading coefficient positive.
pub fn normalize_alexander(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return p.clone();
    }
    assert_eq!(p.nvars, 1);
    let shifted = p.shift(-p.min_degree().unwrap());
    let lead = shifted
        .terms
        .iter()
        .next_back()
        .map(|(_, c)| c.clone())
        .unwrap();
    if lead.is_negative() {
        -&shifted
    } else {
        shifted
    }
}

/// Sufficient condition for the presentation to be an HNN extension with
/// stable letter S0: both Seifert matrices are nonsingular.
pub fn hnn_sufficient(a: &IntMatrix, b: &IntMatrix) -> bool {
    !a.determinant().is_zero() && !b.determinant().is_zero()
}

/// |det G|: the link determinant.
pub fn link_determinant(an: &Analyzed) -> BigInt {
    goeritz_direct(an).determinant().abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_enumerate() {
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(combinations(2, 2), vec![vec![0, 1]]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn normalize_forms() {
        let p = LaurentPoly::from_dense(-1, &[BigInt::from(-1), BigInt::from(1), BigInt::from(-1)]);
        // -t^-1 + 1 - t  ->  t^2 - t + 1
        assert_eq!(normalize_alexander(&p).render(), "t^2 - t + 1");
        assert!(normalize_alexander(&LaurentPoly::zero(1)).is_zero());
    }

    #[test]
    fn hnn_zero_matrix_is_false() {
        let z = IntMatrix::zeros(2, 2);
        assert!(!hnn_sufficient(&z, &z));
        let i = IntMatrix::from_rows(vec![vec![1, 0], vec![0, 1]]);
        assert!(hnn_sufficient(&i, &i));
    }
}
