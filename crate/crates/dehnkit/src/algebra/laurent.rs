use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A multivariate integer Laurent polynomial in `nvars` variables.
///
/// Terms map exponent vectors to nonzero coefficients; the zero polynomial
/// has an empty term map. `nvars == 1` is the single-variable ring Z[t, t^-1].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut p = LaurentPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    /// The monomial c * t_0^e0 * ... with the given exponent vector.
    pub fn monomial(nvars: usize, exps: Vec<i64>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), nvars);
        let c = c.into();
        let mut p = LaurentPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// t_i as a polynomial.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::monomial(nvars, exps, 1)
    }

    /// Single-variable t^k.
    pub fn t_pow(k: i64) -> Self {
        Self::monomial(1, vec![k], 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&vec![0; self.nvars][..].to_vec())
                .map_or(false, |c| c.is_one())
    }

    /// True for +/- a single monomial: the units of the Laurent ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().abs().is_one()
    }

    /// Multiplicative inverse, defined only for units.
    pub fn unit_inverse(&self) -> Option<LaurentPoly> {
        if !self.is_unit() {
            return None;
        }
        let (exps, c) = self.terms.iter().next().unwrap();
        Some(Self::monomial(
            self.nvars,
            exps.iter().map(|e| -e).collect(),
            c.clone(),
        ))
    }

    fn insert_term(terms: &mut BTreeMap<Vec<i64>, BigInt>, exps: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match terms.entry(exps) {
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

    /// Map every variable t_i to the single variable t (degree = exponent sum).
    pub fn collapse_to_single(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(1);
        for (exps, c) in &self.terms {
            let total: i64 = exps.iter().sum();
            Self::insert_term(&mut out.terms, vec![total], c.clone());
        }
        out
    }

    /// Evaluate a single-variable polynomial at t = -1.
    pub fn eval_at_minus_one(&self) -> BigInt {
        assert_eq!(self.nvars, 1, "2-reduction is defined on Z[t^,t^-1]");
        let mut acc = BigInt::zero();
        for (exps, c) in &self.terms {
            if exps[0].rem_euclid(2) == 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        acc
    }

    /// Evaluate a single-variable polynomial at an integer point.
    /// Negative exponents are cleared by a common t^k shift first, so the
    /// result is exact up to that dropped unit (fine for determinant use).
    pub fn eval_shifted(&self, x: &BigInt) -> BigInt {
        assert_eq!(self.nvars, 1);
        if self.is_zero() {
            return BigInt::zero();
        }
        let min = self.min_degree().unwrap();
        let mut acc = BigInt::zero();
        for (exps, c) in &self.terms {
            let mut pw = BigInt::one();
            for _ in 0..(exps[0] - min) {
                pw *= x;
            }
            acc += c * pw;
        }
        acc
    }

    pub fn min_degree(&self) -> Option<i64> {
        (self.nvars == 1).then(|| ()).and_then(|_| self.terms.keys().map(|e| e[0]).min())
    }

    pub fn max_degree(&self) -> Option<i64> {
        (self.nvars == 1).then(|| ()).and_then(|_| self.terms.keys().map(|e| e[0]).max())
    }

    /// Multiply by t^k (single-variable).
    pub fn shift(&self, k: i64) -> LaurentPoly {
        assert_eq!(self.nvars, 1);
        let mut out = LaurentPoly::zero(1);
        for (exps, c) in &self.terms {
            out.terms.insert(vec![exps[0] + k], c.clone());
        }
        out
    }

    pub fn coeff(&self, exps: &[i64]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Single-variable dense coefficient vector from min_degree upward.
    pub fn dense_coeffs(&self) -> (i64, Vec<BigInt>) {
        assert_eq!(self.nvars, 1);
        if self.is_zero() {
            return (0, vec![]);
        }
        let lo = self.min_degree().unwrap();
        let hi = self.max_degree().unwrap();
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e[0] - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    pub fn from_dense(lo: i64, coeffs: &[BigInt]) -> LaurentPoly {
        let mut out = LaurentPoly::zero(1);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.terms.insert(vec![lo + i as i64], c.clone());
            }
        }
        out
    }

    /// Exact division, panicking if not divisible. Single-variable only;
    /// used by fraction-free elimination where divisibility is guaranteed.
    pub fn exact_div(&self, d: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, 1);
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return LaurentPoly::zero(1);
        }
        let (nlo, num) = self.dense_coeffs();
        let (dlo, den) = d.dense_coeffs();
        let mut rem = num;
        let mut q = vec![BigInt::zero(); rem.len().saturating_sub(den.len()) + 1];
        let dlead = den.last().unwrap().clone();
        for k in (0..q.len()).rev() {
            let idx = k + den.len() - 1;
            if idx >= rem.len() {
                continue;
            }
            let (qk, r) = num_integer::Integer::div_rem(&rem[idx], &dlead);
            assert!(r.is_zero(), "exact_div: leading coefficient not divisible");
            if qk.is_zero() {
                continue;
            }
            for (j, dc) in den.iter().enumerate() {
                let t = dc * &qk;
                rem[k + j] -= t;
            }
            q[k] = qk;
        }
        assert!(rem.iter().all(|c| c.is_zero()), "exact_div: nonzero remainder");
        LaurentPoly::from_dense(nlo - dlo, &q)
    }

    /// Render with variables named t (single) or t1..tn, highest degree first.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let var_name = |i: usize| {
            if self.nvars == 1 {
                "t".to_string()
            } else {
                format!("t{}", i + 1)
            }
        };
        let mut terms: Vec<(&Vec<i64>, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.cmp(a.0));
        let mut out = String::new();
        for (i, (exps, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push_str("-");
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut mono = String::new();
            for (v, e) in exps.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                if *e == 1 {
                    mono.push_str(&var_name(v));
                } else {
                    mono.push_str(&format!("{}^{}", var_name(v), e));
                }
            }
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}{}", mag, mono));
            }
        }
        out
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            LaurentPoly::insert_term(&mut out.terms, e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            LaurentPoly::insert_term(&mut out.terms, e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = LaurentPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<i64> = ea
                    .iter()
                    .zip(eb)
                    .map(|(x, y)| x.checked_add(*y).expect("exponent overflow"))
                    .collect();
                LaurentPoly::insert_term(&mut out.terms, exps, ca * cb);
            }
        }
        out
    }
}

/// Gcd in Z[t, t^-1], up to units: content gcd times primitive-part gcd
/// by a primitive pseudo-remainder sequence.
pub fn laurent_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    assert_eq!(a.nvars, 1);
    assert_eq!(b.nvars, 1);
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let (ca, pa) = content_primitive(a);
    let (cb, pb) = content_primitive(b);
    let c = num_integer::Integer::gcd(&ca, &cb);
    let mut f = pa;
    let mut g = pb;
    if poly_deg(&f) < poly_deg(&g) {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() {
        let r = pseudo_rem(&f, &g);
        f = g;
        g = content_primitive(&r).1;
    }
    let mut out = LaurentPoly::zero(1);
    for (e, k) in &f.terms {
        out.terms.insert(e.clone(), k * &c);
    }
    out
}

fn poly_deg(p: &LaurentPoly) -> i64 {
    if p.is_zero() {
        -1
    } else {
        p.max_degree().unwrap() - p.min_degree().unwrap()
    }
}

fn content_primitive(p: &LaurentPoly) -> (BigInt, LaurentPoly) {
    if p.is_zero() {
        return (BigInt::zero(), p.clone());
    }
    let mut c = BigInt::zero();
    for v in p.terms.values() {
        c = num_integer::Integer::gcd(&c, v);
    }
    let lo = p.min_degree().unwrap();
    let mut prim = LaurentPoly::zero(1);
    for (e, v) in &p.terms {
        prim.terms.insert(vec![e[0] - lo], v / &c);
    }
    (c, prim)
}

fn pseudo_rem(f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    // Both inputs primitive with min degree 0.
    let (_, mut fv) = f.dense_coeffs();
    let (_, gv) = g.dense_coeffs();
    let dg = gv.len() - 1;
    let lead = gv.last().unwrap().clone();
    if fv.len() < gv.len() {
        return f.clone();
    }
    let steps = fv.len() - gv.len() + 1;
    for _ in 0..steps {
        let df = fv.len() - 1;
        let lf = fv.last().unwrap().clone();
        if fv.iter().all(|c| c.is_zero()) {
            break;
        }
        for c in fv.iter_mut() {
            *c *= &lead;
        }
        for j in 0..=dg {
            let t = &gv[j] * &lf;
            fv[df - dg + j] -= t;
        }
        while fv.last().map_or(false, |c| c.is_zero()) {
            fv.pop();
            if fv.is_empty() {
                break;
            }
        }
        if fv.len() <= dg {
            break;
        }
    }
    LaurentPoly::from_dense(0, &fv)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(pairs: &[(i64, i64)]) -> LaurentPoly {
        let mut out = LaurentPoly::zero(1);
        for &(e, c) in pairs {
            LaurentPoly::insert_term(&mut out.terms, vec![e], BigInt::from(c));
        }
        out
    }

    #[test]
    fn arithmetic_drops_zero_coefficients() {
        let a = p(&[(0, 1), (1, 2)]);
        let b = p(&[(1, -2)]);
        let s = &a + &b;
        assert_eq!(s, p(&[(0, 1)]));
        assert!(s.terms.values().all(|c| !c.is_zero()));
    }

    #[test]
    fn units_and_inverses() {
        let u = p(&[(3, -1)]);
        assert!(u.is_unit());
        let inv = u.unit_inverse().unwrap();
        assert_eq!(&u * &inv, LaurentPoly::one(1));
        assert!(!p(&[(0, 2)]).is_unit());
        assert!(!p(&[(0, 1), (1, 1)]).is_unit());
    }

    #[test]
    fn collapse_and_two_reduction() {
        let q = LaurentPoly::monomial(3, vec![1, -1, 2], 5);
        let s = q.collapse_to_single();
        assert_eq!(s, p(&[(2, 5)]));
        assert_eq!(s.eval_at_minus_one(), BigInt::from(5));
        assert_eq!(p(&[(1, 1)]).eval_at_minus_one(), BigInt::from(-1));
    }

    #[test]
    fn exact_division_round_trips() {
        let a = p(&[(0, 1), (1, -1)]); // 1 - t ... times (1 + t) = 1 - t^2
        let b = p(&[(0, 1), (1, 1)]);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&a), b);
        assert_eq!(prod.exact_div(&b), a);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = p(&[(0, 1), (1, -1)]); // 1 - t
        let g1 = &f * &p(&[(0, 2), (2, 3)]);
        let g2 = &f * &p(&[(1, 5)]);
        let d = laurent_gcd(&g1, &g2);
        // up to units, d == 1 - t
        let (_, dp) = content_primitive(&d);
        let (_, fp) = content_primitive(&f);
        assert!(dp == fp || dp == content_primitive(&-&f).1);
    }

    #[test]
    fn render_descending() {
        assert_eq!(p(&[(2, 1), (1, -1), (0, 1)]).render(), "t^2 - t + 1");
        assert_eq!(p(&[(2, 1), (1, -3), (0, 1)]).render(), "t^2 - 3t + 1");
        assert_eq!(LaurentPoly::zero(1).render(), "0");
    }
}
