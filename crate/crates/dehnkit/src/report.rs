//! The verification runner: executes the cross-route property suite over a
//! corpus and emits a machine-readable report.

use crate::algebra::{
    fox_derivative, specialize_word, FreeWord, Generator, GroupRingElement, LaurentPoly, Letter,
};
use crate::corpus::CorpusEntry;
use crate::diagram::analysis::Analyzed;
use crate::matrices::invariants::{
    alexander_polynomial, goeritz_direct, goeritz_via_jacobian, hnn_sufficient,
    normalize_alexander, seifert_from_words, seifert_minus, seifert_plus_dots,
    specialize_jacobian_tau,
};
use crate::matrices::jacobian;
use crate::presentation::{
    theorem_main_presentation, verify_consequence, wirtinger::wirtinger_presentation, BasePolicy,
};
use num_traits::Signed;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::time::Instant;

#[derive(Debug, Clone, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub pass: bool,
    pub properties: Vec<PropertyResult>,
    pub millis: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub tool_version: String,
    pub seed: u64,
    pub input_hash: String,
    pub entries: Vec<EntryReport>,
    pub random_suites: Vec<PropertyResult>,
    pub pass: bool,
    pub millis: u128,
}

pub fn corpus_hash(entries: &[CorpusEntry]) -> String {
    let mut h = Sha256::new();
    for e in entries {
        h.update(e.name.as_bytes());
        h.update(b"\n");
        h.update(e.pd.as_bytes());
        h.update(b"\n");
    }
    format!("{:x}", h.finalize())
}

/// Run every per-diagram property over the corpus plus the randomized
/// free-calculus suites. Deterministic for a fixed seed.
pub fn run(entries: &[CorpusEntry], seed: u64) -> RunReport {
    let t0 = Instant::now();
    let mut reports: Vec<EntryReport> = entries.iter().map(check_entry).collect();
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    let random_suites = random_fox_suites(seed, 1000, 50);
    let pass = reports.iter().all(|e| e.pass) && random_suites.iter().all(|p| p.pass);
    RunReport {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        seed,
        input_hash: corpus_hash(entries),
        entries: reports,
        random_suites,
        pass,
        millis: t0.elapsed().as_millis(),
    }
}

pub fn check_entry(entry: &CorpusEntry) -> EntryReport {
    let t0 = Instant::now();
    let mut props: Vec<PropertyResult> = Vec::new();
    let mut check = |name: &str, pass: bool, detail: String| {
        props.push(PropertyResult {
            name: name.to_string(),
            pass,
            detail,
        });
    };

    let an = match Analyzed::new(&entry.pd, entry.outer) {
        Ok(an) => an,
        Err(e) => {
            check("parse", false, format!("{}", e));
            return EntryReport {
                name: entry.name.clone(),
                pass: false,
                properties: props,
                millis: t0.elapsed().as_millis(),
            };
        }
    };
    check("parse", true, String::new());

    // Euler count per piece is enforced at parse time; re-state it.
    let c = an.diagram.crossing_count();
    let f = an.faces.len();
    let expected = c + an.diagram.pieces.len() + 1;
    check(
        "euler_faces",
        f == expected,
        format!("faces {} expected {}", f, expected),
    );

    if let Some(mu) = entry.components {
        check(
            "component_count",
            an.diagram.component_count() == mu,
            format!("mu = {}", an.diagram.component_count()),
        );
    }
    if let Some(split) = entry.split {
        check("split_flag", an.diagram.is_split() == split, String::new());
    }
    if let Some(special) = entry.special {
        check("special_flag", an.is_special() == special, String::new());
    }
    if let Some(alt) = entry.alternating {
        let etas: Vec<i8> = (0..c).map(|x| an.eta(x)).collect();
        let constant = c == 0 || etas.iter().all(|&e| e == etas[0]);
        check(
            "alternating_constant_eta",
            constant == alt,
            format!("{:?}", etas),
        );
    }

    // Theorem: J^nu = (G | 0) under matched labeling.
    let g_direct = goeritz_direct(&an);
    check("goeritz_symmetric", g_direct.is_symmetric(), String::new());
    let main = match theorem_main_presentation(&an, BasePolicy::Theorem) {
        Ok(m) => m,
        Err(e) => {
            check("main_presentation", false, format!("{}", e));
            return EntryReport {
                name: entry.name.clone(),
                pass: props.iter().all(|p| p.pass),
                properties: props,
                millis: t0.elapsed().as_millis(),
            };
        }
    };
    check(
        "deficiency",
        main.presentation.generator_count()
            == an.shading.u_regions.len() + an.gamma.beta
            && main.presentation.relator_count() == an.shading.u_regions.len(),
        String::new(),
    );
    match goeritz_via_jacobian(&an, &main) {
        Ok((g_j, _full)) => check(
            "jnu_equals_goeritz",
            g_j.data == g_direct.data,
            String::new(),
        ),
        Err(e) => check("jnu_equals_goeritz", false, format!("{}", e)),
    }

    // Every relator abelianizes trivially under alpha.
    let names_ok = main.presentation.relators.iter().all(|r| {
        let mut m = BTreeMap::new();
        for g in &main.presentation.generators {
            if let Ok(img) = crate::matrices::invariants::alpha_image(&an, g) {
                m.insert(g.clone(), img);
            }
        }
        specialize_word(&r.word, &m, an.diagram.components.len())
            .map(|p| p.is_one())
            .unwrap_or(false)
    });
    check("relators_die_under_alpha", names_ok, String::new());

    // Boundary relators are consequences of the Dehn relators.
    let consequences_ok = main.presentation.relators.iter().all(|r| {
        r.parts.iter().all(|p| {
            let steps = rebuild_steps(&an, p);
            verify_consequence(&an, &steps)
        })
    });
    check("relators_in_normal_closure", consequences_ok, String::new());

    // Determinant from the Goeritz matrix.
    let det = g_direct.determinant().abs();
    if let Some(expected) = entry.determinant {
        check(
            "determinant",
            det == num_bigint::BigInt::from(expected),
            format!("|det G| = {}", det),
        );
    }

    // Alexander routes.
    let j = jacobian(&main.presentation);
    let alex_main = specialize_jacobian_tau(&an, &j, &main.presentation)
        .map(|jt| normalize_alexander(&alexander_polynomial(&jt)));
    match &alex_main {
        Ok(a_main) => {
            check(
                "alexander_det_identity",
                a_main.eval_at_minus_one().abs() == det,
                format!("|Delta(-1)| = {}, |det G| = {}", a_main.eval_at_minus_one().abs(), det),
            );
            if let Some(expected) = &entry.alexander {
                check(
                    "alexander_expected",
                    &a_main.render() == expected,
                    format!("got {}", a_main.render()),
                );
            }
            // Wirtinger oracle route, when every component crosses.
            if an.diagram.components.iter().all(|cc| !cc.edges.is_empty()) {
                match wirtinger_presentation(&an) {
                    Ok(w) => {
                        let jw = jacobian(&w);
                        match specialize_jacobian_tau(&an, &jw, &w) {
                            Ok(jwt) => {
                                let a_w = normalize_alexander(&alexander_polynomial(&jwt));
                                check(
                                    "alexander_wirtinger_agrees",
                                    &a_w == a_main,
                                    format!("main {}, wirtinger {}", a_main.render(), a_w.render()),
                                );
                                check(
                                    "corollary_generator_counts",
                                    an.diagram.is_split()
                                        || main.presentation.generator_count()
                                            <= w.generator_count(),
                                    format!(
                                        "main {} vs wirtinger {}",
                                        main.presentation.generator_count(),
                                        w.generator_count()
                                    ),
                                );
                            }
                            Err(e) => check("alexander_wirtinger_agrees", false, format!("{}", e)),
                        }
                    }
                    Err(e) => check("alexander_wirtinger_agrees", false, format!("{}", e)),
                }
            }
        }
        Err(e) => check("alexander_main_route", false, format!("{}", e)),
    }

    // Special-diagram routes.
    if an.is_special() && !an.diagram.is_split() {
        let hp = seifert_plus_dots(&an);
        let hm = seifert_minus(&an);
        match (hp, hm) {
            (Ok(hp), Ok(hm)) => {
                check(
                    "seifert_transpose_identity",
                    hm.data == hp.transpose().data,
                    String::new(),
                );
                match theorem_main_presentation(&an, BasePolicy::SpecialPlus) {
                    Ok(special_main) => match seifert_from_words(&an, &special_main) {
                        Ok((a, b)) => {
                            check("seifert_words_a_is_hminus", a.data == hm.data, String::new());
                            check("seifert_words_b_is_hplus", b.data == hp.data, String::new());
                        }
                        Err(e) => check("seifert_from_words", false, format!("{}", e)),
                    },
                    Err(e) => check("seifert_from_words", false, format!("{}", e)),
                }
                match crate::matrices::invariants::alexander_matrix_special(&an) {
                    Ok(jt) => {
                        if let Ok(a_main) = &alex_main {
                            let n = hp.rows;
                            let block = jt.submatrix(
                                &(0..n).collect::<Vec<_>>(),
                                &(0..n).collect::<Vec<_>>(),
                            );
                            let a_h = normalize_alexander(&block.determinant());
                            check(
                                "alexander_htilde_agrees",
                                &a_h == a_main,
                                format!("main {}, det(H- - tH+) {}", a_main.render(), a_h.render()),
                            );
                        }
                    }
                    Err(e) => check("alexander_matrix_special", false, format!("{}", e)),
                }
                if entry.alternating == Some(true) {
                    check("hnn_sufficient", hnn_sufficient(&hm, &hp), String::new());
                }
            }
            (Err(e), _) | (_, Err(e)) => check("seifert_dots", false, format!("{}", e)),
        }
    }

    let pass = props.iter().all(|p| p.pass);
    EntryReport {
        name: entry.name.clone(),
        pass,
        properties: props,
        millis: t0.elapsed().as_millis(),
    }
}

/// Rebuild the walk steps of a relator part from its fraction sequence for
/// the consequence check (the steps are reconstructible from the stored
/// crossing list and the base).
fn rebuild_steps(
    an: &Analyzed,
    part: &crate::presentation::RelatorPart,
) -> Vec<crate::diagram::GammaStep> {
    let mut steps = Vec::new();
    let mut region = part.seq.base_region;
    for e in &part.seq.entries {
        let corner = (0..4)
            .find(|&k| {
                an.corner_region[e.crossing * 4 + k] == region
                    && an.shading.is_shaded(region)
                    && {
                        let f = crate::presentation::step_fraction(
                            an,
                            &crate::diagram::GammaStep {
                                crossing: e.crossing,
                                from: (e.crossing, k),
                            },
                        );
                        f.numerator == e.numerator && f.denominator == e.denominator
                    }
            })
            .expect("fraction entry reconstructs a step");
        steps.push(crate::diagram::GammaStep {
            crossing: e.crossing,
            from: (e.crossing, corner),
        });
        region = an.corner_region[e.crossing * 4 + (corner + 2) % 4];
    }
    steps
}

/// Randomized identities of the free calculus: the product rule, the
/// fundamental identity, and invariance of specializations under free
/// reduction.
pub fn random_fox_suites(seed: u64, iterations: usize, max_len: usize) -> Vec<PropertyResult> {
    let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    let gens: Vec<Generator> = (0..4).map(|i| Generator::new(format!("g{}", i))).collect();
    let random_word = |rng: &mut ChaCha8Rng, len: usize| -> FreeWord {
        FreeWord::from_letters(
            (0..len)
                .map(|_| Letter {
                    gen: gens[rng.gen_range(0..gens.len())].clone(),
                    exp: if rng.gen_bool(0.5) { 1 } else { -1 },
                })
                .collect(),
        )
    };

    let mut product_rule_ok = true;
    let mut fundamental_ok = true;
    let mut invariance_ok = true;
    for _ in 0..iterations {
        let lu = rng.gen_range(0..=max_len / 2);
        let u = random_word(&mut rng, lu);
        let lv = rng.gen_range(0..=max_len / 2);
        let v = random_word(&mut rng, lv);
        let g = &gens[rng.gen_range(0..gens.len())];
        let uv = u.concat(&v);
        let lhs = fox_derivative(&uv, g);
        let rhs = &fox_derivative(&u, g) + &GroupRingElement::word_mul(&u, &fox_derivative(&v, g));
        if lhs != rhs {
            product_rule_ok = false;
        }

        let lw = rng.gen_range(1..=max_len);
        let w = random_word(&mut rng, lw);
        let mut acc = GroupRingElement::zero();
        for g in &gens {
            let d = fox_derivative(&w, g);
            let gm1 = &GroupRingElement::from_word(FreeWord::gen(g.clone()))
                - &GroupRingElement::one();
            acc = &acc + &(&d * &gm1);
        }
        let expected = &GroupRingElement::from_word(w.clone()) - &GroupRingElement::one();
        if acc != expected {
            fundamental_ok = false;
        }

        // Invariance: any monomial substitution agrees on w and reduce(w).
        let mut m: BTreeMap<Generator, LaurentPoly> = BTreeMap::new();
        for g in &gens {
            let e = rng.gen_range(-3i64..=3);
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            m.insert(g.clone(), LaurentPoly::monomial(1, vec![e], sign));
        }
        let g = &gens[rng.gen_range(0..gens.len())];
        let d1 = fox_derivative(&w, g);
        let d2 = fox_derivative(&w.reduce(), g);
        let s1 = crate::algebra::specialize(&d1, &m, 1);
        let s2 = crate::algebra::specialize(&d2, &m, 1);
        match (s1, s2) {
            (Ok(a), Ok(b)) if a == b => {}
            _ => invariance_ok = false,
        }
    }
    vec![
        PropertyResult {
            name: "fox_product_rule".into(),
            pass: product_rule_ok,
            detail: format!("{} random pairs", iterations),
        },
        PropertyResult {
            name: "fox_fundamental_identity".into(),
            pass: fundamental_ok,
            detail: format!("{} random words", iterations),
        },
        PropertyResult {
            name: "fox_reduction_invariance".into(),
            pass: invariance_ok,
            detail: format!("{} random substitutions", iterations),
        },
    ]
}

pub fn report_json(r: &RunReport) -> String {
    serde_json::to_string_pretty(r).unwrap()
}

pub fn report_text(r: &RunReport) -> String {
    let mut out = String::new();
    for e in &r.entries {
        out.push_str(&format!(
            "{} {} ({} ms)\n",
            if e.pass { "PASS" } else { "FAIL" },
            e.name,
            e.millis
        ));
        for p in &e.properties {
            if !p.pass {
                out.push_str(&format!("  FAIL {}: {}\n", p.name, p.detail));
            }
        }
    }
    for p in &r.random_suites {
        out.push_str(&format!(
            "{} {} ({})\n",
            if p.pass { "PASS" } else { "FAIL" },
            p.name,
            p.detail
        ));
    }
    out.push_str(&format!(
        "overall: {} in {} ms (seed {}, corpus {})\n",
        if r.pass { "PASS" } else { "FAIL" },
        r.millis,
        r.seed,
        &r.input_hash[..12]
    ));
    out
}
