use dehnkit::corpus;
use dehnkit::matrices::invariants::*;
use dehnkit::presentation::{theorem_main_presentation, BasePolicy};

fn main() {
    let entries = corpus::bundled();
    let e = entries.iter().find(|e| e.name == "random_alt_02").unwrap();
    println!("pd: {}", e.pd);
    let an = dehnkit::Analyzed::new(&e.pd, e.outer).unwrap();
    println!("special: {} split: {}", an.is_special(), an.diagram.is_split());
    println!("u_regions {:?} s_regions {:?}", an.shading.u_regions, an.shading.s_regions);
    println!("etas: {:?}", (0..an.diagram.crossing_count()).map(|c| an.eta(c)).collect::<Vec<_>>());
    for c in 0..an.diagram.crossing_count() {
        println!("crossing {} unshaded corners {:?}", c, an.unshaded_corner_regions(c));
    }
    let hp = seifert_plus_dots(&an).unwrap();
    let hm = seifert_minus(&an).unwrap();
    println!("H+ = {}", hp.render_text());
    println!("H- = {}", hm.render_text());
    let main = theorem_main_presentation(&an, BasePolicy::SpecialPlus).unwrap();
    for r in &main.presentation.relators {
        println!("relator region {:?}: {}", r.region, r.word);
        println!("  raw: {}", r.raw);
        println!("  fractions: {:?}", r.parts[0].seq.entries);
    }
    match seifert_from_words(&an, &main) {
        Ok((a, b)) => {
            println!("A = {}", a.render_text());
            println!("B = {}", b.render_text());
        }
        Err(err) => println!("seifert_from_words error: {}", err),
    }
    // special labels
    for &s in &an.shading.s_regions {
        println!("label({}) = {:?}", s, an.special_label(s));
    }
}
