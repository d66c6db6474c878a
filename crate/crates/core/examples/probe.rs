use sympl_core::harness::*;
fn main() {
    let checks: Vec<(&str, Box<dyn Fn() -> SuiteReport>)> = vec![
        ("product-formula", Box::new(|| suite_product_formula(5, 10))),
        ("duality", Box::new(|| suite_duality(5, 5))),
        ("sandwich", Box::new(|| suite_sandwich_star(5, 5))),
        ("star-ids", Box::new(|| suite_star_identities(5, 5))),
        ("inequalities", Box::new(|| suite_inequalities(5, 5))),
        ("graph", Box::new(|| suite_graph_lemma(5, 30))),
        ("linalg", Box::new(|| suite_linalg_properties(5, 5))),
    ];
    for (name, f) in checks {
        let t = std::time::Instant::now();
        let r = f();
        eprintln!("{name}: ok={} ({}/{}) in {:?}", r.ok(), r.passed, r.total, t.elapsed());
        for fail in &r.failures { eprintln!("   FAIL: {fail}"); }
    }
    let t = std::time::Instant::now();
    let outs = run_corpus(11, 4, 2, 1);
    eprintln!("corpus(4+2): in {:?}", t.elapsed());
    for o in &outs {
        eprintln!("  idx {}: eq11={} thm={} cor={} sie={} ratio={:.3e}", o.index, o.eq11_ok(), o.theorem_ok(), o.corollaries_ok(), o.siegel_ok(), o.ratio);
    }
    let t = std::time::Instant::now();
    let outs = run_twisted_corpus(13, 3, 1);
    eprintln!("twisted(3): in {:?}", t.elapsed());
    for o in &outs {
        eprintln!("  idx {}: eq11={} thm={} ratio={:.3e}", o.index, o.eq11_ok(), o.theorem_ok(), o.ratio);
    }
}
