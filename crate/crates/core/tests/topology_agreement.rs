use kpclass::family::small_graphs;
use kpclass::graph::scc_decompose;
use kpclass::par;
use kpclass::paths::LassoPath;
use kpclass::topology::{
    check_condition_m, check_condition_m_automaton, check_condition_n, check_condition_n_automaton, orbit_closure,
    orbit_representatives, oracle_condition, simple_cycles, verify_witness, Condition, DEFAULT_ORACLE_DEPTH,
};

#[test]
fn three_deciders_agree_on_small_graphs() {
    let family = small_graphs(3, 4);
    let disagreements: Vec<String> = par::map(&family, |g| {
        let mut bad = Vec::new();
        for cond in [Condition::M, Condition::N] {
            let (s, a) = match cond {
                Condition::M => (check_condition_m(g), check_condition_m_automaton(g)),
                Condition::N => (check_condition_n(g), check_condition_n_automaton(g)),
            };
            let o = oracle_condition(g, cond, DEFAULT_ORACLE_DEPTH);
            if s.holds != a.holds || (o.is_conclusive() && o.holds != s.holds) {
                bad.push(format!("{cond:?} {:?}: s={} a={} o={}", g.to_document(), s.holds, a.holds, o.holds));
            }
            for v in [&s, &a, &o] {
                if let Some(w) = &v.witness {
                    if !verify_witness(g, cond, w) {
                        bad.push(format!("{cond:?} {:?}: bad witness {w:?}", g.to_document()));
                    }
                }
            }
        }
        bad
    })
    .into_iter()
    .flatten()
    .collect();
    assert!(disagreements.is_empty(), "{} disagreements:\n{}", disagreements.len(), disagreements.join("\n"));
    eprintln!("{} graphs", family.len());
}

#[test]
fn orbit_closures_match_the_conditions() {
    let family = small_graphs(3, 4);
    for g in &family {
        let n = check_condition_n(g);
        let m = check_condition_m(g);
        if !n.holds {
            // boundary paths are no longer all lassos; the witness stands in for the closure data
            assert!(!m.holds);
            assert!(verify_witness(g, Condition::N, n.witness.as_ref().unwrap()));
            let c = LassoPath::periodic(g, &simple_cycles(g, 1)[0]).unwrap();
            assert!(orbit_closure(g, &c).is_err());
            continue;
        }
        let reps = orbit_representatives(g, &scc_decompose(g));
        let closures: Vec<_> = reps.iter().map(|x| orbit_closure(g, x).unwrap()).collect();
        assert!(closures.iter().all(|c| c.is_locally_closed), "{:?}", g.to_document());
        assert_eq!(m.holds, closures.iter().all(|c| c.is_closed), "{:?}", g.to_document());
        for c in &closures {
            assert!(c.members.contains(&c.orbit));
            assert!(c.members.iter().all(|r| reps.contains(r)));
        }
    }
}
