use golfer_core::analysis::{
    check_clique_stuck_characterization, check_extendable, check_extendable_with_budget,
    guarantee_bound, repair_plus_one, verify_tournament,
};
use golfer_core::constructions::{
    construct_clique_adversary, construct_cycle_adversary_mod2, construct_cycle_adversary_mod4,
    construct_cycle_adversary_odd, Construction,
};
use golfer_core::{Error, Rational};

fn assert_valid_stuck(c: &Construction, rounds: usize) {
    let rep = verify_tournament(&c.tournament);
    assert!(rep.valid, "{:?}", rep.violations);
    assert_eq!(c.tournament.len(), rounds);
    assert!(check_extendable(&c.tournament).unwrap().is_none());
}

#[test]
fn clique_adversary_24_3() {
    let c = construct_clique_adversary(24, 3).unwrap();
    assert_valid_stuck(&c, 4);
    assert!(c.split.cross_edges_used(&c.tournament).is_empty());
    let g = c.tournament.feasibility_graph();
    assert!(g.is_independent(&c.split.a()));
    let verdict = check_clique_stuck_characterization(&c.tournament).unwrap();
    assert!(verdict.is_stuck && verdict.has_big_clique);

    let repaired = repair_plus_one(&c.tournament).unwrap();
    assert_eq!(repaired.len(), 5);
    assert!(verify_tournament(&repaired).valid);
    // Only the last round was rebuilt.
    assert_eq!(&repaired.rounds()[..3], &c.tournament.rounds()[..3]);
}

#[test]
fn cycle_adversary_odd_cases() {
    let c = construct_cycle_adversary_odd(3, 1).unwrap();
    assert_eq!(c.tournament.n(), 24);
    assert_eq!(c.split.a().len(), 9);
    assert_valid_stuck(&c, 4);
    let b = guarantee_bound::<Rational>(24, c.tournament.shape()).unwrap();
    assert_eq!(b.conditional_guarantee.unwrap().rounds, 4);

    let c = construct_cycle_adversary_odd(3, 0).unwrap();
    assert_eq!(c.tournament.n(), 6);
    assert_valid_stuck(&c, 1);

    let c = construct_cycle_adversary_odd(5, 0).unwrap();
    assert_eq!(c.tournament.n(), 10);
    assert_valid_stuck(&c, 2);
}

#[test]
fn cycle_adversary_mod4_cases() {
    for (i, rounds) in [(3, 3), (5, 5)] {
        let c = construct_cycle_adversary_mod4(4, i).unwrap();
        assert_valid_stuck(&c, rounds);
        let g = c.tournament.feasibility_graph();
        assert_eq!(g.components().len(), 2);
        assert!(g.components().iter().all(|comp| g.is_clique(comp)));
    }
    assert!(matches!(
        construct_cycle_adversary_mod4(4, 4),
        Err(Error::Parity(_))
    ));
    assert!(matches!(
        construct_cycle_adversary_mod4(6, 3),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn cycle_adversary_mod2_54() {
    let c = construct_cycle_adversary_mod2(6, 9).unwrap();
    let t = &c.tournament;
    assert_eq!(t.n(), 54);
    assert_eq!(t.len(), 15);
    assert!(verify_tournament(t).valid);
    let g = t.feasibility_graph();
    let a = c.split.a();
    let cross: Vec<_> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| a.contains(u) != a.contains(v))
        .collect();
    assert_eq!(cross.len(), 1, "{cross:?}");
    let cross_after = |r: usize| {
        let g = t.truncated(r).feasibility_graph();
        g.edges()
            .into_iter()
            .filter(|&(u, v)| a.contains(u) != a.contains(v))
            .count()
    };
    // The base rounds leave the matching a_x b_x; the first extension leaves n/k of it.
    assert_eq!(cross_after(13), 27);
    assert_eq!(cross_after(14), 9);
    // The lone cross edge is a bridge; the sides have 27 vertices each.
    assert_eq!(check_extendable_with_budget(t, 1_000_000).unwrap(), None);
}
