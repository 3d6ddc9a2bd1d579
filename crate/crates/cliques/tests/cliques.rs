use doodle_cliques::*;
use proptest::prelude::*;

fn cls(s: &str) -> CliqueClass {
    s.parse().unwrap()
}

#[test]
fn codimensions() {
    assert_eq!(cls("aaa").codim(), 4);
    assert_eq!(cls("aaabbb").codim(), 8);
    assert_eq!(cls("aaaaa").codim(), 8);
    assert_eq!(cls("a2aa").codim(), 6);
}

#[test]
fn parse_display_round_trip() {
    for s in ["a2aa", "ababab", "a3a", "aaaa:4", "a2aabbb"] {
        let c = cls(s);
        let again: CliqueClass = format!("{c}:{}", c.arity()).parse().unwrap();
        assert_eq!(c, again);
    }
    assert!("a2".parse::<CliqueClass>().is_err());
    assert!("a4bb".parse::<CliqueClass>().is_err());
    assert!("aa2a:4".parse::<CliqueClass>().is_err());
}

#[test]
fn canonical_form_ignores_rotation_and_names() {
    assert_eq!(cls("bbbaaa"), cls("aaabbb"));
    assert_eq!(cls("abbbaa"), cls("aaabbb"));
    assert_eq!(cls("aa2a"), cls("a2aa"));
    assert_eq!(cls("aa2a").to_string(), "aaa2");
}

#[test]
fn offset_reports_rotation() {
    let slots = cls("aaabbb").slots().to_vec();
    let mut rot = slots.clone();
    rot.rotate_left(2);
    let (c, t) = CliqueClass::canonical_with_offset(rot.clone(), 3).unwrap();
    assert_eq!(c.to_string(), "aaabbb");
    for i in 0..6 {
        assert_eq!(c.slots()[i].mult, rot[(i + t) % 6].mult);
    }
}

#[test]
fn complexity_two_and_three() {
    let c2 = classes_of_complexity(3, 2, MultFilter::configurations());
    assert_eq!(c2.len(), 1);
    let c3 = classes_of_complexity(3, 3, MultFilter::configurations());
    assert_eq!(c3.len(), 1);
    let all3: Vec<String> = classes_of_complexity(3, 3, MultFilter::all())
        .iter()
        .map(|c| c.to_string())
        .collect();
    assert_eq!(all3, ["aaaa", "aaa2", "aa3", "a2a2"]);
}

#[test]
fn complexity_four_configurations() {
    let c4 = classes_of_complexity(3, 4, MultFilter::configurations());
    let names: Vec<String> = c4.iter().map(|c| c.to_string()).collect();
    assert_eq!(names, ["aaaaa", "aaabbb", "aababb", "ababab"]);
    let two_groups = c4.iter().filter(|c| c.group_count() == 2).count();
    assert_eq!(two_groups, 3);
}

#[test]
fn complexity_four_one_double_point() {
    let c = classes_of_complexity(3, 4, MultFilter::doubles(1));
    let names: Vec<String> = c.iter().map(|c| c.to_string()).collect();
    assert_eq!(names.len(), 5, "{names:?}");
    assert_eq!(c.iter().filter(|c| c.group_count() == 1).count(), 1);
}

#[test]
fn enumerate_up_to_four() {
    assert_eq!(
        enumerate_classes(3, 4, MultFilter::configurations()).len(),
        6
    );
    // arity 4 starts at complexity 3
    let k4: Vec<String> = enumerate_classes(4, 5, MultFilter::all())
        .iter()
        .map(|c| c.to_string())
        .collect();
    assert_eq!(k4, ["aaaa", "aaaaa", "aaaaaa"]);
}

#[test]
fn symmetry_and_monodromy_sign() {
    let cases = [
        ("aaa", 1, 1),
        ("aaaa", 1, -1),
        ("aaaaa", 1, 1),
        ("ababab", 1, -1),
        ("aaabbb", 3, -1),
        ("aababb", 6, 1),
        ("a2a2", 1, -1),
        ("a2aa", 3, 1),
        ("aaaaa:4", 1, 1),
        ("aaaaaa:4", 1, -1),
    ];
    for (s, r, e) in cases {
        let c = cls(s);
        assert_eq!(c.symmetry_shift(), r, "{s}");
        assert_eq!(c.epsilon_base(), e, "{s}");
    }
    assert_eq!(cls("ababab").symmetry_group_map(), vec![1, 0]);
    assert_eq!(cls("aaabbb").symmetry_group_map(), vec![1, 0]);
}

#[test]
fn mode_counts() {
    for (s, n) in [
        ("aaa", 1),
        ("aaaa", 4),
        ("aaaaa", 20),
        ("aaaabbb", 12),
        ("aaabbb", 2),
    ] {
        let c = cls(s);
        assert_eq!(degeneration_modes(&c).unwrap().len() as u64, n, "{s}");
        assert_eq!(mode_count(&c).unwrap(), n, "{s}");
    }
    assert!(degeneration_modes(&cls("a2aa")).is_err());
}

#[test]
fn single_group_modes_match_closed_form() {
    for a in 3..=6usize {
        let c = CliqueClass::configuration(&vec![0; a], 3).unwrap();
        let expect = (a * (a - 1) * (a - 2) / 6) * (1..=a - 3).product::<usize>();
        assert_eq!(degeneration_modes(&c).unwrap().len(), expect);
    }
}

#[test]
fn process_counts() {
    assert_eq!(degeneration_process_count(&cls("aaaa")).unwrap(), 16);
    assert_eq!(degeneration_process_count(&cls("aaaabbb")).unwrap(), 96);
    assert_eq!(degeneration_process_count(&cls("abaabab")).unwrap(), 96);
    assert_eq!(degeneration_process_count(&cls("aaa")).unwrap(), 2);
}

#[test]
fn hypergraphs() {
    assert!(hypergraph_connected(4, &[vec![0, 1, 2], vec![0, 1, 3]]));
    assert!(hypergraph_connected(5, &[vec![0, 1, 2], vec![2, 3, 4]]));
    assert!(!hypergraph_connected(6, &[vec![0, 1, 2], vec![3, 4, 5]]));
    assert!(!hypergraph_connected(4, &[vec![0, 1, 2]]));
}

#[test]
fn a_series() {
    let s: Vec<String> = ASeries::of_complexity(4, 3)
        .iter()
        .map(|a| a.to_string())
        .collect();
    assert_eq!(s, ["(5)", "(3,3)"]);
    assert_eq!(ASeries::of_complexity(5, 3).len(), 2);
    assert!(ASeries::new(vec![2, 3], 3).is_err());
}

proptest! {
    #[test]
    fn canonicalization_is_idempotent(idx in 0usize..1000, rot in 0usize..8) {
        let all = enumerate_classes(3, 5, MultFilter::all());
        let c = &all[idx % all.len()];
        let mut slots = c.slots().to_vec();
        let n = slots.len();
        slots.rotate_left(rot % n);
        let again = CliqueClass::new(slots, 3).unwrap();
        prop_assert_eq!(&again, c);
    }

    #[test]
    fn processes_are_modes_times_sides(idx in 0usize..100) {
        let all = enumerate_classes(3, 5, MultFilter::configurations());
        let c = &all[idx % all.len()];
        let modes = degeneration_modes(c).unwrap().len() as u64;
        prop_assert_eq!(modes, mode_count(c).unwrap());
        prop_assert_eq!(modes << step_count(c), degeneration_process_count(c).unwrap());
    }
}
