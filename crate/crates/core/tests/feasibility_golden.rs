use neumaier::feasibility::{enumerate, vertex_bound, Status};

const GOLDEN: &str = include_str!("golden/feasibility_k2_10.txt");

fn sweep() -> Vec<String> {
    (2..=10).flat_map(|k| enumerate(k, None)).map(|v| v.summary()).collect()
}

#[test]
fn sweep_matches_golden_file() {
    let golden: Vec<&str> = GOLDEN.lines().filter(|l| !l.trim().is_empty()).collect();
    let actual = sweep();
    for (i, (a, g)) in actual.iter().zip(&golden).enumerate() {
        assert_eq!(a, g, "line {}", i + 1);
    }
    assert_eq!(actual.len(), golden.len());
}

fn survivors(k: i64) -> Vec<String> {
    enumerate(k, None)
        .into_iter()
        .filter(|v| v.is_survivor())
        .map(|v| v.candidate.to_string())
        .collect()
}

#[test]
fn small_valency_survivor_lists() {
    assert_eq!(survivors(2), ["(4,2,0;1,2)"]);
    assert_eq!(survivors(3), ["(6,3,0;1,2)"]);
    assert_eq!(survivors(4), ["(8,4,0;1,2)", "(6,4,2;2,3)", "(9,4,1;1,3)"]);
    assert_eq!(survivors(7), ["(14,7,0;1,2)", "(20,7,2;1,4)"]);
    let nine = survivors(9);
    assert!(nine.contains(&"(28,9,2;1,4)".to_string()));
    assert!(nine.contains(&"(16,9,4;2,4)".to_string()));
}

#[test]
fn annotated_and_unresolved_tuples() {
    let seven = enumerate(7, None);
    let v = seven
        .iter()
        .find(|v| v.candidate.to_string() == "(20,7,2;1,4)")
        .unwrap();
    assert_eq!(v.status, Status::Feasible);
    assert!(v.note.unwrap().contains("not recomputed"));
    let ten = enumerate(10, None);
    for t in ["(27,10,1;1,3)", "(15,10,6;3,5)"] {
        let v = ten.iter().find(|v| v.candidate.to_string() == t).unwrap();
        assert_eq!(v.status, Status::ExistenceUnresolved, "{t}");
    }
}

#[test]
fn vertex_bounds() {
    let bounds: Vec<i64> = (4..=10).map(vertex_bound).collect();
    assert_eq!(bounds, [13, 21, 31, 43, 57, 73, 91]);
}

#[test]
fn max_n_truncates() {
    let all = enumerate(10, None);
    let capped = enumerate(10, Some(20));
    assert!(capped.len() < all.len());
    assert!(capped.iter().all(|v| v.candidate.n <= 20));
}
