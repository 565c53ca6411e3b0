//! Small named graphs used throughout the tests, benches and CLI fixtures.

use crate::graph::Graph;

/// One vertex `w` with a loop `c`.
pub fn single_loop() -> Graph {
    Graph::from_parts(&["w"], &[("c", "w", "w")]).expect("valid fixture")
}

/// Loop `c` at `w` entered from `v` through `a` (`rng(a) = v`, `src(a) = w`).
pub fn loop_with_entrance() -> Graph {
    Graph::from_parts(&["v", "w"], &[("a", "w", "v"), ("c", "w", "w")]).expect("valid fixture")
}

/// Loop `c` at `w` with an exit `e` into the terminus `t`.
pub fn loop_with_exit() -> Graph {
    Graph::from_parts(&["t", "w"], &[("c", "w", "w"), ("e", "t", "w")]).expect("valid fixture")
}

/// Two loops `e` and `f` at `w`.
pub fn figure_eight() -> Graph {
    Graph::from_parts(&["w"], &[("e", "w", "w"), ("f", "w", "w")]).expect("valid fixture")
}

/// Loops `c` at `u` and `d` at `w` with no edges between them.
pub fn two_separate_loops() -> Graph {
    Graph::from_parts(&["u", "w"], &[("c", "u", "u"), ("d", "w", "w")]).expect("valid fixture")
}

/// The path `v0 ← v1 ← … ← v{n-1}` read in continuation order: `v0`
/// continues along `a1` to `v1`, and so on, ending at the terminus.
pub fn line(n: usize) -> Graph {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String, String)> =
        (1..n).map(|i| (format!("a{i}"), names[i].clone(), names[i - 1].clone())).collect();
    Graph::new(names, edges).expect("valid fixture")
}

/// The full rooted binary tree truncated at `depth`. The root is `v`; the
/// children of `vσ` are `vσ0` and `vσ1`, reached from it by edges `eσ0`,
/// `eσ1` whose range is the parent.
pub fn binary_tree(depth: usize) -> Graph {
    let mut vertices = vec!["v".to_string()];
    let mut edges = Vec::new();
    let mut frontier = vec![String::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for word in &frontier {
            for bit in ['0', '1'] {
                let child = format!("{word}{bit}");
                vertices.push(format!("v{child}"));
                edges.push((format!("e{child}"), format!("v{child}"), format!("v{word}")));
                next.push(child);
            }
        }
        frontier = next;
    }
    Graph::new(vertices, edges).expect("valid fixture")
}

/// Every named fixture, in a fixed order.
pub fn canonical() -> Vec<(&'static str, Graph)> {
    vec![
        ("single-loop", single_loop()),
        ("loop-with-entrance", loop_with_entrance()),
        ("loop-with-exit", loop_with_exit()),
        ("figure-eight", figure_eight()),
        ("two-separate-loops", two_separate_loops()),
        ("line-3", line(3)),
        ("binary-tree-2", binary_tree(2)),
    ]
}
