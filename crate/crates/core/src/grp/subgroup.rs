use super::finite::FiniteGroup;

/// Sorted element list of the subgroup generated by `gens`.
pub fn generated_subgroup(g: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; g.order()];
    inside[0] = true;
    let mut members = vec![0usize];
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        for &s in gens {
            let y = g.mul(x, s);
            if !inside[y] {
                inside[y] = true;
                members.push(y);
            }
        }
        i += 1;
    }
    members.sort_unstable();
    members
}

/// The commutator subgroup of the subgroup with element list `h`.
pub fn derived_subgroup(g: &FiniteGroup, h: &[usize]) -> Vec<usize> {
    let mut comms: Vec<usize> = h.iter().flat_map(|&a| h.iter().map(move |&b| g.commutator(a, b))).collect();
    comms.sort_unstable();
    comms.dedup();
    generated_subgroup(g, &comms)
}

/// Derived series `G > G' > G'' > ...` down to the first repeated term.
pub fn derived_series(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut series = vec![(0..g.order()).collect::<Vec<_>>()];
    loop {
        let next = derived_subgroup(g, series.last().unwrap());
        if next.len() == series.last().unwrap().len() {
            return series;
        }
        series.push(next);
    }
}

pub fn is_solvable(g: &FiniteGroup) -> bool {
    derived_series(g).last().unwrap().len() == 1
}

/// Greedy generating set: scans elements in index order and keeps each one
/// not already in the span of those kept.
pub fn generating_sequence(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![0usize];
    for x in 1..g.order() {
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = generated_subgroup(g, &gens);
            if span.len() == g.order() {
                break;
            }
        }
    }
    gens
}
