use std::collections::BTreeSet;

use super::{Graph, GraphError};

/// Largest pattern accepted by [`find_induced_copies`].
pub const MAX_PATTERN_ORDER: usize = 9;

/// All injective maps `pattern -> host` preserving edges and non-edges.
/// `map[i]` is the host vertex assigned to pattern vertex `i`; maps come out
/// in lexicographic order.
pub fn find_induced_copies(pattern: &Graph, host: &Graph) -> Result<Vec<Vec<usize>>, GraphError> {
    if pattern.order() > MAX_PATTERN_ORDER {
        return Err(GraphError::PatternTooLarge {
            size: pattern.order(),
            limit: MAX_PATTERN_ORDER,
        });
    }
    let mut out = Vec::new();
    Search::new(pattern, host).run(&mut |m| {
        out.push(m.to_vec());
        true
    });
    out.sort();
    Ok(out)
}

/// Distinct image vertex sets of the induced copies, each sorted.
pub fn induced_copy_sets(pattern: &Graph, host: &Graph) -> Result<Vec<Vec<usize>>, GraphError> {
    let sets: BTreeSet<Vec<usize>> = find_induced_copies(pattern, host)?
        .into_iter()
        .map(|mut m| {
            m.sort_unstable();
            m
        })
        .collect();
    Ok(sets.into_iter().collect())
}

/// First induced copy found, without the pattern-size limit.
pub fn first_induced_copy(pattern: &Graph, host: &Graph) -> Option<Vec<usize>> {
    let mut found = None;
    Search::new(pattern, host).run(&mut |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

struct Search<'a> {
    pattern: &'a Graph,
    host: &'a Graph,
    order: Vec<usize>,
    pdeg: Vec<usize>,
    hdeg: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(pattern: &'a Graph, host: &'a Graph) -> Self {
        let pn = pattern.order();
        let pdeg: Vec<usize> = (0..pn).map(|v| pattern.degree(v)).collect();
        // Place vertices with the most already-placed neighbours first.
        let mut order = Vec::with_capacity(pn);
        let mut placed = vec![false; pn];
        for _ in 0..pn {
            let next = (0..pn)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let links = order.iter().filter(|&&u| pattern.has_edge(u, v)).count();
                    (links, pdeg[v], std::cmp::Reverse(v))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        Search {
            pattern,
            host,
            order,
            pdeg,
            hdeg: (0..host.order()).map(|v| host.degree(v)).collect(),
            map: vec![usize::MAX; pn],
            used: vec![false; host.order()],
        }
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) {
        if self.pattern.order() > self.host.order() {
            return;
        }
        self.step(0, visit);
    }

    fn step(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.map);
        }
        let (pn, hn) = (self.pattern.order(), self.host.order());
        let p = self.order[depth];
        for h in 0..hn {
            if self.used[h]
                || self.hdeg[h] < self.pdeg[p]
                || hn - 1 - self.hdeg[h] < pn - 1 - self.pdeg[p]
            {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&q| {
                self.pattern.has_edge(p, q) == self.host.has_edge(h, self.map[q])
            });
            if !consistent {
                continue;
            }
            self.map[p] = h;
            self.used[h] = true;
            let go_on = self.step(depth + 1, visit);
            self.used[h] = false;
            self.map[p] = usize::MAX;
            if !go_on {
                return false;
            }
        }
        true
    }
}
