//! Merging equitable colorings of connected components into one equitable
//! coloring of the whole graph (wrap-around assignment of large classes).

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Checks that `coloring` is a proper coloring of `g` with colors `0..m` whose
/// class sizes differ by at most one.
pub fn is_equitable(g: &Graph, coloring: &[usize], m: usize) -> bool {
    check_equitable(g, coloring, m).is_ok()
}

fn check_equitable(g: &Graph, coloring: &[usize], m: usize) -> Result<Vec<usize>> {
    if coloring.len() != g.n() {
        return Err(Error::NotEquitableInput(format!(
            "{} colors for {} vertices",
            coloring.len(),
            g.n()
        )));
    }
    if let Some(&c) = coloring.iter().find(|&&c| c >= m) {
        return Err(Error::NotEquitableInput(format!(
            "color {c} out of range 0..{m}"
        )));
    }
    if let Some((u, v)) = g
        .edges()
        .into_iter()
        .find(|&(u, v)| coloring[u] == coloring[v])
    {
        return Err(Error::NotEquitableInput(format!(
            "edge {{{u}, {v}}} is monochromatic"
        )));
    }
    let mut sizes = vec![0usize; m];
    for &c in coloring {
        sizes[c] += 1;
    }
    let lo = g.n() / m;
    if sizes.iter().any(|&s| s != lo && s != lo + 1) {
        return Err(Error::NotEquitableInput(format!(
            "class sizes {sizes:?} are not equitable"
        )));
    }
    Ok(sizes)
}

/// Combines equitable `m`-colorings of the given components.
///
/// Vertices are numbered by concatenating the components in order. Component
/// `i` has `l_i` large classes; they are sent to the `l_i` colors following
/// those used by the previous components, modulo `m`, and its small classes
/// fill the remaining colors in order.
pub fn merge_component_colorings(
    components: &[(Graph, Vec<usize>)],
    m: usize,
) -> Result<Vec<usize>> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    let total: usize = components.iter().map(|(g, _)| g.n()).sum();
    if !total.is_multiple_of(m) {
        return Err(Error::Divisibility { n: total, k: m });
    }
    let mut out = Vec::with_capacity(total);
    let mut offset = 0usize;
    for (g, coloring) in components {
        let sizes = check_equitable(g, coloring, m)?;
        let lo = g.n() / m;
        let large: Vec<usize> = (0..m).filter(|&c| sizes[c] > lo).collect();
        let small: Vec<usize> = (0..m).filter(|&c| sizes[c] == lo).collect();
        let mut map = vec![0usize; m];
        let mut used = vec![false; m];
        for (j, &c) in large.iter().enumerate() {
            let target = (offset + j) % m;
            map[c] = target;
            used[target] = true;
        }
        let mut free = (0..m).filter(|&c| !used[c]);
        for &c in &small {
            map[c] = free.next().expect("one free color per small class");
        }
        offset = (offset + large.len()) % m;
        out.extend(coloring.iter().map(|&c| map[c]));
    }
    Ok(out)
}
