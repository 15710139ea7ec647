//! Cycle tournaments that get stuck at the conditional bound.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bitset::VertexSet;
use crate::constructions::designs::{
    bipartite_cycle_factorization, embed_round, oberwolfach_solution, DEFAULT_DESIGN_BUDGET,
};
use crate::constructions::{Construction, VertexSplit};
use crate::error::{Error, Result};
use crate::factor::{find_factor, Block, FactorShape, Round};
use crate::graph::Graph;
use crate::tournament::Tournament;

/// Attempts of the second extension round before giving up.
pub const EXTENSION_RETRIES: u64 = 32;

/// Odd `k`, `n = 2k(1 + k + .. + k^i)`. `A` (of size `k^(i+1)`) and `B` each
/// play an Oberwolfach solution for `(|A|-1)/2` rounds; then `A` is
/// independent and no `C_k`-factor can cover it.
pub fn construct_cycle_adversary_odd(k: usize, i: usize) -> Result<Construction> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::Parity(format!(
            "odd case needs an odd k >= 3, got {k}"
        )));
    }
    let sum: usize = (0..=i as u32).map(|j| k.pow(j)).sum();
    let n = 2 * k * sum;
    let a_len = k.pow(i as u32 + 1);
    let b_len = n - a_len;
    let shape = FactorShape::cycle(k)?;
    Graph::empty(n)?;
    let (ow_a, src_a) = oberwolfach_solution(a_len, k, Some(DEFAULT_DESIGN_BUDGET))?;
    let (ow_b, src_b) = oberwolfach_solution(b_len, k, Some(DEFAULT_DESIGN_BUDGET))?;
    let rounds_needed = (a_len - 1) / 2;
    let a: Vec<usize> = (0..a_len).collect();
    let b: Vec<usize> = (a_len..n).collect();
    let mut provenance = vec![
        format!("n = {n}, A = 0..{a_len}, B = {a_len}..{n}"),
        format!("A: Oberwolfach ({a_len},{k}) from {src_a}"),
        format!(
            "B: Oberwolfach ({b_len},{k}) from {src_b}, first {rounds_needed} of {} rounds",
            ow_b.len()
        ),
    ];
    let mut rounds = Vec::with_capacity(rounds_needed);
    for t in 0..rounds_needed {
        let mut lists = embed_round(&ow_a.rounds()[t], &a);
        lists.extend(embed_round(&ow_b.rounds()[t], &b));
        rounds.push(Round::from_vertex_lists(shape, n, lists)?);
        provenance.push(format!("round {t}: round {t} on A and on B"));
    }
    Ok(Construction {
        tournament: Tournament::from_rounds(shape, n, rounds)?,
        split: VertexSplit::new(n, a)?,
        provenance,
    })
}

/// `k = 0 mod 4`, `n = i k` with `i` odd. The rounds factorize the complete
/// bipartite graph between the halves; afterwards only the two `K_{n/2}`
/// remain and `n/2` is not a multiple of `k`.
pub fn construct_cycle_adversary_mod4(k: usize, i: usize) -> Result<Construction> {
    if k < 4 || !k.is_multiple_of(4) {
        return Err(Error::Precondition(format!(
            "k = {k} is not a positive multiple of 4"
        )));
    }
    if i.is_multiple_of(2) {
        return Err(Error::Parity(format!("i = {i} must be odd")));
    }
    let n = i * k;
    Graph::empty(n)?;
    let h = n / 2;
    let shape = FactorShape::cycle(k)?;
    let (rounds, source) = bipartite_cycle_factorization(h, k, Some(DEFAULT_DESIGN_BUDGET))?;
    let mut provenance = vec![format!(
        "C_{k}-factorization of K_({h},{h}) between 0..{h} and {h}..{n} from {source}"
    )];
    provenance.extend((0..rounds.len()).map(|t| format!("round {t}: bipartite factor {t}")));
    Ok(Construction {
        tournament: Tournament::from_rounds(shape, n, rounds)?,
        split: VertexSplit::new(n, (0..h).collect())?,
        provenance,
    })
}

/// Doubles each `k/2`-cycle `(c_1, .., c_m)` on `0..h` into the `k`-cycle
/// `(a_c1, b_c2, a_c3, .., a_cm, b_c1, a_c2, .., b_cm)` with `a_x = x` and
/// `b_x = h + x`. Needs `m` odd.
pub fn base_round_cycles(cycles: &[Vec<usize>], h: usize) -> Vec<Vec<usize>> {
    cycles
        .iter()
        .map(|c| {
            let side = |t: usize, first: bool| {
                if t.is_multiple_of(2) == first {
                    c[t]
                } else {
                    h + c[t]
                }
            };
            let mut out: Vec<usize> = (0..c.len()).map(|t| side(t, true)).collect();
            out.extend((0..c.len()).map(|t| side(t, false)));
            out
        })
        .collect()
}

/// The first extension cycle on a group `x_1..x_m` (`m` odd):
/// `a_1, b_1, b_2, a_2, a_3, b_3, .., b_(m-2), b_(m-1), b_m, a_m, a_(m-1)`.
/// Uses every matching edge `a_x b_x` of the group except `x_(m-1)`.
pub fn first_extension_cycle(group: &[usize], h: usize) -> Vec<usize> {
    let m = group.len();
    let (a, b) = (|t: usize| group[t], |t: usize| h + group[t]);
    let mut out = Vec::with_capacity(2 * m);
    for t in 0..m - 2 {
        if t % 2 == 0 {
            out.extend([a(t), b(t)]);
        } else {
            out.extend([b(t), a(t)]);
        }
    }
    out.extend([b(m - 2), b(m - 1), a(m - 1), a(m - 2)]);
    out
}

/// `k = 2 mod 4`, `k >= 6`, `n = i k` with `i` odd and `i >= 9`, seed 0.
pub fn construct_cycle_adversary_mod2(k: usize, i: usize) -> Result<Construction> {
    construct_cycle_adversary_mod2_with(k, i, 0)
}

/// Base tournament of `(n-2)/4` rounds using only edges between the halves,
/// leaving the perfect matching `a_x b_x`; one round that removes all but one
/// matching edge per group; one round built around pairs of the remaining
/// matching edges that leaves a single edge between the halves.
///
/// The mixed cycles of the last round split their `k - 4` inner vertices
/// unevenly between `A` and `B` so that the leftover parts of both halves are
/// multiples of `k`. Dead ends in that round are retried with orders shuffled
/// from `seed`.
pub fn construct_cycle_adversary_mod2_with(k: usize, i: usize, seed: u64) -> Result<Construction> {
    if k < 6 || k % 4 != 2 {
        return Err(Error::Precondition(format!(
            "k = {k} must be 2 mod 4 and at least 6"
        )));
    }
    if i.is_multiple_of(2) || i < 9 {
        return Err(Error::Precondition(format!(
            "i = {i} must be odd and at least 9 (n >= 9k)"
        )));
    }
    let n = i * k;
    Graph::empty(n)?;
    let h = n / 2;
    let km = k / 2;
    let shape = FactorShape::cycle(k)?;
    let (ow, source) = oberwolfach_solution(h, km, Some(DEFAULT_DESIGN_BUDGET))?;
    let mut provenance = vec![format!(
        "A = 0..{h}, B = {h}..{n}; Oberwolfach ({h},{km}) from {source}"
    )];

    let mut t = Tournament::empty(shape, n)?;
    for (r, owr) in ow.rounds().iter().enumerate() {
        let round = Round::from_vertex_lists(shape, n, base_round_cycles(&owr.as_lists(), h))?;
        t = t.extend(round)?;
        provenance.push(format!("round {r}: doubled Oberwolfach round {r}"));
    }

    let groups: Vec<Vec<usize>> = (0..i).map(|g| (g * km..(g + 1) * km).collect()).collect();
    let ext1 = groups.iter().map(|g| first_extension_cycle(g, h)).collect();
    t = t.extend(Round::from_vertex_lists(shape, n, ext1)?)?;
    provenance.push(format!(
        "round {}: first extension, one cycle per group of {km}",
        t.len() - 1
    ));

    let split = VertexSplit::new(n, (0..h).collect())?;
    let g = t.feasibility_graph();
    let cross = count_cross(&g, &split);
    if cross != i {
        return Err(Error::StructureMismatch(format!(
            "{cross} edges between the halves after the first extension, expected {i}"
        )));
    }

    let mut last_err = None;
    for attempt in 0..EXTENSION_RETRIES {
        let mut rng = (attempt > 0).then(|| ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt)));
        match second_extension(&g, &groups, h, k, rng.as_mut()) {
            Ok(round) => {
                t = t.extend(round)?;
                provenance.push(format!(
                    "round {}: second extension (attempt {attempt}), {} mixed cycles",
                    t.len() - 1,
                    (i - 1) / 2
                ));
                let left = count_cross(&t.feasibility_graph(), &split);
                if left != 1 {
                    return Err(Error::StructureMismatch(format!(
                        "{left} edges between the halves remain, expected 1"
                    )));
                }
                return Ok(Construction {
                    tournament: t,
                    split,
                    provenance,
                });
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::StructureMismatch("second extension failed".into())))
}

fn count_cross(g: &Graph, split: &VertexSplit) -> usize {
    let a = split.a();
    g.edges()
        .into_iter()
        .filter(|&(u, v)| a.contains(u) != a.contains(v))
        .count()
}

/// Number of `A` vertices (ends included) in each mixed cycle.
fn mixed_a_sizes(mixed: usize, k: usize) -> Vec<usize> {
    let km = k / 2;
    let lo = 2 * mixed;
    let hi = (k - 2) * mixed;
    // Total must be km mod k so that the rest of A splits into k-cycles.
    let balanced = mixed * km;
    let target = if (balanced % k) == km % k {
        balanced
    } else if balanced >= lo + km {
        balanced - km
    } else {
        balanced + km
    };
    debug_assert!(target >= lo && target <= hi);
    let base = target / mixed;
    let extra = target % mixed;
    (0..mixed).map(|z| base + usize::from(z < extra)).collect()
}

fn second_extension(
    g: &Graph,
    groups: &[Vec<usize>],
    h: usize,
    k: usize,
    mut rng: Option<&mut ChaCha8Rng>,
) -> Result<Round> {
    let n = 2 * h;
    let i = groups.len();
    let km = k / 2;
    let shape = FactorShape::cycle(k)?;
    let matched: Vec<usize> = groups.iter().map(|g| g[km - 2]).collect();
    let mut avail_a: VertexSet = (0..h).collect();
    let mut avail_b: VertexSet = (h..n).collect();
    for &x in &matched {
        avail_a.remove(x);
        avail_b.remove(h + x);
    }
    let mixed = (i - 1) / 2;
    let sizes = mixed_a_sizes(mixed, k);
    let mut cycles = Vec::with_capacity(i);
    let mut order: Vec<usize> = (0..n).collect();
    for z in 0..mixed {
        if let Some(r) = rng.as_deref_mut() {
            order.shuffle(r);
        }
        let (l, r) = (matched[2 * z], matched[2 * z + 1]);
        let a_inner = sizes[z] - 2;
        let b_inner = k - 4 - a_inner;
        let pa = find_path(g, l, r, a_inner, &avail_a, &order).ok_or_else(|| {
            Error::StructureMismatch(format!(
                "no path a_{l} -> a_{r} with {a_inner} inner vertices"
            ))
        })?;
        let pb = find_path(g, h + r, h + l, b_inner, &avail_b, &order).ok_or_else(|| {
            Error::StructureMismatch(format!(
                "no path b_{r} -> b_{l} with {b_inner} inner vertices"
            ))
        })?;
        for &v in &pa {
            avail_a.remove(v);
        }
        for &v in &pb {
            avail_b.remove(v);
        }
        let mut cyc = vec![l];
        cyc.extend(&pa);
        cyc.extend([r, h + r]);
        cyc.extend(&pb);
        cyc.push(h + l);
        cycles.push(cyc);
    }
    // The unpaired matching vertex of the last group joins the leftovers.
    avail_a.insert(matched[i - 1]);
    avail_b.insert(h + matched[i - 1]);
    for side in [avail_a, avail_b] {
        let mut verts: Vec<usize> = side.iter().collect();
        if let Some(r) = rng.as_deref_mut() {
            verts.shuffle(r);
        }
        let sub = g.induced(&verts)?;
        let factor = find_factor(&sub, shape)?.ok_or_else(|| {
            Error::StructureMismatch(format!(
                "leftover of {} vertices has no C_{k}-factor",
                verts.len()
            ))
        })?;
        cycles.extend(
            factor
                .blocks()
                .iter()
                .map(|b| b.vertices().iter().map(|&x| verts[x]).collect::<Vec<_>>()),
        );
    }
    let blocks = cycles
        .into_iter()
        .map(Block::cycle)
        .collect::<Result<Vec<_>>>()?;
    Round::new(shape, n, blocks)
}

/// Inner vertices of a path `from -> .. -> to` with exactly `inner` vertices
/// taken from `avail`, tried in `order`.
fn find_path(
    g: &Graph,
    from: usize,
    to: usize,
    inner: usize,
    avail: &VertexSet,
    order: &[usize],
) -> Option<Vec<usize>> {
    fn go(
        g: &Graph,
        cur: usize,
        to: usize,
        left: usize,
        avail: &mut VertexSet,
        order: &[usize],
        path: &mut Vec<usize>,
    ) -> bool {
        if left == 0 {
            return g.has_edge(cur, to);
        }
        for &v in order {
            if !avail.contains(v) || !g.has_edge(cur, v) {
                continue;
            }
            if left == 1 && !g.has_edge(v, to) {
                continue;
            }
            avail.remove(v);
            path.push(v);
            if go(g, v, to, left - 1, avail, order, path) {
                return true;
            }
            path.pop();
            avail.insert(v);
        }
        false
    }
    let mut avail = *avail;
    avail.remove(from);
    avail.remove(to);
    let mut path = Vec::with_capacity(inner);
    go(g, from, to, inner, &mut avail, order, &mut path).then_some(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{check_extendable, verify_tournament};

    #[test]
    fn doubling_matches_the_ten_cycle_picture() {
        // a_1..a_5 = 0..4, b_x = 10 + x
        let out = base_round_cycles(&[vec![0, 1, 2, 3, 4]], 10);
        assert_eq!(out[0], vec![0, 11, 2, 13, 4, 10, 1, 12, 3, 14]);
    }

    #[test]
    fn first_extension_matches_the_ten_cycle_picture() {
        let out = first_extension_cycle(&[0, 1, 2, 3, 4], 10);
        assert_eq!(out, vec![0, 10, 11, 1, 2, 12, 13, 14, 4, 3]);
        let six = first_extension_cycle(&[0, 1, 2], 10);
        assert_eq!(six, vec![0, 10, 11, 12, 2, 1]);
    }

    #[test]
    fn mixed_sizes_fix_divisibility() {
        for (i, k) in [(9, 6), (11, 6), (13, 6), (9, 10), (11, 10), (9, 14)] {
            let km = k / 2;
            let sizes = mixed_a_sizes((i - 1) / 2, k);
            let used: usize = sizes.iter().sum();
            assert!(sizes.iter().all(|&s| (2..=k - 2).contains(&s)));
            assert_eq!((i * km - used) % k, 0, "i = {i}, k = {k}");
            let used_b: usize = sizes.iter().map(|s| k - s).sum();
            assert_eq!((i * km - used_b) % k, 0);
        }
    }

    #[test]
    fn odd_case_smallest() {
        let c = construct_cycle_adversary_odd(3, 0).unwrap();
        assert_eq!(c.tournament.len(), 1);
        assert!(check_extendable(&c.tournament).unwrap().is_none());
        let c5 = construct_cycle_adversary_odd(5, 0).unwrap();
        assert_eq!(c5.tournament.n(), 10);
        assert_eq!(c5.tournament.len(), 2);
        assert!(check_extendable(&c5.tournament).unwrap().is_none());
    }

    #[test]
    fn mod4_case_twenty() {
        let c = construct_cycle_adversary_mod4(4, 5).unwrap();
        assert_eq!(c.tournament.len(), 5);
        assert!(verify_tournament(&c.tournament).valid);
        assert!(check_extendable(&c.tournament).unwrap().is_none());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(construct_cycle_adversary_odd(4, 1).is_err());
        assert!(construct_cycle_adversary_mod4(6, 3).is_err());
        assert!(construct_cycle_adversary_mod4(4, 2).is_err());
        assert!(construct_cycle_adversary_mod2(6, 7).is_err());
        assert!(construct_cycle_adversary_mod2(8, 9).is_err());
    }
}
