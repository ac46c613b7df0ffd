//! Instance generators.
//!
//! Exhaustive streams enumerate every table satisfying the axioms. Random
//! streams give each instance its own ChaCha stream, keyed by the batch seed
//! and the instance index, so any instance can be rebuilt without replaying
//! its predecessors.

use std::collections::BTreeSet;

use hyperconv_core::setcalc::nonempty_subsets;
use hyperconv_core::{CapSpace, Carrier, ConvSpace, Kernel, Value};
use itertools::Itertools;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::format::Space;

/// Largest carrier for exhaustive convergence enumeration.
pub const CONV_EXHAUSTIVE_MAX: usize = 3;
/// Largest carrier for exhaustive approach-table enumeration.
pub const CAP_EXHAUSTIVE_MAX: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub id: String,
    pub space: Space,
    /// Seeds sampling done while checking this instance.
    pub seed: u64,
}

/// The value grid of the randomized suites.
pub fn default_grid() -> Vec<Value> {
    ["0", "1/2", "1", "2", "inf"].iter().map(|s| s.parse().expect("grid literal")).collect()
}

pub fn small_grid() -> Vec<Value> {
    vec![Value::ZERO, Value::ONE, Value::INFINITY]
}

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// For each point `x`, the admissible sets of kernels converging to `x`:
/// down-closed (a smaller kernel is a coarser filter) and, when centered,
/// containing `{x}`. Each option is a bitmask over kernel indices.
pub fn convergence_options(n: usize, centered: bool) -> Vec<Vec<u64>> {
    assert!(n <= 4, "option enumeration is limited to 4 points");
    let kernels: Vec<Kernel> = nonempty_subsets(n).collect();
    let slot = |k: Kernel| k.index() - 1;
    let down_closed = |s: u64| {
        kernels.iter().all(|&k| {
            s & (1 << slot(k)) == 0
                || k.points().all(|p| {
                    let sub = Kernel::from_bits(k.bits() & !(1 << p));
                    sub.is_empty() || s & (1 << slot(sub)) != 0
                })
        })
    };
    let count = 1u64 << kernels.len();
    let all: Vec<u64> = (0..count).filter(|&s| down_closed(s)).collect();
    (0..n)
        .map(|x| {
            let bit = 1 << slot(Kernel::singleton(x));
            all.iter().copied().filter(|&s| !centered || s & bit != 0).collect()
        })
        .collect()
}

fn conv_from_options(n: usize, choice: &[u64]) -> ConvSpace {
    ConvSpace::from_fn(Carrier::numbered(n), |k| {
        Kernel::from_points((0..n).filter(|&x| choice[x] & (1 << (k.index() - 1)) != 0))
    })
    .expect("down-closed options are monotone")
}

/// Every centered convergence on `n` points, in lexicographic option order.
pub fn conv_exhaustive(n: usize) -> Vec<ConvSpace> {
    assert!((1..=CONV_EXHAUSTIVE_MAX).contains(&n));
    let options = convergence_options(n, true);
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let choice: Vec<u64> = (0..n).map(|x| options[x][idx[x]]).collect();
        out.push(conv_from_options(n, &choice));
        let mut x = n;
        loop {
            if x == 0 {
                return out;
            }
            x -= 1;
            idx[x] += 1;
            if idx[x] < options[x].len() {
                break;
            }
            idx[x] = 0;
        }
    }
}

/// Every monotone table on `n ≤ 2` points with values in `grid`, centered or not.
pub fn cap_exhaustive(n: usize, grid: &[Value]) -> Vec<CapSpace> {
    assert!((1..=CAP_EXHAUSTIVE_MAX).contains(&n));
    let cells = n * ((1 << n) - 1);
    let total = grid.len().pow(cells as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut table = vec![Value::INFINITY; n];
        for _ in 0..cells {
            table.push(grid[c % grid.len()]);
            c /= grid.len();
        }
        if let Ok(space) = CapSpace::new(Carrier::numbered(n), table) {
            out.push(space);
        }
    }
    out
}

pub fn random_conv(rng: &mut ChaCha8Rng, n: usize) -> ConvSpace {
    let options = convergence_options(n, true);
    let choice: Vec<u64> = options.iter().map(|o| *o.choose(rng).expect("nonempty options")).collect();
    conv_from_options(n, &choice)
}

fn random_distances(rng: &mut ChaCha8Rng, n: usize, grid: &[Value]) -> Vec<Vec<Value>> {
    (0..n)
        .map(|t| (0..n).map(|x| if t == x { Value::ZERO } else { *grid.choose(rng).expect("nonempty grid") }).collect())
        .collect()
}

/// Min-plus closure of a distance table.
pub fn triangle_closure(mut d: Vec<Vec<Value>>) -> Vec<Vec<Value>> {
    let n = d.len();
    for s in 0..n {
        for t in 0..n {
            for x in 0..n {
                let via = d[t][s] + d[s][x];
                if via < d[t][x] {
                    d[t][x] = via;
                }
            }
        }
    }
    d
}

/// A monotone table built kernel by kernel: each row is the join of the rows
/// of its one-point-smaller sub-kernels, raised at random cells.
fn random_monotone(rng: &mut ChaCha8Rng, n: usize, grid: &[Value], diagonal: &[Value]) -> CapSpace {
    let mut table = vec![Value::INFINITY; n << n];
    let mut kernels: Vec<Kernel> = nonempty_subsets(n).collect();
    kernels.sort_by_key(|k| k.len());
    for k in kernels {
        for x in 0..n {
            let below = k
                .points()
                .map(|p| Kernel::from_bits(k.bits() & !(1 << p)))
                .filter(|s| !s.is_empty())
                .map(|s| table[s.index() * n + x])
                .fold(Value::ZERO, Value::join);
            let v = if k.len() == 1 && k.contains(x) {
                diagonal[x]
            } else if k.len() == 1 || rng.random_bool(0.5) {
                below.join(*grid.choose(rng).expect("nonempty grid"))
            } else {
                below
            };
            table[k.index() * n + x] = v;
        }
    }
    CapSpace::new(Carrier::numbered(n), table).expect("joins of smaller rows are monotone")
}

/// Which construction produced a random instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Singleton table completed by joins.
    PreApproach,
    /// Triangle-closed singleton table completed by joins.
    Approach,
    /// Centered monotone table, usually without finite depth.
    Monotone,
    /// 0/∞ embedding of a random centered convergence.
    Embedded,
    /// Monotone table with nonzero diagonal entries.
    Precentered,
}

impl Family {
    pub fn for_index(index: u64) -> Family {
        match index % 10 {
            0..=2 => Family::PreApproach,
            3 | 4 => Family::Approach,
            5 | 6 => Family::Monotone,
            7 | 8 => Family::Embedded,
            _ => Family::Precentered,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::PreApproach => "prap",
            Family::Approach => "approach",
            Family::Monotone => "monotone",
            Family::Embedded => "embedded",
            Family::Precentered => "precentered",
        }
    }
}

pub fn random_cap(rng: &mut ChaCha8Rng, family: Family, n: usize, grid: &[Value]) -> Space {
    let carrier = Carrier::numbered(n);
    match family {
        Family::PreApproach => {
            Space::Cap(CapSpace::from_distances(carrier, &random_distances(rng, n, grid)).expect("joins are monotone"))
        }
        Family::Approach => {
            let d = triangle_closure(random_distances(rng, n, grid));
            Space::Cap(CapSpace::from_distances(carrier, &d).expect("joins are monotone"))
        }
        Family::Monotone => Space::Cap(random_monotone(rng, n, grid, &vec![Value::ZERO; n])),
        Family::Embedded => Space::Conv(random_conv(rng, n)),
        Family::Precentered => {
            let finite: Vec<Value> = grid.iter().copied().filter(Value::is_finite).collect();
            let diagonal: Vec<Value> = (0..n).map(|_| *finite.choose(rng).expect("finite grid value")).collect();
            Space::Cap(random_monotone(rng, n, grid, &diagonal))
        }
    }
}

/// Random instances `first..first+count` of a batch; the carrier size of
/// instance `i` is drawn from `sizes`.
pub fn random_batch(seed: u64, batch: u32, first: u64, count: u64, sizes: &[usize], grid: &[Value]) -> Vec<Instance> {
    (first..first + count)
        .map(|i| {
            let stream = (u64::from(batch) << 40) | i;
            let mut rng = rng_for(seed, stream);
            let n = *sizes.choose(&mut rng).expect("nonempty size list");
            let family = Family::for_index(i);
            let space = random_cap(&mut rng, family, n, grid);
            Instance { id: format!("random/{batch}/{i}/{}/n{n}", family.name()), space, seed: rng.random() }
        })
        .collect()
}

pub fn conv_instances(max_n: usize, seed: u64) -> Vec<Instance> {
    (1..=max_n.min(CONV_EXHAUSTIVE_MAX))
        .flat_map(|n| {
            conv_exhaustive(n).into_iter().enumerate().map(move |(i, c)| Instance {
                id: format!("conv/n{n}/{i}"),
                space: Space::Conv(c),
                seed: seed ^ ((n as u64) << 32 | i as u64),
            })
        })
        .collect()
}

pub fn cap_exhaustive_instances(max_n: usize, seed: u64) -> Vec<Instance> {
    let grid = small_grid();
    (1..=max_n.min(CAP_EXHAUSTIVE_MAX))
        .flat_map(|n| {
            cap_exhaustive(n, &grid).into_iter().enumerate().map(move |(i, c)| Instance {
                id: format!("cap/n{n}/{i}"),
                space: Space::Cap(c),
                seed: seed ^ ((n as u64) << 32 | i as u64),
            })
        })
        .collect()
}

/// Value grid `{0, 1/2, 1, ∞}` for the second oracle batch.
pub fn half_grid() -> Vec<Value> {
    ["0", "1/2", "1", "inf"].iter().map(|s| s.parse().expect("grid literal")).collect()
}

/// Named instance suites of `verify`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SuiteName {
    /// Every centered convergence up to three points and every table on
    /// at most two points over `{0, 1, ∞}`.
    Exhaustive,
    /// 1000 random instances on two or three points, plus 100 on four.
    Random,
    /// Random batches over the grids `{0, 1, ∞}` and `{0, 1/2, 1, ∞}`.
    Oracle,
    All,
}

impl SuiteName {
    pub const ALL: [SuiteName; 4] = [SuiteName::Exhaustive, SuiteName::Random, SuiteName::Oracle, SuiteName::All];

    pub fn name(self) -> &'static str {
        match self {
            SuiteName::Exhaustive => "exhaustive",
            SuiteName::Random => "random",
            SuiteName::Oracle => "oracle",
            SuiteName::All => "all",
        }
    }

    /// Check-id prefixes run by default; empty means every check.
    pub fn default_checks(self) -> &'static [&'static str] {
        match self {
            SuiteName::Oracle => &["oracle"],
            _ => &[],
        }
    }
}

pub const RANDOM_SMALL: u64 = 1000;
pub const RANDOM_FOUR: u64 = 100;
pub const ORACLE_BATCH: u64 = 100;

/// Instances of a suite with carriers of at most `max_n` points.
pub fn suite_instances(suite: SuiteName, max_n: usize, seed: u64) -> Vec<Instance> {
    let sizes: Vec<usize> = [2, 3, 3].into_iter().filter(|&n| n <= max_n).collect();
    let sizes = if sizes.is_empty() { vec![1] } else { sizes };
    let oracle_sizes: Vec<usize> = [2, 3].into_iter().filter(|&n| n <= max_n).collect();
    let oracle_sizes = if oracle_sizes.is_empty() { vec![1] } else { oracle_sizes };
    match suite {
        SuiteName::Exhaustive => {
            let mut out = conv_instances(max_n, seed);
            out.extend(cap_exhaustive_instances(max_n, seed));
            out
        }
        SuiteName::Random => {
            let mut out = random_batch(seed, 0, 0, RANDOM_SMALL, &sizes, &default_grid());
            for n in 4..=max_n {
                out.extend(random_batch(seed, n as u32 - 3, 0, RANDOM_FOUR, &[n], &default_grid()));
            }
            out
        }
        SuiteName::Oracle => {
            let mut out = random_batch(seed, 10, 0, ORACLE_BATCH, &oracle_sizes, &small_grid());
            out.extend(random_batch(seed, 11, 0, ORACLE_BATCH, &oracle_sizes, &half_grid()));
            out
        }
        SuiteName::All => [SuiteName::Exhaustive, SuiteName::Random, SuiteName::Oracle]
            .into_iter()
            .flat_map(|s| suite_instances(s, max_n, seed))
            .collect(),
    }
}

/// Isomorphism invariant of a space: its table under the relabelling that
/// gives the lexicographically least encoding.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CanonicalForm {
    Conv(Vec<u32>),
    Cap(Vec<Value>),
}

pub fn canonical_form(space: &Space) -> CanonicalForm {
    let n = space.carrier().len();
    let relabel = |k: Kernel, perm: &[usize]| Kernel::from_points(k.points().map(|x| perm[x]));
    let perms = (0..n).permutations(n);
    match space {
        Space::Conv(c) => {
            let key = |perm: Vec<usize>| -> Vec<u32> {
                // inverse image of each relabelled kernel
                let mut inv = vec![0; n];
                for (x, &y) in perm.iter().enumerate() {
                    inv[y] = x;
                }
                nonempty_subsets(n).map(|k| relabel(c.lim(relabel(k, &inv)), &perm).bits()).collect()
            };
            CanonicalForm::Conv(perms.map(key).min().expect("one permutation"))
        }
        Space::Cap(c) => {
            let key = |perm: Vec<usize>| -> Vec<Value> {
                let mut inv = vec![0; n];
                for (x, &y) in perm.iter().enumerate() {
                    inv[y] = x;
                }
                nonempty_subsets(n)
                    .flat_map(|k| (0..n).map(move |x| (k, x)))
                    .map(|(k, x)| c.eval(relabel(k, &inv), inv[x]))
                    .collect()
            };
            CanonicalForm::Cap(perms.map(key).min().expect("one permutation"))
        }
    }
}

/// Keeps the first instance of each isomorphism class, in order.
pub fn dedup_isomorphic(instances: Vec<Instance>) -> Vec<Instance> {
    let mut seen = BTreeSet::new();
    instances.into_iter().filter(|i| seen.insert(canonical_form(&i.space))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_convergences() {
        assert_eq!(conv_exhaustive(1).len(), 1);
        assert_eq!(conv_exhaustive(2).len(), 9);
    }

    #[test]
    fn isomorphism_classes() {
        // classes of centered convergences on two points
        let two: Vec<Instance> = conv_instances(2, 0).into_iter().filter(|i| i.space.carrier().len() == 2).collect();
        assert_eq!(dedup_isomorphic(two).len(), 6);
    }

    #[test]
    fn random_batches_replay() {
        let grid = default_grid();
        let a = random_batch(7, 0, 0, 20, &[3], &grid);
        let b = random_batch(7, 0, 10, 10, &[3], &grid);
        assert_eq!(a[10..], b[..]);
    }
}
