//! Brute-force oracles and instance generators.
//!
//! Nothing here shares code with the decomposition algorithm: modules are
//! found by testing every subset against the definition, and strong modules
//! by pairwise overlap tests among them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::symmap::{Label, PointSubset, SymMap};

/// Default cap on the number of subsets visited by the enumerations.
pub const DEFAULT_SUBSET_BUDGET: u128 = 1 << 20;
/// Default cap on the number of generated instances.
pub const DEFAULT_INSTANCE_BUDGET: u128 = 1_000_000;

fn mask_is_module(delta: &SymMap, mask: u32) -> bool {
    let n = delta.len();
    if mask == 0 {
        return true;
    }
    let members: Vec<usize> = (0..n).filter(|&p| mask >> p & 1 == 1).collect();
    (0..n).filter(|&z| mask >> z & 1 == 0).all(|z| {
        members
            .iter()
            .all(|&x| delta.label(z, x) == delta.label(z, members[0]))
    })
}

fn check_budget(n: usize, budget: u128) -> Result<()> {
    let need = 1u128 << n.min(127);
    if n > 31 || need > budget {
        return Err(Error::BudgetExceeded(need, budget));
    }
    Ok(())
}

/// Every non-empty module, in increasing bit-mask order.
pub fn enumerate_modules(delta: &SymMap, budget: u128) -> Result<Vec<PointSubset>> {
    let n = delta.len();
    check_budget(n, budget)?;
    Ok((1u32..(1u32 << n))
        .filter(|&m| mask_is_module(delta, m))
        .map(|m| PointSubset::from_indices(n, (0..n).filter(|&p| m >> p & 1 == 1)))
        .collect())
}

/// Modules that overlap no other module, sorted.
pub fn enumerate_strong_modules(delta: &SymMap, budget: u128) -> Result<Vec<PointSubset>> {
    let n = delta.len();
    check_budget(n, budget)?;
    let masks: Vec<u32> = (1u32..(1u32 << n)).filter(|&m| mask_is_module(delta, m)).collect();
    let overlaps = |a: u32, b: u32| a & b != 0 && a & !b != 0 && b & !a != 0;
    let mut out: Vec<PointSubset> = masks
        .iter()
        .filter(|&&m| masks.iter().all(|&o| !overlaps(m, o)))
        .map(|&m| PointSubset::from_indices(n, (0..n).filter(|&p| m >> p & 1 == 1)))
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceMode {
    Exhaustive,
    Random(usize),
}

/// Parameters of an instance stream: `n` points, `k` labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceSpec {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub mode: InstanceMode,
}

/// Point names `x0, x1, ..` zero-padded so that name order equals index order.
pub fn point_names(n: usize) -> Vec<String> {
    let width = n.saturating_sub(1).to_string().len();
    (0..n).map(|i| format!("x{i:0width$}")).collect()
}

pub fn label_names(k: usize) -> Vec<String> {
    (0..k).map(|i| format!("l{i}")).collect()
}

/// Deterministic stream of maps described by `spec`.
///
/// Exhaustive mode yields every labeling of the `n(n-1)/2` pairs with `k`
/// labels exactly once (pair `(0,1)` varies fastest). Random mode draws every
/// pair label uniformly and independently.
pub fn generate_instances(
    spec: InstanceSpec,
    budget: u128,
) -> Result<Box<dyn Iterator<Item = SymMap>>> {
    if spec.k == 0 {
        return Err(Error::Parse("alphabet size must be positive".into()));
    }
    let pairs = spec.n * spec.n.saturating_sub(1) / 2;
    let names = point_names(spec.n);
    let alphabet = label_names(spec.k);
    match spec.mode {
        InstanceMode::Exhaustive => {
            let total = (spec.k as u128).checked_pow(pairs as u32).unwrap_or(u128::MAX);
            if total > budget {
                return Err(Error::BudgetExceeded(total, budget));
            }
            let k = spec.k as u128;
            Ok(Box::new((0..total).map(move |code| {
                let mut digits = Vec::with_capacity(pairs);
                let mut c = code;
                for _ in 0..pairs {
                    digits.push((c % k) as u32);
                    c /= k;
                }
                let mut it = digits.into_iter();
                SymMap::from_fn(names.clone(), alphabet.clone(), |_, _| Label(it.next().unwrap()))
            })))
        }
        InstanceMode::Random(count) => {
            if count as u128 > budget {
                return Err(Error::BudgetExceeded(count as u128, budget));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let k = spec.k as u32;
            Ok(Box::new((0..count).map(move |_| {
                SymMap::from_fn(names.clone(), alphabet.clone(), |_, _| Label(rng.gen_range(0..k)))
            })))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmap::tests::delta5;

    fn set(d: &SymMap, names: &[&str]) -> PointSubset {
        PointSubset::from_indices(d.len(), names.iter().map(|n| d.point(n).unwrap().0))
    }

    #[test]
    fn modules_of_delta5() {
        let d = delta5();
        let all = enumerate_modules(&d, DEFAULT_SUBSET_BUDGET).unwrap();
        assert!(all.contains(&set(&d, &["c", "e"])));
        assert!(all.contains(&set(&d, &["c", "d", "e"])));
        assert!(all.contains(&d.full_set()));
        assert!(!all.contains(&set(&d, &["c", "d"])));
        for p in 0..5 {
            assert!(all.contains(&PointSubset::singleton(5, p)));
        }
    }

    #[test]
    fn strong_modules_of_delta5() {
        let d = delta5();
        let strong = enumerate_strong_modules(&d, DEFAULT_SUBSET_BUDGET).unwrap();
        assert_eq!(strong.len(), 8);
        assert!(strong.contains(&set(&d, &["c", "e"])));
        assert!(strong.contains(&set(&d, &["c", "d", "e"])));
    }

    #[test]
    fn one_label_map_has_every_subset_as_module() {
        let d = SymMap::from_fn(point_names(3), label_names(1), |_, _| Label(0));
        assert_eq!(enumerate_modules(&d, DEFAULT_SUBSET_BUDGET).unwrap().len(), 7);
        assert_eq!(enumerate_strong_modules(&d, DEFAULT_SUBSET_BUDGET).unwrap().len(), 4);
    }

    #[test]
    fn prime_quotient_has_only_trivial_modules() {
        let d = delta5();
        let parts = vec![set(&d, &["a"]), set(&d, &["b"]), set(&d, &["c", "d", "e"])];
        let q = d.quotient(&parts).unwrap();
        let mods = enumerate_modules(&q, DEFAULT_SUBSET_BUDGET).unwrap();
        assert!(mods.iter().all(PointSubset::is_trivial));
        assert_eq!(mods.len(), 4);
    }

    #[test]
    fn budget_is_enforced() {
        let d = SymMap::from_fn(point_names(12), label_names(1), |_, _| Label(0));
        assert!(matches!(enumerate_modules(&d, 1000), Err(Error::BudgetExceeded(4096, 1000))));
        let spec = InstanceSpec { n: 5, k: 3, seed: 0, mode: InstanceMode::Exhaustive };
        assert!(generate_instances(spec, 1000).is_err());
    }

    #[test]
    fn exhaustive_streams() {
        let spec = InstanceSpec { n: 3, k: 2, seed: 0, mode: InstanceMode::Exhaustive };
        let maps: Vec<SymMap> = generate_instances(spec, DEFAULT_INSTANCE_BUDGET).unwrap().collect();
        assert_eq!(maps.len(), 8);
        let mut seen: Vec<Vec<Label>> = maps.iter().map(|m| m.pairs().map(|p| p.2).collect()).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 8);

        let spec = InstanceSpec { n: 4, k: 2, seed: 0, mode: InstanceMode::Exhaustive };
        assert_eq!(generate_instances(spec, DEFAULT_INSTANCE_BUDGET).unwrap().count(), 64);
    }

    #[test]
    fn random_streams_are_reproducible() {
        let spec = InstanceSpec { n: 8, k: 4, seed: 7, mode: InstanceMode::Random(100) };
        let a: Vec<SymMap> = generate_instances(spec, DEFAULT_INSTANCE_BUDGET).unwrap().collect();
        let b: Vec<SymMap> = generate_instances(spec, DEFAULT_INSTANCE_BUDGET).unwrap().collect();
        assert_eq!(a.len(), 100);
        assert_eq!(a, b);
        let other = InstanceSpec { seed: 8, ..spec };
        let c: Vec<SymMap> = generate_instances(other, DEFAULT_INSTANCE_BUDGET).unwrap().collect();
        assert_ne!(a, c);
    }

    #[test]
    fn point_names_sort_like_indices() {
        let names = point_names(12);
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        assert_eq!(names[3], "x03");
    }
}
