use std::collections::{BTreeMap, BTreeSet};
use std::ops::{AddAssign, SubAssign};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{BuyerId, CfaInstance, SellerId};
use crate::error::{Error, Result};

/// Default buyer limit for [`solve_cfa`].
pub const CFA_MAX_BUYERS: usize = 12;

/// Exact decision by enumerating per-buyer choices (a seller or none), in
/// buyer order, with conflict and profit-bound pruning.
///
/// Returns the assignment as `(buyer, seller)` pairs on yes. `max_buyers`
/// overrides the default guardrail.
pub fn solve_cfa(
    inst: &CfaInstance,
    max_buyers: Option<usize>,
) -> Result<Option<Vec<(BuyerId, SellerId)>>> {
    let limit = max_buyers.unwrap_or(CFA_MAX_BUYERS);
    if inst.buyers.len() > limit {
        return Err(Error::Resource(format!(
            "CFA instance has {} buyers; guardrail is {limit}",
            inst.buyers.len()
        )));
    }
    inst.validate()?;
    let fits_u128 = {
        let total: BigUint = inst.buyers.iter().map(|b| &b.profit).sum();
        let cap: BigUint = inst.sellers.iter().map(|s| &s.capacity).sum();
        total.to_u64().is_some() && cap.to_u64().is_some() && inst.q.to_u64().is_some()
    };
    if fits_u128 {
        let conv = |v: &BigUint| v.to_u128().expect("checked above");
        Search::build(inst, conv).run()
    } else {
        Search::build(inst, BigUint::clone).run()
    }
}

trait Amount: Clone + Ord + Zero + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self> {}
impl<T> Amount for T where T: Clone + Ord + Zero + for<'a> AddAssign<&'a T> + for<'a> SubAssign<&'a T> {}

struct Search<T> {
    buyer_ids: Vec<BuyerId>,
    seller_ids: Vec<SellerId>,
    profit: Vec<T>,
    weight: Vec<T>,
    /// Sellers each buyer may use (weight finite and within capacity).
    options: Vec<Vec<usize>>,
    conflicts: Vec<Vec<u64>>,
    residual: Vec<T>,
    q: T,
    blocked: Vec<u32>,
    chosen: Vec<(usize, usize)>,
}

impl<T: Amount> Search<T> {
    fn build(inst: &CfaInstance, conv: impl Fn(&BigUint) -> T) -> Self {
        let nb = inst.buyers.len();
        let b_index: BTreeMap<BuyerId, usize> =
            inst.buyers.iter().enumerate().map(|(i, b)| (b.id, i)).collect();
        let s_index: BTreeMap<SellerId, usize> =
            inst.sellers.iter().enumerate().map(|(i, s)| (s.id, i)).collect();
        let mut options = vec![Vec::new(); nb];
        for &(b, s) in &inst.edges {
            let (bi, si) = (b_index[&b], s_index[&s]);
            if inst.buyers[bi].weight.fits(&inst.sellers[si].capacity) {
                options[bi].push(si);
            }
        }
        let words = nb.div_ceil(64).max(1);
        let mut conflicts = vec![vec![0u64; words]; nb];
        for &(a, b) in &inst.conflicts {
            let (ai, bi) = (b_index[&a], b_index[&b]);
            conflicts[ai][bi / 64] |= 1 << (bi % 64);
            conflicts[bi][ai / 64] |= 1 << (ai % 64);
        }
        Search {
            buyer_ids: inst.buyers.iter().map(|b| b.id).collect(),
            seller_ids: inst.sellers.iter().map(|s| s.id).collect(),
            profit: inst.buyers.iter().map(|b| conv(&b.profit)).collect(),
            weight: inst
                .buyers
                .iter()
                .map(|b| b.weight.as_finite().map(&conv).unwrap_or_else(T::zero))
                .collect(),
            options,
            conflicts,
            residual: inst.sellers.iter().map(|s| conv(&s.capacity)).collect(),
            q: conv(&inst.q),
            blocked: vec![0; nb],
            chosen: Vec::new(),
        }
    }

    fn run(mut self) -> Result<Option<Vec<(BuyerId, SellerId)>>> {
        let mut profit = T::zero();
        if self.dfs(0, &mut profit) {
            let mut out: Vec<(BuyerId, SellerId)> = self
                .chosen
                .iter()
                .map(|&(b, s)| (self.buyer_ids[b], self.seller_ids[s]))
                .collect();
            out.sort_unstable();
            Ok(Some(out))
        } else {
            Ok(None)
        }
    }

    fn conflicts_with(&self, a: usize, b: usize) -> bool {
        self.conflicts[a][b / 64] >> (b % 64) & 1 == 1
    }

    fn set_blocked(&mut self, b: usize, delta: i32) {
        let nb = self.blocked.len();
        for other in 0..nb {
            if self.conflicts_with(b, other) {
                self.blocked[other] = (self.blocked[other] as i32 + delta) as u32;
            }
        }
    }

    fn dfs(&mut self, start: usize, profit: &mut T) -> bool {
        if *profit >= self.q {
            return true;
        }
        let nb = self.profit.len();
        let mut bound = profit.clone();
        for j in start..nb {
            if self.blocked[j] == 0 && !self.options[j].is_empty() {
                bound += &self.profit[j];
            }
        }
        if bound < self.q {
            return false;
        }
        for j in start..nb {
            if self.blocked[j] != 0 || self.options[j].is_empty() {
                continue;
            }
            let w = self.weight[j].clone();
            for k in 0..self.options[j].len() {
                let s = self.options[j][k];
                if self.residual[s] < w {
                    continue;
                }
                self.residual[s] -= &w;
                self.set_blocked(j, 1);
                self.chosen.push((j, s));
                *profit += &self.profit[j];
                if self.dfs(j + 1, profit) {
                    return true;
                }
                *profit -= &self.profit[j];
                self.chosen.pop();
                self.set_blocked(j, -1);
                self.residual[s] += &w;
            }
        }
        false
    }
}

/// Checks an assignment against the four conditions directly.
pub fn check_assignment(inst: &CfaInstance, assignment: &[(BuyerId, SellerId)]) -> bool {
    let edges: BTreeSet<(BuyerId, SellerId)> = inst.edges.iter().copied().collect();
    let mut assigned: BTreeSet<BuyerId> = BTreeSet::new();
    let mut load: BTreeMap<SellerId, BigUint> = BTreeMap::new();
    let mut profit = BigUint::zero();
    for &(b, s) in assignment {
        if !edges.contains(&(b, s)) || !assigned.insert(b) {
            return false;
        }
        let buyer = inst.buyers.iter().find(|x| x.id == b).expect("edge buyers exist");
        let Some(w) = buyer.weight.as_finite() else {
            return false;
        };
        *load.entry(s).or_default() += w;
        profit += &buyer.profit;
    }
    let within_capacity = inst.sellers.iter().all(|s| {
        load.get(&s.id)
            .is_none_or(|l| l <= &s.capacity)
    });
    let conflict_free = inst
        .conflicts
        .iter()
        .all(|(a, b)| !(assigned.contains(a) && assigned.contains(b)));
    within_capacity && conflict_free && profit >= inst.q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfa::{random_instance, Buyer, Seller, Weight};

    fn single(w: u64, p: u64, c: u64, q: u64) -> CfaInstance {
        CfaInstance {
            buyers: vec![Buyer {
                id: 0,
                profit: p.into(),
                weight: Weight::finite(w),
                label: None,
            }],
            sellers: vec![Seller {
                id: 0,
                capacity: c.into(),
                label: None,
            }],
            edges: vec![(0, 0)],
            conflicts: vec![],
            q: q.into(),
        }
    }

    /// Independent oracle: every map buyer -> seller or none.
    fn brute(inst: &CfaInstance) -> bool {
        let nb = inst.buyers.len();
        let ns = inst.sellers.len();
        let mut choice = vec![0usize; nb];
        loop {
            let assignment: Vec<(BuyerId, SellerId)> = (0..nb)
                .filter(|&i| choice[i] > 0)
                .map(|i| (inst.buyers[i].id, inst.sellers[choice[i] - 1].id))
                .collect();
            if check_assignment(inst, &assignment) {
                return true;
            }
            let mut i = 0;
            loop {
                if i == nb {
                    return false;
                }
                choice[i] += 1;
                if choice[i] <= ns {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn named_examples() {
        assert!(solve_cfa(&single(3, 5, 3, 5), None).unwrap().is_some());
        assert!(solve_cfa(&single(3, 5, 2, 5), None).unwrap().is_none());
        let mut two = single(1, 2, 10, 4);
        two.buyers.push(Buyer {
            id: 1,
            profit: 2u32.into(),
            weight: Weight::finite(1),
            label: None,
        });
        two.edges.push((1, 0));
        assert!(solve_cfa(&two, None).unwrap().is_some());
        two.conflicts.push((0, 1));
        assert!(solve_cfa(&two, None).unwrap().is_none());
    }

    #[test]
    fn guardrail_and_override() {
        let mut r = crate::generate::rng(1);
        let mut inst = random_instance(&mut r, 0, 0);
        for id in 0..13 {
            inst.buyers.push(Buyer {
                id,
                profit: 1u32.into(),
                weight: Weight::Infinite,
                label: None,
            });
        }
        assert!(matches!(solve_cfa(&inst, None), Err(Error::Resource(_))));
        assert!(solve_cfa(&inst, Some(20)).is_ok());
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut r = crate::generate::rng(42);
        for _ in 0..300 {
            let inst = random_instance(&mut r, 5, 3);
            let got = solve_cfa(&inst, None).unwrap();
            if let Some(a) = &got {
                assert!(check_assignment(&inst, a));
            }
            assert_eq!(got.is_some(), brute(&inst), "{}", inst.to_json());
        }
    }
}
