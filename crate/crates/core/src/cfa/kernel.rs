use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{BuyerId, CfaInstance, Seller, SellerId};
use crate::error::{Error, Result};

/// One application of a reduction rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum RuleFiring {
    DeleteIsolatedBuyer { buyer: BuyerId },
    DeleteIsolatedSeller { seller: SellerId },
    DeleteHeavyEdge { buyer: BuyerId, seller: SellerId },
    Rewire {
        buyer: BuyerId,
        old_degree: usize,
        new_seller: SellerId,
    },
}

/// Applies the three rules to exhaustion: isolated vertices first, then
/// edges whose buyer is heavier than the seller's capacity, then rewiring of
/// one high-degree buyer to a fresh seller, restarting after each rewire.
pub fn kernelize_cfa(inst: &CfaInstance) -> (CfaInstance, Vec<RuleFiring>) {
    let mut out = inst.clone();
    let mut trace = Vec::new();
    let mut next_seller = out.sellers.iter().map(|s| s.id + 1).max().unwrap_or(0);
    loop {
        delete_isolated(&mut out, &mut trace);
        if delete_heavy_edges(&mut out, &mut trace) {
            continue;
        }
        let limit = out.buyers.len();
        let degrees = out.buyer_degrees();
        let Some((&buyer, &old_degree)) = degrees.iter().find(|(_, &d)| d > limit) else {
            break;
        };
        let weight = out
            .buyers
            .iter()
            .find(|b| b.id == buyer)
            .and_then(|b| b.weight.as_finite().cloned())
            .expect("rule 2 removed every edge of infinite-weight buyers");
        out.edges.retain(|&(b, _)| b != buyer);
        let new_seller = next_seller;
        next_seller += 1;
        out.sellers.push(Seller {
            id: new_seller,
            capacity: weight,
            label: None,
        });
        out.edges.push((buyer, new_seller));
        trace.push(RuleFiring::Rewire {
            buyer,
            old_degree,
            new_seller,
        });
    }
    (out, trace)
}

fn delete_isolated(inst: &mut CfaInstance, trace: &mut Vec<RuleFiring>) {
    let b_deg = inst.buyer_degrees();
    let s_deg = inst.seller_degrees();
    let dead_b: BTreeSet<BuyerId> = b_deg.iter().filter(|(_, &d)| d == 0).map(|(&b, _)| b).collect();
    let dead_s: BTreeSet<SellerId> = s_deg.iter().filter(|(_, &d)| d == 0).map(|(&s, _)| s).collect();
    trace.extend(dead_b.iter().map(|&buyer| RuleFiring::DeleteIsolatedBuyer { buyer }));
    trace.extend(dead_s.iter().map(|&seller| RuleFiring::DeleteIsolatedSeller { seller }));
    inst.buyers.retain(|b| !dead_b.contains(&b.id));
    inst.sellers.retain(|s| !dead_s.contains(&s.id));
    inst.conflicts
        .retain(|(a, b)| !dead_b.contains(a) && !dead_b.contains(b));
}

fn delete_heavy_edges(inst: &mut CfaInstance, trace: &mut Vec<RuleFiring>) -> bool {
    let before = trace.len();
    let buyers = &inst.buyers;
    let sellers = &inst.sellers;
    inst.edges.retain(|&(b, s)| {
        let w = &buyers.iter().find(|x| x.id == b).expect("validated").weight;
        let c = &sellers.iter().find(|x| x.id == s).expect("validated").capacity;
        let keep = w.fits(c);
        if !keep {
            trace.push(RuleFiring::DeleteHeavyEdge { buyer: b, seller: s });
        }
        keep
    });
    trace.len() > before
}

/// Measured sizes against the kernel bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelBounds {
    pub buyers: usize,
    pub sellers: usize,
    pub seller_bound: usize,
    pub max_buyer_degree: usize,
    pub isolated: usize,
    pub heavy_edges: usize,
}

/// Checks `|S| <= |B|^2`, buyer degree `<= |B|`, no isolated vertices and no
/// edge heavier than its seller.
pub fn validate_kernel_bounds(inst: &CfaInstance) -> Result<KernelBounds> {
    let b_deg = inst.buyer_degrees();
    let s_deg = inst.seller_degrees();
    let nb = inst.buyers.len();
    let heavy_edges = inst
        .edges
        .iter()
        .filter(|&&(b, s)| {
            let w = &inst.buyers.iter().find(|x| x.id == b).expect("validated").weight;
            let c = &inst.sellers.iter().find(|x| x.id == s).expect("validated").capacity;
            !w.fits(c)
        })
        .count();
    let report = KernelBounds {
        buyers: nb,
        sellers: inst.sellers.len(),
        seller_bound: nb * nb,
        max_buyer_degree: b_deg.values().copied().max().unwrap_or(0),
        isolated: b_deg.values().chain(s_deg.values()).filter(|&&d| d == 0).count(),
        heavy_edges,
    };
    let ok = report.sellers <= report.seller_bound
        && report.max_buyer_degree <= nb
        && report.isolated == 0
        && report.heavy_edges == 0;
    if ok {
        Ok(report)
    } else {
        Err(Error::Invariant(format!("kernel bounds violated: {report:?}")))
    }
}
