//! Compression of a graph instance into the labelled quotient graph of its
//! minimum neighborhood partition.
//!
//! Byte layout: magic, width (LEB128), kind bitfield (1 = clique), upper
//! triangle adjacency bitfield in row-major order, one LEB128 weight per
//! class, the problem tag byte, `k` (LEB128) and, for Steiner Tree only, a
//! terminal bitfield. Bitfields are packed least significant bit first and padded
//! with zeros to whole bytes.

use std::io::{Cursor, Read};
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{are_isomorphic, Graph};
use crate::oracles::{solve, Limits, Payload, ProblemInstance, ProblemKind};
use crate::params::nd::same_type;
use crate::params::{nd_partition, ClassKind, NdClass};

pub const ND_MAGIC: u8 = 0xD5;

/// Constants `(a, b, c)` of the size bound `a·w² + b·w·L + c·L`, where `w` is
/// the width and `L = max(1, ⌈log₂ n⌉)`.
pub const BIT_BOUND: (u64, u64, u64) = (1, 10, 53);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientEncoding {
    pub kinds: Vec<ClassKind>,
    /// Row-major upper triangle: pairs `(0,1), (0,2), …, (1,2), …`.
    pub adjacency: Vec<bool>,
    pub weights: Vec<u64>,
    /// Steiner Tree only: whether each class consists of terminals.
    pub terminals: Option<Vec<bool>>,
    pub tag: ProblemKind,
    pub k: u64,
}

impl QuotientEncoding {
    pub fn width(&self) -> usize {
        self.kinds.len()
    }

    /// Number of vertices of the encoded graph.
    pub fn n(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let (i, j) = (i.min(j), i.max(j));
        let w = self.width();
        // Offset of row i: i·w - i(i+1)/2.
        self.adjacency[i * w - i * (i + 1) / 2 + (j - i - 1)]
    }

    pub fn bit_len(&self) -> u64 {
        self.to_bytes().len() as u64 * 8
    }

    pub fn bit_bound(&self) -> u64 {
        bit_bound(self.width() as u64, self.n())
    }

    /// True when `w ≤ log₂ n`: the instance is small enough in width to be
    /// decided directly instead of compressed.
    pub fn direct_decision_branch(&self) -> bool {
        let n = self.n();
        n > 1 && (self.width() as f64) <= (n as f64).log2()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = vec![ND_MAGIC];
        put_uleb(&mut out, self.width() as u64);
        let kind_bits: Vec<bool> = self.kinds.iter().map(|&k| k == ClassKind::Clique).collect();
        put_bits(&mut out, &kind_bits);
        put_bits(&mut out, &self.adjacency);
        for &w in &self.weights {
            put_uleb(&mut out, w);
        }
        out.push(tag_byte(self.tag));
        put_uleb(&mut out, self.k);
        if let Some(t) = &self.terminals {
            put_bits(&mut out, t);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut cur = Cursor::new(bytes);
        if read_byte(&mut cur)? != ND_MAGIC {
            return Err(Error::Decode("bad magic byte".into()));
        }
        let width = usize::try_from(get_uleb(&mut cur)?)
            .ok()
            .filter(|&w| w <= bytes.len() * 8)
            .ok_or_else(|| Error::Decode("width larger than the blob".into()))?;
        let kinds = get_bits(&mut cur, width)?
            .into_iter()
            .map(|b| if b { ClassKind::Clique } else { ClassKind::Independent })
            .collect();
        let adjacency = get_bits(&mut cur, width * width.saturating_sub(1) / 2)?;
        let weights = (0..width).map(|_| get_uleb(&mut cur)).collect::<Result<Vec<_>>>()?;
        let tag = tag_from_byte(read_byte(&mut cur)?)?;
        let k = get_uleb(&mut cur)?;
        let terminals = if tag == ProblemKind::SteinerTree {
            Some(get_bits(&mut cur, width)?)
        } else {
            None
        };
        let used = cur.position() as usize;
        if used != bytes.len() {
            return Err(Error::Decode(format!("{} trailing bytes", bytes.len() - used)));
        }
        let enc = QuotientEncoding {
            kinds,
            adjacency,
            weights,
            terminals,
            tag,
            k,
        };
        enc.check()?;
        Ok(enc)
    }

    fn check(&self) -> Result<()> {
        let w = self.width();
        if self.adjacency.len() != w * w.saturating_sub(1) / 2 || self.weights.len() != w {
            return Err(Error::Decode("field lengths disagree with the width".into()));
        }
        if let Some(t) = &self.terminals {
            if t.len() != w {
                return Err(Error::Decode("terminal field length disagrees with the width".into()));
            }
        }
        if let Some(i) = self.weights.iter().position(|&x| x == 0) {
            return Err(Error::Decode(format!("class {i} has weight 0")));
        }
        if self.n() > crate::bits::MAX_BITS as u64 * 64 {
            return Err(Error::Decode(format!("{} vertices is too many to materialize", self.n())));
        }
        Ok(())
    }
}

pub fn bit_bound(width: u64, n: u64) -> u64 {
    let l = u64::from(ceil_log2(n).max(1));
    let (a, b, c) = BIT_BOUND;
    a * width * width + b * width * l + c * l
}

fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

fn tag_byte(kind: ProblemKind) -> u8 {
    ProblemKind::ALL.iter().position(|&k| k == kind).expect("kind listed") as u8
}

fn tag_from_byte(b: u8) -> Result<ProblemKind> {
    ProblemKind::ALL
        .get(b as usize)
        .copied()
        .ok_or_else(|| Error::Decode(format!("unknown problem tag {b}")))
}

fn put_uleb(out: &mut Vec<u8>, v: u64) {
    leb128::write::unsigned(out, v).expect("writing to a Vec cannot fail");
}

fn get_uleb(cur: &mut Cursor<&[u8]>) -> Result<u64> {
    leb128::read::unsigned(cur).map_err(|e| Error::Decode(format!("bad varint: {e}")))
}

fn read_byte(cur: &mut Cursor<&[u8]>) -> Result<u8> {
    let mut b = [0u8];
    cur.read_exact(&mut b)
        .map_err(|_| Error::Decode("unexpected end of blob".into()))?;
    Ok(b[0])
}

fn put_bits(out: &mut Vec<u8>, bits: &[bool]) {
    for chunk in bits.chunks(8) {
        out.push(chunk.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << i)));
    }
}

fn get_bits(cur: &mut Cursor<&[u8]>, count: usize) -> Result<Vec<bool>> {
    let mut bits = Vec::with_capacity(count);
    for start in (0..count).step_by(8) {
        let byte = read_byte(cur)?;
        let used = (count - start).min(8);
        if used < 8 && byte >> used != 0 {
            return Err(Error::Decode("nonzero padding bits".into()));
        }
        bits.extend((0..used).map(|i| byte >> i & 1 == 1));
    }
    Ok(bits)
}

/// Neighborhood classes of `g`, split by terminal membership when `terminals`
/// is given, ordered by smallest member.
pub fn encoding_classes(g: &Graph, terminals: Option<&[usize]>) -> Vec<NdClass> {
    let Some(terminals) = terminals else {
        return nd_partition(g).classes;
    };
    let mut is_terminal = vec![false; g.n()];
    for &t in terminals {
        is_terminal[t] = true;
    }
    let mut classes: Vec<NdClass> = Vec::new();
    let mut class_of = vec![usize::MAX; g.n()];
    for v in 0..g.n() {
        if class_of[v] != usize::MAX {
            continue;
        }
        class_of[v] = classes.len();
        let mut members = vec![v];
        for u in v + 1..g.n() {
            if class_of[u] == usize::MAX && is_terminal[u] == is_terminal[v] && same_type(g, v, u) {
                class_of[u] = classes.len();
                members.push(u);
            }
        }
        let kind = if members.len() >= 2 && g.has_edge(members[0], members[1]) {
            ClassKind::Clique
        } else {
            ClassKind::Independent
        };
        classes.push(NdClass { members, kind });
    }
    classes
}

/// Encodes a plain graph instance.
pub fn encode_nd(g: &Graph, kind: ProblemKind, k: usize) -> Result<QuotientEncoding> {
    encode_instance(&ProblemInstance::graph(kind, g.clone(), k)?)
}

/// Encodes a plain graph or Steiner Tree instance. `k` is clamped to
/// `n + 1`, which leaves every answer unchanged.
pub fn encode_instance(inst: &ProblemInstance) -> Result<QuotientEncoding> {
    let (g, terminals, k) = match &inst.payload {
        Payload::Graph { graph, k } => (graph, None, *k),
        Payload::Steiner { graph, terminals, k } => (graph, Some(terminals.as_slice()), *k),
        _ => {
            return Err(Error::arg(format!(
                "{} instances have no graph-only encoding",
                inst.kind
            )))
        }
    };
    inst.validate()?;
    let classes = encoding_classes(g, terminals);
    let w = classes.len();
    let mut adjacency = Vec::with_capacity(w * w.saturating_sub(1) / 2);
    for i in 0..w {
        for j in i + 1..w {
            adjacency.push(g.has_edge(classes[i].members[0], classes[j].members[0]));
        }
    }
    let terminal_bits = terminals.map(|t| {
        classes
            .iter()
            .map(|c| t.contains(&c.members[0]))
            .collect()
    });
    Ok(QuotientEncoding {
        kinds: classes.iter().map(|c| c.kind).collect(),
        adjacency,
        weights: classes.iter().map(|c| c.members.len() as u64).collect(),
        terminals: terminal_bits,
        tag: inst.kind,
        k: k.min(g.n() + 1) as u64,
    })
}

/// Materializes the encoded graph: class `i` occupies a contiguous id range
/// in class order.
pub fn decode_nd(e: &QuotientEncoding) -> Result<Graph> {
    e.check()?;
    let offsets = class_offsets(e);
    let mut g = Graph::new(e.n() as usize);
    for i in 0..e.width() {
        let range = offsets[i]..offsets[i + 1];
        if e.kinds[i] == ClassKind::Clique {
            for u in range.clone() {
                for v in u + 1..range.end {
                    g.insert_unchecked(u, v);
                }
            }
        }
        for j in i + 1..e.width() {
            if e.adjacent(i, j) {
                for u in range.clone() {
                    for v in offsets[j]..offsets[j + 1] {
                        g.insert_unchecked(u, v);
                    }
                }
            }
        }
    }
    Ok(g)
}

/// Decodes the full instance; the question asked of it is the original one.
pub fn decode_instance(e: &QuotientEncoding) -> Result<ProblemInstance> {
    let graph = decode_nd(e)?;
    let k = usize::try_from(e.k).map_err(|_| Error::Decode("k does not fit".into()))?;
    match &e.terminals {
        None => ProblemInstance::graph(e.tag, graph, k)
            .map_err(|err| Error::Decode(err.to_string())),
        Some(bits) => {
            let offsets = class_offsets(e);
            let terminals = (0..e.width())
                .filter(|&i| bits[i])
                .flat_map(|i| offsets[i]..offsets[i + 1])
                .collect();
            ProblemInstance::steiner(graph, terminals, k)
        }
    }
}

fn class_offsets(e: &QuotientEncoding) -> Vec<usize> {
    let mut offsets = vec![0usize];
    for &w in &e.weights {
        offsets.push(offsets.last().unwrap() + w as usize);
    }
    offsets
}

/// The bijection from original ids to decoded ids (class members in order
/// onto the class's id range). It is an isomorphism.
pub fn canonical_bijection(g: &Graph, terminals: Option<&[usize]>) -> Vec<usize> {
    let mut map = vec![0; g.n()];
    let mut next = 0;
    for class in encoding_classes(g, terminals) {
        for v in class.members {
            map[v] = next;
            next += 1;
        }
    }
    map
}

/// Cheap isomorphism invariants: sorted degrees, triangle count, component count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub degrees: Vec<usize>,
    pub triangles: usize,
    pub components: usize,
}

pub fn fingerprint(g: &Graph) -> Fingerprint {
    let mut degrees: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    degrees.sort_unstable();
    let triangles = g
        .edges()
        .map(|(u, v)| {
            g.neighbors(u)
                .iter()
                .filter(|&&w| w > v && g.has_edge(v, w))
                .count()
        })
        .sum();
    Fingerprint {
        degrees,
        triangles,
        components: g.components().len(),
    }
}

/// Exact isomorphism up to `exact_limit` vertices, fingerprints above it.
pub fn roundtrip_isomorphic(g: &Graph, decoded: &Graph, exact_limit: usize) -> bool {
    if g.n() <= exact_limit {
        are_isomorphic(g, decoded)
    } else {
        fingerprint(g) == fingerprint(decoded)
    }
}

/// Kinds with a quadratic compression under neighborhood diversity, plus
/// Triangle Partition.
pub const ND_KINDS: [ProblemKind; 13] = [
    ProblemKind::SteinerTree,
    ProblemKind::InducedMatching,
    ProblemKind::ChromaticNumber,
    ProblemKind::HamiltonianCycle,
    ProblemKind::ConnectedDominatingSet,
    ProblemKind::DominatingSet,
    ProblemKind::Clique,
    ProblemKind::IndependentSet,
    ProblemKind::VertexCover,
    ProblemKind::FeedbackVertexSet,
    ProblemKind::OddCycleTransversal,
    ProblemKind::ConnectedVertexCover,
    ProblemKind::TrianglePartition,
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NdCheck {
    pub kind: ProblemKind,
    pub k: usize,
    pub original: bool,
    pub decoded: bool,
    pub bits: u64,
    pub bound: u64,
}

impl NdCheck {
    pub fn passed(&self) -> bool {
        self.original == self.decoded && self.bits <= self.bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NdReport {
    pub width: usize,
    pub n: usize,
    pub isomorphic: bool,
    pub checks: Vec<NdCheck>,
}

impl NdReport {
    pub fn passed(&self) -> bool {
        self.isomorphic && self.checks.iter().all(NdCheck::passed)
    }
}

/// Solves each kind on `g` and on the decoded encoding for every `k` in
/// `ks`. Steiner Tree uses `terminals`; the Hamiltonian kinds and Triangle
/// Partition ignore `k` and are checked once.
pub fn verify_answer_preserved(
    g: &Graph,
    kinds: &[ProblemKind],
    ks: RangeInclusive<usize>,
    terminals: &[usize],
    limits: &Limits,
) -> Result<NdReport> {
    let decoded_graph = decode_nd(&encode_nd(g, ProblemKind::Clique, 0)?)?;
    let mut checks = Vec::new();
    for &kind in kinds {
        let k_values: Vec<usize> = match kind {
            ProblemKind::HamiltonianCycle | ProblemKind::HamiltonianPath | ProblemKind::TrianglePartition => {
                vec![g.n()]
            }
            _ => ks.clone().collect(),
        };
        for k in k_values {
            let inst = if kind == ProblemKind::SteinerTree {
                ProblemInstance::steiner(g.clone(), terminals.to_vec(), k)?
            } else {
                ProblemInstance::graph(kind, g.clone(), k)?
            };
            let enc = encode_instance(&inst)?;
            let back = decode_instance(&enc)?;
            checks.push(NdCheck {
                kind,
                k,
                original: solve(&inst, limits)?.value,
                decoded: solve(&back, limits)?.value,
                bits: enc.bit_len(),
                bound: enc.bit_bound(),
            });
        }
    }
    Ok(NdReport {
        width: nd_partition(g).width,
        n: g.n(),
        isomorphic: roundtrip_isomorphic(g, &decoded_graph, 10),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn enc(g: &Graph) -> QuotientEncoding {
        encode_nd(g, ProblemKind::Clique, 2).unwrap()
    }

    #[test]
    fn trivial_widths() {
        let e = enc(&Graph::complete(6));
        assert_eq!((e.width(), e.kinds.clone(), e.weights.clone()), (1, vec![ClassKind::Clique], vec![6]));
        let e = enc(&Graph::new(6));
        assert_eq!((e.width(), e.kinds.clone(), e.weights.clone()), (1, vec![ClassKind::Independent], vec![6]));
    }

    #[test]
    fn complete_bipartite_two_three() {
        let e = enc(&Graph::complete_bipartite(2, 3));
        assert_eq!(e.width(), 2);
        assert_eq!(e.kinds, vec![ClassKind::Independent; 2]);
        assert_eq!(e.adjacency, vec![true]);
        assert_eq!(e.weights, vec![2, 3]);
    }

    #[test]
    fn golden_bytes() {
        let e = enc(&Graph::complete_bipartite(2, 3));
        // magic, width 2, kinds 00, adjacency 1, weights 2 3, clique tag 0, k 2.
        assert_eq!(e.to_bytes(), vec![0xD5, 2, 0, 1, 2, 3, 0, 2]);
        let s = ProblemInstance::steiner(Graph::path(3), vec![0, 2], 2).unwrap();
        let e = encode_instance(&s).unwrap();
        // P3 classes: {0,2} terminals (independent) and {1}.
        assert_eq!(e.to_bytes(), vec![0xD5, 2, 0, 1, 2, 1, 12, 2, 0b01]);
        assert_eq!(QuotientEncoding::from_bytes(&e.to_bytes()).unwrap(), e);
    }

    #[test]
    fn roundtrips_are_isomorphic() {
        for g in [Graph::complete(5), Graph::cycle(5), Graph::complete_bipartite(2, 3), Graph::petersen()] {
            let d = decode_nd(&enc(&g)).unwrap();
            assert!(are_isomorphic(&g, &d));
        }
    }

    #[test]
    fn decode_errors() {
        let good = enc(&Graph::complete_bipartite(2, 3)).to_bytes();
        let mut bad = good.clone();
        bad[0] = 0;
        assert!(matches!(QuotientEncoding::from_bytes(&bad), Err(Error::Decode(_))));
        let mut zero = good.clone();
        zero[4] = 0;
        assert!(QuotientEncoding::from_bytes(&zero).is_err());
        assert!(QuotientEncoding::from_bytes(&good[..good.len() - 1]).is_err());
        let mut long = good.clone();
        long.push(0);
        assert!(QuotientEncoding::from_bytes(&long).is_err());
        let mut pad = good;
        pad[3] = 0b11;
        assert!(QuotientEncoding::from_bytes(&pad).is_err());
        let e = QuotientEncoding {
            kinds: vec![ClassKind::Clique; 2],
            adjacency: vec![],
            weights: vec![1, 1],
            terminals: None,
            tag: ProblemKind::Clique,
            k: 1,
        };
        assert!(decode_nd(&e).is_err());
    }

    #[test]
    fn all_kinds_on_k4() {
        let g = Graph::complete(4);
        let r = verify_answer_preserved(&g, &ND_KINDS, 1..=4, &[0, 2], &Limits::default()).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn steiner_terminal_split() {
        // Star with centre 0: leaves are twins, but only some are terminals.
        let g = Graph::complete_bipartite(1, 5);
        let s = ProblemInstance::steiner(g.clone(), vec![1, 2], 2).unwrap();
        let e = encode_instance(&s).unwrap();
        assert_eq!(e.weights, vec![1, 2, 3]);
        let back = decode_instance(&e).unwrap();
        let lim = Limits::default();
        assert_eq!(solve(&s, &lim).unwrap().value, solve(&back, &lim).unwrap().value);
    }

    #[test]
    fn k_is_clamped() {
        let e = encode_nd(&Graph::cycle(4), ProblemKind::VertexCover, 1000).unwrap();
        assert_eq!(e.k, 5);
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (0..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
                let mut g = Graph::new(n);
                let mut it = bits.into_iter();
                for u in 0..n {
                    for v in u + 1..n {
                        if it.next().unwrap() {
                            g.insert_unchecked(u, v);
                        }
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn bytes_roundtrip_and_bound(g in arb_graph(12), k in 0usize..20) {
            let e = encode_nd(&g, ProblemKind::DominatingSet, k).unwrap();
            prop_assert!(e.bit_len() <= e.bit_bound());
            prop_assert_eq!(e.n(), g.n() as u64);
            prop_assert!(e.weights.iter().all(|&w| w >= 1));
            let back = QuotientEncoding::from_bytes(&e.to_bytes()).unwrap();
            prop_assert_eq!(&back, &e);
            let d = decode_nd(&back).unwrap();
            prop_assert!(are_isomorphic(&g, &d));
            let map = canonical_bijection(&g, None);
            for (u, v) in g.edges() {
                prop_assert!(d.has_edge(map[u], map[v]));
            }
            prop_assert_eq!(d.m(), g.m());
        }

        #[test]
        fn larger_bound_holds(g in arb_graph(60)) {
            let e = enc(&g);
            prop_assert!(e.bit_len() <= e.bit_bound());
            prop_assert_eq!(fingerprint(&decode_nd(&e).unwrap()), fingerprint(&g));
        }
    }
}
