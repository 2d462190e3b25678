//! Exact structural parameters: vertex cover, twin-cover, neighborhood
//! diversity and modular-width, each with a certificate.

pub mod modules;
pub mod nd;
pub mod twin_cover;
pub mod vertex_cover;

use serde::{Deserialize, Serialize};

pub use modules::{
    find_splitter, is_module, modular_decomposition, modular_width, quotient_graph, MdNode,
    MdTree, NodeLabel, Quotient,
};
pub use nd::{nd_partition, ClassKind, NdClass, NdPartition};
pub use twin_cover::{twin_cover_exact, twin_cover_exact_unchecked, TcCertificate};
pub use vertex_cover::{is_vertex_cover, vertex_cover_exact, VcCertificate};

use crate::error::Result;
use crate::graph::Graph;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParamReport {
    pub vc: usize,
    pub tc: usize,
    pub nd: usize,
    pub mw: usize,
    pub vc_cover: Vec<usize>,
    pub tc_certificate: TcCertificate,
    pub nd_partition: NdPartition,
    pub md_tree: MdTree,
}

/// All four parameters of `g`.
pub fn compute_all(g: &Graph, allow_large: bool) -> Result<ParamReport> {
    let vc = vertex_cover_exact(g)?;
    let tc = if allow_large {
        twin_cover_exact_unchecked(g)?
    } else {
        twin_cover_exact(g)?
    };
    let nd = nd_partition(g);
    let md = modular_decomposition(g);
    Ok(ParamReport {
        vc: vc.size,
        tc: tc.size(),
        nd: nd.width,
        mw: modular_width(&md),
        vc_cover: vc.cover,
        tc_certificate: tc,
        nd_partition: nd,
        md_tree: md,
    })
}
