//! Vertex decomposability of independence complexes, the explicit shedding
//! order for interval complexes, and the Cohen-Macaulay consequences.

use std::collections::HashMap;

use crate::complex::{sort_lex, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::interval::{is_interval_complex, IntervalComplexSpec};

/// A vertex decomposition. Leaves are simplices, `{∅}`, or the void complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SheddingTree {
    Leaf(SimplicialComplex),
    Node {
        complex: SimplicialComplex,
        vertex: usize,
        deletion: Box<SheddingTree>,
        link: Box<SheddingTree>,
    },
}

impl SheddingTree {
    pub fn complex(&self) -> &SimplicialComplex {
        match self {
            SheddingTree::Leaf(c) | SheddingTree::Node { complex: c, .. } => c,
        }
    }

    /// Shed vertices in preorder: node, deletion subtree, link subtree.
    pub fn vertices_preorder(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.preorder(&mut out);
        out
    }

    fn preorder(&self, out: &mut Vec<usize>) {
        if let SheddingTree::Node { vertex, deletion, link, .. } = self {
            out.push(*vertex);
            deletion.preorder(out);
            link.preorder(out);
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            SheddingTree::Leaf(_) => 1,
            SheddingTree::Node { deletion, link, .. } => deletion.leaf_count() + link.leaf_count(),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            SheddingTree::Leaf(_) => 1,
            SheddingTree::Node { deletion, link, .. } => 1 + deletion.node_count() + link.node_count(),
        }
    }

    /// Rechecks the shedding condition and the deletion/link children at every node.
    pub fn verify(&self) -> Result<()> {
        match self {
            SheddingTree::Leaf(c) if c.facet_count() <= 1 => Ok(()),
            SheddingTree::Leaf(c) => Err(Error::Invariant(format!("leaf with {} facets", c.facet_count()))),
            SheddingTree::Node { complex, vertex, deletion, link } => {
                let (del, lk) = complex.deletion_link(*vertex);
                if !is_shedding(complex, &del) {
                    return Err(Error::Invariant(format!("vertex {vertex} does not shed")));
                }
                if deletion.complex() != &del || link.complex() != &lk {
                    return Err(Error::Invariant(format!("children of vertex {vertex} are not Del/Lk")));
                }
                deletion.verify()?;
                link.verify()
            }
        }
    }
}

/// Every facet of `Del_Γ(v)` is a facet of `Γ`.
fn is_shedding(cx: &SimplicialComplex, del: &SimplicialComplex) -> bool {
    del.facets().iter().all(|f| cx.is_facet(*f))
}

pub const MAX_VD_VERTICES: usize = 10;

/// Searches for a vertex decomposition, trying vertices in increasing order.
pub fn is_vertex_decomposable(cx: &SimplicialComplex) -> Result<Option<SheddingTree>> {
    if cx.vertex_support().len() > MAX_VD_VERTICES {
        return Err(Error::TooLarge { what: "vertex count", bound: MAX_VD_VERTICES });
    }
    let mut memo = HashMap::new();
    if !decomposable(cx, &mut memo) {
        return Ok(None);
    }
    let tree = build_tree(cx, &mut memo);
    tree.verify()?;
    Ok(Some(tree))
}

fn decomposable(cx: &SimplicialComplex, memo: &mut HashMap<Vec<Face>, bool>) -> bool {
    if cx.facet_count() <= 1 {
        return true;
    }
    if let Some(&known) = memo.get(cx.facets()) {
        return known;
    }
    let found = shedding_choice(cx, memo).is_some();
    memo.insert(cx.facets().to_vec(), found);
    found
}

fn shedding_choice(cx: &SimplicialComplex, memo: &mut HashMap<Vec<Face>, bool>) -> Option<(usize, SimplicialComplex, SimplicialComplex)> {
    for v in cx.vertex_support().vertices() {
        let (del, lk) = cx.deletion_link(v);
        if is_shedding(cx, &del) && decomposable(&del, memo) && decomposable(&lk, memo) {
            return Some((v, del, lk));
        }
    }
    None
}

fn build_tree(cx: &SimplicialComplex, memo: &mut HashMap<Vec<Face>, bool>) -> SheddingTree {
    if cx.facet_count() <= 1 {
        return SheddingTree::Leaf(cx.clone());
    }
    let (vertex, del, lk) = shedding_choice(cx, memo).expect("memo says decomposable");
    SheddingTree::Node {
        complex: cx.clone(),
        vertex,
        deletion: Box::new(build_tree(&del, memo)),
        link: Box::new(build_tree(&lk, memo)),
    }
}

/// One node of the replay: the real `Ind(Δ')` on the vertex set `ground`,
/// and the parts `(B_j, r_j)` the constructive proof assigns to it.
#[derive(Clone, Debug)]
struct ReplayNode {
    n: usize,
    ground: Face,
    delta: SimplicialComplex,
    parts: Vec<(Face, usize)>,
}

impl ReplayNode {
    fn complex(&self) -> SimplicialComplex {
        let outside = Face::full(self.n).difference(self.ground).vertices().map(|v| Face::from_vertices([v]));
        SimplicialComplex::from_faces(self.n, self.delta.facets().iter().copied().chain(outside)).independence_complex()
    }

    /// Vertices that are facets of `Δ'` are no vertices of `Ind(Δ')` and
    /// leave every part. Rank-zero parts left over have all their singletons
    /// swallowed by larger faces, so they constrain nothing.
    fn normalize(mut self) -> Self {
        let loops = self.delta.facets().iter().filter(|f| f.len() == 1).fold(Face::EMPTY, |acc, f| acc.union(*f));
        self.ground = self.ground.difference(loops);
        self.delta = SimplicialComplex::from_faces(self.n, self.delta.facets().iter().copied().filter(|f| f.len() > 1));
        self.parts = self.parts.into_iter().map(|(b, r)| (b.intersection(self.ground), r)).filter(|&(b, r)| r > 0 && !b.is_empty()).collect();
        self
    }

    fn pivot(&self) -> Option<usize> {
        self.parts.iter().find(|(b, r)| b.len() > *r).and_then(|(b, _)| Face::max(*b))
    }

    fn deletion_parts(&self, i: usize) -> Vec<(Face, usize)> {
        self.parts.iter().map(|&(b, r)| (b.without(i), r)).collect()
    }

    fn link_parts(&self, i: usize) -> Vec<(Face, usize)> {
        self.parts.iter().map(|&(b, r)| if b.contains(i) { (b.without(i), r - 1) } else { (b, r) }).collect()
    }

    fn deletion(&self, i: usize) -> Self {
        let facets = self.delta.facets().iter().copied().filter(|f| !f.contains(i));
        let delta = SimplicialComplex::from_faces(self.n, facets);
        ReplayNode { n: self.n, ground: self.ground.without(i), delta, parts: self.deletion_parts(i) }.normalize()
    }

    /// `G ∪ {i}` avoids every facet iff `G` avoids every `H \ {i}`; only the
    /// minimal ones matter.
    fn link(&self, i: usize) -> Self {
        let cut: Vec<Face> = self.delta.facets().iter().map(|f| f.without(i)).collect();
        let minimal = cut.iter().copied().filter(|f| !cut.iter().any(|g| g != f && g.is_subset(*f)));
        let delta = SimplicialComplex::from_faces(self.n, minimal);
        ReplayNode { n: self.n, ground: self.ground.without(i), delta, parts: self.link_parts(i) }.normalize()
    }
}

/// `Ind(⋃ Δ_j^{[r_j]})` on `ground`.
fn ind_of_parts(n: usize, ground: Face, parts: &[(Face, usize)]) -> SimplicialComplex {
    let outside = Face::full(n).difference(ground).vertices().map(|v| Face::from_vertices([v]));
    let gens = parts.iter().flat_map(|&(b, r)| b.k_subsets(r + 1));
    SimplicialComplex::from_faces(n, gens.chain(outside)).independence_complex()
}

/// Outcome of replaying the constructive shedding order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheddingReplay {
    /// Shed vertices in preorder.
    pub order: Vec<usize>,
    /// Nodes whose shedding condition was checked on the real complex.
    pub verified_steps: usize,
    /// Nodes where `Ind` of the part-wise Del or Lk (drop `i` from every part,
    /// lower `r_j` by one in the link) is not the real Del or Lk. This happens
    /// when a face of one part lies inside a larger face of another part
    /// through `i`; the shedding order is unaffected.
    pub formula_mismatches: usize,
    /// Nodes where the constructive pivot does not shed (or no part is left
    /// although the complex is not a simplex); the generic search takes over
    /// the whole subtree there.
    pub fallback_nodes: usize,
    pub tree: SheddingTree,
}

/// Sheds `i = max B_p` for the first part with `|B_p| > r_p`, carrying the
/// parts along as the constructive proof does, and checks the shedding
/// condition on the real complex at every node. Where that pivot fails,
/// the subtree comes from [`is_vertex_decomposable`] and is counted in
/// `fallback_nodes`.
pub fn interval_shedding_order(spec: &IntervalComplexSpec) -> Result<SheddingReplay> {
    let parts = spec.parts().iter().map(|p| (p.face(), p.rank)).collect();
    let root = ReplayNode { n: spec.n(), ground: Face::full(spec.n()), delta: spec.build(), parts }.normalize();
    let mut counts = Counts::default();
    let tree = replay(&root, &mut counts)?;
    tree.verify()?;
    Ok(SheddingReplay {
        order: tree.vertices_preorder(),
        verified_steps: counts.verified,
        formula_mismatches: counts.mismatches,
        fallback_nodes: counts.fallbacks,
        tree,
    })
}

#[derive(Default)]
struct Counts {
    verified: usize,
    mismatches: usize,
    fallbacks: usize,
}

/// Hands the node to the generic search; its tree is verified there.
fn fall_back(cx: SimplicialComplex, why: String, counts: &mut Counts) -> Result<SheddingTree> {
    let tree = is_vertex_decomposable(&cx)?.ok_or(Error::Invariant(why))?;
    counts.fallbacks += 1;
    counts.verified += tree.node_count() - tree.leaf_count();
    Ok(tree)
}

fn replay(node: &ReplayNode, counts: &mut Counts) -> Result<SheddingTree> {
    let cx = node.complex();
    // parts can outlive the faces they describe once their faces were swallowed
    let pivot = if node.delta.is_void() { None } else { node.pivot() };
    let Some(i) = pivot else {
        if cx.facet_count() != 1 || cx.facets()[0] != node.ground {
            let why = format!("no part left to shed but {:?} is not the simplex on {}", cx.facets(), node.ground);
            return fall_back(cx, why, counts);
        }
        return Ok(SheddingTree::Leaf(cx));
    };
    let (del, lk) = cx.deletion_link(i);
    if !is_shedding(&cx, &del) {
        return fall_back(cx, format!("vertex {i} fails the shedding condition and nothing else sheds"), counts);
    }
    let (del_node, lk_node) = (node.deletion(i), node.link(i));
    if del_node.complex() != del || lk_node.complex() != lk {
        return Err(Error::Invariant(format!("deletion or link of {i} lost track of the complex")));
    }
    let ground = node.ground.without(i);
    if ind_of_parts(node.n, ground, &node.deletion_parts(i)) != del || ind_of_parts(node.n, ground, &node.link_parts(i)) != lk {
        counts.mismatches += 1;
    }
    counts.verified += 1;
    Ok(SheddingTree::Node {
        complex: cx,
        vertex: i,
        deletion: Box::new(replay(&del_node, counts)?),
        link: Box::new(replay(&lk_node, counts)?),
    })
}

/// Minimal transversals of the facets of `Δ`, lexicographically ordered.
pub fn minimal_vertex_covers(delta: &SimplicialComplex) -> Vec<Face> {
    let mut covers = vec![Face::EMPTY];
    for &edge in delta.facets() {
        let mut next = Vec::with_capacity(covers.len() * edge.len().max(1));
        for &c in &covers {
            if !c.intersection(edge).is_empty() {
                next.push(c);
            } else {
                next.extend(edge.vertices().map(|v| c.with(v)));
            }
        }
        covers = minimal_elements(next);
    }
    sort_lex(&mut covers);
    covers
}

fn minimal_elements(sets: Vec<Face>) -> Vec<Face> {
    let mut uniq = sets;
    uniq.sort_by_key(|f| (f.len(), f.bits()));
    uniq.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(uniq.len());
    for f in uniq {
        if !kept.iter().any(|k| k.is_subset(f)) {
            kept.push(f);
        }
    }
    kept
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CmStatus {
    pub pure_ind: bool,
    pub unmixed: bool,
    pub cm: bool,
}

/// Purity of `Ind(Δ)` and unmixedness of `I(Δ)`, computed independently.
pub fn cm_status(delta: &SimplicialComplex) -> Result<CmStatus> {
    check_interval(delta)?;
    let pure_ind = delta.independence_complex().is_pure();
    let covers = minimal_vertex_covers(delta);
    let unmixed = covers.windows(2).all(|w| w[0].len() == w[1].len());
    if unmixed != pure_ind {
        return Err(Error::Invariant("cover sizes disagree with Ind purity".into()));
    }
    Ok(CmStatus { pure_ind, unmixed, cm: unmixed })
}

fn check_interval(delta: &SimplicialComplex) -> Result<()> {
    if delta.facets().iter().any(|f| f.is_empty()) {
        return Err(Error::Degenerate);
    }
    if !is_interval_complex(delta) {
        return Err(crate::interval::spec_from_complex(delta).err().unwrap_or(Error::NotUnitInterval));
    }
    Ok(())
}

/// An order of the minimal vertex covers of `Δ` (generators of `I(Δ)^∨`) in
/// which every colon ideal `(u_1..u_{k-1}) : u_k` is generated by variables.
pub fn dual_linear_quotients(delta: &SimplicialComplex) -> Result<Option<Vec<Face>>> {
    check_interval(delta)?;
    let mut gens = minimal_vertex_covers(delta);
    gens.sort_by(|a, b| a.len().cmp(&b.len()).then(a.lex_cmp(*b)));
    let mut order = Vec::with_capacity(gens.len());
    let mut used = vec![false; gens.len()];
    Ok(extend_order(&gens, &mut used, &mut order).then_some(order))
}

/// Whether `(prefix) : next` is generated by variables.
pub fn has_linear_colon(prefix: &[Face], next: Face) -> bool {
    let diffs: Vec<Face> = prefix.iter().map(|u| u.difference(next)).collect();
    diffs.iter().all(|d| diffs.iter().any(|e| e.len() == 1 && e.is_subset(*d)))
}

fn extend_order(gens: &[Face], used: &mut [bool], order: &mut Vec<Face>) -> bool {
    if order.len() == gens.len() {
        return true;
    }
    for i in 0..gens.len() {
        if used[i] || !has_linear_colon(order, gens[i]) {
            continue;
        }
        used[i] = true;
        order.push(gens[i]);
        if extend_order(gens, used, order) {
            return true;
        }
        order.pop();
        used[i] = false;
    }
    false
}
