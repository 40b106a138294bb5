//! Planarity testing with certificates.
//!
//! The decision procedure is the left-right (LR) planarity test: a DFS
//! orientation, lowpoint nesting order, and a conflict-pair stack. A planar
//! verdict carries a rotation system whose face count is checked against
//! Euler's formula; a non-planar verdict carries an edge-minimal non-planar
//! subgraph, which is checked to be a subdivision of K5 or K3,3.

use std::collections::HashMap;

use serde::Serialize;

use crate::graph::Graph;

/// False only when Euler's bound `m <= 3n - 6` (for `n >= 3`) already
/// proves non-planarity.
pub fn euler_filter(g: &Graph) -> bool {
    let n = g.vertex_count();
    n < 3 || g.edge_count() <= 3 * n - 6
}

/// Planarity decision without building a certificate.
pub fn test_planarity(g: &Graph) -> bool {
    LrState::new(g.vertex_count(), &g.edge_list()).run(false).is_some()
}

/// Certified planarity decision.
pub fn is_planar(g: &Graph) -> PlanarityVerdict {
    match LrState::new(g.vertex_count(), &g.edge_list()).run(true) {
        Some(rotation) => PlanarityVerdict::Planar(Embedding { rotation }),
        None => PlanarityVerdict::NonPlanar(extract_kuratowski(g)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanarityVerdict {
    Planar(Embedding),
    NonPlanar(KuratowskiWitness),
}

impl PlanarityVerdict {
    pub fn is_planar(&self) -> bool {
        matches!(self, PlanarityVerdict::Planar(_))
    }

    /// Re-checks the certificate against `g`.
    pub fn verify(&self, g: &Graph) -> Result<(), String> {
        match self {
            PlanarityVerdict::Planar(e) => e.verify(g),
            PlanarityVerdict::NonPlanar(w) => w.verify(g).map(|_| ()),
        }
    }
}

/// Combinatorial embedding: the clockwise cyclic order of neighbors at
/// every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub rotation: Vec<Vec<usize>>,
}

impl Embedding {
    /// Number of faces of the rotation system, summed over components.
    pub fn face_count(&self) -> usize {
        self.faces().len()
    }

    /// Faces as cyclic dart sequences `(u, v)`.
    pub fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let mut pos: HashMap<(usize, usize), usize> = HashMap::new();
        for (v, rot) in self.rotation.iter().enumerate() {
            for (i, &w) in rot.iter().enumerate() {
                pos.insert((v, w), i);
            }
        }
        let mut seen: HashMap<(usize, usize), bool> = HashMap::new();
        let mut faces = Vec::new();
        for (u, rot) in self.rotation.iter().enumerate() {
            for &v in rot {
                if seen.contains_key(&(u, v)) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (u, v);
                while !seen.contains_key(&(a, b)) {
                    seen.insert((a, b), true);
                    face.push((a, b));
                    let rb = &self.rotation[b];
                    let i = pos[&(b, a)];
                    let next = rb[(i + 1) % rb.len()];
                    a = b;
                    b = next;
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Checks that the rotation system belongs to `g` and that every
    /// component with at least one edge satisfies `V - E + F = 2`.
    pub fn verify(&self, g: &Graph) -> Result<(), String> {
        if self.rotation.len() != g.vertex_count() {
            return Err("rotation system has the wrong vertex count".into());
        }
        for (v, rot) in self.rotation.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted != g.neighbors(v) {
                return Err(format!("rotation at vertex {v} is not a permutation of its neighbors"));
            }
        }
        let faces = self.faces();
        let comps = g.components();
        let mut comp_of = vec![0; g.vertex_count()];
        for (c, comp) in comps.iter().enumerate() {
            for &v in comp {
                comp_of[v] = c;
            }
        }
        let mut face_per_comp = vec![0usize; comps.len()];
        for f in &faces {
            face_per_comp[comp_of[f[0].0]] += 1;
        }
        for (c, comp) in comps.iter().enumerate() {
            let edges: usize = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
            if edges == 0 {
                continue;
            }
            let euler = comp.len() as isize - edges as isize + face_per_comp[c] as isize;
            if euler != 2 {
                return Err(format!(
                    "component containing vertex {} has V - E + F = {euler}",
                    comp[0]
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subgraph that is a subdivision of K5 or K3,3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl KuratowskiWitness {
    /// Confirms that `edges` is a subgraph of `g` and a subdivision of the
    /// claimed Kuratowski graph with the claimed branch vertices.
    pub fn verify(&self, g: &Graph) -> Result<KuratowskiKind, String> {
        for &(u, v) in &self.edges {
            if !g.has_edge(u, v) {
                return Err(format!("witness edge ({u}, {v}) is not in the graph"));
            }
        }
        let kind = classify_subdivision(g.vertex_count(), &self.edges)
            .ok_or_else(|| "witness is not a K5 or K3,3 subdivision".to_string())?;
        if kind.0 != self.kind {
            return Err("witness kind mismatch".into());
        }
        if kind.1 != self.branch_vertices {
            return Err("witness branch vertices mismatch".into());
        }
        Ok(kind.0)
    }
}

fn extract_kuratowski(g: &Graph) -> KuratowskiWitness {
    let n = g.vertex_count();
    let mut edges = g.edge_list();
    let mut i = 0;
    while i < edges.len() {
        let mut trial = edges.clone();
        trial.remove(i);
        if LrState::new(n, &trial).run(false).is_none() {
            edges = trial;
        } else {
            i += 1;
        }
    }
    let (kind, branch_vertices) = classify_subdivision(n, &edges)
        .expect("edge-minimal non-planar graph is a Kuratowski subdivision");
    KuratowskiWitness {
        kind,
        branch_vertices,
        edges,
    }
}

/// Recognizes a subdivision of K5 or K3,3 given as an edge list.
fn classify_subdivision(n: usize, edges: &[(usize, usize)]) -> Option<(KuratowskiKind, Vec<usize>)> {
    let h = Graph::new(n, edges).ok()?;
    if h.edge_count() != edges.len() {
        return None;
    }
    let used: Vec<usize> = (0..n).filter(|&v| h.degree(v) > 0).collect();
    let branch: Vec<usize> = used.iter().copied().filter(|&v| h.degree(v) >= 3).collect();
    if used.iter().any(|&v| h.degree(v) == 1) {
        return None;
    }
    let kind = match (branch.len(), branch.iter().map(|&v| h.degree(v)).max()) {
        (5, Some(4)) if branch.iter().all(|&v| h.degree(v) == 4) => KuratowskiKind::K5,
        (6, Some(3)) => KuratowskiKind::K33,
        _ => return None,
    };
    let is_branch = |v: usize| h.degree(v) >= 3;
    let mut visited_internal = vec![false; n];
    let mut links: HashMap<(usize, usize), usize> = HashMap::new();
    for &b in &branch {
        for &first in h.neighbors(b) {
            let (mut prev, mut cur) = (b, first);
            while !is_branch(cur) {
                visited_internal[cur] = true;
                let next = *h.neighbors(cur).iter().find(|&&x| x != prev)?;
                prev = cur;
                cur = next;
            }
            if cur == b {
                return None;
            }
            *links.entry((b.min(cur), b.max(cur))).or_default() += 1;
        }
    }
    // Each path is traced once from each end.
    if links.values().any(|&c| c != 2) {
        return None;
    }
    if used.iter().any(|&v| !is_branch(v) && !visited_internal[v]) {
        return None;
    }
    match kind {
        KuratowskiKind::K5 => {
            if links.len() != 10 {
                return None;
            }
        }
        KuratowskiKind::K33 => {
            if links.len() != 9 {
                return None;
            }
            // Two-colour the branch vertices along the links.
            let mut colour: HashMap<usize, bool> = HashMap::new();
            colour.insert(branch[0], false);
            for _ in 0..branch.len() {
                for &(a, b) in links.keys() {
                    match (colour.get(&a).copied(), colour.get(&b).copied()) {
                        (Some(ca), None) => {
                            colour.insert(b, !ca);
                        }
                        (None, Some(cb)) => {
                            colour.insert(a, !cb);
                        }
                        (Some(ca), Some(cb)) if ca == cb => return None,
                        _ => {}
                    }
                }
            }
            let left = colour.values().filter(|&&c| c).count();
            if colour.len() != 6 || left != 3 {
                return None;
            }
        }
    }
    Some((kind, branch))
}

#[derive(Debug, Clone, Copy, Default)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

/// State of one LR planarity run. Edges are identified by index; each is
/// oriented exactly once by the DFS, from `tail` to `head`.
struct LrState {
    n: usize,
    adj: Vec<Vec<(usize, usize)>>,
    edge_count: usize,
    tail: Vec<usize>,
    head: Vec<usize>,
    oriented: Vec<bool>,
    height: Vec<Option<usize>>,
    parent_edge: Vec<Option<usize>>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<isize>,
    out_adj: Vec<Vec<usize>>,
    roots: Vec<usize>,
    reference: Vec<Option<usize>>,
    side: Vec<i8>,
    lowpt_edge: Vec<Option<usize>>,
    stack_bottom: Vec<usize>,
    stack: Vec<ConflictPair>,
}

impl LrState {
    fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        let m = edges.len();
        LrState {
            n,
            adj,
            edge_count: m,
            tail: vec![0; m],
            head: vec![0; m],
            oriented: vec![false; m],
            height: vec![None; n],
            parent_edge: vec![None; n],
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting: vec![0; m],
            out_adj: vec![Vec::new(); n],
            roots: Vec::new(),
            reference: vec![None; m],
            side: vec![1; m],
            lowpt_edge: vec![None; m],
            stack_bottom: vec![0; m],
            stack: Vec::new(),
        }
    }

    /// Returns the clockwise rotation system when planar (or an empty
    /// placeholder when `embed` is false), `None` when not planar.
    fn run(mut self, embed: bool) -> Option<Vec<Vec<usize>>> {
        if self.n > 2 && self.edge_count > 3 * self.n - 6 {
            return None;
        }
        for v in 0..self.n {
            if self.height[v].is_none() {
                self.height[v] = Some(0);
                self.roots.push(v);
                self.orient(v);
            }
        }
        for v in 0..self.n {
            let nesting = &self.nesting;
            self.out_adj[v].sort_by_key(|&e| nesting[e]);
        }
        for root in self.roots.clone() {
            if !self.test(root) {
                return None;
            }
        }
        if !embed {
            return Some(Vec::new());
        }
        Some(self.embed())
    }

    fn h(&self, v: usize) -> usize {
        self.height[v].expect("visited vertex")
    }

    fn orient(&mut self, v: usize) {
        let parent = self.parent_edge[v];
        let hv = self.h(v);
        for k in 0..self.adj[v].len() {
            let (w, id) = self.adj[v][k];
            if self.oriented[id] {
                continue;
            }
            self.oriented[id] = true;
            self.tail[id] = v;
            self.head[id] = w;
            self.out_adj[v].push(id);
            self.lowpt[id] = hv;
            self.lowpt2[id] = hv;
            match self.height[w] {
                None => {
                    self.parent_edge[w] = Some(id);
                    self.height[w] = Some(hv + 1);
                    self.orient(w);
                }
                Some(hw) => self.lowpt[id] = hw,
            }
            self.nesting[id] = 2 * self.lowpt[id] as isize;
            if self.lowpt2[id] < hv {
                self.nesting[id] += 1;
            }
            if let Some(e) = parent {
                if self.lowpt[id] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[id]);
                    self.lowpt[e] = self.lowpt[id];
                } else if self.lowpt[id] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[id]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[id]);
                }
            }
        }
    }

    fn conflicting(&self, interval: &Interval, edge: usize) -> bool {
        interval
            .high
            .is_some_and(|h| self.lowpt[h] > self.lowpt[edge])
    }

    fn lowest(&self, pair: &ConflictPair) -> usize {
        match (pair.left.low, pair.right.low) {
            (None, Some(r)) => self.lowpt[r],
            (Some(l), None) => self.lowpt[l],
            (Some(l), Some(r)) => self.lowpt[l].min(self.lowpt[r]),
            (None, None) => usize::MAX,
        }
    }

    fn test(&mut self, v: usize) -> bool {
        let parent = self.parent_edge[v];
        let hv = self.h(v);
        let ordered = self.out_adj[v].clone();
        for (idx, &ei) in ordered.iter().enumerate() {
            let w = self.head[ei];
            self.stack_bottom[ei] = self.stack.len();
            if self.parent_edge[w] == Some(ei) {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = Some(ei);
                self.stack.push(ConflictPair {
                    left: Interval::default(),
                    right: Interval {
                        low: Some(ei),
                        high: Some(ei),
                    },
                });
            }
            if self.lowpt[ei] < hv {
                let e = parent.expect("return edges imply a parent edge");
                if idx == 0 {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if let Some(e) = parent {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        loop {
            let mut q = self.stack.pop().expect("return edges of ei are on the stack");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let q_low = q.right.low.expect("non-empty right interval");
            if self.lowpt[q_low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else if let Some(pl) = p.right.low {
                    self.reference[pl] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q_low] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(pl) = p.right.low {
                self.reference[pl] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if let Some(pl) = p.left.low {
                self.reference[pl] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.tail[e];
        let hu = self.h(u);
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != hu {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.head[h] != u {
                    break;
                }
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.reference[l] = p.right.low;
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.head[h] != u {
                    break;
                }
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() {
                if let Some(r) = p.right.low {
                    self.reference[r] = p.left.low;
                    self.side[r] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < hu {
            let top = self.stack.last().expect("return edges remain on the stack");
            let (hl, hr) = (top.left.high, top.right.high);
            self.reference[e] = match (hl, hr) {
                (Some(l), None) => Some(l),
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                _ => hr,
            };
        }
    }

    /// Resolves the chain of side references starting at `e`.
    fn sign(&mut self, e: usize) -> i8 {
        let mut chain = vec![e];
        while let Some(r) = self.reference[*chain.last().unwrap()] {
            chain.push(r);
        }
        for k in (0..chain.len() - 1).rev() {
            let (a, b) = (chain[k], chain[k + 1]);
            self.side[a] *= self.side[b];
            self.reference[a] = None;
        }
        self.side[e]
    }

    fn embed(mut self) -> Vec<Vec<usize>> {
        for e in 0..self.edge_count {
            let s = self.sign(e) as isize;
            self.nesting[e] *= s;
        }
        let mut rot = Rotation::new(self.n);
        for v in 0..self.n {
            let nesting = &self.nesting;
            self.out_adj[v].sort_by_key(|&e| nesting[e]);
            let mut prev = None;
            for &e in &self.out_adj[v] {
                let w = self.head[e];
                rot.add_cw(v, w, prev);
                prev = Some(w);
            }
        }
        let mut left_ref = vec![0usize; self.n];
        let mut right_ref = vec![0usize; self.n];
        for root in self.roots.clone() {
            self.embed_dfs(root, &mut rot, &mut left_ref, &mut right_ref);
        }
        rot.into_lists()
    }

    fn embed_dfs(
        &self,
        v: usize,
        rot: &mut Rotation,
        left_ref: &mut [usize],
        right_ref: &mut [usize],
    ) {
        for &ei in &self.out_adj[v] {
            let w = self.head[ei];
            if self.parent_edge[w] == Some(ei) {
                rot.add_first(w, v);
                left_ref[v] = w;
                right_ref[v] = w;
                self.embed_dfs(w, rot, left_ref, right_ref);
            } else if self.side[ei] == 1 {
                rot.add_cw(w, v, Some(right_ref[w]));
            } else {
                rot.add_ccw(w, v, Some(left_ref[w]));
                left_ref[w] = v;
            }
        }
    }
}

/// Half-edge rotation under construction: doubly linked cyclic lists.
struct Rotation {
    cw: HashMap<(usize, usize), usize>,
    ccw: HashMap<(usize, usize), usize>,
    first: Vec<Option<usize>>,
}

impl Rotation {
    fn new(n: usize) -> Self {
        Rotation {
            cw: HashMap::new(),
            ccw: HashMap::new(),
            first: vec![None; n],
        }
    }

    fn add_cw(&mut self, v: usize, w: usize, reference: Option<usize>) {
        match reference {
            None => {
                self.cw.insert((v, w), w);
                self.ccw.insert((v, w), w);
                self.first[v] = Some(w);
            }
            Some(r) => {
                let after = self.cw[&(v, r)];
                self.cw.insert((v, r), w);
                self.cw.insert((v, w), after);
                self.ccw.insert((v, after), w);
                self.ccw.insert((v, w), r);
            }
        }
    }

    fn add_ccw(&mut self, v: usize, w: usize, reference: Option<usize>) {
        match reference {
            None => self.add_cw(v, w, None),
            Some(r) => {
                let before = self.ccw[&(v, r)];
                self.add_cw(v, w, Some(before));
                if self.first[v] == Some(r) {
                    self.first[v] = Some(w);
                }
            }
        }
    }

    fn add_first(&mut self, v: usize, w: usize) {
        let reference = self.first[v];
        self.add_ccw(v, w, reference);
    }

    fn into_lists(self) -> Vec<Vec<usize>> {
        self.first
            .iter()
            .enumerate()
            .map(|(v, first)| {
                let mut out = Vec::new();
                if let Some(start) = *first {
                    let mut cur = start;
                    loop {
                        out.push(cur);
                        cur = self.cw[&(v, cur)];
                        if cur == start {
                            break;
                        }
                    }
                }
                out
            })
            .collect()
    }
}
