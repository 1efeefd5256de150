//! Planar tree monomials of free nonsymmetric operads.
//!
//! A tree is stored as its left-to-right preorder node sequence, leaves
//! included, so structural equality, hashing and the derived `Ord` all come
//! for free. Leaves are numbered 1..n in the order they appear.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("slot {slot} out of range for an operation of arity {arity}")]
    SlotOutOfRange { slot: usize, arity: usize },
    #[error("cannot compare monomials of arity {0} and {1}")]
    ArityMismatch(usize, usize),
    #[error("malformed tree text at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A generator of a free operad or of a free algebra.
///
/// Algebra generators carry their weight in `arity` shifted by one, so the
/// same symbol table serves both sides of `A ↦ A⁺`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSymbol {
    pub name: String,
    pub arity: usize,
    /// Homological degree; zero for every user input.
    pub degree: i32,
}

impl GeneratorSymbol {
    pub fn operation(name: impl Into<String>, arity: usize) -> Self {
        GeneratorSymbol {
            name: name.into(),
            arity,
            degree: 0,
        }
    }

    /// Shifted algebra generator: weight `w` becomes arity `w + 1`.
    pub fn shifted(name: impl Into<String>, weight: usize) -> Self {
        Self::operation(name, weight + 1)
    }

    pub fn weight(&self) -> usize {
        self.arity - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Leaf,
    Vertex { label: u32, arity: u32 },
}

impl Node {
    pub fn arity(self) -> usize {
        match self {
            Node::Leaf => 0,
            Node::Vertex { arity, .. } => arity as usize,
        }
    }

    pub fn label(self) -> Option<u32> {
        match self {
            Node::Leaf => None,
            Node::Vertex { label, .. } => Some(label),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeMonomial {
    nodes: Vec<Node>,
}

/// An embedding of one tree monomial into another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occurrence {
    /// Preorder position of the image of the pattern's root.
    pub root: usize,
    /// Images of the pattern's vertices, in the pattern's preorder.
    pub vertices: Vec<usize>,
    /// Node ranges of the subtrees hanging at the pattern's leaves.
    pub leaf_spans: Vec<Range<usize>>,
}

impl TreeMonomial {
    /// The operad unit: a single leaf and no vertices.
    pub fn unit() -> Self {
        TreeMonomial { nodes: vec![Node::Leaf] }
    }

    pub fn corolla(label: u32, arity: usize) -> Self {
        let mut nodes = Vec::with_capacity(arity + 1);
        nodes.push(Node::Vertex {
            label,
            arity: arity as u32,
        });
        nodes.extend(std::iter::repeat(Node::Leaf).take(arity));
        TreeMonomial { nodes }
    }

    /// Builds `label(children…)`.
    pub fn vertex(label: u32, children: &[TreeMonomial]) -> Self {
        let mut nodes = vec![Node::Vertex {
            label,
            arity: children.len() as u32,
        }];
        for c in children {
            nodes.extend_from_slice(&c.nodes);
        }
        TreeMonomial { nodes }
    }

    /// Wraps a raw preorder sequence. Panics if it is not a well-formed tree.
    pub fn from_nodes(nodes: Vec<Node>) -> Self {
        let t = TreeMonomial { nodes };
        assert!(
            !t.nodes.is_empty() && t.subtree_end(0) == t.nodes.len(),
            "malformed preorder node sequence"
        );
        t
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn arity(&self) -> usize {
        self.nodes.iter().filter(|n| **n == Node::Leaf).count()
    }

    /// Number of internal vertices.
    pub fn weight(&self) -> usize {
        self.nodes.len() - self.arity()
    }

    pub fn is_unit(&self) -> bool {
        self.nodes.len() == 1
    }

    pub fn root_label(&self) -> Option<u32> {
        match self.nodes[0] {
            Node::Leaf => None,
            Node::Vertex { label, .. } => Some(label),
        }
    }

    /// Labels of the internal vertices in preorder.
    pub fn labels(&self) -> impl Iterator<Item = u32> + '_ {
        self.nodes.iter().filter_map(|n| match n {
            Node::Leaf => None,
            Node::Vertex { label, .. } => Some(*label),
        })
    }

    /// Preorder positions of the internal vertices.
    pub fn vertex_positions(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| self.nodes[i] != Node::Leaf)
            .collect()
    }

    pub fn leaf_positions(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| self.nodes[i] == Node::Leaf)
            .collect()
    }

    /// One past the last node of the subtree rooted at `pos`.
    pub fn subtree_end(&self, pos: usize) -> usize {
        let mut pending = 1usize;
        let mut i = pos;
        while pending > 0 {
            pending = pending - 1 + self.nodes[i].arity();
            i += 1;
        }
        i
    }

    /// Positions of the children of the vertex at `pos`, left to right.
    pub fn children(&self, pos: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes[pos].arity());
        let mut i = pos + 1;
        for _ in 0..self.nodes[pos].arity() {
            out.push(i);
            i = self.subtree_end(i);
        }
        out
    }

    pub fn subtree(&self, pos: usize) -> TreeMonomial {
        TreeMonomial {
            nodes: self.nodes[pos..self.subtree_end(pos)].to_vec(),
        }
    }

    /// Partial composition `self ∘_slot inner` (slots are 1-based).
    pub fn graft(&self, slot: usize, inner: &TreeMonomial) -> Result<TreeMonomial, TreeError> {
        let arity = self.arity();
        if slot == 0 || slot > arity {
            return Err(TreeError::SlotOutOfRange { slot, arity });
        }
        let pos = self.leaf_positions()[slot - 1];
        let mut nodes = Vec::with_capacity(self.nodes.len() + inner.nodes.len() - 1);
        nodes.extend_from_slice(&self.nodes[..pos]);
        nodes.extend_from_slice(&inner.nodes);
        nodes.extend_from_slice(&self.nodes[pos + 1..]);
        Ok(TreeMonomial { nodes })
    }

    /// Collapses the edge between the vertex at `child` and its parent into a
    /// single vertex carrying `label`.
    pub fn collapse_edge(&self, parent: usize, child: usize, label: u32) -> TreeMonomial {
        let arity = self.nodes[parent].arity() + self.nodes[child].arity() - 1;
        let mut nodes = Vec::with_capacity(self.nodes.len() - 1);
        nodes.extend_from_slice(&self.nodes[..parent]);
        nodes.push(Node::Vertex {
            label,
            arity: arity as u32,
        });
        nodes.extend_from_slice(&self.nodes[parent + 1..child]);
        nodes.extend_from_slice(&self.nodes[child + 1..]);
        TreeMonomial { nodes }
    }

    /// Internal edges as (parent position, child position, 1-based slot).
    pub fn internal_edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for p in self.vertex_positions() {
            for (k, c) in self.children(p).into_iter().enumerate() {
                if self.nodes[c] != Node::Leaf {
                    out.push((p, c, k + 1));
                }
            }
        }
        out
    }

    /// The word of labels on each root-to-leaf path, root first.
    pub fn path_sequence(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::with_capacity(self.arity());
        // (label, remaining children) along the current root path.
        let mut stack: Vec<(u32, usize)> = Vec::new();
        for node in &self.nodes {
            match *node {
                Node::Vertex { label, arity } => stack.push((label, arity as usize)),
                Node::Leaf => {
                    out.push(stack.iter().map(|(l, _)| *l).collect());
                    while let Some(top) = stack.last_mut() {
                        top.1 -= 1;
                        if top.1 > 0 {
                            break;
                        }
                        stack.pop();
                    }
                }
            }
        }
        out
    }

    fn match_from(&self, pattern: &TreeMonomial, mut j: usize, mut i: usize, occ: &mut Occurrence) -> Option<(usize, usize)> {
        match pattern.nodes[j] {
            Node::Leaf => {
                let end = self.subtree_end(i);
                occ.leaf_spans.push(i..end);
                Some((j + 1, end))
            }
            node => {
                if self.nodes[i] != node {
                    return None;
                }
                occ.vertices.push(i);
                j += 1;
                i += 1;
                for _ in 0..node.arity() {
                    (j, i) = self.match_from(pattern, j, i, occ)?;
                }
                Some((j, i))
            }
        }
    }

    /// The occurrence of `pattern` rooted at position `pos`, if any.
    pub fn occurrence_at(&self, pattern: &TreeMonomial, pos: usize) -> Option<Occurrence> {
        let mut occ = Occurrence {
            root: pos,
            vertices: Vec::with_capacity(pattern.weight()),
            leaf_spans: Vec::with_capacity(pattern.arity()),
        };
        self.match_from(pattern, 0, pos, &mut occ).map(|_| occ)
    }

    /// Rebuilds `self` with the occurrence `occ` of some pattern replaced by
    /// `replacement`, a tree of the pattern's arity.
    pub fn substitute(&self, occ: &Occurrence, replacement: &TreeMonomial) -> TreeMonomial {
        debug_assert_eq!(replacement.arity(), occ.leaf_spans.len());
        // Preorder ends with a leaf, so the last leaf span closes the occurrence.
        let end = occ.leaf_spans.last().expect("every tree has a leaf").end;
        let mut nodes = Vec::with_capacity(self.nodes.len() + replacement.nodes.len());
        nodes.extend_from_slice(&self.nodes[..occ.root]);
        let mut spans = occ.leaf_spans.iter();
        for n in &replacement.nodes {
            match n {
                Node::Leaf => nodes.extend_from_slice(&self.nodes[spans.next().unwrap().clone()]),
                v => nodes.push(*v),
            }
        }
        nodes.extend_from_slice(&self.nodes[end..]);
        TreeMonomial { nodes }
    }

    /// Common multiple of `self` and `top` in which the root of `top` sits on
    /// the vertex at position `at` of `self`. Returns the merged tree; `self`
    /// occurs at position 0 and `top` at position `at`.
    pub fn overlap(&self, at: usize, top: &TreeMonomial) -> Option<TreeMonomial> {
        fn merge(base: &TreeMonomial, i: usize, top: &TreeMonomial, j: usize, out: &mut Vec<Node>) -> Option<(usize, usize)> {
            match (base.nodes[i], top.nodes[j]) {
                (Node::Leaf, Node::Leaf) => {
                    out.push(Node::Leaf);
                    Some((i + 1, j + 1))
                }
                (Node::Leaf, _) => {
                    let end = top.subtree_end(j);
                    out.extend_from_slice(&top.nodes[j..end]);
                    Some((i + 1, end))
                }
                (_, Node::Leaf) => {
                    let end = base.subtree_end(i);
                    out.extend_from_slice(&base.nodes[i..end]);
                    Some((end, j + 1))
                }
                (b, t) => {
                    if b != t {
                        return None;
                    }
                    out.push(b);
                    let (mut i, mut j) = (i + 1, j + 1);
                    for _ in 0..b.arity() {
                        (i, j) = merge(base, i, top, j, out)?;
                    }
                    Some((i, j))
                }
            }
        }
        if self.nodes[at] == Node::Leaf || top.is_unit() {
            return None;
        }
        let mut out = Vec::with_capacity(self.nodes.len() + top.nodes.len());
        out.extend_from_slice(&self.nodes[..at]);
        let (i, _) = merge(self, at, top, 0, &mut out)?;
        out.extend_from_slice(&self.nodes[i..]);
        Some(TreeMonomial { nodes: out })
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> TreeDisplay<'a> {
        TreeDisplay { tree: self, names }
    }

    /// Parses the canonical text form, e.g. `a(a(*,*),*)`.
    pub fn parse_canonical(text: &str, lookup: impl Fn(&str) -> Option<u32>) -> Result<Self, TreeError> {
        struct P<'s, F> {
            s: &'s [u8],
            pos: usize,
            lookup: F,
            nodes: Vec<Node>,
        }
        impl<F: Fn(&str) -> Option<u32>> P<'_, F> {
            fn err<T>(&self, msg: &str) -> Result<T, TreeError> {
                Err(TreeError::Parse {
                    pos: self.pos,
                    msg: msg.into(),
                })
            }
            fn skip_ws(&mut self) {
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
                    self.pos += 1;
                }
            }
            fn tree(&mut self) -> Result<(), TreeError> {
                self.skip_ws();
                if self.s.get(self.pos) == Some(&b'*') {
                    self.pos += 1;
                    self.nodes.push(Node::Leaf);
                    return Ok(());
                }
                let start = self.pos;
                while self.pos < self.s.len() && !b"(),* \t\n".contains(&self.s[self.pos]) {
                    self.pos += 1;
                }
                if start == self.pos {
                    return self.err("expected a generator name or '*'");
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let Some(label) = (self.lookup)(name) else {
                    return self.err(&format!("unknown generator '{name}'"));
                };
                self.skip_ws();
                if self.s.get(self.pos) != Some(&b'(') {
                    return self.err("expected '('");
                }
                self.pos += 1;
                let at = self.nodes.len();
                self.nodes.push(Node::Vertex { label, arity: 0 });
                let mut arity = 0;
                loop {
                    self.tree()?;
                    arity += 1;
                    self.skip_ws();
                    match self.s.get(self.pos) {
                        Some(b',') => self.pos += 1,
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return self.err("expected ',' or ')'"),
                    }
                }
                self.nodes[at] = Node::Vertex { label, arity };
                Ok(())
            }
        }
        let mut p = P {
            s: text.as_bytes(),
            pos: 0,
            lookup,
            nodes: Vec::new(),
        };
        p.tree()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return p.err("trailing input");
        }
        Ok(TreeMonomial { nodes: p.nodes })
    }
}

impl fmt::Debug for TreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &TreeMonomial, i: usize, f: &mut fmt::Formatter<'_>) -> Result<usize, fmt::Error> {
            match t.nodes[i] {
                Node::Leaf => {
                    write!(f, "*")?;
                    Ok(i + 1)
                }
                Node::Vertex { label, arity } => {
                    write!(f, "g{label}(")?;
                    let mut j = i + 1;
                    for k in 0..arity {
                        if k > 0 {
                            write!(f, ",")?;
                        }
                        j = go(t, j, f)?;
                    }
                    write!(f, ")")?;
                    Ok(j)
                }
            }
        }
        go(self, 0, f).map(|_| ())
    }
}

/// Canonical text: generator name followed by parenthesized children, leaves as `*`.
pub struct TreeDisplay<'a> {
    tree: &'a TreeMonomial,
    names: &'a [String],
}

impl fmt::Display for TreeDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut close: Vec<usize> = Vec::new();
        let mut first_child = true;
        for node in &self.tree.nodes {
            if !first_child {
                write!(f, ",")?;
            }
            match *node {
                Node::Leaf => {
                    write!(f, "*")?;
                    first_child = false;
                    while let Some(top) = close.last_mut() {
                        *top -= 1;
                        if *top > 0 {
                            break;
                        }
                        close.pop();
                        write!(f, ")")?;
                    }
                }
                Node::Vertex { label, arity } => {
                    write!(f, "{}(", self.names[label as usize])?;
                    close.push(arity as usize);
                    first_child = true;
                }
            }
        }
        Ok(())
    }
}

/// All occurrences of `pattern` in `m`.
///
/// The unit pattern occurs once at every leaf of `m`.
pub fn divides(pattern: &TreeMonomial, m: &TreeMonomial) -> Vec<Occurrence> {
    let positions = if pattern.is_unit() {
        m.leaf_positions()
    } else {
        let root = pattern.nodes[0];
        (0..m.nodes.len()).filter(|&i| m.nodes[i] == root).collect()
    };
    positions
        .into_iter()
        .filter_map(|p| m.occurrence_at(pattern, p))
        .collect()
}

pub fn is_divisible(pattern: &TreeMonomial, m: &TreeMonomial) -> bool {
    if pattern.is_unit() {
        return true;
    }
    let root = pattern.nodes[0];
    (0..m.nodes.len()).any(|i| m.nodes[i] == root && m.occurrence_at(pattern, i).is_some())
}

/// Sort key realizing a [`MonomialOrder`]; compares lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderKey(Vec<i64>);

/// Path-degree-lexicographic order on tree monomials of equal arity.
///
/// Trees are compared first by the lengths of their root-to-leaf paths, leaf
/// by leaf, then by the label words of those paths under the generator
/// ranking, and finally by their preorder sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    /// Rank of each label; larger ranks are greater.
    ranks: Vec<i64>,
    /// Whether longer paths rank higher.
    pub longer_paths_greater: bool,
}

impl MonomialOrder {
    /// Order in which `greatest_first[0]` is the greatest generator.
    pub fn path_deglex(greatest_first: &[u32]) -> Self {
        let size = greatest_first.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
        let mut ranks = vec![-1; size];
        for (k, &l) in greatest_first.iter().enumerate() {
            ranks[l as usize] = (greatest_first.len() - k) as i64;
        }
        MonomialOrder {
            ranks,
            longer_paths_greater: true,
        }
    }

    /// Declaration order: label 0 is the greatest.
    pub fn declaration(generators: usize) -> Self {
        Self::path_deglex(&(0..generators as u32).collect::<Vec<_>>())
    }

    pub fn reversed_paths(mut self) -> Self {
        self.longer_paths_greater = !self.longer_paths_greater;
        self
    }

    pub fn rank(&self, label: u32) -> i64 {
        self.ranks.get(label as usize).copied().unwrap_or(-1)
    }

    pub fn key(&self, t: &TreeMonomial) -> OrderKey {
        let paths = t.path_sequence();
        let sign = if self.longer_paths_greater { 1 } else { -1 };
        let mut key: Vec<i64> = Vec::with_capacity(t.nodes.len() * 3);
        key.extend(paths.iter().map(|p| sign * p.len() as i64));
        for p in &paths {
            key.extend(p.iter().map(|&l| self.rank(l)));
        }
        key.extend(t.nodes.iter().map(|n| match n {
            Node::Leaf => 0,
            Node::Vertex { label, .. } => 1 + self.rank(*label) + 1,
        }));
        OrderKey(key)
    }

    pub fn compare(&self, a: &TreeMonomial, b: &TreeMonomial) -> Result<Ordering, TreeError> {
        if a.arity() != b.arity() {
            return Err(TreeError::ArityMismatch(a.arity(), b.arity()));
        }
        Ok(self.key(a).cmp(&self.key(b)))
    }
}

/// Enumerates tree monomials arity by arity.
///
/// `generators` lists `(label, arity)` pairs (arities at least 2). Only trees
/// accepted by `accept` are kept, and only accepted trees are used as
/// subtrees, so a subtree-closed predicate (such as "normal with respect to a
/// rewriting system") prunes the search.
pub struct TreeEnumerator<F> {
    generators: Vec<(u32, usize)>,
    accept: F,
    by_arity: Vec<Vec<TreeMonomial>>,
}

impl<F: Fn(&TreeMonomial) -> bool> TreeEnumerator<F> {
    pub fn new(generators: Vec<(u32, usize)>, accept: F) -> Self {
        assert!(
            generators.iter().all(|&(_, a)| a >= 2),
            "enumeration requires generators of arity at least 2"
        );
        TreeEnumerator {
            generators,
            accept,
            by_arity: vec![Vec::new(), vec![TreeMonomial::unit()]],
        }
    }

    pub fn trees(&mut self, arity: usize) -> &[TreeMonomial] {
        while self.by_arity.len() <= arity {
            let n = self.by_arity.len();
            let mut found = Vec::new();
            for &(label, a) in &self.generators.clone() {
                if a > n {
                    continue;
                }
                for parts in compositions(n, a) {
                    let lists: Vec<&[TreeMonomial]> = parts.iter().map(|&p| self.by_arity[p].as_slice()).collect();
                    if lists.iter().any(|l| l.is_empty()) {
                        continue;
                    }
                    let mut idx = vec![0usize; a];
                    'product: loop {
                        let mut nodes = vec![Node::Vertex { label, arity: a as u32 }];
                        for (l, &k) in lists.iter().zip(&idx) {
                            nodes.extend_from_slice(&l[k].nodes);
                        }
                        let t = TreeMonomial { nodes };
                        if (self.accept)(&t) {
                            found.push(t);
                        }
                        for pos in (0..a).rev() {
                            idx[pos] += 1;
                            if idx[pos] < lists[pos].len() {
                                continue 'product;
                            }
                            idx[pos] = 0;
                        }
                        break;
                    }
                }
            }
            self.by_arity.push(found);
        }
        &self.by_arity[arity]
    }
}

/// Ordered ways to write `n` as a sum of `k` positive parts.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            if n == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if n < k {
            return;
        }
        for first in 1..=n - (k - 1) {
            cur.push(first);
            go(n - first, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Index of trees by value, for turning tree lists into vector coordinates.
pub fn index_of(trees: &[TreeMonomial]) -> HashMap<TreeMonomial, usize> {
    trees.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect()
}
