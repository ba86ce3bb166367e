//! Decision trees for closure membership.
//!
//! `T_(b,B)` alternates between bases (even heights) and relation identifiers
//! (odd heights). An even vertex labeled `b'` gets one child per relation with
//! base `b'`. An odd vertex labeled `λ` gets one child per element of
//! `B_λ ∖ B` when that set is nonempty and avoids every base already used on
//! the path; otherwise it is a leaf.
//!
//! A good root yields a composition derivation of a relation below `(b, B)`;
//! a bad root yields a set `A ∈ Q(D)` with `b ∈ A` and `A ∩ B = ∅`, which
//! proves `(b, B)` fails on `E_D` and so lies outside the closure.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremal::in_q_set;
use crate::index_set::IndexSet;
use crate::relation::{DivRel, RelationSet};

/// Guard against pathological inputs; desk-scale trees are far smaller.
const MAX_VERTICES: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Label {
    /// Even vertex: an element of Base(D).
    Base(usize),
    /// Odd vertex: the 1-based identifier λ of a relation in canonical order.
    Relation(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub height: usize,
    pub label: Label,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub good: bool,
    pub extremely_bad: bool,
}

#[derive(Clone, Debug)]
pub struct DecisionTree {
    relations: Vec<DivRel>,
    base_set: IndexSet,
    query: (usize, IndexSet),
    vertices: Vec<Vertex>,
}

impl DecisionTree {
    pub fn root(&self) -> &Vertex {
        &self.vertices[0]
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> &Vertex {
        &self.vertices[id]
    }

    /// Relation with identifier λ (1-based).
    pub fn relation(&self, lambda: usize) -> DivRel {
        self.relations[lambda - 1]
    }

    pub fn height(&self) -> usize {
        self.vertices.iter().map(|v| v.height).max().unwrap_or(0)
    }

    pub fn is_leaf(&self, id: usize) -> bool {
        self.vertices[id].children.is_empty()
    }

    /// Labels of the even ancestors of `id` (`C(v)` for odd `v`).
    pub fn even_ancestor_labels(&self, id: usize) -> IndexSet {
        let mut out = IndexSet::EMPTY;
        let mut cur = self.vertices[id].parent;
        while let Some(p) = cur {
            if let Label::Base(b) = self.vertices[p].label {
                out.insert(b);
            }
            cur = self.vertices[p].parent;
        }
        out
    }

    /// Indented text export, one vertex per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(0, &mut out);
        out
    }

    fn write_text(&self, id: usize, out: &mut String) {
        let v = &self.vertices[id];
        let label = match v.label {
            Label::Base(b) => b.to_string(),
            Label::Relation(l) => format!("λ{l} {}", self.relation(l)),
        };
        let status = match (v.good, v.extremely_bad) {
            (true, _) => "good",
            (false, true) => "extremely bad",
            (false, false) => "bad",
        };
        let _ = writeln!(out, "{}{label} [{status}]", "  ".repeat(v.height));
        for &c in &v.children {
            self.write_text(c, out);
        }
    }

    /// Structured export: the vertex list with parent references.
    pub fn to_document(&self) -> TreeDocument {
        TreeDocument {
            base: self.query.0,
            targets: self.query.1,
            relations: self.relations.clone(),
            vertices: self.vertices.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeDocument {
    pub base: usize,
    pub targets: IndexSet,
    pub relations: Vec<DivRel>,
    pub vertices: Vec<Vertex>,
}

fn check_hypothesis(d: &RelationSet) -> Result<()> {
    match d.singleton_target() {
        Some(r) => Err(Error::TheoremHypothesis(r.to_string())),
        None => Ok(()),
    }
}

/// Builds and classifies `T_(b,B)`.
pub fn build_tree(d: &RelationSet, b: usize, targets: IndexSet) -> Result<DecisionTree> {
    check_hypothesis(d)?;
    if targets.is_empty() {
        return Err(Error::InvalidRelation("empty target set".into()));
    }
    let base_set = d.base_set();
    if !base_set.contains(b) {
        return Err(Error::RootNotInBaseSet);
    }
    let relations = d.to_vec();
    let mut vertices = vec![Vertex {
        height: 0,
        label: Label::Base(b),
        parent: None,
        children: Vec::new(),
        good: false,
        extremely_bad: false,
    }];
    // Breadth-first: every child gets a larger id than its parent.
    let mut next = 0;
    while next < vertices.len() {
        let id = next;
        next += 1;
        let labels: Vec<Label> = match vertices[id].label {
            Label::Base(bb) => relations
                .iter()
                .enumerate()
                .filter(|(_, r)| r.base() == bb)
                .map(|(k, _)| Label::Relation(k + 1))
                .collect(),
            Label::Relation(l) => {
                let diff = relations[l - 1].targets().difference(targets);
                let used = ancestors_even(&vertices, id);
                if !diff.is_empty() && diff.is_subset(base_set.difference(used)) {
                    diff.iter().map(Label::Base).collect()
                } else {
                    Vec::new()
                }
            }
        };
        for label in labels {
            let child = vertices.len();
            if child >= MAX_VERTICES {
                return Err(Error::Precondition(format!(
                    "decision tree exceeds {MAX_VERTICES} vertices"
                )));
            }
            let height = vertices[id].height + 1;
            vertices.push(Vertex {
                height,
                label,
                parent: Some(id),
                children: Vec::new(),
                good: false,
                extremely_bad: false,
            });
            vertices[id].children.push(child);
        }
    }
    // Leaves first.
    for id in (0..vertices.len()).rev() {
        let good = match vertices[id].label {
            Label::Relation(l) if vertices[id].children.is_empty() => {
                relations[l - 1].targets().is_subset(targets)
            }
            Label::Relation(_) => vertices[id].children.iter().all(|&c| vertices[c].good),
            Label::Base(_) => vertices[id].children.iter().any(|&c| vertices[c].good),
        };
        vertices[id].good = good;
    }
    for id in 0..vertices.len() {
        let parent_ok = vertices[id]
            .parent
            .is_none_or(|p| vertices[p].extremely_bad);
        vertices[id].extremely_bad = !vertices[id].good && parent_ok;
    }
    Ok(DecisionTree {
        relations,
        base_set,
        query: (b, targets),
        vertices,
    })
}

fn ancestors_even(vertices: &[Vertex], id: usize) -> IndexSet {
    let mut out = IndexSet::EMPTY;
    let mut cur = vertices[id].parent;
    while let Some(p) = cur {
        if let Label::Base(b) = vertices[p].label {
            out.insert(b);
        }
        cur = vertices[p].parent;
    }
    out
}

/// A composition derivation: start from `head` and compose, left to right,
/// with the result of each step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub head: DivRel,
    pub steps: Vec<Derivation>,
}

impl Derivation {
    pub fn evaluate(&self) -> DivRel {
        self.steps
            .iter()
            .fold(self.head, |acc, s| acc.compose(&s.evaluate()))
    }

    /// Every relation used as a head, in evaluation order.
    pub fn axioms(&self) -> Vec<DivRel> {
        let mut out = vec![self.head];
        for s in &self.steps {
            out.extend(s.axioms());
        }
        out
    }

    /// Flat list of the binary compositions performed, innermost first.
    pub fn transcript(&self) -> Vec<CompositionStep> {
        let mut out = Vec::new();
        self.collect_steps(&mut out);
        out
    }

    fn collect_steps(&self, out: &mut Vec<CompositionStep>) -> DivRel {
        let mut acc = self.head;
        for s in &self.steps {
            let right = s.collect_steps(out);
            let result = acc.compose(&right);
            out.push(CompositionStep {
                left: acc,
                right,
                result,
            });
            acc = result;
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CompositionStep {
    pub left: DivRel,
    pub right: DivRel,
    pub result: DivRel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// The query's base is not the base of any relation.
    BaseOutsideBaseSet,
    /// The decision tree's root is bad.
    BadRoot,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    InTrivial,
    InDerivation(Derivation),
    NotIn { witness: IndexSet, kind: WitnessKind },
}

impl Verdict {
    pub fn is_member(&self) -> bool {
        !matches!(self, Verdict::NotIn { .. })
    }
}

/// Decides `r ∈ D̄` and returns a certificate.
pub fn membership_with_certificate(d: &RelationSet, r: &DivRel) -> Result<Verdict> {
    check_hypothesis(d)?;
    r.check_universe(d.q())?;
    if r.is_trivial() {
        return Ok(Verdict::InTrivial);
    }
    if !d.base_set().contains(r.base()) {
        return Ok(Verdict::NotIn {
            witness: IndexSet::singleton(r.base()),
            kind: WitnessKind::BaseOutsideBaseSet,
        });
    }
    let tree = build_tree(d, r.base(), r.targets())?;
    if tree.root().good {
        Ok(Verdict::InDerivation(derive(&tree, 0)))
    } else {
        Ok(Verdict::NotIn {
            witness: witness(&tree, r.targets()),
            kind: WitnessKind::BadRoot,
        })
    }
}

/// Derivation for a good even vertex: its first good child's relation,
/// composed with the derivations of that child's children.
fn derive(tree: &DecisionTree, even: usize) -> Derivation {
    let w = *tree
        .vertex(even)
        .children
        .iter()
        .find(|&&c| tree.vertex(c).good)
        .expect("good even vertex has a good child");
    let Label::Relation(l) = tree.vertex(w).label else {
        unreachable!("children of even vertices are odd")
    };
    Derivation {
        head: tree.relation(l),
        steps: tree
            .vertex(w)
            .children
            .iter()
            .map(|&c| derive(tree, c))
            .collect(),
    }
}

/// `A₁ ∪ A₂`: labels of extremely bad even vertices, plus one `μ(v)` per
/// extremely bad leaf.
fn witness(tree: &DecisionTree, targets: IndexSet) -> IndexSet {
    let mut a = IndexSet::EMPTY;
    for (id, v) in tree.vertices().iter().enumerate() {
        if !v.extremely_bad {
            continue;
        }
        match v.label {
            Label::Base(b) => a.insert(b),
            Label::Relation(l) if tree.is_leaf(id) => {
                a.insert(mu(tree, id, l, targets));
            }
            Label::Relation(_) => {}
        }
    }
    a
}

/// Smallest element of `B_λ ∖ B` outside Base(D); failing that, the smallest
/// one among the even ancestors' labels.
fn mu(tree: &DecisionTree, leaf: usize, lambda: usize, targets: IndexSet) -> usize {
    let diff = tree.relation(lambda).targets().difference(targets);
    diff.difference(tree.base_set)
        .min()
        .or_else(|| diff.intersection(tree.even_ancestor_labels(leaf)).min())
        .expect("a bad leaf always has a valid μ")
}

/// Re-checks a verdict independently of the tree that produced it.
pub fn check_certificate(d: &RelationSet, r: &DivRel, verdict: &Verdict) -> Result<(), String> {
    match verdict {
        Verdict::InTrivial => {
            if r.is_trivial() {
                Ok(())
            } else {
                Err(format!("{r} is not trivial"))
            }
        }
        Verdict::InDerivation(der) => {
            if let Some(bad) = der.axioms().into_iter().find(|a| !d.contains(a)) {
                return Err(format!("derivation uses {bad}, which is not in D"));
            }
            let result = der.evaluate();
            if result.leq(r) {
                Ok(())
            } else {
                Err(format!("derivation yields {result}, which is not below {r}"))
            }
        }
        Verdict::NotIn { witness, .. } => {
            if IndexSet::max(*witness).is_some_and(|m| m > d.q()) {
                return Err(format!("witness {witness} leaves [{}]", d.q()));
            }
            if !in_q_set(d, *witness) {
                return Err(format!("witness {witness} is not in Q(D)"));
            }
            if !witness.contains(r.base()) {
                return Err(format!("witness {witness} misses the base {}", r.base()));
            }
            if witness.intersects(r.targets()) {
                return Err(format!("witness {witness} meets the targets {}", r.targets()));
            }
            Ok(())
        }
    }
}

pub fn verify_certificate(d: &RelationSet, r: &DivRel, verdict: &Verdict) -> bool {
    check_certificate(d, r, verdict).is_ok()
}
