//! Branch-and-search decision procedure with witness extraction.
//!
//! Every node first goes through the kernelizer, then two reduction rules
//! (cycle components, degree-1/degree-2 tails), then eight branching steps
//! tried in a fixed order: dominating vertices, chains, short chains,
//! degree-2 vertices, degree >= 5 vertices, triangle-free degree-3 vertices,
//! degree-3 vertices next to a degree-4 vertex, and finally arbitrary
//! branching on the remaining 3/4-regular components. Budget spends are
//! measured from the actually deleted sets, never from worst-case formulas.
//!
//! All tie-breaking is lexicographic, so trees, witnesses and statistics are
//! fully reproducible.

use std::collections::BTreeMap;

use crate::graph::{Graph, GraphError, VertexId, VertexSet};
use crate::kernel::{reduce, Instance, KernelResult};

/// What fired at a search node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum StepLabel {
    /// Leaf: negative budget, kernel said NO, or the graph emptied out.
    Base,
    Rr1,
    Rr2,
    Step1,
    Step2,
    Step3,
    Step4,
    Step5,
    Step6,
    Step7,
    Step8,
}

impl StepLabel {
    pub const ALL: [StepLabel; 11] = [
        StepLabel::Base,
        StepLabel::Rr1,
        StepLabel::Rr2,
        StepLabel::Step1,
        StepLabel::Step2,
        StepLabel::Step3,
        StepLabel::Step4,
        StepLabel::Step5,
        StepLabel::Step6,
        StepLabel::Step7,
        StepLabel::Step8,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            StepLabel::Base => "base",
            StepLabel::Rr1 => "rr1",
            StepLabel::Rr2 => "rr2",
            StepLabel::Step1 => "step1",
            StepLabel::Step2 => "step2",
            StepLabel::Step3 => "step3",
            StepLabel::Step4 => "step4",
            StepLabel::Step5 => "step5",
            StepLabel::Step6 => "step6",
            StepLabel::Step7 => "step7",
            StepLabel::Step8 => "step8",
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SearchStats {
    pub nodes_total: u64,
    pub nodes_per_step: BTreeMap<StepLabel, u64>,
    pub max_depth: usize,
    pub kernel_calls: u64,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub decision: bool,
    pub witness: Option<VertexSet>,
    pub stats: SearchStats,
}

#[derive(Debug, Clone)]
pub struct SolveConfig {
    /// Re-checks, at every node, that no earlier rule was applicable and that
    /// each branch keeps at most one isolated matched edge.
    pub audit: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self { audit: true }
    }
}

/// One branch: `remove` leaves the graph, `charge` (a subset) is added to the
/// deletion set and paid from the budget. `remove \ charge` is either empty
/// or a matched edge settled into the solution's induced matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub remove: VertexSet,
    pub charge: VertexSet,
}

impl Branch {
    pub fn spend(&self) -> usize {
        self.charge.len()
    }
}

fn delete_branch(v: VertexId) -> Branch {
    Branch {
        remove: VertexSet::from([v]),
        charge: VertexSet::from([v]),
    }
}

/// The branch that keeps `v`-`u` as a matched edge: everything else around
/// the pair is deleted and charged.
fn pair_branch(g: &Graph, v: VertexId, u: VertexId) -> Branch {
    debug_assert!(g.has_edge(v, u));
    let pair = VertexSet::from([v, u]);
    let charge = g.open_neighborhood(&pair).expect("pair is live");
    let mut remove = charge.clone();
    remove.insert(v);
    remove.insert(u);
    Branch { remove, charge }
}

/// True iff `v` dominates `u`, i.e. `u` is a neighbor and `N[u] ⊆ N[v]`.
pub fn dominates(g: &Graph, v: VertexId, u: VertexId) -> bool {
    g.has_edge(v, u) && g.neighbors(u).iter().all(|&w| w == v || g.has_edge(v, w))
}

/// Rule B1: branch on `v` into "delete v" plus one keep-the-edge branch per
/// neighbor, in ascending neighbor order.
pub fn branch_b1(g: &Graph, v: VertexId) -> Vec<Branch> {
    let mut out = vec![delete_branch(v)];
    for &u in g.neighbors(v) {
        out.push(pair_branch(g, v, u));
    }
    out
}

/// Rule B2: for `v` dominating `u`, branch into "delete v" and "keep vu".
pub fn branch_b2(g: &Graph, v: VertexId, u: VertexId) -> Vec<Branch> {
    assert!(dominates(g, v, u), "B2 requires N[{u}] ⊆ N[{v}]");
    vec![delete_branch(v), pair_branch(g, v, u)]
}

/// Reduction rule 1: a component in which every vertex has degree 2 is a
/// cycle; delete its smallest vertex.
pub fn find_rr1(g: &Graph) -> Option<Branch> {
    for comp in g.connected_components() {
        if comp.iter().all(|&v| g.degree(v).expect("live") == 2) {
            let v = *comp.iter().next().unwrap();
            return Some(delete_branch(v));
        }
    }
    None
}

/// Reduction rule 2: a degree-1 vertex `v` with a degree-2 neighbor `u`;
/// keep `vu` matched and delete `u`'s other neighbor.
pub fn find_rr2(g: &Graph) -> Option<Branch> {
    for v in g.vertices() {
        if g.degree(v).expect("live") != 1 {
            continue;
        }
        let u = *g.neighbors(v).iter().next().unwrap();
        if g.degree(u).expect("live") == 2 {
            return Some(pair_branch(g, v, u));
        }
    }
    None
}

fn find_step1(g: &Graph) -> Option<(VertexId, VertexId)> {
    for v in g.vertices() {
        if g.neighbors(v).len() < 3 {
            continue;
        }
        for &u in g.neighbors(v) {
            if dominates(g, v, u) {
                return Some((v, u));
            }
        }
    }
    None
}

/// A chain `u0-u1-u2-u3-u4`: `d(u0) >= 3`, the three middle vertices have
/// degree 2, and `u4 = u0` is allowed (a pendant cycle).
pub type Chain = (VertexId, VertexId, VertexId, VertexId, VertexId);

pub fn find_chain(g: &Graph) -> Option<Chain> {
    let deg = |v| g.degree(v).expect("live");
    for u0 in g.vertices() {
        if deg(u0) < 3 {
            continue;
        }
        for &u1 in g.neighbors(u0) {
            if deg(u1) != 2 {
                continue;
            }
            let u2 = *g.neighbors(u1).iter().find(|&&w| w != u0).unwrap();
            if deg(u2) != 2 {
                continue;
            }
            let u3 = *g.neighbors(u2).iter().find(|&&w| w != u1).unwrap();
            if u3 == u0 || deg(u3) != 2 {
                continue;
            }
            let u4 = *g.neighbors(u3).iter().find(|&&w| w != u2).unwrap();
            return Some((u0, u1, u2, u3, u4));
        }
    }
    None
}

/// A short chain `u0-u1-u2-u3`: both ends have degree >= 3, the two middles
/// have degree 2, and `u3 = u0` is allowed (a triangle hanging off `u0`).
pub type ShortChain = (VertexId, VertexId, VertexId, VertexId);

pub fn find_short_chain(g: &Graph) -> Option<ShortChain> {
    let deg = |v| g.degree(v).expect("live");
    for u0 in g.vertices() {
        if deg(u0) < 3 {
            continue;
        }
        for &u1 in g.neighbors(u0) {
            if deg(u1) != 2 {
                continue;
            }
            let u2 = *g.neighbors(u1).iter().find(|&&w| w != u0).unwrap();
            if deg(u2) != 2 {
                continue;
            }
            let u3 = *g.neighbors(u2).iter().find(|&&w| w != u1).unwrap();
            if deg(u3) >= 3 {
                return Some((u0, u1, u2, u3));
            }
        }
    }
    None
}

fn find_step4(g: &Graph) -> Option<VertexId> {
    g.vertices().find(|&v| g.neighbors(v).len() == 2)
}

fn find_step5(g: &Graph) -> Option<VertexId> {
    g.vertices().find(|&v| g.neighbors(v).len() > 4)
}

fn find_step6(g: &Graph) -> Option<VertexId> {
    g.vertices().find(|&v| {
        let nbrs = g.neighbors(v);
        nbrs.len() == 3 && {
            let ns: Vec<VertexId> = nbrs.iter().copied().collect();
            !g.has_edge(ns[0], ns[1]) && !g.has_edge(ns[0], ns[2]) && !g.has_edge(ns[1], ns[2])
        }
    })
}

/// Step-7 tuple `(v, u1, u2, u3)`: `v` has degree 3 and a degree-4 neighbor;
/// `u1-u2` is the unique edge inside `N(v)` with `u1` the degree-4 vertex of
/// the pair if there is one (smaller id on ties); `u3` is the third neighbor.
fn find_step7(g: &Graph) -> Option<(VertexId, VertexId, VertexId, VertexId)> {
    let deg = |v| g.degree(v).expect("live");
    let v = g
        .vertices()
        .find(|&v| deg(v) == 3 && g.neighbors(v).iter().any(|&u| deg(u) == 4))?;
    let ns: Vec<VertexId> = g.neighbors(v).iter().copied().collect();
    let pairs: Vec<(VertexId, VertexId)> = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .filter(|&&(i, j)| g.has_edge(ns[i], ns[j]))
        .map(|&(i, j)| (ns[i], ns[j]))
        .collect();
    assert_eq!(
        pairs.len(),
        1,
        "step 7 expects exactly one edge inside N(v); earlier steps were applicable otherwise"
    );
    let (p, q) = pairs[0];
    let u3 = *ns.iter().find(|&&w| w != p && w != q).unwrap();
    let (u1, u2) = if deg(p) == 4 && deg(q) != 4 {
        (p, q)
    } else if deg(q) == 4 && deg(p) != 4 {
        (q, p)
    } else {
        (p.min(q), p.max(q))
    };
    Some((v, u1, u2, u3))
}

/// Step 2: branch B1 on `u1`; in the delete-`u1` branch the tail `u2-u3`
/// immediately resolves like reduction rule 2, so the three children are
/// emitted directly with measured spends.
fn step2_children(g: &Graph, (u0, u1, u2, u3, _u4): Chain) -> Vec<Branch> {
    let g2 = g
        .delete_vertices(&VertexSet::from([u1]))
        .expect("chain is live");
    assert_eq!(g2.degree(u2), Ok(1), "tail after deleting u1");
    assert_eq!(g2.degree(u3), Ok(2), "tail after deleting u1");
    let tail = pair_branch(&g2, u2, u3);
    let mut remove = tail.remove;
    remove.insert(u1);
    let mut charge = tail.charge;
    charge.insert(u1);
    vec![
        Branch { remove, charge },
        pair_branch(g, u0, u1),
        pair_branch(g, u1, u2),
    ]
}

/// Step 3: branch B1 on `u1`; in the delete-`u1` branch, `u3` dominates `u2`,
/// so B2 on `u3` resolves the rest. Four children with measured spends.
fn step3_children(g: &Graph, (u0, u1, u2, u3): ShortChain) -> Vec<Branch> {
    let g2 = g
        .delete_vertices(&VertexSet::from([u1]))
        .expect("short chain is live");
    assert!(dominates(&g2, u3, u2), "u3 dominates u2 once u1 is deleted");
    // delete u1 and u3; u2 goes out isolated, all three are charged
    let first = Branch {
        remove: VertexSet::from([u1, u2, u3]),
        charge: VertexSet::from([u1, u2, u3]),
    };
    // keep u2-u3: the deleted neighborhood includes u1, matching a direct
    // pair branch in the original graph
    let second = pair_branch(g, u2, u3);
    vec![
        first,
        second,
        pair_branch(g, u0, u1),
        pair_branch(g, u1, u2),
    ]
}

/// Step 7: branch B1 on `u3`; in the delete-`u3` branch, `u1` dominates `v`,
/// so B2 on `u1` splits it further.
fn step7_children(
    g: &Graph,
    (v, u1, _u2, u3): (VertexId, VertexId, VertexId, VertexId),
) -> Vec<Branch> {
    let g2 = g
        .delete_vertices(&VertexSet::from([u3]))
        .expect("step 7 tuple is live");
    assert!(dominates(&g2, u1, v), "u1 dominates v once u3 is deleted");
    let keep_u1v = {
        let inner = pair_branch(&g2, u1, v);
        let mut remove = inner.remove;
        remove.insert(u3);
        let mut charge = inner.charge;
        charge.insert(u3);
        Branch { remove, charge }
    };
    let mut out = vec![
        Branch {
            remove: VertexSet::from([u1, u3]),
            charge: VertexSet::from([u1, u3]),
        },
        keep_u1v,
    ];
    for &w in g.neighbors(u3) {
        out.push(pair_branch(g, u3, w));
    }
    out
}

/// Picks the first applicable rule and its branches. The graph must be
/// nonempty and already kernelized.
fn dispatch(g: &Graph) -> (StepLabel, Vec<Branch>) {
    if let Some(b) = find_rr1(g) {
        return (StepLabel::Rr1, vec![b]);
    }
    if let Some(b) = find_rr2(g) {
        return (StepLabel::Rr2, vec![b]);
    }
    if let Some((v, u)) = find_step1(g) {
        return (StepLabel::Step1, branch_b2(g, v, u));
    }
    if let Some(chain) = find_chain(g) {
        return (StepLabel::Step2, step2_children(g, chain));
    }
    if let Some(sc) = find_short_chain(g) {
        return (StepLabel::Step3, step3_children(g, sc));
    }
    if let Some(v) = find_step4(g) {
        return (StepLabel::Step4, branch_b1(g, v));
    }
    if let Some(v) = find_step5(g) {
        return (StepLabel::Step5, branch_b1(g, v));
    }
    if let Some(v) = find_step6(g) {
        return (StepLabel::Step6, branch_b1(g, v));
    }
    if let Some(t) = find_step7(g) {
        return (StepLabel::Step7, step7_children(g, t));
    }
    let v = g
        .vertices()
        .next()
        .expect("dispatch needs a nonempty graph");
    (StepLabel::Step8, branch_b1(g, v))
}

/// Confirms that no rule preceding `label` is applicable. Fires as an
/// assertion; a violation is an implementation bug.
fn audit_precedence(g: &Graph, label: StepLabel) {
    use StepLabel::*;
    // lazy: a finder may only be evaluated once everything before it is known
    // to be inapplicable (step 7 in particular asserts that internally)
    type Applicable = fn(&Graph) -> bool;
    let checks: [(StepLabel, Applicable); 9] = [
        (Rr1, |g| find_rr1(g).is_some()),
        (Rr2, |g| find_rr2(g).is_some()),
        (Step1, |g| find_step1(g).is_some()),
        (Step2, |g| find_chain(g).is_some()),
        (Step3, |g| find_short_chain(g).is_some()),
        (Step4, |g| find_step4(g).is_some()),
        (Step5, |g| find_step5(g).is_some()),
        (Step6, |g| find_step6(g).is_some()),
        (Step7, |g| find_step7(g).is_some()),
    ];
    for (earlier, applicable) in checks {
        if earlier >= label {
            break;
        }
        assert!(
            !applicable(g),
            "precedence violated: {} fired while {} was applicable",
            label.as_str(),
            earlier.as_str()
        );
    }
    if label == Step8 {
        // at step 8 every component is 3-regular or 4-regular
        for comp in g.connected_components() {
            let degs: Vec<usize> = comp.iter().map(|&v| g.degree(v).unwrap()).collect();
            assert!(
                degs.iter().all(|&d| d == 3) || degs.iter().all(|&d| d == 4),
                "step 8 fired on a component that is not 3- or 4-regular"
            );
        }
    }
}

/// Confirms the budget accounting of a branch: the charge is paid exactly,
/// and anything removed without charge is a single matched edge whose entire
/// neighborhood is removed with it.
fn audit_branch(g: &Graph, branch: &Branch) {
    assert!(branch.charge.is_subset(&branch.remove));
    let kept: VertexSet = branch.remove.difference(&branch.charge).copied().collect();
    match kept.len() {
        0 => {}
        2 => {
            let mut it = kept.iter();
            let (a, b) = (*it.next().unwrap(), *it.next().unwrap());
            assert!(g.has_edge(a, b), "kept pair must be an edge");
            let open = g.open_neighborhood(&kept).expect("kept pair is live");
            assert!(
                open.is_subset(&branch.remove),
                "kept edge must end up isolated"
            );
        }
        other => panic!("branch keeps {other} uncharged vertices"),
    }
}

struct Searcher<'a, 'b> {
    cfg: &'a SolveConfig,
    stats: SearchStats,
    partial: Vec<VertexId>,
    /// 3-regular components already step-8-branched on the current path;
    /// audit only. A proper induced subgraph of a connected 3-regular graph
    /// is never 3- or 4-regular again, so step 8 must not re-fire inside one.
    step8_cubic_path: Vec<VertexSet>,
    trace: Option<&'b mut dyn FnMut(&str)>,
}

impl Searcher<'_, '_> {
    fn note(&mut self, depth: usize, label: StepLabel, k: i64) {
        self.stats.nodes_total += 1;
        *self.stats.nodes_per_step.entry(label).or_insert(0) += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        if let Some(t) = self.trace.as_deref_mut() {
            t(&format!("depth={depth} k={k} {}", label.as_str()));
        }
    }

    fn search(&mut self, g: &Graph, k: i64, depth: usize) -> bool {
        if k < 0 {
            self.note(depth, StepLabel::Base, k);
            return false;
        }
        self.stats.kernel_calls += 1;
        let reduced = reduce(&Instance::new(g.clone(), k));
        let KernelResult::Reduced {
            instance, forced, ..
        } = reduced
        else {
            self.note(depth, StepLabel::Base, k);
            return false;
        };
        let mark = self.partial.len();
        self.partial.extend(forced.iter().copied());
        let (g, k) = (instance.graph, instance.k);
        if g.is_empty() {
            self.note(depth, StepLabel::Base, k);
            return true;
        }

        let (label, children) = dispatch(&g);
        self.note(depth, label, k);
        let mut pushed_cubic = false;
        if self.cfg.audit {
            audit_precedence(&g, label);
            for child in &children {
                audit_branch(&g, child);
            }
            if label == StepLabel::Step8 {
                let v = g.vertices().next().expect("step 8 needs a vertex");
                let comp = g
                    .connected_components()
                    .into_iter()
                    .find(|c| c.contains(&v))
                    .expect("v lies in some component");
                assert!(
                    !self
                        .step8_cubic_path
                        .iter()
                        .any(|prev| comp.is_subset(prev)),
                    "step 8 fired again inside an already-branched 3-regular component"
                );
                if comp.iter().all(|&u| g.degree(u).expect("live") == 3) {
                    self.step8_cubic_path.push(comp);
                    pushed_cubic = true;
                }
            }
        }
        for child in children {
            let child_mark = self.partial.len();
            self.partial.extend(child.charge.iter().copied());
            let g2 = g.delete_vertices(&child.remove).expect("branch is live");
            if self.search(&g2, k - child.spend() as i64, depth + 1) {
                // an early YES unwinds through every ancestor, so the stale
                // audit stack is never consulted again
                return true;
            }
            self.partial.truncate(child_mark);
        }
        if pushed_cubic {
            self.step8_cubic_path.pop();
        }
        self.partial.truncate(mark);
        false
    }
}

/// Decides the instance, returning a validated witness on YES.
pub fn solve(inst: &Instance) -> SolveResult {
    solve_with(inst, &SolveConfig::default(), None)
}

pub fn solve_with(
    inst: &Instance,
    cfg: &SolveConfig,
    trace: Option<&mut dyn FnMut(&str)>,
) -> SolveResult {
    let mut searcher = Searcher {
        cfg,
        stats: SearchStats::default(),
        partial: Vec::new(),
        step8_cubic_path: Vec::new(),
        trace,
    };
    let decision = searcher.search(&inst.graph, inst.k, 0);
    let witness = decision.then(|| searcher.partial.iter().copied().collect::<VertexSet>());
    if let Some(w) = &witness {
        assert!(w.len() as i64 <= inst.k, "witness exceeds the budget");
        assert!(
            inst.graph
                .is_aim_deletion_set(w)
                .expect("witness ids are live"),
            "witness does not leave an induced matching"
        );
    }
    SolveResult {
        decision,
        witness,
        stats: searcher.stats,
    }
}

/// Smallest `k` for which the instance is a yes-instance, found by binary
/// search (the decision is monotone in `k`), plus the solve at that `k`.
pub fn find_min_k(g: &Graph, cfg: &SolveConfig) -> (i64, SolveResult) {
    let n = g.vertex_count() as i64;
    let mut lo = 0;
    let mut hi = n; // deleting everything always works
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if solve_with(&Instance::new(g.clone(), mid), cfg, None).decision {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let result = solve_with(&Instance::new(g.clone(), lo), cfg, None);
    debug_assert!(result.decision);
    (lo, result)
}

/// Checks a claimed solution: every id live, `|s| <= k`, and the residual an
/// induced matching.
pub fn verify_solution(g: &Graph, k: i64, s: &VertexSet) -> Result<bool, GraphError> {
    if s.iter().any(|v| !g.contains(*v)) {
        return Ok(false);
    }
    Ok(s.len() as i64 <= k && g.is_aim_deletion_set(s)?)
}
