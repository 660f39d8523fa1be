//! Monotone monodromy graphs: construction from a factorisation with the
//! special `σ₀`, validity checks, multiplicities and a canonical text form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::count::Oracle;
use super::permutation::{Composition, Permutation};
use super::search::for_each_sequence;
use crate::algebra::rational::{factorial, to_string};
use crate::combinat::{labellings, sorted_desc};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Normal,
    Dashed,
    Bold,
}

impl Colour {
    fn letter(self) -> char {
        match self {
            Colour::Normal => 'N',
            Colour::Dashed => 'D',
            Colour::Bold => 'B',
        }
    }
}

/// Endpoint of an edge. In-ends carry the index of their `σ₀` cycle, which
/// is construction bookkeeping only: the canonical form forgets it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    In(usize),
    Vertex(usize),
    Out,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub source: End,
    pub target: End,
    pub weight: usize,
    pub colour: Colour,
    pub counter: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonodromyGraph {
    pub a: usize,
    pub k: usize,
    /// Inner vertices are `0..vertices`, in their total order.
    pub vertices: usize,
    pub edges: Vec<Edge>,
}

/// A maximal path of bold edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
    /// In-ends whose edge is in the chain or enters one of its vertices.
    pub in_ends: usize,
}

impl Chain {
    pub fn first(&self) -> Option<usize> {
        self.vertices.iter().min().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.vertices.iter().max().copied()
    }
}

/// Builds the graph of `(σ₀, (r₁ s₁), …, (r_m s_m))` with `σ₀` the special
/// permutation of degree `ak`.
pub fn build_monodromy_graph(a: usize, k: usize, transpositions: &[(usize, usize)]) -> Result<MonodromyGraph> {
    let d = a * k;
    let mut prev_s = 0;
    for &(r, s) in transpositions {
        if !(1 <= r && r < s && s <= d) {
            return Err(Error::InvalidInput(format!("({r} {s}) is not a transposition of 1..={d}")));
        }
        if s < prev_s {
            return Err(Error::InvalidInput("transpositions are not monotone".into()));
        }
        prev_s = s;
    }
    let mut tau = Permutation::special_sigma0(a, k);
    let mut edges: Vec<Edge> = (0..k)
        .map(|q| Edge { source: End::In(q), target: End::Out, weight: a, colour: Colour::Dashed, counter: Some(1) })
        .collect();
    // edge currently carrying the cycle of each element
    let mut edge_of: Vec<usize> = (0..d).map(|x| x / a).collect();
    let cycle_of = |tau: &Permutation, x: usize| -> Vec<usize> {
        let mut c = vec![x];
        let mut y = tau.apply(x);
        while y != x {
            c.push(y);
            y = tau.apply(y);
        }
        c
    };
    for (v, &(r, s)) in transpositions.iter().enumerate() {
        let ell = (s - 1) % a + 1;
        let (er, es) = (edge_of[r - 1], edge_of[s - 1]);
        tau = Permutation::product(&[tau, Permutation::transposition(d, r, s)], Composition::REPO);
        if er == es {
            edges[er].target = End::Vertex(v);
            edges[er].colour = Colour::Bold;
            let (cr, cs) = (cycle_of(&tau, r), cycle_of(&tau, s));
            let nr = edges.len();
            edges.push(Edge {
                source: End::Vertex(v),
                target: End::Out,
                weight: cr.len(),
                colour: Colour::Normal,
                counter: None,
            });
            edges.push(Edge {
                source: End::Vertex(v),
                target: End::Out,
                weight: cs.len(),
                colour: Colour::Dashed,
                counter: Some(ell),
            });
            cr.iter().for_each(|&x| edge_of[x - 1] = nr);
            cs.iter().for_each(|&x| edge_of[x - 1] = nr + 1);
        } else {
            edges[er].target = End::Vertex(v);
            edges[es].target = End::Vertex(v);
            edges[es].colour = Colour::Bold;
            let c = cycle_of(&tau, r);
            let n = edges.len();
            edges.push(Edge {
                source: End::Vertex(v),
                target: End::Out,
                weight: c.len(),
                colour: Colour::Dashed,
                counter: Some(ell),
            });
            c.iter().for_each(|&x| edge_of[x - 1] = n);
        }
    }
    // the out-end through s_m, or through ak when there is no transposition
    let marked = transpositions.last().map_or(d, |&(_, s)| s);
    edges[edge_of[marked - 1]].colour = Colour::Bold;
    Ok(MonodromyGraph { a, k, vertices: transpositions.len(), edges })
}

impl MonodromyGraph {
    fn incoming(&self, v: usize) -> impl Iterator<Item = (usize, &Edge)> {
        self.edges.iter().enumerate().filter(move |(_, e)| e.target == End::Vertex(v))
    }

    fn outgoing(&self, v: usize) -> impl Iterator<Item = (usize, &Edge)> {
        self.edges.iter().enumerate().filter(move |(_, e)| e.source == End::Vertex(v))
    }

    pub fn is_cut(&self, v: usize) -> bool {
        self.incoming(v).count() == 1
    }

    pub fn out_ends(&self) -> Vec<&Edge> {
        let mut outs: Vec<&Edge> = self.edges.iter().filter(|e| e.target == End::Out).collect();
        // natural order: by vertex, the dashed or bold end after the normal one
        outs.sort_by_key(|e| {
            let v = match e.source {
                End::Vertex(v) => v as i64,
                _ => -1,
            };
            (v, e.colour != Colour::Normal)
        });
        outs
    }

    /// Weight and counter of the unique bold out-end, if there is exactly one.
    pub fn bold_out_end(&self) -> Option<(usize, Option<usize>)> {
        let bold: Vec<&Edge> = self.edges.iter().filter(|e| e.target == End::Out && e.colour == Colour::Bold).collect();
        (bold.len() == 1).then(|| (bold[0].weight, bold[0].counter))
    }

    /// Bold chains ordered by their first vertex; errors if a bold edge
    /// cannot be traced back to an in-end.
    pub fn chains(&self) -> Result<Vec<Chain>> {
        let mut used = vec![false; self.edges.len()];
        let mut chains = Vec::new();
        for (start, e) in self.edges.iter().enumerate() {
            if e.colour != Colour::Bold || !matches!(e.source, End::In(_)) {
                continue;
            }
            let mut chain = Chain { edges: vec![start], vertices: Vec::new(), in_ends: 0 };
            used[start] = true;
            let mut cur = e.target;
            while let End::Vertex(v) = cur {
                chain.vertices.push(v);
                let next: Vec<usize> =
                    self.outgoing(v).filter(|(_, o)| o.colour == Colour::Bold).map(|(i, _)| i).collect();
                match next.as_slice() {
                    [] => break,
                    [i] => {
                        used[*i] = true;
                        chain.edges.push(*i);
                        cur = self.edges[*i].target;
                    }
                    _ => return Err(Error::MalformedGraph(format!("vertex {v} has two bold outgoing edges"))),
                }
            }
            chain.in_ends = self
                .edges
                .iter()
                .enumerate()
                .filter(|(i, x)| {
                    matches!(x.source, End::In(_))
                        && (chain.edges.contains(i)
                            || matches!(x.target, End::Vertex(v) if chain.vertices.contains(&v)))
                })
                .count();
            chains.push(chain);
        }
        if let Some(i) = (0..self.edges.len()).find(|&i| self.edges[i].colour == Colour::Bold && !used[i]) {
            return Err(Error::MalformedGraph(format!("bold edge {i} is not on a chain starting at an in-end")));
        }
        chains.sort_by_key(|c| c.first());
        Ok(chains)
    }

    /// Every violated condition of a monotone monodromy graph of type `(g, μ)`.
    pub fn violations(&self, g: usize, mu: &[usize]) -> Vec<String> {
        let mut bad = Vec::new();
        let (a, k, nv) = (self.a, self.k, self.vertices);
        let in_ends: Vec<&Edge> = self.edges.iter().filter(|e| matches!(e.source, End::In(_))).collect();
        let outs: Vec<&Edge> = self.edges.iter().filter(|e| e.target == End::Out).collect();

        if in_ends.len() != k {
            bad.push(format!("{} in-ends, expected {k}", in_ends.len()));
        }
        if outs.len() != mu.len() {
            bad.push(format!("{} out-ends, expected {}", outs.len(), mu.len()));
        }
        // connectivity and first Betti number; nodes: inner vertices, then one per leaf
        let leaves = in_ends.len() + outs.len();
        let mut parent: Vec<usize> = (0..nv + leaves).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut leaf = nv;
        for e in &self.edges {
            let mut node = |end: End| match end {
                End::Vertex(v) => v,
                _ => {
                    leaf += 1;
                    leaf - 1
                }
            };
            let (x, y) = (node(e.source), node(e.target));
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            parent[rx] = ry;
        }
        let roots = (0..nv + leaves).filter(|&x| find(&mut parent, x) == x).count();
        if roots != 1 {
            bad.push(format!("{roots} connected components"));
        }
        let betti = self.edges.len() as i64 - (nv + leaves) as i64 + roots as i64;
        if betti != g as i64 {
            bad.push(format!("first Betti number {betti}, expected {g}"));
        }
        if in_ends.iter().any(|e| e.weight != a || e.counter != Some(1)) {
            bad.push("an in-end does not have weight a and counter 1".into());
        }
        if in_ends.iter().any(|e| e.colour == Colour::Normal) {
            bad.push("normal in-end".into());
        }
        let mut out_w: Vec<usize> = outs.iter().map(|e| e.weight).collect();
        out_w.sort_unstable_by(|x, y| y.cmp(x));
        if out_w != sorted_desc(mu) {
            bad.push(format!("out-end weights {out_w:?} do not match {mu:?}"));
        }
        if outs.iter().filter(|e| e.colour == Colour::Bold).count() != 1 {
            bad.push("not exactly one bold out-end".into());
        }
        for e in &self.edges {
            if let (End::Vertex(x), End::Vertex(y)) = (e.source, e.target) {
                if x >= y {
                    bad.push(format!("edge {x}->{y} runs against the vertex order"));
                }
            }
            match (e.colour, e.counter) {
                (Colour::Normal, Some(_)) => bad.push("normal edge with a counter".into()),
                (Colour::Dashed | Colour::Bold, None) => bad.push("dashed or bold edge without a counter".into()),
                (Colour::Dashed | Colour::Bold, Some(c)) if (!(1..=a).contains(&c) || c + e.weight <= a) => {
                    bad.push(format!("counter {c} invalid for weight {}", e.weight));
                }
                _ => {}
            }
        }
        for v in 0..nv {
            let ins: Vec<&Edge> = self.incoming(v).map(|(_, e)| e).collect();
            let outs: Vec<&Edge> = self.outgoing(v).map(|(_, e)| e).collect();
            if ins.len() + outs.len() != 3 || ins.is_empty() || outs.is_empty() {
                bad.push(format!("vertex {v} is not trivalent with both directions"));
                continue;
            }
            let win: usize = ins.iter().map(|e| e.weight).sum();
            let wout: usize = outs.iter().map(|e| e.weight).sum();
            if win != wout {
                bad.push(format!("vertex {v} unbalanced: {win} in, {wout} out"));
            }
            let mut cin: Vec<Colour> = ins.iter().map(|e| e.colour).collect();
            let mut cout: Vec<Colour> = outs.iter().map(|e| e.colour).collect();
            cin.sort();
            cout.sort();
            use Colour::*;
            let ok = match (cin.as_slice(), cout.as_slice()) {
                ([Bold], [Normal, Dashed | Bold]) => true,
                ([Normal | Dashed, Bold], [Dashed | Bold]) => true,
                _ => false,
            };
            if !ok {
                bad.push(format!("vertex {v} has colouring {cin:?} -> {cout:?}"));
            }
            let bold_in = ins.iter().find(|e| e.colour == Bold).and_then(|e| e.counter);
            let marked_out = outs.iter().find(|e| e.colour != Normal).and_then(|e| e.counter);
            if let (Some(i), Some(o)) = (bold_in, marked_out) {
                if i > o {
                    bad.push(format!("vertex {v}: bold counter {i} exceeds outgoing counter {o}"));
                }
            }
        }
        match self.chains() {
            Err(e) => bad.push(e.to_string()),
            Ok(chains) => {
                for w in chains.windows(2) {
                    if let (Some(l), Some(f)) = (w[0].last(), w[1].first()) {
                        if l >= f {
                            bad.push("bold chain intervals overlap".into());
                        }
                    }
                }
            }
        }
        bad
    }

    /// Byte string that is equal for two graphs iff they are isomorphic as
    /// ordered graphs with unlabelled leaves.
    pub fn canonical(&self) -> String {
        let end = |x: End| match x {
            End::In(_) => "I".to_string(),
            End::Vertex(v) => format!("V{v}"),
            End::Out => "O".to_string(),
        };
        let mut rows: Vec<((i64, i64, usize, Colour, usize), String)> = self
            .edges
            .iter()
            .map(|e| {
                let rank = |x: End| match x {
                    End::In(_) => -1,
                    End::Vertex(v) => v as i64,
                    End::Out => i64::MAX,
                };
                let key = (rank(e.source), rank(e.target), e.weight, e.colour, e.counter.unwrap_or(0));
                let counter = e.counter.map_or("-".to_string(), |c| c.to_string());
                (key, format!("{}>{}:{}{}{}", end(e.source), end(e.target), e.weight, e.colour.letter(), counter))
            })
            .collect();
        rows.sort();
        let mut s = format!("a={} k={} v={} ", self.a, self.k, self.vertices);
        for (i, (_, r)) in rows.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{r}");
        }
        s
    }
}

/// `n_Γ = k!/(n_N (n_N + n_{N−1}) ⋯ (n_N + … + n_1))`, chains listed from
/// the largest `C_1` down, `n_i` the in-end count of chain `C_i`.
pub fn n_gamma(k: usize, chains: &[Chain]) -> Result<BigInt> {
    // chains arrive earliest first, i.e. C_N first
    let mut denom = BigInt::from(1);
    let mut partial = 0;
    for c in chains {
        partial += c.in_ends;
        denom *= partial;
    }
    if partial != k {
        return Err(Error::MalformedGraph(format!("chains see {partial} in-ends, expected {k}")));
    }
    let num = factorial(k as u64);
    if &num % &denom != BigInt::from(0) {
        return Err(Error::MalformedGraph("n_Γ is not an integer".into()));
    }
    Ok(num / denom)
}

/// The same number as the product of factorial ratios counting admissible
/// assignments of `σ₀` cycles to in-ends.
pub fn n_gamma_assignments(k: usize, chains: &[Chain]) -> BigInt {
    let mut acc = BigRational::from_integer(BigInt::from(1));
    let mut used = 0;
    for c in chains.iter().rev() {
        if used + c.in_ends > k || used == k {
            return BigInt::from(0);
        }
        acc *= BigRational::from_integer(factorial((k - 1 - used) as u64));
        used += c.in_ends;
        acc /= BigRational::from_integer(factorial((k - used) as u64));
    }
    acc.to_integer()
}

/// `m(Γ) = n_Γ ∏_v m_v`.
pub fn graph_multiplicity(graph: &MonodromyGraph) -> Result<BigInt> {
    let chains = graph.chains()?;
    let mut m = n_gamma_assignments(graph.k, &chains);
    if m != n_gamma(graph.k, &chains)? {
        return Err(Error::MalformedGraph("chain in-end counts are inconsistent".into()));
    }
    for v in 0..graph.vertices {
        if graph.is_cut(v) {
            continue;
        }
        let side = graph
            .incoming(v)
            .find(|(_, e)| e.colour != Colour::Bold)
            .ok_or_else(|| Error::MalformedGraph(format!("join {v} has no normal or dashed ingoing edge")))?;
        m *= side.1.weight;
    }
    Ok(m)
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphTally {
    pub canonical: String,
    pub factorisations: u64,
    pub multiplicity: String,
    pub bold_weight: usize,
    pub bold_counter: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityReport {
    pub input: serde_json::Value,
    pub graphs: Vec<GraphTally>,
    /// `Σ_Γ m(Γ)` times the labellings of μ.
    pub total: String,
    /// `a^k k! H` from the memoised oracle.
    pub expected_total: String,
    pub violations: Vec<String>,
}

impl MultiplicityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Groups every monotone factorisation of type `(g, μ)` with the special `σ₀`
/// by its graph and compares each group size with `m(Γ)`, the refined tallies
/// with the refined counts, and the total with `a^k k! H`.
pub fn verify_multiplicity_lemma(a: usize, g: usize, mu: &[usize], oracle: &mut Oracle) -> Result<MultiplicityReport> {
    let d: usize = mu.iter().sum();
    let input = serde_json::json!({"a": a, "g": g, "mu": mu});
    let expected = oracle.hurwitz(a, g, mu)?;
    let mut violations = Vec::new();
    let mut groups: BTreeMap<String, (MonodromyGraph, u64)> = BTreeMap::new();
    let Some(m) = super::count::steps(a, g, mu.len(), d) else {
        return Ok(MultiplicityReport {
            input,
            graphs: Vec::new(),
            total: "0".into(),
            expected_total: to_string(&expected),
            violations,
        });
    };
    let k = d / a;
    let sigma0 = Permutation::special_sigma0(a, k);
    let want = sorted_desc(mu);
    let mut failure = None;
    for_each_sequence(&sigma0, m, true, Composition::REPO, |seq, tau| {
        if failure.is_some() || tau.cycle_type() != want || !transitive(d, a, seq) {
            return;
        }
        match build_monodromy_graph(a, k, seq) {
            Ok(gr) => {
                groups.entry(gr.canonical()).or_insert_with(|| (gr, 0)).1 += 1;
            }
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let mut graphs = Vec::new();
    let mut total = BigInt::from(0);
    let mut refined_seen: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
    for (canonical, (gr, count)) in groups {
        for v in gr.violations(g, mu) {
            violations.push(format!("{canonical}: {v}"));
        }
        let mult = graph_multiplicity(&gr)?;
        if mult != BigInt::from(count) {
            violations.push(format!("{canonical}: {count} factorisations, multiplicity formula gives {mult}"));
        }
        let n_alt = n_gamma_assignments(gr.k, &gr.chains()?);
        if n_alt != n_gamma(gr.k, &gr.chains()?)? {
            violations.push(format!("{canonical}: the two forms of n_Γ disagree"));
        }
        let (bw, bc) = gr.bold_out_end().unwrap_or((0, None));
        let mut rest = mu.to_vec();
        if let Some(i) = rest.iter().position(|&x| x == bw) {
            rest.remove(i);
        }
        *refined_seen.entry((bw, bc.unwrap_or(0))).or_default() += &mult * labellings(&rest);
        total += &mult;
        graphs.push(GraphTally {
            canonical,
            factorisations: count,
            multiplicity: mult.to_string(),
            bold_weight: bw,
            bold_counter: bc,
        });
    }
    let norm = BigInt::from(a).pow(k as u32) * factorial(k as u64);
    let total = BigRational::from_integer(total * labellings(mu));
    let expected_total = BigRational::from_integer(norm.clone()) * &expected;
    if total != expected_total {
        violations.push(format!("total {} differs from a^k k! H = {}", to_string(&total), to_string(&expected_total)));
    }
    // refined numbers read off the graphs: bold out-end (μ₁, ℓ)
    let mut firsts = mu.to_vec();
    firsts.sort_unstable();
    firsts.dedup();
    for &mu1 in &firsts {
        let mut rest = mu.to_vec();
        rest.remove(rest.iter().position(|&x| x == mu1).expect("present"));
        for ell in 1..=a {
            let want = oracle.refined(a, g, mu1, ell, &rest)? * BigRational::from_integer(norm.clone());
            let seen = BigRational::from_integer(refined_seen.get(&(mu1, ell)).cloned().unwrap_or_default());
            if want != seen {
                violations.push(format!(
                    "refined ({mu1} | {rest:?}), ℓ={ell}: graphs give {}, refined count {}",
                    to_string(&seen),
                    to_string(&want)
                ));
            }
        }
    }
    Ok(MultiplicityReport {
        input,
        graphs,
        total: to_string(&total),
        expected_total: to_string(&expected_total),
        violations,
    })
}

/// Whether `σ₀` (special, cycle length `a`) and the transpositions act transitively.
fn transitive(d: usize, a: usize, seq: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..d).map(|x| x / a * a).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for &(r, s) in seq {
        let (x, y) = (find(&mut parent, r - 1), find(&mut parent, s - 1));
        parent[x] = y;
    }
    let root = find(&mut parent, 0);
    (0..d).all(|x| find(&mut parent, x) == root)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_factorisation() {
        let g = build_monodromy_graph(2, 1, &[]).unwrap();
        assert_eq!(g.vertices, 0);
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.edges[0].colour, Colour::Bold);
        assert_eq!(g.edges[0].counter, Some(1));
        assert_eq!(g.edges[0].weight, 2);
        assert!(g.violations(0, &[2]).is_empty());
        assert_eq!(graph_multiplicity(&g).unwrap(), BigInt::from(1));
    }

    #[test]
    fn single_join_in_s2() {
        let g = build_monodromy_graph(1, 2, &[(1, 2)]).unwrap();
        assert_eq!(g.vertices, 1);
        assert!(!g.is_cut(0));
        let ins: Vec<_> = g.edges.iter().filter(|e| matches!(e.source, End::In(_))).collect();
        assert_eq!(ins.len(), 2);
        assert!(ins.iter().all(|e| e.weight == 1));
        assert_eq!(g.bold_out_end(), Some((2, Some(1))));
        assert!(g.violations(0, &[2]).is_empty(), "{:?}", g.violations(0, &[2]));
        assert_eq!(graph_multiplicity(&g).unwrap(), BigInt::from(1));
    }

    #[test]
    fn canonical_form_forgets_in_end_labels() {
        let x = build_monodromy_graph(1, 3, &[(1, 2), (1, 3)]).unwrap();
        let y = build_monodromy_graph(1, 3, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(x.canonical(), y.canonical());
        let z = build_monodromy_graph(1, 3, &[(1, 3), (2, 3)]).unwrap();
        assert_ne!(x.canonical(), z.canonical());
    }

    #[test]
    fn rejects_non_monotone_input() {
        assert!(build_monodromy_graph(1, 3, &[(1, 3), (1, 2)]).is_err());
        assert!(build_monodromy_graph(1, 3, &[(2, 2)]).is_err());
    }

    #[test]
    fn lemma_on_small_cases() {
        let mut o = Oracle::default();
        for (a, g, mu) in [(1, 0, vec![2]), (1, 0, vec![1, 1]), (1, 1, vec![1]), (2, 0, vec![1, 1, 2]), (2, 0, vec![4])]
        {
            let r = verify_multiplicity_lemma(a, g, &mu, &mut o).unwrap();
            assert!(r.passed(), "{mu:?}: {:?}", r.violations);
        }
    }
}
