//! Independent sets of a graph through powers of a multivector.
//!
//! Each vertex `i` of a graph on `m` vertices gets the multivector
//! `o_i = e_1 ⋯ e_{i-1} q_i e_{i+1}^{a_{i,i+1}} ⋯ e_m^{a_{i,m}}` with
//! `e_j = p_j q_j` and `e_j^0 = 1`. With `O = Σ o_i`, the graph has an
//! independent set of size `k` exactly when `O^k ≠ 0`, and the `q` slots of
//! each surviving EFB term of `O^k` name one such set.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;

use crate::check_dim;
use crate::efb::{EfbElement, EfbMultivector, EfbSymbol};
use crate::error::{Error, Result};
use crate::scalar::{MulCounter, Scalar};
use crate::spinor::is_simple_spinor_form;
use crate::transform::{witt_vector_efb, NullKind};

/// Default vertex limit for the exhaustive subset oracles.
pub const DEFAULT_ORACLE_LIMIT: usize = 16;

/// Simple undirected graph; vertices are `1..=m`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    m: usize,
    // bit j-1 of rows[i-1] is a_{ij}
    rows: Vec<u64>,
}

impl Graph {
    /// Graph with no edges.
    pub fn empty(m: usize) -> Result<Self> {
        check_dim(m)?;
        Ok(Graph { m, rows: vec![0; m] })
    }

    pub fn complete(m: usize) -> Result<Self> {
        let mut g = Self::empty(m)?;
        for i in 1..=m {
            for j in i + 1..=m {
                g.add_edge(i, j)?;
            }
        }
        Ok(g)
    }

    pub fn path(m: usize) -> Result<Self> {
        let edges: Vec<_> = (1..m).map(|i| (i, i + 1)).collect();
        Self::from_edges(m, &edges)
    }

    pub fn cycle(m: usize) -> Result<Self> {
        let mut edges: Vec<_> = (1..m).map(|i| (i, i + 1)).collect();
        if m > 2 {
            edges.push((m, 1));
        }
        Self::from_edges(m, &edges)
    }

    /// The Petersen graph: outer 5-cycle 1..5, inner pentagram 6..10.
    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i + 1, (i + 1) % 5 + 1));
            edges.push((i + 1, i + 6));
            edges.push((i + 6, (i + 2) % 5 + 6));
        }
        Self::from_edges(10, &edges).expect("valid Petersen edges")
    }

    pub fn from_edges(m: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(m)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Graph whose edge set is selected by the bits of `mask`, one bit per
    /// pair `i < j` in lexicographic order. Used to enumerate all graphs.
    pub fn from_edge_mask(m: usize, mask: u64) -> Result<Self> {
        let mut g = Self::empty(m)?;
        let mut bit = 0;
        for i in 1..=m {
            for j in i + 1..=m {
                if mask >> bit & 1 == 1 {
                    g.add_edge(i, j)?;
                }
                bit += 1;
            }
        }
        Ok(g)
    }

    /// Erdős–Rényi graph with edge probability `p`.
    pub fn random<R: Rng + ?Sized>(m: usize, p: f64, rng: &mut R) -> Result<Self> {
        let mut g = Self::empty(m)?;
        for i in 1..=m {
            for j in i + 1..=m {
                if rng.gen_bool(p) {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.m {
            return Err(Error::IndexOutOfRange { index: v, max: self.m });
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Parse(format!("self-loop at vertex {u}")));
        }
        self.rows[u - 1] |= 1 << (v - 1);
        self.rows[v - 1] |= 1 << (u - 1);
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && v >= 1 && u <= self.m && v <= self.m && self.rows[u - 1] >> (v - 1) & 1 == 1
    }

    /// `a_{ij}` as 0/1.
    pub fn adjacency(&self, i: usize, j: usize) -> u8 {
        self.has_edge(i, j) as u8
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.m {
            for j in i + 1..=self.m {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let all = if self.m == 64 { u64::MAX } else { (1u64 << self.m) - 1 };
        Graph {
            m: self.m,
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(i, r)| !r & all & !(1 << i))
                .collect(),
        }
    }

    /// Neighbourhood of 1-based vertex `v` as a bitmask over 0-based bits.
    fn neighbours(&self, v: usize) -> u64 {
        self.rows[v - 1]
    }

    /// Whether the vertex set (bitmask, bit `i-1` for vertex `i`) has no edge.
    pub fn is_independent_mask(&self, set: u64) -> bool {
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            if self.rows[v] & set != 0 {
                return false;
            }
            rest &= rest - 1;
        }
        true
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().all(|&v| v >= 1 && v <= self.m) && self.is_independent_mask(to_mask(set))
    }

    /// Independent and no vertex can be added.
    pub fn is_maximal_independent(&self, set: &[usize]) -> bool {
        if !self.is_independent(set) {
            return false;
        }
        let mask = to_mask(set);
        (1..=self.m).all(|v| mask >> (v - 1) & 1 == 1 || self.neighbours(v) & mask != 0)
    }

    /// Parses DIMACS ASCII: `c` comments, one `p edge n m` header, `e u v`
    /// edge lines with 1-based vertices. Duplicate edges are merged.
    pub fn parse_dimacs(text: &str) -> Result<Graph> {
        let mut graph: Option<Graph> = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            let bad = |msg: &str| Error::Parse(format!("DIMACS line {}: {msg}: `{line}`", lineno + 1));
            let mut tokens = line.split_whitespace();
            match tokens.next() {
                None | Some("c") => {}
                Some("p") => {
                    if graph.is_some() {
                        return Err(bad("duplicate problem line"));
                    }
                    let kind = tokens.next().ok_or_else(|| bad("missing format"))?;
                    if kind != "edge" && kind != "col" {
                        return Err(bad("expected `p edge n m`"));
                    }
                    let n: usize = tokens
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| bad("invalid vertex count"))?;
                    graph = Some(Graph::empty(n)?);
                }
                Some("e") => {
                    let g = graph.as_mut().ok_or_else(|| bad("edge before problem line"))?;
                    let u: usize = tokens.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("invalid vertex"))?;
                    let v: usize = tokens.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("invalid vertex"))?;
                    g.add_edge(u, v).map_err(|e| bad(&e.to_string()))?;
                }
                Some(_) => return Err(bad("unknown line type")),
            }
        }
        graph.ok_or_else(|| Error::Parse("DIMACS input has no `p edge` line".into()))
    }

    /// Parses one `u v` pair per line (1-based). Blank lines and lines
    /// starting with `#` or `c` are skipped. The vertex count is `m` if
    /// given, else the largest vertex mentioned.
    pub fn parse_edge_list(text: &str, m: Option<usize>) -> Result<Graph> {
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with('c') {
                continue;
            }
            let parsed: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(format!("edge list line {}: `{line}`", lineno + 1)))?;
            if parsed.len() != 2 {
                return Err(Error::Parse(format!("edge list line {}: expected `u v`", lineno + 1)));
            }
            edges.push((parsed[0], parsed[1]));
        }
        let n = m.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0));
        Graph::from_edges(n, &edges)
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p edge {} {}\n", self.m, self.edge_count());
        for (u, v) in self.edges() {
            s.push_str(&format!("e {u} {v}\n"));
        }
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(m={}, edges={:?})", self.m, self.edges())
    }
}

fn to_mask(set: &[usize]) -> u64 {
    set.iter().fold(0u64, |acc, &v| acc | 1 << (v - 1))
}

fn from_mask(mask: u64) -> Vec<usize> {
    (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// `A'`: the upper triangle of the adjacency matrix with the strict lower
/// triangle set to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModifiedAdjacency {
    m: usize,
    rows: Vec<u64>,
}

impl ModifiedAdjacency {
    pub fn from_graph(g: &Graph) -> Self {
        let rows = (1..=g.m)
            .map(|i| {
                let lower = (1u64 << (i - 1)) - 1;
                let upper = g.neighbours(i) & !lower & !(1 << (i - 1));
                upper | lower
            })
            .collect();
        ModifiedAdjacency { m: g.m, rows }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `a'_{ij}` as 0/1.
    pub fn get(&self, i: usize, j: usize) -> u8 {
        (self.rows[i - 1] >> (j - 1) & 1) as u8
    }
}

/// `z_i = q_i + Σ_j a_{ij} p_j`. Since `{p_i, q_j} = δ_{ij}`,
/// `{z_i, z_j} = (a_{ij} + a_{ji}) · 1`: zero exactly on non-edges.
pub fn z_vector(i: usize, g: &Graph) -> Result<EfbMultivector> {
    g.check_vertex(i)?;
    let m = g.m;
    let mut z = witt_vector_efb(NullKind::Q, i, m)?;
    for j in 1..=m {
        if g.has_edge(i, j) {
            z = z.add(&witt_vector_efb(NullKind::P, j, m)?)?;
        }
    }
    Ok(z)
}

/// `o_i` in EFB form: slot `i` is `q`, slots with `a'_{ij} = 1` are `p q`,
/// and every other slot ranges over `q p + p q`. All coefficients are 1.
pub fn o_multivector(i: usize, aprime: &ModifiedAdjacency) -> Result<EfbMultivector> {
    let m = aprime.m;
    if i == 0 || i > m {
        return Err(Error::IndexOutOfRange { index: i, max: m });
    }
    let mut elements = vec![EfbElement::uniform(m, EfbSymbol::PQ)?];
    for j in 1..=m {
        if j == i {
            elements.iter_mut().for_each(|e| *e = e.with_slot(j - 1, EfbSymbol::Q));
        } else if aprime.get(i, j) == 0 {
            let with_qp: Vec<_> = elements.iter().map(|e| e.with_slot(j - 1, EfbSymbol::QP)).collect();
            elements.extend(with_qp);
        }
    }
    EfbMultivector::from_terms(m, elements.into_iter().map(|e| (e, Scalar::one())))
}

/// Outcome of multiplying `o_i` and `o_j` in both orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCase {
    pub i: usize,
    pub j: usize,
    pub aprime_ij: u8,
    pub aprime_ji: u8,
    pub ij_zero: bool,
    pub ji_zero: bool,
    pub anticommutator_zero: bool,
}

/// Products `o_i o_j` for every ordered pair `i < j` (and `i = j`).
pub fn pair_products_table(g: &Graph) -> Result<Vec<PairCase>> {
    let aprime = ModifiedAdjacency::from_graph(g);
    let os = (1..=g.m).map(|i| o_multivector(i, &aprime)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for i in 1..=g.m {
        for j in i..=g.m {
            let ij = os[i - 1].efb_product(&os[j - 1])?;
            let ji = os[j - 1].efb_product(&os[i - 1])?;
            out.push(PairCase {
                i,
                j,
                aprime_ij: aprime.get(i, j),
                aprime_ji: aprime.get(j, i),
                ij_zero: ij.is_zero(),
                ji_zero: ji.is_zero(),
                anticommutator_zero: ij.add(&ji)?.is_zero(),
            });
        }
    }
    Ok(out)
}

/// `O = Σ_i o_i`.
pub fn big_o(g: &Graph) -> Result<EfbMultivector> {
    let aprime = ModifiedAdjacency::from_graph(g);
    let mut o = EfbMultivector::zero(g.m);
    for i in 1..=g.m {
        o = o.add(&o_multivector(i, &aprime)?)?;
    }
    Ok(o)
}

/// Successive powers `O, O^2, …`, collected after every product.
pub struct OPowers {
    o: EfbMultivector,
    current: EfbMultivector,
    k: usize,
    counter: MulCounter,
}

impl OPowers {
    pub fn new(g: &Graph) -> Result<Self> {
        let o = big_o(g)?;
        Ok(OPowers { current: o.clone(), o, k: 1, counter: MulCounter::enabled() })
    }

    pub fn o(&self) -> &EfbMultivector {
        &self.o
    }

    /// Exponent of [`OPowers::current`].
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn current(&self) -> &EfbMultivector {
        &self.current
    }

    /// Scalar multiplications spent so far.
    pub fn multiplications(&self) -> u64 {
        self.counter.count()
    }

    /// Advances to the next power.
    pub fn step(&mut self) -> Result<&EfbMultivector> {
        self.current = self.current.efb_product_with(&self.o, &mut self.counter)?;
        self.k += 1;
        Ok(&self.current)
    }
}

/// `O^k`, `1 ≤ k ≤ m`.
pub fn o_power(g: &Graph, k: usize) -> Result<EfbMultivector> {
    if k == 0 || k > g.m {
        return Err(Error::IndexOutOfRange { index: k, max: g.m });
    }
    let mut powers = OPowers::new(g)?;
    while powers.k() < k && !powers.current().is_zero() {
        powers.step()?;
    }
    if powers.k() < k {
        return Ok(EfbMultivector::zero(g.m));
    }
    Ok(powers.current().clone())
}

/// Whether the graph has an independent set of size `k`, decided by
/// `O^k ≠ 0`.
pub fn independence_test(g: &Graph, k: usize) -> Result<bool> {
    Ok(!o_power(g, k)?.is_zero())
}

/// Largest `k` with `O^k ≠ 0` together with that power.
pub fn independence_number_with_power(g: &Graph) -> Result<(usize, EfbMultivector)> {
    let mut powers = OPowers::new(g)?;
    let mut last = powers.current().clone();
    while powers.k() < g.m {
        if powers.step()?.is_zero() {
            break;
        }
        last = powers.current().clone();
    }
    let alpha = if powers.current().is_zero() { powers.k() - 1 } else { powers.k() };
    Ok((alpha, last))
}

pub fn independence_number(g: &Graph) -> Result<usize> {
    Ok(independence_number_with_power(g)?.0)
}

/// Clique number as the independence number of the complement.
pub fn clique_number(g: &Graph) -> Result<usize> {
    independence_number(&g.complement())
}

/// The `q`-slot index sets (1-based, ascending) of the terms of a power of
/// `O`. Coefficients are ignored.
pub fn extract_independent_sets(power: &EfbMultivector) -> BTreeSet<Vec<usize>> {
    power
        .blades()
        .map(|e| {
            (0..e.m())
                .filter(|&i| e.slot(i) == EfbSymbol::Q)
                .map(|i| i + 1)
                .collect()
        })
        .collect()
}

/// Ordered product `o_{j1} ⋯ o_{jk}` for an ascending vertex list.
pub fn o_product(g: &Graph, set: &[usize]) -> Result<EfbMultivector> {
    let aprime = ModifiedAdjacency::from_graph(g);
    let mut acc = EfbMultivector::identity(g.m)?;
    for &v in set {
        acc = acc.efb_product(&o_multivector(v, &aprime)?)?;
    }
    Ok(acc)
}

/// Whether the ordered `o` product of an independent set is a single EFB
/// term. This holds for every maximal independent set.
pub fn maximal_term_is_simple(g: &Graph, set: &[usize]) -> Result<bool> {
    if set.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parse(format!("vertex set {set:?} is not strictly ascending")));
    }
    let product = o_product(g, set)?;
    if product.is_zero() {
        return Err(Error::NotIndependent(set.to_vec()));
    }
    Ok(is_simple_spinor_form(&product).is_some())
}

fn check_oracle(g: &Graph, limit: usize) -> Result<()> {
    if g.m > limit {
        return Err(Error::LimitExceeded { what: "exhaustive oracle", m: g.m, limit });
    }
    Ok(())
}

/// Independence number by enumerating every vertex subset.
pub fn brute_force_mis(g: &Graph, limit: usize) -> Result<usize> {
    check_oracle(g, limit)?;
    Ok((0..1u64 << g.m)
        .filter(|&s| g.is_independent_mask(s))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0))
}

/// Every independent set of size exactly `k`, by subset enumeration.
pub fn enumerate_independent_sets(g: &Graph, k: usize, limit: usize) -> Result<BTreeSet<Vec<usize>>> {
    check_oracle(g, limit)?;
    Ok((0..1u64 << g.m)
        .filter(|&s| s.count_ones() as usize == k && g.is_independent_mask(s))
        .map(from_mask)
        .collect())
}

/// Every maximal independent set, by subset enumeration.
pub fn enumerate_maximal_sets(g: &Graph, limit: usize) -> Result<BTreeSet<Vec<usize>>> {
    check_oracle(g, limit)?;
    Ok((0..1u64 << g.m)
        .filter(|&s| g.is_independent_mask(s) && (0..g.m).all(|v| s >> v & 1 == 1 || g.rows[v] & s != 0))
        .map(from_mask)
        .collect())
}

/// `Ψ(A)`: sum over maximal independent sets of their (single-term) `o`
/// products, each taken with coefficient +1.
pub fn graph_spinor(g: &Graph, limit: usize) -> Result<EfbMultivector> {
    let mut out = EfbMultivector::zero(g.m);
    for set in enumerate_maximal_sets(g, limit)? {
        let product = o_product(g, &set)?;
        let e = is_simple_spinor_form(&product).ok_or(Error::NotIndependent(set.clone()))?;
        out.add_term(e, Scalar::one());
    }
    Ok(out)
}

/// A graph on `m` vertices whose unique maximum independent set is
/// `{1, …, k}`: the first `k` vertices are pairwise non-adjacent, the rest
/// form a clique joined to all of them. Needs `k ≥ 2` unless `m = 1`.
pub fn unique_maximum_graph(m: usize, k: usize) -> Result<Graph> {
    if k == 0 || k > m || (k == 1 && m > 1) {
        return Err(Error::IndexOutOfRange { index: k, max: m });
    }
    let mut g = Graph::empty(m)?;
    for v in k + 1..=m {
        for u in 1..v {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// `q_1 ⋯ q_k e_{k+1} ⋯ e_m` as an EFB element.
pub fn leading_simple_spinor(m: usize, k: usize) -> Result<EfbElement> {
    let slots: Vec<EfbSymbol> = (1..=m).map(|i| if i <= k { EfbSymbol::Q } else { EfbSymbol::PQ }).collect();
    EfbElement::new(&slots)
}
