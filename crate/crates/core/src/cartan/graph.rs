use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ga::Multivector;
use crate::iso::{bivector_coefficients, GeneratorIndex, TwoQubitAlgebra};

/// Residual allowed when classifying brackets into `g` or `m`.
pub const SPLIT_TOL: f64 = 1e-12;

/// `K₆` on the basis vectors `1..=6` (`e1..e3`, `f1..f3`); each edge is the
/// generator spanned by its two endpoints.
#[derive(Debug, Clone, Serialize)]
pub struct GeneratorGraph {
    pub vertices: Vec<usize>,
    pub edges: Vec<(GeneratorIndex, (usize, usize))>,
}

impl GeneratorGraph {
    pub fn new() -> Self {
        Self {
            vertices: (1..=6).collect(),
            edges: GeneratorIndex::all().iter().map(|&g| (g, g.vertices())).collect(),
        }
    }

    /// Generator on the edge `{a, b}`.
    pub fn edge(&self, a: usize, b: usize) -> Option<GeneratorIndex> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.iter().find(|(_, e)| *e == key).map(|(g, _)| *g)
    }

    pub fn share_vertex(a: GeneratorIndex, b: GeneratorIndex) -> bool {
        let (p, q) = (a.vertices(), b.vertices());
        p.0 == q.0 || p.0 == q.1 || p.1 == q.0 || p.1 == q.1
    }
}

impl Default for GeneratorGraph {
    fn default() -> Self {
        Self::new()
    }
}

/// Unordered split of the six vertices into two nonempty sides. Stored with
/// vertex 1 on side `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Bipartition {
    /// Bit `v - 1` set when vertex `v` is on side `a`.
    side_a: u8,
}

impl Bipartition {
    pub fn new(side_a: &[usize]) -> Result<Self> {
        let mut mask = 0u8;
        for &v in side_a {
            if !(1..=6).contains(&v) {
                return Err(Error::Bipartition(format!("vertex {v} out of range 1..=6")));
            }
            mask |= 1 << (v - 1);
        }
        Self::from_mask(mask)
    }

    pub fn from_mask(mask: u8) -> Result<Self> {
        let mask = mask & 0b11_1111;
        if mask == 0 || mask == 0b11_1111 {
            return Err(Error::Bipartition("both sides must be nonempty".into()));
        }
        let side_a = if mask & 1 == 1 { mask } else { !mask & 0b11_1111 };
        Ok(Self { side_a })
    }

    /// The 31 bipartitions of six vertices.
    pub fn all() -> Vec<Bipartition> {
        (1u8..64)
            .filter(|m| m & 1 == 1 && *m != 0b11_1111)
            .map(|m| Self { side_a: m })
            .collect()
    }

    /// `{e1,e2,e3} | {f1,f2,f3}`.
    pub fn local() -> Self {
        Self { side_a: 0b000_111 }
    }

    pub fn side_a(&self) -> Vec<usize> {
        (1..=6).filter(|v| self.side_a >> (v - 1) & 1 == 1).collect()
    }

    pub fn side_b(&self) -> Vec<usize> {
        (1..=6).filter(|v| self.side_a >> (v - 1) & 1 == 0).collect()
    }

    fn contains(&self, v: usize) -> bool {
        self.side_a >> (v - 1) & 1 == 1
    }

    /// True when the edge of `g` joins the two sides.
    pub fn crosses(&self, g: GeneratorIndex) -> bool {
        let (a, b) = g.vertices();
        self.contains(a) != self.contains(b)
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |v: usize| if v <= 3 { format!("e{v}") } else { format!("f{}", v - 3) };
        let a: Vec<String> = self.side_a().into_iter().map(name).collect();
        let b: Vec<String> = self.side_b().into_iter().map(name).collect();
        write!(f, "{{{}}} | {{{}}}", a.join(","), b.join(","))
    }
}

/// `l = g ⊕ m`: edges inside a side and edges across.
#[derive(Debug, Clone, Serialize)]
pub struct CartanSplit {
    pub bipartition: Bipartition,
    pub g: Vec<GeneratorIndex>,
    pub m: Vec<GeneratorIndex>,
    /// Worst misplaced bracket content for `[g,g] ⊆ g`, `[g,m] ⊆ m`,
    /// `[m,m] ⊆ g`.
    pub residuals: [f64; 3],
}

impl CartanSplit {
    pub fn holds(&self) -> bool {
        self.residuals.iter().all(|&r| r < SPLIT_TOL)
    }
}

fn generators() -> Vec<Multivector> {
    let alg = TwoQubitAlgebra::adopted();
    GeneratorIndex::all().iter().map(|&g| alg.generator(g)).collect()
}

/// Worst coefficient of `[x, y]` outside `allowed`.
fn misplaced(x: &Multivector, y: &Multivector, allowed: &[GeneratorIndex]) -> f64 {
    let conv = TwoQubitAlgebra::adopted().convention();
    let (c, residual) = bivector_coefficients(&x.bracket(y), conv);
    GeneratorIndex::all()
        .iter()
        .filter(|g| !allowed.contains(g))
        .map(|g| c[g.position()].abs())
        .fold(residual, f64::max)
}

/// Builds the split and checks the three bracket inclusions with
/// multivector brackets.
pub fn split_from_bipartition(b: Bipartition) -> CartanSplit {
    let all = GeneratorIndex::all();
    let (m, g): (Vec<GeneratorIndex>, Vec<GeneratorIndex>) = all.iter().partition(|&&x| b.crosses(x));
    let gens = generators();
    let mv = |x: GeneratorIndex| &gens[x.position()];
    let mut residuals = [0.0f64; 3];
    for &x in &g {
        for &y in &g {
            residuals[0] = residuals[0].max(misplaced(mv(x), mv(y), &g));
        }
        for &y in &m {
            residuals[1] = residuals[1].max(misplaced(mv(x), mv(y), &m));
        }
    }
    for &x in &m {
        for &y in &m {
            residuals[2] = residuals[2].max(misplaced(mv(x), mv(y), &g));
        }
    }
    CartanSplit {
        bipartition: b,
        g,
        m,
        residuals,
    }
}

/// Pairwise-commuting subset of `m` of maximum size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanSubalgebra {
    pub h: Vec<GeneratorIndex>,
}

impl CartanSubalgebra {
    /// Largest `|[a, b]|` coefficient over pairs in `h`.
    pub fn commutation_deviation(&self) -> f64 {
        let gens = generators();
        let mut worst: f64 = 0.0;
        for &a in &self.h {
            for &b in &self.h {
                worst = worst.max(gens[a.position()].bracket(&gens[b.position()]).max_abs());
            }
        }
        worst
    }
}

/// Maximum matchings of the crossing bipartite graph. Vertex-disjoint edges
/// are exactly the commuting generator pairs, so these are the largest
/// commuting subsets of `m`.
pub fn cartan_subalgebras(s: &CartanSplit) -> Vec<CartanSubalgebra> {
    let mut found: Vec<Vec<GeneratorIndex>> = Vec::new();
    let mut best = 0;
    let mut stack: Vec<GeneratorIndex> = Vec::new();
    fn extend(
        m: &[GeneratorIndex],
        start: usize,
        stack: &mut Vec<GeneratorIndex>,
        best: &mut usize,
        found: &mut Vec<Vec<GeneratorIndex>>,
    ) {
        if stack.len() > *best {
            *best = stack.len();
            found.clear();
        }
        if stack.len() == *best && !stack.is_empty() {
            found.push(stack.clone());
        }
        for k in start..m.len() {
            if stack.iter().all(|&x| !GeneratorGraph::share_vertex(x, m[k])) {
                stack.push(m[k]);
                extend(m, k + 1, stack, best, found);
                stack.pop();
            }
        }
    }
    extend(&s.m, 0, &mut stack, &mut best, &mut found);
    found.into_iter().map(|h| CartanSubalgebra { h }).collect()
}
