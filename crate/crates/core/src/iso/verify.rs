use std::sync::OnceLock;

use serde::Serialize;

use crate::ga::{CheckLine, Multivector};
use crate::oracle::ComplexMatrix;

use super::{generator_bivector, generator_matrix, GeneratorConvention, GeneratorIndex};

/// Deviation allowed between the bivector bracket and the matrix bracket.
pub const ISO_TOL: f64 = 1e-12;

const MAX_DISCREPANCIES: usize = 24;

/// Coefficients of `x` on the `G_ij` basis, plus the largest coefficient of
/// any non-bivector content.
pub fn bivector_coefficients(x: &Multivector, conv: GeneratorConvention) -> ([f64; 15], f64) {
    let mut out = [0.0; 15];
    let mut residual: f64 = 0.0;
    for &(b, c) in x.terms() {
        match GeneratorIndex::from_blade(b) {
            Some(g) if b.grade() == 2 => out[g.position()] = c * conv.sign(g),
            _ => residual = residual.max(c.abs()),
        }
    }
    (out, residual)
}

/// Coefficients of `m` on the `i σ_i ⊗ σ_j` basis (`Re tr(g† m) / 4`), plus the
/// largest entry of whatever is not in their real span.
pub fn matrix_coefficients(m: &ComplexMatrix) -> ([f64; 15], f64) {
    let mut out = [0.0; 15];
    let mut rebuilt = ComplexMatrix::zeros(4, 4);
    for g in GeneratorIndex::all() {
        let gm = generator_matrix(g);
        let c = (&gm.dagger() * m).trace().expect("square").re / 4.0;
        out[g.position()] = c;
        rebuilt = &rebuilt + &gm.scale_re(c);
    }
    (out, rebuilt.max_abs_diff(m))
}

fn coeff_deviation(a: &([f64; 15], f64), b: &([f64; 15], f64)) -> f64 {
    a.0.iter()
        .zip(&b.0)
        .map(|(x, y)| (x - y).abs())
        .fold(a.1.max(b.1), f64::max)
}

/// Outcome of checking one generator convention against the matrix oracle.
#[derive(Debug, Clone, Serialize)]
pub struct IsoReport {
    pub convention: GeneratorConvention,
    pub max_pair_deviation: f64,
    pub lines: Vec<CheckLine>,
    /// Human-readable mismatches, truncated.
    pub discrepancies: Vec<String>,
}

impl IsoReport {
    pub fn pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }
}

fn gi(i: usize, j: usize) -> GeneratorIndex {
    GeneratorIndex::new(i, j).expect("valid generator")
}

const CYCLIC: [(usize, usize, usize); 3] = [(1, 2, 3), (2, 3, 1), (3, 1, 2)];

/// Runs the full sweep for `conv`: the 225 ordered brackets against the
/// oracle, the six relation families stated for the generators, and product
/// agreement inside every three-generator family closed under the bracket.
pub fn verify_isomorphism(conv: GeneratorConvention) -> IsoReport {
    let all = GeneratorIndex::all();
    let ga: Vec<Multivector> = all.iter().map(|&g| generator_bivector(g, conv)).collect();
    let mx: Vec<ComplexMatrix> = all.iter().map(|&g| generator_matrix(g)).collect();
    let mut lines = Vec::new();
    let mut discrepancies = Vec::new();

    let mut sweep: f64 = 0.0;
    for a in 0..15 {
        for b in 0..15 {
            let lhs = bivector_coefficients(&ga[a].bracket(&ga[b]), conv);
            let rhs = matrix_coefficients(&mx[a].commutator_half(&mx[b]).expect("4x4"));
            let d = coeff_deviation(&lhs, &rhs);
            if d >= ISO_TOL && discrepancies.len() < MAX_DISCREPANCIES {
                discrepancies.push(format!(
                    "{} x {}: bivector bracket {} vs matrix bracket {}",
                    all[a],
                    all[b],
                    render(&lhs.0),
                    render(&rhs.0)
                ));
            }
            sweep = sweep.max(d);
        }
    }
    lines.push(CheckLine::new("bracket sweep, 225 ordered pairs", sweep, ISO_TOL));

    let family = |instances: Vec<(GeneratorIndex, GeneratorIndex, Option<GeneratorIndex>)>| {
        instances
            .into_iter()
            .map(|(a, b, c)| {
                let lhs = generator_bivector(a, conv).bracket(&generator_bivector(b, conv));
                let rhs = match c {
                    Some(c) => -generator_bivector(c, conv),
                    None => Multivector::zero(lhs.signature()),
                };
                lhs.max_abs_diff(&rhs)
            })
            .fold(0.0, f64::max)
    };

    let f1 = family(all.iter().map(|&a| (a, a, None)).collect());
    let mut inst = Vec::new();
    for i in 1..=3 {
        for j in 1..=3 {
            for k in 1..=3 {
                for l in 1..=3 {
                    if i != j && k != l {
                        inst.push((gi(i, k), gi(j, l), None));
                    }
                }
            }
        }
    }
    let f2 = family(inst);
    let mut f3 = Vec::new();
    let mut f4 = Vec::new();
    let mut f5 = Vec::new();
    let mut f6 = Vec::new();
    for (a, b, c) in CYCLIC {
        for k in 0..=3 {
            f3.push((gi(a, k), gi(b, k), Some(gi(c, 0))));
            f4.push((gi(k, a), gi(k, b), Some(gi(0, c))));
        }
        for l in 1..=3 {
            f5.push((gi(a, 0), gi(b, l), Some(gi(c, l))));
            f6.push((gi(0, a), gi(l, b), Some(gi(l, c))));
        }
    }
    lines.push(CheckLine::new("G_ik x G_ik = 0", f1, ISO_TOL));
    lines.push(CheckLine::new("G_ik x G_jl = 0 (i != j, k != l)", f2, ISO_TOL));
    lines.push(CheckLine::new("G_1k x G_2k = -G_30 (cyclic)", family(f3), ISO_TOL));
    lines.push(CheckLine::new("G_i1 x G_i2 = -G_03 (cyclic)", family(f4), ISO_TOL));
    lines.push(CheckLine::new("G_10 x G_2l = -G_3l (cyclic)", family(f5), ISO_TOL));
    lines.push(CheckLine::new("G_01 x G_j2 = -G_j3 (cyclic)", family(f6), ISO_TOL));

    lines.push(CheckLine::new(
        "geometric = matrix product in each closed triple",
        triangle_products(conv, &ga, &mx),
        ISO_TOL,
    ));

    IsoReport {
        convention: conv,
        max_pair_deviation: sweep,
        lines,
        discrepancies,
    }
}

/// Generators whose edges form a triangle pairwise anticommute and close under
/// the bracket. Within each such triple the geometric product stays in
/// `span{1, a, b, c}`; compare it to the matrix product on that span.
fn triangle_products(conv: GeneratorConvention, ga: &[Multivector], mx: &[ComplexMatrix]) -> f64 {
    let all = GeneratorIndex::all();
    let mut worst: f64 = 0.0;
    for v1 in 1..=6 {
        for v2 in v1 + 1..=6 {
            for v3 in v2 + 1..=6 {
                let edges = [(v1, v2), (v1, v3), (v2, v3)];
                let triple: Vec<usize> = edges
                    .iter()
                    .map(|e| all.iter().position(|g| g.vertices() == *e).expect("edge"))
                    .collect();
                for &x in &triple {
                    for &y in &triple {
                        let p = ga[x].gp(&ga[y]);
                        let s = p.scalar_part();
                        let mut rest = bivector_coefficients(&(&p - &Multivector::scalar(p.signature(), s)), conv);
                        rest.1 = rest.1.max(
                            rest.0
                                .iter()
                                .enumerate()
                                .filter(|(n, _)| !triple.contains(n))
                                .map(|(_, c)| c.abs())
                                .fold(0.0, f64::max),
                        );
                        let m = &mx[x] * &mx[y];
                        let ms = m.trace().expect("square") / 4.0;
                        let traceless = &m - &ComplexMatrix::identity(4).scale(ms);
                        let mc = matrix_coefficients(&traceless);
                        worst = worst
                            .max((s - ms.re).abs())
                            .max(ms.im.abs())
                            .max(coeff_deviation(&rest, &mc));
                    }
                }
            }
        }
    }
    worst
}

fn render(c: &[f64; 15]) -> String {
    let parts: Vec<String> = GeneratorIndex::all()
        .iter()
        .zip(c)
        .filter(|(_, x)| x.abs() > 1e-12)
        .map(|(g, x)| format!("{x:+}*{g}"))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

/// Which convention is in force, with the reports that decided it.
#[derive(Debug, Clone, Serialize)]
pub struct Adoption {
    pub adopted: GeneratorConvention,
    pub reports: Vec<IsoReport>,
}

impl Adoption {
    pub fn adopted_report(&self) -> &IsoReport {
        self.reports
            .iter()
            .find(|r| r.convention == self.adopted)
            .expect("adopted convention was checked")
    }

    pub fn rejected(&self) -> impl Iterator<Item = &IsoReport> {
        self.reports.iter().filter(move |r| r.convention != self.adopted)
    }
}

/// Runs the sweep for both conventions once and adopts the one that passes.
/// The convention printed with the generator definitions (with the δ sign) is
/// tried first; if neither passes, the smaller deviation wins.
pub fn adoption() -> &'static Adoption {
    static CELL: OnceLock<Adoption> = OnceLock::new();
    CELL.get_or_init(|| {
        let reports: Vec<IsoReport> = [GeneratorConvention::WITH_DELTA, GeneratorConvention::WITHOUT_DELTA]
            .into_iter()
            .map(verify_isomorphism)
            .collect();
        let adopted = reports
            .iter()
            .find(|r| r.pass())
            .or_else(|| {
                reports
                    .iter()
                    .min_by(|a, b| a.max_pair_deviation.total_cmp(&b.max_pair_deviation))
            })
            .map(|r| r.convention)
            .expect("two reports");
        Adoption { adopted, reports }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(i: usize, j: usize) -> GeneratorIndex {
        GeneratorIndex::new(i, j).unwrap()
    }

    #[test]
    fn convention_without_delta_passes() {
        let r = verify_isomorphism(GeneratorConvention::WITHOUT_DELTA);
        assert!(r.pass(), "{:#?}", r.lines);
        assert!(r.max_pair_deviation < ISO_TOL);
        assert!(r.discrepancies.is_empty());
    }

    #[test]
    fn delta_convention_is_rejected() {
        let r = verify_isomorphism(GeneratorConvention::WITH_DELTA);
        assert!(!r.pass());
        assert!((r.max_pair_deviation - 2.0).abs() < 1e-12);
        assert!(!r.discrepancies.is_empty());
        let a = adoption();
        assert_eq!(a.adopted, GeneratorConvention::WITHOUT_DELTA);
        assert_eq!(a.rejected().count(), 1);
        assert!(a.adopted_report().pass());
    }

    #[test]
    fn stated_examples() {
        let c = GeneratorConvention::WITHOUT_DELTA;
        let g = |i, j| generator_bivector(gi(i, j), c);
        assert_eq!(g(1, 0).bracket(&g(2, 0)), -g(3, 0));
        assert!(g(1, 0).bracket(&g(0, 1)).is_zero());
        assert_eq!(g(1, 0).bracket(&g(2, 3)), -g(3, 3));
    }

    #[test]
    fn coefficient_extraction() {
        let c = GeneratorConvention::WITHOUT_DELTA;
        let x = &generator_bivector(gi(2, 0), c).scale(0.5) - &generator_bivector(gi(1, 3), c);
        let (co, res) = bivector_coefficients(&x, c);
        assert_eq!(res, 0.0);
        assert_eq!(co[gi(2, 0).position()], 0.5);
        assert_eq!(co[gi(1, 3).position()], -1.0);
        let m = &generator_matrix(gi(2, 0)).scale_re(0.5) - &generator_matrix(gi(1, 3));
        let (mc, mres) = matrix_coefficients(&m);
        assert!(mres < 1e-15);
        assert_eq!(mc, co);
        let (_, r) = matrix_coefficients(&ComplexMatrix::identity(4));
        assert_eq!(r, 1.0);
    }
}
