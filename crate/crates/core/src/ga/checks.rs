use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{random, Blade, Multivector, Signature};

/// Ordered product of all basis vectors.
pub fn pseudoscalar(sig: Signature) -> Multivector {
    Multivector::blade(sig, Blade(sig.full_mask()), 1.0).expect("full mask fits")
}

/// One named verification with its worst observed deviation.
#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckLine {
    pub fn new(name: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            deviation,
            tolerance,
            pass: deviation < tolerance,
        }
    }

    /// A yes/no check with no numeric deviation.
    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        Self {
            name: name.into(),
            deviation: if ok { 0.0 } else { 1.0 },
            tolerance: 0.5,
            pass: ok,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DualRelationsReport {
    pub lines: Vec<CheckLine>,
}

impl DualRelationsReport {
    pub fn pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }
}

const TOL: f64 = 1e-12;

/// Pseudoscalar identities of `G(3,0)` and `G(6,0)`: `I² = -1`,
/// `I E_l = -e_l`, `a × b = I~(a∧b)` on random pairs, and in `G(6,0)` that
/// `I` is central in the even subalgebra and swaps grades 2 and 4.
pub fn dual_relations_check(seed: u64) -> DualRelationsReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines = Vec::new();

    let g3 = Signature::g3();
    let e = |k| Multivector::basis_vector(g3, k).unwrap();
    let i3 = pseudoscalar(g3);
    lines.push(CheckLine::new(
        "G3: I^2 = -1",
        (&i3 * &i3).max_abs_diff(&Multivector::scalar(g3, -1.0)),
        TOL,
    ));
    let big_e = [&e(2) * &e(3), &e(3) * &e(1), &e(1) * &e(2)];
    let dev = (1..=3)
        .map(|l| (&i3 * &big_e[l - 1]).max_abs_diff(&-e(l)))
        .fold(0.0, f64::max);
    lines.push(CheckLine::new("G3: I E_l = -e_l", dev, TOL));

    let mut dev = 0.0f64;
    for _ in 0..100 {
        let a: [f64; 3] = std::array::from_fn(|_| rand::Rng::gen_range(&mut rng, -1.0..1.0));
        let b: [f64; 3] = std::array::from_fn(|_| rand::Rng::gen_range(&mut rng, -1.0..1.0));
        let cross = [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ];
        let av = Multivector::vector(g3, &a).unwrap();
        let bv = Multivector::vector(g3, &b).unwrap();
        let ga = &i3.reverse() * &av.wedge(&bv);
        dev = dev.max(ga.max_abs_diff(&Multivector::vector(g3, &cross).unwrap()));
    }
    lines.push(CheckLine::new("G3: a x b = I~(a^b), 100 pairs", dev, TOL));

    let g6 = Signature::g6();
    let i6 = pseudoscalar(g6);
    lines.push(CheckLine::new(
        "G6: I^2 = -1",
        (&i6 * &i6).max_abs_diff(&Multivector::scalar(g6, -1.0)),
        TOL,
    ));
    let mut dev = 0.0f64;
    for _ in 0..20 {
        let x = random::even(g6, &mut rng);
        dev = dev.max((&i6 * &x).max_abs_diff(&(&x * &i6)));
    }
    lines.push(CheckLine::new("G6: I commutes with even subalgebra", dev, TOL));
    let mut swaps = true;
    for _ in 0..20 {
        let b2 = random::bivector(g6, &mut rng);
        let b4 = random::homogeneous(g6, 4, &mut rng);
        swaps &= (&i6 * &b2).is_homogeneous(4) && (&i6 * &b4).is_homogeneous(2);
    }
    lines.push(CheckLine::flag("G6: I exchanges grades 2 and 4", swaps));

    DualRelationsReport { lines }
}
