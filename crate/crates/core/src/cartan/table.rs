use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iso::{generator_matrix, GeneratorIndex};
use crate::oracle::ComplexMatrix;

/// Matching tolerance for table entries.
pub const TABLE_TOL: f64 = 1e-9;

/// `±G_ij`, written `+G23` / `-G01`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SignedGenerator {
    pub negative: bool,
    pub g: GeneratorIndex,
}

impl SignedGenerator {
    pub fn sign(&self) -> f64 {
        if self.negative {
            -1.0
        } else {
            1.0
        }
    }
}

impl fmt::Display for SignedGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.negative { '-' } else { '+' }, self.g)
    }
}

impl FromStr for SignedGenerator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected a signed generator like +G23, got {s:?}"));
        let (negative, rest) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let digits = rest.strip_prefix('G').ok_or_else(bad)?.as_bytes();
        if digits.len() != 2 || !digits.iter().all(u8::is_ascii_digit) {
            return Err(bad());
        }
        let g = GeneratorIndex::new((digits[0] - b'0') as usize, (digits[1] - b'0') as usize)?;
        Ok(Self { negative, g })
    }
}

impl TryFrom<String> for SignedGenerator {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SignedGenerator> for String {
    fn from(s: SignedGenerator) -> Self {
        s.to_string()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjugationEntry {
    pub from: GeneratorIndex,
    /// `None` when the image is not `±` a single generator.
    pub image: Option<SignedGenerator>,
    /// Distance to the matched signed generator, or to the nearest one.
    pub residual: f64,
}

/// Action `G ↦ u G u†` of a unitary on the fifteen generator matrices.
#[derive(Debug, Clone, Serialize)]
pub struct ConjugationTable {
    pub entries: Vec<ConjugationEntry>,
}

/// Disagreement between a computed and a reference entry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableMismatch {
    pub from: GeneratorIndex,
    pub computed: Option<SignedGenerator>,
    pub reference: SignedGenerator,
}

impl ConjugationTable {
    /// Every generator maps to a signed generator.
    pub fn monomial(&self) -> bool {
        self.entries.iter().all(|e| e.image.is_some())
    }

    pub fn max_residual(&self) -> f64 {
        self.entries.iter().map(|e| e.residual).fold(0.0, f64::max)
    }

    pub fn image(&self, g: GeneratorIndex) -> Option<SignedGenerator> {
        self.entries[g.position()].image
    }

    pub fn diff(&self, reference: &BTreeMap<GeneratorIndex, SignedGenerator>) -> Vec<TableMismatch> {
        reference
            .iter()
            .filter_map(|(&from, &r)| {
                let computed = self.image(from);
                (computed != Some(r)).then_some(TableMismatch {
                    from,
                    computed,
                    reference: r,
                })
            })
            .collect()
    }

    /// 4×4 grid indexed by `(i, j)`, with `G00` in the corner.
    pub fn grid(&self) -> Vec<Vec<String>> {
        (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| match GeneratorIndex::new(i, j) {
                        Err(_) => " G00".to_string(),
                        Ok(g) => match self.image(g) {
                            Some(s) => s.to_string(),
                            None => "  ? ".to_string(),
                        },
                    })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for ConjugationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "      .0    .1    .2    .3")?;
        for (i, row) in self.grid().iter().enumerate() {
            writeln!(f, "{i}.  {}", row.join("  "))?;
        }
        Ok(())
    }
}

/// Computes `u mat(G) u†` for every generator and matches it against
/// `± mat(G')` within [`TABLE_TOL`].
pub fn conjugation_table(u: &ComplexMatrix) -> Result<ConjugationTable> {
    if u.rows() != 4 || u.cols() != 4 {
        return Err(Error::DimensionMismatch(format!("expected 4x4, got {}x{}", u.rows(), u.cols())));
    }
    let dev = u.unitarity_deviation();
    if dev > TABLE_TOL {
        return Err(Error::NotUnitary(dev));
    }
    let mats: Vec<ComplexMatrix> = GeneratorIndex::all().iter().map(|&g| generator_matrix(g)).collect();
    let ud = u.dagger();
    let entries = GeneratorIndex::all()
        .iter()
        .map(|&from| {
            let img = &(u * &mats[from.position()]) * &ud;
            let mut best: Option<(SignedGenerator, f64)> = None;
            for to in GeneratorIndex::all() {
                for negative in [false, true] {
                    let s = SignedGenerator { negative, g: to };
                    let r = img.max_abs_diff(&mats[to.position()].scale_re(s.sign()));
                    if best.is_none_or(|(_, b)| r < b) {
                        best = Some((s, r));
                    }
                }
            }
            let (s, r) = best.expect("fifteen candidates");
            ConjugationEntry {
                from,
                image: (r < TABLE_TOL).then_some(s),
                residual: r,
            }
        })
        .collect();
    Ok(ConjugationTable { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{q_matrix, q_prime_matrix};
    use crate::tables::reference_table;

    fn gi(i: usize, j: usize) -> GeneratorIndex {
        GeneratorIndex::new(i, j).unwrap()
    }

    #[test]
    fn parse_signed() {
        let s: SignedGenerator = "-G01".parse().unwrap();
        assert!(s.negative && s.g == gi(0, 1));
        assert_eq!("G23".parse::<SignedGenerator>().unwrap().to_string(), "+G23");
        assert!("+G00".parse::<SignedGenerator>().is_err());
        assert!("+X12".parse::<SignedGenerator>().is_err());
    }

    #[test]
    fn identity_table() {
        let t = conjugation_table(&ComplexMatrix::identity(4)).unwrap();
        assert!(t.monomial());
        for e in &t.entries {
            assert_eq!(e.image, Some(SignedGenerator { negative: false, g: e.from }));
        }
    }

    #[test]
    fn named_examples() {
        let q = conjugation_table(&q_matrix()).unwrap();
        assert!(q.monomial());
        assert_eq!(q.image(gi(0, 1)).unwrap().to_string(), "+G23");
        assert_eq!(q.image(gi(0, 2)).unwrap().to_string(), "-G01");
        let qp = conjugation_table(&q_prime_matrix()).unwrap();
        assert!(qp.monomial());
        assert_eq!(qp.image(gi(3, 0)).unwrap().to_string(), "-G11");
        assert_eq!(qp.image(gi(1, 1)).unwrap().to_string(), "+G30");
    }

    #[test]
    fn agrees_with_reference_tables() {
        for (name, u) in [("Q", q_matrix()), ("Qprime", q_prime_matrix())] {
            let t = conjugation_table(&u).unwrap();
            assert!(t.diff(&reference_table(name).unwrap()).is_empty(), "{name}");
        }
    }

    #[test]
    fn non_monomial_entries_are_flagged() {
        let h = (&ComplexMatrix::identity(4) + &generator_matrix(gi(1, 0)).scale_re(0.3)).scale_re(1.0 / 1.09f64.sqrt());
        let t = conjugation_table(&h).unwrap();
        assert!(!t.monomial());
        assert!(t.entries.iter().any(|e| e.image.is_none()));
    }
}
