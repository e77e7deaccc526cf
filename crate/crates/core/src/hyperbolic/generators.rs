//! The 90° rotations a, b, c generating U, and evaluation of words as Lorentz matrices.

use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::word::{hyperbolic_relators, Generator, Letter, Word};

use super::dodecahedron::{right_angled_dodecahedron, KleinDodecahedron};
use super::lorentz::{rotation_about_chord, LorentzMatrix};

pub const RELATOR_TOLERANCE: f64 = 1e-8;

/// Words longer than this are re-orthonormalized every this many letters.
const DRIFT_BLOCK: usize = 40;

#[derive(Debug, Clone)]
pub struct UGenerators {
    pub dodecahedron: KleinDodecahedron,
    pub matrices: [LorentzMatrix; 3],
    /// +1 for a right-handed quarter turn about the edge direction, −1 otherwise.
    pub senses: [i8; 3],
}

impl UGenerators {
    /// Tries the eight choices of rotation senses in order and keeps the first for which
    /// all relators hold.
    pub fn search() -> Result<Self> {
        let dodecahedron = right_angled_dodecahedron();
        for mask in 0..8u8 {
            let senses: [i8; 3] = [0, 1, 2].map(|k| if mask >> k & 1 == 1 { -1 } else { 1 });
            let mut matrices = [LorentzMatrix::identity(); 3];
            for k in 0..3 {
                let [p, q] = dodecahedron.edge_axes[k];
                matrices[k] =
                    rotation_about_chord(p, q, senses[k] as f64 * FRAC_PI_2, dodecahedron.r)?;
            }
            let g = UGenerators {
                dodecahedron: dodecahedron.clone(),
                matrices,
                senses,
            };
            let ok = hyperbolic_relators()
                .iter()
                .all(|w| g.word_matrix(w).distance_to_identity() <= RELATOR_TOLERANCE);
            log::debug!("senses {senses:?}: relators {}", if ok { "hold" } else { "fail" });
            if ok {
                return Ok(g);
            }
        }
        Err(Error::NoConsistentSenses)
    }

    pub fn generator(&self, g: Generator) -> LorentzMatrix {
        self.matrices[g.index()]
    }

    pub fn letter(&self, l: Letter) -> LorentzMatrix {
        let m = self.generator(l.generator);
        if l.inverse {
            m.inverse()
        } else {
            m
        }
    }

    /// Product of the letter matrices, leftmost letter outermost.
    pub fn word_matrix(&self, w: &Word) -> LorentzMatrix {
        let mut acc = LorentzMatrix::identity();
        for (i, l) in w.letters().iter().enumerate() {
            acc = acc * self.letter(*l);
            if (i + 1) % DRIFT_BLOCK == 0 {
                acc = acc.reorthonormalize();
            }
        }
        acc
    }

    pub fn r(&self) -> f64 {
        self.dodecahedron.r
    }
}

/// The generators in the fixed convention, computed once.
pub fn generators_u() -> &'static UGenerators {
    static CELL: OnceLock<UGenerators> = OnceLock::new();
    CELL.get_or_init(|| UGenerators::search().expect("some choice of senses satisfies the relators"))
}

pub fn word_matrix(w: &Word) -> LorentzMatrix {
    generators_u().word_matrix(w)
}

/// The twelve rotations taking D₀ to its neighbours across its faces: a^±1, b^±1, c^±1
/// about the three axis edges, and their conjugates b⁻¹a^±1·b, c⁻¹b^±1·c, a⁻¹c^±1·a about
/// the opposite axis edges.
pub fn face_pairing_words() -> [Word; 12] {
    ["a", "b", "c", "A", "B", "C", "Bab", "Cbc", "Aca", "BAb", "CBc", "ACa"]
        .map(|s| s.parse().expect("static word"))
}

/// Words (u, x) whose rotation u·x·u⁻¹ has one of the six axis edges of D₀ as its axis.
pub fn axis_edges() -> [(Word, Generator); 6] {
    [
        ("", Generator::A),
        ("", Generator::B),
        ("", Generator::C),
        ("B", Generator::A),
        ("C", Generator::B),
        ("A", Generator::C),
    ]
    .map(|(u, g)| (u.parse().expect("static word"), g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relators_and_orders() {
        let g = generators_u();
        assert_eq!(g.senses, [1, 1, 1]);
        for w in hyperbolic_relators() {
            assert!(g.word_matrix(&w).distance_to_identity() < 1e-8, "{w}");
        }
        for x in ["aa", "bb", "cc"] {
            assert!(word_matrix(&x.parse().unwrap()).distance_to_identity() > 0.1);
        }
        assert!(word_matrix(&Word::empty()).distance_to_identity() == 0.0);
        for m in g.matrices {
            assert!(m.lorentz_defect() < 1e-9);
            assert!(m.preserves_upper_sheet());
        }
    }

    #[test]
    fn long_words_stay_lorentz() {
        let w: Word = "abCbAcBaCCabcBBacAbCab".repeat(3).parse().unwrap();
        assert!(word_matrix(&w).relative_lorentz_defect() < 1e-6);
        let short: Word = "abCbAcBa".parse().unwrap();
        assert!(word_matrix(&short).lorentz_defect() < 1e-6);
    }
}
