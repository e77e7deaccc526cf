//! Free words over the generators a, b, c of U (capitals denote inverses) and their images
//! under φ: U → Û.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::isometry::{generators_uhat, Direction, IntIsometry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    A,
    B,
    C,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::A, Generator::B, Generator::C];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Direction of the axis ã = (t,0,1), b̃ = (1,t,0), c̃ = (0,1,t).
    pub fn direction(self) -> Direction {
        Direction::from_index(self.index())
    }

    pub fn from_direction(d: Direction) -> Generator {
        Generator::ALL[d.index()]
    }

    pub fn from_char(c: char) -> Option<Generator> {
        match c.to_ascii_lowercase() {
            'a' => Some(Generator::A),
            'b' => Some(Generator::B),
            'c' => Some(Generator::C),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        ['a', 'b', 'c'][self.index()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: Generator, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Letter {
        Letter::new(self.generator, !self.inverse)
    }

    pub fn as_char(self) -> char {
        let c = self.generator.as_char();
        if self.inverse {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    /// All six letters in the order a, A, b, B, c, C.
    pub fn all() -> [Letter; 6] {
        let mut out = [Letter::new(Generator::A, false); 6];
        for (i, g) in Generator::ALL.iter().enumerate() {
            out[2 * i] = Letter::new(*g, false);
            out[2 * i + 1] = Letter::new(*g, true);
        }
        out
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = Word::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn generator(g: Generator) -> Self {
        Word::from_letters([Letter::new(g, false)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Appends a letter, cancelling against the last one if they are inverse.
    pub fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inv()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// `u · self · u⁻¹`.
    pub fn conjugate_by(&self, u: &Word) -> Word {
        &(u * self) * &u.inverse()
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self) -> [i64; 3] {
        let mut s = [0; 3];
        for l in &self.letters {
            s[l.generator.index()] += if l.inverse { -1 } else { 1 };
        }
        s
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        let mut out = self.clone();
        for l in &rhs.letters {
            out.push(*l);
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Letters `abcABC`; whitespace, `.`, `*` and parentheses are ignored.
    fn from_str(s: &str) -> Result<Word> {
        let mut w = Word::empty();
        for (pos, ch) in s.chars().enumerate() {
            if ch.is_whitespace() || matches!(ch, '(' | ')' | '.' | '*') {
                continue;
            }
            let g = Generator::from_char(ch)
                .ok_or_else(|| Error::BadWord(format!("unexpected {ch:?} at position {pos}")))?;
            w.push(Letter::new(g, ch.is_ascii_uppercase()));
        }
        Ok(w)
    }
}

impl TryFrom<String> for Word {
    type Error = Error;

    fn try_from(s: String) -> Result<Word> {
        s.parse()
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

/// φ on words: a ↦ â, b ↦ b̂, c ↦ ĉ.
pub fn eval_phi(w: &Word) -> IntIsometry {
    let (a, b, c) = generators_uhat();
    let images = [a, b, c];
    w.letters
        .iter()
        .fold(IntIsometry::identity(), |acc, l| {
            // every generator image is an involution, so inverse letters map to the same half-turn
            acc.compose(&images[l.generator.index()])
        })
}

/// Words for the translations by 4: t_x = b(cbc⁻¹), t_y = a(cac⁻¹), t_z = a(bab⁻¹).
pub fn translation_words() -> [Word; 3] {
    ["bcbC", "acaC", "abaB"].map(|s| s.parse().expect("static word"))
}

/// The three commutation relators x·w·x⁻¹·w⁻¹ shared by both presentations, with
/// w = bc̄b̄c, ca̅c̄a, ab̄āb for x = a, b, c.
pub fn commutation_relators() -> [Word; 3] {
    let pairs = [("a", "bCBc"), ("b", "cACa"), ("c", "aBAb")];
    pairs.map(|(x, w)| {
        let x: Word = x.parse().expect("static word");
        let w: Word = w.parse().expect("static word");
        &(&(&x * &w) * &x.inverse()) * &w.inverse()
    })
}

/// Relators of the Euclidean presentation: the three commutation relators, a², b², c².
pub fn euclidean_relators() -> Vec<Word> {
    let mut out = commutation_relators().to_vec();
    out.extend(Generator::ALL.map(|g| Word::generator(g).pow(2)));
    out
}

/// Relators of the hyperbolic presentation: the three commutation relators, a⁴, b⁴, c⁴.
pub fn hyperbolic_relators() -> Vec<Word> {
    let mut out = commutation_relators().to_vec();
    out.extend(Generator::ALL.map(|g| Word::generator(g).pow(4)));
    out
}
