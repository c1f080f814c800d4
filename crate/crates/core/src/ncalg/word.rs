use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::NcError;

/// Index of a generator in its alphabet. The index doubles as the ordering rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(pub u16);

/// Generators of the standard alphabet, listed in rank order.
pub mod std_gens {
    use super::Generator;

    pub const F1: Generator = Generator(0);
    pub const F2: Generator = Generator(1);
    pub const F2P: Generator = Generator(2);
    pub const F2PP: Generator = Generator(3);
    pub const F0: Generator = Generator(4);
    pub const Z: Generator = Generator(5);
    pub const CHI: Generator = Generator(6);
    pub const PHI: Generator = Generator(7);
    pub const CHI_INV: Generator = Generator(8);
    pub const PHI_INV: Generator = Generator(9);
    pub const DELTA: Generator = Generator(10);
}

/// A fixed, ranked set of generator names plus the declared inverse pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    inverse: Vec<Option<Generator>>,
}

impl Alphabet {
    /// Builds an alphabet whose rank order is the order of `names`.
    pub fn new(names: &[&str], inverse_pairs: &[(&str, &str)]) -> Result<Self, NcError> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        for (k, n) in names.iter().enumerate() {
            if n.is_empty() || n.contains(char::is_whitespace) || n.contains('*') {
                return Err(NcError::InvalidAlphabet(format!("bad generator name `{n}`")));
            }
            if names[..k].contains(n) {
                return Err(NcError::InvalidAlphabet(format!("duplicate generator `{n}`")));
            }
        }
        let mut alphabet = Alphabet {
            inverse: vec![None; names.len()],
            names,
        };
        for (a, b) in inverse_pairs {
            let ga = alphabet.lookup(a)?;
            let gb = alphabet.lookup(b)?;
            alphabet.inverse[ga.0 as usize] = Some(gb);
            alphabet.inverse[gb.0 as usize] = Some(ga);
        }
        Ok(alphabet)
    }

    /// `f1 < f2 < f2' < f2'' < f0 < z < chi < phi < chi^-1 < phi^-1 < Delta`,
    /// with `chi`/`chi^-1` and `phi`/`phi^-1` declared mutually inverse.
    pub fn standard() -> Arc<Alphabet> {
        static STANDARD: OnceLock<Arc<Alphabet>> = OnceLock::new();
        STANDARD
            .get_or_init(|| {
                Arc::new(
                    Alphabet::new(
                        &[
                            "f1", "f2", "f2'", "f2''", "f0", "z", "chi", "phi", "chi^-1",
                            "phi^-1", "Delta",
                        ],
                        &[("chi", "chi^-1"), ("phi", "phi^-1")],
                    )
                    .expect("standard alphabet is well formed"),
                )
            })
            .clone()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> {
        (0..self.names.len() as u16).map(Generator)
    }

    pub fn name(&self, g: Generator) -> &str {
        &self.names[g.0 as usize]
    }

    pub fn get(&self, name: &str) -> Option<Generator> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|k| Generator(k as u16))
    }

    pub fn lookup(&self, name: &str) -> Result<Generator, NcError> {
        self.get(name)
            .ok_or_else(|| NcError::UnknownGenerator(name.to_string()))
    }

    pub fn inverse_of(&self, g: Generator) -> Option<Generator> {
        self.inverse[g.0 as usize]
    }
}

/// A finite product of generators; the empty word is the identity.
///
/// Ordered degree-lexicographically: shorter words first, ties broken by
/// comparing generator ranks left to right. This order is compatible with
/// concatenation and well-founded, which is what rewrite termination rests on.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(g: Generator) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + o.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&o.0);
        Word(v)
    }

    pub fn contains(&self, g: Generator) -> bool {
        self.0.contains(&g)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        WordDisplay(self, alphabet)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct WordDisplay<'a>(&'a Word, &'a Alphabet);

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, g) in self.0 .0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            f.write_str(self.1.name(*g))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::std_gens::*;
    use super::*;

    #[test]
    fn standard_constants_match_names() {
        let a = Alphabet::standard();
        assert_eq!(a.name(F2), "f2");
        assert_eq!(a.name(F2P), "f2'");
        assert_eq!(a.name(Z), "z");
        assert_eq!(a.name(PHI_INV), "phi^-1");
        assert_eq!(a.name(DELTA), "Delta");
        assert_eq!(a.inverse_of(PHI), Some(PHI_INV));
        assert_eq!(a.inverse_of(Z), None);
    }

    #[test]
    fn deglex_puts_length_first() {
        let short = Word(vec![Z, Z]);
        let long = Word(vec![F1, F1, F1]);
        assert!(short < long);
        assert!(Word(vec![F2, Z]) < Word(vec![Z, F2]));
        assert!(Word::empty() < Word::single(F1));
    }

    #[test]
    fn rejects_duplicates() {
        assert!(Alphabet::new(&["a", "a"], &[]).is_err());
        assert!(Alphabet::new(&["a", "b"], &[("a", "c")]).is_err());
    }
}
