use std::fmt;

/// A generator or its inverse. Letter `2i` is generator `i`, `2i + 1` its
/// inverse, which doubles as the column index in coset tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u32);

impl Letter {
    pub fn gen(index: usize) -> Letter {
        Letter(2 * index as u32)
    }

    pub fn gen_inv(index: usize) -> Letter {
        Letter(2 * index as u32 + 1)
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    #[inline]
    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    #[inline]
    pub fn column(self) -> usize {
        self.0 as usize
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word in the generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// Freely reduces `letters`.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// `letter^exp`
    pub fn power_of(letter: Letter, exp: i64) -> Word {
        let l = if exp < 0 { letter.inverse() } else { letter };
        Word(vec![l; exp.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn pow(&self, exp: i64) -> Word {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        Word::new(std::iter::repeat_n(base.0.iter().copied(), exp.unsigned_abs() as usize).flatten())
    }

    /// `u^-1 v^-1 u v`
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.inverse().concat(&v.inverse()).concat(u).concat(v)
    }

    /// `v^-1 self v`
    pub fn conjugate_by(&self, v: &Word) -> Word {
        v.inverse().concat(self).concat(v)
    }

    /// Strips matching inverse letters from the two ends.
    pub fn cyclically_reduced(&self) -> Word {
        let mut lo = 0;
        let mut hi = self.0.len();
        while hi - lo >= 2 && self.0[lo] == self.0[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        Word(self.0[lo..hi].to_vec())
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, num_gens: usize) -> Vec<i64> {
        let mut sums = vec![0i64; num_gens];
        for l in &self.0 {
            sums[l.generator()] += l.sign();
        }
        sums
    }

    /// Renders the word with generator names, grouping runs into powers:
    /// `t^-1 x t y^-1`. The empty word renders as `1`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names }
    }
}

struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        let letters = self.word.letters();
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let mut run = 1;
            while i + run < letters.len() && letters[i + run] == l {
                run += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let exp = l.sign() * run as i64;
            write!(f, "{}", self.names[l.generator()])?;
            if exp != 1 {
                write!(f, "^{exp}")?;
            }
            i += run;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Letter {
        Letter::gen(0)
    }
    fn b() -> Letter {
        Letter::gen(1)
    }

    #[test]
    fn free_reduction() {
        let w = Word::new([a(), b(), b().inverse(), a().inverse(), a()]);
        assert_eq!(w.letters(), &[a()]);
        assert!(Word::new([a(), a().inverse()]).is_empty());
        let w = Word::new([a(), b()]);
        assert!(w.concat(&w.inverse()).is_empty());
    }

    #[test]
    fn commutator_and_powers() {
        let x = Word::new([a()]);
        let y = Word::new([b()]);
        let c = Word::commutator(&x, &y);
        assert_eq!(c.letters(), &[a().inverse(), b().inverse(), a(), b()]);
        assert_eq!(c.exponent_sums(2), vec![0, 0]);
        assert_eq!(x.pow(-3).exponent_sums(2), vec![-3, 0]);
        assert!(x.pow(0).is_empty());
    }

    #[test]
    fn cyclic_reduction() {
        let w = Word::new([b(), a(), a(), b().inverse()]);
        assert_eq!(w.cyclically_reduced().letters(), &[a(), a()]);
    }

    #[test]
    fn display_groups_runs() {
        let names = vec!["x".to_string(), "y".to_string()];
        let w = Word::new([a().inverse(), a().inverse(), b(), b(), b(), a()]);
        assert_eq!(w.display(&names).to_string(), "x^-2 y^3 x");
        assert_eq!(Word::empty().display(&names).to_string(), "1");
    }
}
