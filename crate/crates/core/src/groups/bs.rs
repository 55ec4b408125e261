//! `BS(m, n) = <a, t | t a^m t^-1 = a^n>` with Britton normal forms.
//!
//! Elements are stored as `a^{r_0} t^{e_1} a^{r_1} ... t^{e_k} a^{r_k}`. Powers of
//! `a` are pushed to the right through `t`-letters using `a^n t = t a^m` and
//! `a^m t^-1 = t^-1 a^n`, so the exponent right before a `t` lies in `[0, |n|)`,
//! the exponent right before a `t^-1` lies in `[0, |m|)`, and the trailing power
//! is free. Pinches `t a^{jm} t^-1` and `t^-1 a^{jn} t` never survive. Dropping the
//! trailing power gives a canonical representative of the coset `g<a>`.

use std::fmt;

use num_traits::Zero;

use super::{Character, Generator, Group, GroupError};
use crate::arith::{integer, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BaumslagSolitar {
    m: i64,
    n: i64,
}

/// Britton normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BsWord {
    /// `(r_{i-1}, e_i)` pairs: reduced `a`-exponent followed by `t^{e_i}`.
    syllables: Vec<(i64, i8)>,
    tail: i64,
}

/// A letter of a (not necessarily reduced) word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    A(i64),
    T(i8),
}

impl BsWord {
    pub fn syllables(&self) -> &[(i64, i8)] {
        &self.syllables
    }

    pub fn tail(&self) -> i64 {
        self.tail
    }

    /// Number of `t^{±1}` letters.
    pub fn t_length(&self) -> usize {
        self.syllables.len()
    }

    /// Total `a`-exponent; an invariant of the element only when `m = n`.
    pub fn a_exponent_sum(&self) -> i64 {
        self.syllables.iter().map(|&(r, _)| r).sum::<i64>() + self.tail
    }

    pub fn t_exponent_sum(&self) -> i64 {
        self.syllables.iter().map(|&(_, e)| e as i64).sum()
    }

    /// `Some(k)` when the element is `a^k`.
    pub fn as_a_power(&self) -> Option<i64> {
        self.syllables.is_empty().then_some(self.tail)
    }

    /// Canonical representative of `g<a>`.
    pub fn strip_tail(&self) -> BsWord {
        BsWord { syllables: self.syllables.clone(), tail: 0 }
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for &(r, e) in &self.syllables {
            if r != 0 {
                out.push(Letter::A(r));
            }
            out.push(Letter::T(e));
        }
        if self.tail != 0 {
            out.push(Letter::A(self.tail));
        }
        out
    }
}

impl fmt::Display for BsWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<String> = self
            .letters()
            .into_iter()
            .map(|l| match l {
                Letter::A(1) => "a".to_string(),
                Letter::A(k) => format!("a^{k}"),
                Letter::T(1) => "t".to_string(),
                Letter::T(e) => format!("t^{e}"),
            })
            .collect();
        if tokens.is_empty() {
            f.write_str("e")
        } else {
            f.write_str(&tokens.join(" "))
        }
    }
}

fn checked(v: Option<i64>) -> i64 {
    v.expect("a-exponent overflowed i64")
}

impl BaumslagSolitar {
    pub fn new(m: i64, n: i64) -> Result<Self, GroupError> {
        if m == 0 || n == 0 {
            return Err(GroupError::ZeroParameter);
        }
        Ok(BaumslagSolitar { m, n })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn a_power(&self, k: i64) -> BsWord {
        BsWord { syllables: vec![], tail: k }
    }

    pub fn a(&self) -> BsWord {
        self.a_power(1)
    }

    pub fn t(&self) -> BsWord {
        self.from_letters(&[Letter::T(1)])
    }

    pub fn t_inv(&self) -> BsWord {
        self.from_letters(&[Letter::T(-1)])
    }

    pub fn from_letters(&self, letters: &[Letter]) -> BsWord {
        let mut w = self.a_power(0);
        for &l in letters {
            self.push(&mut w, l);
        }
        w
    }

    /// Parses words such as `t a^2 t^-1`, `tat^-1` or `A t T`; `A`/`T` are inverses.
    pub fn parse_word(&self, s: &str) -> Result<BsWord, GroupError> {
        Ok(self.from_letters(&parse_letters(s)?))
    }

    fn push(&self, w: &mut BsWord, letter: Letter) {
        match letter {
            Letter::A(k) => w.tail = checked(w.tail.checked_add(k)),
            Letter::T(e) if e == 1 || e == -1 => self.push_t(w, e),
            Letter::T(e) => {
                let unit = e.signum();
                for _ in 0..e.unsigned_abs() {
                    self.push_t(w, unit);
                }
            }
        }
    }

    fn push_t(&self, w: &mut BsWord, e: i8) {
        if let Some(&(r_prev, e_prev)) = w.syllables.last() {
            if e_prev == -e {
                // t a^{jm} t^-1 = a^{jn} and t^-1 a^{jn} t = a^{jm}.
                let (d, other) = if e_prev == 1 { (self.m, self.n) } else { (self.n, self.m) };
                if w.tail % d == 0 {
                    w.syllables.pop();
                    let shifted = checked((w.tail / d).checked_mul(other));
                    w.tail = checked(r_prev.checked_add(shifted));
                    return;
                }
            }
        }
        // a^{qn+r} t = a^r t a^{qm}; a^{qm+r} t^-1 = a^r t^-1 a^{qn}.
        let (d, other) = if e == 1 { (self.n, self.m) } else { (self.m, self.n) };
        let q = w.tail.div_euclid(d);
        let r = w.tail.rem_euclid(d);
        w.syllables.push((r, e));
        w.tail = checked(q.checked_mul(other));
    }
}

pub(crate) fn parse_letters(s: &str) -> Result<Vec<Letter>, GroupError> {
    let bad = || GroupError::Parse(s.to_string());
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        i += 1;
        if c.is_whitespace() || c == '*' || c == '.' || c == '·' {
            continue;
        }
        let (base, sign) = match c {
            'a' => ('a', 1),
            'A' => ('a', -1),
            't' => ('t', 1),
            'T' => ('t', -1),
            'e' => continue,
            _ => return Err(bad()),
        };
        let mut exp: i64 = 1;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let start = i;
            if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            exp = text.parse().map_err(|_| bad())?;
        }
        let exp = exp * sign;
        if base == 'a' {
            out.push(Letter::A(exp));
        } else {
            let e = i8::try_from(exp).map_err(|_| bad())?;
            out.push(Letter::T(e));
        }
    }
    Ok(out)
}

impl Group for BaumslagSolitar {
    type Element = BsWord;

    fn identity(&self) -> BsWord {
        self.a_power(0)
    }

    fn multiply(&self, g: &BsWord, h: &BsWord) -> BsWord {
        let mut w = g.clone();
        for &(r, e) in &h.syllables {
            self.push(&mut w, Letter::A(r));
            self.push_t(&mut w, e);
        }
        self.push(&mut w, Letter::A(h.tail));
        w
    }

    fn invert(&self, g: &BsWord) -> BsWord {
        let mut w = self.a_power(-g.tail);
        for &(r, e) in g.syllables.iter().rev() {
            self.push_t(&mut w, -e);
            self.push(&mut w, Letter::A(-r));
        }
        w
    }

    fn generators(&self) -> Vec<Generator<BsWord>> {
        vec![
            Generator { label: "a".into(), element: self.a() },
            Generator { label: "A".into(), element: self.a_power(-1) },
            Generator { label: "t".into(), element: self.t() },
            Generator { label: "T".into(), element: self.t_inv() },
        ]
    }

    /// `τ` alone, plus the a-exponent sum `α` when `m = n`.
    fn character_dim(&self) -> usize {
        if self.m == self.n {
            2
        } else {
            1
        }
    }

    /// `λ τ + μ α` with `τ(a) = 0`, `τ(t) = 1` and `α(a) = 1`, `α(t) = 0`.
    fn char_eval(&self, chi: &Character, g: &BsWord) -> Result<Rational, GroupError> {
        self.check_character(chi)?;
        let mut value = &chi.coefficients[0] * integer(g.t_exponent_sum());
        if let Some(mu) = chi.coefficients.get(1) {
            value += mu * integer(g.a_exponent_sum());
        }
        Ok(value)
    }

    fn format_element(&self, g: &BsWord) -> String {
        g.to_string()
    }
}

impl BaumslagSolitar {
    /// The relator `t a^m t^-1 a^-n` as letters.
    pub fn relator(&self) -> Vec<Letter> {
        vec![Letter::T(1), Letter::A(self.m), Letter::T(-1), Letter::A(-self.n)]
    }

    pub fn tau(&self) -> Character {
        let mut c = Character::zero(self.character_dim());
        c.coefficients[0] = integer(1);
        c
    }
}

impl BsWord {
    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty() && self.tail.is_zero()
    }
}
