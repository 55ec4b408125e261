use super::{Character, Generator, Group, GroupError};
use crate::arith::{integer, Rational};

/// `Z` written additively, generated by `x = 1`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct InfiniteCyclic;

impl Group for InfiniteCyclic {
    type Element = i64;

    fn identity(&self) -> i64 {
        0
    }

    fn multiply(&self, g: &i64, h: &i64) -> i64 {
        g.checked_add(*h).expect("Z element overflowed i64")
    }

    fn invert(&self, g: &i64) -> i64 {
        -g
    }

    fn generators(&self) -> Vec<Generator<i64>> {
        vec![
            Generator { label: "x".into(), element: 1 },
            Generator { label: "X".into(), element: -1 },
        ]
    }

    fn character_dim(&self) -> usize {
        1
    }

    fn char_eval(&self, chi: &Character, g: &i64) -> Result<Rational, GroupError> {
        self.check_character(chi)?;
        Ok(&chi.coefficients[0] * integer(*g))
    }

    fn format_element(&self, g: &i64) -> String {
        g.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::ball;

    #[test]
    fn ball_is_an_interval() {
        let b = ball(&InfiniteCyclic, 3);
        assert_eq!(b.len(), 7);
        assert_eq!(b.distance(&-3), Some(3));
        assert!(!b.contains(&4));
    }

    #[test]
    fn character_is_scaled_identity() {
        let chi = Character::parse("-1/2").unwrap();
        assert_eq!(InfiniteCyclic.char_eval(&chi, &4).unwrap(), integer(-2));
    }
}
