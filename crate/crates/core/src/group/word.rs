//! Words in the named generators of a group, written like `b*a^3` or `a^-2`.

use std::fmt;
use std::str::FromStr;

use super::{GroupError, GroupTable};

/// A product of generator powers, read left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ElementWord(pub Vec<(String, i64)>);

impl ElementWord {
    pub fn identity() -> Self {
        ElementWord(Vec::new())
    }

    pub fn factors(&self) -> &[(String, i64)] {
        &self.0
    }

    /// Concatenation `self·other`.
    pub fn concat(&self, other: &ElementWord) -> ElementWord {
        let mut out = self.0.clone();
        out.extend(other.0.iter().cloned());
        ElementWord(out)
    }

    /// Merges adjacent powers of the same generator and drops zero exponents.
    pub fn normalized(&self) -> ElementWord {
        let mut out: Vec<(String, i64)> = Vec::new();
        for (name, exp) in &self.0 {
            match out.last_mut() {
                Some((last, e)) if last == name => *e += exp,
                _ => out.push((name.clone(), *exp)),
            }
            if out.last().is_some_and(|(_, e)| *e == 0) {
                out.pop();
            }
        }
        ElementWord(out)
    }
}

fn bad(text: &str, why: &str) -> GroupError {
    GroupError::BadWord {
        word: text.to_string(),
        reason: why.to_string(),
    }
}

impl FromStr for ElementWord {
    type Err = GroupError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad(text, "empty word"));
        }
        if compact == "1" {
            return Ok(ElementWord::identity());
        }
        let mut factors = Vec::new();
        for factor in compact.split('*') {
            if factor.is_empty() {
                return Err(bad(text, "empty factor"));
            }
            let (name, exp) = match factor.split_once('^') {
                Some((name, exp)) => {
                    let exp = exp.trim_start_matches('(').trim_end_matches(')');
                    let exp: i64 = exp.parse().map_err(|_| bad(text, "exponent is not an integer"))?;
                    (name, exp)
                }
                None => (factor, 1),
            };
            let mut chars = name.chars();
            let valid = chars.next().is_some_and(|c| c.is_ascii_alphabetic())
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(bad(text, "generator names start with a letter"));
            }
            factors.push((name.to_string(), exp));
        }
        Ok(ElementWord(factors))
    }
}

impl fmt::Display for ElementWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (name, exp)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
        }
        Ok(())
    }
}

impl GroupTable {
    /// Left-to-right product of generator powers. An unbound `e` is read as
    /// the identity.
    pub fn resolve_word(&self, word: &ElementWord) -> Result<usize, GroupError> {
        let mut acc = self.identity();
        for (name, exp) in &word.0 {
            let g = match self.generator(name) {
                Some(g) => g,
                None if name == "e" => self.identity(),
                None => return Err(GroupError::UnboundGenerator(name.clone())),
            };
            acc = self.mul(acc, self.pow(g, *exp));
        }
        Ok(acc)
    }

    pub fn parse_element(&self, text: &str) -> Result<usize, GroupError> {
        let trimmed = text.trim();
        if trimmed.starts_with('(') {
            return self.parse_cycle_element(trimmed);
        }
        self.resolve_word(&trimmed.parse()?)
    }

    /// A shortest word for every element, in index order, using generators
    /// and their inverses.
    pub fn shortest_words(&self) -> Vec<ElementWord> {
        let n = self.order();
        let mut parent: Vec<Option<(usize, usize, i64)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (gi, (_, g)) in self.generators().iter().enumerate() {
                for step in [1i64, -1] {
                    let h = if step == 1 { *g } else { self.inv(*g) };
                    let y = self.mul(x, h);
                    if !seen[y] {
                        seen[y] = true;
                        parent[y] = Some((x, gi, step));
                        queue.push_back(y);
                    }
                }
            }
        }
        (0..n)
            .map(|x| {
                let mut factors = Vec::new();
                let mut cur = x;
                while let Some((p, gi, step)) = parent[cur] {
                    factors.push((self.generators()[gi].0.clone(), step));
                    cur = p;
                }
                factors.reverse();
                ElementWord(factors).normalized()
            })
            .collect()
    }
}
