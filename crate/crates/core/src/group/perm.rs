//! One-line permutations on `0..degree` and cycle notation.

use super::GroupError;

/// Image array: `p[i]` is the image of point `i`.
pub type Permutation = Vec<u32>;

pub fn identity(degree: usize) -> Permutation {
    (0..degree as u32).collect()
}

pub fn is_bijection(p: &[u32], degree: usize) -> bool {
    if p.len() != degree {
        return false;
    }
    let mut seen = vec![false; degree];
    for &x in p {
        let x = x as usize;
        if x >= degree || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Product `x·y`: apply `x` first, then `y`.
pub fn compose(x: &[u32], y: &[u32]) -> Permutation {
    x.iter().map(|&i| y[i as usize]).collect()
}

pub fn invert(p: &[u32]) -> Permutation {
    let mut out = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        out[x as usize] = i as u32;
    }
    out
}

/// Parses cycle notation such as `(0 2)(1 3)` or `(0,2,3)` into a one-line
/// permutation of the given degree. Points are 0-based. `()` is the identity.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, GroupError> {
    let bad = || GroupError::BadCycle(text.to_string());
    let mut perm = identity(degree);
    let mut moved = vec![false; degree];
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(bad());
    }
    while !rest.is_empty() {
        let body_end = rest.find(')').ok_or_else(bad)?;
        if !rest.starts_with('(') {
            return Err(bad());
        }
        let body = &rest[1..body_end];
        let points: Vec<usize> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        for (i, &p) in points.iter().enumerate() {
            if p >= degree || moved[p] {
                return Err(bad());
            }
            moved[p] = true;
            perm[p] = points[(i + 1) % points.len()] as u32;
        }
        rest = rest[body_end + 1..].trim_start();
    }
    Ok(perm)
}

/// Formats a permutation in 0-based cycle notation, omitting fixed points.
pub fn format_cycles(p: &[u32]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&x.to_string());
            first = false;
            x = p[x] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}
