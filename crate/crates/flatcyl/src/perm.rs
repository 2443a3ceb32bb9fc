//! Small helpers for permutations in one-line notation.

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

pub fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// `(p ∘ q)(i) = p(q(i))`.
pub fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&x| p[x]).collect()
}

/// Cycles of `p`, each starting at its smallest element, sorted by start.
pub fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push(x);
            x = p[x];
        }
        out.push(cyc);
    }
    out
}

/// Cycle notation on the symbols `1..=n`, fixed points included.
pub fn cycle_string(p: &[usize]) -> String {
    cycles(p)
        .iter()
        .map(|c| {
            let body: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            format!("({})", body.join(""))
        })
        .collect()
}

/// Parses cycle notation on symbols `1..=n` (single digits or comma separated).
pub fn parse_cycles(s: &str, n: usize) -> Option<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut seen = vec![false; n];
    let s = s.trim();
    if s == "id" || s.is_empty() {
        return Some(p);
    }
    for part in s.split(')') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let body = part.strip_prefix('(')?;
        let syms: Vec<usize> = if body.contains(',') {
            body.split(',').map(|t| t.trim().parse::<usize>().ok()).collect::<Option<_>>()?
        } else {
            body.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>()?
        };
        for (i, &x) in syms.iter().enumerate() {
            if x == 0 || x > n || seen[x - 1] {
                return None;
            }
            seen[x - 1] = true;
            p[x - 1] = syms[(i + 1) % syms.len()] - 1;
        }
    }
    Some(p)
}

/// Orbits of the group generated by the given permutations, as sorted lists.
pub fn group_orbits(gens: &[&[usize]], n: usize) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut orbit = vec![start];
        comp[start] = id;
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in gens {
                let y = g[x];
                if comp[y] == usize::MAX {
                    comp[y] = id;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation_round_trip() {
        let p = parse_cycles("(1)(243)", 4).unwrap();
        assert_eq!(p, vec![0, 3, 1, 2]);
        assert_eq!(cycle_string(&p), "(1)(243)");
        assert_eq!(parse_cycles("id", 3).unwrap(), vec![0, 1, 2]);
        assert!(parse_cycles("(11)", 3).is_none());
    }

    #[test]
    fn permutation_count() {
        assert_eq!(all_permutations(4).len(), 24);
        assert_eq!(all_permutations(0).len(), 1);
    }

    #[test]
    fn compose_and_inverse() {
        let p = vec![1, 2, 0];
        assert_eq!(compose(&p, &inverse(&p)), vec![0, 1, 2]);
    }
}
