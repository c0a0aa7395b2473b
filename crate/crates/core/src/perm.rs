//! Permutations of {1..d} driving the d!-term decomposition sweeps.

/// A permutation stored as its one-line image list with 0-based values:
/// `map[i]` is the image of position `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    map: Vec<usize>,
}

impl Perm {
    pub fn identity(d: usize) -> Self {
        Self { map: (0..d).collect() }
    }

    /// Builds from 0-based images; they must form a permutation of 0..d.
    pub fn from_images(map: Vec<usize>) -> Option<Self> {
        let d = map.len();
        let mut seen = vec![false; d];
        for &v in &map {
            if v >= d || seen[v] {
                return None;
            }
            seen[v] = true;
        }
        Some(Self { map })
    }

    /// All permutations of degree `d` in lexicographic order.
    pub fn all(d: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(d);
        let mut used = vec![false; d];
        fn rec(d: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if cur.len() == d {
                out.push(Perm { map: cur.clone() });
                return;
            }
            for v in 0..d {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    rec(d, cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        rec(d, &mut cur, &mut used, &mut out);
        out
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    /// Image of 0-based position `i`.
    pub fn image(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    /// +1 for even, -1 for odd, by inversion count.
    pub fn parity(&self) -> i8 {
        let mut inversions = 0usize;
        for i in 0..self.map.len() {
            for j in i + 1..self.map.len() {
                if self.map[i] > self.map[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// One-line notation with 1-based values, e.g. "231".
    pub fn one_line(&self) -> String {
        self.map.iter().map(|v| (v + 1).to_string()).collect()
    }
}

impl std::fmt::Display for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.one_line())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_all_in_lex_order() {
        let all = Perm::all(3);
        assert_eq!(all.len(), 6);
        let lines: Vec<String> = all.iter().map(Perm::one_line).collect();
        assert_eq!(lines, ["123", "132", "213", "231", "312", "321"]);
    }

    #[test]
    fn parity_matches_known_signs() {
        let signs: Vec<i8> = Perm::all(3).iter().map(Perm::parity).collect();
        assert_eq!(signs, [1, -1, -1, 1, 1, -1]);
    }

    #[test]
    fn signed_sum_over_group_vanishes() {
        for d in 2..=4 {
            let total: i32 = Perm::all(d).iter().map(|p| p.parity() as i32).sum();
            assert_eq!(total, 0);
        }
    }
}
