//! Linear algebra over GF(2).

use std::fmt;

/// A vector of bits. Bit 0 is written first and corresponds to the
/// most significant bit of [`Gf2Vector::to_index`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    bits: Vec<bool>,
}

impl Gf2Vector {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            bits: vec![false; n],
        }
    }

    /// The `n`-bit big-endian expansion of `value`.
    pub fn from_index(value: usize, n: usize) -> Self {
        Self {
            bits: (0..n).map(|k| (value >> (n - 1 - k)) & 1 == 1).collect(),
        }
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse(s: &str) -> Option<Self> {
        s.chars()
            .map(|ch| match ch {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }

    pub fn to_index(&self) -> usize {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| !b)
    }

    /// Inner product mod 2.
    pub fn dot(&self, other: &Gf2Vector) -> bool {
        self.bits
            .iter()
            .zip(&other.bits)
            .fold(false, |acc, (&a, &b)| acc ^ (a & b))
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Basis of `{ t : row · t = 0 (mod 2) for every row }`.
///
/// Rows must all have length `n`. The zero vector is never part of the
/// basis, so a full-rank system yields an empty list.
pub fn gf2_nullspace(rows: &[Gf2Vector], n: usize) -> Vec<Gf2Vector> {
    assert!(
        rows.iter().all(|r| r.len() == n),
        "all rows must have length {n}"
    );
    let mut m: Vec<Vec<bool>> = rows.iter().map(|r| r.bits.clone()).collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col]) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[col] {
                row.iter_mut().zip(&pivot).for_each(|(a, &b)| *a ^= b);
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }

    // Reduced row echelon form: each free column yields one basis vector.
    (0..n)
        .filter(|c| !pivot_cols.contains(c))
        .map(|free| {
            let mut bits = vec![false; n];
            bits[free] = true;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                bits[pc] = m[r][free];
            }
            Gf2Vector::new(bits)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(s: &str) -> Gf2Vector {
        Gf2Vector::parse(s).unwrap()
    }

    /// Exhaustive enumeration of all nonzero solutions.
    fn brute_solutions(rows: &[Gf2Vector], n: usize) -> Vec<usize> {
        (1..1usize << n)
            .filter(|&t| {
                let t = Gf2Vector::from_index(t, n);
                rows.iter().all(|r| !r.dot(&t))
            })
            .collect()
    }

    fn span(basis: &[Gf2Vector], n: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (1..1usize << basis.len())
            .map(|mask| {
                basis
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .fold(0, |acc, (_, b)| acc ^ b.to_index())
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        assert!(out.iter().all(|&x| x < 1 << n));
        out
    }

    #[test]
    fn three_rows_leave_all_ones() {
        let basis = gf2_nullspace(&[v("110"), v("101"), v("011")], 3);
        assert_eq!(basis, vec![v("111")]);
    }

    #[test]
    fn no_rows_gives_full_space() {
        let basis = gf2_nullspace(&[], 2);
        assert_eq!(basis, vec![v("10"), v("01")]);
    }

    #[test]
    fn full_rank_gives_empty_basis() {
        assert!(gf2_nullspace(&[v("100"), v("010"), v("001")], 3).is_empty());
    }

    #[test]
    fn index_and_display() {
        assert_eq!(Gf2Vector::from_index(6, 3), v("110"));
        assert_eq!(v("1011").to_index(), 11);
        assert_eq!(v("0101").to_string(), "0101");
        assert!(v("11").dot(&v("10")));
        assert!(!v("11").dot(&v("11")));
    }

    proptest! {
        #[test]
        fn nullspace_matches_enumeration(
            n in 1usize..=12,
            seeds in proptest::collection::vec(any::<u16>(), 0..14),
        ) {
            let rows: Vec<Gf2Vector> = seeds
                .iter()
                .map(|&s| Gf2Vector::from_index(s as usize % (1 << n), n))
                .collect();
            let basis = gf2_nullspace(&rows, n);
            for b in &basis {
                prop_assert!(!b.is_zero());
                for r in &rows {
                    prop_assert!(!r.dot(b));
                }
            }
            let spanned = span(&basis, n);
            prop_assert_eq!(spanned.len(), (1usize << basis.len()) - 1);
            prop_assert_eq!(spanned, brute_solutions(&rows, n));
        }
    }
}
