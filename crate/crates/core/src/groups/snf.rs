//! Smith normal form over the integers, exact.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::presentation::Presentation;
use super::word::exponent_sums;

/// Nonzero invariant factors `d1 | d2 | ... | dr` of an integer matrix.
pub fn invariant_factors(matrix: &[Vec<BigInt>]) -> Vec<BigUint> {
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();

    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block as pivot
        let Some((pr, pc)) = min_entry(&m, t) else { break };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !m[i][t].is_zero() {
                    let q = m[i][t].div_floor(&m[t][t]);
                    sub_row(&mut m, i, t, &q);
                    if !m[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !m[t][j].is_zero() {
                    let q = m[t][j].div_floor(&m[t][t]);
                    sub_col(&mut m, j, t, &q);
                    if !m[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                // pivot must divide the whole trailing block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&m[i][j] % &m[t][t]).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        let one = BigInt::one();
                        sub_row(&mut m, t, i, &-one);
                        continue;
                    }
                }
            }
            let Some((pr, pc)) = min_entry_in_cross(&m, t) else { break };
            m.swap(t, pr);
            for row in m.iter_mut() {
                row.swap(t, pc);
            }
        }
        diag.push(m[t][t].abs().to_biguint().unwrap());
    }
    diag
}

fn min_entry(m: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < m[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

// smallest nonzero entry in row t and column t
fn min_entry_in_cross(m: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let cells = (t..m.len()).map(|i| (i, t)).chain((t + 1..m[t].len()).map(|j| (t, j)));
    let mut best: Option<(usize, usize)> = None;
    for (i, j) in cells {
        let v = &m[i][j];
        if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < m[bi][bj].abs()) {
            best = Some((i, j));
        }
    }
    best
}

// row[target] -= q * row[source]
fn sub_row(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    for j in 0..m[target].len() {
        let delta = q * &m[source][j];
        m[target][j] -= delta;
    }
}

fn sub_col(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let delta = q * &row[source];
        row[target] -= delta;
    }
}

/// `Z^rank ⊕ Z/t1 ⊕ ... ⊕ Z/tk` with `t1 | t2 | ... | tk`, each `ti > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianInvariants {
    pub rank: usize,
    #[serde(serialize_with = "serialize_torsion")]
    pub torsion: Vec<BigUint>,
}

fn serialize_torsion<S: serde::Serializer>(torsion: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(torsion.len()))?;
    for t in torsion {
        match u64::try_from(t) {
            Ok(v) => seq.serialize_element(&v)?,
            Err(_) => seq.serialize_element(&t.to_string())?,
        }
    }
    seq.end()
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_u64(&self) -> Option<Vec<u64>> {
        self.torsion.iter().map(|t| u64::try_from(t).ok()).collect()
    }

    /// Order of the group when finite.
    pub fn order(&self) -> Option<BigUint> {
        (self.rank == 0).then(|| self.torsion.iter().fold(BigUint::one(), |acc, t| acc * t))
    }
}

impl std::fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

pub fn relation_matrix(p: &Presentation) -> Vec<Vec<BigInt>> {
    p.relators.iter().map(|r| exponent_sums(r, p.generator_count()).into_iter().map(BigInt::from).collect()).collect()
}

pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let factors = invariant_factors(&relation_matrix(p));
    AbelianInvariants {
        rank: p.generator_count() - factors.len(),
        torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    fn factors(rows: &[&[i64]]) -> Vec<u64> {
        invariant_factors(&mat(rows)).iter().map(|d| u64::try_from(d).unwrap()).collect()
    }

    #[test]
    fn small_matrices() {
        assert_eq!(factors(&[&[3]]), vec![3]);
        assert_eq!(factors(&[&[2, 0], &[0, 3]]), vec![1, 6]);
        assert_eq!(factors(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), vec![2, 6, 12]);
        assert_eq!(factors(&[&[0, 0], &[0, 0]]), Vec::<u64>::new());
        assert!(factors(&[]).is_empty());
    }

    #[test]
    fn lens_space_abelianization() {
        let p = Presentation::parse("< a | a^3 >").unwrap();
        let ab = abelianization(&p);
        assert_eq!(ab.rank, 0);
        assert_eq!(ab.torsion_u64().unwrap(), vec![3]);
        assert_eq!(ab.to_string(), "Z/3");
    }

    #[test]
    fn free_and_trivial() {
        let ab = abelianization(&Presentation::parse("< a, b | a b a^-1 b^-1 >").unwrap());
        assert_eq!(ab.rank, 2);
        assert!(ab.torsion.is_empty());
        assert!(abelianization(&Presentation::trivial()).is_trivial());
    }

    #[test]
    fn large_entries_stay_exact() {
        let big = 1i64 << 40;
        let f = invariant_factors(&mat(&[&[big, 0], &[0, big + 1]]));
        let prod = BigUint::from(big as u64) * BigUint::from(big as u64 + 1);
        assert_eq!(f, vec![BigUint::one(), prod]);
    }
}
