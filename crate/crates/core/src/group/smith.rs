//! Smith normal form over exact integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Diagonal entries (nonzero, positive, each dividing the next) of the Smith
/// normal form of `matrix`, given as rows.
#[allow(clippy::needless_range_loop)]
pub fn smith_diagonal(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero pivot in the remaining block
        let Some((pr, pc)) = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| !a[r][c].is_zero())
            .min_by(|&(r1, c1), &(r2, c2)| a[r1][c1].abs().cmp(&a[r2][c2].abs()))
        else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut dirty = false;
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = a[r][t].div_floor(&a[t][t]);
                for c in t..cols {
                    let sub = &q * &a[t][c];
                    a[r][c] -= sub;
                }
                if !a[r][t].is_zero() {
                    a.swap(t, r);
                    dirty = true;
                }
            }
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = a[t][c].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let sub = &q * &row[t];
                    row[c] -= sub;
                }
                if !a[t][c].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, c);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the rest of the block
            let bad = (t + 1..rows)
                .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
                .find(|&(r, c)| !(&a[r][c] % &a[t][t]).is_zero());
            match bad {
                Some((r, _)) => {
                    for c in t..cols {
                        let add = a[r][c].clone();
                        a[t][c] += add;
                    }
                }
                None => break,
            }
        }
        diagonal.push(a[t][t].abs());
        t += 1;
    }
    diagonal
}

/// Invariant factors `d₁ | d₂ | …` (entries equal to 1 dropped) and free rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    pub fn from_relation_matrix(matrix: &[Vec<BigInt>], generators: usize) -> Self {
        let diagonal = smith_diagonal(matrix);
        let free_rank = generators - diagonal.len();
        let torsion = diagonal.into_iter().filter(|d| !d.is_one()).collect();
        Self { torsion, free_rank }
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }
}

impl std::fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            n => parts.push(format!("Z^{n}")),
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}
