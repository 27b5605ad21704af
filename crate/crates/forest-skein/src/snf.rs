//! Smith normal form over the integers.

use serde::Serialize;

/// Abelian group `Z^free_rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_m` with `t_i | t_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<i128>,
}

impl AbelianInvariants {
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Nonzero diagonal entries of the Smith normal form, in divisibility order.
pub fn smith_normal_form(m: &[Vec<i128>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let Some((pi, pj)) = pivot(&a, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t].div_euclid(a[t][t]);
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(a[t][t]);
                if q != 0 {
                    for row in a.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // the pivot must divide the whole remaining block
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % a[t][t] != 0));
                match bad {
                    Some(i) => {
                        for j in t..cols {
                            a[t][j] += a[i][j];
                        }
                    }
                    None => break,
                }
            }
            let (pi, pj) = pivot(&a, t).expect("block has a nonzero entry");
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

fn pivot(a: &[Vec<i128>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(i128, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, &v) in row.iter().enumerate().skip(t) {
            if v != 0 && best.is_none_or(|(b, _, _)| v.abs() < b) {
                best = Some((v.abs(), i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Cokernel of the relation matrix (one row per relator, one column per generator).
pub fn cokernel(m: &[Vec<i128>], cols: usize) -> AbelianInvariants {
    let factors = smith_normal_form(m);
    AbelianInvariants {
        free_rank: cols - factors.len(),
        torsion: factors.into_iter().filter(|&f| f > 1).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_input() {
        let m = vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 6]];
        assert_eq!(smith_normal_form(&m), vec![1, 2, 6]);
    }

    #[test]
    fn zero_matrix() {
        let m = vec![vec![0; 3]; 2];
        assert!(smith_normal_form(&m).is_empty());
        assert_eq!(cokernel(&m, 3), AbelianInvariants { free_rank: 3, torsion: vec![] });
    }

    #[test]
    fn small_block() {
        assert_eq!(smith_normal_form(&[vec![2, 4], vec![6, 10]]), vec![2, 2]);
    }

    #[test]
    fn non_divisible_diagonal() {
        assert_eq!(smith_normal_form(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }
}
