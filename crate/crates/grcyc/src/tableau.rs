use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A rectangular semistandard tableau: rows weakly increasing, columns
/// strictly increasing, entries in {1..n} for the ambient alphabet size
/// supplied to the dynamics.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<u32>>, n: u32) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::InvalidTableau {
                reason: "empty shape".into(),
            });
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidTableau {
                reason: "shape is not rectangular".into(),
            });
        }
        let t = Self { rows };
        t.validate(n)?;
        Ok(t)
    }

    pub fn validate(&self, n: u32) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                if e < 1 || e > n {
                    return Err(Error::InvalidTableau {
                        reason: format!("entry {} at ({},{}) outside 1..={}", e, i + 1, j + 1, n),
                    });
                }
                if j + 1 < row.len() && row[j] > row[j + 1] {
                    return Err(Error::InvalidTableau {
                        reason: format!("row {} not weakly increasing", i + 1),
                    });
                }
                if i + 1 < self.rows.len() && self.rows[i][j] >= self.rows[i + 1][j] {
                    return Err(Error::InvalidTableau {
                        reason: format!("column {} not strictly increasing", j + 1),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }
}

impl std::fmt::Display for Tableau {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Promotion: decrement entries 2..n; cells holding 1 (a prefix of row one,
/// by column strictness) become holes, each slid to the outer border by
/// forward jeu de taquin before being refilled with n.
///
/// Slide rule: the hole swaps with the smaller of its east and south
/// neighbours; on ties the south neighbour moves. Holes are processed right
/// to left so the active hole always sees filled neighbours.
pub fn promotion(t: &Tableau, n: u32) -> Result<Tableau> {
    t.validate(n)?;
    let (nr, nc) = (t.nrows(), t.ncols());
    let mut grid: Vec<Vec<Option<u32>>> = t
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|&e| if e == 1 { None } else { Some(e - 1) })
                .collect()
        })
        .collect();
    let holes: Vec<usize> = (0..nc).rev().filter(|&j| grid[0][j].is_none()).collect();
    for start_col in holes {
        let (mut r, mut c) = (0usize, start_col);
        loop {
            let east = if c + 1 < nc { grid[r][c + 1] } else { None };
            let south = if r + 1 < nr { grid[r + 1][c] } else { None };
            match (east, south) {
                (None, None) => break,
                (Some(_), None) => {
                    grid[r][c] = east;
                    grid[r][c + 1] = None;
                    c += 1;
                }
                (None, Some(_)) => {
                    grid[r][c] = south;
                    grid[r + 1][c] = None;
                    r += 1;
                }
                (Some(e), Some(s)) => {
                    if e < s {
                        grid[r][c] = east;
                        grid[r][c + 1] = None;
                        c += 1;
                    } else {
                        grid[r][c] = south;
                        grid[r + 1][c] = None;
                        r += 1;
                    }
                }
            }
        }
        grid[r][c] = Some(n);
    }
    let rows: Vec<Vec<u32>> = grid
        .into_iter()
        .map(|row| row.into_iter().map(|e| e.expect("all holes filled")).collect())
        .collect();
    Tableau::new(rows, n)
}

/// Least p >= 1 with pr^p = identity. For rectangular shapes the order
/// divides n, which is asserted as a sanity oracle.
pub fn promotion_order(t: &Tableau, n: u32) -> Result<usize> {
    let mut current = promotion(t, n)?;
    let mut p = 1usize;
    while &current != t {
        current = promotion(&current, n)?;
        p += 1;
        if p > n as usize {
            return Err(Error::InvalidTableau {
                reason: format!("promotion order exceeds n = {}", n),
            });
        }
    }
    if n as usize % p != 0 {
        return Err(Error::InvalidTableau {
            reason: format!("promotion order {} does not divide n = {}", p, n),
        });
    }
    Ok(p)
}

/// Every rectangular SSYT of the given shape with entries in {1..n}.
pub fn enumerate_ssyt(nrows: usize, ncols: usize, n: u32) -> Vec<Tableau> {
    let mut out = Vec::new();
    let mut grid = vec![vec![0u32; ncols]; nrows];
    fill(&mut grid, 0, 0, n, &mut out);
    out
}

fn fill(grid: &mut Vec<Vec<u32>>, r: usize, c: usize, n: u32, out: &mut Vec<Tableau>) {
    let (nr, nc) = (grid.len(), grid[0].len());
    if r == nr {
        out.push(Tableau {
            rows: grid.clone(),
        });
        return;
    }
    let (nr_next, nc_next) = if c + 1 == nc { (r + 1, 0) } else { (r, c + 1) };
    let lo = {
        let left = if c > 0 { grid[r][c - 1] } else { 1 };
        let up = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
        left.max(up)
    };
    for v in lo..=n {
        grid[r][c] = v;
        fill(grid, nr_next, nc_next, n, out);
    }
    grid[r][c] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(rows: Vec<Vec<u32>>, n: u32) -> Tableau {
        Tableau::new(rows, n).unwrap()
    }

    #[test]
    fn worked_example() {
        // rows (1,1,2,3)/(2,3,4,5) with n=5 -> (1,1,2,4)/(2,3,5,5)
        let start = t(vec![vec![1, 1, 2, 3], vec![2, 3, 4, 5]], 5);
        let got = promotion(&start, 5).unwrap();
        assert_eq!(got.rows(), &[vec![1, 1, 2, 4], vec![2, 3, 5, 5]]);
    }

    #[test]
    fn two_letter_rectangle_is_fixed() {
        let start = t(vec![vec![1, 1], vec![2, 2]], 2);
        assert_eq!(promotion(&start, 2).unwrap(), start);
        assert_eq!(promotion_order(&start, 2).unwrap(), 1);
    }

    #[test]
    fn single_cell_orbit() {
        let one = t(vec![vec![1]], 3);
        let three = promotion(&one, 3).unwrap();
        assert_eq!(three.rows(), &[vec![3]]);
        let two = promotion(&three, 3).unwrap();
        assert_eq!(two.rows(), &[vec![2]]);
        let back = promotion(&two, 3).unwrap();
        assert_eq!(back, one);
        assert_eq!(promotion_order(&one, 3).unwrap(), 3);
    }

    #[test]
    fn worked_example_order_divides_n() {
        let start = t(vec![vec![1, 1, 2, 3], vec![2, 3, 4, 5]], 5);
        let p = promotion_order(&start, 5).unwrap();
        assert_eq!(5 % p, 0);
    }

    #[test]
    fn standard_2x2_orders() {
        // the two standard 2x2 tableaux with n=4
        for rows in [vec![vec![1, 2], vec![3, 4]], vec![vec![1, 3], vec![2, 4]]] {
            let start = t(rows, 4);
            let p = promotion_order(&start, 4).unwrap();
            assert_eq!(4 % p, 0);
        }
    }

    #[test]
    fn output_is_always_semistandard_and_order_n() {
        // exhaustive: all rectangular shapes with <= 6 cells, n <= 5
        for n in 1..=5u32 {
            for nrows in 1..=(n as usize) {
                for ncols in 1..=6usize {
                    if nrows * ncols > 6 {
                        continue;
                    }
                    for start in enumerate_ssyt(nrows, ncols, n) {
                        let mut cur = start.clone();
                        for _ in 0..n {
                            cur = promotion(&cur, n).unwrap();
                            cur.validate(n).unwrap();
                        }
                        assert_eq!(cur, start, "pr^{} != id on {:?}", n, start.rows());
                    }
                }
            }
        }
    }

    #[test]
    fn invalid_tableaux_rejected() {
        assert!(Tableau::new(vec![vec![1, 2], vec![1, 3]], 4).is_err()); // column tie
        assert!(Tableau::new(vec![vec![2, 1]], 4).is_err()); // row decrease
        assert!(Tableau::new(vec![vec![1, 5]], 4).is_err()); // out of range
        assert!(Tableau::new(vec![vec![1, 2], vec![3]], 4).is_err()); // ragged
    }
}
