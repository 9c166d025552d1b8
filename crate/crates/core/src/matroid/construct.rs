use super::{Matroid, MAX_GROUND};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::subset::Subset;

/// Column matroid of a matrix over an exact field. Column `i` (0-based in
/// the slice) becomes element `i + 1`.
pub fn from_matrix<F: Field>(field: &F, columns: &[Vec<F::Elem>]) -> Result<Matroid> {
    let n = columns.len();
    if n > MAX_GROUND {
        return Err(Error::TooLarge(format!("{n} columns exceed the limit of {MAX_GROUND}")));
    }
    let height = columns.first().map_or(0, Vec::len);
    if let Some(bad) = columns.iter().position(|c| c.len() != height) {
        return Err(Error::Input(format!(
            "column {} has {} entries, expected {height}",
            bad + 1,
            columns[bad].len()
        )));
    }
    Matroid::from_independence(n, Subset::full(n), |s| {
        let chosen: Vec<&Vec<F::Elem>> = s.iter().map(|x| &columns[x - 1]).collect();
        column_rank(field, &chosen, height) == chosen.len()
    })
}

fn column_rank<F: Field>(field: &F, columns: &[&Vec<F::Elem>], height: usize) -> usize {
    // rows of the transposed matrix: one per chosen column
    let mut rows: Vec<Vec<F::Elem>> = columns.iter().map(|c| (*c).clone()).collect();
    let mut rank = 0;
    for col in 0..height {
        let Some(pivot) = (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(&rows[rank][col]).expect("nonzero pivot");
        let pivot_row: Vec<F::Elem> = rows[rank].iter().map(|v| field.mul(v, &inv)).collect();
        for r in rank + 1..rows.len() {
            let factor = rows[r][col].clone();
            if field.is_zero(&factor) {
                continue;
            }
            for (v, p) in rows[r].iter_mut().zip(&pivot_row) {
                *v = field.sub(v, &field.mul(&factor, p));
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Cycle matroid of a multigraph on vertices `1..=vertices`. Edge `k`
/// (0-based in the slice) becomes element `k + 1`; loops and parallel edges
/// are allowed.
pub fn from_graph(vertices: usize, edges: &[(usize, usize)]) -> Result<Matroid> {
    let m = edges.len();
    if m > MAX_GROUND {
        return Err(Error::TooLarge(format!("{m} edges exceed the limit of {MAX_GROUND}")));
    }
    for &(u, v) in edges {
        for w in [u, v] {
            if w == 0 || w > vertices {
                return Err(Error::OutOfRange {
                    element: w,
                    n: vertices,
                });
            }
        }
    }
    let circuits = Subset::full(m)
        .subsets()
        .filter(|&s| !s.is_empty() && is_cycle(vertices, edges, s))
        .collect::<Vec<_>>();
    Matroid::on_ground(m, Subset::full(m), circuits)
}

/// Whether the edges in `s` form a single simple cycle.
fn is_cycle(vertices: usize, edges: &[(usize, usize)], s: Subset) -> bool {
    let mut degree = vec![0usize; vertices + 1];
    let mut parent: Vec<usize> = (0..=vertices).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in s.iter() {
        let (u, v) = edges[e - 1];
        degree[u] += 1;
        degree[v] += 1;
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    let touched: Vec<usize> = (1..=vertices).filter(|&v| degree[v] > 0).collect();
    if touched.iter().any(|&v| degree[v] != 2) {
        return false;
    }
    let root = find(&mut parent, touched[0]);
    touched.iter().all(|&v| find(&mut parent, v) == root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals, Ring};

    fn s(xs: &[usize]) -> Subset {
        Subset::from_elements(xs.iter().copied())
    }

    fn q_columns(cols: &[&[i64]]) -> Vec<Vec<num_rational::BigRational>> {
        cols.iter()
            .map(|c| c.iter().map(|&v| Rationals.from_i64(v)).collect())
            .collect()
    }

    #[test]
    fn matrix_examples() {
        let m = from_matrix(&Rationals, &q_columns(&[&[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!(m, Matroid::uniform(2, 3).unwrap());
        let m = from_matrix(&Rationals, &q_columns(&[&[1], &[2]])).unwrap();
        assert_eq!(m.circuits(), &[s(&[1, 2])]);
        let m = from_matrix(&Rationals, &q_columns(&[&[1, 0], &[0, 1], &[1, 1], &[1, 2]])).unwrap();
        assert_eq!(m, Matroid::uniform(2, 4).unwrap());
    }

    #[test]
    fn matrix_characteristic_matters() {
        // (1,1) and (1,-1) are parallel only in characteristic 2
        let f = PrimeField::new(2).unwrap();
        let cols = vec![vec![1, 1], vec![1, f.from_i64(-1)]];
        assert_eq!(from_matrix(&f, &cols).unwrap().circuits(), &[s(&[1, 2])]);
        let m = from_matrix(&Rationals, &q_columns(&[&[1, 1], &[1, -1]])).unwrap();
        assert!(m.circuits().is_empty());
    }

    #[test]
    fn zero_column_is_a_loop() {
        let m = from_matrix(&Rationals, &q_columns(&[&[0, 0], &[1, 0]])).unwrap();
        assert!(m.is_loop(1));
    }

    #[test]
    fn graph_examples() {
        let triangle = from_graph(3, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(triangle.circuits(), &[s(&[1, 2, 3])]);

        let k4 = from_graph(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        let mut expected = vec![
            s(&[1, 2, 4]),
            s(&[1, 3, 5]),
            s(&[2, 3, 6]),
            s(&[4, 5, 6]),
            s(&[1, 3, 4, 6]),
            s(&[1, 2, 5, 6]),
            s(&[2, 3, 4, 5]),
        ];
        expected.sort();
        assert_eq!(k4.circuits(), expected.as_slice());

        let looped = from_graph(1, &[(1, 1)]).unwrap();
        assert_eq!(looped.circuits(), &[s(&[1])]);
    }

    #[test]
    fn graph_rejects_bad_vertices() {
        assert_eq!(
            from_graph(2, &[(1, 3)]).unwrap_err(),
            Error::OutOfRange { element: 3, n: 2 }
        );
    }
}
