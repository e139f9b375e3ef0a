use serde::Serialize;

use super::{block_decompose, detect_special_class, Coloring, SpecialDetection, WeightedGraph};
use crate::error::{Error, Result};
use crate::field::FieldMatrix;
use crate::subsets::combinations;

/// Largest min(rows, cols) accepted by the exhaustive minor check.
pub const MAX_MINOR_DIM: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KUniformReport {
    /// Every square submatrix of `A_RB` is nonsingular.
    pub a_ok: bool,
    /// Same for `A_{G,B_c∖G}`, when the coloring has the special shape.
    pub b1_ok: Option<bool>,
}

/// Whether every square submatrix of `m` has nonzero determinant over F_d.
pub fn all_square_minors_nonsingular(m: &FieldMatrix) -> Result<bool> {
    let small = m.rows().min(m.cols());
    if small > MAX_MINOR_DIM {
        return Err(Error::SearchTooLarge(format!(
            "minor check on a {}x{} matrix (limit min dimension {MAX_MINOR_DIM})",
            m.rows(),
            m.cols()
        )));
    }
    for k in 1..=small {
        let row_sets = combinations(m.rows(), k);
        let col_sets = combinations(m.cols(), k);
        for rs in &row_sets {
            for cs in &col_sets {
                if m.select(rs, cs).determinant()? == 0 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Checks the nonsingular-submatrix conditions on `A_RB`, and on `A_{G,B_c∖G}`
/// for special-class colorings.
pub fn kuniform_adjacency_check(g: &WeightedGraph, c: &Coloring) -> Result<KUniformReport> {
    match c.chi() {
        2 => {
            let blocks = block_decompose(g, c)?;
            let a = blocks.block(1, 0).expect("two classes").transpose();
            Ok(KUniformReport { a_ok: all_square_minors_nonsingular(&a)?, b1_ok: None })
        }
        3 => {
            let SpecialDetection::Accepted(s) = detect_special_class(g, c) else {
                return Err(Error::NotApplicable(
                    "three-colorable input lacks the special-class shape".into(),
                ));
            };
            let a = g.gamma().select(&s.red, &s.blue_u);
            let greens = s.greens();
            let bc: Vec<usize> = {
                let mut v: Vec<usize> = s.components.iter().flat_map(|c| c.blues.clone()).collect();
                v.sort_unstable();
                v
            };
            let b1 = g.gamma().select(&greens, &bc);
            Ok(KUniformReport {
                a_ok: all_square_minors_nonsingular(&a)?,
                b1_ok: Some(all_square_minors_nonsingular(&b1)?),
            })
        }
        chi => Err(Error::NotApplicable(format!("adjacency check needs chi 2 or 3, got {chi}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeDimension;

    #[test]
    fn minor_examples() {
        let d2 = PrimeDimension::new(2).unwrap();
        let d3 = PrimeDimension::new(3).unwrap();
        let one = FieldMatrix::from_rows(d2, &[vec![1]]).unwrap();
        assert_eq!(all_square_minors_nonsingular(&one), Ok(true));
        let ones = FieldMatrix::from_rows(d2, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(all_square_minors_nonsingular(&ones), Ok(false));
        let m = FieldMatrix::from_rows(d3, &[vec![1, 1], vec![1, 2]]).unwrap();
        assert_eq!(all_square_minors_nonsingular(&m), Ok(true));
        let big = FieldMatrix::zeros(d3, 7, 7);
        assert!(all_square_minors_nonsingular(&big).is_err());
    }
}
