//! Jacobson radical in characteristic zero via the trace form.

use rayon::prelude::*;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::LinearMap;
use crate::scalar::{FieldSpec, Scalar};

/// Basis of the kernel of `(x, y) ↦ tr(L_x L_y)`. Over ℚ this kernel is the
/// Jacobson radical (Dickson), so the result is empty iff `A` is semisimple.
pub fn trace_form_radical<A: Algebra + ?Sized>(a: &A) -> Result<Vec<Vec<Scalar>>> {
    if a.field() != FieldSpec::Rationals {
        return Err(Error::UnsupportedField(format!(
            "trace-form radical needs characteristic 0, got {}",
            a.field()
        )));
    }
    let n = a.dim();
    let field = a.field();
    // tr(L_{e_k}) = Σ_l coefficient of e_l in e_k e_l
    let traces: Vec<Scalar> = (0..n)
        .into_par_iter()
        .map(|k| {
            let mut t = field.zero();
            for l in 0..n {
                if let Some((_, c)) = a.basis_product(k, l).iter().find(|(i, _)| *i == l) {
                    t += c;
                }
            }
            t
        })
        .collect();
    // L_x L_y = L_{xy}, so the Gram matrix is Σ_k m_ij^k tr(L_{e_k})
    let rows: Vec<Vec<Scalar>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = field.zero();
                    for (k, c) in a.basis_product(i, j) {
                        s.add_product(c, &traces[*k]);
                    }
                    s
                })
                .collect()
        })
        .collect();
    Ok(LinearMap::from_rows(field, rows)?.kernel())
}

/// Matrix of left multiplication by `x`.
pub fn left_multiplication<A: Algebra + ?Sized>(a: &A, x: &[Scalar]) -> LinearMap {
    let n = a.dim();
    let field = a.field();
    let xs = crate::linalg::to_sparse(x);
    let cols: Vec<_> = (0..n)
        .map(|j| a.mul_sparse(&xs, &crate::linalg::basis_sparse(&field, j)))
        .collect();
    LinearMap::from_columns(field, n, &cols).expect("indices in range")
}
