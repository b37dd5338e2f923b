//! Structure-constant algebras, coalgebras and Hopf algebras, their axiom
//! checks, and the dual / opposite / co-opposite / tensor constructions.

use rayon::prelude::*;

use crate::check::{random_samples, CheckMode, CheckReport};
use crate::error::{Error, Result};
use crate::linalg::{basis_sparse, to_dense, to_sparse, Accumulator, LinearMap, SparseVec};
use crate::scalar::{FieldSpec, Scalar};

/// Bilinear map on basis pairs: `e_i ⋆ e_j = Σ_k t_ij^k e_k`, stored densely
/// by `(i, j)` with sparse outputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    pub left_dim: usize,
    pub right_dim: usize,
    pub out_dim: usize,
    entries: Vec<SparseVec>,
}

impl StructureTable {
    pub fn empty(left_dim: usize, right_dim: usize, out_dim: usize) -> Self {
        StructureTable { left_dim, right_dim, out_dim, entries: vec![Vec::new(); left_dim * right_dim] }
    }

    pub fn from_entries(left_dim: usize, right_dim: usize, out_dim: usize, entries: Vec<SparseVec>) -> Self {
        assert_eq!(entries.len(), left_dim * right_dim);
        StructureTable { left_dim, right_dim, out_dim, entries }
    }

    /// From `(i, j, k, coefficient)` triples; repeated triples are summed.
    pub fn from_triples(
        left_dim: usize,
        right_dim: usize,
        out_dim: usize,
        triples: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut accs: Vec<Accumulator> = (0..left_dim * right_dim).map(|_| Accumulator::new()).collect();
        for (i, j, k, c) in triples {
            if i >= left_dim || j >= right_dim || k >= out_dim {
                return Err(Error::IndexOutOfRange(format!(
                    "({i}, {j}, {k}) outside {left_dim}x{right_dim}->{out_dim}"
                )));
            }
            accs[i * right_dim + j].add(k, c);
        }
        Ok(StructureTable { left_dim, right_dim, out_dim, entries: accs.into_iter().map(Accumulator::finish).collect() })
    }

    pub fn get(&self, i: usize, j: usize) -> &SparseVec {
        &self.entries[i * self.right_dim + j]
    }

    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        self.entries.iter().enumerate().flat_map(move |(ij, v)| {
            let (i, j) = (ij / self.right_dim, ij % self.right_dim);
            v.iter().map(move |(k, c)| (i, j, *k, c))
        })
    }

    /// Bilinear extension to sparse arguments.
    pub fn apply(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)], field: &FieldSpec) -> SparseVec {
        bilinear(self.out_dim, field, x, y, |i, j| self.get(i, j))
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(Vec::len).sum()
    }
}

/// `Σ x_i y_j · table(i, j)`, accumulating densely when the expansion is large.
pub fn bilinear<'a>(
    out_dim: usize,
    field: &FieldSpec,
    x: &[(usize, Scalar)],
    y: &[(usize, Scalar)],
    table: impl Fn(usize, usize) -> &'a SparseVec,
) -> SparseVec {
    if x.len() * y.len() * 2 >= out_dim {
        let mut out = vec![field.zero(); out_dim];
        for (i, a) in x {
            for (j, b) in y {
                let t = table(*i, *j);
                if t.is_empty() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in t {
                    out[*k].add_product(&ab, c);
                }
            }
        }
        to_sparse(&out)
    } else {
        let mut acc = Accumulator::new();
        for (i, a) in x {
            for (j, b) in y {
                let t = table(*i, *j);
                if t.is_empty() {
                    continue;
                }
                acc.add_scaled(t, &(a * b));
            }
        }
        acc.finish()
    }
}

/// Anything that multiplies basis vectors: materialized data or a lazy handle.
pub trait Algebra: Sync {
    fn field(&self) -> FieldSpec;
    fn dim(&self) -> usize;
    fn unit(&self) -> &[Scalar];
    fn basis_product(&self, i: usize, j: usize) -> &SparseVec;

    fn unit_sparse(&self) -> SparseVec {
        to_sparse(self.unit())
    }

    fn mul_sparse(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> SparseVec {
        bilinear(self.dim(), &self.field(), x, y, |i, j| self.basis_product(i, j))
    }

    fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        to_dense(&self.mul_sparse(&to_sparse(x), &to_sparse(y)), self.dim(), &self.field())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraData {
    pub field: FieldSpec,
    pub labels: Vec<String>,
    pub mult: StructureTable,
    pub unit: Vec<Scalar>,
}

impl AlgebraData {
    pub fn new(field: FieldSpec, labels: Vec<String>, mult: StructureTable, unit: Vec<Scalar>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::DimensionMismatch("algebra of dimension 0".into()));
        }
        if mult.left_dim != n || mult.right_dim != n || mult.out_dim != n || unit.len() != n {
            return Err(Error::DimensionMismatch(format!("algebra of dimension {n} with inconsistent tables")));
        }
        check_field(&field, mult.triples().map(|t| t.3).chain(unit.iter()))?;
        Ok(AlgebraData { field, labels, mult, unit })
    }

    /// The one-dimensional algebra `k`.
    pub fn ground(field: FieldSpec) -> Self {
        let mult = StructureTable::from_entries(1, 1, 1, vec![vec![(0, field.one())]]);
        AlgebraData { field, labels: vec!["1".into()], mult, unit: vec![field.one()] }
    }

    pub fn opposite(&self) -> AlgebraData {
        let n = self.dim();
        let entries = (0..n * n).map(|ij| self.mult.get(ij % n, ij / n).clone()).collect();
        AlgebraData {
            field: self.field,
            labels: self.labels.clone(),
            mult: StructureTable::from_entries(n, n, n, entries),
            unit: self.unit.clone(),
        }
    }

    /// Componentwise product on `A ⊗ B`, index `i·dim(B) + j`.
    pub fn tensor(&self, other: &AlgebraData) -> Result<AlgebraData> {
        same_field(&self.field, &other.field)?;
        let (n, m) = (self.dim(), other.dim());
        let dim = n * m;
        let entries = (0..dim * dim)
            .into_par_iter()
            .map(|xy| {
                let (x, y) = (xy / dim, xy % dim);
                let (a, b) = (x / m, x % m);
                let (c, d) = (y / m, y % m);
                tensor_sparse(self.mult.get(a, c), other.mult.get(b, d), m)
            })
            .collect();
        let unit = tensor_dense(&self.unit, &other.unit);
        Ok(AlgebraData {
            field: self.field,
            labels: tensor_labels(&self.labels, &other.labels, "⊗"),
            mult: StructureTable::from_entries(dim, dim, dim, entries),
            unit,
        })
    }

    /// Equality of structure constants and unit, ignoring basis labels.
    pub fn same_structure(&self, other: &AlgebraData) -> bool {
        self.field == other.field && self.mult == other.mult && self.unit == other.unit
    }

    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| self.mult.get(i, j) != self.mult.get(j, i))
    }
}

impl Algebra for AlgebraData {
    fn field(&self) -> FieldSpec {
        self.field
    }
    fn dim(&self) -> usize {
        self.labels.len()
    }
    fn unit(&self) -> &[Scalar] {
        &self.unit
    }
    fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        self.mult.get(i, j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraData {
    pub field: FieldSpec,
    pub labels: Vec<String>,
    /// `comult[i]` lists `(j, k, c)` with `Δ(e_i) = Σ c e_j ⊗ e_k`.
    pub comult: Vec<Vec<(usize, usize, Scalar)>>,
    pub counit: Vec<Scalar>,
}

impl CoalgebraData {
    pub fn new(
        field: FieldSpec,
        labels: Vec<String>,
        triples: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        counit: Vec<Scalar>,
    ) -> Result<Self> {
        let n = labels.len();
        if counit.len() != n {
            return Err(Error::DimensionMismatch("counit length differs from dimension".into()));
        }
        let table = StructureTable::from_triples(n, 1, n * n, triples.into_iter().map(|(i, j, k, c)| {
            // validated below through the out_dim bound
            (i, 0, if j < n && k < n { j * n + k } else { usize::MAX }, c)
        }))?;
        let comult = (0..n)
            .map(|i| table.get(i, 0).iter().map(|(jk, c)| (jk / n, jk % n, c.clone())).collect())
            .collect();
        check_field(&field, counit.iter().chain(table.triples().map(|t| t.3)))?;
        Ok(CoalgebraData { field, labels, comult, counit })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// `Δ(x)` as a sparse vector over `C ⊗ C` (index `j·n + k`).
    pub fn comul_sparse(&self, x: &[(usize, Scalar)]) -> SparseVec {
        let n = self.dim();
        let mut acc = Accumulator::new();
        for (i, a) in x {
            for (j, k, c) in &self.comult[*i] {
                acc.add(j * n + k, a * c);
            }
        }
        acc.finish()
    }

    pub fn counit_sparse(&self, x: &[(usize, Scalar)]) -> Scalar {
        let mut s = self.field.zero();
        for (i, a) in x {
            s.add_product(a, &self.counit[*i]);
        }
        s
    }

    /// Iterated coproduct `Δ²(e_i) = Σ c e_a ⊗ e_b ⊗ e_d` as `(a, b, d, c)`.
    pub fn comul2(&self, i: usize) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.dim();
        let mut acc = Accumulator::new();
        for (a, b, c) in &self.comult[i] {
            for (b1, b2, d) in &self.comult[*b] {
                acc.add((a * n + b1) * n + b2, c * d);
            }
        }
        acc.finish().into_iter().map(|(idx, c)| (idx / (n * n), (idx / n) % n, idx % n, c)).collect()
    }

    pub fn flipped(&self) -> CoalgebraData {
        CoalgebraData {
            field: self.field,
            labels: self.labels.clone(),
            comult: self.comult.iter().map(|t| {
                let mut v: Vec<_> = t.iter().map(|(j, k, c)| (*k, *j, c.clone())).collect();
                v.sort_by_key(|(j, k, _)| (*j, *k));
                v
            }).collect(),
            counit: self.counit.clone(),
        }
    }

    pub fn noncocommuting_element(&self) -> Option<usize> {
        let flipped = self.flipped();
        (0..self.dim()).find(|&i| flipped.comult[i] != self.comult[i])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAlgebraData {
    pub algebra: AlgebraData,
    pub coalgebra: CoalgebraData,
    /// Column `j` is `S(e_j)`.
    pub antipode: LinearMap,
}

impl HopfAlgebraData {
    pub fn new(algebra: AlgebraData, coalgebra: CoalgebraData, antipode: LinearMap) -> Result<Self> {
        let n = algebra.dim();
        if coalgebra.dim() != n || antipode.src_dim != n || antipode.dst_dim != n {
            return Err(Error::DimensionMismatch(format!(
                "algebra dim {n}, coalgebra dim {}, antipode {}x{}",
                coalgebra.dim(),
                antipode.dst_dim,
                antipode.src_dim
            )));
        }
        if algebra.field != coalgebra.field || algebra.field != antipode.field {
            return Err(Error::FieldMismatch(algebra.field.to_string(), coalgebra.field.to_string()));
        }
        Ok(HopfAlgebraData { algebra, coalgebra, antipode })
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn labels(&self) -> &[String] {
        &self.algebra.labels
    }

    pub fn antipode_sparse(&self, x: &[(usize, Scalar)]) -> SparseVec {
        to_sparse(&self.antipode.apply_sparse(x))
    }

    /// Product in `H ⊗ H` of sparse vectors indexed `a·n + b`.
    pub fn tensor_mul(&self, u: &[(usize, Scalar)], v: &[(usize, Scalar)]) -> SparseVec {
        let n = self.dim();
        let mut acc = Accumulator::new();
        for (x, a) in u {
            for (y, b) in v {
                let ab = a * b;
                let left = self.algebra.mult.get(x / n, y / n);
                let right = self.algebra.mult.get(x % n, y % n);
                for (k1, c1) in left {
                    let s = &ab * c1;
                    for (k2, c2) in right {
                        acc.add(k1 * n + k2, &s * c2);
                    }
                }
            }
        }
        acc.finish()
    }

    /// Equality of all structure constants, ignoring labels.
    pub fn same_structure(&self, other: &HopfAlgebraData) -> bool {
        self.algebra.same_structure(&other.algebra)
            && self.coalgebra.comult == other.coalgebra.comult
            && self.coalgebra.counit == other.coalgebra.counit
            && self.antipode == other.antipode
    }
}

impl Algebra for HopfAlgebraData {
    fn field(&self) -> FieldSpec {
        self.algebra.field
    }
    fn dim(&self) -> usize {
        self.algebra.dim()
    }
    fn unit(&self) -> &[Scalar] {
        &self.algebra.unit
    }
    fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        self.algebra.mult.get(i, j)
    }
}

pub(crate) fn same_field(a: &FieldSpec, b: &FieldSpec) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::FieldMismatch(a.to_string(), b.to_string()))
    }
}

fn check_field<'a>(field: &FieldSpec, values: impl IntoIterator<Item = &'a Scalar>) -> Result<()> {
    for v in values {
        if v.field() != *field {
            return Err(Error::FieldMismatch(field.to_string(), v.field().to_string()));
        }
    }
    Ok(())
}

/// Outer product of sparse vectors, index `i·right_dim + j`.
pub fn tensor_sparse(x: &[(usize, Scalar)], y: &[(usize, Scalar)], right_dim: usize) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for (i, a) in x {
        for (j, b) in y {
            out.push((i * right_dim + j, a * b));
        }
    }
    out
}

pub fn tensor_dense(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().flat_map(|a| y.iter().map(move |b| a * b)).collect()
}

pub fn tensor_labels(a: &[String], b: &[String], sep: &str) -> Vec<String> {
    a.iter().flat_map(|x| b.iter().map(move |y| format!("{x}{sep}{y}"))).collect()
}

/// Runs `check` on every instance of a multilinear identity: all tuples of
/// basis vectors, or `trials` tuples of random vectors. Exhaustive mode is
/// parallel over the first argument; the merged report is deterministic.
pub fn for_each_instance<F>(field: &FieldSpec, dims: &[usize], mode: CheckMode, check: F) -> CheckReport
where
    F: Fn(&[usize], &[SparseVec], &mut CheckReport) + Sync,
{
    match mode {
        CheckMode::Exhaustive => {
            if dims.contains(&0) {
                return CheckReport::new();
            }
            let parts: Vec<CheckReport> = (0..dims[0])
                .into_par_iter()
                .map(|first| {
                    let mut report = CheckReport::new();
                    let mut idx = vec![0usize; dims.len()];
                    idx[0] = first;
                    loop {
                        let args: Vec<SparseVec> = idx.iter().map(|&i| basis_sparse(field, i)).collect();
                        check(&idx, &args, &mut report);
                        let mut pos = dims.len() - 1;
                        loop {
                            if pos == 0 {
                                return report;
                            }
                            idx[pos] += 1;
                            if idx[pos] < dims[pos] {
                                break;
                            }
                            idx[pos] = 0;
                            pos -= 1;
                        }
                    }
                })
                .collect();
            crate::check::merge_all(parts)
        }
        CheckMode::Random { trials, seed } => {
            let samples = random_samples(field, dims, trials, seed);
            let parts: Vec<CheckReport> = samples
                .par_iter()
                .enumerate()
                .map(|(t, args)| {
                    let mut report = CheckReport::new();
                    let args: Vec<SparseVec> = args.iter().map(|v| to_sparse(v)).collect();
                    check(&[t], &args, &mut report);
                    report
                })
                .collect();
            crate::check::merge_all(parts)
        }
    }
}

/// Records one instance comparing sparse vectors; densified only on mismatch.
pub fn compare_sparse(
    report: &mut CheckReport,
    axiom: &str,
    witness: &[usize],
    lhs: &SparseVec,
    rhs: &SparseVec,
    dim: usize,
    field: &FieldSpec,
) {
    report.checked += 1;
    if lhs != rhs {
        report.record(crate::check::Violation {
            axiom: axiom.to_string(),
            witness: witness.to_vec(),
            lhs: to_dense(lhs, dim, field),
            rhs: to_dense(rhs, dim, field),
        });
    }
}

/// Associativity and two-sided unit law.
pub fn check_algebra_axioms<A: Algebra + ?Sized>(a: &A, mode: CheckMode) -> CheckReport {
    let n = a.dim();
    let field = a.field();
    let unit = a.unit_sparse();
    let mut report = for_each_instance(&field, &[n, n, n], mode, |w, args, report| {
        let (x, y, z) = (&args[0], &args[1], &args[2]);
        let lhs = a.mul_sparse(&a.mul_sparse(x, y), z);
        let rhs = a.mul_sparse(x, &a.mul_sparse(y, z));
        compare_sparse(report, "associativity", w, &lhs, &rhs, n, &field);
    });
    report.merge(for_each_instance(&field, &[n], mode, |w, args, report| {
        let x = &args[0];
        compare_sparse(report, "left unit", w, &a.mul_sparse(&unit, x), x, n, &field);
        compare_sparse(report, "right unit", w, &a.mul_sparse(x, &unit), x, n, &field);
    }));
    report
}

/// Coassociativity and the counit law.
pub fn check_coalgebra_axioms(c: &CoalgebraData, mode: CheckMode) -> CheckReport {
    let n = c.dim();
    let field = c.field;
    for_each_instance(&field, &[n], mode, |w, args, report| {
        let d = c.comul_sparse(&args[0]);
        // (Δ⊗id)Δ versus (id⊗Δ)Δ, both indexed (a·n + b)·n + d
        let mut left = Accumulator::new();
        let mut right = Accumulator::new();
        for (jk, coef) in &d {
            let (j, k) = (jk / n, jk % n);
            for (a, b, e) in &c.comult[j] {
                left.add((a * n + b) * n + k, coef * e);
            }
            for (a, b, e) in &c.comult[k] {
                right.add((j * n + a) * n + b, coef * e);
            }
        }
        compare_sparse(report, "coassociativity", w, &left.finish(), &right.finish(), n * n * n, &field);
        let mut l = Accumulator::new();
        let mut r = Accumulator::new();
        for (jk, coef) in &d {
            let (j, k) = (jk / n, jk % n);
            l.add(k, coef * &c.counit[j]);
            r.add(j, coef * &c.counit[k]);
        }
        compare_sparse(report, "left counit", w, &l.finish(), &args[0], n, &field);
        compare_sparse(report, "right counit", w, &r.finish(), &args[0], n, &field);
    })
}

/// Full Hopf axiom suite: algebra and coalgebra axioms, Δ and ε algebra
/// morphisms, both antipode identities, invertibility of S.
pub fn check_hopf_axioms(h: &HopfAlgebraData, mode: CheckMode) -> CheckReport {
    let n = h.dim();
    let field = h.field();
    let mut report = check_algebra_axioms(&h.algebra, mode);
    report.merge(check_coalgebra_axioms(&h.coalgebra, mode));
    let unit = h.algebra.unit_sparse();
    report.merge(for_each_instance(&field, &[n, n], mode, |w, args, report| {
        let (x, y) = (&args[0], &args[1]);
        let xy = h.algebra.mul_sparse(x, y);
        let lhs = h.coalgebra.comul_sparse(&xy);
        let rhs = h.tensor_mul(&h.coalgebra.comul_sparse(x), &h.coalgebra.comul_sparse(y));
        compare_sparse(report, "comultiplication multiplicative", w, &lhs, &rhs, n * n, &field);
        let e = h.coalgebra.counit_sparse(&xy);
        let e2 = &h.coalgebra.counit_sparse(x) * &h.coalgebra.counit_sparse(y);
        report.compare("counit multiplicative", w, vec![e], vec![e2]);
    }));
    let unit_unit = tensor_sparse(&unit, &unit, n);
    compare_sparse(&mut report, "comultiplication unital", &[], &h.coalgebra.comul_sparse(&unit), &unit_unit, n * n, &field);
    report.compare("counit unital", &[], vec![h.coalgebra.counit_sparse(&unit)], vec![field.one()]);
    let s_cols = h.antipode.columns();
    report.merge(for_each_instance(&field, &[n], mode, |w, args, report| {
        let x = &args[0];
        let eps = h.coalgebra.counit_sparse(x);
        let expected = crate::linalg::scale_sparse(&unit, &eps);
        let mut left = Accumulator::new();
        let mut right = Accumulator::new();
        for (jk, c) in &h.coalgebra.comul_sparse(x) {
            let (j, k) = (jk / n, jk % n);
            let ej = basis_sparse(&field, j);
            let ek = basis_sparse(&field, k);
            left.add_scaled(&h.algebra.mul_sparse(&s_cols[j], &ek), c);
            right.add_scaled(&h.algebra.mul_sparse(&ej, &s_cols[k]), c);
        }
        compare_sparse(report, "antipode S(h1)h2 = ε(h)1", w, &left.finish(), &expected, n, &field);
        compare_sparse(report, "antipode h1S(h2) = ε(h)1", w, &right.finish(), &expected, n, &field);
    }));
    report.require("antipode invertible", &[], h.antipode.inverse().is_ok());
    report
}

/// Default regime for the Hopf suite of an algebra of this dimension.
pub fn default_mode(dim: usize, seed: u64) -> CheckMode {
    CheckMode::for_triples(dim, seed)
}

fn ensure_hopf(h: &HopfAlgebraData, what: &str) -> Result<()> {
    let report = check_hopf_axioms(h, default_mode(h.dim(), 0));
    if report.passed() {
        Ok(())
    } else {
        Err(Error::Unverified { what: what.to_string(), report: Box::new(report) })
    }
}

/// Matrix inverse of the antipode.
pub fn antipode_inverse(h: &HopfAlgebraData) -> Result<LinearMap> {
    h.antipode.inverse()
}

/// The dual Hopf algebra on the dual basis: multiplication is the transpose
/// of Δ, Δ the transpose of multiplication, unit ε, counit evaluation at 1,
/// antipode the transpose of S.
pub fn dual_hopf(h: &HopfAlgebraData) -> Result<HopfAlgebraData> {
    ensure_hopf(h, "dual_hopf input")?;
    Ok(dual_unchecked(h))
}

pub(crate) fn dual_unchecked(h: &HopfAlgebraData) -> HopfAlgebraData {
    let n = h.dim();
    let field = h.field();
    let labels: Vec<String> = h.labels().iter().map(|l| format!("{l}*")).collect();
    let mult_triples = h
        .coalgebra
        .comult
        .iter()
        .enumerate()
        .flat_map(|(i, t)| t.iter().map(move |(j, k, c)| (*j, *k, i, c.clone())));
    let mult = StructureTable::from_triples(n, n, n, mult_triples).expect("indices in range");
    let algebra = AlgebraData { field, labels: labels.clone(), mult, unit: h.coalgebra.counit.clone() };
    let comult_triples: Vec<_> = h.algebra.mult.triples().map(|(i, j, k, c)| (k, i, j, c.clone())).collect();
    let coalgebra = CoalgebraData::new(field, labels, comult_triples, h.algebra.unit.clone()).expect("indices in range");
    HopfAlgebraData { algebra, coalgebra, antipode: h.antipode.transpose() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Op,
    Cop,
    OpCop,
}

/// `H^op` (reversed product, antipode S⁻¹), `H^cop` (reversed coproduct,
/// antipode S⁻¹) or `H^{op,cop}` (both, antipode S).
pub fn variant(h: &HopfAlgebraData, which: Variant) -> Result<HopfAlgebraData> {
    let s_inv = antipode_inverse(h)?;
    Ok(match which {
        Variant::Op => HopfAlgebraData { algebra: h.algebra.opposite(), coalgebra: h.coalgebra.clone(), antipode: s_inv },
        Variant::Cop => HopfAlgebraData { algebra: h.algebra.clone(), coalgebra: h.coalgebra.flipped(), antipode: s_inv },
        Variant::OpCop => HopfAlgebraData {
            algebra: h.algebra.opposite(),
            coalgebra: h.coalgebra.flipped(),
            antipode: h.antipode.clone(),
        },
    })
}

/// `H1 ⊗ H2` with componentwise structure, index `i·dim(H2) + j`.
pub fn tensor_hopf(h1: &HopfAlgebraData, h2: &HopfAlgebraData) -> Result<HopfAlgebraData> {
    same_field(&h1.field(), &h2.field())?;
    let algebra = h1.algebra.tensor(&h2.algebra)?;
    let (n, m) = (h1.dim(), h2.dim());
    let mut comult = Vec::with_capacity(n * m);
    for a in 0..n {
        for b in 0..m {
            let mut acc = Accumulator::new();
            for (a1, a2, c) in &h1.coalgebra.comult[a] {
                for (b1, b2, d) in &h2.coalgebra.comult[b] {
                    acc.add((a1 * m + b1) * (n * m) + a2 * m + b2, c * d);
                }
            }
            comult.push(acc.finish().into_iter().map(|(idx, c)| (idx / (n * m), idx % (n * m), c)).collect());
        }
    }
    let coalgebra = CoalgebraData {
        field: h1.field(),
        labels: algebra.labels.clone(),
        comult,
        counit: tensor_dense(&h1.coalgebra.counit, &h2.coalgebra.counit),
    };
    Ok(HopfAlgebraData { algebra, coalgebra, antipode: h1.antipode.kronecker(&h2.antipode) })
}
