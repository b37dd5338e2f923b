//! Module and comodule structures, module-algebra verification, the regular
//! actions of `H` on `H*`, and conversions from coactions to actions.

use crate::algebra::{
    compare_sparse, for_each_instance, tensor_hopf, tensor_sparse, variant, Algebra, AlgebraData, CoalgebraData,
    HopfAlgebraData, StructureTable, Variant,
};
use crate::check::{CheckMode, CheckReport};
use crate::error::{Error, Result};
use crate::linalg::{scale_sparse, to_dense, Accumulator, LinearMap, SparseVec};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// `table(i, j)` is `e_i · m_j` for a left action and `m_j · e_i` for a right one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionData {
    pub side: Side,
    pub field: FieldSpec,
    pub table: StructureTable,
}

impl ActionData {
    pub fn new(side: Side, field: FieldSpec, table: StructureTable) -> Result<Self> {
        if table.right_dim != table.out_dim {
            return Err(Error::DimensionMismatch("action must map the space to itself".into()));
        }
        Ok(ActionData { side, field, table })
    }

    pub fn actor_dim(&self) -> usize {
        self.table.left_dim
    }

    pub fn space_dim(&self) -> usize {
        self.table.right_dim
    }

    /// Acts with `x` (actor coordinates) on `m`, whichever side the action is on.
    pub fn apply(&self, x: &[(usize, Scalar)], m: &[(usize, Scalar)]) -> SparseVec {
        self.table.apply(x, m, &self.field)
    }

    /// Same tensor read as an action of the opposite algebra on the other side.
    pub fn flip_side(&self) -> ActionData {
        let side = match self.side {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        };
        ActionData { side, field: self.field, table: self.table.clone() }
    }

    /// `h · a = ε(h) a`.
    pub fn trivial(side: Side, actor: &HopfAlgebraData, space_dim: usize) -> ActionData {
        let field = actor.field();
        let triples = (0..actor.dim()).flat_map(|i| {
            let e = actor.coalgebra.counit[i].clone();
            (0..space_dim).map(move |j| (i, j, j, e.clone()))
        });
        let table = StructureTable::from_triples(actor.dim(), space_dim, space_dim, triples).expect("in range");
        ActionData { side, field, table }
    }
}

/// `terms[i]` lists `(a, k, c)`: left `m_i ↦ Σ c e_a ⊗ m_k`, right `m_i ↦ Σ c m_k ⊗ e_a`,
/// with `e_a` a basis vector of the coalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoactionData {
    pub side: Side,
    pub field: FieldSpec,
    pub coalgebra_dim: usize,
    pub space_dim: usize,
    pub terms: Vec<Vec<(usize, usize, Scalar)>>,
}

impl CoactionData {
    pub fn new(
        side: Side,
        field: FieldSpec,
        coalgebra_dim: usize,
        space_dim: usize,
        triples: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut accs: Vec<Accumulator> = (0..space_dim).map(|_| Accumulator::new()).collect();
        for (m, a, k, c) in triples {
            if m >= space_dim || a >= coalgebra_dim || k >= space_dim {
                return Err(Error::IndexOutOfRange(format!("coaction entry ({m}, {a}, {k})")));
            }
            accs[m].add(a * space_dim + k, c);
        }
        let terms = accs
            .into_iter()
            .map(|acc| acc.finish().into_iter().map(|(ak, c)| (ak / space_dim, ak % space_dim, c)).collect())
            .collect();
        Ok(CoactionData { side, field, coalgebra_dim, space_dim, terms })
    }

    /// Output index `a·space_dim + k` (left) or `k·coalgebra_dim + a` (right).
    pub fn apply(&self, m: &[(usize, Scalar)]) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, x) in m {
            for (a, k, c) in &self.terms[*i] {
                let idx = match self.side {
                    Side::Left => a * self.space_dim + k,
                    Side::Right => k * self.coalgebra_dim + a,
                };
                acc.add(idx, x * c);
            }
        }
        acc.finish()
    }

    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        self.terms.iter().enumerate().flat_map(|(m, t)| t.iter().map(move |(a, k, c)| (m, *a, *k, c)))
    }
}

fn check_dims(what: &str, a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!("{what}: {a} vs {b}")))
    }
}

/// Unit law and associativity of an action with respect to the actor's product.
pub fn check_module<A: Algebra + ?Sized>(actor: &A, act: &ActionData, mode: CheckMode) -> Result<CheckReport> {
    check_dims("actor dimension", actor.dim(), act.actor_dim())?;
    let (n, d) = (actor.dim(), act.space_dim());
    let field = actor.field();
    let unit = actor.unit_sparse();
    let mut report = for_each_instance(&field, &[n, n, d], mode, |w, args, report| {
        let (x, y, m) = (&args[0], &args[1], &args[2]);
        let xy = actor.mul_sparse(x, y);
        let (lhs, rhs) = match act.side {
            // (xy)·m = x·(y·m)
            Side::Left => (act.apply(&xy, m), act.apply(x, &act.apply(y, m))),
            // m·(xy) = (m·x)·y
            Side::Right => (act.apply(&xy, m), act.apply(y, &act.apply(x, m))),
        };
        compare_sparse(report, "module associativity", w, &lhs, &rhs, d, &field);
    });
    report.merge(for_each_instance(&field, &[d], mode, |w, args, report| {
        compare_sparse(report, "module unit", w, &act.apply(&unit, &args[0]), &args[0], d, &field);
    }));
    Ok(report)
}

/// Coassociativity and counit law of a coaction.
pub fn check_comodule(co: &CoactionData, coalgebra: &CoalgebraData, mode: CheckMode) -> Result<CheckReport> {
    check_dims("coalgebra dimension", coalgebra.dim(), co.coalgebra_dim)?;
    let (c, d) = (co.coalgebra_dim, co.space_dim);
    let field = co.field;
    Ok(for_each_instance(&field, &[d], mode, |w, args, report| {
        let mut lhs = Accumulator::new();
        let mut rhs = Accumulator::new();
        let mut counit = Accumulator::new();
        for (m, x) in &args[0] {
            for (a, k, coef) in &co.terms[*m] {
                let s = x * coef;
                counit.add(*k, &s * &coalgebra.counit[*a]);
                match co.side {
                    Side::Left => {
                        // (Δ⊗id)λ vs (id⊗λ)λ, index (a1, a2, k)
                        for (a1, a2, e) in &coalgebra.comult[*a] {
                            lhs.add((a1 * c + a2) * d + k, &s * e);
                        }
                        for (a2, l, e) in &co.terms[*k] {
                            rhs.add((a * c + a2) * d + l, &s * e);
                        }
                    }
                    Side::Right => {
                        // (ρ⊗id)ρ vs (id⊗Δ)ρ, index (k, a1, a2)
                        for (a1, l, e) in &co.terms[*k] {
                            lhs.add((l * c + a1) * c + a, &s * e);
                        }
                        for (a1, a2, e) in &coalgebra.comult[*a] {
                            rhs.add((k * c + a1) * c + a2, &s * e);
                        }
                    }
                }
            }
        }
        compare_sparse(report, "comodule coassociativity", w, &lhs.finish(), &rhs.finish(), c * c * d, &field);
        compare_sparse(report, "comodule counit", w, &counit.finish(), &args[0], d, &field);
    }))
}

/// Left and right coactions commute: `(λ⊗id)ρ = (id⊗ρ)λ`.
pub fn check_bicomodule(left: &CoactionData, right: &CoactionData, coalgebra: &CoalgebraData, mode: CheckMode) -> Result<CheckReport> {
    if left.side != Side::Left || right.side != Side::Right {
        return Err(Error::InvalidParameter("bicomodule needs a left and a right coaction".into()));
    }
    check_dims("bicomodule space", left.space_dim, right.space_dim)?;
    let mut report = check_comodule(left, coalgebra, mode)?;
    report.merge(check_comodule(right, coalgebra, mode)?);
    let (c, d) = (left.coalgebra_dim, left.space_dim);
    let field = left.field;
    report.merge(for_each_instance(&field, &[d], mode, |w, args, report| {
        let (lhs, rhs) = bicoaction_both_ways(left, right, &args[0]);
        compare_sparse(report, "bicomodule", w, &lhs, &rhs, c * d * c, &field);
    }));
    Ok(report)
}

/// `m ↦ Σ m(-1) ⊗ m(0) ⊗ m(1)` computed as `(λ⊗id)ρ` and as `(id⊗ρ)λ`,
/// index `(a·d + k)·c + b`.
fn bicoaction_both_ways(left: &CoactionData, right: &CoactionData, m: &[(usize, Scalar)]) -> (SparseVec, SparseVec) {
    let (c, d) = (left.coalgebra_dim, left.space_dim);
    let mut lhs = Accumulator::new();
    let mut rhs = Accumulator::new();
    for (i, x) in m {
        for (b, k, e) in &right.terms[*i] {
            for (a, l, f) in &left.terms[*k] {
                lhs.add((a * d + l) * c + b, &(x * e) * f);
            }
        }
        for (a, k, e) in &left.terms[*i] {
            for (b, l, f) in &right.terms[*k] {
                rhs.add((a * d + l) * c + b, &(x * e) * f);
            }
        }
    }
    (lhs.finish(), rhs.finish())
}

/// The combined bicoaction `(id⊗ρ)λ` of a basis vector as `(a, k, b, c)`.
pub fn bicoaction(left: &CoactionData, right: &CoactionData, j: usize) -> Vec<(usize, usize, usize, Scalar)> {
    let (c, d) = (left.coalgebra_dim, left.space_dim);
    let (_, rhs) = bicoaction_both_ways(left, right, &[(j, left.field.one())]);
    rhs.into_iter()
        .map(|(idx, coef)| (idx / (d * c), (idx / c) % d, idx % c, coef))
        .collect()
}

/// `(h⇀f)(h') = f(h'h)` and `(f↼h')(h) = f(h'h)`, on the dual basis.
pub fn regular_actions(h: &HopfAlgebraData) -> (ActionData, ActionData) {
    let n = h.dim();
    let field = h.field();
    let mut left = Vec::new();
    let mut right = Vec::new();
    // e_i ⇀ f^a = Σ_b m_{bi}^a f^b and f^a ↼ e_i = Σ_b m_{ib}^a f^b
    for (x, y, a, c) in h.algebra.mult.triples() {
        left.push((y, a, x, c.clone()));
        right.push((x, a, y, c.clone()));
    }
    let mk = |side, t: Vec<_>| ActionData {
        side,
        field,
        table: StructureTable::from_triples(n, n, n, t).expect("in range"),
    };
    (mk(Side::Left, left), mk(Side::Right, right))
}

/// Module axioms plus `h·(ab) = Σ (h1·a)(h2·b)`, `h·1 = ε(h)1` (left) or
/// `(ab)·h = Σ (a·h1)(b·h2)`, `1·h = ε(h)1` (right), on all basis elements.
pub fn check_module_algebra(side: Side, h: &HopfAlgebraData, a: &AlgebraData, act: &ActionData) -> Result<CheckReport> {
    if act.side != side {
        return Err(Error::InvalidParameter(format!("expected a {side:?} action")));
    }
    check_dims("action space", a.dim(), act.space_dim())?;
    let mode = CheckMode::Exhaustive;
    let mut report = check_module(h, act, mode)?;
    let (n, d) = (h.dim(), a.dim());
    let field = a.field;
    let unit = a.unit_sparse();
    report.merge(for_each_instance(&field, &[n, d, d], mode, |w, args, report| {
        let (x, p, q) = (&args[0], &args[1], &args[2]);
        let lhs = act.apply(x, &a.mul_sparse(p, q));
        let mut rhs = Accumulator::new();
        for (jk, c) in &h.coalgebra.comul_sparse(x) {
            let e1 = vec![(jk / n, c.clone())];
            let e2 = vec![(jk % n, field.one())];
            rhs.add_scaled(&a.mul_sparse(&act.apply(&e1, p), &act.apply(&e2, q)), &field.one());
        }
        compare_sparse(report, "module algebra product", w, &lhs, &rhs.finish(), d, &field);
    }));
    report.merge(for_each_instance(&field, &[n], mode, |w, args, report| {
        let lhs = act.apply(&args[0], &unit);
        let rhs = scale_sparse(&unit, &h.coalgebra.counit_sparse(&args[0]));
        compare_sparse(report, "module algebra unit", w, &lhs, &rhs, d, &field);
    }));
    Ok(report)
}

/// An `H`-bimodule algebra: a left and a right module-algebra action that commute.
#[derive(Clone, Debug)]
pub struct BimoduleAlgebra {
    pub algebra: AlgebraData,
    pub left: ActionData,
    pub right: ActionData,
}

pub fn check_bimodule_algebra(h: &HopfAlgebraData, c: &BimoduleAlgebra) -> Result<CheckReport> {
    let mut report = check_module_algebra(Side::Left, h, &c.algebra, &c.left)?;
    report.merge(check_module_algebra(Side::Right, h, &c.algebra, &c.right)?);
    let (n, d) = (h.dim(), c.algebra.dim());
    let field = h.field();
    report.merge(for_each_instance(&field, &[n, d, n], CheckMode::Exhaustive, |w, args, report| {
        let (x, m, y) = (&args[0], &args[1], &args[2]);
        let lhs = c.right.apply(y, &c.left.apply(x, m));
        let rhs = c.left.apply(x, &c.right.apply(y, m));
        compare_sparse(report, "bimodule actions commute", w, &lhs, &rhs, d, &field);
    }));
    Ok(report)
}

pub(crate) fn require(report: CheckReport, what: &str) -> Result<()> {
    if report.passed() {
        Ok(())
    } else {
        Err(Error::Unverified { what: what.to_string(), report: Box::new(report) })
    }
}

/// `C = A ⊗ B` with `h·(a⊗b)·g = (h·a) ⊗ (b·g)`.
pub fn build_bimodule_algebra(
    h: &HopfAlgebraData,
    a: &AlgebraData,
    left: &ActionData,
    b: &AlgebraData,
    right: &ActionData,
) -> Result<BimoduleAlgebra> {
    require(check_module_algebra(Side::Left, h, a, left)?, "left module algebra")?;
    require(check_module_algebra(Side::Right, h, b, right)?, "right module algebra")?;
    let algebra = a.tensor(b)?;
    let (n, na, nb) = (h.dim(), a.dim(), b.dim());
    let field = h.field();
    let one = field.one();
    let mut lt = Vec::with_capacity(n * na * nb);
    let mut rt = Vec::with_capacity(n * na * nb);
    for k in 0..n {
        for i in 0..na {
            for j in 0..nb {
                lt.push(tensor_sparse(left.table.get(k, i), &[(j, one.clone())], nb));
                rt.push(tensor_sparse(&[(i, one.clone())], right.table.get(k, j), nb));
            }
        }
    }
    let dim = na * nb;
    Ok(BimoduleAlgebra {
        algebra,
        left: ActionData { side: Side::Left, field, table: StructureTable::from_entries(n, dim, dim, lt) },
        right: ActionData { side: Side::Right, field, table: StructureTable::from_entries(n, dim, dim, rt) },
    })
}

/// Shared data for the formulas over `H`, `H*` and `K = H ⊗ H^op`: iterated
/// coproducts, `S⁻¹`, and the two-sided regular action `h⇀f↼g` on basis elements.
#[derive(Clone, Debug)]
pub struct HopfContext {
    pub h: HopfAlgebraData,
    pub dual: HopfAlgebraData,
    /// `K = H ⊗ H^op`, basis index `h·n + g`.
    pub k: HopfAlgebraData,
    pub s_cols: Vec<SparseVec>,
    pub s_inv_cols: Vec<SparseVec>,
    comul2: Vec<Vec<(usize, usize, usize, Scalar)>>,
    // (i·n + j)·n + a  ↦  e_i ⇀ f^a ↼ e_j
    regular: Vec<SparseVec>,
}

impl HopfContext {
    pub fn new(h: &HopfAlgebraData) -> Result<Self> {
        let dual = crate::algebra::dual_hopf(h)?;
        let s_inv = crate::algebra::antipode_inverse(h)?;
        let k = tensor_hopf(h, &variant(h, Variant::Op)?)?;
        let n = h.dim();
        let comul2 = (0..n).map(|i| h.coalgebra.comul2(i)).collect();
        let mut regular = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                // (e_i ⇀ f^a ↼ e_j)(e_b) = coefficient of e_a in e_j e_b e_i
                let mut accs: Vec<Accumulator> = (0..n).map(|_| Accumulator::new()).collect();
                for b in 0..n {
                    for (l, c) in h.algebra.mult.get(j, b) {
                        for (a, e) in h.algebra.mult.get(*l, i) {
                            accs[*a].add(b, c * e);
                        }
                    }
                }
                regular.extend(accs.into_iter().map(Accumulator::finish));
            }
        }
        Ok(HopfContext {
            s_cols: h.antipode.columns(),
            s_inv_cols: s_inv.columns(),
            h: h.clone(),
            dual,
            k,
            comul2,
            regular,
        })
    }

    pub fn n(&self) -> usize {
        self.h.dim()
    }

    pub fn field(&self) -> FieldSpec {
        self.h.field()
    }

    pub fn comul(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.h.coalgebra.comult[i]
    }

    pub fn comul2(&self, i: usize) -> &[(usize, usize, usize, Scalar)] {
        &self.comul2[i]
    }

    pub fn hit_basis(&self, i: usize, a: usize, j: usize) -> &SparseVec {
        let n = self.n();
        &self.regular[(i * n + j) * n + a]
    }

    /// `x ⇀ p ↼ y` for sparse `x, y ∈ H` and `p ∈ H*`.
    pub fn hit(&self, x: &[(usize, Scalar)], p: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a * b;
                for (f, c) in p {
                    acc.add_scaled(self.hit_basis(*i, *f, *j), &(&ab * c));
                }
            }
        }
        acc.finish()
    }

    pub fn unit_h(&self) -> SparseVec {
        self.h.algebra.unit_sparse()
    }

    pub fn basis(&self, i: usize) -> SparseVec {
        vec![(i, self.field().one())]
    }

    pub fn s(&self, i: usize) -> &SparseVec {
        &self.s_cols[i]
    }

    pub fn s_inv(&self, i: usize) -> &SparseVec {
        &self.s_inv_cols[i]
    }

    pub fn mul_h(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> SparseVec {
        self.h.algebra.mul_sparse(x, y)
    }

    pub fn mul_dual(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> SparseVec {
        self.dual.algebra.mul_sparse(x, y)
    }

    /// Left `K`-module-algebra action on `H*`: `(h⊗g)·f = h⇀f↼g`.
    pub fn k_action_on_dual(&self) -> ActionData {
        let n = self.n();
        let entries = (0..n * n)
            .flat_map(|k| (0..n).map(move |a| (k, a)))
            .map(|(k, a)| self.hit_basis(k / n, a, k % n).clone())
            .collect();
        ActionData { side: Side::Left, field: self.field(), table: StructureTable::from_entries(n * n, n, n, entries) }
    }

    /// Right `K`-module-algebra action on `H*^op`: `f·(h⊗g) = S(h)⇀f↼S⁻¹(g)`.
    pub fn k_action_on_dual_op(&self) -> ActionData {
        let n = self.n();
        let entries = (0..n * n)
            .flat_map(|k| (0..n).map(move |a| (k, a)))
            .map(|(k, a)| self.hit(self.s(k / n), &self.basis(a), self.s_inv(k % n)))
            .collect();
        ActionData { side: Side::Right, field: self.field(), table: StructureTable::from_entries(n * n, n, n, entries) }
    }
}

/// Left `H⊗H^op`-action of an `H*`-bicomodule: `(h⊗g)·m = Σ m(-1)(g) m(1)(h) m(0)`.
pub fn bicomodule_to_module(left_co: &CoactionData, right_co: &CoactionData, h: &HopfAlgebraData) -> Result<ActionData> {
    let n = h.dim();
    check_dims("coaction coalgebra", left_co.coalgebra_dim, n)?;
    let dual = crate::algebra::dual_unchecked(h);
    let report = check_bicomodule(left_co, right_co, &dual.coalgebra, CheckMode::Exhaustive)?;
    require(report, "H*-bicomodule")?;
    Ok(bicomodule_action_unchecked(left_co, right_co, n))
}

pub(crate) fn bicomodule_action_unchecked(left_co: &CoactionData, right_co: &CoactionData, n: usize) -> ActionData {
    let d = left_co.space_dim;
    let mut triples = Vec::new();
    for j in 0..d {
        for (a, k, b, c) in bicoaction(left_co, right_co, j) {
            // evaluation of the dual-basis legs: m(-1) at g = e_a, m(1) at h = e_b
            triples.push((b * n + a, j, k, c));
        }
    }
    ActionData {
        side: Side::Left,
        field: left_co.field,
        table: StructureTable::from_triples(n * n, d, d, triples).expect("in range"),
    }
}

/// The right `H*⊗H*^cop`-coaction on `H*`, `p ↦ Σ p2 ⊗ (p3 ⊗ p1)`, as a map
/// `H* → H* ⊗ (H* ⊗ H*)` (index `(p2·n + p3)·n + p1`), with a report that it
/// is an algebra map and a comodule structure.
pub fn comodule_algebra_map(h: &HopfAlgebraData) -> Result<(LinearMap, CheckReport)> {
    let n = h.dim();
    let field = h.field();
    let dual = crate::algebra::dual_hopf(h)?;
    let cols: Vec<SparseVec> = (0..n)
        .map(|k| {
            let mut acc = Accumulator::new();
            for (p1, p2, p3, c) in dual.coalgebra.comul2(k) {
                acc.add((p2 * n + p3) * n + p1, c);
            }
            acc.finish()
        })
        .collect();
    let map = LinearMap::from_columns(field, n * n * n, &cols)?;
    let target = dual.algebra.tensor(&dual.algebra.tensor(&dual.algebra)?)?;
    let mut report = crate::iso::verify_algebra_morphism(&map, &dual.algebra, &target, CheckMode::Exhaustive)?;
    let d = tensor_hopf(&dual, &variant(&dual, Variant::Cop)?)?;
    let triples = cols
        .iter()
        .enumerate()
        .flat_map(|(m, col)| col.iter().map(move |(idx, c)| (m, idx % (n * n), idx / (n * n), c.clone())));
    let co = CoactionData::new(Side::Right, field, n * n, n, triples)?;
    report.merge(check_comodule(&co, &d.coalgebra, CheckMode::Exhaustive)?);
    Ok((map, report))
}

/// Dense helper used by the report printers.
pub fn dense(v: &SparseVec, dim: usize, field: &FieldSpec) -> Vec<Scalar> {
    to_dense(v, dim, field)
}
