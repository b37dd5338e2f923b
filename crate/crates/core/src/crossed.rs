//! Smash, two-sided and diagonal crossed products, and the algebras X, Y, Z
//! over `H`, exposed as lazily multiplied handles.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::actions::{
    build_bimodule_algebra, check_bimodule_algebra, check_module_algebra, require, ActionData, BimoduleAlgebra,
    HopfContext, Side,
};
use crate::algebra::{tensor_dense, tensor_labels, tensor_sparse, Algebra, AlgebraData, HopfAlgebraData, StructureTable};
use crate::error::{Error, Result};
use crate::linalg::{Accumulator, SparseVec};
use crate::scalar::{FieldSpec, Scalar};

/// Default largest dimension for which structure constants are materialized.
pub const DEFAULT_MATERIALIZE_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Plain,
    LeftSmash,
    RightSmash,
    TwoSided,
    Diagonal,
    X,
    Y,
    Z,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Provenance::Plain => "plain",
            Provenance::LeftSmash => "left-smash",
            Provenance::RightSmash => "right-smash",
            Provenance::TwoSided => "two-sided",
            Provenance::Diagonal => "diagonal",
            Provenance::X => "X",
            Provenance::Y => "Y",
            Provenance::Z => "Z",
        };
        f.write_str(s)
    }
}

/// Product of two basis vectors.
pub type BasisOracle = Arc<dyn Fn(usize, usize) -> SparseVec + Send + Sync>;

/// An algebra multiplied through an oracle on basis pairs. Products are
/// computed on first use and kept; rows of the cache are allocated lazily.
#[derive(Clone)]
pub struct AlgebraHandle {
    pub field: FieldSpec,
    pub dim: usize,
    pub factor_dims: Vec<usize>,
    pub provenance: Provenance,
    pub labels: Vec<String>,
    pub unit: Vec<Scalar>,
    oracle: BasisOracle,
    cache: Vec<OnceLock<Vec<OnceLock<SparseVec>>>>,
    materialized: Option<AlgebraData>,
}

impl fmt::Debug for AlgebraHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraHandle")
            .field("provenance", &self.provenance)
            .field("field", &self.field)
            .field("dim", &self.dim)
            .field("factor_dims", &self.factor_dims)
            .field("materialized", &self.materialized.is_some())
            .finish()
    }
}

impl AlgebraHandle {
    pub fn new(
        field: FieldSpec,
        factor_dims: Vec<usize>,
        provenance: Provenance,
        labels: Vec<String>,
        unit: Vec<Scalar>,
        oracle: BasisOracle,
    ) -> Self {
        let dim = factor_dims.iter().product();
        assert_eq!(labels.len(), dim);
        assert_eq!(unit.len(), dim);
        AlgebraHandle {
            field,
            dim,
            factor_dims,
            provenance,
            labels,
            unit,
            oracle,
            cache: (0..dim).map(|_| OnceLock::new()).collect(),
            materialized: None,
        }
    }

    /// Wraps materialized structure constants.
    pub fn from_data(a: AlgebraData) -> Self {
        let table = Arc::new(a.mult.clone());
        let oracle: BasisOracle = Arc::new(move |i, j| table.get(i, j).clone());
        let mut h = AlgebraHandle::new(a.field, vec![a.dim()], Provenance::Plain, a.labels.clone(), a.unit.clone(), oracle);
        h.materialized = Some(a);
        h
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = p;
        self
    }

    pub fn materialized(&self) -> Option<&AlgebraData> {
        self.materialized.as_ref()
    }

    /// Structure constants from the oracle on every basis pair.
    pub fn materialize(&self, cap: usize) -> Result<AlgebraData> {
        if let Some(a) = &self.materialized {
            return Ok(a.clone());
        }
        if self.dim > cap {
            return Err(Error::CapExceeded { dim: self.dim, cap });
        }
        let n = self.dim;
        let entries: Vec<SparseVec> =
            (0..n * n).into_par_iter().map(|ij| self.basis_product(ij / n, ij % n).clone()).collect();
        Ok(AlgebraData {
            field: self.field,
            labels: self.labels.clone(),
            mult: StructureTable::from_entries(n, n, n, entries),
            unit: self.unit.clone(),
        })
    }

    /// Materializes in place, keeping provenance.
    pub fn materialize_in_place(&mut self, cap: usize) -> Result<()> {
        let a = self.materialize(cap)?;
        self.materialized = Some(a);
        Ok(())
    }
}

impl Algebra for AlgebraHandle {
    fn field(&self) -> FieldSpec {
        self.field
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        if let Some(a) = &self.materialized {
            return a.mult.get(i, j);
        }
        let row = self.cache[i].get_or_init(|| (0..self.dim).map(|_| OnceLock::new()).collect());
        row[j].get_or_init(|| (self.oracle)(i, j))
    }
}

fn one(field: FieldSpec, i: usize) -> SparseVec {
    vec![(i, field.one())]
}

fn tensor3(x: &[(usize, Scalar)], y: &[(usize, Scalar)], z: &[(usize, Scalar)], dy: usize, dz: usize) -> SparseVec {
    tensor_sparse(&tensor_sparse(x, y, dy), z, dz)
}

/// `A # H` with `(a#h)(b#g) = Σ a(h1·b) # h2 g`, basis index `a·dim H + h`.
pub fn left_smash(a: &AlgebraData, h: &HopfAlgebraData, act: &ActionData) -> Result<AlgebraHandle> {
    require(check_module_algebra(Side::Left, h, a, act)?, "left module algebra")?;
    let (na, nh) = (a.dim(), h.dim());
    let field = h.field();
    let (a2, h2, act2) = (a.clone(), h.clone(), act.clone());
    let oracle: BasisOracle = Arc::new(move |i, j| {
        let (ai, hi, bj, gj) = (i / nh, i % nh, j / nh, j % nh);
        let mut acc = Accumulator::new();
        for (x1, x2, c) in &h2.coalgebra.comult[hi] {
            let ab = a2.mul_sparse(&one(field, ai), act2.table.get(*x1, bj));
            let hg = h2.algebra.basis_product(*x2, gj);
            acc.add_scaled(&tensor_sparse(&ab, hg, nh), c);
        }
        acc.finish()
    });
    Ok(AlgebraHandle::new(
        field,
        vec![na, nh],
        Provenance::LeftSmash,
        tensor_labels(&a.labels, h.labels(), "#"),
        tensor_dense(&a.unit, &h.algebra.unit),
        oracle,
    ))
}

/// `H # B` with `(h#a)(g#b) = Σ h g1 # (a·g2) b`, basis index `h·dim B + b`.
pub fn right_smash(h: &HopfAlgebraData, b: &AlgebraData, act: &ActionData) -> Result<AlgebraHandle> {
    require(check_module_algebra(Side::Right, h, b, act)?, "right module algebra")?;
    let (nh, nb) = (h.dim(), b.dim());
    let field = h.field();
    let (b2, h2, act2) = (b.clone(), h.clone(), act.clone());
    let oracle: BasisOracle = Arc::new(move |i, j| {
        let (hi, ai, gj, bj) = (i / nb, i % nb, j / nb, j % nb);
        let mut acc = Accumulator::new();
        for (g1, g2, c) in &h2.coalgebra.comult[gj] {
            let hg = h2.algebra.basis_product(hi, *g1);
            let ab = b2.mul_sparse(act2.table.get(*g2, ai), &one(field, bj));
            acc.add_scaled(&tensor_sparse(hg, &ab, nb), c);
        }
        acc.finish()
    });
    Ok(AlgebraHandle::new(
        field,
        vec![nh, nb],
        Provenance::RightSmash,
        tensor_labels(h.labels(), &b.labels, "#"),
        tensor_dense(&h.algebra.unit, &b.unit),
        oracle,
    ))
}

/// `A # H # B` with `(a#h#b)(a'#h'#b') = Σ a(h1·a') # h2h'1 # (b·h'2)b'`,
/// basis index `(a·dim H + h)·dim B + b`.
pub fn two_sided_crossed(
    a: &AlgebraData,
    h: &HopfAlgebraData,
    b: &AlgebraData,
    left: &ActionData,
    right: &ActionData,
) -> Result<AlgebraHandle> {
    require(check_module_algebra(Side::Left, h, a, left)?, "left module algebra")?;
    require(check_module_algebra(Side::Right, h, b, right)?, "right module algebra")?;
    let (na, nh, nb) = (a.dim(), h.dim(), b.dim());
    let field = h.field();
    let (a2, h2, b2, l2, r2) = (a.clone(), h.clone(), b.clone(), left.clone(), right.clone());
    let oracle: BasisOracle = Arc::new(move |i, j| {
        let (ai, hi, bi) = (i / (nh * nb), (i / nb) % nh, i % nb);
        let (aj, hj, bj) = (j / (nh * nb), (j / nb) % nh, j % nb);
        let mut acc = Accumulator::new();
        for (x1, x2, c) in &h2.coalgebra.comult[hi] {
            let ap = a2.mul_sparse(&one(field, ai), l2.table.get(*x1, aj));
            if ap.is_empty() {
                continue;
            }
            for (y1, y2, d) in &h2.coalgebra.comult[hj] {
                let hh = h2.algebra.basis_product(*x2, *y1);
                let bp = b2.mul_sparse(r2.table.get(*y2, bi), &one(field, bj));
                acc.add_scaled(&tensor3(&ap, hh, &bp, nh, nb), &(c * d));
            }
        }
        acc.finish()
    });
    Ok(AlgebraHandle::new(
        field,
        vec![na, nh, nb],
        Provenance::TwoSided,
        tensor_labels(&tensor_labels(&a.labels, h.labels(), "#"), &b.labels, "#"),
        tensor_dense(&tensor_dense(&a.unit, &h.algebra.unit), &b.unit),
        oracle,
    ))
}

/// `C ⋈ H` with `(c⋈h)(c'⋈h') = Σ c(h1·c'·S⁻¹(h3)) ⋈ h2h'`, basis index `c·dim H + h`.
pub fn diagonal_crossed(c: &BimoduleAlgebra, h: &HopfAlgebraData) -> Result<AlgebraHandle> {
    require(check_bimodule_algebra(h, c)?, "bimodule algebra")?;
    let s_inv = crate::algebra::antipode_inverse(h)?.columns();
    let (nc, nh) = (c.algebra.dim(), h.dim());
    let field = h.field();
    let (c2, h2) = (c.clone(), h.clone());
    let comul2: Vec<_> = (0..nh).map(|i| h.coalgebra.comul2(i)).collect();
    let oracle: BasisOracle = Arc::new(move |i, j| {
        let (ci, hi, cj, hj) = (i / nh, i % nh, j / nh, j % nh);
        let mut acc = Accumulator::new();
        for (x1, x2, x3, coef) in &comul2[hi] {
            let twisted = c2.right.apply(&s_inv[*x3], c2.left.table.get(*x1, cj));
            let cc = c2.algebra.mul_sparse(&one(field, ci), &twisted);
            if cc.is_empty() {
                continue;
            }
            acc.add_scaled(&tensor_sparse(&cc, h2.algebra.basis_product(*x2, hj), nh), coef);
        }
        acc.finish()
    });
    Ok(AlgebraHandle::new(
        field,
        vec![nc, nh],
        Provenance::Diagonal,
        tensor_labels(&c.algebra.labels, h.labels(), "⋈"),
        tensor_dense(&c.algebra.unit, &h.algebra.unit),
        oracle,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Which {
    X,
    Y,
    Z,
}

/// `C = H* ⊗ H*^op` as an `H⊗H^op`-bimodule algebra.
pub fn z_coefficient_algebra(ctx: &HopfContext) -> Result<BimoduleAlgebra> {
    build_bimodule_algebra(
        &ctx.k,
        &ctx.dual.algebra,
        &ctx.k_action_on_dual(),
        &ctx.dual.algebra.opposite(),
        &ctx.k_action_on_dual_op(),
    )
}

/// X, Y or Z over `H`. Y and Z come from the generic two-sided and diagonal
/// builders; X from its own product formula.
pub fn build_xyz(ctx: &Arc<HopfContext>, which: Which) -> Result<AlgebraHandle> {
    Ok(match which {
        Which::X => x_algebra(ctx),
        Which::Y => two_sided_crossed(
            &ctx.dual.algebra,
            &ctx.k,
            &ctx.dual.algebra.opposite(),
            &ctx.k_action_on_dual(),
            &ctx.k_action_on_dual_op(),
        )?
        .with_provenance(Provenance::Y),
        Which::Z => diagonal_crossed(&z_coefficient_algebra(ctx)?, &ctx.k)?.with_provenance(Provenance::Z),
    })
}

fn dual_labels(ctx: &HopfContext) -> Vec<String> {
    ctx.dual.labels().to_vec()
}

fn k_labels(ctx: &HopfContext) -> Vec<String> {
    ctx.k.labels().to_vec()
}

/// `X = (H^op ⊗ H) ⊗̲ (H* ⊗ H*^op)`, basis index `((g·n + h)·n + p)·n + q`:
/// `[(g⊗h)⊗̲(p⊗q)][(g'⊗h')⊗̲(p'⊗q')] =
///  Σ (g'2 g ⊗ h h'2) ⊗̲ ((S⁻¹(h'1)⇀p↼S(g'1)) p' ⊗ q' (S(h'3)⇀q↼S⁻¹(g'3)))`,
/// products on the right taken in `H` and `H*`.
pub fn x_algebra(ctx: &Arc<HopfContext>) -> AlgebraHandle {
    let n = ctx.n();
    let field = ctx.field();
    let c = ctx.clone();
    let oracle: BasisOracle = Arc::new(move |i, j| {
        let (g, h, p, q) = split4(i, n);
        let (g2, h2, p2, q2) = split4(j, n);
        let mut acc = Accumulator::new();
        for (ga, gb, gc, x) in c.comul2(g2) {
            for (ha, hb, hc, y) in c.comul2(h2) {
                let gg = c.h.algebra.basis_product(*gb, g);
                let hh = c.h.algebra.basis_product(h, *hb);
                let left = c.mul_dual(&c.hit(c.s_inv(*ha), &c.basis(p), c.s(*ga)), &c.basis(p2));
                if left.is_empty() || gg.is_empty() || hh.is_empty() {
                    continue;
                }
                let right = c.mul_dual(&c.basis(q2), &c.hit(c.s(*hc), &c.basis(q), c.s_inv(*gc)));
                let gh = tensor_sparse(gg, hh, n);
                acc.add_scaled(&tensor3(&gh, &left, &right, n, n), &(x * y));
            }
        }
        acc.finish()
    });
    let hop_h = tensor_labels(ctx.h.labels(), ctx.h.labels(), "⊗");
    let pq = tensor_labels(&dual_labels(ctx), &dual_labels(ctx), "⊗");
    let labels = tensor_labels(&hop_h, &pq, "⊗̲");
    let unit = tensor_dense(&tensor_dense(&ctx.h.algebra.unit, &ctx.h.algebra.unit), &tensor_dense(&ctx.dual.algebra.unit, &ctx.dual.algebra.unit));
    AlgebraHandle::new(field, vec![n, n, n, n], Provenance::X, labels, unit, oracle)
}

/// Y from its expanded product formula:
/// `(p#(h⊗g)#q)(p'#(h'⊗g')#q') = Σ p(h1⇀p'↼g1) # (h2h'1 ⊗ g'1g2) # q'(S(h'2)⇀q↼S⁻¹(g'2))`.
pub fn y_direct(ctx: &Arc<HopfContext>) -> AlgebraHandle {
    let n = ctx.n();
    let field = ctx.field();
    let c = ctx.clone();
    let oracle: BasisOracle = Arc::new(move |i, j| {
        let (p, h, g, q) = split4(i, n);
        let (p2, h2, g2, q2) = split4(j, n);
        let mut acc = Accumulator::new();
        for (h_1, h_2, a) in c.comul(h) {
            for (g_1, g_2, b) in c.comul(g) {
                let first = c.mul_dual(&c.basis(p), c.hit_basis(*h_1, p2, *g_1));
                if first.is_empty() {
                    continue;
                }
                for (k_1, k_2, d) in c.comul(h2) {
                    for (l_1, l_2, e) in c.comul(g2) {
                        let hh = c.h.algebra.basis_product(*h_2, *k_1);
                        let gg = c.h.algebra.basis_product(*l_1, *g_2);
                        let last = c.mul_dual(&c.basis(q2), &c.hit(c.s(*k_2), &c.basis(q), c.s_inv(*l_2)));
                        let mid = tensor_sparse(hh, gg, n);
                        acc.add_scaled(&tensor3(&first, &mid, &last, n * n, n), &(&(a * b) * &(d * e)));
                    }
                }
            }
        }
        acc.finish()
    });
    let labels = tensor_labels(&tensor_labels(&dual_labels(ctx), &k_labels(ctx), "#"), &dual_labels(ctx), "#");
    let unit = tensor_dense(&tensor_dense(&ctx.dual.algebra.unit, &ctx.k.algebra.unit), &ctx.dual.algebra.unit);
    AlgebraHandle::new(field, vec![n, n * n, n], Provenance::Y, labels, unit, oracle)
}

/// Z from its expanded product formula:
/// `((p⊗q)⋈(h⊗g))((p'⊗q')⋈(h'⊗g')) = Σ (p(h1⇀p'↼g1) ⊗ (h3⇀q'↼g3)q) ⋈ (h2h' ⊗ g'g2)`.
pub fn z_direct(ctx: &Arc<HopfContext>) -> AlgebraHandle {
    let n = ctx.n();
    let field = ctx.field();
    let c = ctx.clone();
    let oracle: BasisOracle = Arc::new(move |i, j| {
        let (p, q, h, g) = split4(i, n);
        let (p2, q2, h2, g2) = split4(j, n);
        let mut acc = Accumulator::new();
        for (h_1, h_2, h_3, a) in c.comul2(h) {
            for (g_1, g_2, g_3, b) in c.comul2(g) {
                let first = c.mul_dual(&c.basis(p), c.hit_basis(*h_1, p2, *g_1));
                if first.is_empty() {
                    continue;
                }
                let second = c.mul_dual(c.hit_basis(*h_3, q2, *g_3), &c.basis(q));
                let hh = c.h.algebra.basis_product(*h_2, h2);
                let gg = c.h.algebra.basis_product(g2, *g_2);
                let pq = tensor_sparse(&first, &second, n);
                acc.add_scaled(&tensor3(&pq, hh, gg, n, n), &(a * b));
            }
        }
        acc.finish()
    });
    let labels = tensor_labels(&tensor_labels(&dual_labels(ctx), &dual_labels(ctx), "⊗"), &k_labels(ctx), "⋈");
    let unit = tensor_dense(&tensor_dense(&ctx.dual.algebra.unit, &ctx.dual.algebra.unit), &ctx.k.algebra.unit);
    AlgebraHandle::new(field, vec![n * n, n * n], Provenance::Z, labels, unit, oracle)
}

/// Splits `((a·n + b)·n + c)·n + d`.
pub fn split4(i: usize, n: usize) -> (usize, usize, usize, usize) {
    (i / (n * n * n), (i / (n * n)) % n, (i / n) % n, i % n)
}

pub fn join4(a: usize, b: usize, c: usize, d: usize, n: usize) -> usize {
    ((a * n + b) * n + c) * n + d
}
