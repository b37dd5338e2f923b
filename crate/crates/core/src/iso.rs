//! The isomorphisms φ: X → Y, α: Y → Z, β: X → Z, the generic
//! f: A#H#B → (A⊗B)⋈H, their inverses, and their certification.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::actions::{ActionData, HopfContext};
use crate::algebra::{compare_sparse, for_each_instance, tensor_sparse, Algebra, AlgebraData, HopfAlgebraData};
use crate::check::{CheckMode, CheckReport};
use crate::crossed::{join4, split4, AlgebraHandle, Which};
use crate::error::{Error, Result};
use crate::linalg::{Accumulator, LinearMap, SparseVec};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IsoKind {
    Phi,
    PhiInv,
    Alpha,
    AlphaInv,
    Beta,
    BetaInv,
    FMap,
    FMapInv,
}

impl IsoKind {
    pub const ALL: [IsoKind; 8] = [
        IsoKind::Phi,
        IsoKind::PhiInv,
        IsoKind::Alpha,
        IsoKind::AlphaInv,
        IsoKind::Beta,
        IsoKind::BetaInv,
        IsoKind::FMap,
        IsoKind::FMapInv,
    ];

    /// Source and target; f goes from the two-sided product Y to the diagonal one Z.
    pub fn endpoints(self) -> (Which, Which) {
        match self {
            IsoKind::Phi => (Which::X, Which::Y),
            IsoKind::PhiInv => (Which::Y, Which::X),
            IsoKind::Alpha | IsoKind::FMap => (Which::Y, Which::Z),
            IsoKind::AlphaInv | IsoKind::FMapInv => (Which::Z, Which::Y),
            IsoKind::Beta => (Which::X, Which::Z),
            IsoKind::BetaInv => (Which::Z, Which::X),
        }
    }

    pub fn inverse(self) -> IsoKind {
        match self {
            IsoKind::Phi => IsoKind::PhiInv,
            IsoKind::PhiInv => IsoKind::Phi,
            IsoKind::Alpha => IsoKind::AlphaInv,
            IsoKind::AlphaInv => IsoKind::Alpha,
            IsoKind::Beta => IsoKind::BetaInv,
            IsoKind::BetaInv => IsoKind::Beta,
            IsoKind::FMap => IsoKind::FMapInv,
            IsoKind::FMapInv => IsoKind::FMap,
        }
    }
}

impl fmt::Display for IsoKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IsoKind::Phi => "phi",
            IsoKind::PhiInv => "phi_inv",
            IsoKind::Alpha => "alpha",
            IsoKind::AlphaInv => "alpha_inv",
            IsoKind::Beta => "beta",
            IsoKind::BetaInv => "beta_inv",
            IsoKind::FMap => "f",
            IsoKind::FMapInv => "f_inv",
        };
        f.write_str(s)
    }
}

impl FromStr for IsoKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IsoKind::ALL
            .into_iter()
            .find(|k| k.to_string() == s || (s == "f_map" && *k == IsoKind::FMap) || (s == "f_map_inv" && *k == IsoKind::FMapInv))
            .ok_or_else(|| Error::Parse(format!("unknown isomorphism kind '{s}'")))
    }
}

/// Matrix whose column `j` is `col(j)`, built in parallel.
pub fn map_from_columns<F>(field: FieldSpec, dst_dim: usize, src_dim: usize, col: F) -> LinearMap
where
    F: Fn(usize) -> SparseVec + Sync + Send,
{
    let cols: Vec<SparseVec> = (0..src_dim).into_par_iter().map(col).collect();
    LinearMap::from_columns(field, dst_dim, &cols).expect("indices in range")
}

/// The matrix of one of the displayed maps on the full basis of its source.
pub fn build_iso(kind: IsoKind, ctx: &HopfContext) -> Result<LinearMap> {
    let n = ctx.n();
    let d = n * n * n * n;
    let field = ctx.field();
    let c = ctx;
    Ok(match kind {
        // (g⊗h)⊗̲(p⊗q) ↦ Σ (h1⇀p↼g1) # (h2⊗g2) # q
        IsoKind::Phi => map_from_columns(field, d, d, |j| {
            let (g, h, p, q) = split4(j, n);
            let mut acc = Accumulator::new();
            for (h1, h2, a) in c.comul(h) {
                for (g1, g2, b) in c.comul(g) {
                    for (p2, e) in c.hit_basis(*h1, p, *g1) {
                        acc.add(join4(*p2, *h2, *g2, q, n), &(a * b) * e);
                    }
                }
            }
            acc.finish()
        }),
        // p#(h⊗g)#q ↦ Σ (g2⊗h2) ⊗̲ (S⁻¹(h1)⇀p↼S(g1) ⊗ q)
        IsoKind::PhiInv => map_from_columns(field, d, d, |j| {
            let (p, h, g, q) = split4(j, n);
            let mut acc = Accumulator::new();
            for (h1, h2, a) in c.comul(h) {
                for (g1, g2, b) in c.comul(g) {
                    for (p2, e) in c.hit(c.s_inv(*h1), &c.basis(p), c.s(*g1)) {
                        acc.add(join4(*g2, *h2, p2, q, n), &(a * b) * &e);
                    }
                }
            }
            acc.finish()
        }),
        // p#(h⊗g)#q ↦ Σ (p ⊗ h2⇀q↼g2) ⋈ (h1⊗g1)
        IsoKind::Alpha => map_from_columns(field, d, d, |j| {
            let (p, h, g, q) = split4(j, n);
            let mut acc = Accumulator::new();
            for (h1, h2, a) in c.comul(h) {
                for (g1, g2, b) in c.comul(g) {
                    for (q2, e) in c.hit_basis(*h2, q, *g2) {
                        acc.add(join4(p, *q2, *h1, *g1, n), &(a * b) * e);
                    }
                }
            }
            acc.finish()
        }),
        // (p⊗q)⋈(h⊗g) ↦ Σ p # (h1⊗g1) # (S(h2)⇀q↼S⁻¹(g2))
        IsoKind::AlphaInv => map_from_columns(field, d, d, |j| {
            let (p, q, h, g) = split4(j, n);
            let mut acc = Accumulator::new();
            for (h1, h2, a) in c.comul(h) {
                for (g1, g2, b) in c.comul(g) {
                    for (q2, e) in c.hit(c.s(*h2), &c.basis(q), c.s_inv(*g2)) {
                        acc.add(join4(p, *h1, *g1, q2, n), &(a * b) * &e);
                    }
                }
            }
            acc.finish()
        }),
        // (g⊗h)⊗̲(p⊗q) ↦ Σ (h1⇀p↼g1 ⊗ h3⇀q↼g3) ⋈ (h2⊗g2)
        IsoKind::Beta => map_from_columns(field, d, d, |j| {
            let (g, h, p, q) = split4(j, n);
            let mut acc = Accumulator::new();
            for (h1, h2, h3, a) in c.comul2(h) {
                for (g1, g2, g3, b) in c.comul2(g) {
                    let ab = a * b;
                    for (p2, e) in c.hit_basis(*h1, p, *g1) {
                        for (q2, f) in c.hit_basis(*h3, q, *g3) {
                            acc.add(join4(*p2, *q2, *h2, *g2, n), &(&ab * e) * f);
                        }
                    }
                }
            }
            acc.finish()
        }),
        // (p⊗q)⋈(h⊗g) ↦ Σ (g2⊗h2) ⊗̲ (S⁻¹(h1)⇀p↼S(g1) ⊗ S(h3)⇀q↼S⁻¹(g3))
        IsoKind::BetaInv => map_from_columns(field, d, d, |j| {
            let (p, q, h, g) = split4(j, n);
            let mut acc = Accumulator::new();
            for (h1, h2, h3, a) in c.comul2(h) {
                for (g1, g2, g3, b) in c.comul2(g) {
                    let ab = a * b;
                    let pp = c.hit(c.s_inv(*h1), &c.basis(p), c.s(*g1));
                    let qq = c.hit(c.s(*h3), &c.basis(q), c.s_inv(*g3));
                    for (p2, e) in &pp {
                        for (q2, f) in &qq {
                            acc.add(join4(*g2, *h2, *p2, *q2, n), &(&ab * e) * f);
                        }
                    }
                }
            }
            acc.finish()
        }),
        IsoKind::FMap => f_map(&dual_triple(ctx))?,
        IsoKind::FMapInv => f_map_inv(&dual_triple(ctx))?,
    })
}

/// `A # K # B` data for a two-sided crossed product and the matching
/// diagonal crossed product `(A⊗B) ⋈ K`.
#[derive(Clone, Debug)]
pub struct CrossedTriple {
    pub a: AlgebraData,
    pub k: HopfAlgebraData,
    pub b: AlgebraData,
    pub left: ActionData,
    pub right: ActionData,
}

/// `(H*, H⊗H^op, H*^op)` with the actions used for Y and Z.
pub fn dual_triple(ctx: &HopfContext) -> CrossedTriple {
    CrossedTriple {
        a: ctx.dual.algebra.clone(),
        k: ctx.k.clone(),
        b: ctx.dual.algebra.opposite(),
        left: ctx.k_action_on_dual(),
        right: ctx.k_action_on_dual_op(),
    }
}

/// `f(a#k#b) = Σ (a ⊗ b·S⁻¹(k2)) ⋈ k1`.
pub fn f_map(t: &CrossedTriple) -> Result<LinearMap> {
    let (na, nk, nb) = (t.a.dim(), t.k.dim(), t.b.dim());
    let s_inv = crate::algebra::antipode_inverse(&t.k)?.columns();
    let d = na * nk * nb;
    let one = t.k.field().one();
    Ok(map_from_columns(t.k.field(), d, d, |j| {
        let (a, k, b) = (j / (nk * nb), (j / nb) % nk, j % nb);
        let mut acc = Accumulator::new();
        for (k1, k2, c) in &t.k.coalgebra.comult[k] {
            let bb = t.right.apply(&s_inv[*k2], &[(b, one.clone())]);
            for (b2, e) in bb {
                acc.add((a * nb + b2) * nk + k1, c * &e);
            }
        }
        acc.finish()
    }))
}

/// `f⁻¹((a⊗b)⋈k) = Σ a # k1 # b·k2`.
pub fn f_map_inv(t: &CrossedTriple) -> Result<LinearMap> {
    let (na, nk, nb) = (t.a.dim(), t.k.dim(), t.b.dim());
    let d = na * nk * nb;
    Ok(map_from_columns(t.k.field(), d, d, |j| {
        let (a, b, k) = (j / (nb * nk), (j / nk) % nb, j % nk);
        let mut acc = Accumulator::new();
        for (k1, k2, c) in &t.k.coalgebra.comult[k] {
            for (b2, e) in t.right.table.get(*k2, b) {
                acc.add((a * nk + k1) * nb + b2, c * e);
            }
        }
        acc.finish()
    }))
}

/// `f(a#k#b) = ((a⊗1)⋈k)((1⊗b)⋈1)` and `f⁻¹((a⊗b)⋈k) = (1#1#b)(a#k#1)`,
/// computed with the products of the given handles.
pub fn f_maps_by_products(t: &CrossedTriple, two_sided: &AlgebraHandle, diagonal: &AlgebraHandle) -> (LinearMap, LinearMap) {
    let (na, nk, nb) = (t.a.dim(), t.k.dim(), t.b.dim());
    let d = na * nk * nb;
    let field = t.k.field();
    let e = |i: usize| vec![(i, field.one())];
    let (ua, uk, ub) = (t.a.unit_sparse(), t.k.algebra.unit_sparse(), t.b.unit_sparse());
    let f = map_from_columns(field, d, d, |j| {
        let (a, k, b) = (j / (nk * nb), (j / nb) % nk, j % nb);
        let x = tensor_sparse(&tensor_sparse(&e(a), &ub, nb), &e(k), nk);
        let y = tensor_sparse(&tensor_sparse(&ua, &e(b), nb), &uk, nk);
        diagonal.mul_sparse(&x, &y)
    });
    let f_inv = map_from_columns(field, d, d, |j| {
        let (a, b, k) = (j / (nb * nk), (j / nk) % nb, j % nk);
        let x = tensor_sparse(&tensor_sparse(&ua, &uk, nk), &e(b), nb);
        let y = tensor_sparse(&tensor_sparse(&e(a), &e(k), nk), &ub, nb);
        two_sided.mul_sparse(&x, &y)
    });
    (f, f_inv)
}

/// `F(xy) = F(x)F(y)` on pairs and `F(1) = 1`.
pub fn verify_algebra_morphism<A: Algebra + ?Sized, B: Algebra + ?Sized>(
    map: &LinearMap,
    src: &A,
    dst: &B,
    mode: CheckMode,
) -> Result<CheckReport> {
    if map.src_dim != src.dim() || map.dst_dim != dst.dim() {
        return Err(Error::DimensionMismatch(format!(
            "map {}→{} between algebras of dimension {} and {}",
            map.src_dim,
            map.dst_dim,
            src.dim(),
            dst.dim()
        )));
    }
    crate::algebra::same_field(&src.field(), &dst.field())?;
    let field = src.field();
    let n = src.dim();
    let d = dst.dim();
    let cols = map.columns();
    let f = |v: &[(usize, Scalar)]| apply_columns(&cols, v);
    let mut report = for_each_instance(&field, &[n, n], mode, |w, args, report| {
        let lhs = f(&src.mul_sparse(&args[0], &args[1]));
        let rhs = dst.mul_sparse(&f(&args[0]), &f(&args[1]));
        compare_sparse(report, "multiplicative", w, &lhs, &rhs, d, &field);
    });
    compare_sparse(&mut report, "unital", &[], &f(&src.unit_sparse()), &dst.unit_sparse(), d, &field);
    Ok(report)
}

/// `M v` from the sparse columns of `M`.
pub fn apply_columns(cols: &[SparseVec], v: &[(usize, Scalar)]) -> SparseVec {
    let mut acc = Accumulator::new();
    for (j, c) in v {
        acc.add_scaled(&cols[*j], c);
    }
    acc.finish()
}

/// `m1∘m2 = id` and `m2∘m1 = id`, entrywise; witnesses are column indices.
pub fn verify_mutually_inverse(m1: &LinearMap, m2: &LinearMap) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    for (name, p) in [("m1∘m2 = id", m1.compose(m2)?), ("m2∘m1 = id", m2.compose(m1)?)] {
        if p.src_dim != p.dst_dim {
            return Err(Error::DimensionMismatch(format!("{name}: {}x{}", p.dst_dim, p.src_dim)));
        }
        for (j, col) in p.columns().iter().enumerate() {
            compare_sparse(&mut report, name, &[j], col, &vec![(j, p.field.one())], p.dst_dim, &p.field);
        }
    }
    Ok(report)
}

/// Entrywise comparison of two matrices, one instance per column.
pub fn compare_maps(report: &mut CheckReport, name: &str, lhs: &LinearMap, rhs: &LinearMap) -> Result<()> {
    if (lhs.src_dim, lhs.dst_dim) != (rhs.src_dim, rhs.dst_dim) {
        return Err(Error::DimensionMismatch(name.to_string()));
    }
    for (j, (a, b)) in lhs.columns().iter().zip(rhs.columns().iter()).enumerate() {
        compare_sparse(report, name, &[j], a, b, lhs.dst_dim, &lhs.field);
    }
    Ok(())
}

/// `β = α∘φ` and `β⁻¹ = φ⁻¹∘α⁻¹` as matrices, with β and β⁻¹ from their own formulas.
pub fn composition_identity(ctx: &HopfContext) -> Result<CheckReport> {
    let m = |k| build_iso(k, ctx);
    let mut report = CheckReport::new();
    compare_maps(&mut report, "beta = alpha∘phi", &m(IsoKind::Beta)?, &m(IsoKind::Alpha)?.compose(&m(IsoKind::Phi)?)?)?;
    compare_maps(
        &mut report,
        "beta_inv = phi_inv∘alpha_inv",
        &m(IsoKind::BetaInv)?,
        &m(IsoKind::PhiInv)?.compose(&m(IsoKind::AlphaInv)?)?,
    )?;
    Ok(report)
}

/// Outcome of certifying one isomorphism against its displayed inverse.
#[derive(Clone, Debug)]
pub struct IsoCertificate {
    pub kind: IsoKind,
    pub mode: CheckMode,
    pub map: LinearMap,
    pub morphism: CheckReport,
    pub inverse: CheckReport,
}

impl IsoCertificate {
    pub fn passed(&self) -> bool {
        self.morphism.passed() && self.inverse.passed()
    }
}

/// Builds `kind` and its inverse, checks multiplicativity and unitality of
/// `kind` between the algebras it connects, and that the two are mutually inverse.
pub fn certify(ctx: &Arc<HopfContext>, kind: IsoKind, mode: CheckMode) -> Result<IsoCertificate> {
    let (s, t) = kind.endpoints();
    let src = crate::crossed::build_xyz(ctx, s)?;
    let dst = crate::crossed::build_xyz(ctx, t)?;
    let map = build_iso(kind, ctx)?;
    let morphism = verify_algebra_morphism(&map, &src, &dst, mode)?;
    let inverse = verify_mutually_inverse(&map, &build_iso(kind.inverse(), ctx)?)?;
    Ok(IsoCertificate { kind, mode, map, morphism, inverse })
}
