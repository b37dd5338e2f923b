//! Hopf bimodules over `H*`, the actions of X, Y, Z and the smash products
//! they induce, and the module correspondences between them.
//!
//! A Hopf bimodule `M` carries a left and a right `H*`-action, a left and a
//! right `H*`-coaction (`λ(m) = Σ m(-1) ⊗ m(0)`, `ρ(m) = Σ m(0) ⊗ m(1)`), and
//! satisfies: both actions form a bimodule, both coactions a bicomodule, and
//!
//! ```text
//! λ(p·m) = Σ p1 m(-1) ⊗ p2·m(0)        λ(m·q) = Σ m(-1) q1 ⊗ m(0)·q2
//! ρ(p·m) = Σ p1·m(0) ⊗ p2 m(1)         ρ(m·q) = Σ m(0)·q1 ⊗ m(1) q2
//! ```

use std::sync::Arc;

use rayon::prelude::*;

use crate::actions::{
    bicoaction, bicomodule_action_unchecked, check_bicomodule, check_module, require, ActionData, BimoduleAlgebra,
    CoactionData, HopfContext, Side,
};
use crate::algebra::{compare_sparse, for_each_instance, tensor_sparse, Algebra, CoalgebraData, HopfAlgebraData, StructureTable};
use crate::check::{CheckMode, CheckReport};
use crate::crossed::{build_xyz, split4, AlgebraHandle, Which};
use crate::error::{Error, Result};
use crate::iso::{apply_columns, build_iso, CrossedTriple, IsoKind};
use crate::linalg::{Accumulator, SparseVec};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfBimoduleData {
    pub left_act: ActionData,
    pub right_act: ActionData,
    pub left_co: CoactionData,
    pub right_co: CoactionData,
}

impl HopfBimoduleData {
    pub fn new(left_act: ActionData, right_act: ActionData, left_co: CoactionData, right_co: CoactionData) -> Result<Self> {
        if left_act.side != Side::Left || right_act.side != Side::Right || left_co.side != Side::Left || right_co.side != Side::Right {
            return Err(Error::InvalidParameter("Hopf bimodule needs left/right actions and coactions".into()));
        }
        let d = left_act.space_dim();
        if [right_act.space_dim(), left_co.space_dim, right_co.space_dim].iter().any(|&x| x != d) {
            return Err(Error::DimensionMismatch("Hopf bimodule pieces act on different spaces".into()));
        }
        Ok(HopfBimoduleData { left_act, right_act, left_co, right_co })
    }

    pub fn dim(&self) -> usize {
        self.left_act.space_dim()
    }

    pub fn field(&self) -> FieldSpec {
        self.left_act.field
    }

    /// Left `H⊗H^op`-action `(h⊗g)·m = Σ m(-1)(g) m(1)(h) m(0)`.
    pub fn k_action(&self, n: usize) -> ActionData {
        bicomodule_action_unchecked(&self.left_co, &self.right_co, n)
    }

    /// Left action of `H*^op` through `q·m = m·q`.
    pub fn b_action(&self) -> ActionData {
        self.right_act.flip_side()
    }
}

fn check_dims(h: &HopfAlgebraData, m: &HopfBimoduleData) -> Result<()> {
    let n = h.dim();
    if m.left_act.actor_dim() != n || m.right_act.actor_dim() != n || m.left_co.coalgebra_dim != n || m.right_co.coalgebra_dim != n {
        return Err(Error::DimensionMismatch(format!("Hopf bimodule data does not match dim H = {n}")));
    }
    if m.field() != h.field() {
        return Err(Error::FieldMismatch(m.field().to_string(), h.field().to_string()));
    }
    Ok(())
}

/// Bimodule, bicomodule and the four compatibility axioms on basis elements.
pub fn check_hopf_bimodule(m: &HopfBimoduleData, h: &HopfAlgebraData) -> Result<CheckReport> {
    check_dims(h, m)?;
    let dual = crate::algebra::dual_unchecked(h);
    let mode = CheckMode::Exhaustive;
    let (n, d) = (h.dim(), m.dim());
    let field = h.field();
    let mut report = check_module(&dual.algebra, &m.left_act, mode)?;
    report.merge(check_module(&dual.algebra, &m.right_act, mode)?);
    report.merge(for_each_instance(&field, &[n, d, n], mode, |w, args, report| {
        let (p, x, q) = (&args[0], &args[1], &args[2]);
        let lhs = m.right_act.apply(q, &m.left_act.apply(p, x));
        let rhs = m.left_act.apply(p, &m.right_act.apply(q, x));
        compare_sparse(report, "bimodule", w, &lhs, &rhs, d, &field);
    }));
    report.merge(check_bicomodule(&m.left_co, &m.right_co, &dual.coalgebra, mode)?);
    report.merge(for_each_instance(&field, &[n, d], mode, |w, args, report| {
        compatibility(report, w, m, &dual.algebra, &dual.coalgebra, &args[0], &args[1]);
    }));
    Ok(report)
}

fn compatibility(
    report: &mut CheckReport,
    w: &[usize],
    m: &HopfBimoduleData,
    dual: &crate::algebra::AlgebraData,
    co: &CoalgebraData,
    p: &SparseVec,
    x: &SparseVec,
) {
    let (n, d) = (co.dim(), m.dim());
    let field = co.field;
    let lam = &m.left_co;
    let rho = &m.right_co;
    let e = |i: usize| vec![(i, field.one())];
    let dp = co.comul_sparse(p);
    // left-leg index a·d + k, right-leg index k·n + b
    let mut rhs = [Accumulator::new(), Accumulator::new(), Accumulator::new(), Accumulator::new()];
    for (ij, c) in &dp {
        let (p1, p2) = (e(ij / n), e(ij % n));
        for (mi, xc) in x {
            let s = c * xc;
            for (a, k, t) in &lam.terms[*mi] {
                let st = &s * t;
                // λ(p·m) = Σ p1 m(-1) ⊗ p2·m(0)
                let left = dual.mul_sparse(&p1, &e(*a));
                let act = m.left_act.apply(&p2, &e(*k));
                rhs[0].add_scaled(&tensor_sparse(&left, &act, d), &st);
                // λ(m·q) = Σ m(-1) q1 ⊗ m(0)·q2
                let left = dual.mul_sparse(&e(*a), &p1);
                let act = m.right_act.apply(&p2, &e(*k));
                rhs[1].add_scaled(&tensor_sparse(&left, &act, d), &st);
            }
            for (b, k, t) in &rho.terms[*mi] {
                let st = &s * t;
                // ρ(p·m) = Σ p1·m(0) ⊗ p2 m(1)
                let act = m.left_act.apply(&p1, &e(*k));
                let right = dual.mul_sparse(&p2, &e(*b));
                rhs[2].add_scaled(&tensor_sparse(&act, &right, n), &st);
                // ρ(m·q) = Σ m(0)·q1 ⊗ m(1) q2
                let act = m.right_act.apply(&p1, &e(*k));
                let right = dual.mul_sparse(&e(*b), &p2);
                rhs[3].add_scaled(&tensor_sparse(&act, &right, n), &st);
            }
        }
    }
    let lhs = [
        lam.apply(&m.left_act.apply(p, x)),
        lam.apply(&m.right_act.apply(p, x)),
        rho.apply(&m.left_act.apply(p, x)),
        rho.apply(&m.right_act.apply(p, x)),
    ];
    let names = [
        "left coaction of left action",
        "left coaction of right action",
        "right coaction of left action",
        "right coaction of right action",
    ];
    for ((name, l), r) in names.iter().zip(lhs.iter()).zip(rhs) {
        compare_sparse(report, name, w, l, &r.finish(), n * d, &field);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleKind {
    Regular,
    /// `H* ⊗ V ⊗ H*` with `dim V` given.
    Free(usize),
}

impl std::str::FromStr for ExampleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "regular" {
            return Ok(ExampleKind::Regular);
        }
        match s.strip_prefix("free:").map(str::parse::<usize>) {
            Some(Ok(v)) if v > 0 => Ok(ExampleKind::Free(v)),
            _ => Err(Error::Parse(format!("unknown module '{s}' (expected regular or free:N)"))),
        }
    }
}

impl std::fmt::Display for ExampleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExampleKind::Regular => write!(f, "regular"),
            ExampleKind::Free(v) => write!(f, "free:{v}"),
        }
    }
}

/// `regular`: `H*` with multiplication actions and `Δ` as both coactions.
/// `free(V)`: `H* ⊗ V ⊗ H*` (index `(x·dim V + v)·n + y`) with `p·(x⊗v⊗y) = px⊗v⊗y`,
/// `(x⊗v⊗y)·q = x⊗v⊗yq`, `λ(x⊗v⊗y) = Σ x1y1 ⊗ (x2⊗v⊗y2)` and
/// `ρ(x⊗v⊗y) = Σ (x1⊗v⊗y1) ⊗ x2y2`.
pub fn example_bimodule(h: &HopfAlgebraData, kind: ExampleKind) -> Result<HopfBimoduleData> {
    let dual = crate::algebra::dual_hopf(h)?;
    let n = h.dim();
    let field = h.field();
    let mult = &dual.algebra.mult;
    match kind {
        ExampleKind::Regular => {
            let left = ActionData::new(Side::Left, field, mult.clone())?;
            let right_triples = mult.triples().map(|(i, j, k, c)| (j, i, k, c.clone()));
            let right = ActionData::new(Side::Right, field, StructureTable::from_triples(n, n, n, right_triples)?)?;
            let comult = &dual.coalgebra.comult;
            let lt = (0..n).flat_map(|m| comult[m].iter().map(move |(a, b, c)| (m, *a, *b, c.clone())));
            let rt = (0..n).flat_map(|m| comult[m].iter().map(move |(a, b, c)| (m, *b, *a, c.clone())));
            HopfBimoduleData::new(
                left,
                right,
                CoactionData::new(Side::Left, field, n, n, lt)?,
                CoactionData::new(Side::Right, field, n, n, rt)?,
            )
        }
        ExampleKind::Free(v) => {
            if v == 0 {
                return Err(Error::InvalidParameter("free bimodule needs dim V ≥ 1".into()));
            }
            let d = n * v * n;
            let idx = |x: usize, i: usize, y: usize| (x * v + i) * n + y;
            let mut lt = Vec::new();
            let mut rt = Vec::new();
            let mut lco = Vec::new();
            let mut rco = Vec::new();
            for x in 0..n {
                for i in 0..v {
                    for y in 0..n {
                        let m = idx(x, i, y);
                        for p in 0..n {
                            for (k, c) in mult.get(p, x) {
                                lt.push((p, m, idx(*k, i, y), c.clone()));
                            }
                            for (k, c) in mult.get(y, p) {
                                rt.push((p, m, idx(x, i, *k), c.clone()));
                            }
                        }
                        for (x1, x2, c) in &dual.coalgebra.comult[x] {
                            for (y1, y2, e) in &dual.coalgebra.comult[y] {
                                let ce = c * e;
                                for (a, f) in mult.get(*x1, *y1) {
                                    lco.push((m, *a, idx(*x2, i, *y2), &ce * f));
                                }
                                for (b, f) in mult.get(*x2, *y2) {
                                    rco.push((m, *b, idx(*x1, i, *y1), &ce * f));
                                }
                            }
                        }
                    }
                }
            }
            HopfBimoduleData::new(
                ActionData::new(Side::Left, field, StructureTable::from_triples(n, d, d, lt)?)?,
                ActionData::new(Side::Right, field, StructureTable::from_triples(n, d, d, rt)?)?,
                CoactionData::new(Side::Left, field, n, d, lco)?,
                CoactionData::new(Side::Right, field, n, d, rco)?,
            )
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActingAlgebra {
    X,
    Y,
    Z,
    /// `H* # (H⊗H^op)`, basis index `p·n² + k`.
    LeftSmash,
    /// `(H⊗H^op) # H*^op`, basis index `k·n + q`.
    RightSmash,
}

/// Action table built in parallel from `f(actor basis, space basis)`.
fn action_from_fn<F>(side: Side, field: FieldSpec, actor_dim: usize, space_dim: usize, f: F) -> ActionData
where
    F: Fn(usize, usize) -> SparseVec + Sync + Send,
{
    let entries: Vec<SparseVec> =
        (0..actor_dim * space_dim).into_par_iter().map(|ij| f(ij / space_dim, ij % space_dim)).collect();
    ActionData { side, field, table: StructureTable::from_entries(actor_dim, space_dim, space_dim, entries) }
}

/// The action of X, Y, Z or of the smash products on a Hopf bimodule:
///
/// ```text
/// X: ((g⊗h)⊗̲(p⊗q))·m = Σ m(-1)(g2) m(1)(h2) (h1⇀p↼g1)·m(0)·(h3⇀q↼g3)
/// Y: (p#(h⊗g)#q)·m    = Σ m(-1)(g1) m(1)(h1) p·m(0)·(h2⇀q↼g2)
/// Z: ((p⊗q)⋈(h⊗g))·m  = Σ m(-1)(g) m(1)(h) p·m(0)·q
/// H*#(H⊗H^op): (p#k)·m = p·(k·m)      (H⊗H^op)#H*^op: (k#q)·m = k·(m·q)
/// ```
pub fn derived_action(m: &HopfBimoduleData, ctx: &HopfContext, which: ActingAlgebra) -> Result<ActionData> {
    require(check_hopf_bimodule(m, &ctx.h)?, "Hopf bimodule")?;
    Ok(derived_action_unchecked(m, ctx, which))
}

fn derived_action_unchecked(m: &HopfBimoduleData, ctx: &HopfContext, which: ActingAlgebra) -> ActionData {
    let n = ctx.n();
    let d = m.dim();
    let field = ctx.field();
    let bico: Vec<Vec<(usize, usize, usize, Scalar)>> = (0..d).map(|j| bicoaction(&m.left_co, &m.right_co, j)).collect();
    let e = |i: usize| vec![(i, field.one())];
    // p·m_k·q for sparse q
    let sandwich = |p: usize, k: usize, q: &SparseVec| m.left_act.apply(&e(p), &m.right_act.apply(q, &e(k)));
    match which {
        ActingAlgebra::Z => action_from_fn(Side::Left, field, n * n * n * n, d, |i, j| {
            let (p, q, h, g) = split4(i, n);
            let mut acc = Accumulator::new();
            for (a, k, b, c) in &bico[j] {
                if *a == g && *b == h {
                    acc.add_scaled(&sandwich(p, *k, &e(q)), c);
                }
            }
            acc.finish()
        }),
        ActingAlgebra::Y => action_from_fn(Side::Left, field, n * n * n * n, d, |i, j| {
            let (p, h, g, q) = split4(i, n);
            let mut acc = Accumulator::new();
            for (h1, h2, x) in ctx.comul(h) {
                for (g1, g2, y) in ctx.comul(g) {
                    let qq = ctx.hit_basis(*h2, q, *g2);
                    for (a, k, b, c) in &bico[j] {
                        if a == g1 && b == h1 {
                            acc.add_scaled(&sandwich(p, *k, qq), &(&(x * y) * c));
                        }
                    }
                }
            }
            acc.finish()
        }),
        ActingAlgebra::X => action_from_fn(Side::Left, field, n * n * n * n, d, |i, j| {
            let (g, h, p, q) = split4(i, n);
            let mut acc = Accumulator::new();
            for (h1, h2, h3, x) in ctx.comul2(h) {
                for (g1, g2, g3, y) in ctx.comul2(g) {
                    let pp = ctx.hit_basis(*h1, p, *g1);
                    let qq = ctx.hit_basis(*h3, q, *g3);
                    for (a, k, b, c) in &bico[j] {
                        if a == g2 && b == h2 {
                            let inner = m.right_act.apply(qq, &e(*k));
                            acc.add_scaled(&m.left_act.apply(pp, &inner), &(&(x * y) * c));
                        }
                    }
                }
            }
            acc.finish()
        }),
        ActingAlgebra::LeftSmash => {
            let k_act = m.k_action(n);
            action_from_fn(Side::Left, field, n * n * n, d, |i, j| {
                m.left_act.apply(&e(i / (n * n)), k_act.table.get(i % (n * n), j))
            })
        }
        ActingAlgebra::RightSmash => {
            let k_act = m.k_action(n);
            action_from_fn(Side::Left, field, n * n * n, d, |i, j| {
                k_act.apply(&e(i / n), m.right_act.table.get(i % n, j))
            })
        }
    }
}

/// The algebra a derived action is a module over.
pub fn acting_algebra(ctx: &Arc<HopfContext>, which: ActingAlgebra) -> Result<AlgebraHandle> {
    match which {
        ActingAlgebra::X => build_xyz(ctx, Which::X),
        ActingAlgebra::Y => build_xyz(ctx, Which::Y),
        ActingAlgebra::Z => build_xyz(ctx, Which::Z),
        ActingAlgebra::LeftSmash => crate::crossed::left_smash(&ctx.dual.algebra, &ctx.k, &ctx.k_action_on_dual()),
        ActingAlgebra::RightSmash => {
            crate::crossed::right_smash(&ctx.k, &ctx.dual.algebra.opposite(), &ctx.k_action_on_dual_op())
        }
    }
}

/// `act_X(x, m) = act_Y(φ(x), m) = act_Z(β(x), m)`, `act_Y(y, m) = act_Z(α(y), m)`
/// and `act_Y(y, m) = act_Z(f(y), m)`, on pairs of algebra and module elements.
pub fn verify_action_correspondence(m: &HopfBimoduleData, ctx: &HopfContext, mode: CheckMode) -> Result<CheckReport> {
    require(check_hopf_bimodule(m, &ctx.h)?, "Hopf bimodule")?;
    let ax = derived_action_unchecked(m, ctx, ActingAlgebra::X);
    let ay = derived_action_unchecked(m, ctx, ActingAlgebra::Y);
    let az = derived_action_unchecked(m, ctx, ActingAlgebra::Z);
    let cols = |k| build_iso(k, ctx).map(|map| map.columns());
    let (phi, alpha, beta, f) = (cols(IsoKind::Phi)?, cols(IsoKind::Alpha)?, cols(IsoKind::Beta)?, cols(IsoKind::FMap)?);
    let n4 = ctx.n().pow(4);
    let d = m.dim();
    let field = ctx.field();
    Ok(for_each_instance(&field, &[n4, d], mode, |w, args, report| {
        let (x, v) = (&args[0], &args[1]);
        let via_x = ax.apply(x, v);
        compare_sparse(report, "X vs Y through phi", w, &via_x, &ay.apply(&apply_columns(&phi, x), v), d, &field);
        compare_sparse(report, "X vs Z through beta", w, &via_x, &az.apply(&apply_columns(&beta, x), v), d, &field);
        let via_y = ay.apply(x, v);
        compare_sparse(report, "Y vs Z through alpha", w, &via_y, &az.apply(&apply_columns(&alpha, x), v), d, &field);
        compare_sparse(report, "Y vs Z through f", w, &via_y, &az.apply(&apply_columns(&f, x), v), d, &field);
    }))
}

/// Left actions of `A`, `H` and `B` on one space.
#[derive(Clone, Debug)]
pub struct TripleModuleData {
    pub a_act: ActionData,
    pub h_act: ActionData,
    pub b_act: ActionData,
}

impl TripleModuleData {
    pub fn dim(&self) -> usize {
        self.a_act.space_dim()
    }

    /// `(a#h#b)·m = a·(h·(b·m))` on the basis of `A ⊗ H ⊗ B`.
    pub fn assembled(&self) -> ActionData {
        let (nh, nb) = (self.h_act.actor_dim(), self.b_act.actor_dim());
        let na = self.a_act.actor_dim();
        let field = self.a_act.field;
        let e = |i: usize| vec![(i, field.one())];
        action_from_fn(Side::Left, field, na * nh * nb, self.dim(), |i, j| {
            let (a, h, b) = (i / (nh * nb), (i / nb) % nh, i % nb);
            self.a_act.apply(&e(a), &self.h_act.apply(&e(h), self.b_act.table.get(b, j)))
        })
    }
}

/// `(H*, H⊗H^op, H*^op)` acting on a Hopf bimodule.
pub fn triple_from_bimodule(m: &HopfBimoduleData, ctx: &HopfContext) -> Result<TripleModuleData> {
    require(check_hopf_bimodule(m, &ctx.h)?, "Hopf bimodule")?;
    Ok(TripleModuleData { a_act: m.left_act.clone(), h_act: m.k_action(ctx.n()), b_act: m.b_action() })
}

/// Conditions (i)–(iii), their `S⁻¹` forms, the module axiom of the assembled
/// action over `A#H#B`, and recovery of the three actions from it:
///
/// ```text
/// (i)   b·(a·m) = a·(b·m)
/// (ii)  b·(h·m) = Σ h1·((b·h2)·m)      ⇔  h·(b·m) = Σ (b·S⁻¹(h2))·(h1·m)
/// (iii) h·(a·m) = Σ (h1·a)·(h2·m)      ⇔  a·(h·m) = Σ h2·((S⁻¹(h1)·a)·m)
/// ```
pub fn triple_module_roundtrip(t: &TripleModuleData, triple: &CrossedTriple, mode: CheckMode) -> Result<CheckReport> {
    let (a, k, b) = (&triple.a, &triple.k, &triple.b);
    let (na, nh, nb, d) = (a.dim(), k.dim(), b.dim(), t.dim());
    if t.a_act.actor_dim() != na || t.h_act.actor_dim() != nh || t.b_act.actor_dim() != nb {
        return Err(Error::DimensionMismatch("triple module actors".into()));
    }
    if t.h_act.space_dim() != d || t.b_act.space_dim() != d {
        return Err(Error::DimensionMismatch("triple module spaces".into()));
    }
    let field = k.field();
    let s_inv = crate::algebra::antipode_inverse(k)?.columns();
    let e = |i: usize| vec![(i, field.one())];
    let (aa, ha, ba) = (&t.a_act, &t.h_act, &t.b_act);
    let (left, right) = (&triple.left, &triple.right);
    let ex = CheckMode::Exhaustive;

    let mut report = check_module(a, aa, ex)?;
    report.merge(check_module(k, ha, ex)?);
    report.merge(check_module(b, ba, ex)?);
    report.merge(for_each_instance(&field, &[nb, na, d], ex, |w, args, r| {
        let (y, x, v) = (&args[0], &args[1], &args[2]);
        compare_sparse(r, "condition (i)", w, &ba.apply(y, &aa.apply(x, v)), &aa.apply(x, &ba.apply(y, v)), d, &field);
    }));
    report.merge(for_each_instance(&field, &[nh, nb, d], ex, |w, args, r| {
        let (h, y, v) = (args[0][0].0, &args[1], &args[2]);
        let mut ii = Accumulator::new();
        let mut ii_s = Accumulator::new();
        for (h1, h2, c) in &k.coalgebra.comult[h] {
            // Σ h1·((b·h2)·m)
            ii.add_scaled(&ha.apply(&e(*h1), &ba.apply(&right.apply(&e(*h2), y), v)), c);
            // Σ (b·S⁻¹(h2))·(h1·m)
            ii_s.add_scaled(&ba.apply(&right.apply(&s_inv[*h2], y), &ha.apply(&e(*h1), v)), c);
        }
        compare_sparse(r, "condition (ii)", w, &ba.apply(y, &ha.apply(&e(h), v)), &ii.finish(), d, &field);
        compare_sparse(r, "condition (ii) with S^-1", w, &ha.apply(&e(h), &ba.apply(y, v)), &ii_s.finish(), d, &field);
    }));
    report.merge(for_each_instance(&field, &[nh, na, d], ex, |w, args, r| {
        let (h, x, v) = (args[0][0].0, &args[1], &args[2]);
        let mut iii = Accumulator::new();
        let mut iii_s = Accumulator::new();
        for (h1, h2, c) in &k.coalgebra.comult[h] {
            // Σ (h1·a)·(h2·m)
            iii.add_scaled(&aa.apply(&left.apply(&e(*h1), x), &ha.apply(&e(*h2), v)), c);
            // Σ h2·((S⁻¹(h1)·a)·m)
            iii_s.add_scaled(&ha.apply(&e(*h2), &aa.apply(&left.apply(&s_inv[*h1], x), v)), c);
        }
        compare_sparse(r, "condition (iii)", w, &ha.apply(&e(h), &aa.apply(x, v)), &iii.finish(), d, &field);
        compare_sparse(r, "condition (iii) with S^-1", w, &aa.apply(x, &ha.apply(&e(h), v)), &iii_s.finish(), d, &field);
    }));

    let assembled = t.assembled();
    let y = crate::crossed::two_sided_crossed(a, k, b, left, right)?;
    let module = check_module(&y, &assembled, mode)?;
    report.merge(module);
    let (ua, uh, ub) = (a.unit_sparse(), k.algebra.unit_sparse(), b.unit_sparse());
    report.merge(for_each_instance(&field, &[na, d], ex, |w, args, r| {
        let x = tensor_sparse(&tensor_sparse(&args[0], &uh, nh), &ub, nb);
        compare_sparse(r, "restriction to A", w, &assembled.apply(&x, &args[1]), &aa.apply(&args[0], &args[1]), d, &field);
    }));
    report.merge(for_each_instance(&field, &[nh, d], ex, |w, args, r| {
        let x = tensor_sparse(&tensor_sparse(&ua, &args[0], nh), &ub, nb);
        compare_sparse(r, "restriction to H", w, &assembled.apply(&x, &args[1]), &ha.apply(&args[0], &args[1]), d, &field);
    }));
    report.merge(for_each_instance(&field, &[nb, d], ex, |w, args, r| {
        let x = tensor_sparse(&tensor_sparse(&ua, &uh, nh), &args[0], nb);
        compare_sparse(r, "restriction to B", w, &assembled.apply(&x, &args[1]), &ba.apply(&args[0], &args[1]), d, &field);
    }));
    Ok(report)
}

/// `h·(c·m) = Σ (h1·c·S⁻¹(h3))·(h2·m)` on basis triples, then the module axiom
/// of `(c⋈h)·m = c·(h·m)` over `C ⋈ H` (in `mode`).
pub fn diagonal_module_condition(
    c: &BimoduleAlgebra,
    h: &HopfAlgebraData,
    c_act: &ActionData,
    h_act: &ActionData,
    mode: CheckMode,
) -> Result<CheckReport> {
    let (nc, nh, d) = (c.algebra.dim(), h.dim(), c_act.space_dim());
    if c_act.actor_dim() != nc || h_act.actor_dim() != nh || h_act.space_dim() != d {
        return Err(Error::DimensionMismatch("diagonal module data".into()));
    }
    let field = h.field();
    let s_inv = crate::algebra::antipode_inverse(h)?.columns();
    let e = |i: usize| vec![(i, field.one())];
    let mut report = check_module(&c.algebra, c_act, CheckMode::Exhaustive)?;
    report.merge(check_module(h, h_act, CheckMode::Exhaustive)?);
    report.merge(for_each_instance(&field, &[nh, nc, d], CheckMode::Exhaustive, |w, args, r| {
        let (x, y, v) = (args[0][0].0, &args[1], &args[2]);
        let mut acc = Accumulator::new();
        for (h1, h2, h3, coef) in h.coalgebra.comul2(x) {
            let twisted = c.right.apply(&s_inv[h3], &c.left.apply(&e(h1), y));
            acc.add_scaled(&c_act.apply(&twisted, &h_act.apply(&e(h2), v)), &coef);
        }
        compare_sparse(r, "diagonal condition", w, &h_act.apply(&e(x), &c_act.apply(y, v)), &acc.finish(), d, &field);
    }));
    let assembled = action_from_fn(Side::Left, field, nc * nh, d, |i, j| {
        c_act.apply(&e(i / nh), h_act.table.get(i % nh, j))
    });
    let z = crate::crossed::diagonal_crossed(c, h)?;
    report.merge(check_module(&z, &assembled, mode)?);
    Ok(report)
}

/// `(p⊗q)·m = p·m·q`: the action of `C = H*⊗H*^op` on a Hopf bimodule.
pub fn coefficient_action(m: &HopfBimoduleData, n: usize) -> ActionData {
    let field = m.field();
    let e = |i: usize| vec![(i, field.one())];
    action_from_fn(Side::Left, field, n * n, m.dim(), |i, j| {
        m.left_act.apply(&e(i / n), m.right_act.table.get(i % n, j))
    })
}

/// Everything the correspondence suite reports for one module.
#[derive(Clone, Debug)]
pub struct BimoduleSuite {
    pub axioms: CheckReport,
    pub modules: Vec<(ActingAlgebra, CheckReport)>,
    pub triple: CheckReport,
    pub diagonal: CheckReport,
    pub correspondence: CheckReport,
}

impl BimoduleSuite {
    pub fn passed(&self) -> bool {
        self.axioms.passed()
            && self.modules.iter().all(|(_, r)| r.passed())
            && self.triple.passed()
            && self.diagonal.passed()
            && self.correspondence.passed()
    }
}

/// Axioms, module axioms for every derived action, the triple and diagonal
/// characterizations, and the action correspondences. Modes follow the
/// default regimes for the algebra dimension `(dim H)⁴`.
pub fn run_suite(m: &HopfBimoduleData, ctx: &Arc<HopfContext>, seed: u64) -> Result<BimoduleSuite> {
    let axioms = check_hopf_bimodule(m, &ctx.h)?;
    require(axioms.clone(), "Hopf bimodule")?;
    let n = ctx.n();
    let big = n.pow(4);
    let mut modules = Vec::new();
    for which in [ActingAlgebra::X, ActingAlgebra::Y, ActingAlgebra::Z, ActingAlgebra::LeftSmash, ActingAlgebra::RightSmash] {
        let alg = acting_algebra(ctx, which)?;
        let act = derived_action_unchecked(m, ctx, which);
        modules.push((which, check_module(&alg, &act, CheckMode::for_triples(alg.dim(), seed))?));
    }
    let triple = triple_module_roundtrip(
        &triple_from_bimodule(m, ctx)?,
        &crate::iso::dual_triple(ctx),
        CheckMode::for_triples(big, seed),
    )?;
    let c = crate::crossed::z_coefficient_algebra(ctx)?;
    let diagonal = diagonal_module_condition(&c, &ctx.k, &coefficient_action(m, n), &m.k_action(n), CheckMode::for_triples(big, seed))?;
    let correspondence = verify_action_correspondence(m, ctx, CheckMode::for_pairs(big, seed))?;
    Ok(BimoduleSuite { axioms, modules, triple, diagonal, correspondence })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog_hopf, CatalogSpec};

    fn ctx(s: &str) -> Arc<HopfContext> {
        let h = catalog_hopf(&CatalogSpec::parse(s).unwrap()).unwrap();
        Arc::new(HopfContext::new(&h).unwrap())
    }

    fn e(f: FieldSpec, i: usize) -> SparseVec {
        vec![(i, f.one())]
    }

    #[test]
    fn examples_are_hopf_bimodules() {
        for s in ["cyclic:2", "cyclic:3", "dual_cyclic:2", "sweedler4"] {
            let c = ctx(s);
            for kind in [ExampleKind::Regular, ExampleKind::Free(1), ExampleKind::Free(2)] {
                let m = example_bimodule(&c.h, kind).unwrap();
                let r = check_hopf_bimodule(&m, &c.h).unwrap();
                assert!(r.passed(), "{s} {kind}: {:?}", r.first_violation());
            }
        }
    }

    #[test]
    fn example_dimensions() {
        let c = ctx("sweedler4");
        assert_eq!(example_bimodule(&c.h, ExampleKind::Free(3)).unwrap().dim(), 48);
        assert_eq!(example_bimodule(&ctx("cyclic:2").h, ExampleKind::Regular).unwrap().dim(), 2);
        assert_eq!(example_bimodule(&c.h, ExampleKind::Free(1)).unwrap().dim(), 16);
    }

    #[test]
    fn one_sided_coaction_on_free_bimodule_is_not_hopf() {
        // coacting through the left tensorand only breaks λ(m·q) = Σ m(-1) q1 ⊗ m(0)·q2
        let c = ctx("cyclic:2");
        let n = 2;
        let good = example_bimodule(&c.h, ExampleKind::Free(1)).unwrap();
        let f = c.field();
        let mut lco = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for (x1, x2, k) in &c.dual.coalgebra.comult[x] {
                    lco.push((x * n + y, *x1, x2 * n + y, k.clone()));
                }
            }
        }
        let bad = HopfBimoduleData {
            left_co: CoactionData::new(Side::Left, f, n, n * n, lco).unwrap(),
            ..good
        };
        let r = check_hopf_bimodule(&bad, &c.h).unwrap();
        assert!(r.has_axiom("left coaction of right action"));
    }

    #[test]
    fn non_coassociative_coaction_is_caught() {
        let c = ctx("sweedler4");
        let good = example_bimodule(&c.h, ExampleKind::Regular).unwrap();
        let f = c.field();
        let mut triples: Vec<_> = good.left_co.triples().map(|(m, a, k, x)| (m, a, k, x.clone())).collect();
        triples.push((2, 1, 3, f.one()));
        let bad = HopfBimoduleData { left_co: CoactionData::new(Side::Left, f, 4, 4, triples).unwrap(), ..good };
        let r = check_hopf_bimodule(&bad, &c.h).unwrap();
        assert!(!r.passed());
        assert!(r.has_axiom("comodule coassociativity"));
        assert!(matches!(derived_action(&bad, &c, ActingAlgebra::Z), Err(Error::Unverified { .. })));
    }

    #[test]
    fn z_action_spot_values() {
        let c = ctx("cyclic:2");
        let f = c.field();
        let m = example_bimodule(&c.h, ExampleKind::Regular).unwrap();
        let z = derived_action(&m, &c, ActingAlgebra::Z).unwrap();
        let eps = vec![(0, f.one()), (1, f.one())];
        let epsilon_eps_gg = tensor_sparse(&tensor_sparse(&eps, &eps, 2), &e(f, 3), 4);
        assert_eq!(z.apply(&epsilon_eps_gg, &e(f, 1)), e(f, 1));
        let zh = build_xyz(&c, Which::Z).unwrap();
        for j in 0..2 {
            assert_eq!(z.apply(&zh.unit_sparse(), &e(f, j)), e(f, j));
        }
    }

    #[test]
    fn y_action_counit_collapse() {
        let c = ctx("sweedler4");
        let f = c.field();
        let m = example_bimodule(&c.h, ExampleKind::Free(2)).unwrap();
        let y = derived_action(&m, &c, ActingAlgebra::Y).unwrap();
        let eps = c.dual.algebra.unit_sparse();
        let uk = c.k.algebra.unit_sparse();
        for q in 0..4 {
            for j in (0..m.dim()).step_by(5) {
                let x = tensor_sparse(&tensor_sparse(&eps, &uk, 16), &e(f, q), 4);
                assert_eq!(y.apply(&x, &e(f, j)), m.right_act.apply(&e(f, q), &e(f, j)));
            }
        }
    }

    #[test]
    fn y_action_matches_assembled_triple_action() {
        for s in ["cyclic:3", "sweedler4"] {
            let c = ctx(s);
            let m = example_bimodule(&c.h, ExampleKind::Free(1)).unwrap();
            let y = derived_action(&m, &c, ActingAlgebra::Y).unwrap();
            let t = triple_from_bimodule(&m, &c).unwrap();
            assert_eq!(y, t.assembled(), "{s}");
        }
    }

    #[test]
    fn derived_actions_are_modules() {
        for s in ["cyclic:2", "sweedler4"] {
            let c = ctx(s);
            let m = example_bimodule(&c.h, ExampleKind::Regular).unwrap();
            for which in [ActingAlgebra::X, ActingAlgebra::Y, ActingAlgebra::Z, ActingAlgebra::LeftSmash, ActingAlgebra::RightSmash] {
                let alg = acting_algebra(&c, which).unwrap();
                let act = derived_action(&m, &c, which).unwrap();
                let r = check_module(&alg, &act, CheckMode::for_triples(alg.dim(), 5)).unwrap();
                assert!(r.passed(), "{s} {which:?}: {:?}", r.first_violation());
            }
        }
    }

    #[test]
    fn correspondences_cyclic2_exhaustive() {
        let c = ctx("cyclic:2");
        let m = example_bimodule(&c.h, ExampleKind::Regular).unwrap();
        let r = verify_action_correspondence(&m, &c, CheckMode::Exhaustive).unwrap();
        assert!(r.passed(), "{:?}", r.first_violation());
        assert_eq!(r.checked, 16 * 2 * 4);
    }

    #[test]
    fn correspondences_cyclic3_free1() {
        let c = ctx("cyclic:3");
        let m = example_bimodule(&c.h, ExampleKind::Free(1)).unwrap();
        assert!(verify_action_correspondence(&m, &c, CheckMode::Exhaustive).unwrap().passed());
    }

    #[test]
    fn correspondences_sweedler_random() {
        let c = ctx("sweedler4");
        let m = example_bimodule(&c.h, ExampleKind::Regular).unwrap();
        let r = verify_action_correspondence(&m, &c, CheckMode::Random { trials: 20, seed: 4 }).unwrap();
        assert!(r.passed(), "{:?}", r.first_violation());
    }

    #[test]
    fn roundtrip_from_hopf_bimodules() {
        for s in ["cyclic:2", "sweedler4"] {
            let c = ctx(s);
            for kind in [ExampleKind::Regular, ExampleKind::Free(2)] {
                let m = example_bimodule(&c.h, kind).unwrap();
                let t = triple_from_bimodule(&m, &c).unwrap();
                let r = triple_module_roundtrip(&t, &crate::iso::dual_triple(&c), CheckMode::Random { trials: 3, seed: 0 })
                    .unwrap();
                assert!(r.passed(), "{s} {kind}: {:?}", r.first_violation());
            }
        }
    }

    #[test]
    fn broken_condition_iii_is_detected() {
        let c = ctx("cyclic:2");
        let m = example_bimodule(&c.h, ExampleKind::Regular).unwrap();
        let mut t = triple_from_bimodule(&m, &c).unwrap();
        t.a_act = ActionData::trivial(Side::Left, &c.dual, m.dim());
        let r = triple_module_roundtrip(&t, &crate::iso::dual_triple(&c), CheckMode::Exhaustive).unwrap();
        assert!(r.has_axiom("condition (iii)"));
        assert!(r.has_axiom("condition (iii) with S^-1"));
        assert!(!r.has_axiom("condition (i)"));
        assert!(!r.has_axiom("condition (ii)"));
        assert!(r.has_axiom("module associativity"));
    }

    #[test]
    fn trivial_h_reduces_to_commuting_actions() {
        // H = k: (ii) and (iii) are automatic, only (i) remains
        let h = catalog_hopf(&CatalogSpec::parse("cyclic:1").unwrap()).unwrap();
        let a = catalog_hopf(&CatalogSpec::parse("cyclic:2").unwrap()).unwrap().algebra;
        let f = h.field();
        let triple = CrossedTriple {
            a: a.clone(),
            k: h.clone(),
            b: a.clone(),
            left: ActionData::trivial(Side::Left, &h, 2),
            right: ActionData::trivial(Side::Right, &h, 2),
        };
        let regular = ActionData::new(Side::Left, f, a.mult.clone()).unwrap();
        let t = TripleModuleData { a_act: regular.clone(), h_act: ActionData::trivial(Side::Left, &h, 2), b_act: regular };
        assert!(triple_module_roundtrip(&t, &triple, CheckMode::Exhaustive).unwrap().passed());
        // a non-commuting pair of actions of the sweedler algebra on itself fails (i) only
        let sw = catalog_hopf(&CatalogSpec::parse("sweedler4").unwrap()).unwrap().algebra;
        let left = ActionData::new(Side::Left, f, sw.mult.clone()).unwrap();
        let triple = CrossedTriple {
            a: sw.clone(),
            k: h.clone(),
            b: sw.clone(),
            left: ActionData::trivial(Side::Left, &h, 4),
            right: ActionData::trivial(Side::Right, &h, 4),
        };
        let t = TripleModuleData { a_act: left.clone(), h_act: ActionData::trivial(Side::Left, &h, 4), b_act: left };
        let r = triple_module_roundtrip(&t, &triple, CheckMode::Exhaustive).unwrap();
        assert!(r.has_axiom("condition (i)"));
        assert!(!r.has_axiom("condition (ii)") && !r.has_axiom("condition (iii)"));
    }

    #[test]
    fn diagonal_condition_on_examples() {
        for (s, kind) in [("cyclic:2", ExampleKind::Regular), ("cyclic:3", ExampleKind::Free(2))] {
            let c = ctx(s);
            let n = c.n();
            let m = example_bimodule(&c.h, kind).unwrap();
            let cc = crate::crossed::z_coefficient_algebra(&c).unwrap();
            let r = diagonal_module_condition(&cc, &c.k, &coefficient_action(&m, n), &m.k_action(n), CheckMode::for_triples(n.pow(4), 0))
                .unwrap();
            assert!(r.passed(), "{s}: {:?}", r.first_violation());
        }
    }

    #[test]
    fn z_action_is_assembled_diagonal_action() {
        let c = ctx("sweedler4");
        let n = 4;
        let m = example_bimodule(&c.h, ExampleKind::Regular).unwrap();
        let z = derived_action(&m, &c, ActingAlgebra::Z).unwrap();
        let ca = coefficient_action(&m, n);
        let ka = m.k_action(n);
        let f = c.field();
        for i in (0..256).step_by(3) {
            for j in 0..4 {
                let expect = ca.apply(&e(f, i / 16), ka.table.get(i % 16, j));
                assert_eq!(z.apply(&e(f, i), &e(f, j)), expect);
            }
        }
    }

    #[test]
    fn example_kind_parsing() {
        assert_eq!("regular".parse::<ExampleKind>().unwrap(), ExampleKind::Regular);
        assert_eq!("free:3".parse::<ExampleKind>().unwrap(), ExampleKind::Free(3));
        assert!("free:0".parse::<ExampleKind>().is_err());
        assert!("other".parse::<ExampleKind>().is_err());
    }

    #[test]
    fn full_suite_cyclic2() {
        let c = ctx("cyclic:2");
        let m = example_bimodule(&c.h, ExampleKind::Free(1)).unwrap();
        assert!(run_suite(&m, &c, 0).unwrap().passed());
    }
}
