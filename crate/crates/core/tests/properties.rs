//! Randomized identities on random elements, checked against values computed
//! here from raw structure constants rather than through the library checkers.

use std::sync::{Arc, OnceLock};

use hopfcross::actions::HopfContext;
use hopfcross::algebra::{dual_hopf, tensor_sparse, Algebra, HopfAlgebraData};
use hopfcross::bimodule::{derived_action, example_bimodule, ActingAlgebra, ExampleKind};
use hopfcross::catalog::{catalog_hopf, CatalogSpec};
use hopfcross::crossed::{build_xyz, AlgebraHandle, Which};
use hopfcross::format::HopfFile;
use hopfcross::iso::{apply_columns, build_iso, IsoKind};
use hopfcross::linalg::{Accumulator, SparseVec};
use hopfcross::scalar::FieldSpec;
use proptest::prelude::*;

const SPECS: [&str; 5] = ["cyclic:2", "cyclic:3", "dual_cyclic:2", "sweedler4", "taft:2:5"];

fn hopf(s: &str) -> HopfAlgebraData {
    catalog_hopf(&CatalogSpec::parse(s).unwrap()).unwrap()
}

struct Fixture {
    ctx: Arc<HopfContext>,
    x: AlgebraHandle,
    y: AlgebraHandle,
    z: AlgebraHandle,
    phi: Vec<SparseVec>,
    phi_inv: Vec<SparseVec>,
    alpha: Vec<SparseVec>,
    beta: Vec<SparseVec>,
}

fn fixture(s: &'static str) -> &'static Fixture {
    static CYCLIC3: OnceLock<Fixture> = OnceLock::new();
    static SWEEDLER: OnceLock<Fixture> = OnceLock::new();
    let cell = match s {
        "cyclic:3" => &CYCLIC3,
        "sweedler4" => &SWEEDLER,
        _ => unreachable!(),
    };
    cell.get_or_init(|| {
        let ctx = Arc::new(HopfContext::new(&hopf(s)).unwrap());
        let cols = |k| build_iso(k, &ctx).unwrap().columns();
        Fixture {
            x: build_xyz(&ctx, Which::X).unwrap(),
            y: build_xyz(&ctx, Which::Y).unwrap(),
            z: build_xyz(&ctx, Which::Z).unwrap(),
            phi: cols(IsoKind::Phi),
            phi_inv: cols(IsoKind::PhiInv),
            alpha: cols(IsoKind::Alpha),
            beta: cols(IsoKind::Beta),
            ctx,
        }
    })
}

fn sparse(field: FieldSpec, terms: &[(usize, i64)], dim: usize) -> SparseVec {
    let mut acc = Accumulator::new();
    for &(i, c) in terms {
        acc.add(i % dim, field.from_i64(c));
    }
    acc.finish()
}

fn terms() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..10_000, -50i64..50), 1..5)
}

fn fixture_name() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just("cyclic:3"), Just("sweedler4")]
}

/// Product in `H⊗H` straight from the structure table of `H`.
fn tensor_square_product(h: &HopfAlgebraData, u: &SparseVec, v: &SparseVec) -> SparseVec {
    let n = h.dim();
    let mut acc = Accumulator::new();
    for (i, a) in u {
        for (j, b) in v {
            let left = h.algebra.mult.get(i / n, j / n);
            let right = h.algebra.mult.get(i % n, j % n);
            for (k, c) in left {
                for (l, d) in right {
                    acc.add(k * n + l, &(&(a * b) * c) * d);
                }
            }
        }
    }
    acc.finish()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn comultiplication_is_multiplicative(idx in 0usize..5, u in terms(), v in terms()) {
        let h = hopf(SPECS[idx]);
        let (f, n) = (h.field(), h.dim());
        let (u, v) = (sparse(f, &u, n), sparse(f, &v, n));
        let lhs = h.coalgebra.comul_sparse(&h.algebra.mul_sparse(&u, &v));
        let rhs = tensor_square_product(&h, &h.coalgebra.comul_sparse(&u), &h.coalgebra.comul_sparse(&v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn antipode_convolution_identity(idx in 0usize..5, u in terms()) {
        let h = hopf(SPECS[idx]);
        let (f, n) = (h.field(), h.dim());
        let u = sparse(f, &u, n);
        let s = h.antipode.columns();
        // Σ S(u1) u2 and Σ u1 S(u2)
        let mut left = Accumulator::new();
        let mut right = Accumulator::new();
        for (jk, c) in h.coalgebra.comul_sparse(&u) {
            let (j, k) = (jk / n, jk % n);
            let ek = vec![(k, f.one())];
            let ej = vec![(j, f.one())];
            left.add_scaled(&h.algebra.mul_sparse(&s[j], &ek), &c);
            right.add_scaled(&h.algebra.mul_sparse(&ej, &s[k]), &c);
        }
        let eps = h.coalgebra.counit_sparse(&u);
        let expected: SparseVec = h.algebra.unit_sparse().iter().map(|(i, c)| (*i, c * &eps)).filter(|(_, c)| !c.is_zero()).collect();
        prop_assert_eq!(left.finish(), expected.clone());
        prop_assert_eq!(right.finish(), expected);
    }

    #[test]
    fn phi_is_multiplicative_and_invertible(name in fixture_name(), u in terms(), v in terms()) {
        let fx = fixture(name);
        let (f, d) = (fx.ctx.field(), fx.x.dim());
        let (u, v) = (sparse(f, &u, d), sparse(f, &v, d));
        let lhs = apply_columns(&fx.phi, &fx.x.mul_sparse(&u, &v));
        let rhs = fx.y.mul_sparse(&apply_columns(&fx.phi, &u), &apply_columns(&fx.phi, &v));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(apply_columns(&fx.phi_inv, &apply_columns(&fx.phi, &u)), u);
    }

    #[test]
    fn alpha_is_multiplicative(name in fixture_name(), u in terms(), v in terms()) {
        let fx = fixture(name);
        let (f, d) = (fx.ctx.field(), fx.y.dim());
        let (u, v) = (sparse(f, &u, d), sparse(f, &v, d));
        let lhs = apply_columns(&fx.alpha, &fx.y.mul_sparse(&u, &v));
        let rhs = fx.z.mul_sparse(&apply_columns(&fx.alpha, &u), &apply_columns(&fx.alpha, &v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn beta_factors_through_phi(name in fixture_name(), u in terms()) {
        let fx = fixture(name);
        let u = sparse(fx.ctx.field(), &u, fx.x.dim());
        prop_assert_eq!(apply_columns(&fx.beta, &u), apply_columns(&fx.alpha, &apply_columns(&fx.phi, &u)));
    }

    #[test]
    fn units_correspond(name in fixture_name()) {
        let fx = fixture(name);
        prop_assert_eq!(apply_columns(&fx.phi, &fx.x.unit_sparse()), fx.y.unit_sparse());
        prop_assert_eq!(apply_columns(&fx.beta, &fx.x.unit_sparse()), fx.z.unit_sparse());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn x_action_matches_y_action_through_phi(u in terms(), w in terms(), free in 1usize..3) {
        let fx = fixture("cyclic:3");
        let ctx = &fx.ctx;
        let m = example_bimodule(&ctx.h, ExampleKind::Free(free)).unwrap();
        let f = ctx.field();
        let u = sparse(f, &u, fx.x.dim());
        let w = sparse(f, &w, m.dim());
        let ax = derived_action(&m, ctx, ActingAlgebra::X).unwrap();
        let ay = derived_action(&m, ctx, ActingAlgebra::Y).unwrap();
        let az = derived_action(&m, ctx, ActingAlgebra::Z).unwrap();
        let via_x = ax.apply(&u, &w);
        prop_assert_eq!(&via_x, &ay.apply(&apply_columns(&fx.phi, &u), &w));
        prop_assert_eq!(&via_x, &az.apply(&apply_columns(&fx.beta, &u), &w));
    }
}

#[test]
fn dual_is_an_involution() {
    for s in SPECS {
        let h = hopf(s);
        let back = dual_hopf(&dual_hopf(&h).unwrap()).unwrap();
        assert!(back.same_structure(&h), "{s}");
    }
}

#[test]
fn opposite_is_an_involution() {
    for s in SPECS {
        let a = hopf(s).algebra;
        assert!(a.opposite().opposite().same_structure(&a), "{s}");
    }
    let sw = hopf("sweedler4").algebra;
    assert!(!sw.opposite().same_structure(&sw));
}

#[test]
fn file_round_trip_preserves_structure() {
    for s in SPECS {
        let h = hopf(s);
        let text = HopfFile::from_hopf(&h).to_json();
        let back = HopfFile::parse(&text).unwrap().require_hopf().unwrap();
        assert!(back.same_structure(&h), "{s}");
        assert_eq!(HopfFile::from_hopf(&back).to_json(), text);
    }
}

#[test]
fn sweedler_matches_hand_written_table() {
    // basis 1, g, x, gx; g² = 1, x² = 0, xg = -gx
    let text = r#"{
      "field": "Q",
      "dim": 4,
      "basis": ["1", "g", "x", "gx"],
      "mult": [
        [0, 0, 0, "1"], [0, 1, 1, "1"], [0, 2, 2, "1"], [0, 3, 3, "1"],
        [1, 0, 1, "1"], [1, 1, 0, "1"], [1, 2, 3, "1"], [1, 3, 2, "1"],
        [2, 0, 2, "1"], [2, 1, 3, "-1"],
        [3, 0, 3, "1"], [3, 1, 2, "-1"]
      ],
      "unit": ["1", "0", "0", "0"],
      "comult": [
        [0, 0, 0, "1"], [1, 1, 1, "1"],
        [2, 2, 0, "1"], [2, 1, 2, "1"],
        [3, 3, 1, "1"], [3, 0, 3, "1"]
      ],
      "counit": ["1", "1", "0", "0"],
      "antipode": [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "0", "1"], ["0", "0", "-1", "0"]]
    }"#;
    let oracle = HopfFile::parse(text).unwrap().require_hopf().unwrap();
    assert!(oracle.same_structure(&hopf("sweedler4")));
}

#[test]
fn sweedler_antipode_squares_to_minus_one_on_x() {
    let h = hopf("sweedler4");
    let s = h.antipode.columns();
    let f = h.field();
    let s2x = apply_columns(&s, &s[2]);
    assert_eq!(s2x, vec![(2, f.from_i64(-1))]);
    let s4x = apply_columns(&s, &apply_columns(&s, &s2x));
    assert_eq!(s4x, vec![(2, f.one())]);
}

#[test]
fn cyclic_hit_action_shifts_dual_basis() {
    // g^i ⇀ δ_a ↼ g^j = δ_{a-i-j}: (g^i⇀δ_a↼g^j)(x) = δ_a(g^j x g^i)
    let ctx = HopfContext::new(&hopf("cyclic:3")).unwrap();
    let f = ctx.field();
    for i in 0..3 {
        for a in 0..3 {
            for j in 0..3 {
                let expect = vec![((a + 6 - i - j) % 3, f.one())];
                assert_eq!(ctx.hit_basis(i, a, j), &expect, "{i} {a} {j}");
            }
        }
    }
}

#[test]
fn tensor_basis_is_left_major() {
    let f = FieldSpec::Rationals;
    let one = f.one();
    let u = vec![(1, one.clone())];
    let v = vec![(2, f.from_i64(3))];
    assert_eq!(tensor_sparse(&u, &v, 4), vec![(6, f.from_i64(3))]);
}
